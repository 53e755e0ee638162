from collections import Counter

from orion.domain import SliceType, validate_requirements
from orion.gateway.translator import classify_text, extract_requirements
from orion.harness import generate_dataset, load_dataset, write_dataset


def test_split_20_20_60():
    entries = generate_dataset(7)
    counts = Counter(e.slice_type for e in entries)
    assert len(entries) == 100
    assert counts[SliceType.EMBB] == 20
    assert counts[SliceType.URLLC] == 20
    assert counts[SliceType.MMTC] == 60


def test_same_seed_identical_files(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    write_dataset(generate_dataset(13), a)
    write_dataset(generate_dataset(13), b)
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes() != b""


def test_different_seeds_differ(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    write_dataset(generate_dataset(13), a)
    write_dataset(generate_dataset(14), b)
    assert a.read_bytes() != b.read_bytes()


def test_roundtrip_through_file(tmp_path):
    path = tmp_path / "d.jsonl"
    entries = generate_dataset(5)
    write_dataset(entries, path)
    loaded = load_dataset(path)
    assert loaded == entries


def test_urllc_delay_range():
    for entry in generate_dataset(21):
        if entry.slice_type is SliceType.URLLC:
            delay = entry.fields["dl_delay_budget_ms"]
            assert 1 <= delay <= 7
            assert entry.fields["reliability_pct"] >= 99.9


def test_embb_throughput_range():
    for entry in generate_dataset(22):
        if entry.slice_type is SliceType.EMBB:
            mbps = entry.fields["max_dl_thpt_per_slice_bps"] / 10**6
            assert 100 <= mbps <= 500


def test_mmtc_device_count_range():
    for entry in generate_dataset(23):
        if entry.slice_type is SliceType.MMTC:
            assert 1000 <= entry.fields["device_count"] <= 10**6


def test_ground_truth_fields_all_valid():
    for entry in generate_dataset(24):
        assert validate_requirements(entry.ground_truth_requirements()) == []


def test_texts_invert_exactly_to_ground_truth():
    """The corpus is usable only if stated fields are extractable verbatim."""
    for entry in generate_dataset(31):
        req = extract_requirements(entry.text)
        assert req.stated_fields() == dict(entry.fields), entry.text
        assert classify_text(entry.text, req) is entry.slice_type, entry.text
