"""Length-prefixed framed stream carrying one PDU per frame.

Replaces SCTP with an ordered reliable byte stream (TCP in practice):
4-byte big-endian payload length, then the codec payload.  Frames above
64 KiB are refused on both sides.
"""

from __future__ import annotations

import socket
import struct

from orion.e2 import codec
from orion.errors import ConnectionLost, FrameTooLarge

MAX_FRAME_BYTES = 64 * 1024


class FramedConnection:
    """One reader plus one writer over a connected stream socket."""

    def __init__(self, sock: socket.socket):
        self._sock = sock

    @classmethod
    def connect(cls, host: str, port: int, timeout: float = 5.0) -> "FramedConnection":
        try:
            return cls(socket.create_connection((host, port), timeout=timeout))
        except OSError as exc:
            raise ConnectionLost(f"connect to {host}:{port} failed: {exc}") from exc

    def send(self, pdu: codec.ControlPdu) -> None:
        self.send_raw(codec.encode(pdu))

    def send_raw(self, payload: bytes) -> None:
        if len(payload) > MAX_FRAME_BYTES:
            raise FrameTooLarge(f"{len(payload)} bytes exceeds {MAX_FRAME_BYTES}")
        try:
            self._sock.sendall(struct.pack(">I", len(payload)) + payload)
        except OSError as exc:
            raise ConnectionLost(str(exc)) from exc

    def recv(self, timeout: float | None = None) -> codec.ControlPdu:
        return codec.decode(self.recv_raw(timeout))

    def recv_raw(self, timeout: float | None = None) -> bytes:
        """Read one frame.

        Raises TimeoutError when no frame *starts* within the timeout;
        a stream dying mid-frame is ConnectionLost.
        """
        self._sock.settimeout(timeout)
        try:
            first = self._sock.recv(1)
        except socket.timeout:
            raise TimeoutError("no frame within timeout") from None
        except OSError as exc:
            raise ConnectionLost(str(exc)) from exc
        if not first:
            raise ConnectionLost("peer closed the stream")
        header = first + self._recv_exact(3)
        (length,) = struct.unpack(">I", header)
        if length > MAX_FRAME_BYTES:
            raise FrameTooLarge(f"peer announced {length} byte frame")
        return self._recv_exact(length)

    def _recv_exact(self, n: int) -> bytes:
        chunks = bytearray()
        while len(chunks) < n:
            try:
                chunk = self._sock.recv(n - len(chunks))
            except socket.timeout as exc:
                raise ConnectionLost("read timed out") from exc
            except OSError as exc:
                raise ConnectionLost(str(exc)) from exc
            if not chunk:
                raise ConnectionLost("peer closed the stream")
            chunks += chunk
        return bytes(chunks)

    def close(self) -> None:
        try:
            self._sock.shutdown(socket.SHUT_RDWR)
        except OSError:
            pass
        self._sock.close()
