"""Binary array container used by the command line tool.

Layout, all little-endian:

    bytes 0-3   magic "AENT"
    bytes 4-5   format version (u16), currently 1
    bytes 6-7   dtype code (u16): 0 = float32, 1 = float64
    bytes 8-9   ndim (u16)
    then        ndim dims, u64 each
    then        payload, row-major, exactly prod(dims) elements

Readers widen float32 payloads to float64.
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import FormatError, InvalidArgumentError

MAGIC = b"AENT"
VERSION = 1
_HEADER = struct.Struct("<4sHHH")
_DTYPE_CODES = {0: np.dtype("<f4"), 1: np.dtype("<f8")}
_MAX_NDIM = 32


def write_matrix(path, array) -> None:
    """Serialize an array; float32 input stays float32, all else is float64."""
    arr = np.asarray(array)
    if arr.ndim < 1 or arr.ndim > _MAX_NDIM:
        raise InvalidArgumentError(f"ndim must be in [1, {_MAX_NDIM}], got {arr.ndim}")
    if np.iscomplexobj(arr):
        raise InvalidArgumentError("complex arrays are not supported")
    if arr.dtype == np.float32:
        code, dtype = 0, _DTYPE_CODES[0]
    else:
        code, dtype = 1, _DTYPE_CODES[1]
    payload = np.ascontiguousarray(arr, dtype=dtype)
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, code, arr.ndim))
        fh.write(struct.pack(f"<{arr.ndim}Q", *arr.shape))
        fh.write(payload.tobytes(order="C"))


def read_matrix(path) -> np.ndarray:
    """Read a serialized array back as float64."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _HEADER.size:
        raise FormatError("file too short for a header")
    magic, version, code, ndim = _HEADER.unpack_from(blob, 0)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise FormatError(f"unsupported format version {version}")
    if code not in _DTYPE_CODES:
        raise FormatError(f"unknown dtype code {code}")
    if not 1 <= ndim <= _MAX_NDIM:
        raise FormatError(f"ndim {ndim} out of range")
    dims_size = 8 * ndim
    if len(blob) < _HEADER.size + dims_size:
        raise FormatError("file too short for its dims")
    dims = struct.unpack_from(f"<{ndim}Q", blob, _HEADER.size)
    dtype = _DTYPE_CODES[code]
    expected = _HEADER.size + dims_size + dtype.itemsize * int(np.prod(dims))
    if len(blob) != expected:
        raise FormatError(
            f"payload length mismatch: file has {len(blob)} bytes, expected {expected}"
        )
    flat = np.frombuffer(blob, dtype=dtype, offset=_HEADER.size + dims_size)
    return flat.reshape(dims).astype(np.float64)
