#!/usr/bin/env python

#
# Copyright (c) 2024 OFDM Channel Estimation Team
#
# This work is licensed under the terms of the MIT license.
# For a copy, see <https://opensource.org/licenses/MIT>.
#
"""
Little-endian binary container helpers (weights, datasets, matrix caches)

Every container starts with an 8-byte magic followed by a uint32 version.
"""

import struct

import numpy as np

from ofdm_common.exceptions import FormatError

MAGIC_LENGTH = 8


def write_header(handle, magic, version):
    if len(magic) != MAGIC_LENGTH:
        raise ValueError("Magic must have {} bytes, got {!r}".format(MAGIC_LENGTH, magic))
    handle.write(magic)
    write_struct(handle, "<I", version)


def read_header(handle, magic, version, what="container"):
    """
    Check magic and version of a container

    :raises FormatError: on foreign magic or unsupported version
    """
    found = _read_exact(handle, MAGIC_LENGTH, what)
    if found != magic:
        raise FormatError("Not a {} file (magic {!r}, expected {!r})".format(what, found, magic))
    found_version, = read_struct(handle, "<I", what)
    if found_version != version:
        raise FormatError("Unsupported {} version {} (this build reads version {})".format(
            what, found_version, version))
    return found_version


def _read_exact(handle, size, what):
    data = handle.read(size)
    if len(data) != size:
        raise FormatError("Truncated {} file: expected {} more bytes, got {}".format(
            what, size, len(data)))
    return data


def write_struct(handle, fmt, *values):
    handle.write(struct.pack(fmt, *values))


def read_struct(handle, fmt, what="container"):
    return struct.unpack(fmt, _read_exact(handle, struct.calcsize(fmt), what))


def write_string(handle, text):
    encoded = text.encode("utf-8")
    write_struct(handle, "<H", len(encoded))
    handle.write(encoded)


def read_string(handle, what="container"):
    length, = read_struct(handle, "<H", what)
    return _read_exact(handle, length, what).decode("utf-8")


def write_array(handle, array, dtype):
    """
    Write the array data row-major with the given little-endian dtype
    """
    handle.write(np.ascontiguousarray(array, dtype=np.dtype(dtype)).tobytes())


def read_array(handle, dtype, shape, what="container"):
    dtype = np.dtype(dtype)
    count = int(np.prod(shape, dtype=np.int64))
    data = _read_exact(handle, count * dtype.itemsize, what)
    return np.frombuffer(data, dtype=dtype).reshape(shape).astype(dtype.newbyteorder("="))


def expect_eof(handle, what="container"):
    if handle.read(1):
        raise FormatError("Trailing bytes after {} payload".format(what))


def write_matrices(path, matrices, magic=b"OFDMMAT\0", version=1):
    """
    Store a list of complex matrices (correlation cache format)
    """
    with open(path, "wb") as handle:
        write_header(handle, magic, version)
        write_struct(handle, "<I", len(matrices))
        for matrix in matrices:
            matrix = np.atleast_2d(matrix)
            write_struct(handle, "<II", matrix.shape[0], matrix.shape[1])
            write_array(handle, matrix, "<c16")


def read_matrices(path, magic=b"OFDMMAT\0", version=1):
    with open(path, "rb") as handle:
        read_header(handle, magic, version, "matrix cache")
        count, = read_struct(handle, "<I", "matrix cache")
        matrices = []
        for _ in range(count):
            rows, cols = read_struct(handle, "<II", "matrix cache")
            matrices.append(read_array(handle, "<c16", (rows, cols), "matrix cache"))
        expect_eof(handle, "matrix cache")
    return matrices
