#!/usr/bin/env python3
"""Independent reference for the PRF instantiations and a few field values.

Prints C++ initializer lines that are pasted into tests/prf_test.cpp.
SipHash-2-4 is written out here from its published description; the subkey
is an unkeyed 16-byte BLAKE2b of the key, from hashlib.
"""
import hashlib
import struct

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix(z):
    z = (z + GOLDEN) & MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


def rotl(x, b):
    return ((x << b) | (x >> (64 - b))) & MASK


def siphash24(key, msg):
    k0, k1 = struct.unpack("<QQ", key)
    v0 = k0 ^ 0x736F6D6570736575
    v1 = k1 ^ 0x646F72616E646F6D
    v2 = k0 ^ 0x6C7967656E657261
    v3 = k1 ^ 0x7465646279746573

    def rounds(n):
        nonlocal v0, v1, v2, v3
        for _ in range(n):
            v0 = (v0 + v1) & MASK; v1 = rotl(v1, 13); v1 ^= v0; v0 = rotl(v0, 32)
            v2 = (v2 + v3) & MASK; v3 = rotl(v3, 16); v3 ^= v2
            v0 = (v0 + v3) & MASK; v3 = rotl(v3, 21); v3 ^= v0
            v2 = (v2 + v1) & MASK; v1 = rotl(v1, 17); v1 ^= v2; v2 = rotl(v2, 32)

    full = len(msg) - len(msg) % 8
    for i in range(0, full, 8):
        m = struct.unpack("<Q", msg[i:i + 8])[0]
        v3 ^= m
        rounds(2)
        v0 ^= m
    last = (len(msg) & 0xFF) << 56
    for i, b in enumerate(msg[full:]):
        last |= b << (8 * i)
    v3 ^= last
    rounds(2)
    v0 ^= last
    v2 ^= 0xFF
    rounds(4)
    return struct.pack("<Q", v0 ^ v1 ^ v2 ^ v3)


def encode(fn, file_id, indices, nonce=None):
    out = bytes([fn]) + struct.pack(">I", len(file_id)) + file_id
    if nonce is not None:
        out += struct.pack(">I", len(nonce)) + nonce
    for i in indices:
        out += struct.pack(">I", i)
    return out


def eval_test(key, enc):
    state = struct.unpack("<Q", key[:8])[0] ^ struct.unpack("<Q", key[-8:])[0]
    for b in enc:
        state = mix(state ^ ((b * GOLDEN) & MASK))
    return state & 0xFF


def eval_production(key, enc):
    sub = hashlib.blake2b(key, digest_size=16).digest()
    return siphash24(sub, enc)[0]


def gf_mul(a, b):
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a & 0x100:
            a ^= 0x11B
    return acc


def main():
    key = bytes(range(1, 17))
    key80 = bytes(range(0xA0, 0xAA))
    cases = [
        ("mac_vector", 1, b"file", [1, 1], None),
        ("mac_vector", 1, b"file", [1, 2], None),
        ("mac_vector", 1, b"file", [2, 7], None),
        ("mac_vector", 1, b"", [1, 4096], None),
        ("mask_basis", 2, b"file", [3, 5], None),
        ("mask_basis", 2, b"bench", [4095, 4094], None),
        ("mask_coefficient", 3, b"file", [1], bytes(16)),
        ("mask_coefficient", 3, b"file", [9], bytes(range(16))),
    ]
    for name, k in (("key", key), ("key80", key80)):
        for label, fn, fid, idx, nonce in cases:
            enc = encode(fn, fid, idx, nonce)
            nonce_hex = nonce.hex() if nonce is not None else ""
            print(f'  {{{name}, "{label}", "{fid.decode()}", "{nonce_hex}", {{{", ".join(map(str, idx))}}}, '
                  f'0x{eval_test(k, enc):02X}, 0x{eval_production(k, enc):02X}}},')
    k7 = bytes([7] * 15 + [0x47])
    basis = [[eval_test(k7, encode(2, b"f", [i, j])) for j in (1, 2)] for i in (1, 2, 3)]
    print("  // basis n=4:", ", ".join("{" + ", ".join(f"0x{v:02X}" for v in row) + "}" for row in basis))
    nonce = bytes([0x5A] * 10)
    c_bar = [1, 2, 3, 4]
    for i in range(1, 6):
        beta = eval_test(k7, encode(3, b"f", [i], nonce))
        for j in range(1, 5):
            c_bar[j - 1] ^= gf_mul(beta, eval_test(k7, encode(2, b"f", [i, j])))
    print("  // c_bar n=6:", ", ".join(f"0x{v:02X}" for v in c_bar))
    assert siphash24(bytes(range(16)), b"").hex() == "310e0edd47db6f72"
    for a, b in ((0x53, 0xCA), (0x57, 0x83), (0x02, 0x87), (0xFF, 0xFF)):
        print(f"  // mul 0x{a:02X} 0x{b:02X} = 0x{gf_mul(a, b):02X}")


if __name__ == "__main__":
    main()
