import numpy as np

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


def popcount(x: np.ndarray) -> np.ndarray:
    """Elementwise popcount of a non-negative integer array (SWAR, 64-bit)."""
    x = np.asarray(x).astype(np.uint64)
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return ((x * _H01) >> np.uint64(56)).astype(np.int64)


def pack_bits(bits) -> int:
    """Pack (v_1, ..., v_g) into an int with v_1 as the most significant bit."""
    mask = 0
    for bit in bits:
        if bit not in (0, 1):
            raise ValueError(f"characteristic entries must be 0 or 1, got {bit!r}")
        mask = (mask << 1) | int(bit)
    return mask


def unpack_bits(mask: int, g: int) -> tuple:
    return tuple((mask >> (g - 1 - i)) & 1 for i in range(g))
