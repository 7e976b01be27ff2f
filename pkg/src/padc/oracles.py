"""Independent brute-force references for tests and acceptance checks.

Deliberately naive and self-contained: nothing here shares code with the
coder modules, so agreement between the two routes is evidence rather
than tautology.  The enumeration helpers carry small budgets because
they exist for verification, not production use.
"""

import math


def _path_digits(x: int, p: int, n: int):
    # Base-p digits of x, most significant first: the path to grid point x.
    digits = []
    for _ in range(n):
        digits.append(x % p)
        x //= p
    digits.reverse()
    return digits


def _path_value(x: int, p: int, n: int) -> int:
    # The path read as a polynomial, least significant digit first.
    return sum(d * p**j for j, d in enumerate(_path_digits(x, p, n)))


def brute_common_prefix(l: int, r: int, params, budget: int = 1 << 16):
    """Longest shared leading path digits over all points of [l, r),
    by direct enumeration (r = 0 stands for P**N)."""
    p, n = params.P, params.N
    size = p**n
    hi = r if r > l else (size if r == 0 else None)
    if hi is None:
        raise ValueError(f"empty interval [{l}, {r})")
    if hi - l > budget:
        raise ValueError("interval too large for enumeration budget")
    prefix = _path_digits(l, p, n)
    for x in range(l + 1, hi):
        digits = _path_digits(x, p, n)
        k = 0
        while k < len(prefix) and prefix[k] == digits[k]:
            k += 1
        prefix = prefix[:k]
        if not prefix:
            break
    return tuple(prefix)


def brute_select_point(l: int, r: int, params, budget: int = 1 << 20) -> int:
    """Point of [l, r) whose path reads as the smallest number, by scan."""
    p, n = params.P, params.N
    size = p**n
    hi = r if r > l else (size if r == 0 else None)
    if hi is None:
        raise ValueError(f"empty interval [{l}, {r})")
    if hi - l > budget:
        raise ValueError("interval too large for enumeration budget")
    return min(range(l, hi), key=lambda x: _path_value(x, p, n))


def huffman_encode(codebook, message):
    """Concatenate codewords; the textbook coder."""
    out = []
    for s in message:
        if s not in codebook:
            raise ValueError(f"unknown symbol {s!r}")
        out.extend(codebook[s])
    return out


def rice_encode(k: int, value: int):
    """Rice code of parameter k: unary quotient (ones, then a zero
    delimiter) followed by the k-bit remainder, most significant bit
    first."""
    if k < 0 or value < 0:
        raise ValueError("rice_encode needs k >= 0 and value >= 0")
    q, rem = divmod(value, 1 << k)
    out = [1] * q + [0]
    out.extend((rem >> (k - 1 - j)) & 1 for j in range(k))
    return out


def entropy(freqs) -> float:
    """Shannon entropy in bits per symbol of the normalised counts."""
    freqs = list(freqs)
    if any(f < 1 for f in freqs):
        raise ValueError("counts must be >= 1")
    total = sum(freqs)
    return -sum(f / total * math.log2(f / total) for f in freqs)
