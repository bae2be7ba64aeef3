"""Arithmetic tables for small finite fields GF(p^n).

Field elements are indexed 0..q-1; index ``sum_i c_i p^i`` stands for the
polynomial ``sum_i c_i x^i`` over F_p, so indices 0..p-1 are the prime
subfield.  Extension fields are built modulo a fixed table of irreducible
polynomials rather than searching at runtime, which keeps the element
numbering reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class UnsupportedFieldError(ValueError):
    """The requested (p, n) pair is not prime or not in the shipped table."""


# Monic irreducible polynomials f = x^n + sum_i c_i x^i over F_p,
# stored low-degree first: (c_0, c_1, ..., c_{n-1}).
IRREDUCIBLE_POLYNOMIALS: dict[tuple[int, int], tuple[int, ...]] = {
    (3, 2): (1, 0),        # x^2 + 1
    (5, 2): (2, 0),        # x^2 + 2
    (7, 2): (1, 0),        # x^2 + 1
    (11, 2): (1, 0),       # x^2 + 1
    (13, 2): (2, 0),       # x^2 + 2
    (3, 3): (1, 2, 0),     # x^3 + 2x + 1
    (5, 3): (3, 3, 0),     # x^3 + 3x + 3
    (3, 4): (2, 0, 0, 2),  # x^4 + 2x^3 + 2
}

MAX_FIELD_SIZE = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True, eq=False)
class FieldTable:
    """Closed arithmetic tables for GF(p^n).

    ``add`` and ``mul`` are q x q index tables; ``trace`` maps each element
    index to its trace in the prime subfield (an index below p).
    """

    p: int
    n: int
    size: int
    add: np.ndarray
    mul: np.ndarray
    trace: np.ndarray

    def power(self, a: int, exponent: int) -> int:
        """a**exponent by square-and-multiply on the index tables."""
        result, base, e = 1, a, exponent
        while e:
            if e & 1:
                result = int(self.mul[result, base])
            base = int(self.mul[base, base])
            e >>= 1
        return result


def gf_build(p: int, n: int = 1) -> FieldTable:
    """Build GF(p^n) arithmetic tables.

    Prime fields are plain modular arithmetic; extensions use the shipped
    irreducible polynomial for (p, n).  The multiplication table is checked
    for invertibility of every nonzero element, which would fail if a
    shipped polynomial were reducible.
    """
    if not is_prime(p):
        raise UnsupportedFieldError(f"p = {p} is not prime")
    if n < 1:
        raise UnsupportedFieldError("n must be at least 1")
    q = p**n
    if q > MAX_FIELD_SIZE:
        raise UnsupportedFieldError(f"field size {q} exceeds cap {MAX_FIELD_SIZE}")
    if n > 1 and (p, n) not in IRREDUCIBLE_POLYNOMIALS:
        raise UnsupportedFieldError(
            f"no shipped irreducible polynomial for GF({p}^{n}); "
            f"available extensions: {sorted(IRREDUCIBLE_POLYNOMIALS)}"
        )

    # digits[i] = coefficient vector of element i, constant term first
    digits = np.zeros((q, n), dtype=np.int64)
    val = np.arange(q)
    for k in range(n):
        digits[:, k] = val % p
        val //= p
    encode = p ** np.arange(n)

    add = (((digits[:, None, :] + digits[None, :, :]) % p) @ encode).astype(np.int64)

    if n == 1:
        mul = (np.arange(q)[:, None] * np.arange(q)[None, :]) % p
        trace = np.arange(q, dtype=np.int64)
        return FieldTable(p, n, q, add, mul.astype(np.int64), trace)

    c_low = np.array(IRREDUCIBLE_POLYNOMIALS[(p, n)], dtype=np.int64)

    def times_x(v: np.ndarray) -> np.ndarray:
        out = np.zeros(n, dtype=np.int64)
        out[1:] = v[:-1]
        return (out - v[-1] * c_low) % p

    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        powers = np.zeros((n, n), dtype=np.int64)  # rows: a * x^i
        row = digits[a].copy()
        for i in range(n):
            powers[i] = row
            row = times_x(row)
        mul[a] = ((digits @ powers) % p) @ encode

    for a in range(1, q):
        if not (mul[a] == 1).any():
            raise UnsupportedFieldError(
                f"element {a} of GF({p}^{n}) has no inverse; shipped polynomial reducible?"
            )

    table = FieldTable(p, n, q, add, mul, np.zeros(q, dtype=np.int64))
    trace = np.zeros(q, dtype=np.int64)
    for a in range(q):
        acc = 0
        for i in range(n):
            acc = int(add[acc, table.power(a, p**i)])
        trace[a] = acc
    if (trace >= p).any():
        raise UnsupportedFieldError(f"trace left the prime subfield for GF({p}^{n})")
    return FieldTable(p, n, q, add, mul, trace)
