"""Pure-Python counting kernel.

State ring for the collapsed classical evaluator: coefficients live on
27 states indexed ``3*u + w`` where ``u`` is the zero-bit count modulo 9
and ``w`` the trit sum modulo 3.  Multiplication is the cyclic convolution
of both coordinates; folding restricts the product to admissible states
(u divisible by 3) and groups them by the value the referee must guess,
``(w + u/3) mod 3``.

Coefficients are Python ints and may grow arbitrarily large; nothing here
rounds.  tritgame._kernel is the compiled twin with the same contract.
"""

from __future__ import annotations

IMPLEMENTATION = "python"

RING_SIZE = 27

_MUL = [
    [((u1 + u2) % 9) * 3 + (w1 + w2) % 3 for u2 in range(9) for w2 in range(3)]
    for u1 in range(9)
    for w1 in range(3)
]

# Per left state: the 9 right states whose product is admissible, with the
# guessed-value bucket of the product.
_FOLD = [
    [
        (u2 * 3 + w2, ((w1 + w2) + ((u1 + u2) % 9) // 3) % 3)
        for u2 in range(9)
        if (u1 + u2) % 3 == 0
        for w2 in range(3)
    ]
    for u1 in range(9)
    for w1 in range(3)
]


def ring_one() -> list[int]:
    """Multiplicative identity (empty party group)."""
    out = [0] * RING_SIZE
    out[0] = 1
    return out


def ring_mul(a: list[int], b: list[int]) -> list[int]:
    """Convolution product of two coefficient vectors."""
    out = [0] * RING_SIZE
    for i1 in range(RING_SIZE):
        x = a[i1]
        if not x:
            continue
        row = _MUL[i1]
        for i2 in range(RING_SIZE):
            y = b[i2]
            if y:
                out[row[i2]] += x * y
    return out

def fold_counts(a: list[int], b: list[int]) -> tuple[int, int, int]:
    """Admissible counts of a*b per guessed value, without forming a*b."""
    n0 = n1 = n2 = 0
    for i1 in range(RING_SIZE):
        x = a[i1]
        if not x:
            continue
        for i2, v in _FOLD[i1]:
            y = b[i2]
            if y:
                if v == 0:
                    n0 += x * y
                elif v == 1:
                    n1 += x * y
                else:
                    n2 += x * y
    return n0, n1, n2
