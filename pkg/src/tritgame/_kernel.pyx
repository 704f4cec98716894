# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled counting kernel; same contract as tritgame._kernel_py.

Coefficients stay Python ints (counts overflow any machine word), so the
speedup comes from compiled index bookkeeping around the big-int ops.
"""

IMPLEMENTATION = "cython"

RING_SIZE = 27

cdef int _MUL[27][27]
cdef int _FOLD_IDX[27][9]
cdef int _FOLD_VAL[27][9]

cdef int _u1, _w1, _u2, _w2, _i1, _i2, _n
for _u1 in range(9):
    for _w1 in range(3):
        _i1 = _u1 * 3 + _w1
        _n = 0
        for _u2 in range(9):
            for _w2 in range(3):
                _i2 = _u2 * 3 + _w2
                _MUL[_i1][_i2] = ((_u1 + _u2) % 9) * 3 + (_w1 + _w2) % 3
            if (_u1 + _u2) % 3 == 0:
                for _w2 in range(3):
                    _FOLD_IDX[_i1][_n] = _u2 * 3 + _w2
                    _FOLD_VAL[_i1][_n] = ((_w1 + _w2) + ((_u1 + _u2) % 9) // 3) % 3
                    _n += 1


def ring_one():
    """Multiplicative identity (empty party group)."""
    out = [0] * RING_SIZE
    out[0] = 1
    return out


def ring_mul(list a, list b):
    """Convolution product of two coefficient vectors."""
    cdef list out = [0] * 27
    cdef int i1, i2, k
    cdef object x, y
    for i1 in range(27):
        x = a[i1]
        if not x:
            continue
        for i2 in range(27):
            y = b[i2]
            if y:
                k = _MUL[i1][i2]
                out[k] = out[k] + x * y
    return out


def fold_counts(list a, list b):
    """Admissible counts of a*b per guessed value, without forming a*b."""
    cdef object n0 = 0, n1 = 0, n2 = 0
    cdef object x, y
    cdef int i1, t, v
    for i1 in range(27):
        x = a[i1]
        if not x:
            continue
        for t in range(9):
            y = b[_FOLD_IDX[i1][t]]
            if y:
                v = _FOLD_VAL[i1][t]
                if v == 0:
                    n0 = n0 + x * y
                elif v == 1:
                    n1 = n1 + x * y
                else:
                    n2 = n2 + x * y
    return (n0, n1, n2)
