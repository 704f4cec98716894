"""Dense state-vector simulation of k qudits (local dimension 2 or 3).

Provides the sum-class superpositions shared by the parties, the cyclic
shift gate, its fractional root obtained through the discrete-Fourier
eigenbasis, single-party gate application, full measurement, and a
classifier that recognizes sum-class states up to a global phase.

Conventions: party 1 owns the most significant base-d digit; basis strings
render as ASCII digits '0'..'2' ('0'..'1' for d=2); states are unit vectors
(sum-class states are stored normalized even where they are usually written
as plain ket sums).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

#: Hard cap on dense state size (number of complex amplitudes).
MAX_AMPLITUDES = 2**24

_UNITARY_TOL = 1e-10
_NORM_TOL = 1e-10


def digit_string(index: int, d: int, k: int) -> str:
    """Base-d digits of a basis index, party 1 first."""
    digits = []
    for _ in range(k):
        index, r = divmod(index, d)
        digits.append(str(r))
    return "".join(reversed(digits))


def digit_sums(d: int, k: int) -> np.ndarray:
    """Digit sum of every length-k base-d string, in basis order."""
    sums = np.zeros(1, dtype=np.int16)
    step = np.arange(d, dtype=np.int16)
    for _ in range(k):
        sums = (sums[:, None] + step[None, :]).reshape(-1)
    return sums


@dataclass(frozen=True)
class QuditState:
    """Unit-norm dense amplitude vector over all k-digit base-d strings."""

    d: int
    k: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if self.d not in (2, 3):
            raise ValueError(f"local dimension must be 2 or 3, got {self.d}")
        if self.k < 1:
            raise ValueError(f"party count must be >= 1, got {self.k}")
        if self.d**self.k > MAX_AMPLITUDES:
            raise ValueError(
                f"state of {self.d}^{self.k} amplitudes exceeds the dense cap {MAX_AMPLITUDES}"
            )
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1).copy()
        if amps.size != self.d**self.k:
            raise ValueError(f"expected {self.d**self.k} amplitudes, got {amps.size}")
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > _NORM_TOL:
            raise ValueError(f"state is not normalized: sum |amp|^2 = {norm_sq!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.d**self.k

    def basis_label(self, index: int) -> str:
        return digit_string(index, self.d, self.k)


@dataclass(frozen=True)
class LocalGate:
    """A d x d unitary acting on a single party's qudit."""

    d: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=np.complex128).copy()
        if m.shape != (self.d, self.d):
            raise ValueError(f"gate must be {self.d}x{self.d}, got shape {m.shape}")
        dev = np.max(np.abs(m.conj().T @ m - np.eye(self.d)))
        if dev > _UNITARY_TOL:
            raise ValueError(f"gate is not unitary: max |M†M - I| = {dev:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


class RootBranch(NamedTuple):
    """Choice of cube roots for the two non-unit eigenvalues of the shift.

    The eigenvalue exp(2*pi*i/3) receives the root exp(2*pi*i*(1+3*r1)/9)
    and its square the root exp(2*pi*i*(2+3*r2)/9); each choice cubes back
    to the original eigenvalue exactly.
    """

    r1: int
    r2: int


def make_sum_class_state(k: int, j: int, d: int = 3) -> QuditState:
    """Uniform superposition over all strings with digit sum = j mod d.

    Each of the d^(k-1) strings in the class carries amplitude
    d**(-(k-1)/2); every other amplitude is zero.
    """
    if d not in (2, 3):
        raise ValueError(f"local dimension must be 2 or 3, got {d}")
    if k < 1:
        raise ValueError(f"party count must be >= 1, got {k}")
    if not 0 <= j < d:
        raise ValueError(f"class label must be in 0..{d - 1}, got {j}")
    if d**k > MAX_AMPLITUDES:
        raise ValueError(f"{d}^{k} amplitudes exceed the dense cap {MAX_AMPLITUDES}")
    mask = digit_sums(d, k) % d == j
    amps = np.zeros(d**k, dtype=np.complex128)
    amps[mask] = d ** (-(k - 1) / 2)
    return QuditState(d, k, amps)


def permutation_gate(d: int) -> LocalGate:
    """Cyclic digit shift: |y> -> |y+1 mod d| (the NOT gate for d=2)."""
    if d not in (2, 3):
        raise ValueError(f"unsupported dimension {d}")
    m = np.zeros((d, d))
    for y in range(d):
        m[(y + 1) % d, y] = 1.0
    return LocalGate(d, m)


def _fourier_basis(d: int) -> np.ndarray:
    a = np.exp(2j * np.pi / d)
    return np.array([[a ** (r * c) for c in range(d)] for r in range(d)])


def root_gate(d: int, branch: RootBranch | None = None) -> LocalGate:
    """A d-th root of the cyclic shift gate.

    Diagonalizes the shift in the discrete-Fourier basis and takes d-th
    roots of the eigenvalues.  For d=3 the two non-unit roots are selected
    by ``branch``; for d=2 the principal square root is returned, which is
    the matrix (1/2) [[1+i, 1-i], [1-i, 1+i]].
    """
    if d == 2:
        m = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]])
        return LocalGate(2, m)
    if d != 3:
        raise ValueError(f"unsupported dimension {d}")
    if branch is None:
        raise ValueError("a RootBranch is required for dimension 3")
    if branch.r1 not in (0, 1, 2) or branch.r2 not in (0, 1, 2):
        raise ValueError(f"branch indices must be in 0..2, got {tuple(branch)}")
    s = _fourier_basis(3)
    s_inv = s.conj() / 3.0
    roots = np.diag(
        [
            1.0,
            np.exp(2j * np.pi * (1 + 3 * branch.r1) / 9),
            np.exp(2j * np.pi * (2 + 3 * branch.r2) / 9),
        ]
    )
    return LocalGate(3, s_inv @ roots @ s)


def apply_local(state: QuditState, gate: LocalGate, party: int) -> QuditState:
    """Apply a gate to one party's tensor factor (parties are 1-based)."""
    if gate.d != state.d:
        raise ValueError(f"gate dimension {gate.d} != state dimension {state.d}")
    if not 1 <= party <= state.k:
        raise ValueError(f"party must be in 1..{state.k}, got {party}")
    d, k = state.d, state.k
    before = d ** (party - 1)
    after = d ** (k - party)
    arr = state.amplitudes.reshape(before, d, after)
    new = np.einsum("ij,ajb->aib", gate.matrix, arr)
    return QuditState(d, k, new.reshape(-1))


def measure_all(state: QuditState, rng: np.random.Generator) -> str:
    """Sample one basis string with probability |amplitude|^2."""
    probs = np.abs(state.amplitudes) ** 2
    cum = np.cumsum(probs)
    index = int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))
    index = min(index, state.dim - 1)
    return state.basis_label(index)


def sum_class_deviation(state: QuditState, j: int) -> tuple[complex, float]:
    """Best-fit phase and worst amplitude error against class j.

    Returns (c, dev) minimizing nothing fancy: c is the overlap with the
    normalized class state, dev the max entrywise deviation of the
    amplitudes from c times the class pattern.
    """
    if state.d != 3:
        raise ValueError("sum-class matching is defined for dimension 3 only")
    target = make_sum_class_state(state.k, j, state.d).amplitudes
    c = complex(np.vdot(target, state.amplitudes))
    dev = float(np.max(np.abs(state.amplitudes - c * target)))
    return c, dev


def classify_sum_class(
    state: QuditState, tol: float = 1e-10
) -> tuple[int, complex] | None:
    """Recognize c times a sum-class state; None if nothing matches.

    The candidate class is read off the digit sum at the largest amplitude;
    the match must have every amplitude within ``tol`` of the phased class
    pattern and a phase of modulus 1 within ``tol``.
    """
    if state.d != 3:
        raise ValueError("sum-class classification is defined for dimension 3 only")
    candidate = int(digit_sums(state.d, state.k)[int(np.argmax(np.abs(state.amplitudes)))]) % 3
    c, dev = sum_class_deviation(state, candidate)
    if dev <= tol and abs(abs(c) - 1.0) <= tol:
        return candidate, c
    return None


@dataclass(frozen=True)
class RootCheck:
    """Result of checking a class-stepping property of a root gate."""

    branch: RootBranch | None
    phase: complex
    max_deviation: float
    ok: bool


def verify_root_branch(branch: RootBranch, tol: float = 1e-10) -> RootCheck:
    """Check that the branch's gate cubes to the shift and steps classes.

    The gate applied at all three parties of a 3-party sum-class state must
    advance the class by one, with a single modulus-1 constant shared by
    all three classes.  Deviations are entrywise maxima.
    """
    gate = root_gate(3, branch)
    shift = permutation_gate(3)
    cubed = gate.matrix @ gate.matrix @ gate.matrix
    dev = float(np.max(np.abs(cubed - shift.matrix)))

    phase: complex | None = None
    for p in range(3):
        out = make_sum_class_state(3, p)
        for party in (1, 2, 3):
            out = apply_local(out, gate, party)
        c, class_dev = sum_class_deviation(out, (p + 1) % 3)
        if phase is None:
            phase = c
        dev = max(dev, class_dev, abs(c - phase))
    assert phase is not None
    ok = dev <= tol and abs(abs(phase) - 1.0) <= tol
    return RootCheck(branch=branch, phase=phase, max_deviation=dev, ok=ok)


def find_valid_root_branch(tol: float = 1e-10) -> RootBranch:
    """Search all nine cube-root branches for one satisfying the step law.

    Scans in lexicographic order and returns the first branch whose check
    passes; raises LookupError if none does (which would mean the class
    stepping only holds up to per-class phases).
    """
    for r1 in range(3):
        for r2 in range(3):
            branch = RootBranch(r1, r2)
            if verify_root_branch(branch, tol).ok:
                return branch
    raise LookupError("no valid root branch: class stepping fails for all nine branches")


def verify_dim2_swap(tol: float = 1e-10) -> RootCheck:
    """Check the two-party dimension-2 analog of the class-stepping law.

    The principal square root of NOT applied at both parties must take the
    even-parity class (|00>+|11>)/sqrt(2) to a modulus-1 phase times the
    odd-parity class (|01>+|10>)/sqrt(2).
    """
    gate = root_gate(2)
    out = make_sum_class_state(2, 0, d=2)
    for party in (1, 2):
        out = apply_local(out, gate, party)
    target = make_sum_class_state(2, 1, d=2).amplitudes
    c = complex(np.vdot(target, out.amplitudes))
    dev = float(np.max(np.abs(out.amplitudes - c * target)))
    ok = dev <= tol and abs(abs(c) - 1.0) <= tol
    return RootCheck(branch=None, phase=c, max_deviation=dev, ok=ok)
