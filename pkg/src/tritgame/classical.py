"""Classical one-trit strategies and their exact success probability.

Each party partitions its six possible register values (trit, bit) into
three cells and transmits the cell label.  The referee sees the k-trit
transcript and guesses the value with the largest count of consistent
admissible inputs (uniform prior, ties toward the smallest value).  Two
independent evaluators compute the referee's exact success probability:

* :func:`evaluate_exhaustive` enumerates every admissible input and groups
  by full transcript (feasible up to k = 7; k = 10 behind ``long_run``).
* :func:`evaluate_collapsed` groups parties with identical strategies,
  convolves per-party contributions on a 27-state residue ring (zero-bit
  count mod 9, trit sum mod 3) and weights each transcript class by its
  multinomial multiplicity.  Exact at any k the class count allows.

Both return reduced fractions and must agree wherever both run.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .combinat import binomial
from .kernel import fold_counts, ring_mul, ring_one
from .protocol import admissible_bit_vectors, zero_triples_mod3

#: Register values in serialization order; a strategy string lists the sent
#: trit for each of these six values in this order.
REGISTER_VALUES: tuple[tuple[int, int], ...] = (
    (0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1),
)

_PERMS3 = tuple(itertools.permutations(range(3)))

# Cap on the number of transcript classes the collapsed evaluator will scan.
_MAX_CLASSES = 5_000_000


@dataclass(frozen=True)
class Strategy:
    """A party's map from register value (trit, bit) to the sent trit.

    ``sent[i]`` is the trit transmitted when the register holds
    ``REGISTER_VALUES[i]``.
    """

    sent: tuple[int, int, int, int, int, int]

    def __post_init__(self) -> None:
        if len(self.sent) != 6 or any(t not in (0, 1, 2) for t in self.sent):
            raise ValueError(f"strategy table must be six trits, got {self.sent!r}")

    def sent_for(self, trit: int, bit: int) -> int:
        return self.sent[2 * trit + bit]

    def cells(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """The three preimage cells, indexed by sent trit."""
        out: list[list[tuple[int, int]]] = [[], [], []]
        for value, t in zip(REGISTER_VALUES, self.sent):
            out[t].append(value)
        return tuple(tuple(cell) for cell in out)

    def relabel(self, perm: Sequence[int]) -> "Strategy":
        """Apply a permutation of the sent alphabet."""
        return Strategy(tuple(perm[t] for t in self.sent))

    def canonical(self) -> "Strategy":
        """Lexicographically smallest relabeling of the sent alphabet."""
        return Strategy(min(tuple(perm[t] for t in self.sent) for perm in _PERMS3))

    def to_string(self) -> str:
        return "".join(str(t) for t in self.sent)

    @classmethod
    def from_string(cls, s: str) -> "Strategy":
        if len(s) != 6 or any(ch not in "012" for ch in s):
            raise ValueError(f"strategy string must be six trits, got {s!r}")
        return cls(tuple(int(ch) for ch in s))

    def lookup_array(self) -> np.ndarray:
        """(3, 2) array: row = register trit, column = register bit."""
        return np.array(self.sent, dtype=np.int64).reshape(3, 2)


DivisionType = tuple[int, int, int]


def division_type(strategy: Strategy) -> DivisionType:
    """Cell sizes of the partition, sorted descending."""
    sizes = [0, 0, 0]
    for t in strategy.sent:
        sizes[t] += 1
    return tuple(sorted(sizes, reverse=True))


# Named division families.  Each entry: (pattern, default slot values) where
# the pattern gives the 0-cell as (trit, bit) pairs and "*" marks a
# caller-fillable trit slot.  Families whose documented 0-cell is fully
# concrete have no slots; slots of the remaining families default to the
# smallest assignment that keeps the cell's size.
_DIVISION_FAMILIES: dict[str, tuple[tuple[tuple[object, int], ...], tuple[int, ...]]] = {
    "A": (((0, 0), (0, 1)), ()),
    "B": ((("*", 0), ("*", 1)), (1, 0)),
    "C": ((("*", 1), ("*", 1)), (1, 0)),
    "D": ((("*", 0), ("*", 1)), (2, 0)),
    "E": ((("*", 1), ("*", 1)), (2, 0)),
    "F": (((1, 0), (1, 1), (0, 1)), ()),
    "H": ((("*", 0), ("*", 1), ("*", 1)), (0, 0, 1)),
    "I": ((("*", 1), ("*", 0), ("*", 0)), (0, 0, 1)),
    "J": ((("*", 1), ("*", 1), ("*", 1)), (0, 1, 2)),
    "K": ((("*", 0), ("*", 0), ("*", 0)), (0, 1, 2)),
    "L": (((1, 0), (0, 0), (1, 1), (0, 1)), ()),
    "M": ((("*", 0), ("*", 0), ("*", 1), ("*", 1)), (0, 1, 0, 1)),
    "N": ((("*", 0), (2, 1), (1, 1), (0, 1)), (0,)),
    "O": ((("*", 1), (2, 0), (1, 0), (0, 0)), (0,)),
}

DIVISION_NAMES = tuple(_DIVISION_FAMILIES)


def canonical_division(name: str, slots: Sequence[int] | None = None) -> Strategy:
    """Named division family, completed to a full strategy.

    ``slots`` fills the family's free trit positions in the order they occur
    in the 0-cell pattern; defaults keep the documented cells (concrete
    families) or the smallest valid assignment (slot-only families).  The
    register values outside the 0-cell are assigned to cells 1 and 2 in
    lexicographic order, cell 1 taking the larger half, which keeps the
    division of the advertised type.
    """
    if name not in _DIVISION_FAMILIES:
        raise ValueError(f"unknown division name {name!r}; expected one of {DIVISION_NAMES}")
    pattern, defaults = _DIVISION_FAMILIES[name]
    n_slots = sum(1 for v, _ in pattern if isinstance(v, str))
    if slots is None:
        slots = defaults
    if len(slots) != n_slots:
        raise ValueError(f"division {name} takes {n_slots} slot value(s), got {len(slots)}")
    if any(s not in (0, 1, 2) for s in slots):
        raise ValueError(f"slot values must be trits, got {tuple(slots)!r}")

    it = iter(slots)
    zero_cell = [((next(it) if isinstance(v, str) else v), bit) for v, bit in pattern]
    if len(set(zero_cell)) != len(pattern):
        raise ValueError(
            f"slot values {tuple(slots)!r} collapse the 0-cell of division {name}"
        )

    rest = [v for v in REGISTER_VALUES if v not in set(zero_cell)]
    size1 = (len(rest) + 1) // 2
    table = {}
    for v in zero_cell:
        table[v] = 0
    for v in rest[:size1]:
        table[v] = 1
    for v in rest[size1:]:
        table[v] = 2
    return Strategy(tuple(table[v] for v in REGISTER_VALUES))


@dataclass(frozen=True)
class StrategyProfile:
    """One strategy per party; party count must be 4, 7, 10, ... (1 mod 3)."""

    strategies: tuple[Strategy, ...]

    def __post_init__(self) -> None:
        k = len(self.strategies)
        if k < 4 or k % 3 != 1:
            raise ValueError(f"party count must be >= 4 and 1 mod 3, got {k}")

    @property
    def k(self) -> int:
        return len(self.strategies)

    @classmethod
    def homogeneous(cls, strategy: Strategy, k: int) -> "StrategyProfile":
        return cls((strategy,) * k)


@dataclass(frozen=True)
class TranscriptClassStats:
    """Exact statistics of one transcript class of a profile.

    ``class_id`` lists, per strategy group, how many parties of the group
    sent 0, 1 and 2.  ``g_counts[v]`` is the number of admissible inputs
    with global value v that produce one fixed representative transcript of
    the class; ``multiplicity`` is the number of transcripts in the class.
    """

    class_id: tuple[tuple[int, int, int], ...]
    g_counts: tuple[int, int, int]
    multiplicity: int

    @property
    def admissible_total(self) -> int:
        return sum(self.g_counts)

    @property
    def best_guess(self) -> int:
        m = max(self.g_counts)
        return self.g_counts.index(m)


def strategy_groups(profile: StrategyProfile) -> list[tuple[Strategy, int]]:
    """Distinct strategies with party counts, in first-appearance order."""
    order: list[Strategy] = []
    counts: dict[Strategy, int] = {}
    for s in profile.strategies:
        if s not in counts:
            order.append(s)
            counts[s] = 0
        counts[s] += 1
    return [(s, counts[s]) for s in order]


# ---------------------------------------------------------------------------
# Exhaustive evaluator (enumeration oracle)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=8)
def _digit_tables(k: int) -> tuple[np.ndarray, np.ndarray]:
    """Base-3 digits of 0..3^k-1 (most significant first) and digit sums mod 3."""
    idx = np.arange(3**k, dtype=np.int64)
    digits = np.empty((3**k, k), dtype=np.int8)
    for i in range(k):
        digits[:, i] = (idx // 3 ** (k - 1 - i)) % 3
    return digits, digits.sum(axis=1, dtype=np.int64) % 3


def evaluate_exhaustive(profile: StrategyProfile, long_run: bool = False) -> Fraction:
    """Referee success probability by full enumeration of admissible inputs.

    Groups every admissible (trit vector, bit vector) pair by its exact
    transcript; the per-transcript maximum count is exact integer
    arithmetic throughout.  Bounded to k <= 7 unless ``long_run`` admits
    k = 10 (about 20 million inputs, vectorized).
    """
    k = profile.k
    if k > 7 and not (long_run and k == 10):
        raise ValueError(f"enumeration bound exceeded for k={k}; pass long_run=True for k=10")

    digits, trit_sums = _digit_tables(k)
    luts = [s.lookup_array() for s in profile.strategies]
    weights = 3 ** np.arange(k - 1, -1, -1, dtype=np.int64)

    acc = np.zeros(3**k * 3, dtype=np.int64)
    for bits in admissible_bit_vectors(k):
        shift = zero_triples_mod3(bits)
        codes = np.zeros(3**k, dtype=np.int64)
        for i in range(k):
            codes += luts[i][digits[:, i], bits[i]] * weights[i]
        g = (trit_sums + shift) % 3
        acc += np.bincount(codes * 3 + g, minlength=acc.size)

    per_transcript = acc.reshape(-1, 3)
    numerator = int(per_transcript.max(axis=1).sum())
    denominator = int(per_transcript.sum())
    return Fraction(numerator, denominator)


# ---------------------------------------------------------------------------
# Collapsed evaluator (residue dynamic program)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _step_polys(sent: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Per sent trit: ring vector of the party's consistent register values.

    A register value (y, x) contributes one unit at ring state
    (u=1 if x==0 else 0, w=y); the vector for sent trit t sums the
    contributions of t's preimage cell.
    """
    polys = [[0] * 27 for _ in range(3)]
    for (y, x), t in zip(REGISTER_VALUES, sent):
        u = 1 if x == 0 else 0
        polys[t][u * 3 + y] += 1
    return tuple(tuple(p) for p in polys)


def _powers(vec: Sequence[int], n: int) -> list[list[int]]:
    out = [ring_one()]
    cur = out[0]
    for _ in range(n):
        cur = ring_mul(cur, list(vec))
        out.append(cur)
    return out


def _multinomial(size: int, counts: tuple[int, int, int]) -> int:
    return binomial(size, counts[0]) * binomial(size - counts[0], counts[1])


def _group_class_vectors(strategy: Strategy, size: int) -> list[tuple[tuple[int, int, int], int, list[int]]]:
    """Full ring vectors for every sent-count composition of one group."""
    q0, q1, q2 = (list(p) for p in _step_polys(strategy.sent))
    pow0 = _powers(q0, size)
    pow2 = _powers(q2, size)
    out = []
    for c0 in range(size + 1):
        cur = pow0[c0]
        for c1 in range(size - c0 + 1):
            c2 = size - c0 - c1
            counts = (c0, c1, c2)
            out.append((counts, _multinomial(size, counts), ring_mul(cur, pow2[c2])))
            if c1 < size - c0:
                cur = ring_mul(cur, q1)
    return out


def _class_count(groups: list[tuple[Strategy, int]]) -> int:
    total = 1
    for _, size in groups:
        total *= (size + 1) * (size + 2) // 2
    return total


def evaluate_collapsed(profile: StrategyProfile) -> Fraction:
    """Referee success probability via the grouped residue dynamic program.

    Exactly equals :func:`evaluate_exhaustive` wherever both run; scales to
    large k for profiles with few distinct strategies because the scan is
    over transcript classes, not transcripts.
    """
    groups = strategy_groups(profile)
    if _class_count(groups) > _MAX_CLASSES:
        raise ValueError(
            f"profile has too many transcript classes ({_class_count(groups)}); "
            "reduce the number of distinct strategies"
        )

    numerator = 0
    denominator = 0
    if len(groups) == 1:
        # Homogeneous fast path: scan the composition triangle with one
        # cheap sparse update per class and fold without forming products.
        strategy, k = groups[0]
        q0, q1, q2 = (list(p) for p in _step_polys(strategy.sent))
        pow0 = _powers(q0, k)
        pow2 = _powers(q2, k)
        for c0 in range(k + 1):
            cur = pow0[c0]
            for c1 in range(k - c0 + 1):
                c2 = k - c0 - c1
                counts = fold_counts(cur, pow2[c2])
                mult = _multinomial(k, (c0, c1, c2))
                numerator += mult * max(counts)
                denominator += mult * (counts[0] + counts[1] + counts[2])
                if c1 < k - c0:
                    cur = ring_mul(cur, q1)
        return Fraction(numerator, denominator)

    # General path: cartesian product of per-group class vectors, folding
    # against the largest group last to avoid one full multiplication.
    groups = sorted(groups, key=lambda g: g[1])
    per_group = [_group_class_vectors(s, size) for s, size in groups[:-1]]
    last = _group_class_vectors(*groups[-1])
    partials: list[tuple[int, list[int]]] = [(1, ring_one())]
    for classes in per_group:
        partials = [
            (mult * m2, ring_mul(vec, v2))
            for mult, vec in partials
            for _, m2, v2 in classes
        ]
    for mult, vec in partials:
        for _, m2, v2 in last:
            counts = fold_counts(vec, v2)
            m = mult * m2
            numerator += m * max(counts)
            denominator += m * sum(counts)
    return Fraction(numerator, denominator)


def transcript_class_stats(
    profile: StrategyProfile, class_id: Sequence[tuple[int, int, int]]
) -> TranscriptClassStats:
    """Exact per-value admissible counts for one transcript class.

    ``class_id`` gives, per strategy group (first-appearance order, see
    :func:`strategy_groups`), the number of parties that sent 0, 1 and 2.
    """
    groups = strategy_groups(profile)
    class_id = tuple(tuple(c) for c in class_id)
    if len(class_id) != len(groups):
        raise ValueError(f"expected counts for {len(groups)} group(s), got {len(class_id)}")

    vec = ring_one()
    multiplicity = 1
    for (strategy, size), counts in zip(groups, class_id):
        if len(counts) != 3 or any(c < 0 for c in counts) or sum(counts) != size:
            raise ValueError(f"sent counts {counts!r} do not partition group of size {size}")
        polys = _step_polys(strategy.sent)
        for t in range(3):
            for _ in range(counts[t]):
                vec = ring_mul(vec, list(polys[t]))
        multiplicity *= _multinomial(size, counts)
    g_counts = fold_counts(vec, ring_one())
    return TranscriptClassStats(class_id, g_counts, multiplicity)


# ---------------------------------------------------------------------------
# Strategy search and the ten-player worked example
# ---------------------------------------------------------------------------

def canonical_strategy_reps() -> list[Strategy]:
    """One representative per orbit of the 729 tables under sent relabeling.

    Relabeling the sent alphabet permutes transcripts bijectively and leaves
    the success probability unchanged, so searching one representative per
    orbit (122 of them) covers all strategies.
    """
    seen: set[tuple[int, ...]] = set()
    reps: list[Strategy] = []
    for sent in itertools.product(range(3), repeat=6):
        canon = min(tuple(perm[t] for t in sent) for perm in _PERMS3)
        if canon not in seen:
            seen.add(canon)
            reps.append(Strategy(canon))
    return reps


def best_homogeneous(k: int) -> tuple[Strategy, Fraction]:
    """Best success probability over all single-strategy profiles at k parties.

    Scans the 122 relabeling orbit representatives with the collapsed
    evaluator; returns the first maximizer in lexicographic order.
    """
    best_strategy: Strategy | None = None
    best_value: Fraction | None = None
    for strategy in canonical_strategy_reps():
        value = evaluate_collapsed(StrategyProfile.homogeneous(strategy, k))
        if best_value is None or value > best_value:
            best_strategy, best_value = strategy, value
    assert best_strategy is not None and best_value is not None
    return best_strategy, best_value


@dataclass(frozen=True)
class WorkedExampleReport:
    """The ten-player all-zero-transcript case under the y-cell division.

    ``per_m_counts`` maps the zero-bit count m to the number of admissible
    configurations consistent with the all-zero transcript; ``g_label_by_m``
    assigns each m its global value under the normative definition
    (trit sum + m/3 mod 3).  A common rendition of this example labels the
    cases offset by +1 from that definition; counts and the success ratio
    do not depend on the labels.
    """

    k: int
    strategy: Strategy
    per_m_counts: dict[int, int]
    g_label_by_m: dict[int, int]
    total: int
    majority_value: int
    majority_count: int
    success: Fraction
    label_note: str


def ten_player_worked_example() -> WorkedExampleReport:
    """Ten players, division A (cells by register trit), all-zero transcript.

    Every party sent 0, so each read (0,0) or (0,1): all register trits are
    zero and the admissible cases are classified by how many parties read
    (0,1).  That count c must be 1 mod 3 (zero-bit count m = 10 - c must be
    a multiple of 3), giving per-m counts C(10, c).
    """
    k = 10
    strategy = canonical_division("A")
    per_m: dict[int, int] = {}
    labels: dict[int, int] = {}
    for c in range(k + 1):
        m = k - c
        if m % 3 != 0:
            continue
        per_m[m] = binomial(k, c)
        labels[m] = (m // 3) % 3
    total = sum(per_m.values())
    g_totals = [0, 0, 0]
    for m, count in per_m.items():
        g_totals[labels[m]] += count
    majority_count = max(g_totals)
    majority_value = g_totals.index(majority_count)
    return WorkedExampleReport(
        k=k,
        strategy=strategy,
        per_m_counts=per_m,
        g_label_by_m=labels,
        total=total,
        majority_value=majority_value,
        majority_count=majority_count,
        success=Fraction(majority_count, total),
        label_note=(
            "global values follow the normative definition (trit sum + m/3 mod 3); "
            "a common rendition of this example prints every label offset by "
            "+1 mod 3, which leaves all counts and the success ratio unchanged"
        ),
    )


def random_profile(
    k: int, rng: np.random.Generator, n_groups: int = 2
) -> StrategyProfile:
    """Random profile with ``n_groups`` distinct strategies, parties shuffled."""
    if not 1 <= n_groups <= k:
        raise ValueError(f"need 1 <= n_groups <= {k}, got {n_groups}")
    tables: set[tuple[int, ...]] = set()
    while len(tables) < n_groups:
        tables.add(tuple(int(t) for t in rng.integers(0, 3, size=6)))
    strategies = [Strategy(t) for t in sorted(tables)]
    # Composition of k into n_groups positive parts, then a random assignment.
    cuts = sorted(rng.choice(np.arange(1, k), size=n_groups - 1, replace=False).tolist())
    sizes = np.diff([0, *cuts, k])
    assignment = np.repeat(np.arange(n_groups), sizes)
    assignment = assignment[rng.permutation(k)]
    return StrategyProfile(tuple(strategies[g] for g in assignment))
