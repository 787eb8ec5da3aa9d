"""Order and log-behavior predicates on finite positive sequences.

For a sequence a_0..a_m of positive exact numbers (dyadic or general
rationals; all entries of one sequence must share a type so products stay
exact and comparable):

  log-concave        a_i^2 >= a_{i-1} a_{i+1} for interior i
  spiral             a_m <= a_0 <= a_{m-1} <= a_1 <= ... <= a_{floor(m/2)}
  ratio monotone     both reflected-ratio chains hold, each ending at <= 1:
                       a_0/a_{m-1} <= a_1/a_{m-2} <= ... <= a_{floor(m/2)-1}/a_{m-floor(m/2)} <= 1
                       a_m/a_0 <= a_{m-1}/a_1 <= ... <= a_{m-floor((m-1)/2)}/a_{floor((m-1)/2)} <= 1
  unimodal mid-peak  strict rise to index floor(m/2), then strict fall

Ratio monotonicity implies both log-concavity and the spiral property, and
all comparisons here are exact (cross-multiplied, never via ratios).  The
chain predicates hold vacuously on sequences of length <= 2.

The squared-difference operator maps a_i to a_i^2 - a_{i-1} a_{i+1} (with
zero boundary terms); iterating it defines the depth-k variants checked by
:func:`k_property`.  Non-positive entries are never an exception: they yield
a distinct "positivity" verdict, because a conjecture scan must record them
as a falsification signal rather than crash.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Sequence, Union

from .exactnum import Dyadic

__all__ = [
    "ExactValue",
    "ExactSequence",
    "Witness",
    "PropertyVerdict",
    "PROPERTIES",
    "is_log_concave",
    "is_spiral",
    "is_ratio_monotone",
    "is_unimodal_midpeak",
    "l_operator",
    "k_property",
]

ExactValue = Union[Dyadic, Fraction, int]
ExactSequence = Sequence[ExactValue]

LOG_CONCAVE = "log-concave"
SPIRAL = "spiral"
RATIO_MONOTONE = "ratio-monotone"
UNIMODAL_MIDPEAK = "unimodal-midpeak"


@dataclass(frozen=True)
class Witness:
    """Where a predicate first fails, re-checkable from the stored data.

    ``kind`` is "comparison" (the exact lhs/rhs of the violated comparison,
    with the sequence positions involved) or "positivity" (the first
    non-positive entry).
    """

    kind: str
    indices: tuple[int, ...]
    lhs: str = ""
    rhs: str = ""

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "i": self.indices[0],
            "indices": list(self.indices),
            "lhs": self.lhs,
            "rhs": self.rhs,
        }


@dataclass(frozen=True)
class PropertyVerdict:
    property: str
    strict: bool
    holds: bool
    level: int = 0
    witness: Witness | None = None

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "strict": self.strict,
            "holds": self.holds,
            "level": self.level,
            "witness": self.witness.to_json() if self.witness else None,
        }


def _positivity_witness(seq: ExactSequence) -> Witness | None:
    for i, x in enumerate(seq):
        if not x > 0:
            return Witness("positivity", (i,), lhs=str(x), rhs="0")
    return None


def _verdict(prop: str, strict: bool, witness: Witness | None) -> PropertyVerdict:
    return PropertyVerdict(prop, strict, witness is None, witness=witness)


def _chain_witness(
    pairs: Sequence[tuple[tuple[int, ...], ExactValue, ExactValue]], strict: bool
) -> Witness | None:
    """First violated comparison lhs <= rhs (or < rhs when strict)."""
    for indices, lhs, rhs in pairs:
        ok = lhs < rhs if strict else lhs <= rhs
        if not ok:
            return Witness("comparison", indices, lhs=str(lhs), rhs=str(rhs))
    return None


def is_log_concave(seq: ExactSequence, strict: bool = False) -> PropertyVerdict:
    """a_i^2 >= a_{i-1} a_{i+1} (strict: >) at every interior index."""
    pos = _positivity_witness(seq)
    if pos:
        return _verdict(LOG_CONCAVE, strict, pos)
    for i in range(1, len(seq) - 1):
        square = seq[i] * seq[i]
        product = seq[i - 1] * seq[i + 1]
        ok = square > product if strict else square >= product
        if not ok:
            w = Witness("comparison", (i, i - 1, i + 1), lhs=str(square), rhs=str(product))
            return _verdict(LOG_CONCAVE, strict, w)
    return _verdict(LOG_CONCAVE, strict, None)


def is_spiral(seq: ExactSequence) -> PropertyVerdict:
    """The interleaved end-to-middle chain, non-strict."""
    pos = _positivity_witness(seq)
    if pos:
        return _verdict(SPIRAL, False, pos)
    m = len(seq) - 1
    if m < 2:
        return _verdict(SPIRAL, False, None)
    # walk m, 0, m-1, 1, m-2, 2, ... down to floor(m/2)
    order: list[int] = []
    lo, hi = 0, m
    while lo <= hi:
        order.append(hi)
        if lo < hi:
            order.append(lo)
        hi -= 1
        lo += 1
    pairs = [
        ((order[t], order[t + 1]), seq[order[t]], seq[order[t + 1]])
        for t in range(len(order) - 1)
    ]
    return _verdict(SPIRAL, False, _chain_witness(pairs, strict=False))


def is_ratio_monotone(seq: ExactSequence, strict: bool = False) -> PropertyVerdict:
    """Both reflected-ratio chains, each ending at (strictly) below one.

    Adjacent ratio comparisons are checked in cross-multiplied form
    a_{i-1} a_{m-1-i} <= a_i a_{m-i} and a_{m-i} a_{i+1} <= a_{m-1-i} a_i.
    """
    pos = _positivity_witness(seq)
    if pos:
        return _verdict(RATIO_MONOTONE, strict, pos)
    m = len(seq) - 1
    if m < 2:
        return _verdict(RATIO_MONOTONE, strict, None)
    pairs: list[tuple[tuple[int, ...], ExactValue, ExactValue]] = []
    # front chain: a_{i-1}/a_{m-i} <= a_i/a_{m-1-i}, then last ratio <= 1
    half = m // 2
    for i in range(1, half):
        pairs.append(
            ((i - 1, m - 1 - i, i, m - i), seq[i - 1] * seq[m - 1 - i], seq[i] * seq[m - i])
        )
    pairs.append(((half - 1, m - half), seq[half - 1], seq[m - half]))
    # reflected chain: a_{m-i}/a_i <= a_{m-1-i}/a_{i+1}, then last ratio <= 1
    rhalf = (m - 1) // 2
    for i in range(rhalf):
        pairs.append(
            ((m - i, i + 1, m - 1 - i, i), seq[m - i] * seq[i + 1], seq[m - 1 - i] * seq[i])
        )
    pairs.append(((m - rhalf, rhalf), seq[m - rhalf], seq[rhalf]))
    return _verdict(RATIO_MONOTONE, strict, _chain_witness(pairs, strict))


def is_unimodal_midpeak(seq: ExactSequence) -> PropertyVerdict:
    """Strictly increasing to index floor(m/2), strictly decreasing after."""
    pos = _positivity_witness(seq)
    if pos:
        return _verdict(UNIMODAL_MIDPEAK, True, pos)
    m = len(seq) - 1
    if m < 2:
        return _verdict(UNIMODAL_MIDPEAK, True, None)
    peak = m // 2
    pairs: list[tuple[tuple[int, ...], ExactValue, ExactValue]] = []
    for i in range(peak):
        pairs.append(((i, i + 1), seq[i], seq[i + 1]))
    for i in range(peak, m):
        pairs.append(((i + 1, i), seq[i + 1], seq[i]))
    return _verdict(UNIMODAL_MIDPEAK, True, _chain_witness(pairs, strict=True))


def l_operator(seq: ExactSequence) -> tuple[ExactValue, ...]:
    """Map a_i to a_i^2 - a_{i-1} a_{i+1}, boundary neighbors taken as zero.

    Preserves length; both endpoints map to their squares.  Dyadic input
    stays dyadic (the type is closed under +, -, *).
    """
    n = len(seq) - 1
    out = []
    for i in range(n + 1):
        b = seq[i] * seq[i]
        if 0 < i < n:
            b = b - seq[i - 1] * seq[i + 1]
        out.append(b)
    return tuple(out)


PROPERTIES: dict[str, Callable[..., PropertyVerdict]] = {
    LOG_CONCAVE: is_log_concave,
    SPIRAL: is_spiral,
    RATIO_MONOTONE: is_ratio_monotone,
    UNIMODAL_MIDPEAK: is_unimodal_midpeak,
}

_STRICT_AWARE = {LOG_CONCAVE, RATIO_MONOTONE}


def k_property(
    seq: ExactSequence, k: int, prop: str, strict: bool = False
) -> PropertyVerdict:
    """Check ``prop`` on the first k iterates (levels 0..k-1) of the
    squared-difference operator.

    Returns the first failing level's verdict (a "positivity" witness marks
    an iterate that stopped being positive), or a success verdict carrying
    the deepest level checked.  ``k=1`` is exactly the direct predicate.
    """
    if k < 1:
        raise ValueError(f"depth must be >= 1, got {k}")
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}")
    predicate = PROPERTIES[prop]
    current = tuple(seq)
    for level in range(k):
        if prop in _STRICT_AWARE:
            verdict = predicate(current, strict)
        else:
            verdict = predicate(current)
        if not verdict.holds:
            return replace(verdict, level=level)
        if level + 1 < k:
            current = l_operator(current)
    return replace(verdict, level=k - 1)
