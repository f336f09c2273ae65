"""Ground sets, solutions and the diversity measures built on them.

Weights are exact integers. Decimal input is scaled by a power of ten
(``scale_digits``) before it reaches this module, so every distance and
diversity value here is an exact Python ``int``.
"""

from __future__ import annotations

from decimal import Decimal, InvalidOperation
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidInputError

SignedWeights = tuple[int, ...]

DEFAULT_SCALE_DIGITS = 6
INT64_MAX = 2**63 - 1


def scale_decimal(text: str | int | Decimal, digits: int = DEFAULT_SCALE_DIGITS) -> int:
    """Convert a decimal literal to an integer scaled by ``10**digits``.

    Raises InvalidInputError when the literal carries more fractional
    digits than the scale allows or does not fit a signed 64-bit integer.
    """
    try:
        value = Decimal(str(text).strip())
    except InvalidOperation:
        raise InvalidInputError(f"not a decimal number: {text!r}") from None
    if not value.is_finite():
        raise InvalidInputError(f"not a finite number: {text!r}")
    scaled = value.scaleb(digits)
    if scaled != scaled.to_integral_value():
        raise InvalidInputError(f"{text!r} has more than {digits} decimal places")
    out = int(scaled)
    if abs(out) > INT64_MAX:
        raise InvalidInputError(f"{text!r} overflows a 64-bit scaled integer")
    return out


def format_scaled(value: int, digits: int) -> str:
    """Render a scaled integer back as a plain decimal string."""
    if digits == 0:
        return str(value)
    sign = "-" if value < 0 else ""
    whole, frac = divmod(abs(value), 10**digits)
    frac_s = str(frac).rjust(digits, "0").rstrip("0")
    return f"{sign}{whole}.{frac_s}" if frac_s else f"{sign}{whole}"


class GroundSet:
    """Element universe ``0..size-1`` with nonnegative integer weights."""

    __slots__ = ("weights", "scale_digits", "_array")

    def __init__(self, weights: Iterable[int], scale_digits: int = 0):
        ws = tuple(weights)
        if not ws:
            raise InvalidInputError("ground set must contain at least one element")
        for w in ws:
            if isinstance(w, bool) or not isinstance(w, (int, np.integer)):
                raise InvalidInputError(f"weights must be integers, got {w!r}")
            if w < 0:
                raise InvalidInputError(f"weights must be nonnegative, got {w}")
        self.weights: tuple[int, ...] = tuple(int(w) for w in ws)
        self.scale_digits = scale_digits
        self._array = None

    @classmethod
    def unit(cls, size: int) -> GroundSet:
        return cls([1] * size)

    @classmethod
    def from_decimals(cls, values: Iterable, digits: int = DEFAULT_SCALE_DIGITS) -> GroundSet:
        return cls([scale_decimal(v, digits) for v in values], scale_digits=digits)

    @property
    def size(self) -> int:
        return len(self.weights)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    def array(self) -> np.ndarray:
        """Weights as an int64 array (object dtype if they would overflow)."""
        if self._array is None:
            dtype = np.int64 if self.total_weight <= INT64_MAX else object
            self._array = np.array(self.weights, dtype=dtype)
        return self._array

    def check(self, sol: Solution) -> None:
        if sol.members and sol.members[-1] >= self.size:
            raise InvalidInputError(
                f"element {sol.members[-1]} out of range for ground set of size {self.size}"
            )

    def __len__(self) -> int:
        return self.size

    def __eq__(self, other) -> bool:
        return isinstance(other, GroundSet) and self.weights == other.weights

    def __hash__(self) -> int:
        return hash(self.weights)

    def __repr__(self) -> str:
        return f"GroundSet(size={self.size})"


class Solution:
    """An immutable subset of ground-set indices.

    Members are kept as a sorted tuple plus an integer bitset mirror; the
    bitset carries equality tests and symmetric differences.
    """

    __slots__ = ("members", "mask")

    def __init__(self, members: Iterable[int] = ()):
        ms = sorted(set(int(m) for m in members))
        if ms and ms[0] < 0:
            raise InvalidInputError(f"negative element index {ms[0]}")
        self.members: tuple[int, ...] = tuple(ms)
        mask = 0
        for m in ms:
            mask |= 1 << m
        self.mask = mask

    @classmethod
    def from_mask(cls, mask: int) -> Solution:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(i)
            mask >>= 1
            i += 1
        return cls(out)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, e: int) -> bool:
        return e >= 0 and bool(self.mask >> e & 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, Solution) and self.mask == other.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def __lt__(self, other: Solution) -> bool:
        return self.members < other.members

    def __repr__(self) -> str:
        return f"Solution({list(self.members)})"

    def union(self, other: Iterable[int]) -> Solution:
        return Solution(self.members + tuple(other))

    def isdisjoint(self, other: Solution) -> bool:
        return not (self.mask & other.mask)

    def issubset(self, other: Solution) -> bool:
        return self.mask & ~other.mask == 0


def _weight_of_mask(weights: Sequence[int], mask: int) -> int:
    total = 0
    i = 0
    while mask:
        low = mask & -mask
        i = low.bit_length() - 1
        total += weights[i]
        mask ^= low
    return total


def hamming_distance(g: GroundSet, a: Solution, b: Solution) -> int:
    """Total weight of the symmetric difference of ``a`` and ``b``."""
    g.check(a)
    g.check(b)
    return _weight_of_mask(g.weights, a.mask ^ b.mask)


def objective_value(weights: Sequence[int], sol: Solution) -> int:
    """Sum of (possibly signed) ``weights`` over the members of ``sol``."""
    return sum(weights[e] for e in sol.members)


class SolutionFamily:
    """Ordered list of solutions with per-element occurrence counts.

    ``multiplicity[e]`` is the number of member solutions containing ``e``
    and is maintained across every mutation.
    """

    def __init__(self, size: int, solutions: Iterable[Solution] = ()):
        self.size = size
        self._solutions: list[Solution] = []
        self.multiplicity = [0] * size
        for s in solutions:
            self.append(s)

    def _add(self, sol: Solution, delta: int) -> None:
        if sol.members and sol.members[-1] >= self.size:
            raise InvalidInputError(f"element {sol.members[-1]} out of range")
        for e in sol.members:
            self.multiplicity[e] += delta

    def append(self, sol: Solution) -> None:
        self._add(sol, 1)
        self._solutions.append(sol)

    def replace(self, index: int, sol: Solution) -> Solution:
        old = self._solutions[index]
        self._add(sol, 1)
        self._add(old, -1)
        self._solutions[index] = sol
        return old

    def pop(self, index: int = -1) -> Solution:
        old = self._solutions.pop(index)
        self._add(old, -1)
        return old

    def without(self, index: int) -> SolutionFamily:
        rest = self._solutions[:index] + self._solutions[index + 1:]
        return SolutionFamily(self.size, rest)

    def copy(self) -> SolutionFamily:
        return SolutionFamily(self.size, self._solutions)

    @property
    def solutions(self) -> tuple[Solution, ...]:
        return tuple(self._solutions)

    def __len__(self) -> int:
        return len(self._solutions)

    def __iter__(self) -> Iterator[Solution]:
        return iter(self._solutions)

    def __getitem__(self, i: int) -> Solution:
        return self._solutions[i]

    def __contains__(self, sol: Solution) -> bool:
        return sol in self._solutions

    def __repr__(self) -> str:
        return f"SolutionFamily({self._solutions!r})"


def _as_family(g: GroundSet, fam) -> SolutionFamily:
    if isinstance(fam, SolutionFamily):
        if fam.size != g.size:
            raise InvalidInputError("family and ground set sizes differ")
        return fam
    return SolutionFamily(g.size, fam)


def sum_diversity(g: GroundSet, fam: SolutionFamily | Sequence[Solution]) -> int:
    """Sum of pairwise weighted Hamming distances over the family.

    Evaluated per element as ``w(e) * m(e) * (k - m(e))``, which equals the
    pairwise sum exactly.
    """
    fam = _as_family(g, fam)
    k = len(fam)
    if k == 0:
        raise InvalidInputError("family must be nonempty")
    return sum(w * m * (k - m) for w, m in zip(g.weights, fam.multiplicity) if m)


def sum_diversity_pairwise(g: GroundSet, fam: SolutionFamily | Sequence[Solution]) -> int:
    sols = list(fam)
    if not sols:
        raise InvalidInputError("family must be nonempty")
    return sum(
        hamming_distance(g, sols[i], sols[j])
        for i in range(len(sols))
        for j in range(i + 1, len(sols))
    )


def reweight(g: GroundSet, partial: SolutionFamily | Sequence[Solution]) -> tuple[SignedWeights, int]:
    """Signed weights turning a distance sum into a linear objective.

    Returns ``(w2, c)`` with ``w2[e] = w[e] * (Ex(e) - In(e))`` where In(e)
    counts members of ``partial`` containing ``e`` and Ex(e) the rest, and
    ``c = sum_e w[e] * In(e)``. For every subset X,
    ``sum_{Y in partial} d_w(X, Y) == sum(w2[e] for e in X) + c``.
    """
    fam = _as_family(g, partial)
    n = len(fam)
    w2 = tuple(w * (n - 2 * m) for w, m in zip(g.weights, fam.multiplicity))
    const = sum(w * m for w, m in zip(g.weights, fam.multiplicity))
    return w2, const
