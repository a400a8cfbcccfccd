"""Scale classes induced by shift spaces through a distinguished symbol.

A word whose first symbol is distinguished induces a scale: the
composition of gaps between consecutive occurrences of that symbol,
the final gap wrapping around past the end of the word.  Interior
gaps are first return loop sizes; the final gap may additionally be
any size bounded above by some loop size.  That structure yields
closed forms for the number of scales of each total, the number of
their rotation classes, and the size of the union of their modes,
optionally refined by the number of notes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .combinatorics import (
    Composition,
    PartSpec,
    orbital_dim,
    transversal_dim,
)
from .numtheory import divisors, totient
from .reports import CLOSED_FORM, ENUMERATION, DimReport
from .series import (
    DEFAULT_ORDER,
    BivariateSeries,
    NonIntegralCoefficientError,
    TruncatedSeries,
)
from .shiftspace import (
    LoopSystem,
    ReducibleShiftError,
    VertexShift,
    Word,
    first_return,
    is_irreducible,
    language_from,
)

DEFAULT_CAP = 10_000_000


class EnumerationCapError(RuntimeError):
    """Word enumeration would exceed the configured budget."""


def _coerce_spec(parts) -> PartSpec:
    if isinstance(parts, LoopSystem):
        return parts.part_spec()
    if isinstance(parts, PartSpec):
        return parts
    return PartSpec.finite(parts)


def induced_scale(word: Word) -> Composition:
    """Gaps between occurrences of the first symbol, last gap wrapping."""
    if not word:
        raise ValueError("the empty word induces no scale")
    positions = [i for i, letter in enumerate(word) if letter == word[0]]
    return _gap_composition(positions, len(word))


def _gap_composition(positions, length: int) -> Composition:
    gaps = [b - a for a, b in zip(positions, positions[1:])]
    gaps.append(length - positions[-1])
    return tuple(gaps)


def _indicator(sizes, order: int) -> TruncatedSeries:
    coeffs = [0] * (order + 1)
    for k in sizes:
        if 1 <= k <= order:
            coeffs[k] = 1
    return TruncatedSeries(coeffs, order)


def _indicator_bgf(sizes, order: int) -> BivariateSeries:
    rows = [[0] * (n + 1) for n in range(order + 1)]
    for k in sizes:
        if 1 <= k <= order:
            rows[k][1] = 1
    return BivariateSeries(rows, order)


def composition_gf(parts, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """1/(1 - sum_{k in K} z^k): compositions with all parts in K."""
    spec = _coerce_spec(parts)
    return _indicator(spec.members_up_to(order), order).quasi_inverse()


def composition_bgf(parts, order: int = DEFAULT_ORDER) -> BivariateSeries:
    """Same with u marking the number of parts."""
    spec = _coerce_spec(parts)
    return _indicator_bgf(spec.members_up_to(order), order).quasi_inverse()


def wheels_gf(parts, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Rotation classes of compositions with parts in K, by total.

    sum_k phi(k)/k log 1/(1 - sum_{j in K} z^{jk}), computed without
    fractions: with s the indicator of K and h = 1/(1-s), the inner log
    has m-th coefficient P_m / m where P_m = sum_j j s_j h_{m-j}, so the
    z^n coefficient is (1/n) sum_{k|n} phi(k) P_{n/k}, an integer.
    """
    spec = _coerce_spec(parts)
    members = set(spec.members_up_to(order))
    s = [1 if k in members else 0 for k in range(order + 1)]
    s[0] = 0
    h = [0] * (order + 1)
    h[0] = 1
    for m in range(1, order + 1):
        h[m] = sum(s[j] * h[m - j] for j in range(1, m + 1))
    p = [0] * (order + 1)
    for m in range(1, order + 1):
        p[m] = sum(j * h[m - j] for j in range(1, m + 1) if s[j])
    coeffs = [0] * (order + 1)
    for n in range(1, order + 1):
        total = sum(totient(k) * p[n // k] for k in divisors(n))
        quot, rem = divmod(total, n)
        if rem:
            raise NonIntegralCoefficientError(
                f"wheel count {total}/{n} at order {n} is not an integer"
            )
        coeffs[n] = quot
    return TruncatedSeries(coeffs, order)


def wheels_bgf(parts, order: int = DEFAULT_ORDER) -> BivariateSeries:
    """Wheels refined by the number of parts.

    With S_{a,b} the number of compositions of a into exactly b parts
    from K, the (n,m) entry is (1/m) sum_{k | gcd(n,m)} phi(k) S_{n/k,m/k}.
    """
    spec = _coerce_spec(parts)
    members = spec.members_up_to(order)
    table = [[0] * (order + 1) for _ in range(order + 1)]
    table[0][0] = 1
    for a in range(1, order + 1):
        row = table[a]
        for j in members:
            if j > a:
                break
            prev = table[a - j]
            for b in range(1, a + 1):
                row[b] += prev[b - 1]
    rows = [[0]]
    for n in range(1, order + 1):
        row = [0] * (n + 1)
        for m in range(1, n + 1):
            total = 0
            for k in divisors(gcd(n, m)):
                total += totient(k) * table[n // k][m // k]
            quot, rem = divmod(total, m)
            if rem:
                raise NonIntegralCoefficientError(
                    f"wheel count {total}/{m} at ({n},{m}) is not an integer"
                )
            row[m] = quot
        rows.append(row)
    return BivariateSeries(rows, order)


def tail_sizes(parts, order: int = DEFAULT_ORDER) -> tuple[int, ...]:
    """Final gaps outside K: the k not in K below some member of K."""
    spec = _coerce_spec(parts)
    absent = spec.absent_up_to(order)
    if spec.unbounded:
        return absent
    if spec.max_part is None:
        return ()
    return tuple(k for k in absent if k < spec.max_part)


def a_series(parts, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Scales whose final gap falls outside K: (sum_{k in E} z^k) C^K(z)."""
    spec = _coerce_spec(parts)
    extras = _indicator(tail_sizes(spec, order), order)
    return composition_gf(spec, order) * extras


def a_bgf(parts, order: int = DEFAULT_ORDER) -> BivariateSeries:
    spec = _coerce_spec(parts)
    extras = _indicator_bgf(tail_sizes(spec, order), order)
    return composition_bgf(spec, order) * extras


def b_series(parts, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Modes swept by the out-of-K scales: u d/du of a at u = 1."""
    return a_bgf(parts, order).partial_u_at_1()


def b_bgf(parts, order: int = DEFAULT_ORDER) -> BivariateSeries:
    return a_bgf(parts, order).length_weighted()


def symbol_dims(
    shift: VertexShift,
    symbol: str,
    order: int = DEFAULT_ORDER,
    bivariate: bool = False,
) -> DimReport:
    """Closed-form dimensions of the scales distinguished at ``symbol``.

    Transversal: wheels over the loop sizes plus the out-of-K tails,
    each of which heads its own rotation class.  Orbital: compositions
    over the loop sizes plus the modes of the tailed scales.
    """
    if not is_irreducible(shift):
        raise ReducibleShiftError(
            "scale closed forms need an irreducible transition matrix"
        )
    loop = first_return(shift, symbol, order)
    spec = loop.part_spec()
    comp = composition_gf(spec, order)
    extras = _indicator(tail_sizes(spec, order), order)
    a = comp * extras
    b = b_series(spec, order)
    transversal = (wheels_gf(spec, order) + a).integer_coeffs()[1:]
    orbital = (comp + b).integer_coeffs()[1:]
    sizes = (comp + a).integer_coeffs()[1:]
    table_t = table_o = None
    if bivariate:
        comp2 = composition_bgf(spec, order)
        a2 = a_bgf(spec, order)
        table_t = wheels_bgf(spec, order) + a2
        table_o = comp2 + a2.length_weighted()
    return DimReport(
        transversal,
        orbital,
        CLOSED_FORM,
        includes_empty=True,
        class_sizes=sizes,
        bivariate_transversal=table_t,
        bivariate_orbital=table_o,
    )


def _word_counts(shift: VertexShift, order: int) -> list[int]:
    """Number of length-n words for n = 1..order, via matrix powers."""
    k = shift.size
    power = [[int(i == j) for j in range(k)] for i in range(k)]
    counts = []
    for _ in range(order):
        counts.append(sum(sum(row) for row in power))
        power = [
            [sum(power[i][l] * shift.matrix[l][j] for l in range(k)) for j in range(k)]
            for i in range(k)
        ]
    return counts


def _charge(budget: list[int], amount: int, n: int) -> None:
    budget[0] -= amount
    if budget[0] < 0:
        raise EnumerationCapError(
            f"enumerating {amount} words of length {n} exceeds the cap"
        )


def global_dims(
    shift: VertexShift, order: int = DEFAULT_ORDER, cap: int = DEFAULT_CAP
) -> DimReport:
    """Dimensions of the scales over all distinguished symbols at once.

    Enumerates every word, distinguishes its first symbol, and reduces
    the resulting scale sets exactly; no closed form is attempted.
    """
    counts = _word_counts(shift, order)
    budget = [cap]
    transversal = []
    orbital = []
    sizes = []
    for n in range(1, order + 1):
        _charge(budget, counts[n - 1], n)
        scales = set()
        for symbol in shift.alphabet:
            for word in language_from(shift, symbol, n):
                scales.add(induced_scale(word))
        transversal.append(transversal_dim(scales))
        orbital.append(orbital_dim(scales))
        sizes.append(len(scales))
    return DimReport(
        tuple(transversal),
        tuple(orbital),
        ENUMERATION,
        class_sizes=tuple(sizes),
    )


@dataclass(frozen=True, eq=False)
class ScaleClass:
    """The scale sets of one distinguished symbol, graded by total."""

    source: VertexShift | str
    symbol: str
    by_size: dict[int, frozenset[Composition]] = field(repr=False)

    @property
    def order(self) -> int:
        return max(self.by_size, default=0)

    def at(self, n: int) -> frozenset[Composition]:
        try:
            return self.by_size[n]
        except KeyError:
            raise ValueError(f"no scales computed for total {n}") from None

    def to_json(self) -> dict:
        return {
            "source": self.source if isinstance(self.source, str) else "vertex shift",
            "symbol": self.symbol,
            "sets": [
                {"n": n, "scales": [list(c) for c in sorted(self.by_size[n])]}
                for n in sorted(self.by_size)
            ],
        }


def scale_class(
    shift: VertexShift,
    symbol: str,
    order: int = DEFAULT_ORDER,
    cap: int = DEFAULT_CAP,
) -> ScaleClass:
    """Enumerated scale sets of the words starting at ``symbol``."""
    shift.alphabet.index(symbol)
    counts = _word_counts(shift, order)
    budget = [cap]
    by_size = {}
    for n in range(1, order + 1):
        _charge(budget, counts[n - 1], n)
        by_size[n] = frozenset(
            induced_scale(word) for word in language_from(shift, symbol, n)
        )
    return ScaleClass(shift, symbol, by_size)


def distinguished_set_scales(
    shift: VertexShift,
    distinguished,
    order: int = DEFAULT_ORDER,
    start: str | None = None,
    cap: int = DEFAULT_CAP,
) -> ScaleClass:
    """Scales with gaps measured between visits to a set of symbols.

    Words start at ``start`` when given, otherwise anywhere in the set.
    """
    members = frozenset(distinguished)
    if not members:
        raise ValueError("distinguished set is empty")
    for symbol in members:
        shift.alphabet.index(symbol)
    if start is not None and start not in members:
        raise ValueError(f"start symbol {start!r} is not distinguished")
    starts = (
        [start]
        if start is not None
        else sorted(members, key=shift.alphabet.index)
    )
    counts = _word_counts(shift, order)
    budget = [cap]
    by_size = {}
    for n in range(1, order + 1):
        _charge(budget, counts[n - 1], n)
        scales = set()
        for symbol in starts:
            for word in language_from(shift, symbol, n):
                positions = [i for i, letter in enumerate(word) if letter in members]
                scales.add(_gap_composition(positions, n))
        by_size[n] = frozenset(scales)
    return ScaleClass(shift, start if start is not None else "all", by_size)
