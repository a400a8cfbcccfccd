"""Vertex shifts and shifts of finite type.

A vertex shift is presented by a square 0/1 transition matrix over an
ordered alphabet; words are labelings of finite paths in the matrix
graph.  An SFT given by forbidden blocks is recoded to a vertex shift
on admissible blocks (higher block presentation).  The module computes
languages, irreducibility, zeta functions, periodic point counts,
first return loop systems, and the language dimension formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .combinatorics import PartSpec
from .numtheory import ArithSequence, divisors, mobius_invert
from .reports import CLOSED_FORM, DimReport
from .series import DEFAULT_ORDER, RationalFunction, TruncatedSeries

Word = tuple[str, ...]


class ReducibleShiftError(ValueError):
    """The transition matrix is not irreducible."""


class DegenerateShiftError(ValueError):
    """The presentation admits no blocks at all."""


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]

    def __post_init__(self):
        if not self.symbols:
            raise ValueError("alphabet is empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols repeat")
        for s in self.symbols:
            if not s:
                raise ValueError("empty symbol token")

    @classmethod
    def of(cls, symbols) -> "Alphabet":
        return cls(tuple(symbols))

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise ValueError(f"unknown symbol {symbol!r}") from None

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self.symbols


@dataclass(frozen=True)
class VertexShift:
    alphabet: Alphabet
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        k = len(self.alphabet)
        if len(self.matrix) != k:
            raise ValueError("matrix size does not match alphabet")
        for row in self.matrix:
            if len(row) != k:
                raise ValueError("matrix is not square")
            for entry in row:
                if entry not in (0, 1):
                    raise ValueError(f"matrix entries must be 0 or 1, got {entry}")

    @classmethod
    def from_rows(cls, symbols, rows) -> "VertexShift":
        return cls(Alphabet.of(symbols), tuple(tuple(int(e) for e in r) for r in rows))

    @property
    def size(self) -> int:
        return len(self.alphabet)

    def entry(self, s: str, t: str) -> int:
        return self.matrix[self.alphabet.index(s)][self.alphabet.index(t)]


@dataclass(frozen=True)
class SftPresentation:
    alphabet: Alphabet
    forbidden: frozenset[Word]

    def __post_init__(self):
        for block in self.forbidden:
            if len(block) < 2:
                raise ValueError("forbidden blocks must have length >= 2")
            for letter in block:
                if letter not in self.alphabet:
                    raise ValueError(f"forbidden block uses unknown symbol {letter!r}")

    @classmethod
    def of(cls, symbols, blocks) -> "SftPresentation":
        """Normalize: drop any forbidden block containing another as a subword."""
        words = {tuple(b) for b in blocks}
        kept = {
            b for b in words
            if not any(o != b and _is_subword(o, b) for o in words)
        }
        return cls(Alphabet.of(symbols), frozenset(kept))

    @property
    def step(self) -> int:
        """The SFT is step-many steps: max forbidden length minus one."""
        return max((len(b) for b in self.forbidden), default=2) - 1


def _is_subword(needle: Word, haystack: Word) -> bool:
    k = len(needle)
    return any(haystack[i:i + k] == needle for i in range(len(haystack) - k + 1))


@dataclass(frozen=True)
class HigherBlock:
    """A vertex shift on admissible blocks plus the block spelling per vertex."""

    shift: VertexShift
    blocks: tuple[Word, ...]

    def label(self, i: int) -> str:
        """The 1-block factor map: a vertex is sent to its first letter."""
        return self.blocks[i][0]


@dataclass(frozen=True)
class LoopSystem:
    """First return loops at ``symbol``: series plus support analysis.

    ``support`` lists the sizes k <= order with a nonzero coefficient.
    When the untruncated support is bounded, ``support_max`` is its true
    maximum (from graph analysis, valid beyond the truncation order).
    """

    symbol: str
    series: TruncatedSeries
    support: frozenset[int]
    support_unbounded: bool
    support_max: int | None

    def __post_init__(self):
        if self.series.coefficient(0) != 0:
            raise ValueError("loop series must have zero constant term")
        if self.support_unbounded and self.support_max is not None:
            raise ValueError("unbounded support has no maximum")

    def part_spec(self) -> PartSpec:
        return PartSpec(
            known=self.support,
            tail_from=None,
            horizon=self.series.order,
            unbounded=self.support_unbounded,
            max_part=self.support_max,
        )

    def to_json(self) -> dict:
        return {
            "symbol": self.symbol,
            "series": self.series.to_json(),
            "support": sorted(self.support),
            "support_unbounded": self.support_unbounded,
            "support_max": self.support_max,
        }


def higher_block(sft: SftPresentation) -> HigherBlock:
    """Recode an SFT as a vertex shift on its admissible step-blocks."""
    m = sft.step
    symbols = tuple(sft.alphabet)
    if len(symbols) ** m > 2_000_000:
        raise ValueError(f"block enumeration over {len(symbols)}^{m} is too large")
    blocks = tuple(
        b for b in product(symbols, repeat=m)
        if not any(_is_subword(f, b) for f in sft.forbidden)
    )
    if not blocks:
        raise DegenerateShiftError("no admissible blocks")
    full = {b for b in sft.forbidden if len(b) == m + 1}
    rows = tuple(
        tuple(
            1 if u[1:] == v[:-1] and u + v[-1:] not in full else 0
            for v in blocks
        )
        for u in blocks
    )
    tokens = tuple(_block_token(b) for b in blocks)
    return HigherBlock(VertexShift.from_rows(tokens, rows), blocks)


def _block_token(block: Word) -> str:
    if all(len(letter) == 1 for letter in block):
        return "".join(block)
    return "|".join(block)


def language(shift: VertexShift, n: int) -> frozenset[Word]:
    """All labelings of (n-1)-edge paths; n = 0 gives the empty word."""
    return frozenset(_paths(shift, range(shift.size), n))


def language_from(shift: VertexShift, symbol: str, n: int) -> frozenset[Word]:
    return frozenset(_paths(shift, [shift.alphabet.index(symbol)], n))


def _paths(shift: VertexShift, starts, n: int):
    if n < 0:
        raise ValueError("word length must be >= 0")
    if n == 0:
        yield ()
        return
    symbols = shift.alphabet.symbols
    succ = [[j for j, e in enumerate(row) if e] for row in shift.matrix]
    stack = [(i,) for i in starts]
    while stack:
        prefix = stack.pop()
        if len(prefix) == n:
            yield tuple(symbols[i] for i in prefix)
            continue
        for j in succ[prefix[-1]]:
            stack.append(prefix + (j,))


def is_irreducible(shift: VertexShift) -> bool:
    """True iff every vertex reaches every vertex along a path of length >= 1."""
    k = shift.size
    if k == 1:
        return shift.matrix[0][0] == 1
    return _spans(shift.matrix, 0) and _spans(_transpose(shift.matrix), 0)


def _transpose(matrix):
    return tuple(tuple(row[i] for row in matrix) for i in range(len(matrix)))


def _spans(matrix, start) -> bool:
    seen = {start}
    frontier = [start]
    while frontier:
        i = frontier.pop()
        for j, e in enumerate(matrix[i]):
            if e and j not in seen:
                seen.add(j)
                frontier.append(j)
    return len(seen) == len(matrix)


def _char_det(matrix) -> list[int]:
    """Coefficients of det(I - zA), by Newton's identities on trace powers."""
    k = len(matrix)
    powers = _power_table(matrix, k)
    traces = [sum(powers[i][j][j] for j in range(k)) for i in range(k + 1)]
    elem = [Fraction(1)]
    for i in range(1, k + 1):
        acc = Fraction(0)
        for j in range(1, i + 1):
            acc += (-1) ** (j - 1) * elem[i - j] * traces[j]
        elem.append(acc / i)
    out = []
    for i, e in enumerate(elem):
        if e.denominator != 1:
            raise ArithmeticError(f"non-integer elementary symmetric value {e}")
        out.append((-1) ** i * e.numerator)
    return out


def _mat_mul(a, b):
    k = len(a)
    return tuple(
        tuple(sum(a[i][l] * b[l][j] for l in range(k)) for j in range(k))
        for i in range(k)
    )


def _power_table(matrix, top):
    k = len(matrix)
    identity = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
    powers = [identity]
    for _ in range(top):
        powers.append(_mat_mul(powers[-1], matrix))
    return powers


def zeta_rational(shift: VertexShift) -> RationalFunction:
    return RationalFunction([1], _char_det(shift.matrix))


def zeta(shift: VertexShift, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    return zeta_rational(shift).expand(order)


def periodic_counts(shift: VertexShift, order: int = DEFAULT_ORDER) -> ArithSequence:
    """p_n = trace(A^n) for n = 1..order."""
    powers = _power_table(shift.matrix, order)
    k = shift.size
    return ArithSequence(
        sum(powers[n][j][j] for j in range(k)) for n in range(1, order + 1)
    )


def minimal_periodic_counts(shift: VertexShift, order: int = DEFAULT_ORDER) -> ArithSequence:
    """q_n: points of least period exactly n, by Mobius inversion of p."""
    return mobius_invert(periodic_counts(shift, order))


def minimal_periodic_orbit_counts(shift: VertexShift, order: int = DEFAULT_ORDER) -> ArithSequence:
    """q_n / n: closed orbits of length exactly n."""
    q = minimal_periodic_counts(shift, order)
    out = []
    for n in range(1, order + 1):
        if q[n] % n:
            raise ArithmeticError(f"q_{n} = {q[n]} is not divisible by {n}")
        out.append(q[n] // n)
    return ArithSequence(out)


def periodic_orbit_counts(shift: VertexShift, order: int = DEFAULT_ORDER) -> ArithSequence:
    """Necklace counts sum_{k|n} q_k / k: closed orbits of length dividing n."""
    per_orbit = minimal_periodic_orbit_counts(shift, order)
    return ArithSequence(
        sum(per_orbit[k] for k in divisors(n)) for n in range(1, order + 1)
    )


def first_return(shift: VertexShift, symbol: str, order: int = DEFAULT_ORDER) -> LoopSystem:
    """The loop system at ``symbol``: 1 - det(I-zA)/det(I-zB), B = A minus 𝔰."""
    s = shift.alphabet.index(symbol)
    det_a = _char_det(shift.matrix)
    minor = tuple(
        tuple(e for j, e in enumerate(row) if j != s)
        for i, row in enumerate(shift.matrix)
        if i != s
    )
    det_b = _char_det(minor) if minor else [1]
    num = [b - a for a, b in _pad_pair(det_a, det_b)]
    series = RationalFunction(num, det_b).expand(order)
    support = frozenset(
        k for k in range(1, order + 1) if series.coefficient(k) != 0
    )
    unbounded, bound = _support_bound(shift, s)
    return LoopSystem(symbol, series, support, unbounded, bound)


def _pad_pair(a, b):
    top = max(len(a), len(b))
    a = list(a) + [0] * (top - len(a))
    b = list(b) + [0] * (top - len(b))
    return zip(a, b)


def _support_bound(shift: VertexShift, s: int):
    """(unbounded, max): sizes of first return loops at vertex s.

    Loops of length >= 2 run through interior vertices that are both
    reachable from an out-neighbor of s and co-reachable to an
    in-neighbor of s without touching s.  A cycle among those vertices
    pumps loops of unbounded length; otherwise the interior graph is
    acyclic and the longest interior path caps the loop length.
    """
    matrix = shift.matrix
    k = shift.size
    interior = [v for v in range(k) if v != s]
    outs = [v for v in interior if matrix[s][v]]
    ins = [v for v in interior if matrix[v][s]]
    fwd = _closure(matrix, outs, s, transpose=False)
    bwd = _closure(matrix, ins, s, transpose=True)
    valid = fwd & bwd
    if _has_cycle(matrix, valid):
        return True, None
    best = None
    if valid:
        topo = _topological(matrix, valid)
        longest = {v: (0 if v in set(outs) else None) for v in topo}
        for v in topo:
            if longest[v] is None:
                continue
            for t in valid:
                if matrix[v][t] and (longest[t] is None or longest[t] < longest[v] + 1):
                    longest[t] = longest[v] + 1
        ends = [longest[v] for v in ins if v in valid and longest[v] is not None]
        if ends:
            best = 2 + max(ends)
    if matrix[s][s]:
        best = max(best or 0, 1)
    return False, best


def _closure(matrix, seeds, s, transpose):
    seen = set(seeds)
    frontier = list(seeds)
    while frontier:
        i = frontier.pop()
        for j in range(len(matrix)):
            e = matrix[j][i] if transpose else matrix[i][j]
            if e and j != s and j not in seen:
                seen.add(j)
                frontier.append(j)
    return seen


def _has_cycle(matrix, vertices) -> bool:
    state = {v: 0 for v in vertices}
    for root in vertices:
        if state[root]:
            continue
        stack = [(root, iter([t for t in vertices if matrix[root][t]]))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for t in it:
                if state[t] == 1:
                    return True
                if state[t] == 0:
                    state[t] = 1
                    stack.append((t, iter([u for u in vertices if matrix[t][u]])))
                    advanced = True
                    break
            if not advanced:
                state[v] = 2
                stack.pop()
    return False


def _topological(matrix, vertices):
    indeg = {v: 0 for v in vertices}
    for u in vertices:
        for v in vertices:
            if matrix[u][v]:
                indeg[v] += 1
    order = [v for v in vertices if indeg[v] == 0]
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        for v in vertices:
            if matrix[u][v]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    order.append(v)
    return order


def first_return_matrix(shift: VertexShift, distinguished, order: int = DEFAULT_ORDER):
    """Return series table {(s, t): f}: first passages from s to t outside D."""
    dset = tuple(distinguished)
    if not dset:
        raise ValueError("distinguished set is empty")
    idx = [shift.alphabet.index(s) for s in dset]
    rest = [v for v in range(shift.size) if v not in set(idx)]
    sub = tuple(tuple(shift.matrix[u][v] for v in rest) for u in rest)
    powers = _power_table(sub, max(order - 2, 0)) if rest else []
    table = {}
    for s in dset:
        si = shift.alphabet.index(s)
        for t in dset:
            ti = shift.alphabet.index(t)
            coeffs = [0, shift.matrix[si][ti]] + [0] * (order - 1)
            for n in range(2, order + 1):
                coeffs[n] = sum(
                    shift.matrix[si][rest[a]]
                    * powers[n - 2][a][b]
                    * shift.matrix[rest[b]][ti]
                    for a in range(len(rest))
                    for b in range(len(rest))
                )
            table[(s, t)] = TruncatedSeries(coeffs[:order + 1], order)
    return table


def language_dims(shift: VertexShift, order: int = DEFAULT_ORDER) -> DimReport:
    """Transversal and orbital dimensions of L_n for n = 1..order."""
    matrix = shift.matrix
    k = shift.size
    powers = _power_table(matrix, order)
    necklaces = periodic_orbit_counts(shift, order)
    p = periodic_counts(shift, order)
    transversal = []
    orbital = []
    for n in range(1, order + 1):
        stranded = sum(
            powers[n - 1][i][j]
            for i in range(k)
            for j in range(k)
            if matrix[j][i] == 0
        )
        transversal.append(stranded + necklaces[n])
        orbital.append(n * stranded + p[n])
    return DimReport(tuple(transversal), tuple(orbital), CLOSED_FORM)


def parse_matrix(text: str) -> VertexShift:
    """Line 1: symbol tokens; following lines: 0/1 rows."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty matrix file")
    symbols = lines[0].split()
    rows = [ln.split() for ln in lines[1:]]
    if len(rows) != len(symbols):
        raise ValueError(f"expected {len(symbols)} rows, found {len(rows)}")
    return VertexShift.from_rows(symbols, rows)


def parse_forbidden(text: str) -> SftPresentation:
    """One forbidden block per line; optional '# alphabet: ...' header.

    Without the header the alphabet is the sorted set of letters seen.
    Single-character tokens may be concatenated; multi-character tokens
    must be whitespace-separated.
    """
    symbols = None
    blocks = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.lower().startswith("alphabet:"):
                symbols = tuple(body[len("alphabet:"):].split())
            continue
        blocks.append(tuple(line.split()) if " " in line else tuple(line))
    if not blocks:
        raise ValueError("no forbidden blocks in file")
    if symbols is None:
        symbols = tuple(sorted({letter for b in blocks for letter in b}))
    return SftPresentation.of(symbols, blocks)
