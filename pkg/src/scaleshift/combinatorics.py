"""Integer compositions, wheels, and the cyclic shift action.

A composition is a plain tuple of positive integers; the empty tuple is the
empty composition (size 0, length 0). The cyclic shift alpha rotates parts
left; its orbits are the modes of a scale, and a wheel is an orbit class
stored by canonical (lexicographically least) representative.

``PartSpec`` describes a set K of allowed part sizes. Besides explicit finite
sets it covers the two shapes that first-return supports produce: cofinite
sets ("every k >= k0") and partially known sets (membership known up to a
horizon, plus boundedness data from graph analysis).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection, Iterable, Union

Composition = tuple[int, ...]


def as_composition(parts: Iterable[int]) -> Composition:
    """Validate and normalize an iterable of parts into a composition."""
    w = tuple(int(p) for p in parts)
    for p in w:
        if p < 1:
            raise ValueError(f"composition parts must be >= 1, got {p}")
    return w


def rotate(w: Composition, j: int) -> Composition:
    """Cyclic left shift by j positions; negative j rotates right."""
    if len(w) < 2:
        return w
    j %= len(w)
    return w[j:] + w[:j]


def orbit(w: Composition) -> frozenset[Composition]:
    """All distinct rotations of w; the modes of the scale w encodes."""
    return frozenset(rotate(w, j) for j in range(max(len(w), 1)))


@dataclass(frozen=True)
class OrbitSummary:
    orbit_size: int
    period: int
    length: int


def summarize(w: Composition) -> OrbitSummary:
    """Orbit size and period of a nonempty composition; orbit_size * period = length."""
    if not w:
        raise ValueError("empty composition has no orbit summary")
    size = len(orbit(w))
    return OrbitSummary(orbit_size=size, period=len(w) // size, length=len(w))


@dataclass(frozen=True)
class Wheel:
    """Rotation class of a composition, keyed by its least rotation."""

    rep: Composition

    def to_json(self) -> dict:
        return {"rep": list(self.rep)}


def least_rotation(w: tuple) -> tuple:
    """Lexicographically least rotation of any tuple (compositions or words)."""
    if len(w) < 2:
        return w
    doubled = w + w
    n = len(w)
    return min(doubled[i : i + n] for i in range(n))


def canonical_wheel(w: Composition) -> Wheel:
    if not w:
        raise ValueError("the empty composition does not form a wheel")
    return Wheel(least_rotation(w))


def transversal_dim(B: Collection[Composition]) -> int:
    """Number of distinct rotation classes represented in B."""
    return len({least_rotation(w) for w in B})


def orbital_dim(B: Collection[Composition]) -> int:
    """Cardinality of the union of the full rotation orbits of members of B.

    Distinct classes have disjoint orbits, so summing one orbit size per
    represented class equals the size of the union.
    """
    return sum(len(orbit(rep)) for rep in {least_rotation(w) for w in B})


def transversal_of(B: Collection[Composition]) -> set[Composition]:
    """One element of B per represented class: the least element of B in the class."""
    chosen: dict[Composition, Composition] = {}
    for w in B:
        key = least_rotation(w)
        if key not in chosen or w < chosen[key]:
            chosen[key] = w
    return set(chosen.values())


def mutually_independent(A: Collection[Composition], B: Collection[Composition]) -> bool:
    """True when no element of A is a rotation of an element of B."""
    return not {least_rotation(w) for w in A} & {least_rotation(w) for w in B}


@dataclass(frozen=True)
class PartSpec:
    """A set K of allowed part sizes, possibly known only up to a horizon.

    ``known`` holds the members at or below ``horizon`` (all members when
    ``horizon`` is None and there is no tail); ``tail_from`` marks cofinite
    sets where every k >= tail_from belongs; ``unbounded`` and ``max_part``
    record boundedness of the full, untruncated set.
    """

    known: frozenset[int]
    tail_from: int | None = None
    horizon: int | None = None
    unbounded: bool = False
    max_part: int | None = None

    def __post_init__(self):
        for k in self.known:
            if k < 1:
                raise ValueError(f"part sizes must be >= 1, got {k}")
        if self.tail_from is not None:
            if self.tail_from < 1:
                raise ValueError("tail_from must be >= 1")
            if not self.unbounded:
                raise ValueError("a tail makes the set unbounded")
        if self.unbounded and self.max_part is not None:
            raise ValueError("unbounded sets have no max part")
        if self.horizon is not None and self.horizon < 1:
            raise ValueError("horizon must be >= 1")

    # -- constructors -------------------------------------------------------

    @classmethod
    def finite(cls, parts: Iterable[int]) -> "PartSpec":
        members = frozenset(int(p) for p in parts)
        return cls(known=members, max_part=max(members) if members else None)

    @classmethod
    def from_min(cls, k0: int) -> "PartSpec":
        """The cofinite set {k : k >= k0}."""
        return cls(known=frozenset(), tail_from=int(k0), unbounded=True)

    @classmethod
    def naturals(cls) -> "PartSpec":
        return cls.from_min(1)

    @classmethod
    def parse(cls, text: str) -> "PartSpec":
        """Parse CLI syntax: 'all', a 'k+' lower bound, or comma-separated sizes."""
        text = text.strip()
        if text == "all":
            return cls.naturals()
        if text.endswith("+"):
            return cls.from_min(int(text[:-1]))
        tokens = [tok for tok in text.split(",") if tok.strip()]
        if not tokens:
            raise ValueError(f"no part sizes in {text!r}")
        return cls.finite(int(tok) for tok in tokens)

    # -- queries --------------------------------------------------------------

    def _require_known(self, k: int) -> None:
        if self.tail_from is not None and k >= self.tail_from:
            return
        if self.horizon is not None and k > self.horizon:
            raise ValueError(f"membership of {k} unknown beyond horizon {self.horizon}")

    def contains(self, k: int) -> bool:
        if k < 1:
            return False
        if self.tail_from is not None and k >= self.tail_from:
            return True
        self._require_known(k)
        return k in self.known

    def members_up_to(self, limit: int) -> tuple[int, ...]:
        """All members k <= limit, ascending; errors beyond the horizon."""
        self._require_known(limit)
        members = {k for k in self.known if k <= limit}
        if self.tail_from is not None:
            members.update(range(self.tail_from, limit + 1))
        return tuple(sorted(members))

    def absent_up_to(self, limit: int) -> tuple[int, ...]:
        """All non-members 1 <= k <= limit, ascending; errors beyond the horizon."""
        present = set(self.members_up_to(limit))
        return tuple(k for k in range(1, limit + 1) if k not in present)

    def is_empty_up_to(self, limit: int) -> bool:
        return not self.members_up_to(limit)

    def describe(self) -> str:
        if self.tail_from is not None:
            extra = sorted(k for k in self.known if k < self.tail_from)
            head = ",".join(str(k) for k in extra)
            tail = f"{self.tail_from}+"
            return f"{{{head},{tail}}}" if head else f"{{{tail}}}"
        body = ",".join(str(k) for k in sorted(self.known))
        if self.horizon is not None:
            mark = "..." if self.unbounded else f"<= {self.max_part}"
            return f"{{{body}}} (known to {self.horizon}, {mark})"
        return f"{{{body}}}"


PartsLike = Union[PartSpec, Iterable[int]]


def _explicit_parts(parts: PartsLike, n: int) -> tuple[int, ...]:
    if isinstance(parts, PartSpec):
        return parts.members_up_to(n) if n >= 1 else ()
    return tuple(sorted({int(k) for k in parts if 1 <= int(k) <= n}))


def enumerate_compositions(n: int, parts: PartsLike) -> set[Composition]:
    """All compositions of n with every part in the allowed set."""
    if n < 0:
        raise ValueError(f"composition size must be >= 0, got {n}")
    if n == 0:
        return {()}
    allowed = _explicit_parts(parts, n)
    out: set[Composition] = set()
    stack: list[tuple[int, Composition]] = [(n, ())]
    while stack:
        remaining, prefix = stack.pop()
        for k in allowed:
            if k > remaining:
                break
            if k == remaining:
                out.add(prefix + (k,))
            else:
                stack.append((remaining - k, prefix + (k,)))
    return out


def enumerate_wheels(n: int, parts: PartsLike) -> set[Wheel]:
    """All wheels of size n >= 1 with parts in the allowed set (brute force)."""
    if n < 1:
        raise ValueError(f"wheel size must be >= 1, got {n}")
    return {canonical_wheel(w) for w in enumerate_compositions(n, parts)}
