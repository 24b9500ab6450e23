"""Analogical-proportion algebra over Boolean and nominal symbols.

An analogical proportion states that "a is to b as c is to d".  Over a
finite symbol domain the proportion holds exactly for the quadruple
patterns ``(g,g,g,g)``, ``(g,h,g,h)`` and ``(g,g,h,h)`` with ``g != h``;
restricted to a two-symbol domain this yields the classical six Boolean
valuations.  Items (tuples of symbols) satisfy a proportion component-wise.

The module also provides the proportion equation solver, difference
vectors between items (the basis of pair-of-pairs reasoning: two ordered
pairs form a proportion iff their difference vectors are identical), and
the inverse-paralogy connective used for Bongard-style opposition.

Everything here is a pure function of immutable inputs; symbols are plain
strings, items are tuples of strings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

Item = tuple[str, ...]
#: One ordered value change between two items: (value in a, value in b).
Change = tuple[str, str]
#: Per-attribute difference between two items; None marks agreement.
Diff = tuple[Optional[Change], ...]


class SchemaError(ValueError):
    """Values, items or schemas do not line up (wrong domain, wrong arity)."""


@dataclass(frozen=True)
class Attribute:
    """A named attribute with a finite domain of at least two symbols.

    The domain is stored sorted; this fixed total order is what every
    deterministic tie-break in the package refers to.
    """

    name: str
    domain: tuple[str, ...]

    def __post_init__(self) -> None:
        symbols = tuple(sorted(set(self.domain)))
        if len(symbols) < 2:
            raise SchemaError(
                f"attribute {self.name!r} needs a domain of at least 2 symbols, "
                f"got {self.domain!r}"
            )
        object.__setattr__(self, "domain", symbols)

    def check(self, value: str) -> None:
        if value not in self.domain:
            raise SchemaError(
                f"value {value!r} not in domain of attribute {self.name!r}"
            )


@dataclass(frozen=True)
class Schema:
    """An ordered list of uniquely named attributes."""

    attributes: tuple[Attribute, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "attributes", tuple(self.attributes))
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            raise SchemaError(f"duplicate attribute names in schema: {names}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, Iterable[str]]]) -> "Schema":
        return cls(tuple(Attribute(n, tuple(d)) for n, d in pairs))

    @property
    def arity(self) -> int:
        return len(self.attributes)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.attributes)

    def index(self, name: str) -> int:
        for i, a in enumerate(self.attributes):
            if a.name == name:
                return i
        raise SchemaError(f"unknown attribute {name!r}")

    def indices(self, names: Iterable[str]) -> tuple[int, ...]:
        """Canonical (schema-ordered, deduplicated) index tuple for names."""
        return tuple(sorted({self.index(n) for n in names}))

    def validate_item(self, item: Sequence[str]) -> None:
        if len(item) != self.arity:
            raise SchemaError(
                f"item arity {len(item)} does not match schema arity {self.arity}"
            )
        for attr, value in zip(self.attributes, item):
            attr.check(value)


def _check_domain(domain: Iterable[str], *values: str) -> None:
    pool = set(domain)
    for v in values:
        if v not in pool:
            raise SchemaError(f"value {v!r} not in domain {sorted(pool)!r}")


def ap_holds(a: str, b: str, c: str, d: str, domain: Optional[Iterable[str]] = None) -> bool:
    """True iff a:b::c:d holds for single symbols.

    Equivalent to matching one of the patterns (g,g,g,g), (g,h,g,h),
    (g,g,h,h); over a two-symbol domain exactly the six Boolean valuations.
    """
    if domain is not None:
        _check_domain(domain, a, b, c, d)
    return (a == b and c == d) or (a == c and b == d)


def solve(a: str, b: str, c: str, domain: Optional[Iterable[str]] = None) -> Optional[str]:
    """The unique x with a:b::c:x, or None when the equation has no solution.

    A solution exists iff a == b (then x = c) or a == c (then x = b).
    """
    if domain is not None:
        _check_domain(domain, a, b, c)
    if a == b:
        return c
    if a == c:
        return b
    return None


def _check_arity(*items: Sequence[str]) -> None:
    n = len(items[0])
    for it in items[1:]:
        if len(it) != n:
            raise SchemaError(f"item arities differ: {[len(i) for i in items]}")


def ap_holds_vec(a: Item, b: Item, c: Item, d: Item, schema: Optional[Schema] = None) -> bool:
    """Component-wise proportion over items of equal arity."""
    if schema is not None:
        for it in (a, b, c, d):
            schema.validate_item(it)
    _check_arity(a, b, c, d)
    return all(
        (x == y and z == w) or (x == z and y == w)
        for x, y, z, w in zip(a, b, c, d)
    )


def solve_vec(a: Item, b: Item, c: Item, schema: Optional[Schema] = None) -> Optional[Item]:
    """Component-wise equation solving; None as soon as any component fails."""
    if schema is not None:
        for it in (a, b, c):
            schema.validate_item(it)
    _check_arity(a, b, c)
    out = []
    for x, y, z in zip(a, b, c):
        if x == y:
            out.append(z)
        elif x == z:
            out.append(y)
        else:
            return None
    return tuple(out)


def diff(a: Item, b: Item) -> Diff:
    """Per-attribute difference vector: None where equal, (a_i, b_i) where not.

    Two ordered pairs (a,b) and (c,d) satisfy a:b::c:d iff
    diff(a, b) == diff(c, d): same agreement positions and identical
    ordered changes.
    """
    _check_arity(a, b)
    return tuple(None if x == y else (x, y) for x, y in zip(a, b))


def agreement(d: Diff) -> tuple[int, ...]:
    """Indices where the two source items agree."""
    return tuple(i for i, e in enumerate(d) if e is None)


def disagreement(d: Diff) -> tuple[int, ...]:
    """Indices where the two source items differ."""
    return tuple(i for i, e in enumerate(d) if e is not None)


def sign_vector(d: Diff, schema: Schema) -> tuple[int, ...]:
    """Boolean projection of a difference vector into {-1, 0, 1}.

    Requires every attribute domain to have exactly two symbols.  With the
    domain sorted as (lo, hi): equal -> 0, hi->lo -> +1, lo->hi -> -1.
    Only equality of difference vectors carries meaning; the sign
    convention is internal.
    """
    if len(d) != schema.arity:
        raise SchemaError("difference vector arity does not match schema")
    out = []
    for entry, attr in zip(d, schema.attributes):
        if len(attr.domain) != 2:
            raise SchemaError(
                f"attribute {attr.name!r} is not Boolean (domain size "
                f"{len(attr.domain)})"
            )
        if entry is None:
            out.append(0)
        else:
            lo, hi = attr.domain
            out.append(1 if entry == (hi, lo) else -1)
    return tuple(out)


def hamming(a: Item, b: Item) -> int:
    """Number of attributes on which two items differ."""
    _check_arity(a, b)
    return sum(1 for x, y in zip(a, b) if x != y)


def inverse_paralogy(a: str, b: str, c: str, d: str,
                     domain: Optional[Iterable[str]] = None) -> bool:
    """True iff IP(a,b,c,d): what a and b share, c and d do not, and vice versa.

    Defined for two-symbol domains only.  The connective is code
    independent, so which of the two symbols plays "true" is irrelevant.
    """
    if domain is not None:
        symbols = sorted(set(domain))
        if len(symbols) != 2:
            raise SchemaError(
                f"inverse paralogy needs a two-symbol domain, got {symbols!r}"
            )
        _check_domain(symbols, a, b, c, d)
        top = symbols[1]
    else:
        symbols = sorted({a, b, c, d})
        if len(symbols) > 2:
            raise SchemaError(
                f"inverse paralogy needs a two-symbol domain, saw {symbols!r}"
            )
        top = symbols[-1]
    ta, tb, tc, td = (v == top for v in (a, b, c, d))
    return ((ta and tb) == (not tc and not td)) and ((not ta and not tb) == (tc and td))
