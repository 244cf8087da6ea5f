"""Finite abelian groups, subgroup enumeration, and subgroup-lattice graphs.

A group is given as a direct sum of cyclic prime-power factors.  Subgroups
are enumerated by closing the set of cyclic subgroups under pairwise join,
which is complete for abelian groups since every subgroup is generated by
its cyclic pieces.  The lattice graph connects subgroups related by a
covering inclusion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graphs import Graph

DEFAULT_ORDER_CAP = 4096

# full addition table is worth its quadratic build cost only up to here
_TABLE_LIMIT = 1500


class GroupError(ValueError):
    """Malformed group expression, bad factor, or order over the cap."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class GroupSpec:
    """A finite abelian group as a direct sum of cyclic prime-power factors.

    ``factors`` holds (prime, exponent) pairs; construction canonicalizes
    them to descending (prime, exponent) order, so two specs are equal
    exactly when they describe isomorphic groups.
    """

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.factors:
            raise GroupError("group needs at least one factor")
        canon = []
        for pair in self.factors:
            try:
                p, k = pair
            except (TypeError, ValueError):
                raise GroupError(f"factor {pair!r} is not a (prime, exponent) pair")
            if not isinstance(p, int) or not isinstance(k, int):
                raise GroupError(f"factor {pair!r} is not a pair of integers")
            if not _is_prime(p):
                raise GroupError(f"factor base {p} is not prime")
            if k < 1:
                raise GroupError(f"factor exponent {k} must be positive")
            canon.append((p, k))
        canon.sort(reverse=True)
        object.__setattr__(self, "factors", tuple(canon))

    @property
    def order(self) -> int:
        n = 1
        for p, k in self.factors:
            n *= p**k
        return n

    @property
    def moduli(self) -> tuple[int, ...]:
        """Order of each cyclic factor, in canonical factor order."""
        return tuple(p**k for p, k in self.factors)

    @property
    def is_cyclic(self) -> bool:
        primes = [p for p, _ in self.factors]
        return len(primes) == len(set(primes))

    @property
    def exponents(self) -> tuple[int, ...]:
        """Factor exponents in canonical order (for cyclic groups these
        are the grid side lengths of the lattice)."""
        return tuple(k for _, k in self.factors)

    def prime_pattern(self) -> dict[int, tuple[int, ...]]:
        """Map each prime to its descending exponent list."""
        out: dict[int, list[int]] = {}
        for p, k in self.factors:
            out.setdefault(p, []).append(k)
        return {p: tuple(sorted(ks, reverse=True)) for p, ks in out.items()}

    def name(self) -> str:
        return "x".join(f"Z{p**k}" for p, k in self.factors)

    def __str__(self) -> str:
        return self.name()


def _prime_power_split(m: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            k = 0
            while m % d == 0:
                m //= d
                k += 1
            out.append((d, k))
        d += 1
    if m > 1:
        out.append((m, 1))
    return out


def parse_group_spec(text: str, order_cap: int | None = DEFAULT_ORDER_CAP) -> GroupSpec:
    """Parse an expression like ``"Z4xZ2xZ3"`` into a canonical GroupSpec.

    Each ``Z<m>`` token is split into its prime-power cyclic factors, so
    ``"Z72"`` and ``"Z8xZ9"`` produce the same spec.  ``order_cap`` of
    ``None`` lifts the size check.
    """
    if not isinstance(text, str) or not text.strip():
        raise GroupError("empty group expression")
    factors: list[tuple[int, int]] = []
    for token in text.strip().split("x"):
        token = token.strip()
        body = token[1:]
        if not token.startswith("Z") or not body.isdigit():
            raise GroupError(f"malformed factor {token!r}: expected Z<m> with m >= 2")
        m = int(body)
        if m < 2:
            raise GroupError(f"factor order {m} is below 2")
        factors.extend(_prime_power_split(m))
    spec = GroupSpec(tuple(factors))
    if order_cap is not None and spec.order > order_cap:
        raise GroupError(f"group order {spec.order} exceeds cap {order_cap}")
    return spec


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by its full element set (coordinate tuples)."""

    elements: frozenset[tuple[int, ...]]

    @property
    def order(self) -> int:
        return len(self.elements)

    def sorted_elements(self) -> list[tuple[int, ...]]:
        return sorted(self.elements)


@dataclass(frozen=True)
class SubgroupSet:
    """All subgroups of a group, canonically ordered and labeled.

    Subgroups sort by (order, sorted element list); the label of the
    i-th subgroup of a given order is ``"S<order>#<i>"``, so labels are
    stable across runs.
    """

    group: GroupSpec
    subgroups: tuple[Subgroup, ...]

    def __post_init__(self) -> None:
        ordered = sorted(self.subgroups, key=lambda s: (s.order, s.sorted_elements()))
        object.__setattr__(self, "subgroups", tuple(ordered))

    def labels(self) -> tuple[str, ...]:
        out = []
        index_within_order: dict[int, int] = {}
        for sub in self.subgroups:
            i = index_within_order.get(sub.order, 0)
            index_within_order[sub.order] = i + 1
            out.append(f"S{sub.order}#{i}")
        return tuple(out)

    def by_label(self) -> dict[str, Subgroup]:
        return dict(zip(self.labels(), self.subgroups))

    def census(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for sub in self.subgroups:
            out[sub.order] = out.get(sub.order, 0) + 1
        return out

    def to_json_dict(self) -> dict:
        return {
            "group": self.group.name(),
            "subgroups": [
                {
                    "id": label,
                    "order": sub.order,
                    "elements": [list(e) for e in sub.sorted_elements()],
                }
                for label, sub in zip(self.labels(), self.subgroups)
            ],
        }


def enumerate_subgroups(
    g: GroupSpec, order_cap: int | None = DEFAULT_ORDER_CAP
) -> SubgroupSet:
    """Enumerate every subgroup of ``g``.

    Elements are encoded as indices into the lexicographic coordinate
    list so subgroups are sets of small ints during the closure; groups
    up to _TABLE_LIMIT get a precomputed addition table.
    """
    if order_cap is not None and g.order > order_cap:
        raise GroupError(f"group order {g.order} exceeds cap {order_cap}")
    moduli = g.moduli
    coords = list(itertools.product(*(range(m) for m in moduli)))
    index_of = {t: i for i, t in enumerate(coords)}
    n = len(coords)

    if n <= _TABLE_LIMIT:
        table = [
            [
                index_of[tuple((x + y) % m for x, y, m in zip(a, b, moduli))]
                for b in coords
            ]
            for a in coords
        ]

        def add(a: int, b: int) -> int:
            return table[a][b]

    else:

        def add(a: int, b: int) -> int:
            ta, tb = coords[a], coords[b]
            return index_of[tuple((x + y) % m for x, y, m in zip(ta, tb, moduli))]

    def cyclic_from(a: int) -> frozenset[int]:
        seen = {0}
        cur = a
        while cur != 0:
            seen.add(cur)
            cur = add(cur, a)
        return frozenset(seen)

    # one representative generator per distinct cyclic subgroup
    cyclic: dict[frozenset[int], int] = {}
    for a in range(n):
        sub = cyclic_from(a)
        if sub not in cyclic:
            cyclic[sub] = a

    def join(sub: frozenset[int], cyc: frozenset[int]) -> frozenset[int]:
        # union of cosets sub + c; cosets already inside the running
        # union can be skipped because sub + (sub + c) = sub + c
        out = set(sub)
        for c in cyc:
            if c not in out:
                out.update(add(c, s) for s in sub)
        return frozenset(out)

    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        grown = []
        for sub in frontier:
            for cyc, gen in cyclic.items():
                if gen in sub:
                    continue
                joined = join(sub, cyc)
                if joined not in found:
                    found.add(joined)
                    grown.append(joined)
        frontier = grown

    subgroups = tuple(
        Subgroup(frozenset(coords[i] for i in sub)) for sub in found
    )
    return SubgroupSet(g, subgroups)


def subgroup_census(s: SubgroupSet) -> dict[int, int]:
    """Count subgroups by order."""
    return s.census()


def build_lattice(s: SubgroupSet) -> Graph:
    """Build the lattice graph: an edge joins H and K exactly when one
    contains the other with no subgroup strictly between."""
    labels = s.labels()
    elems = [sub.elements for sub in s.subgroups]
    orders = [sub.order for sub in s.subgroups]
    m = len(elems)
    ups: list[set[int]] = [set() for _ in range(m)]
    downs: list[set[int]] = [set() for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if orders[i] < orders[j] and orders[j] % orders[i] == 0:
                if elems[i] < elems[j]:
                    ups[i].add(j)
                    downs[j].add(i)
    edges = []
    for i in range(m):
        for j in ups[i]:
            # covering pair iff nothing sits strictly between
            if not (ups[i] & downs[j]):
                edges.append((labels[i], labels[j]))
    return Graph(set(labels), edges)


def lattice_for(
    text_or_spec: str | GroupSpec, order_cap: int | None = DEFAULT_ORDER_CAP
) -> Graph:
    """Convenience: parse (if needed), enumerate, and build the lattice."""
    if isinstance(text_or_spec, GroupSpec):
        spec = text_or_spec
    else:
        spec = parse_group_spec(text_or_spec, order_cap=order_cap)
    return build_lattice(enumerate_subgroups(spec, order_cap=order_cap))
