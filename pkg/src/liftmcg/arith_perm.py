"""Exact modular arithmetic, permutations, small permutation groups, Smith normal form.

Conventions used throughout the package:

* Residues mod n are plain ints in [0, n).
* A permutation of degree k is a tuple ``p`` of length k with 0-based entries,
  ``p[i]`` being the image of i.  Marked points are numbered 1..k in all
  human-facing output (cycle strings, pair lists), 0..k-1 internally.
* Composition is right-to-left: ``compose(p, q)`` maps i to ``p[q[i]]``, i.e.
  q is applied first.  This is the one place the convention is fixed; every
  other module relies on it.
* Integer matrices are sequences of equal-length int rows; all arithmetic is
  exact (Python big ints).
"""

from __future__ import annotations

from itertools import permutations as _all_perms
from math import factorial, gcd

Perm = tuple[int, ...]

# Degree tops out at 2g+2 branch points for desk-scale genus, so anything past
# 12 is refused outright; the materialization cap guards subgroups that are
# individually too large to store.
MAX_DEGREE = 12
MAX_MATERIALIZED = 2_000_000


class CapacityError(ValueError):
    """Raised when an operation would exceed the desk-scale guards."""


def units_mod(n: int) -> list[int]:
    """Multiplicative units mod n, ascending.

    For n = 1 the unit group is trivial and [0] is returned (0 == 1 mod 1).
    """
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    if n == 1:
        return [0]
    return [x for x in range(1, n) if gcd(x, n) == 1]


# ---------------------------------------------------------------------------
# permutations


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def compose(p: Perm, q: Perm) -> Perm:
    """(p*q)(i) = p(q(i)): apply q first, then p."""
    return tuple(p[x] for x in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def transposition(i: int, j: int, degree: int) -> Perm:
    """Swap of 1-based points i and j."""
    return perm_from_cycles([(i, j)], degree)


def perm_from_cycles(cycles: list[tuple[int, ...]], degree: int) -> Perm:
    """Build a permutation from 1-based cycles."""
    out = list(range(degree))
    for cyc in cycles:
        if len(set(cyc)) != len(cyc):
            raise ValueError(f"repeated point in cycle {cyc}")
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            if not 1 <= a <= degree:
                raise ValueError(f"point {a} out of range 1..{degree}")
            out[a - 1] = b - 1
    return tuple(out)


def cycles_of(p: Perm) -> list[tuple[int, ...]]:
    """Nontrivial cycles, 1-based, each starting at its least point."""
    seen = [False] * len(p)
    cycles = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x + 1)
            x = p[x]
        cycles.append(tuple(cyc))
    return cycles


def perm_str(p: Perm) -> str:
    """Cycle-notation string, e.g. "(1,2)(3,4)"; identity is "()"."""
    cycles = cycles_of(p)
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(x) for x in cyc) + ")" for cyc in cycles)


def parse_perm(text: str, degree: int) -> Perm:
    """Inverse of perm_str."""
    s = text.replace(" ", "")
    if s in ("()", ""):
        return identity_perm(degree)
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"bad cycle string {text!r}")
    cycles = []
    for part in s[1:-1].split(")("):
        try:
            cyc = tuple(int(x) for x in part.split(","))
        except ValueError:
            raise ValueError(f"bad cycle string {text!r}") from None
        cycles.append(cyc)
    return perm_from_cycles(cycles, degree)


# ---------------------------------------------------------------------------
# permutation groups


class PermGroup:
    """A subgroup of Sym(degree) with materialized, sorted element list.

    ``elements is None`` marks the full symmetric group kept symbolically:
    closures of hyperelliptic-type generating sets outgrow any sensible
    element store (12! ~ 4.8e8), but order and membership stay answerable.
    """

    __slots__ = ("degree", "generators", "elements", "_member_set")

    def __init__(self, degree: int, generators: tuple[Perm, ...],
                 elements: tuple[Perm, ...] | None):
        self.degree = degree
        self.generators = generators
        self.elements = elements
        self._member_set = None if elements is None else frozenset(elements)

    @property
    def order(self) -> int:
        if self.elements is None:
            return factorial(self.degree)
        return len(self.elements)

    @property
    def is_symmetric(self) -> bool:
        return self.elements is None or len(self.elements) == factorial(self.degree)

    def __contains__(self, p: Perm) -> bool:
        if len(p) != self.degree:
            return False
        if self._member_set is None:
            return True
        return p in self._member_set

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        if self.degree != other.degree:
            return False
        if self.elements is None or other.elements is None:
            return self.is_symmetric and other.is_symmetric
        return self.elements == other.elements

    def __hash__(self):
        return hash((self.degree, self.elements))

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"


def _check_degree(degree: int) -> None:
    if degree < 1:
        raise ValueError(f"degree must be positive, got {degree}")
    if degree > MAX_DEGREE:
        raise CapacityError(f"degree {degree} exceeds the cap of {MAX_DEGREE}")


def _closure(seed: set[Perm], gens: list[Perm]) -> list[Perm]:
    """Orbit closure of seed (a subgroup or {id}) under right products by gens."""
    elements = set(seed)
    frontier = list(seed)
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = compose(p, g)
                if q not in elements:
                    elements.add(q)
                    new.append(q)
                    if len(elements) > MAX_MATERIALIZED:
                        raise CapacityError(
                            f"closure exceeds {MAX_MATERIALIZED} elements")
        frontier = new
    return sorted(elements)


def perm_closure(gens: list[Perm], degree: int) -> PermGroup:
    """Subgroup generated by gens, with deterministic (sorted) element order."""
    _check_degree(degree)
    for p in gens:
        if len(p) != degree:
            raise ValueError(f"generator degree {len(p)} != {degree}")
    elements = _closure({identity_perm(degree)}, list(gens))
    return PermGroup(degree, tuple(gens), tuple(elements))


def extend_group(group: PermGroup, extra_gens: list[Perm],
                 generators: tuple[Perm, ...] | None = None) -> PermGroup:
    """Closure of an already-closed group together with extra generators.

    Seeds the closure with the existing element list, which beats restarting
    from scratch when extra_gens are few.
    """
    if group.elements is None:
        return group  # already everything
    for p in extra_gens:
        if len(p) != group.degree:
            raise ValueError("degree mismatch")
    if all(p in group for p in extra_gens):
        gens = generators if generators is not None else group.generators
        return PermGroup(group.degree, gens, group.elements)
    gens_for_closure = list(group.generators) + list(extra_gens)
    elements = _closure(set(group.elements), gens_for_closure)
    shown = generators if generators is not None else tuple(gens_for_closure)
    return PermGroup(group.degree, shown, tuple(elements))


def symmetric_group(degree: int) -> PermGroup:
    """Sym(degree); materialized when small enough, symbolic otherwise."""
    _check_degree(degree)
    gens = tuple(transposition(i, i + 1, degree) for i in range(1, degree))
    if factorial(degree) <= MAX_MATERIALIZED:
        elements = tuple(sorted(_all_perms(range(degree))))
        return PermGroup(degree, gens, elements)
    return PermGroup(degree, gens, None)


def young_subgroup(blocks: list[list[int]], degree: int) -> PermGroup:
    """Direct product of full symmetric groups on the given 0-based blocks.

    Equals the closure of all transpositions within each block; built directly
    because the product structure is known.
    """
    _check_degree(degree)
    seen: set[int] = set()
    for block in blocks:
        for x in block:
            if x in seen or not 0 <= x < degree:
                raise ValueError(f"bad block decomposition {blocks}")
            seen.add(x)
    order = 1
    for block in blocks:
        order *= factorial(len(block))
    if order > MAX_MATERIALIZED:
        raise CapacityError(f"young subgroup of order {order} too large")
    elements = [identity_perm(degree)]
    for block in blocks:
        pts = sorted(block)
        if len(pts) < 2:
            continue
        block_perms = list(_all_perms(pts))
        new = []
        for base in elements:
            for images in block_perms:
                q = list(base)
                for src, img in zip(pts, images):
                    q[src] = base[img]
                new.append(tuple(q))
        elements = new
    gens = []
    for block in blocks:
        pts = sorted(block)
        for a, b in zip(pts, pts[1:]):
            gens.append(transposition(a + 1, b + 1, degree))
    return PermGroup(degree, tuple(gens), tuple(sorted(elements)))


# ---------------------------------------------------------------------------
# coset tables


def coset_table(H: PermGroup, acting_gens: list[Perm]) -> list[list[int]]:
    """Right-coset action table for H <= Sym(k) under the acting generators.

    table[c][i] is the index of coset c * acting_gens[i]; coset 0 is H itself
    and cosets are numbered by BFS from 0 with generators in input order.
    """
    degree = H.degree
    for p in acting_gens:
        if len(p) != degree:
            raise ValueError(f"acting generator degree {len(p)} != {degree}")
    if H.elements is None:
        return [[0] * len(acting_gens)]

    def coset_key(g: Perm) -> Perm:
        # canonical label of the right coset H*g
        return min(compose(h, g) for h in H.elements)

    reps: list[Perm] = [identity_perm(degree)]
    index_of: dict[Perm, int] = {coset_key(reps[0]): 0}
    table: list[list[int]] = []
    c = 0
    while c < len(reps):
        row = []
        for g in acting_gens:
            img = compose(reps[c], g)
            key = coset_key(img)
            nxt = index_of.get(key)
            if nxt is None:
                nxt = len(reps)
                index_of[key] = nxt
                reps.append(img)
            row.append(nxt)
        table.append(row)
        c += 1
    return table


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(mat, ncols: int | None = None) -> tuple[tuple[int, ...], int]:
    """Invariant factors (d_1 | d_2 | ...) and free rank of an integer matrix.

    Rows are relations on ncols unknowns; the free rank is ncols - rank.
    ncols is only needed when mat has no rows.
    """
    a = [list(map(int, row)) for row in mat]
    if a:
        width = len(a[0])
        if any(len(row) != width for row in a):
            raise ValueError("ragged matrix")
        if ncols is not None and ncols != width:
            raise ValueError(f"ncols={ncols} does not match row width {width}")
        ncols = width
    elif ncols is None:
        raise ValueError("ncols is required for a matrix with no rows")
    nrows = len(a)

    factors: list[int] = []
    t = 0
    while True:
        pivot = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                v = a[i][j]
                if v and (pivot is None or abs(v) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]

        # clear row and column t; restarts when a remainder undercuts the pivot
        while True:
            dirty = False
            for i in range(nrows):
                if i != t and a[i][t]:
                    q = a[i][t] // a[t][t]
                    for j in range(ncols):
                        a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        dirty = True
            for j in range(ncols):
                if j != t and a[t][j]:
                    q = a[t][j] // a[t][t]
                    for i in range(nrows):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        for i in range(nrows):
                            a[i][t], a[i][j] = a[i][j], a[i][t]
                        dirty = True
            if not dirty:
                break

        d = a[t][t]
        offender = None
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if a[i][j] % d:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(ncols):
                a[t][j] += a[offender][j]
            continue
        factors.append(abs(d))
        t += 1

    for x, y in zip(factors, factors[1:]):
        assert y % x == 0, f"divisibility chain broken: {factors}"
    return tuple(factors), ncols - len(factors)
