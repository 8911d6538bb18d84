"""Generating vectors of spherical cyclic actions and the (unit, permutation)
action on them: stabilizers, the liftable/centralizer images in the symmetric
group, the half-twist generating data, and the 3-branch-point classification.

The action convention: ``act(l, sigma, v)`` puts ``l * c_j`` at position
``sigma(j)``, i.e. position i of the result is ``l * c_{sigma^-1(i)}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations, permutations as _all_perms
from math import factorial, gcd

from .arith_perm import (
    CapacityError,
    Perm,
    PermGroup,
    extend_group,
    identity_perm,
    symmetric_group,
    transposition,
    units_mod,
    young_subgroup,
)
from .datasets import DataSet, validate
from .fpgroups import EMPTY, Word, evaluate_perm, gen, psi_images, word

MAX_BRUTE_DEGREE = 10
AUTO_CROSSCHECK_DEGREE = 8


@dataclass(frozen=True)
class GeneratingVector:
    """Residues (c_1, ..., c_k) mod n with each c_i != 0 and sum c_i = 0."""

    n: int
    c: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"modulus must be >= 2, got {self.n}")
        if not self.c:
            raise ValueError("need at least one entry")
        if any(not 0 < x < self.n for x in self.c):
            raise ValueError(f"entries must be nonzero residues mod {self.n}: {self.c}")
        if sum(self.c) % self.n != 0:
            raise ValueError(f"entries must sum to 0 mod {self.n}: {self.c}")

    @property
    def k(self) -> int:
        return len(self.c)

    def orders(self) -> tuple[int, ...]:
        return tuple(self.n // gcd(x, self.n) for x in self.c)

    def genus(self) -> Fraction:
        total = sum(Fraction(m - 1, m) for m in self.orders())
        return 1 + Fraction(self.n, 2) * (total - 2)


def generating_vector(ds: DataSet) -> GeneratingVector:
    """The vector with c_i = (n/n_i) d_i in the data set's stored pair order."""
    report = validate(ds)
    if not report.ok:
        raise ValueError(f"invalid data set {ds}: {', '.join(report.violations)}")
    if ds.g0 != 0:
        raise ValueError("generating vectors are computed for spherical data sets only")
    c = tuple((ds.n // m) * d % ds.n for d, m in ds.pairs)
    v = GeneratingVector(ds.n, c)
    assert reduce(gcd, c, v.n) == 1, "spherical vector must generate"
    return v


def act(unit: int, sigma: Perm, v: GeneratingVector) -> GeneratingVector:
    """Left action: entry j is multiplied by the unit and moved to sigma(j)."""
    if gcd(unit, v.n) != 1:
        raise ValueError(f"{unit} is not a unit mod {v.n}")
    if len(sigma) != v.k:
        raise ValueError(f"permutation degree {len(sigma)} != {v.k}")
    out = [0] * v.k
    for j, x in enumerate(v.c):
        out[sigma[j]] = unit * x % v.n
    return GeneratingVector(v.n, tuple(out))


def _is_fixed(unit: int, sigma: Perm, v: GeneratingVector) -> bool:
    n, c = v.n, v.c
    return all(unit * c[j] % n == c[sigma[j]] for j in range(len(c)))


def stabilizer_bruteforce(v: GeneratingVector) -> list[tuple[int, Perm]]:
    """All (unit, sigma) pairs fixing the vector, ordered by (unit, sigma)."""
    if v.k > MAX_BRUTE_DEGREE:
        raise CapacityError(f"brute force over {v.k}! permutations refused")
    units = units_mod(v.n)
    stab = [(u, sigma)
            for u in units
            for sigma in _all_perms(range(v.k))
            if _is_fixed(u, sigma, v)]
    _assert_subgroup(stab, v)
    return stab


def _assert_subgroup(stab: list[tuple[int, Perm]], v: GeneratingVector) -> None:
    members = set(stab)
    assert (1, identity_perm(v.k)) in members
    from .arith_perm import compose, inverse

    for u, sigma in stab:
        u_inv = pow(u, -1, v.n)
        assert (u_inv, inverse(sigma)) in members, "stabilizer not inverse-closed"
    # full closure is O(|stab|^2); sample deterministically when large
    pairs = stab if len(stab) <= 300 else stab[:20] + stab[-20:]
    for u1, s1 in pairs:
        for u2, s2 in pairs:
            assert (u1 * u2 % v.n, compose(s1, s2)) in members, \
                "stabilizer not closed under products"


# ---------------------------------------------------------------------------
# generating data for the liftable and centralizer images


def value_blocks(v: GeneratingVector) -> list[list[int]]:
    """0-based position blocks of equal entries, ordered by first occurrence."""
    blocks: dict[int, list[int]] = {}
    for i, x in enumerate(v.c):
        blocks.setdefault(x, []).append(i)
    return [blocks[x] for x in sorted(blocks)]


def equal_pairs(v: GeneratingVector) -> list[tuple[int, int]]:
    """1-based pairs (i, j), i < j, with c_i = c_j (the commuting half-twists)."""
    return [(i + 1, j + 1)
            for i, j in combinations(range(v.k), 2)
            if v.c[i] == v.c[j]]


def stabilizing_units(v: GeneratingVector) -> list[int]:
    """Units whose multiple of the vector is a permutation of it."""
    reference = sorted(v.c)
    return [u for u in units_mod(v.n)
            if sorted(u * x % v.n for x in v.c) == reference]


def matching_perm(unit: int, v: GeneratingVector) -> Perm:
    """The pinned permutation paired with a stabilizing unit: positions are
    matched greedily by ascending index (first unmatched j with l*c_j = c_i)."""
    n, c, k = v.n, v.c, v.k
    taken = [False] * k
    sigma = [0] * k
    for i in range(k):
        for j in range(k):
            if not taken[j] and unit * c[j] % n == c[i]:
                taken[j] = True
                sigma[j] = i
                break
        else:
            raise ValueError(f"{unit} does not stabilize {v}")
    return tuple(sigma)


def half_twist_word(i: int, j: int) -> Word:
    """Half-twist swapping 1-based points i < j, as a word in s_1..:
    s_i ... s_{j-2} s_{j-1} s_{j-2}^-1 ... s_i^-1."""
    if not 1 <= i < j:
        raise ValueError(f"need 1 <= i < j, got ({i}, {j})")
    conj = word(*(gen(f"s{t}") for t in range(i, j - 1)))
    return conj * gen(f"s{j - 1}") * conj.inv()


def perm_to_half_twist_word(p: Perm) -> Word:
    """Word in the half-twist generators mapping onto p: each cycle
    (x_1,...,x_m), x_1 least, contributes (x_1,x_m)(x_1,x_{m-1})...(x_1,x_2)."""
    from .arith_perm import cycles_of

    parts = []
    for cyc in cycles_of(p):
        base = cyc[0]
        for other in reversed(cyc[1:]):
            parts.append(half_twist_word(base, other))
    return word(*parts)


@dataclass(frozen=True)
class StabilizerReport:
    """Generating data of the liftable (h1) and centralizer (h2) images.

    swaps is the set B of equal-entry index pairs; unit_words maps each
    stabilizing unit to a half-twist word whose image pairs with it in the
    stabilizer (the unit 1 always maps to the empty word).  stab is the
    brute-force stabilizer when the cross-check ran, else None.
    """

    n: int
    c: tuple[int, ...]
    stab: tuple[tuple[int, Perm], ...] | None
    h1: PermGroup
    h2: PermGroup
    units: tuple[int, ...]
    swaps: tuple[tuple[int, int], ...]
    unit_words: dict[int, Word]
    unit_perms: dict[int, Perm]
    index_mod_lmod: int
    index_n_c: int


def liftable_images(v: GeneratingVector, cross_check: bool | None = None) -> StabilizerReport:
    """Generator-based h1/h2 together with the stabilizer data.

    cross_check=None verifies against the brute-force stabilizer whenever
    k <= 8; True forces it (k <= 10), False skips it.  When every entry is
    equal and the degree is too large to materialize, the symmetric groups
    are returned symbolically (the full-liftability criterion).
    """
    k = v.k
    swaps = tuple(equal_pairs(v))
    units = tuple(stabilizing_units(v))

    # single generating value: the full-liftability criterion gives
    # h1 = h2 = Sym(k) without materializing k! elements
    all_equal = len(set(v.c)) == 1
    if all_equal and gcd(v.c[0], v.n) == 1 and k > AUTO_CROSSCHECK_DEGREE:
        if cross_check:
            raise CapacityError(f"forced cross-check needs k <= {AUTO_CROSSCHECK_DEGREE}")
        sym = symmetric_group(k)
        assert units == (1,)
        return StabilizerReport(
            n=v.n, c=v.c, stab=None, h1=sym, h2=sym, units=units, swaps=swaps,
            unit_words={1: EMPTY}, unit_perms={1: identity_perm(k)},
            index_mod_lmod=1, index_n_c=1)

    blocks = value_blocks(v)
    h2 = young_subgroup(blocks, k)
    h2 = PermGroup(k, tuple(transposition(i, j, k) for i, j in swaps), h2.elements)

    unit_perms = {u: matching_perm(u, v) for u in units}
    unit_words = {u: (EMPTY if u == 1 else perm_to_half_twist_word(unit_perms[u]))
                  for u in units}
    h1 = extend_group(
        h2, [unit_perms[u] for u in units],
        generators=h2.generators + tuple(unit_perms[u] for u in units if u != 1))

    if cross_check is None:
        cross_check = k <= AUTO_CROSSCHECK_DEGREE
    stab = None
    if cross_check:
        stab = tuple(stabilizer_bruteforce(v))
        proj_sigma = sorted(sigma for _, sigma in stab)
        assert list(h1.elements) == proj_sigma, "h1 differs from stabilizer projection"
        fixed = sorted(sigma for u, sigma in stab if u == 1)
        assert list(h2.elements) == fixed, "h2 differs from the unit-1 slice"
        assert units == tuple(sorted({u for u, _ in stab}))

    psi = psi_images(k)
    for u, w in unit_words.items():
        assert evaluate_perm(w, psi, k) == unit_perms[u]
        assert _is_fixed(u, unit_perms[u], v)

    assert h1.order == h2.order * len(units)
    return StabilizerReport(
        n=v.n, c=v.c, stab=stab, h1=h1, h2=h2, units=units, swaps=swaps,
        unit_words=unit_words, unit_perms=unit_perms,
        index_mod_lmod=factorial(k) // h1.order, index_n_c=len(units))


def unit_for_perm(v: GeneratingVector, sigma: Perm,
                  units: tuple[int, ...] | None = None) -> int:
    """The unique unit paired with sigma in the stabilizer."""
    for u in (units if units is not None else stabilizing_units(v)):
        if _is_fixed(u, sigma, v):
            return u
    raise ValueError(f"{sigma} is not in the liftable image of {v}")


def mod_equals_lmod(v: GeneratingVector) -> bool:
    """Whether every mapping class lifts: all entries equal and n | k."""
    return len(set(v.c)) == 1 and v.k % v.n == 0


# ---------------------------------------------------------------------------
# group descriptors and the 3-branch-point classification


@dataclass(frozen=True)
class GroupDescriptor:
    """One of: trivial, cyclic(n), direct_product(Z_n x Z_m),
    semidirect(Z_n x|_twist Z_m)."""

    kind: str
    n: int | None = None
    m: int | None = None
    twist: int | None = None

    def __post_init__(self):
        if self.kind not in ("trivial", "cyclic", "direct_product", "semidirect"):
            raise ValueError(f"unknown descriptor kind {self.kind!r}")
        if self.kind == "semidirect":
            if self.twist in (None, 1) or pow(self.twist, self.m, self.n) != 1:
                raise ValueError(
                    f"semidirect twist must satisfy twist^{self.m} = 1 != twist mod {self.n}")

    def render(self) -> str:
        if self.kind == "trivial":
            return "1"
        if self.kind == "cyclic":
            return f"Z{self.n}"
        if self.kind == "direct_product":
            return f"Z{self.n} x Z{self.m}"
        return f"Z{self.n} x|_{self.twist} Z{self.m}"


def trivial_group() -> GroupDescriptor:
    return GroupDescriptor("trivial")


def cyclic(n: int) -> GroupDescriptor:
    return GroupDescriptor("cyclic", n=n)


def direct_product(n: int, m: int) -> GroupDescriptor:
    return GroupDescriptor("direct_product", n=n, m=m)


def semidirect(n: int, m: int, twist: int) -> GroupDescriptor:
    return GroupDescriptor("semidirect", n=n, m=m, twist=twist)


@dataclass(frozen=True)
class IrreducibleClassification:
    case: str                      # "i", "ii_a", "ii_b", "iii"
    twist: int | None
    lmod: GroupDescriptor
    centralizer: GroupDescriptor
    normalizer: GroupDescriptor
    genus: int
    notes: tuple[str, ...] = ()


def classify_irreducible(v: GeneratingVector) -> IrreducibleClassification:
    """Normalizer/centralizer isomorphism types for 3-branch-point actions.

    Cases: (i) a cube-root twist cycles the entries -> N = Z_n x|_l Z_3;
    (ii) a square-root twist swaps two entries and fixes the third
    (a: twist 1 -> N = C = Z_n x Z_2; b: twist != 1 -> N = Z_n x|_l Z_2);
    (iii) trivial stabilizer beyond the units -> N = C = Z_n.
    """
    if v.k != 3:
        raise ValueError(f"classification needs exactly 3 branch points, got {v.k}")
    g = v.genus()
    if g.denominator != 1 or g < 2:
        raise ValueError(f"classification needs genus >= 2, got {g}")
    g = int(g)
    n, c = v.n, v.c

    for u in units_mod(n):
        if pow(u, 3, n) == 1 and c == (c[0], u * c[0] % n, u * u * c[0] % n):
            if u == 1:
                continue  # excluded for genus >= 2 (forces n = 3, genus 1)
            return IrreducibleClassification(
                case="i", twist=u, lmod=cyclic(3), centralizer=cyclic(n),
                normalizer=semidirect(n, 3, u), genus=g)

    # fixed position p, swapped pair (q, r), scanned in the three orderings
    for p, q, r in ((0, 1, 2), (1, 0, 2), (2, 0, 1)):
        for u in units_mod(n):
            if pow(u, 2, n) != 1:
                continue
            if u * c[p] % n == c[p] and u * c[q] % n == c[r]:
                if u == 1:
                    assert n <= 2 * g + 2, "abelian bound violated"
                    desc = direct_product(n, 2)
                    return IrreducibleClassification(
                        case="ii_a", twist=1, lmod=cyclic(2), centralizer=desc,
                        normalizer=desc, genus=g,
                        notes=("normalizer type asserted, not derived",))
                return IrreducibleClassification(
                    case="ii_b", twist=u, lmod=cyclic(2), centralizer=cyclic(n),
                    normalizer=semidirect(n, 2, u), genus=g)

    return IrreducibleClassification(
        case="iii", twist=None, lmod=trivial_group(), centralizer=cyclic(n),
        normalizer=cyclic(n), genus=g)
