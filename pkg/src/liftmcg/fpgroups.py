"""Finitely presented groups: words, sphere mapping-class presentations,
Reidemeister-Schreier rewriting, Tietze simplification, abelianization,
and extension presentations.

Words are freely reduced tuples of (generator name, +-1) letters; the group
product of a word is its letters composed left to right (rightmost applied
first under the permutation image, matching arith_perm.compose).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith_perm import (
    Perm,
    PermGroup,
    compose,
    coset_table,
    identity_perm,
    inverse,
    perm_closure,
    transposition,
)

Letter = tuple[str, int]


def _reduce(letters) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for name, e in letters:
        if e not in (1, -1):
            raise ValueError(f"letter exponent must be +-1, got {e}")
        if out and out[-1][0] == name and out[-1][1] == -e:
            out.pop()
        else:
            out.append((name, e))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        reduced = _reduce(self.letters)
        if reduced != tuple(self.letters):
            object.__setattr__(self, "letters", reduced)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, e: int) -> "Word":
        if e == 0:
            return Word()
        base = self if e > 0 else self.inv()
        return Word(base.letters * abs(e))

    def inv(self) -> "Word":
        return Word(tuple((name, -e) for name, e in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __str__(self) -> str:
        return render_word(self)


EMPTY = Word()


def gen(name: str, e: int = 1) -> Word:
    if e == 0:
        return EMPTY
    return Word(((name, 1 if e > 0 else -1),) * abs(e))


def word(*parts: Word) -> Word:
    out = EMPTY
    for p in parts:
        out = out * p
    return out


def commutator(a: Word, b: Word) -> Word:
    return a * b * a.inv() * b.inv()


def rename_word(w: Word, mapping: dict[str, str]) -> Word:
    return Word(tuple((mapping.get(name, name), e) for name, e in w.letters))


def exponent_sums(w: Word, generators: tuple[str, ...]) -> list[int]:
    index = {name: i for i, name in enumerate(generators)}
    row = [0] * len(generators)
    for name, e in w.letters:
        row[index[name]] += e
    return row


def evaluate_perm(w: Word, images: dict[str, Perm], degree: int) -> Perm:
    out = identity_perm(degree)
    for name, e in w.letters:
        p = images[name]
        out = compose(out, p if e == 1 else inverse(p))
    return out


def render_word(w: Word) -> str:
    """Run-aggregated product string; the empty word renders as "1"."""
    if not w.letters:
        return "1"
    parts = []
    i = 0
    letters = w.letters
    while i < len(letters):
        name, e = letters[i]
        j = i
        while j < len(letters) and letters[j] == (name, e):
            j += 1
        count = (j - i) * e
        parts.append(name if count == 1 else f"{name}^{count}")
        i = j
    return "*".join(parts)


def word_json(w: Word) -> list[list]:
    return [[name, e] for name, e in w.letters]


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class SymbolicRelator:
    """A relation ``lhs = base^param`` with an undetermined integer exponent."""

    lhs: Word
    base: str
    param: str


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    symbolic_relators: tuple[SymbolicRelator, ...] = ()

    def __post_init__(self):
        declared = set(self.generators)
        if len(declared) != len(self.generators):
            raise ValueError("duplicate generator names")
        for r in self.relators:
            for name, _ in r.letters:
                if name not in declared:
                    raise ValueError(f"relator uses undeclared generator {name!r}")
        for s in self.symbolic_relators:
            for name, _ in s.lhs.letters:
                if name not in declared:
                    raise ValueError(f"relator uses undeclared generator {name!r}")
            if s.base not in declared:
                raise ValueError(f"symbolic base {s.base!r} not a generator")

    def __str__(self) -> str:
        return render_presentation(self)


def _split_equation(w: Word) -> tuple[Word, Word]:
    # w = u * v^-1 with v^-1 the maximal all-negative suffix; returns (u, v)
    letters = w.letters
    cut = len(letters)
    while cut > 0 and letters[cut - 1][1] == -1:
        cut -= 1
    u = Word(letters[:cut])
    v = Word(letters[cut:]).inv()
    return u, v


def render_relator(w: Word) -> str:
    if len(w.letters) == 4:
        (a, ea), (b, eb), (c, ec), (d, ed) = w.letters
        if (ea, eb, ec, ed) == (1, 1, -1, -1) and a == c and b == d and a != b:
            return f"[{a},{b}] = 1"
    u, v = _split_equation(w)
    if not v:
        return f"{render_word(u)} = 1"
    if not u:
        return f"{render_word(v)} = 1"
    return f"{render_word(u)} = {render_word(v)}"


def render_presentation(p: Presentation) -> str:
    if not p.generators:
        return "<1>"
    rels = [render_relator(r) for r in p.relators]
    rels += [f"{render_word(s.lhs)} = {s.base}^{s.param}" for s in p.symbolic_relators]
    gens = ", ".join(p.generators)
    if not rels:
        return f"<{gens} | >"
    return f"<{gens} | " + ", ".join(rels) + ">"


def presentation_json(p: Presentation) -> dict:
    out = {
        "generators": list(p.generators),
        "relators": [word_json(r) for r in p.relators],
    }
    if p.symbolic_relators:
        out["symbolic_relators"] = [
            {"lhs": word_json(s.lhs), "base": s.base, "param": s.param}
            for s in p.symbolic_relators
        ]
    return out


def rename_presentation(p: Presentation, mapping: dict[str, str]) -> Presentation:
    gens = tuple(mapping.get(g, g) for g in p.generators)
    rels = tuple(rename_word(r, mapping) for r in p.relators)
    sym = tuple(
        SymbolicRelator(rename_word(s.lhs, mapping), mapping.get(s.base, s.base), s.param)
        for s in p.symbolic_relators
    )
    return Presentation(gens, rels, sym)


def _cyclic_reduce(letters: tuple[Letter, ...]) -> tuple[Letter, ...]:
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i][0] == letters[j - 1][0] \
            and letters[i][1] == -letters[j - 1][1]:
        i += 1
        j -= 1
    return letters[i:j]


def relator_key(w: Word) -> tuple[Letter, ...]:
    """Canonical form of a relator up to conjugation and inversion: the least
    rotation of its cyclic reduction or of the inverse."""
    reduced = _cyclic_reduce(w.letters)
    candidates = []
    for letters in (reduced, Word(reduced).inv().letters):
        for shift in range(max(1, len(letters))):
            candidates.append(letters[shift:] + letters[:shift])
    return min(candidates)


def same_relator_sets(p1: Presentation, p2: Presentation,
                      mapping: dict[str, str] | None = None) -> bool:
    """Equal generator and relator sets after renaming p1, with relators
    compared up to cyclic rotation and inversion."""
    q = rename_presentation(p1, mapping) if mapping else p1
    if sorted(q.generators) != sorted(p2.generators):
        return False
    return (sorted(relator_key(r) for r in q.relators)
            == sorted(relator_key(r) for r in p2.relators))


# ---------------------------------------------------------------------------
# sphere mapping class group presentations


def sigma_names(k: int) -> list[str]:
    return [f"s{i}" for i in range(1, k)]


def psi_images(k: int) -> dict[str, Perm]:
    """The marked-point action of the half-twist generators: s_i -> (i, i+1)."""
    return {f"s{i}": transposition(i, i + 1, k) for i in range(1, k)}


def mod_sphere_presentation(k: int) -> Presentation:
    """Half-twist presentation of the mapping class group of a k-marked sphere."""
    if k < 3:
        raise ValueError(f"need k >= 3 marked points, got {k}")
    s = {i: gen(f"s{i}") for i in range(1, k)}
    relators: list[Word] = []
    for i in range(1, k):
        for j in range(1, k):
            if i != j and abs(i - j) > 1:
                relators.append(commutator(s[i], s[j]))
    for i in range(1, k - 1):
        relators.append(s[i] * s[i + 1] * s[i] * (s[i + 1] * s[i] * s[i + 1]).inv())
    chain = word(*(s[i] for i in range(1, k)))
    relators.append(chain ** k)
    relators.append(word(*(s[i] for i in range(1, k)),
                         *(s[i] for i in range(k - 1, 0, -1))))
    return Presentation(tuple(sigma_names(k)), tuple(relators))


def a_name(i: int, j: int) -> str:
    return f"a{i}{j}"


def a_in_sigmas(i: int, j: int) -> Word:
    """The pure generator a_ij as a word in half-twists:
    (s_{j-1}...s_{i+1}) s_i^2 (s_{j-1}...s_{i+1})^-1."""
    conj = word(*(gen(f"s{t}") for t in range(j - 1, i, -1)))
    return conj * gen(f"s{i}") ** 2 * conj.inv()


def pmod_sphere_presentation(k: int) -> Presentation:
    """Pure mapping class group of the k-marked sphere on generators a_ij,
    1 <= i < j < k."""
    if k < 3:
        raise ValueError(f"need k >= 3 marked points, got {k}")
    # generator indices satisfy 1 <= i < j <= k-1
    names = [(i, j) for i in range(1, k - 1) for j in range(i + 1, k)]
    a = {(i, j): gen(a_name(i, j)) for i, j in names}
    relators: list[Word] = []
    quads = [(p, q, r, s)
             for p in range(1, k - 1) for q in range(p + 1, k - 1)
             for r in range(q + 1, k - 1) for s in range(r + 1, k)]
    for p, q, r, s_ in quads:
        relators.append(commutator(a[p, q], a[r, s_]))
    for p, q, r, s_ in quads:
        relators.append(commutator(a[p, s_], a[q, r]))
    for p, q, r, s_ in quads:
        relators.append(commutator(a[r, s_] * a[p, r] * a[r, s_].inv(), a[q, s_]))
    for p in range(1, k - 1):
        for q in range(p + 1, k - 1):
            for r in range(q + 1, k):
                w1 = a[p, r] * a[q, r] * a[p, q]
                w2 = a[q, r] * a[p, q] * a[p, r]
                w3 = a[p, q] * a[p, r] * a[q, r]
                relators.append(w1 * w2.inv())
                relators.append(w2 * w3.inv())
    total = word(*(a[i, j] for i, j in names))
    relators.append(total)
    return Presentation(tuple(a_name(i, j) for i, j in names), tuple(relators))


# ---------------------------------------------------------------------------
# Reidemeister-Schreier


@dataclass(frozen=True)
class SchreierInfo:
    index: int
    transversal: tuple[Word, ...]          # coset -> representative word
    transversal_perms: tuple[Perm, ...]    # coset -> image of that word
    generator_images: dict[str, Perm]      # subgroup generator -> marked-point image
    generator_words: dict[str, Word]       # subgroup generator -> word in ambient gens


def _image_group(images: list[Perm], degree: int) -> PermGroup:
    adjacents = {transposition(i, i + 1, degree) for i in range(1, degree)}
    if adjacents <= set(images):
        # adjacent transpositions generate everything; skip the k! closure
        return PermGroup(degree, tuple(images), None)
    return perm_closure(images, degree)


def reidemeister_schreier_full(p: Presentation, psi: dict[str, Perm],
                               subgroup: PermGroup) -> tuple[Presentation, SchreierInfo]:
    """Presentation of the psi-preimage of a subgroup of the image, plus the
    Schreier bookkeeping (transversal, generator images)."""
    degree = subgroup.degree
    images = [psi[g] for g in p.generators]
    img_group = _image_group(images, degree)
    if subgroup.elements is not None:
        if any(h not in img_group for h in subgroup.elements):
            raise ValueError("subgroup is not contained in the image of psi")
    elif not img_group.is_symmetric:
        raise ValueError("subgroup is not contained in the image of psi")

    table = coset_table(subgroup, images)
    index = len(table)
    ngens = len(p.generators)

    # shortlex BFS transversal; tree edges yield trivial Schreier generators
    t_words: list[Word | None] = [None] * index
    t_perms: list[Perm | None] = [None] * index
    t_words[0] = EMPTY
    t_perms[0] = identity_perm(degree)
    tree_edge: set[tuple[int, int]] = set()
    queue = [0]
    while queue:
        c = queue.pop(0)
        for gi in range(ngens):
            nxt = table[c][gi]
            if t_words[nxt] is None:
                t_words[nxt] = t_words[c] * gen(p.generators[gi])
                t_perms[nxt] = compose(t_perms[c], images[gi])
                tree_edge.add((c, gi))
                queue.append(nxt)
    assert all(w is not None for w in t_words), "coset table not connected"

    inv_table = [[0] * ngens for _ in range(index)]
    for c in range(index):
        for gi in range(ngens):
            inv_table[table[c][gi]][gi] = c

    sch_name: dict[tuple[int, int], str | None] = {}
    order: list[str] = []
    gen_images: dict[str, Perm] = {}
    gen_words: dict[str, Word] = {}
    for c in range(index):
        for gi in range(ngens):
            if (c, gi) in tree_edge:
                sch_name[(c, gi)] = None
                continue
            name = f"x{c}_{p.generators[gi]}"
            sch_name[(c, gi)] = name
            order.append(name)
            w = t_words[c] * gen(p.generators[gi]) * t_words[table[c][gi]].inv()
            gen_words[name] = w
            gen_images[name] = compose(compose(t_perms[c], images[gi]),
                                       inverse(t_perms[table[c][gi]]))
    assert len(order) == index * ngens - (index - 1), "Schreier rank bookkeeping"

    gi_of = {g: i for i, g in enumerate(p.generators)}
    relators: list[Word] = []
    for r in p.relators:
        if evaluate_perm(r, psi, degree) != identity_perm(degree):
            raise ValueError(f"psi does not kill the relator {render_word(r)}")
        for c in range(index):
            cur = c
            letters: list[Letter] = []
            for name, e in r.letters:
                gi = gi_of[name]
                if e == 1:
                    s = sch_name[(cur, gi)]
                    if s is not None:
                        letters.append((s, 1))
                    cur = table[cur][gi]
                else:
                    prev = inv_table[cur][gi]
                    s = sch_name[(prev, gi)]
                    if s is not None:
                        letters.append((s, -1))
                    cur = prev
            assert cur == c, "relator does not stabilize its coset"
            rewritten = Word(tuple(letters))
            if rewritten:
                relators.append(rewritten)

    info = SchreierInfo(index, tuple(t_words), tuple(t_perms), gen_images, gen_words)
    return Presentation(tuple(order), tuple(relators)), info


def reidemeister_schreier(p: Presentation, psi: dict[str, Perm],
                          subgroup: PermGroup) -> Presentation:
    return reidemeister_schreier_full(p, psi, subgroup)[0]


# ---------------------------------------------------------------------------
# Tietze simplification


def _cleanup(relators: list[Word]) -> list[Word]:
    seen = set()
    out = []
    for r in relators:
        if not r:
            continue
        key = relator_key(r)
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    return out


def _substitute(w: Word, name: str, repl: Word) -> Word:
    parts = []
    for n, e in w.letters:
        if n == name:
            parts.append(repl if e == 1 else repl.inv())
        else:
            parts.append(Word(((n, e),)))
    return word(*parts)


def tietze_simplify(p: Presentation, effort: int | None = None) -> Presentation:
    """Eliminate generators that occur exactly once in some relator, dropping
    trivial and duplicate relators along the way.

    ``effort`` caps the number of eliminations (default: one per generator);
    the result presents an isomorphic group.
    """
    if p.symbolic_relators:
        raise ValueError("cannot simplify a presentation with symbolic relators")
    gens = list(p.generators)
    relators = _cleanup(list(p.relators))
    budget = len(gens) if effort is None else effort
    steps = 0
    while steps < budget:
        candidate = None
        for ri in sorted(range(len(relators)), key=lambda i: (len(relators[i]), i)):
            counts: dict[str, int] = {}
            for name, _ in relators[ri].letters:
                counts[name] = counts.get(name, 0) + 1
            once = [name for name in gens if counts.get(name) == 1]
            if once:
                # eliminate the latest-declared candidate, keeping early names
                candidate = (ri, once[-1])
                break
        if candidate is None:
            break
        ri, name = candidate
        letters = relators[ri].letters
        pos = next(i for i, (n, _) in enumerate(letters) if n == name)
        rotated = letters[pos + 1:] + letters[:pos]  # relator = rotated * name^e
        e = letters[pos][1]
        repl = Word(rotated).inv() if e == 1 else Word(rotated)
        del relators[ri]
        relators = [_substitute(r, name, repl) for r in relators]
        gens.remove(name)
        relators = _cleanup(relators)
        steps += 1
    return Presentation(tuple(gens), tuple(relators))


# ---------------------------------------------------------------------------
# abelianization


def abelianization(p: Presentation) -> tuple[tuple[int, ...], int]:
    """Invariant factors (> 1) and free rank of the abelianized group."""
    if p.symbolic_relators:
        raise ValueError("cannot abelianize a presentation with symbolic relators")
    from .arith_perm import smith_normal_form

    rows = [exponent_sums(r, p.generators) for r in p.relators]
    factors, free_rank = smith_normal_form(rows, ncols=len(p.generators))
    return tuple(d for d in factors if d != 1), free_rank


# ---------------------------------------------------------------------------
# extension presentations


@dataclass(frozen=True)
class LiftData:
    """Lifting data for assembling a presentation of a group extension.

    lifts: quotient generator name -> lift name (disjoint from kernel names).
    conjugation: (quotient gen, kernel gen) -> word in kernel generators equal
        to lift * kernel_gen * lift^-1.
    evaluations: quotient relator index -> its value in the kernel, either a
        concrete kernel word or a parameter name (undetermined exponent of the
        kernel generator; cyclic kernels only).
    """

    lifts: dict[str, str]
    conjugation: dict[tuple[str, str], Word]
    evaluations: dict[int, Word | str] = field(default_factory=dict)


def extension_presentation(kernel: Presentation, quotient: Presentation,
                           data: LiftData) -> Presentation:
    """Presentation of an extension of the kernel by the quotient:
    kernel relators + lifted relators (set to their kernel values) +
    conjugation relators."""
    if quotient.symbolic_relators or kernel.symbolic_relators:
        raise ValueError("nested symbolic relators are not supported")
    missing = [g for g in quotient.generators if g not in data.lifts]
    if missing:
        raise ValueError(f"missing lifts for quotient generators {missing}")
    lift_names = [data.lifts[g] for g in quotient.generators]
    clash = set(lift_names) & set(kernel.generators)
    if clash or len(set(lift_names)) != len(lift_names):
        raise ValueError(f"lift names must be fresh and distinct, got {lift_names}")
    kernel_names = set(kernel.generators)

    relators: list[Word] = list(kernel.relators)
    symbolic: list[SymbolicRelator] = []
    for idx, r in enumerate(quotient.relators):
        if idx not in data.evaluations:
            raise ValueError(f"missing evaluation for quotient relator {idx}")
        lifted = rename_word(r, data.lifts)
        ev = data.evaluations[idx]
        if isinstance(ev, Word):
            bad = [n for n, _ in ev.letters if n not in kernel_names]
            if bad:
                raise ValueError(f"evaluation uses non-kernel generators {bad}")
            relators.append(lifted * ev.inv())
        else:
            if len(kernel.generators) != 1:
                raise ValueError("symbolic evaluations need a cyclic kernel")
            symbolic.append(SymbolicRelator(lifted, kernel.generators[0], ev))
    for qg in quotient.generators:
        for kg in kernel.generators:
            if (qg, kg) not in data.conjugation:
                raise ValueError(f"missing conjugation word for ({qg}, {kg})")
            s_a = data.conjugation[(qg, kg)]
            bad = [n for n, _ in s_a.letters if n not in kernel_names]
            if bad:
                raise ValueError(f"conjugation word uses non-kernel generators {bad}")
            lift = gen(data.lifts[qg])
            relators.append(lift * gen(kg) * lift.inv() * s_a.inv())

    gens = tuple(kernel.generators) + tuple(lift_names)
    return Presentation(gens, tuple(relators), tuple(symbolic))
