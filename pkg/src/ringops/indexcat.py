"""The indexing category over R(n) and its effective subcategory.

Objects are RPoly values; a morphism from f to g is a based map of extended
index sets {0, e, 1..m} -> {0, e, 1..n} (0 and e fixed) whose substitution
action carries f exactly onto g.  This module provides morphism validation,
hom-set enumeration, the unique singular/effective factorization, block sums,
the collapse re-indexing map, induced monomial maps, special representatives,
connected components and the arity filtration.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .errors import (
    ArityCapExceeded,
    ArityMismatch,
    NotAMorphism,
    NotSpecial,
    PreconditionViolation,
    SearchBudgetExceeded,
)
from .polynomials import (
    IntPoly,
    Monomial,
    RPoly,
    enumerate_R,
    gamma_of,
    is_member as is_member_int,
    is_nondegenerate,
    is_special,
    lambda_of,
    special_of_type,
    substitute_images,
    to_rpoly,
    type_of,
    zero_poly,
)

E = -1  # image marker for the unit basepoint; 0 marks the zero basepoint

HOM_SEARCH_GUARD = 10**7


def _entry_str(v: int) -> str:
    return "e" if v == E else str(v)


@dataclass(frozen=True)
class ExtMap:
    """A based map {0,e,1..m} -> {0,e,1..n}; 0 and e are implicitly fixed."""

    source_size: int
    target_size: int
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.source_size:
            raise ArityMismatch("images length differs from source size")
        for v in self.images:
            if v != E and not 0 <= v <= self.target_size:
                raise ArityMismatch(f"image {v} out of range 0..{self.target_size}")

    def __call__(self, i: int) -> int:
        if i == 0 or i == E:
            return i
        return self.images[i - 1]

    def compose(self, inner: "ExtMap") -> "ExtMap":
        """self after inner."""
        if inner.target_size != self.source_size:
            raise ArityMismatch("sizes do not match for composition")
        return ExtMap(
            inner.source_size, self.target_size, tuple(self(v) for v in inner.images)
        )

    @staticmethod
    def identity(n: int) -> "ExtMap":
        return ExtMap(n, n, tuple(range(1, n + 1)))

    @property
    def is_effective(self) -> bool:
        """Only basepoints hit basepoints."""
        return all(v not in (0, E) for v in self.images)

    @property
    def is_singular(self) -> bool:
        """Surjective, and strictly increasing on positions with positive images."""
        positive = [v for v in self.images if v not in (0, E)]
        if sorted(set(positive)) != list(range(1, self.target_size + 1)):
            return False
        return all(b > a for a, b in zip(positive, positive[1:]))

    @property
    def is_injective_setmap(self) -> bool:
        """Injectivity on the whole extended set: effective and no repeats."""
        return self.is_effective and len(set(self.images)) == len(self.images)

    @property
    def is_surjective(self) -> bool:
        return set(range(1, self.target_size + 1)) <= set(self.images)

    def __str__(self):
        inside = ", ".join(
            f"{i}->{_entry_str(v)}" for i, v in enumerate(self.images, start=1)
        )
        return "{" + inside + "}"


def substitute(phi: ExtMap, f: RPoly) -> IntPoly:
    """Full integer expansion of f along phi, with a_0 = 0 and a_e = 1."""
    if phi.source_size != f.arity:
        raise ArityMismatch("map source size differs from polynomial arity")
    return substitute_images(phi.images, phi.target_size, f)


@dataclass(frozen=True)
class RMorphism:
    """A validated triple (source, map, target) with substitute(map, source) = target."""

    source: RPoly
    map: ExtMap
    target: RPoly

    @property
    def is_effective(self) -> bool:
        return self.map.is_effective

    @property
    def is_singular(self) -> bool:
        return self.map.is_singular

    def then(self, outer: "RMorphism") -> "RMorphism":
        if outer.source != self.target:
            raise ArityMismatch("morphisms are not composable")
        return RMorphism(self.source, outer.map.compose(self.map), outer.target)

    def __str__(self):
        return f"{self.source} |{self.map}| {self.target}"


def validate(f: RPoly, phi: ExtMap, g: RPoly) -> RMorphism:
    """Check the defining condition phi_*(f) = g and return the morphism."""
    if phi.source_size != f.arity or phi.target_size != g.arity:
        raise ArityMismatch("map sizes do not match the polynomial arities")
    image = substitute(phi, f)
    expected = {m.support: 1 for m in g.monomials}
    if image.coeffs() != expected:
        raise NotAMorphism(f"substitution of {f} along {phi} does not give {g}")
    return RMorphism(f, phi, g)


def is_morphism(f: RPoly, phi: ExtMap, g: RPoly) -> bool:
    try:
        validate(f, phi, g)
        return True
    except (NotAMorphism, ArityMismatch):
        return False


# ---------------------------------------------------------------------------
# Hom-set enumeration


def _all_maps(m: int, n: int) -> Iterator[ExtMap]:
    values = [0, E] + list(range(1, n + 1))
    for images in itertools.product(values, repeat=m):
        yield ExtMap(m, n, images)


def _effective_maps_onto(f: RPoly, g: RPoly) -> Iterator[ExtMap]:
    """Structural enumeration of effective maps with phi_*(f) = g.

    An effective map must carry each source monomial bijectively onto a
    distinct target monomial of the same size, so candidates are built from
    size-preserving monomial matchings plus per-monomial support bijections;
    variables outside every monomial are free over 1..|g|.
    """
    m, n = f.arity, g.arity
    src, tgt = lambda_of(f), lambda_of(g)
    if len(src) != len(tgt):
        return
    if sorted(len(x.support) for x in src) != sorted(len(x.support) for x in tgt):
        return
    covered = sorted({i for mono in src for i in mono.support})
    free = [i for i in range(1, m + 1) if i not in set(covered)]
    seen = set()
    for matching in _size_preserving_bijections(src, tgt):
        for assignment in _support_assignments(matching):
            base = dict(assignment)
            for extra in itertools.product(range(1, n + 1), repeat=len(free)):
                images = list(base.items()) + list(zip(free, extra))
                full = [0] * m
                for i, v in images:
                    full[i - 1] = v
                phi = ExtMap(m, n, tuple(full))
                if phi.images in seen:
                    continue
                seen.add(phi.images)
                if is_morphism(f, phi, g):
                    yield phi


def _size_preserving_bijections(src, tgt):
    """All bijections src -> tgt matching support sizes."""
    groups: dict[int, list] = {}
    for mono in tgt:
        groups.setdefault(len(mono.support), []).append(mono)
    by_size: dict[int, list] = {}
    for mono in src:
        by_size.setdefault(len(mono.support), []).append(mono)
    if {k: len(v) for k, v in groups.items()} != {k: len(v) for k, v in by_size.items()}:
        return
    sizes = sorted(groups)
    perms_per_size = [itertools.permutations(groups[s]) for s in sizes]
    for combo in itertools.product(*perms_per_size):
        pairing = []
        for size, perm in zip(sizes, combo):
            pairing.extend(zip(by_size[size], perm))
        yield pairing


def _support_assignments(pairing):
    """Per-monomial support bijections merged into one consistent variable map."""

    def extend(idx, acc):
        if idx == len(pairing):
            yield dict(acc)
            return
        source_mono, target_mono = pairing[idx]
        for perm in itertools.permutations(target_mono.support):
            trial = dict(acc)
            ok = True
            for i, v in zip(source_mono.support, perm):
                if trial.get(i, v) != v:
                    ok = False
                    break
                trial[i] = v
            if ok:
                yield from extend(idx + 1, trial)

    yield from extend(0, {})


def enumerate_hom(f: RPoly, g: RPoly, kind: str = "all") -> list[RMorphism]:
    """All morphisms f -> g of the requested class.

    kind "all" brute-forces every based map under the (n+2)^m <= 10^7 guard;
    "effective" uses the structural enumeration; "nondegenerate" additionally
    requires both endpoints non-degenerate (surjectivity then comes for free,
    but is still asserted).
    """
    if kind == "all":
        count = (g.arity + 2) ** f.arity
        if count > HOM_SEARCH_GUARD:
            raise SearchBudgetExceeded(
                f"{count} candidate maps exceed the hom search guard {HOM_SEARCH_GUARD}"
            )
        return [
            RMorphism(f, phi, g) for phi in _all_maps(f.arity, g.arity)
            if is_morphism(f, phi, g)
        ]
    if kind == "effective":
        return [RMorphism(f, phi, g) for phi in _effective_maps_onto(f, g)]
    if kind == "nondegenerate":
        if not (is_nondegenerate(f) and is_nondegenerate(g)):
            return []
        out = []
        for phi in _effective_maps_onto(f, g):
            assert phi.is_surjective, "effective map between non-degenerate objects"
            out.append(RMorphism(f, phi, g))
        return out
    raise ValueError(f"unknown hom class {kind!r}")


def has_effective_hom(f: RPoly, g: RPoly) -> bool:
    """Existence test for an effective morphism f -> g, short-circuiting."""
    return next(iter(_effective_maps_onto(f, g)), None) is not None


def automorphisms(f: RPoly) -> list[RMorphism]:
    """Effective self-maps fixing f; these are exactly the bijective ones."""
    return [m for m in enumerate_hom(f, f, "effective") if m.map.is_injective_setmap]


# ---------------------------------------------------------------------------
# Canonical decomposition and equivariance constructions


def canonical_decompose(phi: ExtMap) -> tuple[ExtMap, ExtMap]:
    """The unique factorization phi = p o sigma, sigma singular, p effective.

    sigma collapses exactly the 0- and e-preimages of phi and renumbers the
    remaining positions in order; p is then forced on the image positions.
    """
    m = phi.source_size
    kept = [i for i in range(1, m + 1) if phi(i) not in (0, E)]
    k = len(kept)
    sigma_images = []
    rank = {i: t for t, i in enumerate(kept, start=1)}
    for i in range(1, m + 1):
        v = phi(i)
        sigma_images.append(v if v in (0, E) else rank[i])
    p_images = tuple(phi(i) for i in kept)
    sigma = ExtMap(m, k, tuple(sigma_images))
    p = ExtMap(k, phi.target_size, p_images)
    return sigma, p


def all_factorizations(phi: ExtMap) -> list[tuple[ExtMap, ExtMap]]:
    """Every (sigma singular, p effective) pair with p o sigma = phi.

    A singular map out of m is determined by its 0-set and e-set, so the
    search space is 3^m; p is then forced by surjectivity of sigma.
    """
    m, n = phi.source_size, phi.target_size
    found = []
    positions = list(range(1, m + 1))
    for labels in itertools.product((0, E, 1), repeat=m):
        kept = [i for i, lab in zip(positions, labels) if lab == 1]
        k = len(kept)
        rank = {i: t for t, i in enumerate(kept, start=1)}
        sigma = ExtMap(
            m, k, tuple(lab if lab != 1 else rank[i] for i, lab in zip(positions, labels))
        )
        p_images = []
        ok = True
        for i in kept:
            v = phi(i)
            if v in (0, E):
                ok = False
                break
            p_images.append(v)
        if not ok:
            continue
        p = ExtMap(k, n, tuple(p_images))
        if not p.is_effective:
            continue
        if p.compose(sigma) == phi:
            found.append((sigma, p))
    return found


def block_sum(maps: Sequence[ExtMap], target_arities: Union[Sequence[int], None] = None) -> ExtMap:
    """Blockwise sum: block t maps into target block t, basepoints pass through."""
    if target_arities is not None:
        declared = list(target_arities)
        actual = [phi.target_size for phi in maps]
        if declared != actual:
            raise ArityMismatch(f"target arities {declared} do not match maps {actual}")
    source = sum(phi.source_size for phi in maps)
    target = sum(phi.target_size for phi in maps)
    images = []
    offset = 0
    for phi in maps:
        for v in phi.images:
            images.append(v if v in (0, E) else v + offset)
        offset += phi.target_size
    return ExtMap(source, target, tuple(images))


def psi_tilde(psi: ExtMap, arities: Sequence[int]) -> ExtMap:
    """The induced map on argument blocks for a singular collapse onto e.

    Slot t of the source carries width j_{psi(t)}, where e-slots have width 1;
    each e-slot's position is sent to e and everything else order-preservingly
    onto the target block space.
    """
    if not psi.is_singular:
        raise PreconditionViolation("psi must be singular")
    if any(v == 0 for v in psi.images):
        raise PreconditionViolation("psi must not collapse to 0")
    if len(arities) != psi.target_size:
        raise ArityMismatch("arities must list one width per target index")
    widths = [1 if v == E else arities[v - 1] for v in psi.images]
    total_src = sum(widths)
    total_tgt = sum(arities)
    images = [0] * total_src
    pos = 0
    next_target = 1
    for t, v in enumerate(psi.images, start=1):
        w = widths[t - 1]
        if v == E:
            images[pos] = E
        else:
            for q in range(w):
                images[pos + q] = next_target
                next_target += 1
        pos += w
    return ExtMap(total_src, total_tgt, tuple(images))


def argument_collation(psi: ExtMap, arities: Sequence[int]) -> ExtMap:
    """Re-indexing from psi-selected argument blocks onto target blocks.

    Used for the equivariance diagram where the operad acts by psi on the
    outer polynomial: slot t (width j_{psi(t)}, zero for psi(t) = 0) maps
    identically onto target block psi(t).  Substitution along the result
    carries the slot-composite polynomial onto the target composite.
    """
    if any(v == E for v in psi.images):
        raise PreconditionViolation("collation expects no collapse onto e")
    if len(arities) != psi.target_size:
        raise ArityMismatch("arities must list one width per target index")
    offsets = [sum(arities[:j]) for j in range(len(arities))]
    images = []
    for v in psi.images:
        if v == 0:
            continue
        base = offsets[v - 1]
        images.extend(range(base + 1, base + arities[v - 1] + 1))
    return ExtMap(len(images), sum(arities), tuple(images))


# ---------------------------------------------------------------------------
# Induced monomial maps


@dataclass(frozen=True)
class LambdaMaps:
    """The monomial-level data induced by a morphism.

    phi_prime sends each target monomial to the unique source monomial over
    it; per_monomial[J] is the variable-level injection from J's support into
    its source monomial's support; phi_tilde inverts phi_prime when the map
    is effective.
    """

    phi_prime: dict[Monomial, Monomial]
    per_monomial: dict[Monomial, dict[int, int]]
    phi_tilde: Union[dict[Monomial, Monomial], None]


def induced_lambda_maps(mor: RMorphism) -> LambdaMaps:
    phi = mor.map
    phi_prime: dict[Monomial, Monomial] = {}
    per_monomial: dict[Monomial, dict[int, int]] = {}
    for source_mono in mor.source.monomials:
        hit = []
        dead = False
        for i in source_mono.support:
            v = phi(i)
            if v == 0:
                dead = True
                break
            if v == E:
                continue
            hit.append(v)
        if dead:
            continue
        target_mono = Monomial(mor.target.arity, tuple(sorted(hit)))
        if target_mono in phi_prime:
            raise NotAMorphism("two source monomials map onto one target monomial")
        phi_prime[target_mono] = source_mono
        per_monomial[target_mono] = {
            phi(i): i for i in source_mono.support if phi(i) not in (0, E)
        }
    if set(phi_prime) != set(mor.target.monomials):
        raise NotAMorphism("monomial images do not cover the target")
    phi_tilde = None
    if phi.is_effective:
        phi_tilde = {src: tgt for tgt, src in phi_prime.items()}
    return LambdaMaps(phi_prime, per_monomial, phi_tilde)


# ---------------------------------------------------------------------------
# Special representatives, components and the filtration


def special_rep_morphism(f: RPoly) -> RMorphism:
    """The block-assignment morphism from the special of f's type onto f.

    Monomials are listed by size with lambda-order breaking ties; block j of
    the special is sent onto the ordered support of the j-th monomial.
    """
    if f.is_zero:
        phi = ExtMap(0, f.arity, ())
        return validate(zero_poly(0), phi, f)
    listed = sorted(lambda_of(f), key=lambda m: (len(m.support), m.exponents()))
    source = special_of_type(type_of(f))
    images = []
    for mono in listed:
        images.extend(gamma_of(mono))
    phi = ExtMap(source.arity, f.arity, tuple(images))
    return validate(source, phi, f)


def connected_components(n: int) -> list[frozenset[RPoly]]:
    """Partition of R(n) by zig-zag connectivity in the effective subcategory.

    Edges come from the effective hom relation among R(n) objects plus the
    special representative morphisms (which may pass through higher arities),
    then union-find merges the blocks.
    """
    if n > 3:
        raise ArityCapExceeded("connected_components capped at n = 3")
    objects = enumerate_R(n)
    parent: dict[RPoly, RPoly] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    specials = {}
    for f in objects:
        parent[f] = f
        specials[f] = special_of_type(type_of(f)) if not f.is_zero else zero_poly(0)
    for g in set(specials.values()):
        parent.setdefault(g, g)
    for images in itertools.product(range(1, n + 1), repeat=n):
        phi = ExtMap(n, n, images)
        for f in objects:
            image = substitute(phi, f)
            if not is_member_int(image):
                continue
            union(f, to_rpoly(image))
    for f in objects:
        union(specials[f], f)
    blocks: dict[RPoly, set[RPoly]] = {}
    for f in objects:
        blocks.setdefault(find(f), set()).add(f)
    return [frozenset(block) for block in blocks.values()]


def component_objects(f: RPoly, arity: int) -> list[RPoly]:
    """Non-degenerate objects of f's connected component with the given arity.

    Membership is decided by the existence of an effective (hence surjective)
    morphism from the special representative, which bounds arities by |special|.
    """
    special = special_of_type(type_of(f)) if not f.is_zero else zero_poly(0)
    if arity > special.arity:
        return []
    if arity > 4:
        raise ArityCapExceeded("component enumeration needs enumerate_R at this arity")
    out = []
    for g in enumerate_R(arity):
        if not is_nondegenerate(g):
            continue
        if type_of(g) != type_of(special):
            continue
        if next(iter(_effective_maps_onto(special, g)), None) is not None:
            out.append(g)
    return out


def filtration(f: RPoly, level: int) -> frozenset[RPoly]:
    """Non-degenerate objects of f's component with arity >= level.

    Defined for special f and 0 <= level <= |f| + 1; the top level is empty
    and level 0 is the entire non-degenerate component.
    """
    if not is_special(f):
        raise NotSpecial(f"{f} is not special")
    if not 0 <= level <= f.arity + 1:
        raise PreconditionViolation(f"level must lie in 0..{f.arity + 1}")
    out: set[RPoly] = set()
    for arity in range(level, f.arity + 1):
        out.update(component_objects(f, arity))
    return frozenset(out)
