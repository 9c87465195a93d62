"""Discrete ring operads, their axiom checker, and set-level E-infinity tests.

A discrete ring operad assigns a finite component to every RPoly, acts along
validated index-category morphisms, carries a unit in the component of x1,
and composes along polynomial composition.  The checkers instantiate the
defining diagrams exhaustively within an arity cap, counting instances and
aborting at a configurable budget.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence, Union

from .errors import ArityCapExceeded, RingopsError, SearchBudgetExceeded
from .indexcat import (
    E,
    ExtMap,
    RMorphism,
    argument_collation,
    block_sum,
    component_objects,
    enumerate_hom,
    is_morphism,
    psi_tilde,
    special_of_type,
    substitute,
    validate,
)
from .polynomials import (
    RPoly,
    compose,
    enumerate_R,
    is_nondegenerate,
    is_special,
    to_rpoly,
    type_of,
    unit_poly,
    zero_poly,
)

DEFAULT_BUDGET = 10**8


class GammaUndefined(RingopsError):
    """A table-backed composition entry is missing (arity-truncated gamma)."""


class Budget:
    """Instance counter with a hard abort threshold."""

    def __init__(self, limit: int = DEFAULT_BUDGET):
        self.limit = limit
        self.used = 0

    def tick(self, count: int = 1):
        self.used += count
        if self.used > self.limit:
            raise SearchBudgetExceeded(
                f"exhaustive check exceeded budget of {self.limit} instances"
            )


class DiscreteRingOperad:
    """Interface shared by all operad flavors.

    component(f) returns a deterministic tuple of elements; act maps along a
    validated morphism; gamma composes an element over g with one element per
    argument polynomial.  gamma over an empty argument list is the identity.
    """

    name = "operad"

    def component(self, f: RPoly) -> tuple:
        raise NotImplementedError

    def unit_element(self):
        raise NotImplementedError

    def act(self, mor: RMorphism, elt):
        raise NotImplementedError

    def gamma(self, g: RPoly, g_elt, args: Sequence[tuple[RPoly, object]]):
        if len(args) != g.arity:
            raise ArityCapExceeded(
                f"gamma over {g.arity}-ary polynomial got {len(args)} arguments"
            )
        if not args:
            return g_elt
        return self._gamma(g, g_elt, tuple(args))

    def _gamma(self, g, g_elt, args):
        raise NotImplementedError

    def zero_element(self, n: int):
        (elt,) = self.component(zero_poly(n))
        return elt


class StrictRingOperad(DiscreteRingOperad):
    """Every component a single point; the terminal ring operad."""

    name = "strict"
    POINT = "*"

    def component(self, f: RPoly) -> tuple:
        return (self.POINT,)

    def unit_element(self):
        return self.POINT

    def act(self, mor: RMorphism, elt):
        return self.POINT

    def _gamma(self, g, g_elt, args):
        return self.POINT


def strict_operad() -> StrictRingOperad:
    return StrictRingOperad()


class ProductRingOperad(DiscreteRingOperad):
    """Componentwise Cartesian product; both projections are operad maps."""

    def __init__(self, left: DiscreteRingOperad, right: DiscreteRingOperad):
        self.left = left
        self.right = right
        self.name = f"{left.name}x{right.name}"

    def component(self, f: RPoly) -> tuple:
        return tuple(
            itertools.product(self.left.component(f), self.right.component(f))
        )

    def unit_element(self):
        return (self.left.unit_element(), self.right.unit_element())

    def act(self, mor: RMorphism, elt):
        return (self.left.act(mor, elt[0]), self.right.act(mor, elt[1]))

    def _gamma(self, g, g_elt, args):
        left_args = [(f, x[0]) for f, x in args]
        right_args = [(f, x[1]) for f, x in args]
        return (
            self.left.gamma(g, g_elt[0], left_args),
            self.right.gamma(g, g_elt[1], right_args),
        )


def product(left: DiscreteRingOperad, right: DiscreteRingOperad) -> ProductRingOperad:
    return ProductRingOperad(left, right)


class TableRingOperad(DiscreteRingOperad):
    """Operad given by explicit tables, arity-truncated and gamma-partial.

    Element names must be unique across the whole table.  Missing gamma rows
    raise GammaUndefined, which the checkers count as skipped instances;
    missing action rows are a hard error since the action must be total.
    """

    def __init__(
        self,
        components: dict[RPoly, Sequence[str]],
        unit_name: str,
        gamma_rows: dict[tuple[str, tuple[str, ...]], str],
        action_rows: dict[tuple[RPoly, tuple[int, ...], RPoly, str], str],
        name: str = "table",
    ):
        self.name = name
        self._components = {f: tuple(elts) for f, elts in components.items()}
        seen: dict[str, RPoly] = {}
        for f, elts in self._components.items():
            for elt in elts:
                if elt in seen:
                    raise RingopsError(f"element name {elt!r} reused across components")
                seen[elt] = f
        self._home = seen
        self._unit = unit_name
        self._gamma_rows = dict(gamma_rows)
        self._action_rows = dict(action_rows)

    def component(self, f: RPoly) -> tuple:
        if f not in self._components:
            raise ArityCapExceeded(f"fixture has no component for {f}")
        return self._components[f]

    def unit_element(self):
        return self._unit

    def act(self, mor: RMorphism, elt):
        key = (mor.source, mor.map.images, mor.target, elt)
        if key not in self._action_rows:
            raise RingopsError(
                f"fixture lacks action row for {elt!r} along {mor.map}"
            )
        return self._action_rows[key]

    def _gamma(self, g, g_elt, args):
        key = (g_elt, tuple(x for _, x in args))
        if key not in self._gamma_rows:
            raise GammaUndefined(f"no gamma row for {key}")
        return self._gamma_rows[key]


def operad_to_table(
    operad: DiscreteRingOperad, cap: int, name: Union[str, None] = None
) -> TableRingOperad:
    """Materialize a rule-backed operad as tables up to the arity cap."""
    polys = [f for n in range(cap + 1) for f in enumerate_R(n)]
    naming: dict[tuple[RPoly, object], str] = {}
    components: dict[RPoly, list[str]] = {}
    for f in polys:
        elts = operad.component(f)
        components[f] = []
        for idx, elt in enumerate(elts):
            label = f"e{len(naming)}"
            naming[(f, elt)] = label
            components[f].append(label)
    unit = naming[(unit_poly(), operad.unit_element())]
    action_rows = {}
    for mor in _all_morphisms(cap):
        for elt in operad.component(mor.source):
            key = (mor.source, mor.map.images, mor.target, naming[(mor.source, elt)])
            action_rows[key] = naming[(mor.target, operad.act(mor, elt))]
    gamma_rows = {}
    for g, arg_polys in _composition_shapes(cap):
        if not arg_polys:
            continue
        target = compose(g, arg_polys)
        for g_elt in operad.component(g):
            pools = [operad.component(f) for f in arg_polys]
            for xs in itertools.product(*pools):
                result = operad.gamma(g, g_elt, list(zip(arg_polys, xs)))
                key = (naming[(g, g_elt)], tuple(naming[(f, x)] for f, x in zip(arg_polys, xs)))
                gamma_rows[key] = naming[(target, result)]
    return TableRingOperad(
        components, unit, gamma_rows, action_rows, name=name or f"table[{operad.name}]"
    )


# ---------------------------------------------------------------------------
# Shape and morphism enumeration helpers


def _arity_tuples(k: int, total_cap: int) -> Iterator[tuple[int, ...]]:
    """All k-tuples of non-negative arities with sum <= total_cap."""
    if k == 0:
        yield ()
        return
    for head in range(total_cap + 1):
        for rest in _arity_tuples(k - 1, total_cap - head):
            yield (head,) + rest


def _poly_tuples(k: int, total_cap: int) -> Iterator[tuple[RPoly, ...]]:
    for arities in _arity_tuples(k, total_cap):
        pools = [enumerate_R(j) for j in arities]
        yield from itertools.product(*pools)


def _composition_shapes(cap: int) -> Iterator[tuple[RPoly, tuple[RPoly, ...]]]:
    """Pairs (g, args) with |g| in 1..cap and total argument arity <= cap."""
    for k in range(1, cap + 1):
        for g in enumerate_R(k):
            for args in _poly_tuples(k, cap):
                yield g, args


@lru_cache(maxsize=8)
def _all_morphisms(cap: int) -> tuple[RMorphism, ...]:
    out = []
    for m in range(cap + 1):
        for f in enumerate_R(m):
            for n in range(cap + 1):
                values = [0, E] + list(range(1, n + 1))
                for images in itertools.product(values, repeat=m):
                    phi = ExtMap(m, n, images)
                    image = substitute(phi, f)
                    try:
                        g = to_rpoly(image)
                    except RingopsError:
                        continue
                    out.append(RMorphism(f, phi, g))
    return tuple(out)


# ---------------------------------------------------------------------------
# Axiom checker


@dataclass
class CheckReport:
    """Outcome of an exhaustive diagram check."""

    name: str
    ok: bool
    checked: int
    skipped: int
    failure: Union[str, None]
    sections: dict[str, int] = field(default_factory=dict)

    def __str__(self):
        status = "pass" if self.ok else f"FAIL: {self.failure}"
        return f"[{self.name}] {status} ({self.checked} instances, {self.skipped} skipped)"


def check_axioms(
    operad: DiscreteRingOperad, cap: int = 2, budget: Union[Budget, None] = None
) -> CheckReport:
    """Exhaustively instantiate the ring-operad diagrams within the cap.

    Checks singleton zero components, action functoriality, the unit
    diagrams, associativity, and the three equivariance diagrams.  Reports
    the first violation, or success with instance counts.
    """
    budget = budget or Budget()
    report = CheckReport(f"axioms:{operad.name}@cap{cap}", True, 0, 0, None)

    def fail(section: str, message: str) -> CheckReport:
        report.ok = False
        report.failure = f"{section}: {message}"
        return report

    def run(section: str, gen: Callable[[], Iterator[Union[str, None]]]):
        count = 0
        for violation in gen():
            budget.tick()
            count += 1
            report.checked += 1
            if violation is not None:
                return violation
        report.sections[section] = count
        return None

    for section, gen in (
        ("zero-components", lambda: _check_zero_components(operad, cap)),
        ("functoriality", lambda: _check_functoriality(operad, cap)),
        ("units", lambda: _check_units(operad, cap, report)),
        ("associativity", lambda: _check_associativity(operad, cap, report)),
        ("equivariance-collapse", lambda: _check_equivariance_collapse(operad, cap, report)),
        ("equivariance-singular", lambda: _check_equivariance_singular(operad, cap, report)),
        ("equivariance-arguments", lambda: _check_equivariance_arguments(operad, cap, report)),
    ):
        violation = run(section, gen)
        if violation is not None:
            return fail(section, violation)
    return report


def _check_zero_components(operad, cap):
    for n in range(cap + 1):
        size = len(operad.component(zero_poly(n)))
        yield None if size == 1 else f"component of 0_{n} has {size} elements"


def _check_functoriality(operad, cap):
    morphisms = _all_morphisms(cap)
    by_source: dict[RPoly, list[RMorphism]] = {}
    for mor in morphisms:
        by_source.setdefault(mor.source, []).append(mor)
    for f in {m.source for m in morphisms}:
        ident = validate(f, ExtMap.identity(f.arity), f)
        for elt in operad.component(f):
            got = operad.act(ident, elt)
            yield None if got == elt else f"identity action moved {elt!r} over {f}"
    for first in morphisms:
        for second in by_source.get(first.target, ()):
            combined = first.then(second)
            for elt in operad.component(first.source):
                via_steps = operad.act(second, operad.act(first, elt))
                direct = operad.act(combined, elt)
                if via_steps != direct:
                    yield (
                        f"action not functorial on {first.map} then {second.map} "
                        f"at {elt!r}"
                    )
                else:
                    target_comp = operad.component(combined.target)
                    yield None if direct in target_comp else (
                        f"action left the target component at {elt!r}"
                    )


def _check_units(operad, cap, report):
    unit = unit_poly()
    eta = operad.unit_element()
    for k in range(1, cap + 1):
        for g in enumerate_R(k):
            for elt in operad.component(g):
                try:
                    right = operad.gamma(g, elt, [(unit, eta)] * k)
                except GammaUndefined:
                    report.skipped += 1
                    continue
                yield None if right == elt else f"gamma(c; unit^{k}) != c at {elt!r} over {g}"
    for n in range(cap + 1):
        for g in enumerate_R(n):
            for elt in operad.component(g):
                try:
                    left = operad.gamma(unit, eta, [(g, elt)])
                except GammaUndefined:
                    report.skipped += 1
                    continue
                yield None if left == elt else f"gamma(unit; c) != c at {elt!r} over {g}"


def _check_associativity(operad, cap, report):
    component_cache: dict[RPoly, tuple] = {}

    def pool(f):
        elements = component_cache.get(f)
        if elements is None:
            elements = operad.component(f)
            component_cache[f] = elements
        return elements

    for g, fs in _composition_shapes(cap):
        total = sum(f.arity for f in fs)
        composite = compose(g, fs)
        blocks = []
        start = 0
        for f in fs:
            blocks.append((start, start + f.arity))
            start += f.arity
        f_pools = [pool(f) for f in fs]
        tops = []
        for g_elt in pool(g):
            for f_elts in itertools.product(*f_pools):
                try:
                    top = operad.gamma(g, g_elt, list(zip(fs, f_elts)))
                except GammaUndefined:
                    report.skipped += 1
                    continue
                tops.append((g_elt, f_elts, top))
        for hs in _poly_tuples(total, cap):
            inner_targets = [
                compose(fs[s], hs[a:b]) if b > a else fs[s]
                for s, (a, b) in enumerate(blocks)
            ]
            h_pools = [pool(h) for h in hs]
            for g_elt, f_elts, top in tops:
                for h_elts in itertools.product(*h_pools):
                    try:
                        lhs = operad.gamma(composite, top, list(zip(hs, h_elts)))
                        nested = [
                            operad.gamma(
                                fs[s],
                                f_elts[s],
                                list(zip(hs[a:b], h_elts[a:b])),
                            )
                            for s, (a, b) in enumerate(blocks)
                        ]
                        rhs = operad.gamma(
                            g, g_elt, list(zip(inner_targets, nested))
                        )
                    except GammaUndefined:
                        report.skipped += 1
                        continue
                    if lhs != rhs:
                        yield (
                            f"associativity fails for g={g}, args={[str(f) for f in fs]}, "
                            f"inner={[str(h) for h in hs]} at ({g_elt!r}, {f_elts!r}, {h_elts!r}): "
                            f"{lhs!r} != {rhs!r}"
                        )
                    else:
                        yield None


def _morphisms_within(cap):
    for mor in _all_morphisms(cap):
        if mor.source.arity >= 1 and mor.target.arity >= 1:
            yield mor


def _check_equivariance_collapse(operad, cap, report):
    """Outer action by a map with no collapse onto e; zero slots take 0_0."""
    zero0 = zero_poly(0)
    for mor in _morphisms_within(cap):
        psi = mor.map
        if any(v == E for v in psi.images):
            continue
        n = mor.target.arity
        for fs in _poly_tuples(n, cap):
            widths = [f.arity for f in fs]
            slot_polys = [
                zero0 if psi(t) == 0 else fs[psi(t) - 1]
                for t in range(1, mor.source.arity + 1)
            ]
            if sum(p.arity for p in slot_polys) > cap:
                continue
            chi = argument_collation(psi, widths)
            source_comp = compose(mor.source, slot_polys)
            target_comp = compose(mor.target, fs)
            if not is_morphism(source_comp, chi, target_comp):
                yield f"collation map invalid for {psi} with args {[str(f) for f in fs]}"
                continue
            chi_mor = validate(source_comp, chi, target_comp)
            pools = [operad.component(f) for f in fs]
            for c in operad.component(mor.source):
                moved = operad.act(mor, c)
                for xs in itertools.product(*pools):
                    slot_args = [
                        (zero0, operad.zero_element(0))
                        if psi(t) == 0
                        else (fs[psi(t) - 1], xs[psi(t) - 1])
                        for t in range(1, mor.source.arity + 1)
                    ]
                    try:
                        lhs = operad.gamma(mor.target, moved, list(zip(fs, xs)))
                        rhs = operad.act(
                            chi_mor, operad.gamma(mor.source, c, slot_args)
                        )
                    except GammaUndefined:
                        report.skipped += 1
                        continue
                    if lhs != rhs:
                        yield (
                            f"collapse equivariance fails for {psi} on {mor.source} "
                            f"with args {[str(f) for f in fs]} at {c!r}, {xs!r}"
                        )
                    else:
                        yield None


def _check_equivariance_singular(operad, cap, report):
    """Outer action by a singular map collapsing onto e; e slots take the unit."""
    unit = unit_poly()
    for mor in _morphisms_within(cap):
        psi = mor.map
        if not psi.is_singular or any(v == 0 for v in psi.images):
            continue
        n = mor.target.arity
        for fs in _poly_tuples(n, cap):
            widths = [f.arity for f in fs]
            slot_polys = [
                unit if psi(t) == E else fs[psi(t) - 1]
                for t in range(1, mor.source.arity + 1)
            ]
            if sum(p.arity for p in slot_polys) > cap:
                continue
            tilde = psi_tilde(psi, widths)
            source_comp = compose(mor.source, slot_polys)
            target_comp = compose(mor.target, fs)
            if not is_morphism(source_comp, tilde, target_comp):
                yield f"tilde map invalid for {psi} with args {[str(f) for f in fs]}"
                continue
            tilde_mor = validate(source_comp, tilde, target_comp)
            pools = [operad.component(f) for f in fs]
            for c in operad.component(mor.source):
                moved = operad.act(mor, c)
                for xs in itertools.product(*pools):
                    slot_args = [
                        (unit, operad.unit_element())
                        if psi(t) == E
                        else (fs[psi(t) - 1], xs[psi(t) - 1])
                        for t in range(1, mor.source.arity + 1)
                    ]
                    try:
                        lhs = operad.gamma(mor.target, moved, list(zip(fs, xs)))
                        rhs = operad.act(
                            tilde_mor, operad.gamma(mor.source, c, slot_args)
                        )
                    except GammaUndefined:
                        report.skipped += 1
                        continue
                    if lhs != rhs:
                        yield (
                            f"singular equivariance fails for {psi} on {mor.source} "
                            f"with args {[str(f) for f in fs]} at {c!r}, {xs!r}"
                        )
                    else:
                        yield None


def _check_equivariance_arguments(operad, cap, report):
    """Acting on the arguments commutes with composing along the block sum."""
    morphisms = _all_morphisms(cap)
    by_shape: dict[tuple[int, int], list[RMorphism]] = {}
    for mor in morphisms:
        by_shape.setdefault((mor.source.arity, mor.target.arity), []).append(mor)
    for k in range(1, cap + 1):
        for g in enumerate_R(k):
            for src_arities in _arity_tuples(k, cap):
                for tgt_arities in _arity_tuples(k, cap):
                    pools = [
                        by_shape.get((src_arities[s], tgt_arities[s]), [])
                        for s in range(k)
                    ]
                    for mors in itertools.product(*pools):
                        fs = [m.source for m in mors]
                        hs = [m.target for m in mors]
                        bsum = block_sum([m.map for m in mors])
                        comp_f = compose(g, fs)
                        comp_h = compose(g, hs)
                        if not is_morphism(comp_f, bsum, comp_h):
                            yield (
                                f"block sum of {[str(m.map) for m in mors]} is not a "
                                f"morphism {comp_f} -> {comp_h}"
                            )
                            continue
                        bmor = validate(comp_f, bsum, comp_h)
                        elt_pools = [operad.component(f) for f in fs]
                        for c in operad.component(g):
                            for xs in itertools.product(*elt_pools):
                                try:
                                    lhs = operad.act(
                                        bmor,
                                        operad.gamma(g, c, list(zip(fs, xs))),
                                    )
                                    rhs = operad.gamma(
                                        g,
                                        c,
                                        [
                                            (hs[s], operad.act(mors[s], xs[s]))
                                            for s in range(k)
                                        ],
                                    )
                                except GammaUndefined:
                                    report.skipped += 1
                                    continue
                                if lhs != rhs:
                                    yield (
                                        f"argument equivariance fails for g={g}, "
                                        f"maps={[str(m.map) for m in mors]} at {c!r}, {xs!r}"
                                    )
                                else:
                                    yield None


# ---------------------------------------------------------------------------
# Set-level E-infinity conditions


@dataclass
class EinftyReport:
    """Per-condition outcome of the set-level E-infinity checks."""

    operad: str
    cap: int
    conditions: dict[int, tuple[str, str]]

    @property
    def ok(self) -> bool:
        return all(
            status in ("pass", "not-applicable")
            for status, _ in self.conditions.values()
        )

    def lines(self) -> list[str]:
        return [
            f"condition ({num}): {status}" + (f" -- {detail}" if detail else "")
            for num, (status, detail) in sorted(self.conditions.items())
        ]


def check_einfty_set(
    operad: DiscreteRingOperad, cap: int = 2, budget: Union[Budget, None] = None
) -> EinftyReport:
    """Set-level readings of the E-infinity conditions within the cap.

    (1) contractibility is topological and reported as not-applicable;
    (2) injective index maps act bijectively; (3) coincidences over a common
    effective image lift to a shared non-degenerate cover; (4) effective
    actions on non-degenerate sources are free; (5) non-degenerate-class
    actions are injective.
    """
    budget = budget or Budget()
    conditions: dict[int, tuple[str, str]] = {
        1: ("not-applicable", "contractibility is out of scope at the set level")
    }
    conditions[2] = _einfty_condition2(operad, cap, budget)
    conditions[3] = _einfty_condition3(operad, cap, budget)
    conditions[4] = _einfty_condition4(operad, cap, budget)
    conditions[5] = _einfty_condition5(operad, cap, budget)
    return EinftyReport(operad.name, cap, conditions)


def _einfty_condition2(operad, cap, budget):
    for mor in _all_morphisms(cap):
        if not mor.map.is_injective_setmap:
            continue
        budget.tick()
        source = operad.component(mor.source)
        images = [operad.act(mor, elt) for elt in source]
        target = operad.component(mor.target)
        if len(set(images)) != len(source) or set(images) != set(target):
            return (
                "fail",
                f"action along {mor.map} from {mor.source} is not a bijection",
            )
    return ("pass", "")


def _nondegenerate_objects(cap):
    return [
        f for n in range(cap + 1) for f in enumerate_R(n) if is_nondegenerate(f)
    ]


def _einfty_condition3(operad, cap, budget):
    objects = _nondegenerate_objects(cap)
    for g in objects:
        arrows: list[tuple[RPoly, RMorphism]] = []
        for f in objects:
            for mor in enumerate_hom(f, g, "effective"):
                arrows.append((f, mor))
        for (f1, m1), (f2, m2) in itertools.product(arrows, repeat=2):
            for a1 in operad.component(f1):
                for a2 in operad.component(f2):
                    budget.tick()
                    if operad.act(m1, a1) != operad.act(m2, a2):
                        continue
                    if not _has_common_cover(operad, f1, a1, m1, f2, a2, m2):
                        return (
                            "fail",
                            f"no non-degenerate cover for {a1!r} over {f1} and "
                            f"{a2!r} over {f2} coinciding in {g}",
                        )
    return ("pass", "")


def _has_common_cover(operad, f1, a1, m1, f2, a2, m2):
    if type_of(f1) != type_of(f2):
        return False
    special = special_of_type(type_of(f1))
    if special.arity > 4:
        raise SearchBudgetExceeded(
            f"cover search bound {special.arity} exceeds the enumeration cap"
        )
    for arity in range(max(f1.arity, f2.arity), special.arity + 1):
        for h in component_objects(f1, arity):
            homs1 = enumerate_hom(h, f1, "nondegenerate")
            homs2 = enumerate_hom(h, f2, "nondegenerate")
            if not homs1 or not homs2:
                continue
            for beta in operad.component(h):
                for psi1 in homs1:
                    if operad.act(psi1, beta) != a1:
                        continue
                    for psi2 in homs2:
                        if operad.act(psi2, beta) == a2:
                            return True
    return False


def _einfty_condition4(operad, cap, budget):
    objects = _nondegenerate_objects(cap)
    for f in objects:
        for n in range(cap + 1):
            for g in enumerate_R(n):
                homs = enumerate_hom(f, g, "effective")
                for m1, m2 in itertools.combinations(homs, 2):
                    for alpha in operad.component(f):
                        budget.tick()
                        if operad.act(m1, alpha) == operad.act(m2, alpha):
                            return (
                                "fail",
                                f"distinct effective maps {m1.map} and {m2.map} from "
                                f"{f} to {g} agree on {alpha!r}",
                            )
    return ("pass", "")


def _einfty_condition5(operad, cap, budget):
    objects = _nondegenerate_objects(cap)
    for f in objects:
        for g in objects:
            for mor in enumerate_hom(f, g, "nondegenerate"):
                budget.tick()
                elts = operad.component(f)
                images = [operad.act(mor, elt) for elt in elts]
                if len(set(images)) != len(elts):
                    return (
                        "fail",
                        f"action along {mor.map} from {f} to {g} is not injective",
                    )
    return ("pass", "")


def compute_L(
    operad: DiscreteRingOperad, f: RPoly, level: int
) -> dict[RPoly, frozenset]:
    """Saturation subsets: elements hit from strictly higher filtration levels.

    For each non-degenerate g of arity exactly `level` in the component of the
    special f, collects the subset of the component of g reachable by the
    action along a non-degenerate-class morphism from an object of arity
    >= level + 1 in the same component.
    """
    if not is_special(f):
        raise RingopsError(f"{f} is not special")
    out: dict[RPoly, set] = {g: set() for g in component_objects(f, level)}
    sources: list[RPoly] = []
    for arity in range(level + 1, f.arity + 1):
        sources.extend(component_objects(f, arity))
    for g, bucket in out.items():
        for h in sources:
            for mor in enumerate_hom(h, g, "nondegenerate"):
                for beta in operad.component(h):
                    bucket.add(operad.act(mor, beta))
    return {g: frozenset(bucket) for g, bucket in out.items()}


# ---------------------------------------------------------------------------
# Discrete algebras


@dataclass(frozen=True)
class DiscreteAlgebra:
    """A finite carrier with zero and unit points and an evaluation map.

    theta(f, c, xs) evaluates the operator c of the component over f at the
    carrier tuple xs (one entry per variable of f).
    """

    carrier: tuple
    zero: object
    e: object
    theta: Callable[[RPoly, object, tuple], object]


def eval_rpoly_bool(f: RPoly, bits: Sequence[int]) -> int:
    """Evaluate f in the two-element rig with OR as sum and AND as product."""
    total = 0
    for mono in f.monomials:
        prod = 1
        for i in mono.support:
            prod &= bits[i - 1]
        total |= prod
    return total


def boolean_rig_algebra() -> DiscreteAlgebra:
    """The two-point rig {0, 1}; a strict rig object, hence a strict algebra."""
    return DiscreteAlgebra(
        carrier=(0, 1),
        zero=0,
        e=1,
        theta=lambda f, _elt, xs: eval_rpoly_bool(f, xs),
    )


def one_point_algebra() -> DiscreteAlgebra:
    return DiscreteAlgebra(
        carrier=("p",), zero="p", e="p", theta=lambda f, _elt, xs: "p"
    )


def validate_algebra(
    operad: DiscreteRingOperad,
    algebra: DiscreteAlgebra,
    cap: int = 2,
    budget: Union[Budget, None] = None,
) -> CheckReport:
    """Exhaustively check the algebra diagrams within the arity cap."""
    budget = budget or Budget()
    report = CheckReport(f"algebra over {operad.name}@cap{cap}", True, 0, 0, None)

    def fail(section, message):
        report.ok = False
        report.failure = f"{section}: {message}"
        return report

    unit = unit_poly()
    eta = operad.unit_element()
    for x in algebra.carrier:
        budget.tick()
        report.checked += 1
        if algebra.theta(unit, eta, (x,)) != x:
            return fail("unit", f"theta(unit)({x!r}) != {x!r}")

    for g, fs in _composition_shapes(cap):
        total = sum(f.arity for f in fs)
        composite = compose(g, fs)
        blocks = []
        start = 0
        for f in fs:
            blocks.append((start, start + f.arity))
            start += f.arity
        for g_elt in operad.component(g):
            pools = [operad.component(f) for f in fs]
            for f_elts in itertools.product(*pools):
                try:
                    composed = operad.gamma(g, g_elt, list(zip(fs, f_elts)))
                except GammaUndefined:
                    report.skipped += 1
                    continue
                for xs in itertools.product(algebra.carrier, repeat=total):
                    budget.tick()
                    report.checked += 1
                    lhs = algebra.theta(composite, composed, xs)
                    inner = tuple(
                        algebra.theta(fs[s], f_elts[s], xs[a:b])
                        for s, (a, b) in enumerate(blocks)
                    )
                    rhs = algebra.theta(g, g_elt, inner)
                    if lhs != rhs:
                        return fail(
                            "associativity",
                            f"g={g}, args={[str(f) for f in fs]}, xs={xs!r}: "
                            f"{lhs!r} != {rhs!r}",
                        )

    for mor in _all_morphisms(cap):
        for c in operad.component(mor.source):
            moved = operad.act(mor, c)
            for xs in itertools.product(algebra.carrier, repeat=mor.target.arity):
                budget.tick()
                report.checked += 1
                pulled = tuple(
                    algebra.zero
                    if mor.map(t) == 0
                    else algebra.e
                    if mor.map(t) == E
                    else xs[mor.map(t) - 1]
                    for t in range(1, mor.source.arity + 1)
                )
                lhs = algebra.theta(mor.target, moved, xs)
                rhs = algebra.theta(mor.source, c, pulled)
                if lhs != rhs:
                    return fail(
                        "equivariance",
                        f"map {mor.map} from {mor.source}: {lhs!r} != {rhs!r}",
                    )
    return report
