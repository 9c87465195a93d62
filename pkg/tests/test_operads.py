import pytest

from ringops.errors import SearchBudgetExceeded
from ringops.indexcat import ExtMap, enumerate_hom, validate
from ringops.operads import (
    Budget,
    DiscreteAlgebra,
    TableRingOperad,
    boolean_rig_algebra,
    check_axioms,
    check_einfty_set,
    compute_L,
    eval_rpoly_bool,
    one_point_algebra,
    operad_to_table,
    product,
    strict_operad,
    validate_algebra,
)
from ringops.polynomials import enumerate_R, rpoly, unit_poly, zero_poly
from ringops.terms import sset_operad


class TestStrict:
    def test_components_are_points(self):
        strict = strict_operad()
        for n in range(3):
            for f in enumerate_R(n):
                assert len(strict.component(f)) == 1

    def test_axioms_cap2(self):
        report = check_axioms(strict_operad(), cap=2)
        assert report.ok, report.failure
        assert report.checked > 0

    def test_condition4_counterexample(self):
        # the unique point cannot separate the identity from the swap
        strict = strict_operad()
        f = rpoly(2, [(1,), (2,)])
        ident = validate(f, ExtMap.identity(2), f)
        swap = validate(f, ExtMap(2, 2, (2, 1)), f)
        alpha = strict.component(f)[0]
        assert ident.map != swap.map
        assert strict.act(ident, alpha) == strict.act(swap, alpha)

    def test_einfty_pattern(self):
        report = check_einfty_set(strict_operad(), cap=2)
        assert report.conditions[1][0] == "not-applicable"
        assert report.conditions[2][0] == "pass"
        assert report.conditions[3][0] == "pass"
        assert report.conditions[4][0] == "fail"
        assert report.conditions[5][0] == "pass"
        assert not report.ok


class TestProduct:
    def test_sizes_multiply(self):
        sset = sset_operad("sym")
        both = product(strict_operad(), sset)
        for f in enumerate_R(2):
            assert len(both.component(f)) == len(sset.component(f))

    def test_product_of_strict_is_strict_sized(self):
        both = product(strict_operad(), strict_operad())
        for f in enumerate_R(2):
            assert len(both.component(f)) == 1

    def test_projections_commute_with_gamma(self):
        sset = sset_operad("sym")
        both = product(strict_operad(), sset)
        g = rpoly(2, [(1,), (2,)])
        f1, f2 = unit_poly(), rpoly(1, [(1,)])
        for g_elt in both.component(g):
            for x1 in both.component(f1):
                for x2 in both.component(f2):
                    combined = both.gamma(g, g_elt, [(f1, x1), (f2, x2)])
                    assert combined[1] == sset.gamma(
                        g, g_elt[1], [(f1, x1[1]), (f2, x2[1])]
                    )

    def test_product_passes_axioms_cap1(self):
        report = check_axioms(product(strict_operad(), sset_operad("sym")), cap=1)
        assert report.ok, report.failure


class TestTableOperads:
    def test_materialized_strict_passes(self):
        table = operad_to_table(strict_operad(), cap=1)
        report = check_axioms(table, cap=1)
        assert report.ok, report.failure

    def test_materialized_sset_passes(self):
        table = operad_to_table(sset_operad("sym"), cap=1)
        report = check_axioms(table, cap=1)
        assert report.ok, report.failure

    def test_corrupted_gamma_fails_with_named_instance(self):
        source = operad_to_table(sset_operad("sym"), cap=2)
        rows = dict(source._gamma_rows)
        # redirect a composition with non-unit arguments onto the other
        # element of its target component
        target_key = None
        for (g_elt, args), value in sorted(rows.items()):
            home = {
                name: f for f, names in source._components.items() for name in names
            }
            target_poly = home[value]
            siblings = [n for n in source._components[target_poly] if n != value]
            if siblings and len(args) == 2 and args[0] != source._unit:
                target_key = (g_elt, args)
                rows[target_key] = siblings[0]
                break
        assert target_key is not None
        corrupted = TableRingOperad(
            source._components,
            source._unit,
            rows,
            source._action_rows,
            name="corrupted",
        )
        report = check_axioms(corrupted, cap=2)
        assert not report.ok
        assert report.failure is not None

    def test_missing_gamma_rows_are_skipped(self):
        table = operad_to_table(strict_operad(), cap=1)
        pruned = {
            key: value
            for key, value in table._gamma_rows.items()
            if key[1] == (table._unit,) or key[0] == table._unit
        }
        assert len(pruned) < len(table._gamma_rows)
        partial = TableRingOperad(
            table._components, table._unit, pruned, table._action_rows, name="partial"
        )
        report = check_axioms(partial, cap=1)
        assert report.ok, report.failure
        assert report.skipped > 0


class TestEinftyTermOperads:
    def test_sset_passes(self):
        report = check_einfty_set(sset_operad("sym"), cap=2)
        assert report.ok, report.conditions

    def test_pset_passes(self):
        report = check_einfty_set(sset_operad("biperm"), cap=2)
        assert report.ok, report.conditions


class TestComputeL:
    def test_top_level_is_empty(self):
        strict = strict_operad()
        f = rpoly(2, [(1,), (2,)])
        result = compute_L(strict, f, 2)
        assert result == {f: frozenset()}

    def test_no_objects_below_minimum_arity(self):
        strict = strict_operad()
        f = rpoly(2, [(1,), (2,)])
        assert compute_L(strict, f, 1) == {}

    def test_strict_saturation_is_everything_reachable(self):
        strict = strict_operad()
        f = rpoly(3, [(1,), (2, 3)])
        result = compute_L(strict, f, 2)
        assert set(result) == {
            rpoly(2, [(1,), (1, 2)]),
            rpoly(2, [(2,), (1, 2)]),
        }
        for subset in result.values():
            assert subset == frozenset({"*"})

    def test_sset_saturation_is_stable_under_action(self):
        sset = sset_operad("sym")
        f = rpoly(3, [(1,), (2, 3)])
        result = compute_L(sset, f, 2)
        for g, subset in result.items():
            assert subset <= set(sset.component(g))
            for mor in enumerate_hom(g, g, "nondegenerate"):
                assert {sset.act(mor, x) for x in subset} <= subset


class TestAlgebras:
    def test_boolean_over_strict(self):
        report = validate_algebra(strict_operad(), boolean_rig_algebra(), cap=2)
        assert report.ok, report.failure

    def test_one_point(self):
        report = validate_algebra(strict_operad(), one_point_algebra(), cap=2)
        assert report.ok, report.failure

    def test_boolean_evaluation(self):
        f = rpoly(2, [(1,), (1, 2)])
        assert eval_rpoly_bool(f, (0, 0)) == 0
        assert eval_rpoly_bool(f, (1, 0)) == 1
        assert eval_rpoly_bool(f, (1, 1)) == 1
        assert eval_rpoly_bool(zero_poly(2), (1, 1)) == 0

    def test_corrupted_theta_fails(self):
        good = boolean_rig_algebra()

        def bad_theta(f, elt, xs):
            if f.arity == 2 and len(f.monomials) == 1 and xs == (1, 1):
                return 0
            return good.theta(f, elt, xs)

        bad = DiscreteAlgebra(good.carrier, good.zero, good.e, bad_theta)
        report = validate_algebra(strict_operad(), bad, cap=2)
        assert not report.ok
        assert report.failure is not None


class TestBudget:
    def test_budget_aborts(self):
        tiny = Budget(limit=10)
        with pytest.raises(SearchBudgetExceeded):
            check_axioms(strict_operad(), cap=2, budget=tiny)
