"""Profiles, coefficient functors, windows, and the table derivations."""

import pytest

from bredon.formal import (
    AXIOMS,
    ConditionalGroup,
    Et,
    FormalGroup,
    FormalRuleError,
    KMODSQ,
    KSQ,
    KSQMOD4,
    KSTAR,
    LesWindow,
    PROFILES,
    SEEDS,
    TORS2K,
    Z2,
    ZA,
    ZERO_FG,
    check_profile_confluence,
    derive_weight1,
    derive_weight_sigma,
    get_profile,
    motivic_cohomology,
    nie_decompose,
    normalize,
    solve_window,
    tensor_Z2,
    two_torsion,
    universal_coeff,
)

GEN = PROFILES["general"]
QC = PROFILES["quadratically_closed"]
EU = PROFILES["euclidean"]
FR = PROFILES["formally_real"]


def fg(*atoms):
    return FormalGroup.of(*atoms)


class TestNormalize:
    def test_zero_absorbed(self):
        assert fg(KSTAR).direct_sum(ZERO_FG) == fg(KSTAR)

    def test_square_classes_by_profile(self):
        assert normalize(fg(KMODSQ), QC) == ZERO_FG
        assert normalize(fg(KMODSQ), EU) == fg(Z2)
        assert normalize(fg(KMODSQ), FR) == fg(KMODSQ)

    def test_idempotent_and_confluent(self):
        for profile in PROFILES.values():
            assert check_profile_confluence(profile)
            for g in (fg(KSTAR, KMODSQ), fg(KSQ, TORS2K), fg(KSQMOD4, Z2)):
                once = normalize(g, profile)
                assert normalize(once, profile) == once


class TestCoefficientFunctors:
    def test_two_torsion_of_units(self):
        assert two_torsion(fg(KSTAR), EU) == fg(Z2)
        assert two_torsion(fg(KSTAR), GEN) == fg(TORS2K)

    def test_tensor_rules(self):
        assert tensor_Z2(fg(KSTAR), GEN) == fg(KMODSQ)
        assert tensor_Z2(fg(ZA), GEN) == fg(Z2)
        assert tensor_Z2(fg(KSQ), GEN) == fg(KSQMOD4)

    def test_two_torsion_of_squares_needs_predicate(self):
        assert two_torsion(fg(KSQ), QC) == fg(Z2)
        assert two_torsion(fg(KSQ), EU) == ZERO_FG
        with pytest.raises(FormalRuleError):
            two_torsion(fg(KSQ), GEN)

    def test_opaque_atoms_have_no_rules(self):
        with pytest.raises(FormalRuleError):
            tensor_Z2(fg(Et(2, 2)), GEN)

    def test_universal_coeff(self):
        assert universal_coeff(fg(Z2), fg(KMODSQ), GEN) == fg(Z2, KMODSQ)
        assert universal_coeff(fg(KSTAR), fg(Z2), EU) == fg(Z2, Z2)
        assert universal_coeff(ZERO_FG, ZERO_FG, GEN) == ZERO_FG


class TestNieDecomposition:
    def test_first_diagonal(self):
        assert nie_decompose(0, 1, 0, 0) == fg(Z2)
        assert nie_decompose(-1, 1, 0, 0) == fg(KSTAR)
        assert nie_decompose(5, 1, 0, 0) == ZERO_FG

    def test_mod2_first_diagonal(self):
        assert nie_decompose(0, 1, 0, 2) == fg(Z2)
        assert nie_decompose(-1, 1, 0, 2) == fg(Z2, KMODSQ)
        assert nie_decompose(-2, 1, 0, 2) == fg(Z2)

    def test_second_diagonal_integral(self):
        # direct summation of the decomposition: the only surviving layer is
        # the mod-2 piece in weight 0; the integral tail sits above its weight
        assert nie_decompose(0, 2, 0, 0) == fg(Z2)

    def test_symbolic_fallback(self):
        g = nie_decompose(0, 2, 1, 2)
        assert any(a.kind == "Et" for a in g.atoms)

    def test_guards(self):
        with pytest.raises(ValueError):
            nie_decompose(0, -1, 0, 0)
        assert motivic_cohomology(2, 1, 2) == ZERO_FG
        assert motivic_cohomology(3, 2, 0) == ZERO_FG


class TestSolveWindow:
    def test_zero_flanks(self):
        w = LesWindow.build([("0", ZERO_FG), (), ("X", None), (), ("0", ZERO_FG)])
        sol = solve_window(w, GEN)
        assert sol.ok and sol.values["X"] == ZERO_FG

    def test_multiplication_by_two_on_units(self):
        w = LesWindow.build([
            ("0", ZERO_FG), (), ("X", None), (),
            ("U1", fg(KSTAR)), ("mult2:Kstar",),
            ("U2", fg(KSTAR)), (), ("Y", None), (), ("0", ZERO_FG)])
        sol = solve_window(w, GEN)
        assert sol.ok
        assert sol.values["X"] == fg(TORS2K)
        assert sol.values["Y"] == fg(KMODSQ)
        sol_eu = solve_window(w, EU)
        assert sol_eu.values["X"] == fg(Z2)
        assert sol_eu.values["Y"] == fg(Z2)

    def test_multiplication_by_two_on_integers(self):
        w = LesWindow.build([
            ("0", ZERO_FG), (), ("X", None), (),
            ("A", fg(ZA)), ("mult2:Z",),
            ("B", fg(ZA)), (), ("Y", None), (), ("0", ZERO_FG)])
        sol = solve_window(w, GEN)
        assert sol.ok
        assert sol.values["X"] == ZERO_FG
        assert sol.values["Y"] == fg(Z2)

    def test_unknowns_stay_unknown(self):
        w = LesWindow.build([("A", fg(ZA)), (), ("X", None), (), ("B", fg(ZA))])
        sol = solve_window(w, GEN)
        assert "X" in sol.unresolved and sol.ok

    def test_contradiction_reported(self):
        w = LesWindow.build([("0", ZERO_FG), (), ("X", fg(Z2)), (), ("0", ZERO_FG)])
        sol = solve_window(w, GEN)
        assert not sol.ok
        assert any("X" in c for c in sol.contradictions)

    def test_mult2_tag_checks_endpoints(self):
        w = LesWindow.build([("A", fg(Z2)), ("mult2:Kstar",), ("B", fg(KSTAR))])
        sol = solve_window(w, GEN)
        assert not sol.ok


def column(table, p, lo=-12, hi=14):
    return {a: table.entry(a, p).group for a in range(lo, hi)
            if table.entry(a, p).group is not None and not table.entry(a, p).group.is_zero()}


class TestDerivations:
    def test_weight1_positive_euclidean_row(self):
        pos = derive_weight1(EU, 4)["positive"]
        assert column(pos, 2) == {-1: fg(KSTAR), 0: fg(Z2), 1: fg(Z2)}
        assert column(pos, 3) == {-2: fg(Z2), -1: fg(Z2), 0: fg(Z2), 1: fg(Z2)}

    def test_weight1_negative_formally_real_row(self):
        neg = derive_weight1(FR, 5)["negative"]
        assert column(neg, -3) == {3: fg(Z2), 4: fg(KMODSQ)}
        assert column(neg, -4) == {3: fg(Z2), 4: fg(KMODSQ), 5: fg(KSTAR)}

    def test_weight_sigma_negative_quadratically_closed(self):
        neg = derive_weight_sigma(QC, 4)["negative"]
        assert column(neg, -3) == {3: fg(Z2)}
        assert column(neg, -4) == {3: fg(Z2), 5: fg(KSTAR)}
        # under a quadratically closed field the square classes vanish
        assert neg.entry(4, -3).group == ZERO_FG

    def test_weight_sigma_positive_base(self):
        pos = derive_weight_sigma(GEN, 2)["positive"]
        assert column(pos, 2) == {-1: fg(KSTAR), 0: fg(Z2)}
        assert column(pos, 0) == {1: fg(KSQ)}

    def test_positive_cone_needs_admissible_profile(self):
        tables = derive_weight1(FR, 4)
        assert tables["positive"].derived_shifts() == [0, 1]
        assert any("A-alpha" in note for note in tables["positive"].notes)
        # the negative cone is still fully derived
        assert min(tables["negative"].derived_shifts()) == -4

    def test_trails_are_complete_and_registered(self):
        known = set(AXIOMS) | set(SEEDS)
        for profile, deriver in ((EU, derive_weight1), (QC, derive_weight1),
                                 (FR, derive_weight1), (EU, derive_weight_sigma)):
            tables = deriver(profile, 6)
            for cone in tables.values():
                for p, col in cone.columns.items():
                    for a, entry in col.items():
                        assert entry.trail, (a, p)
                        assert set(entry.trail) <= known
                        # cited axioms must admit the active profile
                        for label in entry.trail:
                            if label in AXIOMS:
                                assert AXIOMS[label].admits(profile), (a, p, label)

    def test_mod2_matches_universal_coefficients(self):
        integral = derive_weight1(EU, 5)["positive"]
        mod2 = derive_weight1(EU, 5, coeff=2)["positive"]
        for p in range(0, 5):
            for a in range(-7, 8):
                expect = universal_coeff(integral.entry(a, p).group,
                                         integral.entry(a + 1, p).group, EU)
                assert mod2.entry(a, p).group == expect


class TestConditional:
    def test_resolution(self):
        cond = ConditionalGroup(fg(Z2), ZERO_FG)
        assert cond.resolve(QC) == fg(Z2)
        assert cond.resolve(EU) == ZERO_FG
        assert cond.resolve(GEN) is cond
        assert "if -1 is a square" in cond.render()

    def test_profile_aliases(self):
        assert get_profile("qclosed") is QC
        assert get_profile("freal") is FR
        with pytest.raises(ValueError):
            get_profile("imaginary")
