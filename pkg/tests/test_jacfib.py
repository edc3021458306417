import pytest

from abfib.jacfib import (
    KUMMER_NOTE,
    MILD_DEGENERATIONS,
    GL3Weight,
    MildDegenerationsSpec,
    SectionSpace,
    W_CANDIDATES,
    admissible_cases,
    borel_weil_dim,
    branch_section_space,
    case_ids,
    classify_jacobian_fibrations,
    normalize_d,
    repeated_root_verdict,
)
from abfib.classifier import IMPOSSIBLE, POSSIBLE
from abfib.leray import DirectImageData, total_coh
from abfib.sheafcalc import Line, chern, coh_line, format_bundle


# oracle: Gelfand-Tsetlin pattern count for GL(3) irreducible dimensions.
# Patterns (a, b, c) with l1 >= a >= l2 >= b >= l3 and a >= c >= b; the
# count is independent of the product formula under test.
def gt_dim(l1, l2, l3):
    total = 0
    for a in range(l2, l1 + 1):
        for b in range(l3, l2 + 1):
            total += a - b + 1
    return total


def h0_line(k):
    # monomial count in degree k
    if k < 0:
        return 0
    return sum(1 for i in range(k + 1) for j in range(k + 1 - i))


def test_borel_weil_matches_gt_patterns():
    for l1 in range(-3, 7):
        for l2 in range(-3, l1 + 1):
            for l3 in range(-3, l2 + 1):
                assert borel_weil_dim(GL3Weight(l1, l2, l3)) == gt_dim(l1, l2, l3)


def test_borel_weil_pinned():
    assert borel_weil_dim(GL3Weight(6, 0, 0)) == 28
    assert borel_weil_dim(GL3Weight(0, 0, 6)) == 28  # sorted internally
    assert borel_weil_dim(GL3Weight(0, 0, 0)) == 1
    assert borel_weil_dim(GL3Weight(1, 1, 0)) == 3  # wedge-square of C^3


def test_borel_weil_symmetric_powers_match_plane_sections():
    for n in range(31):
        assert borel_weil_dim(GL3Weight(n, 0, 0)) == coh_line(n).h0 == h0_line(n)


def test_normalize_d():
    assert normalize_d(-3) == -3
    assert normalize_d(0) == 0
    assert normalize_d(-4) == -4
    for w in W_CANDIDATES:
        assert normalize_d(chern(w).c1) == chern(w).c1


def test_case_ids():
    assert case_ids() == ("O(0) + O(-3)", "O(-1) + O(-2)", "Omega1", "O(-2) + O(-2)")
    with pytest.raises(ValueError):
        branch_section_space("O(7)")


def test_section_space_0_minus3():
    s = branch_section_space("O(0) + O(-3)")
    assert s.degrees == (-6, -3, 0, 3, 6, 9, 12)
    assert s.dims == tuple(h0_line(k) for k in s.degrees)
    assert s.dims == (0, 0, 1, 10, 28, 55, 91)
    assert s.forced_zero == (0, 1)
    assert s.weight is None


def test_section_space_minus1_minus2():
    s = branch_section_space("O(-1) + O(-2)")
    assert s.degrees == (0, 1, 2, 3, 4, 5, 6)
    assert s.dims == (1, 3, 6, 10, 15, 21, 28)
    assert s.dimension == 84
    assert s.forced_zero == ()


def test_section_space_cotangent():
    s = branch_section_space("Omega1")
    assert s.degrees is None
    assert s.weight == GL3Weight(0, 0, 6)
    assert s.dimension == 28
    assert s.forced_zero == ()


def test_section_space_minus2_minus2():
    s = branch_section_space("O(-2) + O(-2)")
    assert s.degrees == (6,) * 7
    assert s.dimension == 7 * 28
    assert s.forced_zero == ()


def test_split_dimensions_have_single_arithmetic_path():
    for case in ("O(0) + O(-3)", "O(-1) + O(-2)", "O(-2) + O(-2)"):
        s = branch_section_space(case)
        assert s.dimension == sum(coh_line(k).h0 for k in s.degrees)


def test_repeated_root_verdicts():
    assert repeated_root_verdict(branch_section_space("O(0) + O(-3)")).outcome == IMPOSSIBLE
    assert repeated_root_verdict(branch_section_space("O(-1) + O(-2)")).outcome == POSSIBLE
    only_s0 = SectionSpace(
        case_id="synthetic",
        description="one vanishing coefficient",
        degrees=(-1, 0, 1, 2, 3, 4, 5),
        weight=None,
        dims=(0, 1, 3, 6, 10, 15, 21),
        dimension=56,
        forced_zero=(0,),
    )
    # a single vanishing coefficient leaves z = 0 a simple root generically
    assert repeated_root_verdict(only_s0).outcome == POSSIBLE


def test_verdicts_carry_mild_degeneration_assumptions():
    v = repeated_root_verdict(branch_section_space("O(0) + O(-3)"))
    assert len(v.assumptions) == 3
    assert all(a.startswith("mild degenerations:") for a in v.assumptions)
    assert v.machine_steps  # the forced-vanishing witness is checked here


def test_mild_degenerations_spec_is_declarative():
    assert MILD_DEGENERATIONS == MildDegenerationsSpec()
    partial = MildDegenerationsSpec(distinct_tangent_cones=False)
    assert len(partial.assumptions()) == 2


def test_classification_table():
    rows = classify_jacobian_fibrations()
    assert [r.case_id for r in rows] == list(case_ids())
    by_id = {r.case_id: r for r in rows}

    ruled_out = by_id["O(0) + O(-3)"]
    assert ruled_out.verdict.outcome == IMPOSSIBLE
    assert not ruled_out.verdict.documented
    assert ruled_out.family_type is None and ruled_out.param_count is None

    excluded = by_id["O(-2) + O(-2)"]
    assert excluded.verdict.outcome == IMPOSSIBLE
    assert excluded.verdict.documented  # rests on the nodal-fibre input
    assert excluded.d == -4
    arithmetic = [s for s in excluded.verdict.steps if s.checked]
    assert arithmetic and "-4" in arithmetic[0].detail

    cy4 = by_id["O(-1) + O(-2)"]
    assert cy4.verdict.outcome == POSSIBLE
    assert cy4.family_type == "Calabi-Yau four-fold"
    assert cy4.param_count == 75 == 84 - 1 - 8
    assert cy4.leray_h == (1, 0, 0, 0, 1)

    ihs = by_id["Omega1"]
    assert ihs.verdict.outcome == POSSIBLE
    assert ihs.family_type == "irreducible holomorphic symplectic four-fold"
    assert ihs.param_count == 19 == 28 - 1 - 8
    assert ihs.leray_h == (1, 0, 1, 0, 1)


def test_admissible_set_is_exactly_two():
    ids = {r.case_id for r in admissible_cases()}
    assert ids == {"O(-1) + O(-2)", "Omega1"}


def test_leray_cross_check_recomputes():
    for r in admissible_cases():
        recomputed = total_coh(DirectImageData(Line(0), r.w, Line(-3)))
        assert r.leray_h == recomputed


def test_normalized_d_equals_chern_c1_on_table():
    for r in classify_jacobian_fibrations():
        assert r.d == chern(r.w).c1


def test_documented_annotations_present():
    by_id = {r.case_id: r for r in classify_jacobian_fibrations()}
    ihs_rules = [s.rule for s in by_id["Omega1"].verdict.steps if not s.checked]
    assert "beauville-mukai" in ihs_rules
    assert "(1,3)" in KUMMER_NOTE


def test_table_is_deterministic():
    assert classify_jacobian_fibrations() == classify_jacobian_fibrations()


def test_stable_under_candidate_formatting():
    for w in W_CANDIDATES:
        assert branch_section_space(format_bundle(w)).case_id == format_bundle(w)
