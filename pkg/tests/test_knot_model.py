import pytest

from mtfloer.closed_form import theorem_answer
from mtfloer.errors import BadGenus, BadParams, GateFailure, UnknownTable, ZeroTwist
from mtfloer.graded import GradedGroup
from mtfloer.homology import FreeComplex
from mtfloer.knot_model import (
    CIRCLES,
    SURFACE,
    FilteredGroup,
    PageGenerator,
    RegionSpec,
    build_e1_region,
    build_e2_symbolic,
    build_hfk,
    build_x_complex,
    centered_degree,
    collapse_hfk,
    filtration,
    hf_hat_M,
    hfk_M,
    hfplus_M,
    hfplus_pretzel_surgery,
    lambda_filtered,
    model_grading,
    oracle_hfplus,
    reference_tables,
    run_d1,
    run_d2,
)

G = GradedGroup.free


# -- parameters and gradings ---------------------------------------------------


def test_region_spec_validation():
    with pytest.raises(BadGenus):
        RegionSpec(1, 1, 1)
    with pytest.raises(ZeroTwist):
        RegionSpec(2, 0, 1)
    with pytest.raises(BadParams):
        RegionSpec(2, 1, 0)
    with pytest.raises(BadParams):
        RegionSpec(2, 1, 2)


def test_region_spec_properties():
    spec = RegionSpec(4, -3, 2)
    assert spec.d == 1
    assert spec.eps_n == -1
    assert spec.abs_n == 3
    assert spec.active_half == "E+"
    assert RegionSpec(4, 3, 2).active_half == "E-"
    assert RegionSpec(4, 3, 2).eps_n == 0


def test_generator_gradings():
    spec = RegionSpec(3, 2, 1)
    top = PageGenerator(SURFACE, tuple(range(6)), 2)
    assert centered_degree(spec, top) == 3
    assert filtration(spec, top) == 1
    assert model_grading(spec, top) == -1
    circle = PageGenerator(CIRCLES, (2, 3, 4, 5), 1, circle=2, eps=1)
    assert centered_degree(spec, circle) == 2
    assert filtration(spec, circle) == 1
    assert model_grading(spec, circle) == 1
    left = RegionSpec(3, -2, 1)
    assert model_grading(left, circle) == 0


def test_generator_json():
    surf = PageGenerator(SURFACE, (0, 3), 2)
    assert surf.to_json_dict() == {"tag": "surface", "monomial": ["a1", "b2"], "p": 2}
    circ = PageGenerator(CIRCLES, (2,), 1, circle=3, eps=1)
    assert circ.to_json_dict() == {
        "tag": "circles",
        "monomial": ["a2"],
        "p": 1,
        "circle": 3,
        "eps": 1,
    }


# -- page one -------------------------------------------------------------------


def test_smallest_region_is_one_generator():
    page1 = build_e1_region(RegionSpec(2, 1, 1))
    assert page1.total_size() == 1
    assert page1.degrees() == [0]
    assert not page1.differentials


def test_region_size_at_g3():
    page1 = build_e1_region(RegionSpec(3, 2, 1))
    assert page1.total_size() == 12
    assert {d: page1.size(d) for d in page1.degrees()} == {-1: 1, 0: 8, 1: 3}


def test_region_rejects_bad_circle_labels():
    spec = RegionSpec(3, 2, 1)
    with pytest.raises(BadParams):
        build_e1_region(spec, circle_labels=[1, 1])
    with pytest.raises(BadParams):
        build_e1_region(spec, circle_labels=[1])


# -- page two -------------------------------------------------------------------


def test_e2_shape_at_g3():
    e2 = build_e2_symbolic(RegionSpec(3, 2, 1))
    assert e2.fixed == G({3: 2, 2: 6})
    assert len(e2.active) == 2
    assert not e2.d2_complex.differentials


def test_e2_single_twist_has_no_active_part():
    e2 = build_e2_symbolic(RegionSpec(3, 1, 1))
    assert e2.fixed == G({3: 2, 2: 6})
    assert e2.active == ()


def test_e2_arrows_appear_at_g4():
    e2 = build_e2_symbolic(RegionSpec(4, 2, 1))
    assert len(e2.active) == 16
    arrows = sum(
        sum(1 for x in row if x)
        for mat in e2.d2_complex.differentials.values()
        for row in mat.data
    )
    assert arrows == 1
    assert e2.d2_complex.homology().total_rank() == 14


def test_corrupt_hook_drops_arrows():
    e2 = build_e2_symbolic(RegionSpec(4, 2, 1), corrupt_d2=True)
    assert not e2.d2_complex.differentials
    assert e2.d2_complex.homology().total_rank() == 16


# -- the gate and the pipeline -----------------------------------------------------


def test_run_d1_reports_in_x_convention():
    spec = RegionSpec(2, 1, 1)
    result = run_d1(spec, build_e1_region(spec))
    assert result.group == G({2: 1})
    assert (result.pipeline, result.page, result.gate) == ("oracle", "E2", "passed")


def test_run_d1_gate_rejects_wrong_homology():
    spec = RegionSpec(2, 1, 1)
    with pytest.raises(GateFailure):
        run_d1(spec, FreeComplex({0: ["x", "y"]}))


def test_run_d2_without_active_part_returns_fixed():
    spec = RegionSpec(3, 1, 1)
    e2 = build_e2_symbolic(spec)
    result = run_d2(spec, e2)
    assert result.group == e2.fixed
    assert result.page == "final"


def test_oracle_frozen_values():
    assert oracle_hfplus(2, 1, 1).group == G({2: 1})
    assert oracle_hfplus(3, 2, 1).group == G({3: 3, 2: 7})
    assert oracle_hfplus(3, -2, 1).group == G({2: 7, 1: 3})


def test_oracle_conjugation_symmetry():
    plus = oracle_hfplus(3, 2, 1)
    minus = oracle_hfplus(3, 2, -1)
    assert plus.group == minus.group
    assert minus.k == -1


def test_oracle_parameter_errors():
    with pytest.raises(BadParams):
        oracle_hfplus(3, 2, 0)
    with pytest.raises(BadParams):
        oracle_hfplus(3, 2, 3)
    with pytest.raises(ZeroTwist):
        oracle_hfplus(3, 0, 1)


def test_oracle_invariant_under_conventions():
    base = oracle_hfplus(3, 2, 1).group
    assert oracle_hfplus(3, 2, 1, pd_sign=-1).group == base
    assert oracle_hfplus(3, 2, 1, circle_labels=[7, 3]).group == base


def test_oracle_result_json():
    out = oracle_hfplus(2, 1, 1).to_json_dict()
    assert out["degrees"] == [{"degree": 2, "rank": 1, "torsion": []}]
    assert out["pipeline"] == "oracle"
    assert out["page"] == "final"
    assert out["gate"] == "passed"
    assert (out["g"], out["n"], out["k"]) == (2, 1, 1)
    assert out["grading_convention"] == "X"


def test_corrupt_hook_is_detectable():
    broken = oracle_hfplus(4, 2, 1, corrupt_d2=True).group
    honest = oracle_hfplus(4, 2, 1).group
    closed = theorem_answer(4, 2, 1)
    assert honest == closed == G({4: 3, 3: 20, 2: 35, 1: 3})
    assert broken == G({4: 3, 3: 21, 2: 36, 1: 3})
    assert broken != closed


# -- the tower complex ----------------------------------------------------------------


def test_x_complex_homology_frozen_values():
    assert build_x_complex(2, 1).homology() == G({2: 1, 1: 3})
    assert build_x_complex(2, 1, left=True).homology() == G({1: 3, 0: 1})
    assert build_x_complex(3, 1).homology() == G({3: 1, 2: 5})
    assert build_x_complex(3, 1, left=True).homology() == G({2: 5, 1: 1})


def test_x_complex_degenerate_truncation():
    cx = build_x_complex(2, 0)
    assert cx.homology() == G({2: 1})
    with pytest.raises(BadGenus):
        build_x_complex(1, 0)


def test_x_complex_pd_sign_does_not_change_homology():
    assert (
        build_x_complex(3, 2, pd_sign=-1).homology()
        == build_x_complex(3, 2).homology()
    )


# -- filtered tables --------------------------------------------------------------------


def test_filtered_group_validation():
    with pytest.raises(ValueError):
        FilteredGroup(((1, G({0: 1})), (0, G({0: 1}))))
    with pytest.raises(ValueError):
        FilteredGroup(((0, GradedGroup.zero()),))
    assert FilteredGroup.of({0: GradedGroup.zero()}) == FilteredGroup()


def test_filtered_group_accessors():
    table = FilteredGroup.of({1: G({1: 1}), -1: G({-1: 2})})
    assert table.filtrations() == (-1, 1)
    assert table.level(1) == G({1: 1})
    assert table.level(5).is_zero()
    assert table.flatten() == G({-1: 2, 1: 1})
    assert table.total_rank() == 3


def test_filtered_group_json():
    table = FilteredGroup.of({1: G({0: 1})})
    assert table.to_json_dict() == {
        "filtration": [
            {"j": 1, "degrees": [{"degree": 0, "rank": 1, "torsion": []}]}
        ]
    }


def test_filtered_tensor_adds_filtrations():
    a = FilteredGroup.of({0: G({0: 1}), 1: G({1: 1})})
    b = FilteredGroup.of({2: G({0: 2})})
    assert a.tensor(b) == FilteredGroup.of({2: G({0: 2}), 3: G({1: 2})})


def test_hfk_table_small_twist():
    table = hfk_M(1)
    assert table.filtrations() == (-1, 0, 1)
    assert table.level(1) == G({1: 1})
    assert table.level(0) == G({0: 3, 1: 1})
    assert table.level(-1) == G({-1: 1})


def test_hfk_table_twist_two():
    table = hfk_M(2)
    assert table.level(1) == G({1: 1})
    assert table.level(0) == G({0: 4, 1: 2})
    assert table.level(-1) == G({-1: 1})
    assert table.total_rank() == 8


def test_hfk_table_left_twist():
    table = hfk_M(-1)
    assert table.level(0) == G({-1: 1, 0: 3})
    assert table.level(1) == G({1: 1})


def test_hfk_kunneth_factorization():
    for g in (2, 3):
        for n in (1, -2, 3):
            product = hfk_M(n).tensor(lambda_filtered(g - 1))
            assert build_hfk(g, n) == product, (g, n)


def test_lambda_filtered_trivial_genus():
    assert lambda_filtered(0) == FilteredGroup.of({0: G({0: 1})})
    with pytest.raises(BadGenus):
        lambda_filtered(-1)


def test_full_hfk_total_rank():
    assert build_hfk(2, 1).total_rank() == 24
    assert build_hfk(2, -1).total_rank() == 24
    assert build_hfk(3, 2).total_rank() == (4 + 2 * 2) * 2**4


def test_zero_twist_rejected_everywhere():
    for fn in (hfk_M, collapse_hfk, hf_hat_M):
        with pytest.raises(ZeroTwist):
            fn(0)
    with pytest.raises(ZeroTwist):
        build_hfk(2, 0)
    with pytest.raises(BadGenus):
        build_hfk(1, 1)


def test_collapse_matches_hat_table():
    for n in (1, 2, 3, -1, -2, -3):
        assert collapse_hfk(n) == hf_hat_M(n), n


def test_hat_table_values():
    assert hf_hat_M(3) == G({1: 4, 0: 4})
    assert hf_hat_M(-3) == G({0: 4, -1: 4})


def test_tower_tables():
    assert hfplus_pretzel_surgery(2, 3) == G({0: 2, 1: 1, 2: 1, 3: 1})
    assert hfplus_pretzel_surgery(1, 0) == G({0: 1})
    assert hfplus_M(2, 2) == G({0: 3, 1: 2, 2: 2})
    with pytest.raises(BadParams):
        hfplus_pretzel_surgery(0, 3)
    with pytest.raises(BadParams):
        hfplus_M(2, -1)


def test_reference_table_dispatch():
    assert reference_tables("hfk_M1", 1) == hfk_M(1)
    assert reference_tables("hfk_Mn", 4) == hfk_M(4)
    assert reference_tables("hf_hat_Mn", -2) == hf_hat_M(-2)
    assert reference_tables("hfplus_Z", 2, top=3) == hfplus_pretzel_surgery(2, 3)
    assert reference_tables("hfplus_Mn", 2, top=3) == hfplus_M(2, 3)


def test_reference_table_errors():
    with pytest.raises(BadParams):
        reference_tables("hfk_M1", 2)
    with pytest.raises(BadParams):
        reference_tables("hfplus_Z", 2)
    with pytest.raises(UnknownTable):
        reference_tables("nonsense", 1)
