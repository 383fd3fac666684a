import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stabpurify.codes import CodeClass, builtin, classify_code
from stabpurify.errors import DimensionError
from stabpurify.multicopy import (
    CheckPlan,
    IncompatibilityReport,
    MultiCopySetup,
    OperatorArray,
    build_check_plan,
    check_condition_1,
    check_condition_2,
    class_compatibility,
    encoded_operator,
    encoded_state,
    format_plan,
    format_report,
    in_multicopy_stabilizer,
    witness_row,
)
from stabpurify.pauli import PauliProduct
from stabpurify.stabilizer import StabilizerState, StateClass, builtin_state, classify_state, graph_state

from conftest import stabilizer_states

P = PauliProduct.from_string
HEXAGON = graph_state(6, [(0, 4), (4, 2), (2, 3), (3, 1), (1, 5), (5, 0)])

# arrays displayed for Bell pairs purified with the five-qubit code, one string per row
BELL_C5_CHECKS = [
    ["XX", "ZZ", "ZZ", "XX", "II"],
    ["II", "XX", "ZZ", "ZZ", "XX"],
    ["XX", "II", "XX", "ZZ", "ZZ"],
    ["ZZ", "XX", "II", "XX", "ZZ"],
]


def rows_of(a: OperatorArray):
    return [a.row(r).letters() for r in range(a.rows)]


# -- arrays --


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_array_index_map_is_bijective(m, n, data):
    cells = {OperatorArray(m, n, PauliProduct.identity(m * n)).qubit(r, c) for r in range(m) for c in range(n)}
    assert cells == set(range(m * n))
    x = data.draw(st.integers(0, (1 << (m * n)) - 1))
    z = data.draw(st.integers(0, (1 << (m * n)) - 1))
    a = OperatorArray(m, n, PauliProduct(m * n, x, z))
    assert OperatorArray.from_rows([a.row(r) for r in range(m)]).op == a.op
    assert OperatorArray.from_columns([a.column(c) for c in range(n)]).op == a.op


def test_array_layout_is_row_major():
    a = OperatorArray.from_rows(["XZ", "YI"])
    assert a.op == P("XZYI")
    assert a.column(0) == P("XY") and a.column(1) == P("ZI")
    with pytest.raises(IndexError):
        a.qubit(2, 0)
    with pytest.raises(DimensionError):
        OperatorArray(2, 2, P("XXX"))


def test_render_has_headers():
    text = OperatorArray.from_rows(["XZ", "YI"]).render()
    assert text.splitlines()[0].split() == ["+", "A", "B"]
    assert text.splitlines()[2].split() == ["2", "Y", "I"]


# -- membership --


def test_bell_all_xx_rows_in_stabilizer():
    setup = MultiCopySetup(builtin_state("bell"), 4)
    assert in_multicopy_stabilizer(setup, OperatorArray.from_rows(["XX"] * 4))
    assert not in_multicopy_stabilizer(setup, OperatorArray.from_rows(["XX"] * 4, phase=2))
    assert in_multicopy_stabilizer(setup, OperatorArray.from_rows(["YY", "YY", "II", "II"]))
    assert not in_multicopy_stabilizer(setup, OperatorArray.from_rows(["YY", "II", "II", "II"]))


def test_ghz_mixed_rows_not_in_stabilizer():
    setup = MultiCopySetup(builtin_state("ghz3-path"), 5)
    a = OperatorArray.from_rows(["ZZI", "XXI", "III", "XXI", "ZZI"])
    assert not in_multicopy_stabilizer(setup, a)
    assert setup.offending_rows(a) == [1, 3]


def test_identity_array_in_stabilizer():
    setup = MultiCopySetup(builtin_state("triangle"), 3)
    assert in_multicopy_stabilizer(setup, OperatorArray(3, 3, PauliProduct.identity(9)))


def test_membership_dimension_error():
    setup = MultiCopySetup(builtin_state("bell"), 4)
    with pytest.raises(DimensionError):
        in_multicopy_stabilizer(setup, OperatorArray.from_rows(["XX"] * 3))


def test_single_copy_generators():
    setup = MultiCopySetup(builtin_state("ghz3"), 2)
    gens = setup.single_copy_generators()
    assert len(gens) == 6
    assert rows_of(gens[4]) == ["III", "ZZI"]
    assert all(in_multicopy_stabilizer(setup, g) for g in gens)
    assert setup.decomposition(gens[4]) == 1 << 4


# -- plans --


def test_bell_c5_plan():
    plan = build_check_plan(builtin_state("bell"), builtin("C5"))
    assert isinstance(plan, CheckPlan) and plan.ok
    assert [rows_of(c.array) for c in plan.checks] == BELL_C5_CHECKS
    assert [rows_of(e.array) for e in plan.encoded] == [["XX"] * 5, ["ZZ"] * 5]
    assert all(c.expected_outcome == 1 for c in plan.checks)


def test_bell_c4_plan():
    plan = build_check_plan(builtin_state("bell"), builtin("C4"))
    assert plan.ok
    assert [rows_of(c.array) for c in plan.checks] == [["XX"] * 4, ["ZZ"] * 4]
    assert len(plan.encoded) == 4


def test_ghz_path_c5_fails_condition_1():
    rep = build_check_plan(builtin_state("ghz3-path"), builtin("C5"))
    assert isinstance(rep, IncompatibilityReport)
    assert rep.condition == 1
    assert rows_of(rep.witness) == ["ZZI", "III", "III", "III", "III"]
    assert witness_row(rep) == P("XXI")
    assert not check_condition_1(rep.plan.setup, rep.plan)
    assert "XXI" in format_report(rep)


def test_triangle_c4_fails_condition_2():
    rep = build_check_plan(builtin_state("triangle"), builtin("C4"))
    assert isinstance(rep, IncompatibilityReport)
    assert rep.condition == 2
    assert rep.plan.condition_1.passed  # errors are still detected
    assert witness_row(rep) == P("XII")
    assert not check_condition_2(rep.plan.setup, rep.plan)


def test_triangle_c5_has_no_checks():
    rep = build_check_plan(builtin_state("triangle"), builtin("C5"))
    assert isinstance(rep, IncompatibilityReport) and rep.condition == 1
    assert rep.plan.checks == []


def test_triangle_c7_plan():
    plan = build_check_plan(builtin_state("triangle"), builtin("C7"))
    assert plan.ok
    assert len(plan.checks) == 9
    assert [len(plan.checks_for(i)) for i in range(3)] == [3, 3, 3]
    first = plan.checks[0]
    assert rows_of(first.array) == ["XZZ", "III", "XZZ", "III", "XZZ", "III", "XZZ"]
    assert first.column_labels == ("g1", "H(g1)", "H(g1)")


def test_triangle_c6_plan():
    plan = build_check_plan(builtin_state("triangle"), builtin("C6"))
    assert plan.ok and len(plan.checks) == 6


def test_ghz_c4_typed_plan():
    plan = build_check_plan(builtin_state("ghz3"), builtin("C4"))
    assert plan.ok and plan.construction == "typed"
    # X-type masters meet X-type code generators only
    for c in plan.checks:
        g = plan.setup.master.generators[c.masters[0]]
        code_g = plan.code.generators[c.code_index]
        assert (g.z == 0) == (code_g.z == 0)


def test_y_letters_give_logical_signs():
    s = StabilizerState.from_strings(["YY", "ZZ"])
    plan = build_check_plan(s, builtin("C7"))
    assert plan.ok
    assert all(e.logical_sign in (1, -1) for e in plan.encoded)
    assert all(in_multicopy_stabilizer(plan.setup, e.array) for e in plan.encoded)


@pytest.mark.parametrize(
    "state, code",
    [("bell", "C4"), ("bell", "C5"), ("bell", "C7"), ("triangle", "C7"), ("triangle", "C6"), ("ghz3", "C4"), ("ghz4", "C6")],
)
def test_plan_invariants(state, code):
    plan = build_check_plan(builtin_state(state), builtin(code))
    assert plan.ok
    for chk in plan.checks:
        # locality: each column is one party's measurable operator
        assert OperatorArray.from_columns(chk.columns).op.bits == chk.array.op.bits
        for col in chk.columns:
            assert col.is_identity or plan.code.in_check_group(col)
        assert in_multicopy_stabilizer(plan.setup, chk.array)
    for e in plan.encoded:
        assert in_multicopy_stabilizer(plan.setup, e.array)
    again = build_check_plan(builtin_state(state), builtin(code))
    assert [c.array for c in again.checks] == [c.array for c in plan.checks]
    assert format_plan(again) == format_plan(plan)


def test_size_validation():
    with pytest.raises(DimensionError):
        build_check_plan(builtin_state("bell"), builtin("C5"), copies=4)
    with pytest.raises(DimensionError):
        build_check_plan(builtin_state("bell"), builtin("C5"), parties=3)


def test_class_compatibility_matrix():
    S, C = StateClass, CodeClass
    assert class_compatibility(S.CSS_H, C.STABILIZER)
    assert class_compatibility(S.CSS, C.CSS)
    assert not class_compatibility(S.GENERAL, C.CSS)
    assert class_compatibility(S.GENERAL, C.CSS_H)
    assert not class_compatibility(S.CSS, C.STABILIZER)
    assert not class_compatibility(S.UNKNOWN, C.CSS)
    assert class_compatibility("CSS-H", "CSS")


@settings(max_examples=40)
@given(stabilizer_states(min_qubits=2, max_qubits=4), st.sampled_from(["C4", "C5", "C6", "C7"]))
def test_compatible_pairs_get_valid_plans(s, code_name):
    code = builtin(code_name)
    if class_compatibility(classify_state(s), classify_code(code)):
        plan = build_check_plan(s, code, frame="auto")
        assert isinstance(plan, CheckPlan), getattr(plan, "detail", "")
        assert plan.condition_1 and plan.condition_2


# -- encoded states --


def test_bell_c4_encodes_two_bell_pairs():
    code = builtin("C4")
    out = encoded_state(MultiCopySetup(builtin_state("bell"), 4), code)
    assert out == StabilizerState.from_strings(["XXII", "ZZII", "IIXX", "IIZZ"])


def test_ghz_c5_still_ghz():
    code = builtin("C5")
    s = builtin_state("ghz3-path")
    assert encoded_state(MultiCopySetup(s, 5), code) == s


def test_triangle_c4_gives_hexagon():
    out = encoded_state(MultiCopySetup(builtin_state("triangle"), 4), builtin("C4"))
    assert out == HEXAGON
    assert classify_state(out) in (StateClass.CSS, StateClass.CSS_H)


def test_encoded_state_with_outcomes():
    code = builtin("C4")
    setup = MultiCopySetup(builtin_state("bell"), 4)
    flipped = [[-1, 1], [-1, 1]]  # both parties see XXXX = -1: product still +1
    assert encoded_state(setup, code, flipped) == encoded_state(setup, code)
    with pytest.raises(ValueError):
        encoded_state(setup, code, [[-1, 1], [1, 1]])


def test_encoded_operator_matches_plan():
    plan = build_check_plan(builtin_state("bell"), builtin("C5"))
    xx = encoded_operator(plan.code, P("XX"), 2)
    assert xx.op == plan.encoded[0].array.op
