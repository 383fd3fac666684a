import pytest

from stabpurify.codes import (
    BUILTIN_CODES,
    CodeClass,
    StabilizerCode,
    build_syndrome_table,
    builtin,
    classify_code,
    correctable_weight,
    distance,
    format_code,
    is_css,
    is_css_h,
    parse_code,
    syndrome,
    syndrome_bits,
)
from stabpurify.errors import BudgetExceeded, DimensionError, InvalidCodeError, ParseError
from stabpurify.pauli import PauliProduct, commutes, paulis_of_weight
from stabpurify.stabilizer import contains

P = PauliProduct.from_string


def oracle_distance(code):
    """Smallest weight of an operator commuting with all checks but outside the check group."""
    n = code.num_physical
    for w in range(1, n + 1):
        for e in paulis_of_weight(n, w):
            if all(commutes(e, g) for g in code.generators) and contains(code.checks, e) is None:
                return w
    return None


@pytest.mark.parametrize("name, d", [("C4", 2), ("C5", 3), ("C6", 2), ("C7", 3)])
def test_distances(name, d):
    code = builtin(name)
    assert distance(code) == d
    assert oracle_distance(code) == d
    assert correctable_weight(code) == (d - 1) // 2


@pytest.mark.parametrize(
    "name, css, css_h, label",
    [
        ("C4", True, False, "CSS"),
        ("C5", False, False, "STABILIZER (non-CSS)"),
        ("C6", True, True, "CSS-H"),
        ("C7", True, True, "CSS-H"),
    ],
)
def test_classes(name, css, css_h, label):
    code = builtin(name)
    assert is_css(code) is css
    assert is_css_h(code) is css_h
    assert str(classify_code(code)) == label
    assert classify_code(code) is CodeClass(label)


@pytest.mark.parametrize("name, n, k", [("C4", 4, 2), ("C5", 5, 1), ("C6", 6, 2), ("C7", 7, 1)])
def test_parameters(name, n, k):
    code = builtin(name)
    assert (code.num_physical, code.num_logical) == (n, k)


def test_c7_weight_one_table():
    table = build_syndrome_table(builtin("C7"), 1)
    nonzero = [s for s in table.entries if s]
    assert len(nonzero) == 21
    assert table.fully_correcting


def test_c5_weight_one_table_is_perfect():
    table = build_syndrome_table(builtin("C5"), 1)
    assert len(table.entries) == 16
    assert table.fully_correcting


@pytest.mark.parametrize("name, detect", [("C4", 3), ("C6", 9)])
def test_detecting_codes_flag_collisions(name, detect):
    table = build_syndrome_table(builtin(name), 1)
    assert len(table.detect_only_syndromes()) == detect
    assert not table.fully_correcting
    assert all(table.decode(s) is None for s in table.detect_only_syndromes())
    assert table.decode(0) is not None


def test_table_corrections_are_consistent():
    code = builtin("C5")
    table = build_syndrome_table(code, 1)
    for e in paulis_of_weight(5, 1):
        corr = table.decode(syndrome_bits(code, e))
        assert code.logical_action(e * corr) == (0, 0)
        assert syndrome_bits(code, e * corr) == 0


def test_syndrome_tuple_and_dimension():
    code = builtin("C5")
    assert syndrome(code, P("ZIIII")) == (1, 0, 1, 0)
    with pytest.raises(DimensionError):
        syndrome_bits(code, P("ZZ"))


def test_logical_y_convention():
    code = builtin("C7")
    y = code.logical_op(0, "Y")
    assert y.is_hermitian
    assert code.logical_action(y) == (1, 1)


def test_invalid_codes():
    with pytest.raises(InvalidCodeError):
        StabilizerCode(["XX"], ["ZI"], ["XI"])  # logical anticommutes with check
    with pytest.raises(InvalidCodeError):
        StabilizerCode(["ZZ"], ["XX"], ["ZZ"])  # dependent
    with pytest.raises(InvalidCodeError):
        StabilizerCode(["ZZ"], ["XX", "XI"], ["ZI"])


def test_distance_budget():
    with pytest.raises(BudgetExceeded):
        distance(builtin("C7"), budget=5)


def test_unknown_builtin():
    with pytest.raises(KeyError):
        builtin("C9")


@pytest.mark.parametrize("name", sorted(BUILTIN_CODES))
def test_format_parse_roundtrip(name):
    code = builtin(name)
    back = parse_code(format_code(code))
    assert back.checks == code.checks
    assert back.logical_x == code.logical_x and back.logical_z == code.logical_z
    assert back.name == name


def test_parse_code_errors():
    with pytest.raises(ParseError) as info:
        parse_code("qubits: 2\ngen: XX\ngen: ZI\nlogical_x: XI\nlogical_z: ZZ\n")
    assert info.value.line == 3
    with pytest.raises(ParseError):
        parse_code("gen: XX\n")
    with pytest.raises(ParseError):
        parse_code("qubits: 2\ngen: XX\nlogical_x: XI\nlogical_z: ZI\n")
