import pytest
from hypothesis import given
from hypothesis import strategies as st

from pegasus_topo.coords import (
    CellCoord,
    CoordinateError,
    Dims,
    QubitCoord,
    from_linear,
    linear_index,
    validate,
)


@st.composite
def dims_and_index(draw):
    d = Dims(draw(st.integers(1, 20)), draw(st.integers(1, 20)), draw(st.sampled_from([1, 3])))
    return d, draw(st.integers(0, d.num_qubits - 1))


@pytest.mark.parametrize("d", [Dims(1, 1, 1), Dims(4, 7, 3), Dims(16, 16, 1)])
def test_origin_and_k_bit(d):
    assert linear_index(QubitCoord(0, 0, 0, 0, 0, 0), d) == 0
    assert linear_index(QubitCoord(0, 0, 0, 0, 0, 1), d) == 1


def test_hand_evaluated_index():
    d = Dims(2, 2, 3)
    # 4*i + 8*(x + X*(y + Y*z)) = 4 + 8*(1 + 2*(1 + 2))
    assert linear_index(QubitCoord(1, 1, 1, 1, 0, 0), d) == 60
    assert from_linear(60, d) == QubitCoord(1, 1, 1, 1, 0, 0)


def test_from_linear_examples():
    d = Dims(3, 4, 3)
    assert from_linear(0, d) == QubitCoord(0, 0, 0, 0, 0, 0)
    assert from_linear(7, d) == QubitCoord(0, 0, 0, 1, 1, 1)
    assert from_linear(d.num_qubits - 1, d) == QubitCoord(2, 3, 2, 1, 1, 1)


def test_exhaustive_round_trip_and_order():
    d = Dims(5, 5, 3)
    coords = [from_linear(n, d) for n in range(d.num_qubits)]
    assert len(coords) == 600
    assert [linear_index(q, d) for q in coords] == list(range(600))
    # strictly monotone in (z, y, x, i, j, k) order
    assert coords == sorted(coords, key=QubitCoord.key)
    assert list(d.qubits()) == coords


@given(dims_and_index())
def test_round_trip_property(case):
    d, idx = case
    q = from_linear(idx, d)
    assert validate(q, d)
    assert linear_index(q, d) == idx


def test_cells_are_contiguous():
    d = Dims(3, 2, 3)
    for cell in d.cells():
        idx = sorted(linear_index(q, d) for q in cell.qubits())
        assert idx == list(range(idx[0], idx[0] + 8))
        assert idx[0] % 8 == 0


def test_validate_examples():
    d = Dims(5, 5, 3)
    assert validate(QubitCoord(0, 0, 2, 0, 0, 0), d)
    assert not validate(QubitCoord(0, 0, 3, 0, 0, 0), d)
    assert not validate(QubitCoord(5, 0, 0, 0, 0, 0), d)
    assert not validate(QubitCoord(0, 0, 0, 2, 0, 0), d)
    assert not validate(QubitCoord(0, -1, 0, 0, 0, 0), d)


def test_linear_index_names_bad_field():
    with pytest.raises(CoordinateError) as err:
        linear_index(QubitCoord(0, 9, 0, 0, 0, 0), Dims(2, 2, 1))
    assert err.value.field == "y"
    assert "y=9" in str(err.value)


@pytest.mark.parametrize("idx", [-1, 96])
def test_from_linear_range(idx):
    with pytest.raises(CoordinateError):
        from_linear(idx, Dims(2, 2, 3))


@pytest.mark.parametrize("args", [(0, 1, 1), (1, 0, 3), (1, 1, 2), (1, 1, 0), (2.0, 1, 1)])
def test_dims_rejects(args):
    with pytest.raises(CoordinateError):
        Dims(*args)


def test_counts():
    d = Dims(4, 3, 3)
    assert d.num_qubits == 8 * 4 * 3 * 3
    assert len(list(d.cells())) == d.num_cells == 36
    assert len(list(CellCoord(1, 2, 0).qubits())) == 8
