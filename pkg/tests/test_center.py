from collections import Counter

import pytest

from qinv.algebra.scalar import Scalar
from qinv.center.braiding import check_braiding
from qinv.center.crossing import check_crossing
from qinv.center.export import load_center, parse_center, save_center
from qinv.center.simples import check_simples
from qinv.exceptions import CenterError, SpecFormatError
from qinv.seeds import golden
from qinv.services.engine import Engine


def test_toric_code_has_four_simples(toric_engine):
    simples = toric_engine.simples
    assert [j.name for j in simples.all()] == ["Je_0", "Je_1", "Je_2", "Je_3"]
    assert simples.all()[0] is simples.center.unit
    assert all(simples.center.dim(j) == 1 for j in simples.all())


def test_toric_code_twists(toric_engine):
    data = toric_engine.modular
    assert Counter(data.twists) == Counter([Scalar.one(), Scalar.one(), Scalar.one(), -Scalar.one()])
    assert data.delta == 2
    assert data.delta_plus == data.delta_minus


def test_toric_code_s_matrix(toric_engine):
    s = toric_engine.modular.s
    assert s.shape == (4, 4)
    assert s.transpose() == s
    for i in range(4):
        assert s[0, i] == 1
        for j in range(4):
            assert s[i, j] in (Scalar.one(), -Scalar.one())


def test_fibonacci_double(fib_engine):
    phi = golden()
    data = fib_engine.modular
    assert Counter(data.dims) == Counter([Scalar.one(5), phi, phi, phi * phi])
    assert data.delta == 2 + phi
    zeta = Scalar.zeta(5)
    assert Counter(data.twists) == Counter([Scalar.one(5), Scalar.one(5), zeta**2, zeta**3])


def test_pointed_degrees_have_one_simple(z3w_engine):
    for g in z3w_engine.group.elements:
        assert len(z3w_engine.simples.of_degree(g)) == 1


def test_graded_dimensions_add_up(z4_engine):
    center = z4_engine.simples.center
    target = z4_engine.neutral_dim**2
    for g in z4_engine.group.elements:
        total = sum((center.dim(j) ** 2 for j in z4_engine.simples.of_degree(g)), Scalar.zero(4))
        assert total == target


@pytest.mark.parametrize("engine_name", ["toric_engine", "z4_engine", "z3w_engine"])
def test_center_checks(engine_name, request):
    engine = request.getfixturevalue(engine_name)
    assert check_simples(engine.simples) == ["dimensions", "half-braiding", "fusion closure"]
    assert "balancing" in check_braiding(engine.braiding)


def test_crossing_with_two_witnesses_per_degree(z4_engine):
    crossing = z4_engine.crossing
    assert crossing.witnesses == {"0": [(), ("2",)], "1": [("1",), ("3",)]}
    assert check_crossing(crossing) == ["splitting", "delta cocycle", "monoidal", "phi_2 associativity"]
    passed = check_braiding(z4_engine.braiding)
    assert passed[0] == "ribbon"
    assert "witness independence" in passed


def test_crossed_twists_agree_across_witnesses(z4_engine):
    crossing, braiding = z4_engine.crossing, z4_engine.braiding
    first, second = crossing.witnesses["1"]
    for j in z4_engine.simples.of_degree("1"):
        theta = braiding.twist(j, first)
        assert not theta.is_zero()
        assert crossing.delta(first, second, j) @ theta == braiding.twist(j, second)
    for j in z4_engine.simples.of_degree("0"):
        turned = crossing.delta(("2",), (), j) @ braiding.twist(j, ("2",))
        assert turned == braiding.twist_right(j)


def test_twist_needs_neutral_degree(z2_engine):
    j = z2_engine.simples.of_degree("1")[0]
    with pytest.raises(CenterError):
        z2_engine.braiding.nu(j)


def test_export_round_trip(toric, toric_engine, tmp_path):
    path = save_center(toric_engine.simples, tmp_path / "toric.center.json")
    reloaded = load_center(toric, path)
    assert [j.name for j in reloaded.all()] == [j.name for j in toric_engine.simples.all()]
    again = Engine(toric, center_file=path)
    assert again.modular.twists == toric_engine.modular.twists


def test_export_for_another_category(z3, toric_engine, tmp_path):
    path = save_center(toric_engine.simples, tmp_path / "toric.center.json")
    with pytest.raises(SpecFormatError):
        parse_center(z3, path.read_text(encoding="utf-8"))
