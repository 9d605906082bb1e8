"""Tests for bulk pressure extraction and the stabilization gate."""

import asyncio
from fractions import Fraction

import pytest

from mdlat.errors import LatticeSizeError, StabilizationGateError, UsageError
from mdlat.lattice import build_cylinder, build_torus, lattice_spec
from mdlat.matchcount import count_frontier_dp
from mdlat.models.expansion_models import Strategy
from mdlat.models.lattice_models import Geometry, LatticeKind
from mdlat.pressure import log_partition, pressure_from_counts
from mdlat.strategies import (
    CylinderDifferenceStrategy,
    TorusStabilizationStrategy,
    default_strategy,
    get_strategy,
)
from mdlat.strategies.base_strategy import gate_size

F2 = {
    LatticeKind.square: Fraction(-7),
    LatticeKind.triangular: Fraction(-33, 2),
    LatticeKind.hexagonal: Fraction(-15, 4),
    LatticeKind.chain: Fraction(-3, 2),
}


def run(strategy, kind, order, size=None):
    return asyncio.run(strategy.run(lattice_spec(kind), order, size))


class TestPressureFromCounts:
    """Test suite for combining count tables into a pressure series."""

    @pytest.mark.parametrize("kind", list(F2))
    def test_first_two_coefficients_on_tori(self, kind):
        """f_1 = q/2 and f_2 = -q/4 - q(q-1)/2 from two tori."""
        spec = lattice_spec(kind)
        if kind == LatticeKind.chain:
            graphs = [build_torus(spec, 6), build_torus(spec, 7)]
        elif kind == LatticeKind.hexagonal:
            graphs = [build_torus(spec, 4, 4), build_torus(spec, 6, 6)]
        else:
            graphs = [build_torus(spec, 4, 4), build_torus(spec, 5, 5)]
        tables = [count_frontier_dp(g, 2) for g in graphs]
        pressure = pressure_from_counts(spec, tables, 2, Strategy.torus)
        q = spec.coordination
        assert pressure.coeffs == (Fraction(q, 2), F2[kind])
        assert F2[kind] == Fraction(-q, 4) - Fraction(q * (q - 1), 2)

    def test_cylinder_difference(self):
        """Three consecutive cylinder lengths give the same f_1, f_2."""
        spec = lattice_spec(LatticeKind.square)
        tables = [count_frontier_dp(build_cylinder(spec, 4, m), 2) for m in (4, 5, 6)]
        pressure = pressure_from_counts(spec, tables, 2, Strategy.cylinder)
        assert pressure.coeffs == (2, -7)
        assert pressure.sizes == ((4, 4), (4, 5), (4, 6))

    def test_cylinder_needs_three_consecutive_lengths(self):
        """Non-consecutive lengths are a usage error."""
        spec = lattice_spec(LatticeKind.square)
        tables = [count_frontier_dp(build_cylinder(spec, 4, m), 2) for m in (4, 5, 7)]
        with pytest.raises(UsageError):
            pressure_from_counts(spec, tables, 2, Strategy.cylinder)
        with pytest.raises(UsageError):
            pressure_from_counts(spec, tables[:2], 2, Strategy.cylinder)

    def test_tiny_tori_fail_the_gate(self):
        """3x3 against 4x4 at K=4 disagree and the gate reports which coefficients."""
        spec = lattice_spec(LatticeKind.square)
        tables = [count_frontier_dp(build_torus(spec, n, n), 4) for n in (3, 4)]
        with pytest.raises(StabilizationGateError) as info:
            pressure_from_counts(spec, tables, 4, Strategy.torus)
        assert info.value.exit_code == 2
        assert info.value.differences
        assert all(k >= 3 for k, _, _ in info.value.differences)
        assert "sizes too small for order 4" in str(info.value)

    def test_log_partition_requires_enough_order(self):
        """A table of order 2 cannot feed an order 3 series."""
        table = count_frontier_dp(build_torus(lattice_spec(LatticeKind.square), 3, 3), 2)
        with pytest.raises(UsageError):
            log_partition(table, 3)

    def test_json_export(self):
        """Pressure series export rationals as strings."""
        spec = lattice_spec(LatticeKind.hexagonal)
        tables = [count_frontier_dp(build_cylinder(spec, 4, m), 2) for m in (4, 5, 6)]
        wire = pressure_from_counts(spec, tables, 2, Strategy.cylinder).to_wire()
        assert wire["f"] == ["3/2", "-15/4"]
        assert wire["K"] == 2
        assert wire["strategy"] == "cylinder"


class TestStrategies:
    """Test suite for automatic size selection and strategy equivalence."""

    def test_defaults(self):
        """Cylinders for triangular/hexagonal, tori for square/chain."""
        assert default_strategy(LatticeKind.square) == Strategy.torus
        assert default_strategy(LatticeKind.chain) == Strategy.torus
        assert default_strategy(LatticeKind.triangular) == Strategy.cylinder
        assert default_strategy(LatticeKind.hexagonal) == Strategy.cylinder
        assert isinstance(get_strategy(Strategy.cylinder), CylinderDifferenceStrategy)

    def test_gate_size(self):
        """K+2, rounded up to even on the hexagonal lattice."""
        assert gate_size(lattice_spec(LatticeKind.square), 5) == 7
        assert gate_size(lattice_spec(LatticeKind.hexagonal), 5) == 8
        assert gate_size(lattice_spec(LatticeKind.hexagonal), 4) == 6

    def test_gate_instances(self):
        """Torus pairs step by one (two for hexagonal); cylinders use three lengths."""
        torus = TorusStabilizationStrategy()
        hexagonal = lattice_spec(LatticeKind.hexagonal)
        assert torus.gate_instances(lattice_spec(LatticeKind.square), 4) == [
            (Geometry.torus, (6, 6)),
            (Geometry.torus, (7, 7)),
        ]
        assert torus.gate_instances(hexagonal, 4) == [
            (Geometry.torus, (6, 6)),
            (Geometry.torus, (8, 8)),
        ]
        cylinder = CylinderDifferenceStrategy()
        assert cylinder.gate_instances(lattice_spec(LatticeKind.chain), 8) == [
            (Geometry.cylinder, (1, 10)),
            (Geometry.cylinder, (1, 11)),
            (Geometry.cylinder, (1, 12)),
        ]

    @pytest.mark.parametrize(
        "kind",
        [
            LatticeKind.square,
            LatticeKind.triangular,
            LatticeKind.chain,
            pytest.param(LatticeKind.hexagonal, marks=pytest.mark.slow),
        ],
    )
    def test_torus_and_cylinder_agree(self, kind):
        """Both strategies produce identical pressure coefficients at K=4."""
        torus = run(TorusStabilizationStrategy(), kind, 4)
        cylinder = run(CylinderDifferenceStrategy(), kind, 4)
        assert torus.coeffs == cylinder.coeffs
        assert torus.coeffs[1] == F2[kind]

    @pytest.mark.parametrize(
        "kind,order",
        [
            (LatticeKind.square, 4),
            (LatticeKind.triangular, 4),
            (LatticeKind.hexagonal, 4),
            pytest.param(LatticeKind.square, 7, marks=pytest.mark.slow),
            pytest.param(LatticeKind.triangular, 6, marks=pytest.mark.slow),
            pytest.param(LatticeKind.hexagonal, 7, marks=pytest.mark.slow),
        ],
    )
    def test_gate_is_stable_one_size_up(self, kind, order):
        """Gate sizes and gate-plus-one sizes give the same coefficients."""
        spec = lattice_spec(kind)
        base = gate_size(spec, order)
        step = 2 if kind == LatticeKind.hexagonal else 1
        strategy = CylinderDifferenceStrategy()
        at_gate = run(strategy, kind, order)
        larger = run(strategy, kind, order, (base + step, order + 3))
        assert at_gate.coeffs == larger.coeffs

    def test_forced_tiny_torus_fails(self):
        """Forcing 3x3 tori at K=4 surfaces a gate error, never a wrong number."""
        with pytest.raises(StabilizationGateError):
            run(TorusStabilizationStrategy(check_counts=True), LatticeKind.square, 4, (3, 3))

    @pytest.mark.parametrize(
        "kind,order,size",
        [
            (LatticeKind.square, 6, (4, 8)),
            (LatticeKind.triangular, 4, (5, 6)),
            (LatticeKind.hexagonal, 5, (6, 7)),
        ],
    )
    def test_forced_narrow_cylinder_is_rejected(self, kind, order, size):
        """A circumference below the gate size is refused before any counting."""
        strategy = CylinderDifferenceStrategy()
        with pytest.raises(LatticeSizeError, match="circunferencia"):
            strategy.gate_instances(lattice_spec(kind), order, size)
        with pytest.raises(LatticeSizeError) as excinfo:
            run(strategy, kind, order, size)
        assert excinfo.value.lattice == kind.value

    def test_forced_short_cylinder_still_counts(self):
        """A short length only warns; the gate decides on the longitudinal direction."""
        instances = CylinderDifferenceStrategy().gate_instances(
            lattice_spec(LatticeKind.square), 4, (6, 4)
        )
        assert instances == [
            (Geometry.cylinder, (6, 4)),
            (Geometry.cylinder, (6, 5)),
            (Geometry.cylinder, (6, 6)),
        ]

    def test_count_seconds_stay_out_of_exports(self):
        """Per-instance counting time is recorded but never serialized."""
        pressure = run(CylinderDifferenceStrategy(), LatticeKind.square, 3)
        assert pressure.count_seconds > 0
        assert "count_seconds" not in pressure.model_dump()
        assert "count_seconds" not in pressure.to_wire()
