"""Tests for verification reports and curve tables."""

import asyncio
import json
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from unittest.mock import MagicMock, patch

import pytest

from mdlat.config import Settings
from mdlat.errors import StabilizationGateError, UsageError
from mdlat.lattice import lattice_spec
from mdlat.models.expansion_models import Strategy
from mdlat.models.lattice_models import LatticeKind
from mdlat.models.paper_models import PaperSeries
from mdlat.orchestrator.verify_orchestrator import VerifyOrchestrator
from mdlat.paper_library import PaperLibrary
from mdlat.paperdata import paper_b
from mdlat.strategies import CylinderDifferenceStrategy
from mdlat.report import (
    curve_table,
    format_float,
    make_grid,
    render_report_json,
    render_report_text,
    render_table_csv,
    tree_difference_coefficients,
    verify_all,
)

SQUARE = lattice_spec(LatticeKind.square)
HEXAGONAL = lattice_spec(LatticeKind.hexagonal)
CHAIN = lattice_spec(LatticeKind.chain)

FAST_ORDERS = {
    LatticeKind.square: 4,
    LatticeKind.triangular: 4,
    LatticeKind.hexagonal: 5,
}


class TestVerifyAll:
    """Test suite for the verification orchestrator at fast-tier orders."""

    @pytest.fixture
    def executor(self):
        """Thread pool standing in for the process pool."""
        pool = ThreadPoolExecutor(max_workers=4)
        yield pool
        pool.shutdown(wait=True)

    @pytest.fixture
    def orchestrator(self, executor):
        """Orchestrator with default settings and the packaged constants."""
        return VerifyOrchestrator(settings=Settings(), executor=executor)

    def test_fast_orders_pass(self, orchestrator):
        """Low orders of all three lattices match the printed prefixes."""
        report = verify_all(
            orders=FAST_ORDERS, strategy=Strategy.cylinder, orchestrator=orchestrator
        )
        assert report.passed
        assert [e.lattice for e in report.entries] == list(FAST_ORDERS)
        assert report.total_comparisons == 3 + 3 + 4
        assert report.matched_comparisons == report.total_comparisons
        square = report.entries[0]
        assert square.a2 == "-7/16"
        assert square.reference == "paper"
        assert square.sizes == [(6, 6), (6, 7), (6, 8)]

    def test_chain_included(self, orchestrator):
        """The chain is verified against b_k = 1 at order 8."""
        report = verify_all(
            lattices=[LatticeKind.chain], orders={}, orchestrator=orchestrator
        )
        entry = report.entries[0]
        assert entry.order == 8
        assert entry.reference == "tree"
        assert entry.computed_b == ["1"] * 7
        assert report.passed

    def test_order_above_printed(self, orchestrator):
        """Orders deeper than the printed series are refused before counting."""
        with pytest.raises(UsageError):
            verify_all(
                lattices=[LatticeKind.triangular],
                orders={LatticeKind.triangular: 7},
                orchestrator=orchestrator,
            )

    def test_tiny_sizes_fail_with_lattice_context(self, orchestrator):
        """A forced tiny torus surfaces a gate error tagged with the lattice."""
        with pytest.raises(StabilizationGateError) as info:
            verify_all(
                lattices=[LatticeKind.square],
                orders={LatticeKind.square: 4},
                strategy=Strategy.torus,
                size=(3, 3),
                orchestrator=orchestrator,
            )
        assert info.value.lattice == "square"
        assert str(info.value).startswith("[square]")

    def test_mismatch_is_reported(self, executor):
        """A wrong reference coefficient fails the comparison without raising."""
        library = MagicMock(spec=PaperLibrary)
        library.printed_order.return_value = 4
        library.get_series.return_value = PaperSeries(spec=SQUARE, order=4, b=[1, 1, 8])
        orchestrator = VerifyOrchestrator(library=library, settings=Settings(), executor=executor)
        report = verify_all(
            lattices=[LatticeKind.square], strategy=Strategy.cylinder, orchestrator=orchestrator
        )
        assert not report.passed
        assert report.matched_comparisons == 2
        assert [c.equal for c in report.entries[0].comparisons] == [True, True, False]

    def test_json_is_deterministic_without_timings(self, orchestrator):
        """Two runs produce identical JSON; wall times appear only on request."""
        first = render_report_json(
            verify_all(orders=FAST_ORDERS, strategy=Strategy.cylinder, orchestrator=orchestrator)
        )
        second = render_report_json(
            verify_all(orders=FAST_ORDERS, strategy=Strategy.cylinder, orchestrator=orchestrator)
        )
        assert first == second
        assert "wall_time_s" not in first

        timed = verify_all(
            lattices=[LatticeKind.hexagonal],
            orders={LatticeKind.hexagonal: 3},
            record_timings=True,
            orchestrator=orchestrator,
        )
        payload = json.loads(render_report_json(timed))
        assert payload["entries"][0]["wall_time_s"] >= 0

    def test_wall_time_excludes_pool_wait(self, orchestrator):
        """Timings count the lattice's own counting and transform, not time spent queued."""
        pressure = asyncio.run(CylinderDifferenceStrategy().run(SQUARE, 4))
        counted = pressure.model_copy(update={"count_seconds": 5.0})

        async def queued_pressure(*args, **kwargs):
            await asyncio.sleep(0.3)
            return counted

        with patch.object(orchestrator, "compute_pressure", new=queued_pressure):
            report = verify_all(
                lattices=[LatticeKind.square],
                orders={LatticeKind.square: 4},
                record_timings=True,
                orchestrator=orchestrator,
            )
        assert 5.0 <= report.entries[0].wall_time_s < 5.2

    def test_text_rendering(self, orchestrator):
        """The text report lists each comparison and the verdict."""
        report = verify_all(
            lattices=[LatticeKind.square],
            orders={LatticeKind.square: 4},
            strategy=Strategy.cylinder,
            orchestrator=orchestrator,
        )
        text = render_report_text(report)
        assert "b_4 = 7 == 7" in text
        assert text.endswith("3/3 exact matches: PASS\n")

    @pytest.mark.slow
    def test_printed_orders(self, orchestrator):
        """Default run: 16 exact comparisons across the three lattices."""
        report = verify_all(orchestrator=orchestrator)
        assert report.passed
        assert report.total_comparisons == 16
        assert [e.first_deviation for e in report.entries] == [4, 3, 6]


class TestCurveTable:
    """Test suite for lambda(p) curve data."""

    def test_hexagonal_tree_difference(self):
        """Hexagonal minus tree first differs at p^6 with coefficient 1/1458."""
        diffs = tree_difference_coefficients(paper_b(HEXAGONAL))
        assert diffs[:4] == [0, 0, 0, 0]
        assert diffs[4] == Fraction(1, 1458)

    def test_row_at_zero(self):
        """Every column vanishes at p = 0."""
        table = curve_table([SQUARE, HEXAGONAL, CHAIN], [Fraction(0)])
        assert all(v == 0 for v in table.rows[0])

    def test_square_at_full_coverage(self):
        """Square truncation, tree benchmark and their difference at p = 1."""
        table = curve_table([SQUARE], [Fraction(1)])
        row = dict(zip(table.columns, table.rows[0]))
        assert row["square_truncated"] == pytest.approx(0.274563, abs=2e-5)
        assert row["tree_q4"] == pytest.approx(0.261624, abs=2e-5)
        assert row["square_minus_tree"] == pytest.approx(0.012939, abs=2e-5)
        assert row["leading_q4"] == pytest.approx(0.1931472, abs=1e-6)

    def test_columns_follow_fixed_lattice_order(self):
        """Columns are grouped per lattice in square, triangular, hexagonal, chain order."""
        table = curve_table([CHAIN, SQUARE], make_grid(Fraction(0), Fraction(1), 4))
        assert table.columns == [
            "p",
            "leading_q4",
            "square_truncated",
            "tree_q4",
            "square_minus_tree",
            "leading_q2",
            "chain_exact",
            "tree_q2",
            "chain_minus_tree",
        ]
        assert len(table.rows) == 5
        assert table.exact_differences["square"][:2] == ["0", "0"]

    def test_grid(self):
        """Grid points are exact and include both endpoints."""
        grid = make_grid(Fraction(1, 10), Fraction(1, 2), 4)
        assert grid == [Fraction(k, 10) for k in range(1, 6)]

    def test_grid_outside_unit_interval(self):
        """Grids must stay inside [0, 1]."""
        with pytest.raises(UsageError):
            make_grid(Fraction(-1, 10), Fraction(1), 4)
        with pytest.raises(UsageError):
            curve_table([SQUARE], [Fraction(3, 2)])

    def test_csv_is_deterministic(self):
        """CSV output is byte-identical across runs and uses '.' decimals."""
        grid = make_grid(Fraction(0), Fraction(1), 10)
        first = render_table_csv(curve_table([SQUARE, HEXAGONAL], grid))
        second = render_table_csv(curve_table([SQUARE, HEXAGONAL], grid))
        assert first == second
        lines = first.splitlines()
        assert lines[0].startswith("p,leading_q4,square_truncated")
        assert lines[1].split(",")[0] == "0"
        assert lines[-1].split(",")[0] == "1"

    def test_negative_zero_is_normalized(self):
        """-0.0 prints as 0."""
        assert format_float(-0.0) == "0"
        assert format_float(0.1) == "0.1"
