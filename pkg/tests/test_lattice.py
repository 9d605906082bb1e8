"""Tests for lattice specs and finite instance construction."""

import pytest
from pydantic import ValidationError

from mdlat.errors import LatticeSizeError, UnknownLatticeError
from mdlat.lattice import (
    build_cylinder,
    build_torus,
    lattice_spec,
    parse_edge_list,
    parse_lattice,
    shortest_cycle_length,
)
from mdlat.models.lattice_models import Geometry, LatticeKind, TorusGraph


@pytest.fixture
def square():
    return lattice_spec(LatticeKind.square)


@pytest.fixture
def triangular():
    return lattice_spec(LatticeKind.triangular)


@pytest.fixture
def hexagonal():
    return lattice_spec(LatticeKind.hexagonal)


@pytest.fixture
def chain():
    return lattice_spec(LatticeKind.chain)


class TestLatticeSpecs:
    """Test suite for the lattice registry and name parsing."""

    @pytest.mark.parametrize(
        "kind,q,girth",
        [
            (LatticeKind.square, 4, 4),
            (LatticeKind.triangular, 6, 3),
            (LatticeKind.hexagonal, 3, 6),
            (LatticeKind.chain, 2, None),
        ],
    )
    def test_coordination_and_girth(self, kind, q, girth):
        """Each family carries its coordination number and girth."""
        spec = lattice_spec(kind)
        assert spec.coordination == q
        assert spec.girth == girth

    @pytest.mark.parametrize(
        "name,kind",
        [
            ("rectangular", LatticeKind.square),
            ("tri", LatticeKind.triangular),
            ("Honeycomb", LatticeKind.hexagonal),
            ("1d", LatticeKind.chain),
        ],
    )
    def test_aliases(self, name, kind):
        """Aliases resolve to canonical specs."""
        assert parse_lattice(name).kind == kind

    def test_unknown_lattice(self):
        """Unknown names raise a usage error."""
        with pytest.raises(UnknownLatticeError):
            parse_lattice("kagome")


class TestBuildTorus:
    """Test suite for periodic instances."""

    def test_square_3x3(self, square):
        """Square 3x3 torus: N=9, E=18, 4-regular."""
        g = build_torus(square, 3, 3)
        assert (g.num_vertices, g.num_edges) == (9, 18)
        assert set(g.degrees()) == {4}

    def test_triangular_3x3(self, triangular):
        """Triangular 3x3 torus: N=9, E=27, 6-regular."""
        g = build_torus(triangular, 3, 3)
        assert (g.num_vertices, g.num_edges) == (9, 27)
        assert set(g.degrees()) == {6}

    def test_hexagonal_4x4(self, hexagonal):
        """Hexagonal 4x4 torus: 16 horizontal + 8 vertical edges, 3-regular."""
        g = build_torus(hexagonal, 4, 4)
        assert (g.num_vertices, g.num_edges) == (16, 24)
        assert set(g.degrees()) == {3}
        vertical = [(u, v) for u, v in g.edges if u // 4 != v // 4]
        assert len(vertical) == 8

    @pytest.mark.parametrize(
        "kind,dims",
        [
            (LatticeKind.square, (5, 5)),
            (LatticeKind.triangular, (4, 4)),
            (LatticeKind.hexagonal, (8, 8)),
        ],
    )
    def test_girth_matches_spec(self, kind, dims):
        """Brute-force shortest cycle equals the family girth on large enough tori."""
        spec = lattice_spec(kind)
        assert shortest_cycle_length(build_torus(spec, *dims)) == spec.girth

    def test_chain_is_a_cycle(self, chain):
        """The chain torus is the cycle C_n."""
        g = build_torus(chain, 7)
        assert g.dims == (7, 1)
        assert g.num_edges == 7
        assert set(g.degrees()) == {2}
        assert shortest_cycle_length(g) == 7

    @pytest.mark.parametrize(
        "kind,dims",
        [
            (LatticeKind.square, (2, 3)),
            (LatticeKind.triangular, (3, 2)),
            (LatticeKind.hexagonal, (5, 4)),
            (LatticeKind.hexagonal, (2, 4)),
            (LatticeKind.chain, (2, 1)),
            (LatticeKind.chain, (5, 2)),
        ],
    )
    def test_invalid_sizes(self, kind, dims):
        """Sizes that would break simplicity or the brick-wall parity are rejected."""
        with pytest.raises(LatticeSizeError):
            build_torus(lattice_spec(kind), *dims)

    def test_irregular_torus_is_rejected(self, square):
        """A torus-tagged graph must be q-regular."""
        with pytest.raises(ValidationError):
            TorusGraph(
                spec=square,
                geometry=Geometry.torus,
                dims=(2, 1),
                num_vertices=2,
                edges=((0, 1),),
            )

    def test_loops_are_rejected(self):
        """Self-loops violate the simple-graph invariant."""
        with pytest.raises(ValidationError):
            TorusGraph.from_edge_list(2, [(1, 1)])


class TestBuildCylinder:
    """Test suite for instances with one free boundary."""

    def test_single_ring(self, square):
        """Circumference 4, length 1 is the 4-cycle."""
        g = build_cylinder(square, 4, 1)
        assert g.num_edges == 4

    def test_two_rings(self, square):
        """Circumference 4, length 2: 4 + 4 ring edges plus 4 rungs."""
        g = build_cylinder(square, 4, 2)
        assert g.num_edges == 12
        assert g.geometry == Geometry.cylinder

    def test_hexagonal_boundary_degrees(self, hexagonal):
        """Boundary sites lose their cut vertical edge; interior sites keep degree 3."""
        c, length = 6, 5
        g = build_cylinder(hexagonal, c, length)
        degrees = g.degrees()
        for j in range(length):
            for i in range(c):
                d = degrees[j * c + i]
                if j == 0:
                    assert d == (3 if i % 2 == 0 else 2)
                elif j == length - 1:
                    assert d == (3 if (i + j - 1) % 2 == 0 else 2)
                else:
                    assert d == 3

    def test_chain_cylinder_is_a_path(self, chain):
        """The chain cylinder is a path and requires circumference 1."""
        g = build_cylinder(chain, 1, 5)
        assert g.dims == (1, 5)
        assert g.num_edges == 4
        with pytest.raises(LatticeSizeError):
            build_cylinder(chain, 2, 5)


class TestEdgeLists:
    """Test suite for edge-list export/import and vertex deletion."""

    def test_round_trip(self, triangular):
        """Exported edge lists parse back to the same edges."""
        g = build_torus(triangular, 3, 4)
        parsed = parse_edge_list(g.to_edge_list_text(), g.num_vertices)
        assert parsed.edges == g.edges

    def test_comments_and_blank_lines(self):
        """'#' comments and blank lines are ignored."""
        parsed = parse_edge_list("# path\n0 1\n\n1 2  # tail\n")
        assert parsed.num_vertices == 3
        assert parsed.edges == ((0, 1), (1, 2))

    def test_malformed_line(self):
        """Lines must contain exactly two indices."""
        with pytest.raises(ValueError):
            parse_edge_list("0 1 2\n")

    def test_without_vertex(self, square):
        """Deleting a vertex removes its q edges and relabels the rest."""
        g = build_torus(square, 4, 4)
        h = g.without_vertex(5)
        assert h.num_vertices == 15
        assert h.num_edges == 32 - 4
        assert h.geometry == Geometry.custom
