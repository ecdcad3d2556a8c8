"""Exact computations on convex polyhedron semigroups in three dimensions."""

from ._polysg import (
    PolysgError,
    Semigroup,
    apery_table,
    gorenstein_family,
    parse_vertices,
)

__all__ = ["PolysgError", "Semigroup", "apery_table", "gorenstein_family", "parse_vertices"]
