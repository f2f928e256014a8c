"""Exact-arithmetic toolkit for counting straight lines on smooth
2D-polarized K3 surfaces: even lattices, short vectors, discriminant
forms and overlattice gluing, ADE intersection graphs, polarized line
configurations, and the combinatorial searches built on top of them."""

__version__ = "0.1.0"

from .lattice import (  # noqa: F401
    Lattice,
    LatticeError,
    direct_sum,
    scaled,
    make_named,
    parse_lattice,
    root_lattice,
    hyperbolic_plane,
    k3_lattice,
    smith_normal_form,
    reduce_rank2,
)
