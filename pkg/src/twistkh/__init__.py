"""Khovanov homology of knots and twist families at n = 2.

Modules: ``diagram`` (PD codes, twist insertion, catalog), ``algebra``
(sparse graded linear algebra over Q and Q[a]), ``complex`` (chain
complexes, cones, Gaussian elimination, exact sequences), ``khovanov``
(cubes, Krasner twist complexes, F/G maps, s-invariant), ``twiststruct``
(family theorems) and ``cli``.
"""

from .complex import BigradedHomology, ChainComplex, ChainMap, cone, homology, simplify
from .diagram import (
    DiagramError, PlanarDiagram, TwistSite, catalog_by_name, insert_twists, load_catalog,
    mirror, parse_pd,
)
from .khovanov import Theory, cube, khovanov_homology, krasner_twist_complex, map_F, map_G
from .khovanov import s_invariant, splice, stable_homology

__version__ = "0.1.0"

__all__ = [
    "BigradedHomology", "ChainComplex", "ChainMap", "cone", "homology", "simplify",
    "DiagramError", "PlanarDiagram", "TwistSite", "catalog_by_name", "insert_twists",
    "load_catalog", "mirror", "parse_pd",
    "Theory", "cube", "khovanov_homology", "krasner_twist_complex", "map_F", "map_G",
    "s_invariant", "splice", "stable_homology",
]
