"""
"""
from .api import \
    ParseError, \
    parse, parse_angles, \
    load, loads, dump, dumps, \
    anisotropic, isomorphic, \
    run_vinberg, reflective12, \
    extensions, width_bound
from .lattice import QuadLattice, Root
from .bounds import AngleSet
from .config import Budget
from .pipeline import classify
