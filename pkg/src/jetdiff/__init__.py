"""Exact computations with jet differentials, reparametrization invariants and Wronskians."""

from .algebra import DiffPoly, Var, evaluate, render, substitute, total_derivative, weighted_degree, xi
from .expr import parse_expr
from .jets import Jet, Reparam, act_on_jet, act_on_poly, action_matrix, compose_reparam, is_invariant
from .series import TruncSeries
from .wronskian import Partition, generalized_wronskian, wronskian

__version__ = "0.1.0"
