"""Exact perfect state transfer analysis for bi-Cayley graphs over abelian groups."""

from .abelian import GroupSpec, InvalidElementError, InvalidSpecError, make_group
from .bicayley import BiCayleySpec, Vertex, adjacency, is_connected
from .cyclotomic import CycInt, cyclotomic_poly
from .pst import (
    FailureReason,
    PstVerdict,
    TimeKind,
    TimeSet,
    check_conditions_at_time,
    decide_cross,
    decide_same,
    periodicity,
    pst_pairs,
    v2,
)
from .spectrum import eigenvalues, is_integral, transfer_entry

__version__ = "0.1.0"

__all__ = [
    "BiCayleySpec",
    "CycInt",
    "FailureReason",
    "GroupSpec",
    "InvalidElementError",
    "InvalidSpecError",
    "PstVerdict",
    "TimeKind",
    "TimeSet",
    "Vertex",
    "adjacency",
    "check_conditions_at_time",
    "cyclotomic_poly",
    "decide_cross",
    "decide_same",
    "eigenvalues",
    "is_connected",
    "is_integral",
    "make_group",
    "periodicity",
    "pst_pairs",
    "transfer_entry",
    "v2",
]
