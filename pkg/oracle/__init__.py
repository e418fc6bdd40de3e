"""Oráculos exatos de pequena escala: enumeração de suportes, melhor subconjunto e DSRIP."""

from oracle.best_subset import best_subset_oracle
from oracle.dsrip import DsripConstants, dsrip_constants, sparse_eigenvalue_max
from oracle.support_enumeration import count_supports, enumerate_supports, is_maximal

__all__ = [
    "DsripConstants",
    "best_subset_oracle",
    "count_supports",
    "dsrip_constants",
    "enumerate_supports",
    "is_maximal",
    "sparse_eigenvalue_max",
]
