"""Exact Frolicher spectral sequence pages, special Hermitian metrics and
bigraded slice computations for invariant complex structures."""

from .exact_linalg import GaussianRational, SparseMatrix, gq
from .complex_model import ComplexModel, Form, parse_model
from .fss_engine import (
    class_membership,
    degeneration_report,
    dr_rank,
    page_dims,
    representatives,
    x_dim,
    y_dim,
)
from .hermitian import (
    HermitianMetric,
    c1_constant,
    cofactor,
    is_balanced,
    is_kth_gauduchon,
    is_positive_definite,
    is_skt,
    is_standard,
)

__all__ = [
    "GaussianRational",
    "SparseMatrix",
    "gq",
    "ComplexModel",
    "Form",
    "parse_model",
    "class_membership",
    "degeneration_report",
    "dr_rank",
    "page_dims",
    "representatives",
    "x_dim",
    "y_dim",
    "HermitianMetric",
    "c1_constant",
    "cofactor",
    "is_balanced",
    "is_kth_gauduchon",
    "is_positive_definite",
    "is_skt",
    "is_standard",
]

__version__ = "0.1.0"
