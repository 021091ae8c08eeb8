"""Minimal linear codes and cutting blocking sets over small finite fields."""

from .gf import GF, FieldError, field_of_order, make_field
from .linalg import Matrix, kernel, rank, rref
from .code import (
    EnumerationLimitError,
    LinearCode,
    is_minimal_code,
    is_minimal_code_bruteforce,
    is_minimal_codeword,
    pless_second_moment_check,
    weight_profile,
)
from .projgeom import PointSet, code_from_pointset, is_cutting, is_tfold_blocking, pointset_from_code
from .supportpoly import (
    SupportPolynomial,
    alon_furedi_bound,
    build_support_poly,
    canonical_form,
    is_cover_witness,
    reduce_mod_Iq,
    support_cover_witnesses,
)
from .constructions import (
    PreconditionError,
    VerificationError,
    baer_code,
    best_known,
    even_lines_code,
    lift,
    line,
    rational_normal_tangent,
    tetrahedron,
)
from .bounds import (
    bhatia_davis_window,
    d_upper_minimal,
    delsarte_check,
    feasibility,
    m_table,
    popoviciu_check,
    stat_quadratic,
)
from .formats import MatrixFile

__version__ = "0.1.0"
