"""Toolkit for constant-coefficient linear recurrence sequences."""

from .basis import basis_matrix, basis_value, vandermonde_det
from .charpoly import Polynomial, char_poly, coeffs_from_spectrum, find_roots, spectrum_of
from .errors import CFiniteError, InvalidInput, NumericFailure, SingularBasis
from .fasteval import eval_companion_power, eval_kitamasa, infer_recurrence
from .linalg import cond_estimate, det, solve
from .model import (
    ClosedForm,
    RationalGF,
    RecurrenceSpec,
    RootSpectrum,
    SampleSet,
    Tolerances,
    validate_spec,
    validate_spectrum,
)
from .solver import (
    EvalReport,
    closed_form,
    eval_corollary1,
    eval_determinant,
    eval_iterative,
    generating_function,
    reconstruct_from_samples,
)

__version__ = "0.1.0"
