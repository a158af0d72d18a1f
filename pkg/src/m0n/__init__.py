"""Divisor classes on moduli of stable rational curves: hypertree and Chen-Coskun divisors."""

from .chen_coskun import WeightVector, class_in_basis, lambda_polynomial, pullback_class_closed_form, restriction_check
from .classes import DivisorClass, class_from_polynomial, classes_equal, pullback_class_from_polynomial, push_down
from .diagonal_mult import PartialDiagonal, multiplicity_along
from .errors import M0nError
from .extremal import build_database, counterexample_check, dk_pairing
from .hypertree import Hypertree, divisor_polynomial, enumerate_irreducible
from .polyring import Polynomial, parse, render

__version__ = "0.1.0"
