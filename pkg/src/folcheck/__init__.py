"""Exact tests for generalized-curve and second-type plane foliations."""
from .cert import CertInt
from .classify import (
    Report,
    Verdict,
    check_gc_general,
    check_gc_genus1,
    check_gc_irreducible,
    check_gc_monomial,
    check_np_equality,
    check_second_type,
    full_report,
    validate_membership,
)
from .curves import (
    Branch,
    CurveSpec,
    approximate_root,
    char_exponents,
    intersection_number,
    is_K_nm,
    milnor_number,
    newton_puiseux,
    semigroup_from_exponents,
    semiroot_expansion,
)
from .errors import FolError
from .foliations import (
    MonomialSetup,
    OneForm,
    classify_linear_part,
    cofactor,
    gsv_index,
    loray_decompose,
    milnor_foliation,
    mult,
    toric_strict_transform,
    weierstrass_form,
)
from .parse import format_polynomial, parse_polynomial
from .series import BiSeries, WPoly, newton_polygon, weierstrass_divide, weierstrass_polynomial

__version__ = "0.1.0"

__all__ = [
    "BiSeries",
    "Branch",
    "CertInt",
    "CurveSpec",
    "FolError",
    "MonomialSetup",
    "OneForm",
    "Report",
    "Verdict",
    "WPoly",
    "approximate_root",
    "char_exponents",
    "check_gc_general",
    "check_gc_genus1",
    "check_gc_irreducible",
    "check_gc_monomial",
    "check_np_equality",
    "check_second_type",
    "classify_linear_part",
    "cofactor",
    "format_polynomial",
    "full_report",
    "gsv_index",
    "intersection_number",
    "is_K_nm",
    "loray_decompose",
    "milnor_foliation",
    "milnor_number",
    "mult",
    "newton_polygon",
    "newton_puiseux",
    "parse_polynomial",
    "semigroup_from_exponents",
    "semiroot_expansion",
    "toric_strict_transform",
    "validate_membership",
    "weierstrass_divide",
    "weierstrass_form",
    "weierstrass_polynomial",
    "__version__",
]
