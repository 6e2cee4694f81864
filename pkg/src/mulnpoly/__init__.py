"""Multiplication-by-n polynomials for Weierstrass curves over arbitrary base rings."""

from .curves import (
    NonField,
    NotOnCurve,
    ProjPoint,
    SingularPoint,
    TripleSource,
    WeierstrassCurve,
    affine_multiple,
    curve_contains,
    curve_discriminant,
    is_smooth_curve,
    is_smooth_point,
    is_Zn_embedding,
    mul_point,
    oracle_add,
    oracle_mul,
    oracle_neg,
    proj_equal,
)
from .divpoly import (
    AffineCurveElement,
    CoordinateRing,
    DivPolyLadder,
    ExactnessViolation,
    canonical_xrep,
    generic_discriminant,
    omega,
    phi,
    psi,
)
from .moduli import (
    OrderObstruction,
    TateForm,
    WeierstrassChange,
    Y1Equation,
    delta_st,
    emit_y1,
    f_st,
    psi_st,
    tate_normal_form,
)
from .mpoly import MPoly, NotDivisible, NotHomogeneous, VarMismatch, parse_poly
from .projmul import (
    InvariantViolation,
    MulTriple,
    build_triple,
    eval_triple,
    specialize_triple,
)
from .rings import (
    GF,
    QQ,
    ZZ,
    CapabilityError,
    NotAUnit,
    PolynomialRing,
    ResidueRing,
    RingElement,
    RingError,
    RingMismatch,
    parse_ring,
)

__version__ = "0.1.0"
