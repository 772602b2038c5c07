"""Twisted conjugacy classes and Reidemeister numbers of GL_n and SL_n over rings."""

from .automorphisms import (
    AutomorphismWord,
    Central,
    Contragredient,
    DetPower,
    Inner,
    RingAuto,
    StandardAutomorphism,
    TableCentral,
    TrivialCentral,
    apply,
    check_automorphism,
    format_word,
    normalize,
    parse_word,
)
from .errors import TwistConjError
from .matrices import Matrix, antitrace, contragredient, corner_extend, determinant, trace
from .rings import ZZ, ZZ_I, GaussianIntegers, Integers, PolynomialRing, PrimeField, make_ring
from .twisted import (
    FiniteMatrixGroup,
    burnside_reidemeister,
    enumerate_group,
    solve_twisted,
    twisted_act,
    twisted_classes,
)
from .witnesses import (
    AntitraceSquare,
    OrbitTracePower,
    TracePower,
    WitnessFamily,
    certify_separation,
    gen_theorem1,
    gen_theorem2,
    psi_poly,
)

__version__ = "0.1.0"

__all__ = [
    "antitrace",
    "AntitraceSquare",
    "apply",
    "AutomorphismWord",
    "burnside_reidemeister",
    "Central",
    "certify_separation",
    "check_automorphism",
    "contragredient",
    "Contragredient",
    "corner_extend",
    "determinant",
    "DetPower",
    "enumerate_group",
    "FiniteMatrixGroup",
    "format_word",
    "GaussianIntegers",
    "gen_theorem1",
    "gen_theorem2",
    "Inner",
    "Integers",
    "make_ring",
    "Matrix",
    "normalize",
    "OrbitTracePower",
    "parse_word",
    "PolynomialRing",
    "PrimeField",
    "psi_poly",
    "RingAuto",
    "solve_twisted",
    "StandardAutomorphism",
    "TableCentral",
    "trace",
    "TracePower",
    "TrivialCentral",
    "TwistConjError",
    "twisted_act",
    "twisted_classes",
    "WitnessFamily",
    "ZZ",
    "ZZ_I",
]
