"""Exact motivic classes of Higgs-bundle and connection moduli stacks.

The package computes, as exact rational functions in two variables (u, v)
with L = uv the class of the affine line, the motivic classes of the moduli
stacks of semistable Higgs bundles of any rank and degree on a smooth
projective curve of genus g, and of the stacks of rank-r bundles with
connections, together with the network of closed-form identities that the
construction satisfies (zeta functional equation, plethystic Exp/Log
inversion, nilpotent-cone and torsion-sheaf identities, slope
factorization, degree periodicity, Borel-reduction limits).

All equalities are verified in the Hodge (E-polynomial) realization of the
completed ring of motivic classes; see the README for what this does and
does not imply.
"""

from .errors import (
    BoxOutsideDiagramError,
    ConstantTermNotOneError,
    HiggsmotError,
    HigherOrderPoleError,
    InsufficientTruncationError,
    KeyOffRayError,
    NegativeGenusError,
    NonConstantExponentError,
    NonInvertibleQError,
    NonzeroConstantTermError,
    PoleAtArgumentError,
    StabilizationFailureError,
    ZeroDenominatorError,
)
from .exactring import L, MotClass, ONE, U, V, ZERO, adams, gl_class, make_class, nilcone_class
from .rational import MultiRational, RationalZ, SeriesZ
from .partitions import Partition, arm_leg, block_data, enumerate_partitions, pairing
from .plethystic import (
    GradedSeries,
    exp_pleth,
    log_pleth,
    multiply,
    pow_pleth,
    ray_exp,
    series_adams,
)
from .curvezeta import CurveModel, make_curve, vol, zeta_eval, zeta_of_class, zeta_star
from .residues import (
    h_mot,
    j_mot,
    l_mot,
    res_lambda,
    res_lambda_sequential,
    simple_pole_residue,
    stabilized_residue_limit,
)
from .pipeline import (
    HiggsTable,
    admissible_twist,
    b_classes,
    conn_class,
    flag_class,
    h_rd,
    harder_limit_check,
    higgs_table,
    mss_class,
    nonneg_classes,
    omega_series,
    periodicity_check,
    slope_factorization_check,
    torsion_identity_check,
)

__version__ = "0.1.0"

__all__ = [
    "MotClass",
    "make_class",
    "adams",
    "gl_class",
    "nilcone_class",
    "L",
    "U",
    "V",
    "ONE",
    "ZERO",
    "RationalZ",
    "SeriesZ",
    "MultiRational",
    "Partition",
    "enumerate_partitions",
    "arm_leg",
    "pairing",
    "block_data",
    "GradedSeries",
    "multiply",
    "series_adams",
    "exp_pleth",
    "log_pleth",
    "pow_pleth",
    "ray_exp",
    "CurveModel",
    "make_curve",
    "zeta_eval",
    "zeta_star",
    "zeta_of_class",
    "vol",
    "j_mot",
    "l_mot",
    "res_lambda",
    "res_lambda_sequential",
    "h_mot",
    "simple_pole_residue",
    "stabilized_residue_limit",
    "HiggsTable",
    "higgs_table",
    "omega_series",
    "b_classes",
    "h_rd",
    "mss_class",
    "conn_class",
    "admissible_twist",
    "nonneg_classes",
    "slope_factorization_check",
    "torsion_identity_check",
    "flag_class",
    "harder_limit_check",
    "periodicity_check",
    "HiggsmotError",
    "ZeroDenominatorError",
    "NegativeGenusError",
    "PoleAtArgumentError",
    "NonzeroConstantTermError",
    "ConstantTermNotOneError",
    "KeyOffRayError",
    "BoxOutsideDiagramError",
    "NonInvertibleQError",
    "HigherOrderPoleError",
    "InsufficientTruncationError",
    "StabilizationFailureError",
    "NonConstantExponentError",
]
