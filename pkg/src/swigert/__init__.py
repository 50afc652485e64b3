"""Stieltjes-Wigert polynomials under complex scaling.

Certified q-series primitives, three mutually cross-checking polynomial
evaluators, Diophantine witness searches, and an exact-vs-asymptotic
verification harness with explicit error bounds for all seven scaling
regimes.
"""

from .asymptotics import (
    CaseParams,
    CaseVerificationRow,
    VerificationSummary,
    candidates_for_case,
    classify_case,
    error_bound,
    main_term,
    nu_n,
    summarize_rows,
    verify,
)
from .diophantine import (
    DiophantineWitness,
    PairedWitness,
    RationalLattice,
    cf_convergents,
    chi,
    frac_split,
    joint_progression,
    lattice_of_rational,
    witness_search,
    witness_search_pair,
)
from .errors import (
    BadTau,
    DomainTooLarge,
    EmptyCandidates,
    HypothesisViolated,
    IndexOutOfRange,
    MissingParam,
    NonConvergent,
    NotRational,
    OutOfRange,
    PeakOverflow,
    SwigertError,
    UnsupportedScaling,
    ZeroArgument,
)
from .qcore import (
    CertifiedValue,
    PochTailRemainders,
    QParam,
    poch_tail_remainders,
    qbinom,
    qpoch_finite,
    qpoch_infinite,
    qq_infinity,
)
from .qspecial import Aq_derivative, Bq, ThetaArg, ramanujan_Aq, theta_product, theta_series
from .scaling import RealParam, Scaling
from .swpoly import (
    SplitSumResult,
    log_normalizer,
    log_theta_normalizer,
    poch_tail_ratio_e,
    poch_tail_ratio_f,
    scaled_argument,
    sw_direct,
    sw_normalized,
    sw_theta_normalized,
)

__version__ = "0.1.0"
