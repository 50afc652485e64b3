"""Regime classification, main terms, explicit error bounds, and sweeps.

The normalized polynomial value has seven asymptotic regimes, selected by
the sign of tau and the arithmetic nature (rational vs irrational) of tau
and theta.  For each regime this module evaluates the predicted main term
(1, the entire series A_q at a phase-twisted argument, or a bilateral theta
value whose argument carries the parity character of m = floor(-tau n)),
the explicit error bound with its regime-specific truncation depth nu_n,
and exact-vs-asymptotic verification rows over a supplied index sweep.

The asymptotic statements hold from some unquantified index onward;
``summarize_rows`` therefore reports the empirical n beyond which every
sampled row stays within its bound, rather than assuming a threshold.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .diophantine import (
    DiophantineWitness,
    chi,
    joint_progression,
    lattice_of_rational,
    witness_search,
    witness_search_pair,
)
from .errors import EmptyCandidates, MissingParam, OutOfRange, UnsupportedScaling
from .qcore import QParam, qpoch_infinite, qq_infinity
from .qspecial import Bq, ramanujan_Aq, theta_series
from .scaling import Scaling
from .swpoly import sw_normalized, sw_theta_normalized

_CONST_TOL = 1e-13

_REQUIRED = {
    1: (),
    2: ("lambda_",),
    3: ("beta", "rho"),
    4: ("lambda_", "lambda1"),
    5: ("lambda_", "beta", "rho"),
    6: ("lambda_", "beta", "rho"),
    7: ("beta1", "beta2", "rho"),
}


@dataclass(frozen=True)
class CaseParams:
    """Regime id, scaling, and the fractional targets the regime requires."""

    case_id: int
    scaling: Scaling
    lambda_: Optional[object] = None   # Fraction or float in [0, 1)
    lambda1: Optional[object] = None
    beta: Optional[float] = None
    beta1: Optional[float] = None
    beta2: Optional[float] = None
    rho: Optional[float] = None

    def __post_init__(self) -> None:
        if self.case_id not in _REQUIRED:
            raise MissingParam(f"case_id must be 1..7, got {self.case_id}")
        for name in _REQUIRED[self.case_id]:
            if getattr(self, name) is None:
                raise MissingParam(f"case {self.case_id} requires parameter {name.rstrip('_')}")
        for name in ("lambda_", "lambda1", "beta", "beta1", "beta2"):
            v = getattr(self, name)
            if v is not None and not (0 <= float(v) < 1):
                raise MissingParam(f"{name.rstrip('_')} must lie in [0, 1), got {v!r}")
        if self.rho is not None and self.rho <= 0:
            raise MissingParam(f"rho must be > 0, got {self.rho!r}")
        expected = classify_case(self.scaling)
        if expected != self.case_id:
            raise MissingParam(
                f"scaling (tau={self.scaling.tau.describe()}, theta={self.scaling.theta.describe()}) "
                f"belongs to case {expected}, not case {self.case_id}"
            )


@dataclass(frozen=True)
class CaseVerificationRow:
    """One sweep point: exact normalized value vs main term vs bound."""

    n: int
    lhs: complex
    main: complex
    abs_err: float
    bound: float
    within: bool
    nu_n: int
    witness: Optional[DiophantineWitness] = None


@dataclass(frozen=True)
class VerificationSummary:
    """Empirical bound-soundness digest of one sweep."""

    n_min_within: Optional[int]
    all_within_after_n_min: bool
    max_err_at_tail: float
    n_first: int
    n_last: int
    err_first: float
    err_last: float


def classify_case(scaling: Scaling) -> int:
    """Regime id 1..7 from the scaling tags; floats never break rational ties."""
    tau = scaling.tau
    if tau.is_rational:
        if tau.fraction <= -2:
            raise UnsupportedScaling(f"tau = {tau.describe()} <= -2 is outside the supported regimes")
        if tau.fraction == 0:
            return 2 if scaling.theta.is_rational else 3
        if tau.fraction > 0:
            return 1
    else:
        if tau.value <= -2.0:
            raise UnsupportedScaling(f"tau = {tau.value!r} <= -2 is outside the supported regimes")
        if tau.value == 0.0:
            raise UnsupportedScaling("tau = 0 must be tagged as the exact rational 0")
        if tau.value > 0.0:
            return 1
    if tau.is_rational:
        return 4 if scaling.theta.is_rational else 5
    return 6 if scaling.theta.is_rational else 7


def nu_n(case_id: int, scaling: Scaling, n: int, q) -> int:
    """Truncation depth of the bound for the given regime at index n.

    Linear in n for the doubly rational strip regime, log^2 n for the
    regimes driven by a Diophantine witness, unused (0) otherwise.
    """
    qv = QParam.of(q).q
    if n < 1:
        raise OutOfRange(f"n must be >= 1, got {n}")
    if case_id == 4:
        if scaling.tau.is_rational:
            t = scaling.tau.fraction
            a = (2 + t) * n / 8
            b = -t * n / 8
            return min(a.numerator // a.denominator, b.numerator // b.denominator)
        t = scaling.tau.value
        return min(math.floor((2.0 + t) * n / 8.0), math.floor(-t * n / 8.0))
    if case_id in (3, 5, 6, 7):
        return math.floor(qv**4 * math.log(n) ** 2 / (1.0 + math.log(1.0 / qv)))
    return 0


@lru_cache(maxsize=None)
def _minus_q3_const(q: float) -> float:
    """(-q^3; q)_infinity at the bound tolerance."""
    return qpoch_infinite(-(q**3), q, _CONST_TOL).real


@lru_cache(maxsize=None)
def _bq_const(x: float, q: float) -> float:
    return Bq(x, q, _CONST_TOL).real


@lru_cache(maxsize=None)
def _theta_sqrtq_const(x: float, q: float) -> float:
    """Bilateral series at |z| = x with nome sqrt(q)."""
    return theta_series(complex(x), math.sqrt(q), _CONST_TOL).real


@lru_cache(maxsize=None)
def _aq_main(zarg: complex, q: float) -> complex:
    return ramanujan_Aq(zarg, q, _CONST_TOL).value


@lru_cache(maxsize=None)
def _theta_main(w: complex, q: float) -> complex:
    return theta_series(w, q, _CONST_TOL).value


def _safe_exp(x: float) -> float:
    return math.exp(x) if x > -745.0 else 0.0


def main_term(case_id: int, params: CaseParams, z, q, tol: float = _CONST_TOL, m: Optional[int] = None) -> complex:
    """Predicted limit of the normalized value for the regime.

    The strip regimes (4..7) need the index-dependent integer m, since the
    parity chi(m) shifts the theta argument; the verifier supplies it per n.
    """
    qv = QParam.of(q).q
    zc = complex(z)
    if case_id == 1:
        return complex(1.0)
    if case_id == 2:
        return _aq_main(_exp_2pii(float(params.lambda_)) / zc, qv)
    if case_id == 3:
        return _aq_main(_exp_2pii(float(params.beta)) / zc, qv)
    if case_id in (4, 5, 6, 7):
        if m is None:
            raise MissingParam(f"case {case_id} main term needs the integer m for chi(m)")
        u, v = _theta_targets(case_id, params)
        w = -zc * qv ** (chi(m) + u) * _exp_2pii(-v)
        return _theta_main(w, qv)
    raise MissingParam(f"case_id must be 1..7, got {case_id}")


def _exp_2pii(t: float) -> complex:
    """exp(2 pi i t)."""
    return cmath.exp(complex(0.0, 2.0 * math.pi * t))


def _theta_targets(case_id: int, params: CaseParams) -> tuple[float, float]:
    """(u, v) such that the theta argument is -z q^(chi(m)+u) e^(-2 pi i v)."""
    if case_id == 4:
        return float(params.lambda_), float(params.lambda1)
    if case_id == 5:
        return float(params.lambda_), float(params.beta)
    if case_id == 6:
        return float(params.beta), float(params.lambda_)
    return float(params.beta1), float(params.beta2)


def error_bound(case_id: int, params: CaseParams, n: int, z, q) -> float:
    """Explicit error budget of the regime at index n.

    Constants are evaluated once per (q, |z|) at tolerance 1e-13; the case-1
    budget keeps its q^(tau n) decay factor rather than the weaker n-free
    simplification.  Budgets below double range underflow to exactly 0, at
    which depth a sweep is measuring roundoff rather than truncation error.
    """
    qv = QParam.of(q).q
    az = abs(complex(z))
    lnq = math.log(qv)
    if case_id == 1:
        tau = params.scaling.tau.value
        return qv * _bq_const(qv * qv / az, qv) / ((1.0 - qv) * az) * _safe_exp(tau * n * lnq)
    if case_id == 2:
        coeff = 2.0 * _minus_q3_const(qv) * _bq_const(1.0 / az, qv) / qq_infinity(qv)
        return coeff * (_safe_exp(n * lnq / 2.0) + _safe_exp(n * n * lnq / 4.0 - (n // 2) * math.log(az)))
    nu = nu_n(case_id, params.scaling, n, qv)
    if case_id == 3:
        coeff = 24.0 * _minus_q3_const(qv) * _bq_const(1.0 / az, qv) / qq_infinity(qv)
        return coeff * (math.log(n) ** 2 / n ** params.rho + _safe_exp(nu * nu * lnq - nu * math.log(az)))
    coeff = _minus_q3_const(qv) ** 2 * _theta_sqrtq_const(az, qv) / (1.0 - qv) ** 2
    grow = _safe_exp(nu * nu * lnq + nu * math.log(az))
    shrink = _safe_exp(nu * nu * lnq / 2.0 - nu * math.log(az))
    if case_id == 4:
        return 6.0 * coeff * (qv**nu + grow + shrink)
    if case_id in (5, 6, 7):
        return 54.0 * coeff * (grow + shrink + math.log(n) ** 2 / n ** params.rho)
    raise MissingParam(f"case_id must be 1..7, got {case_id}")


def _matches_frac(value: Fraction, target) -> bool:
    if isinstance(target, Fraction):
        return value == target
    return abs(float(value) - float(target)) < 1e-12


def admissible_candidates(case_id: int, params: CaseParams, ns: Sequence[int]) -> list[int]:
    """Filter a candidate list down to the indices the regime statement covers.

    Rational-lattice regimes pin {n theta} (and {-tau n}) to the declared
    targets; witness regimes accept what the searches produced.
    """
    sc = params.scaling
    out = []
    for n in ns:
        if n < 1:
            continue
        if case_id == 2 and not _matches_frac((sc.theta.fraction * n) % 1, params.lambda_):
            continue
        if case_id == 4:
            mt = (-sc.tau.fraction * n) % 1
            th = (sc.theta.fraction * n) % 1
            if not (_matches_frac(mt, params.lambda_) and _matches_frac(th, params.lambda1)):
                continue
        if case_id == 5:
            mtf = (-sc.tau.fraction * n) % 1
            if not _matches_frac(mtf, params.lambda_):
                continue
        if case_id == 6:
            if not _matches_frac((sc.theta.fraction * n) % 1, params.lambda_):
                continue
        out.append(int(n))
    return sorted(set(out))


def compute_row(case_id: int, params: CaseParams, z, q, n: int) -> CaseVerificationRow:
    """Evaluate one sweep index: exact value, main term, error, bound."""
    qv = QParam.of(q).q
    sc = params.scaling
    zc = complex(z)
    witness = None

    if case_id in (1, 2, 3):
        lhs = sw_normalized(n, zc, sc, qv) * qq_infinity(qv)
        main = main_term(case_id, params, zc, qv)
        if case_id == 3:
            exact = n * sc.theta.value - params.beta
            m1 = math.floor(exact + 0.5)
            witness = DiophantineWitness(n=n, m=m1, residual=exact - m1, beta=params.beta, rho=params.rho)
    else:
        m_arg = None
        if case_id in (6, 7):
            beta_tau = params.beta if case_id == 6 else params.beta1
            y = -sc.tau.value * n - beta_tau
            m_arg = math.floor(y + 0.5)
            witness = DiophantineWitness(
                n=n, m=m_arg, residual=y - m_arg, beta=beta_tau, rho=params.rho
            )
        elif case_id == 5:
            exact = n * sc.theta.value - params.beta
            m1 = math.floor(exact + 0.5)
            witness = DiophantineWitness(n=n, m=m1, residual=exact - m1, beta=params.beta, rho=params.rho)
        split = sw_theta_normalized(n, zc, sc, qv, m=m_arg)
        lhs = split.value
        main = main_term(case_id, params, zc, qv, m=split.m)

    err = abs(lhs - main)
    bound = error_bound(case_id, params, n, zc, qv)
    return CaseVerificationRow(
        n=n,
        lhs=complex(lhs),
        main=complex(main),
        abs_err=err,
        bound=bound,
        within=err <= bound,
        nu_n=nu_n(case_id, sc, n, qv),
        witness=witness,
    )


def _row_task(payload) -> CaseVerificationRow:
    return compute_row(*payload)


def verify(
    case_id: int,
    params: CaseParams,
    z,
    q,
    n_candidates: Sequence[int],
    jobs: int = 1,
) -> list[CaseVerificationRow]:
    """Verification rows over the admissible subset of the candidates.

    Rows are independent pure computations; ``jobs > 1`` distributes them
    over a process pool with results reassembled in n-order, so parallel and
    serial runs produce identical output.
    """
    if params.case_id != case_id:
        raise MissingParam(f"case_id {case_id} does not match params.case_id {params.case_id}")
    ns = admissible_candidates(case_id, params, list(n_candidates))
    if not ns:
        raise EmptyCandidates(f"no admissible indices for case {case_id}")
    qv = QParam.of(q).q
    if jobs <= 1:
        return [compute_row(case_id, params, z, qv, n) for n in ns]
    payloads = [(case_id, params, complex(z), qv, n) for n in ns]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_row_task, payloads, chunksize=max(1, len(ns) // (4 * jobs))))


def candidates_for_case(
    case_id: int,
    params: CaseParams,
    n_min: int,
    n_max: int,
    n_step: int = 1,
) -> list[int]:
    """Generate the index source the regime calls for, clipped to [n_min, n_max].

    Plain ranges for the decaying regime, lattice progressions for the
    rational regimes, witness searches at the declared quality for the
    irrational ones.
    """
    if n_min < 1 or n_max < n_min:
        raise EmptyCandidates(f"need 1 <= n_min <= n_max, got {n_min}..{n_max}")
    sc = params.scaling
    if case_id == 1:
        ns = list(range(n_min, n_max + 1))
    elif case_id == 2:
        lattice = lattice_of_rational(sc.theta)
        residue = lattice.residue_of(params.lambda_)
        if residue is None:
            raise EmptyCandidates(f"lambda = {params.lambda_} is not attained on the lattice of {sc.theta.describe()}")
        mod = lattice.modulus
        start = residue if residue >= 1 else mod
        ns = [n for n in range(start, n_max + 1, mod) if n >= n_min]
    elif case_id == 4:
        prog = joint_progression(sc.tau, sc.theta, params.lambda_, params.lambda1)
        if prog is None:
            raise EmptyCandidates("the two fractional targets are incompatible on this lattice")
        mod, residue = prog
        start = residue if residue >= 1 else mod
        ns = [n for n in range(start, n_max + 1, mod) if n >= n_min]
    elif case_id in (3, 5):
        wits = witness_search(sc.theta.value, params.beta, params.rho, n_max)
        ns = [w.n for w in wits if w.n >= n_min]
    elif case_id == 6:
        wits = witness_search(-sc.tau.value, params.beta, params.rho, n_max)
        ns = [w.n for w in wits if w.n >= n_min]
    elif case_id == 7:
        wits = witness_search_pair(-sc.tau.value, sc.theta.value, params.beta1, params.beta2, params.rho, n_max)
        ns = [w.n for w in wits if w.n >= n_min]
    else:
        raise MissingParam(f"case_id must be 1..7, got {case_id}")
    if n_step > 1:
        ns = ns[::n_step]
    return ns


def summarize_rows(rows: Sequence[CaseVerificationRow]) -> VerificationSummary:
    """Empirical threshold report: from which sampled n onward the bound held."""
    if not rows:
        raise EmptyCandidates("cannot summarize an empty sweep")
    n_min: Optional[int] = None
    for row in reversed(rows):
        if row.within:
            n_min = row.n
        else:
            break
    return VerificationSummary(
        n_min_within=n_min,
        all_within_after_n_min=n_min is not None,
        max_err_at_tail=rows[-1].abs_err,
        n_first=rows[0].n,
        n_last=rows[-1].n,
        err_first=rows[0].abs_err,
        err_last=rows[-1].abs_err,
    )
