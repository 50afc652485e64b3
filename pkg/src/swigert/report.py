"""Deterministic serialization of sweep rows, witnesses, and summaries.

Numbers are rendered as their shortest round-trip decimal (so reports are
diff-able and re-parse to the exact same doubles), complex values as paired
re/im columns, booleans as lowercase words.  All files use '\\n' line
endings and a '.' decimal separator regardless of locale.
"""

from __future__ import annotations

import json
from typing import Optional, Sequence

from .asymptotics import CaseParams, CaseVerificationRow, VerificationSummary
from .diophantine import DiophantineWitness, PairedWitness

ROW_HEADER = "n,lhs_re,lhs_im,main_re,main_im,abs_err,bound,within,nu_n,witness_m,witness_residual"

WITNESS_HEADER = "n,m,residual"
PAIRED_WITNESS_HEADER = "n,m,residual,m1,residual2"


def fmt(x) -> str:
    """Shortest round-trip text for the scalar kinds appearing in reports."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def rows_to_csv(rows: Sequence[CaseVerificationRow]) -> str:
    lines = [ROW_HEADER]
    for r in rows:
        w_m = fmt(r.witness.m) if r.witness is not None else ""
        w_res = fmt(r.witness.residual) if r.witness is not None else ""
        lines.append(
            ",".join(
                (
                    fmt(r.n),
                    fmt(r.lhs.real),
                    fmt(r.lhs.imag),
                    fmt(r.main.real),
                    fmt(r.main.imag),
                    fmt(r.abs_err),
                    fmt(r.bound),
                    fmt(r.within),
                    fmt(r.nu_n),
                    w_m,
                    w_res,
                )
            )
        )
    return "\n".join(lines) + "\n"


def rows_to_json(rows: Sequence[CaseVerificationRow]) -> str:
    payload = [
        {
            "n": r.n,
            "lhs_re": r.lhs.real,
            "lhs_im": r.lhs.imag,
            "main_re": r.main.real,
            "main_im": r.main.imag,
            "abs_err": r.abs_err,
            "bound": r.bound,
            "within": r.within,
            "nu_n": r.nu_n,
            "witness_m": r.witness.m if r.witness is not None else None,
            "witness_residual": r.witness.residual if r.witness is not None else None,
        }
        for r in rows
    ]
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def witnesses_to_csv(witnesses: Sequence[DiophantineWitness | PairedWitness]) -> str:
    paired = bool(witnesses) and isinstance(witnesses[0], PairedWitness)
    lines = [PAIRED_WITNESS_HEADER if paired else WITNESS_HEADER]
    for w in witnesses:
        if isinstance(w, PairedWitness):
            lines.append(",".join((fmt(w.n), fmt(w.m), fmt(w.a_n), fmt(w.m1), fmt(w.b_n))))
        else:
            lines.append(",".join((fmt(w.n), fmt(w.m), fmt(w.residual))))
    return "\n".join(lines) + "\n"


def params_payload(params: CaseParams, z: complex, q: float) -> dict:
    return {
        "q": q,
        "z_re": complex(z).real,
        "z_im": complex(z).imag,
        "tau": params.scaling.tau.describe(),
        "theta": params.scaling.theta.describe(),
        "lambda": None if params.lambda_ is None else str(params.lambda_),
        "lambda1": None if params.lambda1 is None else str(params.lambda1),
        "beta": params.beta,
        "beta1": params.beta1,
        "beta2": params.beta2,
        "rho": params.rho,
    }


def summary_to_json(
    params: CaseParams,
    z: complex,
    q: float,
    summary: VerificationSummary,
    n_count: Optional[int] = None,
) -> str:
    payload = {
        "case": params.case_id,
        "params": params_payload(params, z, q),
        "n_min_within": summary.n_min_within,
        "max_err_at_tail": summary.max_err_at_tail,
        "all_within_after_n_min": summary.all_within_after_n_min,
        "n_first": summary.n_first,
        "n_last": summary.n_last,
        "err_first": summary.err_first,
        "err_last": summary.err_last,
        "n_count": n_count,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
