"""Curve/rank database files and machine-readable parity reports.

File format, one record per line:

    label conductor [a1,a2,a3,a4,a6] rank

with "?" for an unknown conductor or rank and "#" starting a comment.  Reports
are JSON with a fixed key order; integers whose magnitude exceeds 2^53 are
serialized as decimal strings so consumers that read numbers as doubles do not
lose precision.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .local import conductor
from .parity import ParityReport
from .weierstrass import CurveModel, discriminant, parse_curve

_LINE_RE = re.compile(r"^(\S+)\s+(\d+|\?)\s+(\[[^\]]*\])\s+(\d+|\?)$")
_BIG = 1 << 53


@dataclass(frozen=True)
class CurveRecord:
    label: str
    curve: CurveModel
    conductor: int | None
    rank: int | None


def parse_curve_file(lines) -> list[CurveRecord]:
    """Parse an iterable of lines into validated records, order preserved."""
    records = []
    for lineno, raw in enumerate(lines, 1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        m = _LINE_RE.match(text)
        if not m:
            raise ValueError(
                "line %d: expected 'label conductor [a1,a2,a3,a4,a6] rank', got %r"
                % (lineno, text)
            )
        label, cond_text, curve_text, rank_text = m.groups()
        try:
            curve = parse_curve(curve_text)
        except ValueError as exc:
            raise ValueError("line %d (%s): %s" % (lineno, label, exc)) from None
        if discriminant(curve) == 0:
            raise ValueError("line %d (%s): curve is singular" % (lineno, label))
        cond = None if cond_text == "?" else int(cond_text)
        if cond is not None:
            computed = conductor(curve)
            if computed != cond:
                raise ValueError(
                    "line %d (%s): conductor mismatch: file says %d, computed %d"
                    % (lineno, label, cond, computed)
                )
        rank = None if rank_text == "?" else int(rank_text)
        records.append(CurveRecord(label, curve, cond, rank))
    return records


def emit_curve_file(records) -> str:
    """Inverse of parse_curve_file up to whitespace."""
    lines = []
    for r in records:
        cond = "?" if r.conductor is None else str(r.conductor)
        rank = "?" if r.rank is None else str(r.rank)
        lines.append("%s %s %s %s" % (r.label, cond, r.curve, rank))
    return "\n".join(lines) + "\n"


def _clamp(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > _BIG else value
    if isinstance(value, (list, tuple)):
        return [_clamp(v) for v in value]
    if isinstance(value, dict):
        return {k: _clamp(v) for k, v in value.items()}
    return value


def _tau_block(records) -> dict:
    return {
        str(rec.ell): {"tau": rec.tau, "parity": rec.delta_parity, "case": rec.matched_case}
        for rec in sorted(records, key=lambda r: r.ell)
    }


def report_object(r: ParityReport) -> dict:
    """The report as a plain JSON-compatible object tree."""
    c1, c2 = r.curves
    congruence = None
    if r.congruence is not None:
        v = r.congruence
        congruence = {
            "status": str(v.status),
            "level": v.level,
            "bound": v.bound,
            "checked_primes": v.checked_primes,
            "witness": list(v.witness) if v.witness is not None else None,
            "caveat": v.caveat,
        }
    evidence = {}
    for ell in r.sigma_data.sigma:
        ev = r.sigma_data.evidence.get(ell)
        if ev is None:
            continue
        evidence[str(ell)] = {
            "e1": list(ev.e1_reasons),
            "e2": list(ev.e2_reasons),
            "in_sigma0": ev.in_sigma0,
            "undetermined": ev.undetermined,
            "warnings": list(ev.warnings),
        }
    r1, r2 = r.ranks
    lhs = None if r1 is None else (r1 + len(r.s1)) % 2
    rhs = None if r2 is None else (r2 + len(r.s2)) % 2
    deduced = None
    if r.deduced is not None:
        deduced = {
            "curve": r.deduced.curve,
            "parity": r.deduced.parity,
            "exact": r.deduced.exact,
            "candidates": list(r.deduced.candidates) if r.deduced.candidates is not None else None,
        }
    return {
        "schema_version": "1",
        "curves": [
            {"label": r.labels[0], "coefficients": c1.coefficients(), "conductor": conductor(c1)},
            {"label": r.labels[1], "coefficients": c2.coefficients(), "conductor": conductor(c2)},
        ],
        "p": r.p,
        "congruence": congruence,
        "sigma": list(r.sigma_data.sigma),
        "sigma0": list(r.sigma_data.sigma0),
        "drop_evidence": evidence,
        "tau": {"e1": _tau_block(r.tau1), "e2": _tau_block(r.tau2)},
        "s1": sorted(r.s1),
        "s2": sorted(r.s2),
        "ranks": {"known": {"e1": r1, "e2": r2}, "deduced": deduced},
        "relation": {"holds": r.relation_holds, "lhs_parity": lhs, "rhs_parity": rhs},
        "hypotheses": [{"id": h.id, "detail": h.detail} for h in r.hypotheses],
    }


def emit_report(r: ParityReport) -> str:
    """Deterministic JSON serialization of a ParityReport."""
    return json.dumps(_clamp(report_object(r)), indent=2) + "\n"
