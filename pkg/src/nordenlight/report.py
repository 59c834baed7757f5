"""Plain-data reports and their two renderings (indented text and JSON).

Every report is a tree of dicts, lists, strings, integers and booleans with
rationals already turned into ``"p/q"`` strings, so both renderings are
byte-deterministic.
"""

from __future__ import annotations

import json

import numpy as np

from . import lie
from . import linalg as la
from . import norden as nd
from . import residuals as rs
from . import submanifold as sm
from .errors import PreconditionError
from .lie import LieAlgebraAmbient
from .linalg import Subspace
from .specfile import format_scalar

SCHEMA_VERSION = 1


def vec(v) -> list[str]:
    return [format_scalar(x) for x in v]


def subspace_doc(w: Subspace | None) -> dict | None:
    if w is None:
        return None
    return {"dim": w.dim, "basis": [vec(b) for b in w.vectors()]}


def residual_doc(r: rs.Residual) -> dict:
    out = {"evaluations": r.evaluations, "nonzero": r.nonzero, "passed": r.passed}
    if r.sample is not None:
        idx, val = r.sample
        out["first_failure"] = {
            "index": list(idx),
            "value": vec(val) if isinstance(val, tuple) else format_scalar(val),
        }
    return out


def ledger_doc(ledger: dict[str, rs.Residual]) -> dict:
    return {k: residual_doc(v) for k, v in ledger.items()}


def _degeneracy_doc(d: nd.DegeneracyReport) -> dict:
    return {"kind": d.kind, "radical_rank": d.r, "dim": d.m, "codim": d.n}


def _complex_doc(c: nd.ComplexClassification | None) -> dict | None:
    if c is None:
        return None
    return {
        "kind": c.kind,
        "D": subspace_doc(c.D),
        "D_perp": subspace_doc(c.D_perp),
        "dim_D_perp": c.r,
        "proper": c.proper,
    }


def split_doc(s: nd.LightlikeSplitting, J: nd.ComplexStructure | None = None) -> dict:
    out = {
        "case": s.case_tag,
        "radical_rank": s.r,
        "radical": subspace_doc(s.rad),
        "screen": subspace_doc(s.screen),
        "screen_transversal": subspace_doc(s.screen_perp),
        "ltr": subspace_doc(s.ltr),
        "normal_space": subspace_doc(s.W_perp),
        "frame": {
            "xi": [vec(v) for v in s.xi],
            "N": [vec(v) for v in s.N],
            "screen": [vec(v) for v in s.X],
            "screen_transversal": [vec(v) for v in s.Wa],
        },
        "invariants": dict(sorted(s.invariant_checks().items())),
    }
    if J is not None:
        rt = nd.is_radical_transversal(s, J)
        out["radical_transversal"] = {
            "holds": rt.holds,
            "J_rad_is_ltr": rt.j_rad_is_ltr,
            "J_screen_invariant": rt.j_screen_invariant,
            "screen_transversal_holomorphic": rt.screen_perp_holomorphic,
        }
    return out


def _header(kind: str, ambient: LieAlgebraAmbient, name: str, w: Subspace) -> dict:
    return {
        "report": kind,
        "schema": SCHEMA_VERSION,
        "ambient": ambient.name,
        "ambient_dim": ambient.dim,
        "subspace": {"name": name, **subspace_doc(w)},
    }


def classify_report(ambient: LieAlgebraAmbient, name: str, w: Subspace, which: str) -> dict:
    pair = ambient.norden
    deg = nd.classify_degeneracy(pair, w, which)
    out = _header("classify", ambient, name, w)
    out["metric"] = which
    out["signature"] = list(la.signature(la.restrict_form(pair.metric(which), w)))
    out["degeneracy"] = _degeneracy_doc(deg)
    out["holomorphic"] = pair.J.is_invariant(w)
    out["subalgebra"] = ambient.is_subalgebra(w)
    if deg.degenerate:
        split = nd.radical_transversal_splitting(pair, w, which)
        out["radical_transversal"] = split is not None
        out["complex_type"] = None
    else:
        out["radical_transversal"] = None
        out["complex_type"] = _complex_doc(nd.classify_complex_type(pair, w, which))
    out["ok"] = True
    return out


def split_report(
    ambient: LieAlgebraAmbient, name: str, w: Subspace, which: str, radical_transversal: bool
) -> dict:
    pair = ambient.norden
    if radical_transversal:
        s = nd.radical_transversal_splitting(pair, w, which)
        if s is None:
            raise PreconditionError("subspace is not radical transversal for this metric")
    else:
        s = nd.build_lightlike_splitting(pair, w, which)
    out = _header("split", ambient, name, w)
    out["metric"] = which
    out["splitting"] = split_doc(s, pair.J)
    out["ok"] = s.valid
    return out


def _side_doc(side: nd.SideReport, J) -> dict:
    return {
        "degeneracy": _degeneracy_doc(side.degeneracy),
        "complex_type": _complex_doc(side.complex_type),
        "radical_transversal": side.radical_transversal,
        "splitting": None if side.split is None else split_doc(side.split, J),
    }


def cross_report(ambient: LieAlgebraAmbient, name: str, w: Subspace) -> dict:
    pair = ambient.norden
    rep = nd.cross_classify(pair, w)
    out = _header("cross", ambient, name, w)
    out["g"] = _side_doc(rep.g, pair.J)
    out["gtilde"] = _side_doc(rep.gtilde, pair.J)
    out["asserted"] = list(rep.asserted)
    frames = {}
    ok = True
    for side in (rep.g, rep.gtilde):
        ct = side.complex_type
        if ct is not None and ct.kind in ("cr", "generic", "totally_real", "lagrangian"):
            checks = nd.cr_structure_checks(pair, w, side.metric)
            frames[side.metric] = dict(sorted(checks.items()))
            ok = ok and all(checks.values())
    out["cr_frames"] = frames
    out["ok"] = ok
    return out


def _kaehler_doc(rep: lie.KaehlerReport) -> dict:
    return {"kaehler": rep.kaehler, "checks": ledger_doc(rep.checks)}


def verify_report(ambient: LieAlgebraAmbient, name: str, w: Subspace) -> dict:
    """Ambient identities always; submanifold suites when ``w`` is a totally real subalgebra."""
    out = _header("verify", ambient, name, w)
    ambient_ledger = {**lie.structure_checks(ambient), **lie.bridge_checks(ambient)}
    kr = ambient.kaehler_report
    out["ambient_checks"] = ledger_doc(ambient_ledger)
    out["kaehler"] = _kaehler_doc(kr)
    out["j_bi_invariant"] = lie.j_bi_invariant(ambient)
    ok = rs.all_passed(ambient_ledger) and (not kr.kaehler or kr.passed)
    try:
        setting = sm.totally_real_setting(ambient, w)
    except PreconditionError as exc:
        out["submanifold"] = {"skipped": str(exc)}
        out["ok"] = ok
        return out
    data = sm.gauss_weingarten(setting)
    ids = sm.identity_suite(data)
    ot = sm.otsuki_report(data)
    sub = {"identities": ledger_doc(ids), "otsuki": {**vars(ot), "verdict": ot.verdict}}
    ok = ok and rs.all_passed(ids)
    if kr.kaehler:
        geo = sm.geodesic_report(data)
        sub["geodesic"] = {"conditions": geo.conditions, "totally_geodesic": geo.verdict}
        curv = sm.curvature_suite(setting)
        sub["curvature"] = {"residuals": ledger_doc(curv.residuals), "flatness": curv.flatness}
        ok = ok and curv.passed
    else:
        sub["geodesic"] = {"skipped": "ambient is not Kaehler"}
        sub["curvature"] = {"skipped": "ambient is not Kaehler"}
    out["submanifold"] = sub
    out["ok"] = ok
    return out


def catalog_report(entry, export_path: str | None) -> dict:
    golden = entry.verify_golden()
    return {
        "report": "catalog",
        "schema": SCHEMA_VERSION,
        "ambient": entry.name,
        "ambient_dim": entry.ambient.dim,
        "subspaces": {k: subspace_doc(v) for k, v in sorted(entry.named_subspaces.items())},
        "golden_facts": {
            f.key: {"statement": f.statement, "holds": golden[f.key]} for f in entry.expected
        },
        "exported_to": export_path,
        "ok": all(golden.values()),
    }


# --------------------------------------------------------------------------
# rendering
# --------------------------------------------------------------------------


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return format_scalar(x)


def render_machine(doc: dict) -> str:
    return json.dumps(_plain(doc), indent=2, sort_keys=True) + "\n"


def _is_scalar_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _text_lines(x, indent: int) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(x, dict):
        for k in sorted(x):
            v = x[k]
            if isinstance(v, dict) and v:
                lines.append(f"{pad}{k}:")
                lines += _text_lines(v, indent + 1)
            elif isinstance(v, list) and v and not _is_scalar_list(v):
                lines.append(f"{pad}{k}:")
                lines += _text_lines(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_atom(v)}")
    elif isinstance(x, list):
        for v in x:
            if isinstance(v, (dict, list)) and v and not _is_scalar_list(v):
                lines.append(f"{pad}-")
                lines += _text_lines(v, indent + 1)
            else:
                lines.append(f"{pad}- {_atom(v)}")
    return lines


def _atom(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[" + ", ".join(_atom(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return str(v)


def render_text(doc: dict) -> str:
    return "\n".join(_text_lines(_plain(doc), 0)) + "\n"


def render(doc: dict, fmt: str) -> str:
    return render_machine(doc) if fmt == "machine" else render_text(doc)
