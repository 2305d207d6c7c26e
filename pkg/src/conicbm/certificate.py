"""Certificate JSON: building, serialising and re-verifying."""

from __future__ import annotations

import json
from typing import Any, Optional

from .brauer import ConicBundle
from .construct import (
    ConstructionParams,
    assemble,
    params_from_g,
    smallest_p_report,
    verify_lemma_f,
    verify_theorem,
)
from .localeval import CLOSED_FORM, DEFAULT_MAX_DEPTH, DiskEngineInconclusive, LemmaViolation
from .polyarith import IntPoly

VERSION = "1"
FIELDS = (
    "version",
    "n",
    "p",
    "q",
    "psi_image",
    "g_coeffs",
    "lemma_checks",
    "place_images",
    "verdict",
    "theorem_checks",
    "smallest_p_report",
    "status",
)

VERIFIED, FALSIFIED, INCONCLUSIVE = "verified", "falsified", "inconclusive"
EXIT_CODES = {VERIFIED: 0, FALSIFIED: 1, INCONCLUSIVE: 2}
EXIT_IO = 3


class CertificateFormatError(ValueError):
    pass


def build_certificate(params: ConstructionParams, max_depth: int = DEFAULT_MAX_DEPTH) -> dict:
    n, p, q = params.n, params.p, params.q
    X: ConicBundle = assemble(params)
    lemma = verify_lemma_f(X, params)
    cert: dict[str, Any] = {
        "version": VERSION,
        "n": n,
        "p": p,
        "q": q,
        "psi_image": sorted(set(params.psi)),
        "g_coeffs": [str(c) for c in params.g.coeffs],
        "lemma_checks": lemma,
        "place_images": [],
        "verdict": None,
        "theorem_checks": None,
        "smallest_p_report": smallest_p_report(n, q, p),
    }
    status = VERIFIED if all(part["pass"] for part in lemma.values()) else FALSIFIED
    try:
        thm = verify_theorem(X, params, max_depth)
    except DiskEngineInconclusive as exc:
        cert["theorem_checks"] = {"error": str(exc)}
        status = INCONCLUSIVE if status == VERIFIED else status
    except (LemmaViolation, AssertionError, ValueError) as exc:
        cert["theorem_checks"] = {"error": str(exc)}
        status = FALSIFIED
    else:
        cert["place_images"] = [
            {
                "place": str(im.place),
                "method": im.method,
                "vectors": im.sorted_vectors(),
                "depth_used": im.depth_used,
            }
            for im in thm.images
        ] + [{"place": "other", "method": CLOSED_FORM, "vectors": [0], "depth_used": 0}]
        v = thm.verdict
        cert["verdict"] = {
            "obstructed": v.obstructed,
            "min_generators": v.min_generators,
            "full_group_required": v.full_group_required,
            "disjoint_subspaces": [list(b) for b in v.disjoint_subspaces],
            "nontrivial_places": [str(pl) for pl in v.nontrivial_places],
        }
        cert["theorem_checks"] = thm.checks
        ok = (
            thm.checks["part1_local_solubility"]
            and thm.checks["part2_trivial_elsewhere"]
            and thm.checks["part3_Sp_full"]
            and thm.checks["cross_checks_pass"]
            and thm.checks["no_proper_subgroup_obstructs"]
            and v.min_generators == n
        )
        if not ok:
            status = FALSIFIED
    cert["status"] = status
    return {k: cert[k] for k in FIELDS}


def dumps(cert: dict) -> str:
    return json.dumps(cert, indent=1, ensure_ascii=True) + "\n"


def _require_int(data: dict, key: str) -> int:
    val = data.get(key)
    if isinstance(val, bool) or not isinstance(val, int):
        raise CertificateFormatError(f"field {key!r} must be an integer")
    return val


def parse_certificate(text: str) -> tuple[dict, ConstructionParams]:
    """Decode JSON and recover (n, q, p, g); raises CertificateFormatError."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise CertificateFormatError("certificate must be a JSON object")
    missing = [k for k in FIELDS if k not in data]
    if missing:
        raise CertificateFormatError(f"missing fields: {', '.join(missing)}")
    n, p, q = (_require_int(data, k) for k in ("n", "p", "q"))
    if not 2 <= n <= 8:
        raise CertificateFormatError(f"n = {n} outside the supported range 2..8")
    coeffs = data["g_coeffs"]
    if not isinstance(coeffs, list) or not coeffs:
        raise CertificateFormatError("g_coeffs must be a nonempty list")
    try:
        g = IntPoly(int(c) for c in coeffs)
    except (TypeError, ValueError) as exc:
        raise CertificateFormatError(f"bad g coefficient: {exc}") from exc
    if p < 3 or q < 3:
        raise CertificateFormatError("p and q must be odd primes")
    return data, params_from_g(n, q, p, g)


def _diff(a: Any, b: Any, path: str, out: list[str]) -> None:
    if type(a) is not type(b):
        out.append(path)
    elif isinstance(a, dict):
        if list(a) != list(b):
            out.append(path)
        else:
            for k in a:
                _diff(a[k], b[k], f"{path}.{k}", out)
    elif isinstance(a, list):
        if len(a) != len(b):
            out.append(path)
        else:
            for i, (x, y) in enumerate(zip(a, b)):
                _diff(x, y, f"{path}[{i}]", out)
    elif a != b:
        out.append(path)


def verify_certificate(
    text: str, max_depth: int = DEFAULT_MAX_DEPTH
) -> tuple[str, list[str], Optional[dict]]:
    """(status, mismatched field paths, recomputed certificate).

    Every field is recomputed from n, p, q and the stored g; the stored
    certificate must match bit for bit and the recomputation must verify.
    """
    stored, params = parse_certificate(text)
    try:
        fresh = build_certificate(params, max_depth)
    except (ValueError, AssertionError) as exc:
        return FALSIFIED, [f"recomputation failed: {exc}"], None
    mismatches: list[str] = []
    # round-trip through JSON so tuples and key types compare like the stored file
    fresh_json = json.loads(dumps(fresh))
    _diff(stored, fresh_json, "$", mismatches)
    if mismatches:
        return FALSIFIED, mismatches, fresh
    return fresh["status"], [], fresh
