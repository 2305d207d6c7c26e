"""Command line: conicbm {construct, verify, local-image, hilbert, sumset}.

Exit codes: 0 verified, 1 falsified, 2 inconclusive, 3 I/O, parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .arith import Place
from .certificate import (
    EXIT_CODES,
    EXIT_IO,
    INCONCLUSIVE,
    CertificateFormatError,
    build_certificate,
    dumps,
    parse_certificate,
    verify_certificate,
)
from .construct import ConstructionError, assemble, build_params
from .hilbert import hilbert_symbol, inv, relevant_places
from .localeval import DEFAULT_MAX_DEPTH, DiskEngineInconclusive, local_image, local_image_enumerate_p
from .sumset import (
    MAX_VERDICT_DIM,
    F2Subset,
    bitstring,
    independent_transversal,
    minkowski_sum,
    obstruction_verdict,
    sharp_example,
)

MAX_SHARP_DIM = 16


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2, which means "inconclusive" here
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_IO)


def _rational(text: str) -> Fraction:
    try:
        x = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text}") from exc
    if x == 0:
        raise argparse.ArgumentTypeError("arguments must be nonzero")
    return x


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_construct(args) -> int:
    if not 2 <= args.n <= MAX_VERDICT_DIM:
        raise UsageError(f"n must satisfy 2 <= n <= {MAX_VERDICT_DIM}")
    try:
        params = build_params(args.n, args.q, args.p, args.search_limit)
    except ConstructionError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_CODES["falsified"]
    cert = build_certificate(params, args.max_depth)
    text = dumps(cert)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    v = cert["verdict"] or {}
    Sp = next((im for im in cert["place_images"] if im["place"] == str(params.p)), None)
    print(
        f"n={params.n} q={params.q} p={params.p} status={cert['status']} "
        f"#S_p={len(Sp['vectors']) if Sp else '-'} min_generators={v.get('min_generators')}",
        file=sys.stderr,
    )
    return EXIT_CODES[cert["status"]]


def cmd_verify(args) -> int:
    status, mismatches, _ = verify_certificate(_read(args.cert), args.max_depth)
    for m in mismatches[:20]:
        print(f"mismatch: {m}")
    if len(mismatches) > 20:
        print(f"... {len(mismatches) - 20} more")
    print(status)
    return EXIT_CODES[status]


def cmd_local_image(args) -> int:
    _, params = parse_certificate(_read(args.cert))
    X = assemble(params)
    v = Place.parse(args.place)
    try:
        if v.p == params.p:
            im = local_image_enumerate_p(X, params.p)
        else:
            im = local_image(X, v, args.max_depth)
    except DiskEngineInconclusive as exc:
        print(str(exc))
        return EXIT_CODES[INCONCLUSIVE]
    print(f"place {im.place}: method {im.method}, depth {im.depth_used}, {len(im.vectors)} vectors")
    for vec in im.sorted_vectors():
        print(bitstring(vec, params.n))
    return 0


def cmd_hilbert(args) -> int:
    a, b = args.a, args.b
    if args.place is not None:
        v = Place.parse(args.place)
        print(f"({a}, {b})_{v} = {hilbert_symbol(a, b, v):+d}  inv = {inv(a, b, v)}")
        return 0
    total = 0
    for v in relevant_places(a, b):
        h = inv(a, b, v)
        total += h.bit
        print(f"{str(v):>8}  {hilbert_symbol(a, b, v):+d}  {h}")
    print(f"{'sum':>8}      {'0' if total % 2 == 0 else '1/2'}")
    return 0 if total % 2 == 0 else EXIT_CODES["falsified"]


def _parse_vector(x, n: int) -> int:
    if isinstance(x, bool):
        raise CertificateFormatError("vectors must be integers or bit strings")
    if isinstance(x, int):
        return x
    if isinstance(x, str) and len(x) == n and set(x) <= {"0", "1"}:
        return sum(1 << i for i, ch in enumerate(x) if ch == "1")
    raise CertificateFormatError(f"bad vector {x!r}")


def _load_sets(path: str) -> tuple[int, list[F2Subset], Optional[F2Subset]]:
    try:
        data = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict) or not isinstance(data.get("n"), int):
        raise CertificateFormatError("expected an object with integer field 'n'")
    n = data["n"]
    try:
        sets = [F2Subset(n, (_parse_vector(x, n) for x in s)) for s in data.get("sets", [])]
        S = F2Subset(n, (_parse_vector(x, n) for x in data["S"])) if "S" in data else None
    except (TypeError, ValueError) as exc:
        raise CertificateFormatError(str(exc)) from exc
    return n, sets, S


def cmd_sumset(args) -> int:
    if args.sumset_cmd == "sharp-example":
        if not 1 <= args.n <= MAX_SHARP_DIM:
            raise UsageError(f"sharp-example needs 1 <= n <= {MAX_SHARP_DIM}")
        sets, v = sharp_example(args.n)
        print(f"t = {len(sets)} copies of {{0, e_1, ..., e_{args.n}}}")
        if args.n <= 6:
            for s in sets:
                print(" ".join(bitstring(x, args.n) for x in s.sorted()))
        print(f"missing vector {bitstring(v, args.n)}")
        return 0
    n, sets, S = _load_sets(args.input)
    if args.sumset_cmd == "verdict":
        if n > MAX_VERDICT_DIM:
            raise UsageError(f"verdict needs n <= {MAX_VERDICT_DIM}")
        if S is None:
            if not sets:
                raise CertificateFormatError("need 'S' or a nonempty 'sets'")
            S = minkowski_sum(sets, n)
        rep = obstruction_verdict(S)
        print(f"S = {{{', '.join(bitstring(x, n) for x in S.sorted())}}}")
        print(f"obstructed: {rep.obstructed}")
        print(f"disjoint nontrivial subspaces: {len(rep.disjoint_subspaces)}")
        for basis in rep.disjoint_subspaces:
            print("  <" + ", ".join(bitstring(x, n) for x in basis) + ">")
        print(f"full group required: {rep.full_group_required}")
        print(f"min generators: {rep.min_generators}")
        return 0
    if not sets:
        raise CertificateFormatError("need a nonempty 'sets'")
    tr = independent_transversal(sets)
    print("none" if tr is None else "(" + ", ".join(bitstring(x, n) for x in tr) + ")")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="conicbm", description="Brauer-Manin obstruction certificates for conic bundles")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build and verify the explicit conic bundle")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--q", type=int)
    c.add_argument("--p", type=int)
    c.add_argument("--search-limit", type=int, default=10000)
    c.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    c.add_argument("--out", default="-")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="recompute every field of a certificate")
    v.add_argument("cert")
    v.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    v.set_defaults(func=cmd_verify)

    li = sub.add_parser("local-image", help="print S_v for one place")
    li.add_argument("cert")
    li.add_argument("--place", required=True)
    li.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    li.set_defaults(func=cmd_local_image)

    h = sub.add_parser("hilbert", help="Hilbert symbol or product-formula table")
    h.add_argument("a", type=_rational)
    h.add_argument("b", type=_rational)
    h.add_argument("--place")
    h.set_defaults(func=cmd_hilbert)

    s = sub.add_parser("sumset", help="F_2^n sumset tools")
    ssub = s.add_subparsers(dest="sumset_cmd", required=True, parser_class=_Parser)
    se = ssub.add_parser("sharp-example")
    se.add_argument("--n", type=int, required=True)
    for name in ("verdict", "transversal"):
        sp = ssub.add_parser(name)
        sp.add_argument("--input", required=True)
    s.set_defaults(func=cmd_sumset)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help (0) or a usage error (3)
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
