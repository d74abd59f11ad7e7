"""Command-line front end: ``umpspan <subcommand> ...``.

Exit codes: 0 success, 1 a requested check failed, 2 usage error,
3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import combinatorics as comb
from . import ch_relations as chr_
from . import span_character as sc
from . import tables
from .errors import ResourceCapExceeded
from .trace_param import dump_table

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

THREADS_ENV = "UMPSPAN_THREADS"


class UsageError(Exception):
    pass


@dataclass
class Result:
    """What a subcommand produced: text per format, plus whether its checks passed."""

    csv_rows: list[list] = field(default_factory=list)
    text: str = ""
    payload: dict = field(default_factory=dict)
    ok: bool = True


# -- argument helpers ---------------------------------------------------------------


def parse_range(s: str) -> list[int]:
    """'8..14' -> [8, ..., 14]; '8' -> [8]; '6,8,10' -> [6, 8, 10]."""
    try:
        if ".." in s:
            lo, hi = s.split("..", 1)
            lo_i, hi_i = int(lo), int(hi)
            if hi_i < lo_i:
                raise ValueError
            return list(range(lo_i, hi_i + 1))
        return [int(x) for x in s.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {s!r}; use N, N..M or N,M,...") from None


def parse_weight(s: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in s.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weight {s!r}; use e.g. 3,3,2") from None


def positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {s}")
    return v


def resolve_threads(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            v = int(env)
        except ValueError:
            raise UsageError(f"{THREADS_ENV}={env!r} is not an integer") from None
        if v < 1:
            raise UsageError(f"{THREADS_ENV} must be >= 1")
        return v
    return 1


def _csv_text(rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


# -- subcommands -----------------------------------------------------------------


def cmd_count(a) -> Result:
    n, d = a.n, a.d
    lam = _weight_arg(a, n, d)
    # full enumeration is only attempted when it stays small
    feasible = n ** d <= 2_000_000
    if lam is None:
        neck, brac = comb.count_necklaces(n, d), comb.count_bracelets(n, d)
        if feasible:
            check = len(comb.enumerate_necklaces(n, d)) == neck and len(comb.enumerate_bracelets(n, d)) == brac
        header = ["n", "d", "necklaces", "bracelets", "enumeration_check"]
        row = [n, d, neck, brac]
    else:
        neck = comb.count_necklaces_weight(n, d, lam)
        brac = comb.count_bracelets_weight_binary(d, lam[1]) if n == 2 else None
        if feasible:
            enum_b = len(comb.enumerate_bracelets(n, d, lam))
            check = len(comb.enumerate_necklaces(n, d, lam)) == neck and (brac is None or enum_b == brac)
            if brac is None:
                brac = enum_b
        header = ["n", "d", "weight", "necklaces", "bracelets", "enumeration_check"]
        row = [n, d, " ".join(map(str, lam)), neck, "" if brac is None else brac]
    flag = ("pass" if check else "FAIL") if feasible else "skipped"
    row.append(flag)
    res = Result(csv_rows=[header, row], ok=flag != "FAIL")
    res.payload = {"result": dict(zip(header, row))}
    res.text = f"necklaces {neck}, bracelets {brac} (enumeration check: {flag})\n"
    return res


def _weight_arg(a, n: int, d: int) -> tuple[int, ...] | None:
    if a.w is not None and a.weight is not None:
        raise UsageError("give either --w or --weight, not both")
    if a.w is not None:
        if n != 2:
            raise UsageError("--w is the number of 1s and needs --n 2; use --weight for larger alphabets")
        if not 0 <= a.w <= d:
            raise UsageError(f"--w must lie in 0..{d}")
        return comb.binary_weight(d, a.w)
    if a.weight is not None:
        lam = a.weight
        if len(lam) != n or sum(lam) != d or min(lam) < 0:
            raise UsageError(f"--weight {a.weight} must have {n} non-negative entries summing to {d}")
        return lam
    return None


def cmd_enumerate(a) -> Result:
    lam = _weight_arg(a, a.n, a.d)
    fn = comb.enumerate_bracelets if a.kind == "bracelet" else comb.enumerate_necklaces
    words = [comb.word_str(w) for w in fn(a.n, a.d, lam)]
    res = Result(csv_rows=[[a.kind]] + [[w] for w in words])
    res.payload = {"kind": a.kind, "count": len(words), "words": words}
    res.text = "".join(w + "\n" for w in words)
    return res


def cmd_character(a) -> Result:
    m, n = a.m, a.n
    src = a.source
    if (m, n) != (2, 2) and src == "trace-param":
        raise UsageError("--source trace-param only exists for m = n = 2")
    if a.check:
        for d in a.d:
            if (m, n) != (2, 2):
                raise UsageError("--check compares against reference tables for m = n = 2 only")
            if d not in tables.SPAN_DIMS and d >= min(tables.SPAN_DIMS):
                raise UsageError(f"no reference values for d={d}")
    res = Result()
    rows: list[list] = []
    payload_rows = []
    for d in a.d:
        ch = sc.character_of_span(m, n, d, source=src, mode=a.mode, prime_bits=a.prime_bits, threads=a.threads)
        if n == 2:
            top = d if a.all_weights else tables.span_row_length(d) - 1
            if a.max_weight is not None:
                top = min(top, a.max_weight)
            dims = [ch.scalar(w) for w in range(top + 1)]
            res.text += f"{','.join(map(str, dims))} | total {ch.total} | ambient {ch.ambient_total}\n"
            entry = {"d": d, "D": dims, "total": ch.total, "ambient": ch.ambient_total}
        else:
            if not rows:
                rows.append(["d", "weight", "dim", "ambient"])
            for lam in sorted(ch.dims):
                rows.append([d, " ".join(map(str, lam)), ch.dims[lam], ch.ambient[lam]])
            res.text += f"d={d} | total {ch.total} | ambient {ch.ambient_total}\n"
            entry = {
                "d": d,
                "weights": {" ".join(map(str, lam)): ch.dims[lam] for lam in sorted(ch.dims)},
                "total": ch.total,
                "ambient": ch.ambient_total,
            }
        if a.check:
            entry["check"] = _check_span(m, n, d, ch)
            res.ok &= entry["check"] == "pass"
            res.text = res.text.rstrip("\n") + f" | check {entry['check']}\n"
        payload_rows.append(entry)
    if n == 2:
        rows = _padded_rows(payload_rows, 0, ["total", "ambient"])
    res.csv_rows = rows
    res.payload = {"rows": payload_rows}
    return res


def _padded_rows(entries: list[dict], first: int, tail: list[str]) -> list[list]:
    # one shared header; shorter rows get blank D cells so columns stay aligned
    width = max(len(e["D"]) for e in entries)
    rows = [["d"] + [f"D_{w}" for w in range(first, first + width)] + tail]
    for e in entries:
        rows.append([e["d"]] + e["D"] + [""] * (width - len(e["D"])) + [e[t] for t in tail])
    return rows


def _check_span(m: int, n: int, d: int, ch: sc.Character) -> str:
    if d in tables.SPAN_DIMS:
        D, total, ambient = tables.SPAN_DIMS[d]
        got = [ch.scalar(w) for w in range(len(D))]
        good = got == D and ch.total == total and ch.ambient_total == ambient
    elif d < min(tables.SPAN_DIMS):
        # below the first tabulated length the span fills the ambient space
        good = ch.total == comb.count_bracelets(2, d)
    return "pass" if good else "FAIL"


def cmd_ideal(a) -> Result:
    k = a.k
    if a.check:
        missing = [d for d in a.d if d not in tables.IDEAL_TABLES.get(k, {})]
        if missing:
            raise UsageError(f"no reference values for k={k}, d={missing}")
    res = Result()
    entries = []
    for d in a.d:
        last = k * d if a.all_weights else tables.ideal_last_weight(d, k)
        if a.max_weight is not None:
            last = min(last, a.max_weight)
        first = 0 if a.all_weights else tables.IDEAL_FIRST_WEIGHT
        ch = sc.ideal_character(d, k, a.mode, a.prime_bits, a.threads, max_weight=last)
        dims = [ch.scalar(w) for w in range(first, last + 1)]
        entry = {"d": d, "k": k, "first_weight": first, "D": dims}
        line = ",".join(map(str, dims))
        if a.check:
            ref = tables.IDEAL_TABLES[k][d]
            lo = tables.IDEAL_FIRST_WEIGHT
            got = [ch.scalar(w) for w in range(lo, lo + len(ref))]
            entry["check"] = "pass" if got == ref else "FAIL"
            res.ok &= got == ref
            line += f" | check {entry['check']}"
        res.text += line + "\n"
        entries.append(entry)
    res.csv_rows = _padded_rows(entries, entries[0]["first_weight"], [])
    res.payload = {"rows": entries}
    return res


def cmd_verify_ch(a) -> Result:
    if a.preset == "example":
        rel = chr_.example_relation(0)
        m = 2
    else:
        if a.m is None:
            raise UsageError("verify-ch needs --m (or --preset example)")
        m = a.m
        rel = chr_.generate_ch_relation(m, a.ell if a.ell is not None else 0)
    mode = a.mode or ("symbolic" if m <= 2 else "randomized-numeric")
    a.mode = mode
    if a.ell is not None and a.preset != "example":
        cert = chr_.verify_relation_symbolic(rel, m, mode=mode, trials=a.trials)
    else:
        cert = chr_.ch_extend(rel, m, mode=mode, trials=a.trials)
    res = Result(ok=cert.valid)
    res.text = cert.summary() + "\n"
    res.csv_rows = [
        ["m", "ell", "terms", "identically_zero", "mode", "exponents_checked"],
        [m, "" if a.ell is None else a.ell, len(rel.terms), "yes" if cert.identically_zero else "no", mode,
         " ".join(map(str, cert.verified_exponents))],
    ]
    res.payload = {
        "relation": rel.to_dict(certificate=mode),
        "identically_zero": cert.identically_zero,
        "exponents_checked": cert.verified_exponents,
        "failing_k": cert.failing_k,
        "trials": cert.trials,
    }
    return res


def _preset(a) -> chr_.TraceRelation:
    if a.preset == "example-d8":
        return chr_.preset_example_d8()
    if a.preset == "ternary":
        return chr_.preset_ternary(a.m, a.ell)
    if a.preset == "binary-tail":
        return chr_.preset_binary_tail(a.m)
    raise UsageError(f"unknown preset {a.preset!r}")


def _relation_rows(rel: chr_.TraceRelation) -> list[list]:
    return [["coeff", "word"]] + [[str(c), w] for (c, _), w in zip(rel.expanded_terms(), rel.word_strings())]


def cmd_substitute(a) -> Result:
    rel = _preset(a)
    ambient = "dihedral" if a.preset == "example-d8" else "cyclic"
    res = Result(csv_rows=_relation_rows(rel))
    res.payload = {"preset": a.preset, "relation": rel.to_dict(ambient=ambient)}
    res.text = "\n".join(f"{c} * Tr({w})" for (c, _), w in zip(rel.expanded_terms(), rel.word_strings())) + "\n"
    return res


def cmd_certify(a) -> Result:
    preset = a.preset
    if preset is None:
        if a.d is None or a.d != 8:
            raise UsageError("without --preset only --d 8 (the example-d8 relation) is built in")
        preset = "example-d8"
        a.preset = preset
    rel = _preset(a)
    (d,) = rel.lengths() or {0}
    if a.d is not None and a.d != d:
        raise UsageError(f"preset {preset} has word length {d}, not {a.d}")
    n = rel.alphabet
    m = 2 if preset == "example-d8" else a.m
    ambient = a.ambient or ("dihedral" if (m, n) == (2, 2) and preset == "example-d8" else "cyclic")
    merged = chr_.merge_terms(rel, ambient)
    nontrivial = chr_.certify_nontrivial(rel, d, ambient=ambient, m=m)
    out = {
        "preset": preset,
        "d": d,
        "m": m,
        "ambient": ambient,
        "nontrivial": nontrivial,
        "relation": chr_.TraceRelation(n, tuple((c, w) for w, c in merged.items())).to_dict(ambient=ambient),
    }
    lines = [f"nontrivial ({ambient}): {'yes' if nontrivial else 'no'}"]
    ok = nontrivial
    weights = {sum(w) for w in merged} if n == 2 else set()
    if (m, n) == (2, 2) and ambient == "dihedral" and len(weights) == 1:
        (w,) = weights
        brs, kernel = chr_.kernel_of_weight(d, w)
        vec = [merged.get(b, Fraction(0)) for b in brs]
        spans = len(kernel) == 1 and _proportional(vec, kernel[0])
        out["kernel"] = {"weight": w, "bracelets": len(brs), "dimension": len(kernel), "spanned": spans}
        lines.append(f"kernel at (d,w)=({d},{w}): dimension {len(kernel)} of {len(brs)} bracelets, spanned: {'yes' if spans else 'no'}")
        ok &= spans
    res = Result(ok=ok, payload=out)
    res.text = "\n".join(lines) + "\n"
    res.csv_rows = [["preset", "d", "ambient", "nontrivial"], [preset, d, ambient, "yes" if nontrivial else "no"]]
    return res


def _proportional(u: list[Fraction], v: list[Fraction]) -> bool:
    if not any(u) or not any(v):
        return False
    i = next(i for i, x in enumerate(v) if x)
    r = u[i] / v[i]
    return all(x == r * y for x, y in zip(u, v))


def cmd_conjecture(a) -> Result:
    rows = [["d", "w", "computed", "predicted", "status"]]
    entries = []
    ok = True
    text = []
    for d in a.d:
        ch = sc.character_of_span(2, 2, d, mode=a.mode, prime_bits=a.prime_bits, threads=a.threads)
        for w in range(d // 2 + 1):
            got, pred = ch.scalar(w), sc.conjecture_dim(d, w)
            status = "MATCH" if got == pred else "MISMATCH"
            ok &= got == pred
            rows.append([d, w, got, pred, status])
            entries.append({"d": d, "w": w, "computed": got, "predicted": pred, "status": status})
        tot, ptot, bound = ch.total, sc.conjecture_total(d), sc.monomial_upper_bound(d)
        status = "MATCH" if tot == ptot else "MISMATCH"
        bstatus = "OK" if tot <= bound else "VIOLATED"
        ok &= tot == ptot and tot <= bound
        rows.append([d, "total", tot, ptot, status])
        rows.append([d, "bound", tot, bound, bstatus])
        entries.append({"d": d, "w": "total", "computed": tot, "predicted": ptot, "status": status})
        entries.append({"d": d, "w": "bound", "computed": tot, "predicted": bound, "status": bstatus})
        text.append(f"d={d}: total {tot} vs {ptot} {status}, bound {bound} {bstatus}")
    return Result(csv_rows=rows, payload={"rows": entries}, ok=ok, text="\n".join(text) + "\n")


def cmd_dump_trace_param(a) -> Result:
    fmt = "json" if a.format == "json" else "csv"
    if a.d > sc.DEFAULT_CAPS.max_d_trace_param:
        raise ResourceCapExceeded(f"d={a.d} exceeds trace-param cap {sc.DEFAULT_CAPS.max_d_trace_param}")
    res = Result()
    res.text = dump_table(a.d, fmt)
    res.raw = True  # type: ignore[attr-defined]
    return res


# -- parser ------------------------------------------------------------------------


def _add_common(s: argparse.ArgumentParser, fmt: str = "csv") -> None:
    s.add_argument("--format", choices=["csv", "json", "text"], default=fmt)
    s.add_argument("--out", help="write output here instead of stdout")
    s.add_argument("--threads", type=positive, default=None,
                   help=f"worker threads (default: ${THREADS_ENV} or 1)")
    s.add_argument("--no-timing", action="store_true", help="omit timing from JSON, for byte-stable output")


def _add_rank(s: argparse.ArgumentParser) -> None:
    s.add_argument("--mode", choices=["modular", "exact"], default="modular")
    s.add_argument("--prime-bits", type=positive, default=61)
    s.add_argument("--max-weight", type=nonneg, default=None)
    s.add_argument("--all-weights", action="store_true")
    s.add_argument("--check", action="store_true", help="compare against the built-in reference tables")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="umpspan", description="Linear spans and trace relations of uniform MPS.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("count", help="necklace and bracelet counts")
    s.add_argument("--n", type=positive, required=True)
    s.add_argument("--d", type=nonneg, required=True)
    s.add_argument("--w", type=nonneg, help="number of 1s (binary alphabet)")
    s.add_argument("--weight", type=parse_weight, help="full weight vector, e.g. 3,3,2")
    s.set_defaults(func=cmd_count)
    _add_common(s)

    s = sub.add_parser("enumerate", help="list canonical necklaces or bracelets")
    s.add_argument("--n", type=positive, required=True)
    s.add_argument("--d", type=nonneg, required=True)
    s.add_argument("--w", type=nonneg)
    s.add_argument("--weight", type=parse_weight)
    s.add_argument("--kind", choices=["bracelet", "necklace"], default="bracelet")
    s.set_defaults(func=cmd_enumerate)
    _add_common(s, "json")

    s = sub.add_parser("character", help="weight dimensions of the span")
    s.add_argument("--d", type=parse_range, required=True, help="length or range, e.g. 8..14")
    s.add_argument("--m", type=positive, default=2)
    s.add_argument("--n", type=positive, default=2)
    s.add_argument("--source", choices=["trace-param", "generic"], default=None)
    s.set_defaults(func=cmd_character)
    _add_common(s)
    _add_rank(s)

    s = sub.add_parser("ideal", help="degree-k ideal character")
    s.add_argument("--d", type=parse_range, required=True)
    s.add_argument("--k", type=positive, default=2)
    s.set_defaults(func=cmd_ideal)
    _add_common(s)
    _add_rank(s)

    s = sub.add_parser("verify-ch", help="check a Cayley-Hamilton trace relation")
    s.add_argument("--m", type=positive)
    s.add_argument("--ell", type=nonneg, help="fixed trailing exponent; omitted means check every exponent")
    s.add_argument("--preset", choices=["example"])
    s.add_argument("--mode", choices=["symbolic", "randomized-numeric"], default=None)
    s.add_argument("--trials", type=positive, default=chr_.DEFAULT_TRIALS)
    s.set_defaults(func=cmd_verify_ch)
    _add_common(s, "text")

    for name, fn, helptext in (
        ("substitute", cmd_substitute, "build a concrete relation from a preset substitution"),
        ("certify", cmd_certify, "certify a relation is nontrivial and vanishes on the span"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--preset", choices=sorted(chr_.PRESETS), default=None if name == "certify" else "example-d8")
        s.add_argument("--m", type=positive, default=2)
        s.add_argument("--ell", type=nonneg, default=None)
        if name == "certify":
            s.add_argument("--d", type=positive, default=None)
            s.add_argument("--ambient", choices=["cyclic", "dihedral"], default=None)
        s.set_defaults(func=fn)
        _add_common(s, "json" if name == "substitute" else "text")

    s = sub.add_parser("conjecture", help="computed vs conjectured dimensions")
    s.add_argument("--d", type=parse_range, required=True)
    s.set_defaults(func=cmd_conjecture)
    _add_common(s)
    _add_rank(s)

    s = sub.add_parser("dump-trace-param", help="bracelet -> trace polynomial table")
    s.add_argument("--d", type=positive, required=True)
    s.set_defaults(func=cmd_dump_trace_param)
    _add_common(s, "json")
    return p


_PARAM_KEYS = ("m", "n", "d", "k", "w", "weight", "ell", "preset", "kind", "source", "ambient", "max_weight",
               "all_weights", "prime_bits", "trials")


def _params(a) -> dict:
    out = {}
    for key in _PARAM_KEYS:
        if hasattr(a, key):
            v = getattr(a, key)
            out[key] = list(v) if isinstance(v, tuple) else v
    return out


def render(a, res: Result, elapsed: float) -> str:
    if getattr(res, "raw", False):
        return res.text
    if a.format == "csv":
        return _csv_text(res.csv_rows)
    if a.format == "text":
        return res.text
    doc = {
        "command": a.command,
        "parameters": _params(a),
        "mode": getattr(a, "mode", None),
        "threads": a.threads,
        **res.payload,
        "ok": res.ok,
    }
    if not a.no_timing:
        doc["timing_seconds"] = round(elapsed, 6)
    return json.dumps(doc, indent=1) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    func: Callable[[argparse.Namespace], Result] = a.func
    try:
        a.threads = resolve_threads(a.threads)
        t0 = time.perf_counter()
        res = func(a)
        elapsed = time.perf_counter() - t0
    except UsageError as e:
        print(f"umpspan {a.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapExceeded as e:
        print(f"umpspan {a.command}: resource cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as e:
        print(f"umpspan {a.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    text = render(a, res, elapsed)
    if a.out:
        with open(a.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if res.ok else EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
