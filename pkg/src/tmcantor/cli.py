"""Command-line front end: ``python3 -m tmcantor <command> ...``.

Every command prints one JSON document (or CSV with ``--format csv``). Exact
rationals are written as ``"p/q"`` strings; enclosures carry their radius.
Signed digit sequences are comma separated, with an optional ``pre|period`` split;
pass leading negative digits as ``--period=-1,1``.

Exit codes: 0 success, 1 domain error, 2 undecided at the requested precision.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .bases import (
    BaseLocation, critical_base_qc, generalized_golden_ratio, komornik_loreti_base,
    ladder_base, locate_base, omega_word,
)
from .dimension import (
    LogLinearValue, NotUniqueError, block_mixing_sequence, dimension_estimate,
    dimension_of_periodic, dimension_set, interpolation_blocks, is_self_similar,
    pm_zero_sequence, self_similar_family,
)
from .expansions import UNDECIDED, ep_value, is_unique_expansion
from .frequency import block_density, difference_digit_density, empirical_block_density
from .mirror import BudgetExceeded, MirrorSeed, kl_digits, kl_signed_prefix, lambda_prefix, mirror_prefix
from .reals import PrecisionReal, Undecidable, default_tolerance
from .words import EventuallyPeriodicSeq, Word, format_digits, reflect

EXIT_OK, EXIT_DOMAIN, EXIT_UNDECIDED = 0, 1, 2


@dataclass
class CommandResult:
    command: str
    status: str = "ok"
    payload: Dict[str, Any] = field(default_factory=dict)
    provenance: Dict[str, str] = field(default_factory=dict)
    precision: Dict[str, Any] = field(default_factory=dict)
    exit_code: int = EXIT_OK
    fmt: str = "json"

    def as_dict(self) -> Dict[str, Any]:
        return {"command": self.command, "status": self.status, "payload": self.payload,
                "provenance": self.provenance, "precision": self.precision}


# --- serialisation --------------------------------------------------------------

def _radius_text(r: Fraction) -> str:
    if r == 0:
        return "0"
    # round up so the printed radius still encloses the value
    s = f"{float(r):.3e}"
    return s if Fraction(s) >= r else f"{float(r) * (1 + 1e-3):.3e}"


def real_json(x: PrecisionReal, digits: int = 20) -> Dict[str, str]:
    out = {"value": x.format(digits), "radius": _radius_text(x.radius)}
    if x.is_exact:
        out["exact"] = str(x.center)
    return out


def loglinear_json(v: LogLinearValue, q: Optional[PrecisionReal] = None, q_text: str = "q") -> Dict[str, Any]:
    out: Dict[str, Any] = {"symbolic": v.render(q_text),
                           "coefficients": {str(p): str(c) for p, c in v.terms}}
    if v.constant:
        out["constant"] = str(v.constant)
    if q is not None:
        out["numeric"] = real_json(v.evaluate(q), 15)
    return out


def seq_text(s: EventuallyPeriodicSeq) -> str:
    per = format_digits(s.period)
    return f"{format_digits(s.preperiod)}|{per}" if s.preperiod else per


def _block_text(w: Word) -> str:
    return "".join(map(str, w.digits)) if w.max_digit <= 9 else format_digits(w.digits)


def location_json(loc: BaseLocation) -> Dict[str, Any]:
    return {"case": loc.case, "k": loc.k, "witnesses": [real_json(w) for w in loc.witnesses]}


# --- parsing helpers ------------------------------------------------------------

def _signed_digits(text: str):
    text = text.strip()
    if not text:
        return ()
    return tuple(int(t) for t in text.split(",") if t.strip())


def parse_seq(text: str, low: int, high: int) -> EventuallyPeriodicSeq:
    pre, per = text.split("|", 1) if "|" in text else ("", text)
    return EventuallyPeriodicSeq(_signed_digits(pre), _signed_digits(per), low, high)


def parse_base(text: str, max_digit: int, tol: Fraction) -> PrecisionReal:
    """A base given as ``5/2``, ``2.7``, ``qKL``, ``qc`` or ``q<k>`` (ladder)."""
    t = text.strip()
    if t.lower() == "qkl":
        return komornik_loreti_base(max_digit, tol)
    if t.lower() == "qc":
        if max_digit % 2:
            raise ValueError("q_c needs a symmetric alphabet (even M)")
        return critical_base_qc(max_digit // 2, tol)
    if t[:1] == "q" and t[1:].isdigit():
        return ladder_base(max_digit, int(t[1:]), tol)
    try:
        return PrecisionReal.exact(Fraction(t))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot read base {text!r}") from None


def _q_text(text: str) -> str:
    t = text.strip()
    if t.lower() in ("qkl", "qc") or t.startswith("q"):
        return {"qkl": "q_KL", "qc": "q_c"}.get(t.lower(), f"q_{t[1:]}")
    return t if "/" not in t else f"({t})"


def _alphabet(args):
    m1 = args.m1 if args.m1 is not None else args.m
    m2 = args.m2 if args.m2 is not None else args.m
    if m1 is None or m2 is None:
        raise ValueError("give --m or both --m1 and --m2")
    return m1, m2


def _sequence_arg(args, low: int, high: int) -> EventuallyPeriodicSeq:
    if args.seq is not None:
        return parse_seq(args.seq, low, high)
    if args.period is None:
        raise ValueError("give --seq or --period")
    return EventuallyPeriodicSeq(_signed_digits(args.preperiod or ""), _signed_digits(args.period), low, high)


# --- commands ---------------------------------------------------------------------

def cmd_freq(args, res: CommandResult):
    seed = MirrorSeed.parse(args.seed, args.max_digit)
    rows = []
    for text in args.block:
        delta = Word.parse(text, args.max_digit)
        d = block_density(delta, seed, args.n, args.budget)
        length = args.check_length or min(4 ** (d.n_used + 4) * len(seed), 1 << 16)
        length = max(length, len(delta))
        emp = empirical_block_density(delta, seed, length, args.budget)
        rows.append({"block": _block_text(delta), "reflected": _block_text(reflect(delta)),
                     "n": d.n_used, "N": d.N_count, "P": d.P_count, "value": str(d.value),
                     "empirical": str(emp), "empirical_length": length,
                     "empirical_error": f"{abs(float(emp - d.value)):.3e}"})
    res.payload = {"max_digit": args.max_digit, "seed": format_digits(seed.seed.digits), "rows": rows}
    if len(rows) == 1:
        res.payload["value"] = rows[0]["value"]
    if args.difference_digits:
        res.payload["difference_digits"] = {
            str(j): str(difference_digit_density(j, seed)) for j in range(-args.max_digit, args.max_digit + 1)}
        res.provenance["difference_digits"] = "2-blocks of the mirror sequence"
    res.provenance["value"] = "mirror density formula (P - N) / (6 * 4^n * l)"
    res.provenance["empirical"] = "direct count over a prefix (cross-check only)"


def cmd_prefix(args, res: CommandResult):
    if args.kind == "mirror":
        digits = mirror_prefix(MirrorSeed.parse(args.seed, args.max_digit), args.length, args.budget).digits
    elif args.kind == "lambda":
        digits = lambda_prefix(args.mu, args.length)
    elif args.kind == "kl-signed":
        m1, m2 = _alphabet(args)
        digits = kl_signed_prefix(m1, m2, args.length)
    else:
        digits = kl_digits(args.max_digit, args.length)
    res.payload = {"kind": args.kind, "length": len(digits), "digits": format_digits(digits)}
    res.provenance["digits"] = f"{args.kind} sequence"


def cmd_bases(args, res: CommandResult):
    M, tol = args.max_digit, args.tolerance
    rows = [{"name": "q1", "word": format_digits(omega_word(M, 1).digits),
             "value": real_json(generalized_golden_ratio(M, tol))}]
    for k in range(2, args.k + 1):
        rows.append({"name": f"q{k}", "word": format_digits(omega_word(M, k).digits),
                     "value": real_json(ladder_base(M, k, tol))})
    if not args.ladder_only:
        rows.append({"name": "qKL", "word": "", "value": real_json(komornik_loreti_base(M, tol))})
        if M % 2 == 0:
            rows.append({"name": "qc", "word": "", "value": real_json(critical_base_qc(M // 2, tol))})
    res.payload = {"max_digit": M, "rows": rows}
    if args.locate is not None:
        res.payload["locate"] = location_json(locate_base(parse_base(args.locate, M, tol), M, tol, args.max_k))
    res.provenance.update({
        "q1": "closed form (quadratic root or m + 1), certified",
        "qk": "root of sum omega_k,i q^-i = 1, bisection with exact sign checks",
        "qKL": "truncated series plus M q^-T / (q - 1) tail bound",
        "qc": "root of q^2 - (m + 2) q + 1",
    })


def cmd_unique(args, res: CommandResult):
    m1, m2 = _alphabet(args)
    s = _sequence_arg(args, -m2, m1)
    q = parse_base(args.q, m1 + m2, args.tolerance)
    v = is_unique_expansion(s, q, m1, m2, args.budget_digits)
    res.payload = {"sequence": seq_text(s), "q": real_json(q), "verdict": v.verdict,
                   "witness": list(v.witness) if v.witness else None, "budget": v.budget, "note": v.note}
    if q.is_exact and q.center > 1:
        res.payload["value"] = real_json(ep_value(s, q))
    res.provenance["verdict"] = "shifted tails against the quasi-greedy expansion of 1"
    if v.verdict == UNDECIDED:
        res.status, res.exit_code = "undecided", EXIT_UNDECIDED


def cmd_dim(args, res: CommandResult):
    m1, m2 = _alphabet(args)
    q = parse_base(args.q, m1 + m2, args.tolerance)
    if args.stream:
        horizon = args.horizon or 4**6
        est = dimension_estimate(iter(kl_signed_prefix(m1, m2, horizon)), q, m1, m2, horizon)
        res.payload = {"stream": "kl-signed", "horizon": horizon, "estimate": real_json(est.estimate, 15),
                       "window": list(est.window), "argmin": est.argmin,
                       "last": f"{est.trace[-1]:.12f}"}
        res.provenance["estimate"] = "infimum of running log-branch averages over the tail window (estimate only)"
        return
    s = _sequence_arg(args, -m2, m1)
    d = dimension_of_periodic(s, q, m1, m2)
    res.payload = {"sequence": seq_text(s), "q": real_json(q),
                   "dimension": loglinear_json(d, q, _q_text(args.q))}
    res.provenance["dimension"] = "period average of log n_j / log q (exact for eventually periodic unique expansions)"


def cmd_classify(args, res: CommandResult):
    m1, m2 = _alphabet(args)
    q = parse_base(args.q, m1 + m2, args.tolerance)
    qt = _q_text(args.q)
    ds = dimension_set(m1, m2, q, args.tolerance, args.max_k)
    res.payload = {"case": ds.case, "complete": ds.complete,
                   "values": [loglinear_json(v, q, qt) for v in ds.values],
                   "interval": [loglinear_json(v, q, qt) for v in ds.interval] if ds.interval else None,
                   "family_from": ds.family_from,
                   "location": location_json(ds.location) if ds.location else None,
                   "gap": loglinear_json(ds.gap, q, qt) if ds.gap else None,
                   "notes": list(ds.notes)}
    res.provenance["case"] = "position of q against q1, m + 1, the ladder q_k, q_KL and q_c"


def cmd_family(args, res: CommandResult):
    m, tol = args.m if args.m is not None else 1, args.tolerance
    if args.kind == "pm-zero":
        s = pm_zero_sequence(Fraction(args.lam), m)
        res.payload = {"lambda": str(Fraction(args.lam)), "seq": seq_text(s)}
        if args.q is not None:
            q = parse_base(args.q, 2 * m, tol)
            res.payload["self_similar"] = is_self_similar(s, m, q)
            res.payload["dimension"] = loglinear_json(dimension_of_periodic(s, q, m, m), q, _q_text(args.q))
        res.provenance["seq"] = "((1,-1)^a 0^b)^inf with zero density lambda"
    elif args.kind == "self-similar":
        q = parse_base(args.q or "qc", 2 * m, tol)
        fam = self_similar_family(m, q, args.mesh)
        res.payload = {"mesh": args.mesh, "rows": [
            {"lambda": str(Fraction(i, args.mesh)), "seq": seq_text(s),
             "dimension": loglinear_json(d, q, _q_text(args.q or "qc"))}
            for i, (s, d) in enumerate(fam)]}
        res.provenance["rows"] = "self-similar intersections, dimension lambda c2 + (1 - lambda) c1"
    else:
        if args.q is None:
            raise ValueError("blocks needs --q")
        q = parse_base(args.q, 2 * m, tol)
        b = interpolation_blocks(m, q, args.n)
        res.payload = {"n": b.n, "w1": format_digits(b.w1), "w2": format_digits(b.w2),
                       "zero_fraction_w1": str(b.d2_w1), "zero_fraction_w2": str(b.d2_w2)}
        if args.lam is not None:
            s = block_mixing_sequence(b, Fraction(args.lam), m)
            res.payload["seq"] = seq_text(s)
        res.provenance["w1"] = "subshift path b a_bar b_bar a"
        res.provenance["w2"] = "subshift path a_bar a"


# worked Thue-Morse table: (block, level n, published value). The published 1/24 for
# 00101 undercounts P: both 00101 and 11010 occur in tau_0..tau_15, giving 1/12.
_GOLDEN = (("0", 0, "1/2"), ("01", 1, "1/3"), ("00", 1, "1/6"), ("000", 1, "0"), ("001", 1, "1/6"),
           ("010", 1, "1/6"), ("011", 1, "1/6"), ("00101", 1, "1/24"))


def cmd_examples(args, res: CommandResult):
    seed = MirrorSeed.parse("0", 1)
    rows = []
    for text, n, published in _GOLDEN:
        delta = Word.parse(text, 1)
        d = block_density(delta, seed, n)
        rows.append({"block": text, "reflected": _block_text(reflect(delta)),
                     "n": n, "N": d.N_count, "P": d.P_count, "value": str(d.value),
                     "published": published, "agrees": str(d.value) == published})
    d10 = block_density(Word.parse("10", 1), seed, 1)
    diff = {str(j): str(difference_digit_density(j, seed)) for j in (-1, 0, 1)}
    res.payload = {"thue_morse_blocks": rows,
                   "difference_sequence": {"block": "10", "n": 1, "N": d10.N_count, "P": d10.P_count,
                                           "d01": str(block_density(Word.parse("01", 1), seed, 1).value),
                                           "d10": str(d10.value), "digit_densities": diff}}
    res.provenance = {"thue_morse_blocks": "mirror density formula, Thue-Morse seed",
                      "difference_sequence": "digit j of (tau_i - tau_{i-1}) read from 2-blocks"}


# --- parser -----------------------------------------------------------------------

def _fraction(text: str) -> Fraction:
    try:
        f = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if f <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return f


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _global_flags(p, default):
    p.add_argument("--format", choices=("json", "csv"), default=default("json"))
    p.add_argument("--tolerance", type=_fraction, default=default(None),
                   help="radius target for certified reals (default 1e-12, or $TMCANTOR_TOLERANCE)")
    p.add_argument("--budget-digits", type=int, default=default(None), help="digits compared before giving up")
    p.add_argument("--horizon", type=int, default=default(None), help="stream length for dimension estimates")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tmcantor", description=__doc__.split("\n")[0])
    _global_flags(p, lambda v: v)
    # the same flags are accepted after the subcommand name
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, lambda v: argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **kw: _add(*a, parents=[common], **kw)

    def alphabet(sp):
        sp.add_argument("--m", type=int)
        sp.add_argument("--m1", type=int)
        sp.add_argument("--m2", type=int)

    def sequence(sp):
        sp.add_argument("--seq", help="pre|period, comma separated")
        sp.add_argument("--period")
        sp.add_argument("--preperiod")

    f = sub.add_parser("freq", help="exact block densities in a mirror sequence")
    f.add_argument("--max-digit", type=int, default=1)
    f.add_argument("--seed", default="0")
    f.add_argument("--block", nargs="+", required=True)
    f.add_argument("--n", type=int)
    f.add_argument("--check-length", type=int)
    f.add_argument("--difference-digits", action="store_true",
                   help="also report digit densities of (tau_i - tau_{i-1})")
    f.add_argument("--budget", type=int, default=2**26)
    f.set_defaults(func=cmd_freq)

    pr = sub.add_parser("prefix", help="prefixes of mirror and Thue-Morse type sequences")
    pr.add_argument("--kind", choices=("mirror", "lambda", "kl-signed", "kl-digits"), default="mirror")
    pr.add_argument("--max-digit", type=int, default=1)
    pr.add_argument("--seed", default="0")
    pr.add_argument("--mu", type=int, default=0)
    alphabet(pr)
    pr.add_argument("--length", type=int, required=True)
    pr.add_argument("--budget", type=int, default=2**26)
    pr.set_defaults(func=cmd_prefix)

    b = sub.add_parser("bases", help="q1 ... qk, q_KL, q_c and base location")
    b.add_argument("--max-digit", type=int, required=True)
    b.add_argument("--k", type=int, default=2)
    b.add_argument("--locate")
    b.add_argument("--max-k", type=int, default=16)
    b.add_argument("--ladder-only", action="store_true")
    b.set_defaults(func=cmd_bases)

    u = sub.add_parser("unique", help="is a periodic sequence a unique expansion?")
    alphabet(u)
    sequence(u)
    u.add_argument("--q", required=True)
    u.set_defaults(func=cmd_unique)

    d = sub.add_parser("dim", help="Hausdorff dimension of the Cantor-set intersection")
    alphabet(d)
    sequence(d)
    d.add_argument("--q", required=True)
    d.add_argument("--stream", action="store_true", help="estimate along the signed Thue-Morse type sequence")
    d.set_defaults(func=cmd_dim)

    c = sub.add_parser("classify", help="describe the set of dimensions at q")
    alphabet(c)
    c.add_argument("--q", required=True)
    c.add_argument("--max-k", type=int, default=16)
    c.set_defaults(func=cmd_classify)

    fa = sub.add_parser("family", help="constructive sequence families")
    fa.add_argument("kind", choices=("pm-zero", "self-similar", "blocks"))
    fa.add_argument("--m", type=int)
    fa.add_argument("--q")
    fa.add_argument("--lam")
    fa.add_argument("--mesh", type=int, default=20)
    fa.add_argument("--n", type=int)
    fa.set_defaults(func=cmd_family)

    e = sub.add_parser("examples", help="reproduce the worked Thue-Morse frequency table")
    e.set_defaults(func=cmd_examples)
    return p


def _csv(result: CommandResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    payload = result.payload
    rows = payload.get("rows") or payload.get("thue_morse_blocks")
    if rows:
        keys = list(rows[0])
        w.writerow(keys)
        for r in rows:
            w.writerow([_flat(r[k]) for k in keys])
    else:
        w.writerow(["key", "value"])
        for k, v in payload.items():
            w.writerow([k, _flat(v)])
    return buf.getvalue()


def _flat(v) -> str:
    if isinstance(v, dict):
        if "symbolic" in v:
            return v["symbolic"]
        if "value" in v and "radius" in v:
            return f"{v['value']}±{v['radius']}"
        return json.dumps(v, ensure_ascii=False)
    if isinstance(v, list):
        return json.dumps(v, ensure_ascii=False)
    return "" if v is None else str(v)


def run(argv: Optional[List[str]] = None) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        res = CommandResult("", "domain_error", {"error": str(exc)}, exit_code=EXIT_DOMAIN)
        return res
    args.tolerance = args.tolerance or default_tolerance()
    res = CommandResult(args.command, fmt=args.format)
    res.precision = {"tolerance": str(args.tolerance), "budget_digits": args.budget_digits,
                     "horizon": args.horizon}
    try:
        args.func(args, res)
    except (Undecidable, BudgetExceeded) as exc:
        res.status, res.exit_code = "undecided", EXIT_UNDECIDED
        res.payload = {"error": str(exc)}
    except (ValueError, NotUniqueError, IndexError) as exc:
        res.status, res.exit_code = "domain_error", EXIT_DOMAIN
        res.payload = {"error": str(exc)}
    return res


def render(result: CommandResult) -> str:
    if result.fmt == "csv" and result.exit_code == EXIT_OK:
        return _csv(result)
    return json.dumps(result.as_dict(), indent=2, ensure_ascii=False) + "\n"


def main(argv: Optional[List[str]] = None) -> int:
    result = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(render(result))
    return result.exit_code
