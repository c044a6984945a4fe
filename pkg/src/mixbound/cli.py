"""Command-line front end.

    mixbound analyze  (FILE | --example NAME [params])
    mixbound bounds   (FILE | --example ...) --epsilon 0.25 0.1 [--exact-horizon T] [--out F]
    mixbound dual     (FILE | --example ...) [--mu delta:0|pi|uniform|p1,p2,...] [--t-max T]
    mixbound schur    --shape B C --m M [--count] [--point x1,...]
    mixbound schur    --partition K1 K2 ... --m M --enumerate
    mixbound schur    --companion e1,e2,... --t T
    mixbound example  NAME [params] [--format csv|json]
    mixbound profile  (FILE | --example ...) --t-max T [--out F]

Exit status: 0 on success, 1 on a computational error, 2 on bad input.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from typing import Sequence, TextIO

import numpy as np

from . import bounds as bnd
from . import duality, examples, schur
from .chain import TransitionMatrix, analyze
from .distances import HorizonTooShort, distance_profile, exact_mixing_time
from .errors import InputError, MixboundError
from .io import dumps, fmt12, load_matrix, write_table

EXAMPLES = sorted(list(examples.GENERATORS) + ["random", "random-lazy"])


# ---------------------------------------------------------------------------
# input
# ---------------------------------------------------------------------------


def _example_chain(name: str, args) -> TransitionMatrix:
    n = args.n
    if name == "pure-birth":
        return examples.pure_birth(n or 4, args.beta if args.beta is not None else 0.5).matrix
    if name == "biased-walk":
        p, q, r = (args.p if args.p is not None else 0.2), args.q, args.r
        q = 0.2 if q is None else q
        r = 1.0 - p - q if r is None else r
        return examples.biased_walk(n or 5, p, q, r).matrix
    if name == "sticky-walk":
        return examples.sticky_walk(n or 4).matrix
    if name == "skip-free":
        return examples.skip_free(n or 4, args.beta or 0.0).matrix
    if name == "hypercube":
        return examples.hypercube(n or 3).matrix
    if name == "cyclic":
        return examples.cyclic_walk(n or 3).matrix
    rng = np.random.default_rng(args.seed)
    if name == "random":
        return examples.random_chain(n or 5, rng)
    if name == "random-lazy":
        return examples.random_lazy_reversible(n or 5, rng)
    raise InputError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")


def _load(args) -> TransitionMatrix:
    if getattr(args, "example", None):
        return _example_chain(args.example, args)
    if not getattr(args, "input", None):
        raise InputError("give a matrix file or --example NAME")
    return load_matrix(args.input)


def _add_input(p: argparse.ArgumentParser, positional: bool = True) -> None:
    if positional:
        p.add_argument("input", nargs="?", help="matrix file (.csv or .json)")
        p.add_argument("--example", choices=EXAMPLES, help="use a generated chain instead of a file")
    _add_params(p)


def _add_params(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("example parameters")
    g.add_argument("--n", type=int, help="number of states (hypercube: dimension)")
    g.add_argument("--beta", type=float, help="holding probability / laziness")
    g.add_argument("--p", type=float, help="biased walk: left probability")
    g.add_argument("--q", type=float, help="biased walk: holding probability")
    g.add_argument("--r", type=float, help="biased walk: right probability")
    g.add_argument("--seed", type=int, default=0, help="seed for random examples")


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated numbers, got {text!r}") from None


def _open_out(path: str | None) -> TextIO:
    return sys.stdout if path in (None, "-") else open(path, "w", newline="")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _vec(v) -> str:
    return ",".join(fmt12(x) for x in v)


def _eigs(ev: np.ndarray) -> str:
    if np.iscomplexobj(ev):
        return ",".join(fmt12(z.real) if z.imag == 0 else f"{fmt12(z.real)}{'+' if z.imag >= 0 else '-'}{fmt12(abs(z.imag))}j"
                        for z in ev)
    return _vec(ev)


def cmd_analyze(args, out: TextIO) -> int:
    info = analyze(_load(args))
    sp = info.spectrum
    lines = [
        ("N", str(info.n)),
        ("pi", _vec(info.pi.weights) if info.pi is not None else "not unique"),
        ("pi_min", fmt12(info.pi_min) if info.pi is not None else "undefined"),
        ("reversible", "true" if info.reversible else "false"),
        ("lazy", "true" if info.lazy else "false"),
        ("eigenvalues", _eigs(sp.eigenvalues)),
        ("real_spectrum", "true" if sp.real else "false"),
        ("beta_star", fmt12(sp.beta_star)),
        ("gap", fmt12(sp.gap)),
        ("t_rel", fmt12(sp.t_rel)),
        ("non_ergodic", "true" if sp.non_ergodic else "false"),
    ]
    for k, v in lines:
        out.write(f"{k}: {v}\n")
    return 0


@dataclass(frozen=True)
class ComparisonRow:
    report: bnd.BoundReport
    exact: int | None

    @property
    def ratio(self) -> float | None:
        if self.exact is None or not self.report.hypotheses_met:
            return None
        if self.exact == 0:
            return 1.0 if self.report.value == 0 else math.inf
        return self.report.value / self.exact

    def row(self) -> tuple:
        r = self.report
        return (r.name, r.epsilon, r.value, r.hypotheses_met, self.exact, self.ratio)


COMPARISON_HEADER = ("name", "epsilon", "value", "applicable", "exact_tmix", "ratio")


def comparison_table(P: TransitionMatrix, epsilons: Sequence[float], horizon: int) -> list[ComparisonRow]:
    """Every bound next to the exact mixing time, when powering up to ``horizon`` reaches it."""
    info = analyze(P)
    reports = bnd.evaluate_bounds(info, epsilons)
    exact: dict[float, int | None] = {e: None for e in epsilons}
    valid = [e for e in epsilons if 0 < e < 1]
    if info.pi is not None and valid:
        prof = distance_profile(P, info.pi, horizon, stop_below=min(valid))
        for e in valid:
            try:
                exact[e] = exact_mixing_time(prof, e).time
            except HorizonTooShort:
                pass
    return [ComparisonRow(r, exact.get(r.epsilon)) for r in reports]


def cmd_bounds(args, out: TextIO) -> int:
    rows = comparison_table(_load(args), args.epsilon, args.exact_horizon)
    if args.verbose:
        for r in rows:
            if r.report.failed:
                print(f"{r.report.name} eps={r.report.epsilon}: {', '.join(r.report.failed)}", file=sys.stderr)
    with (_open_out(args.out) if args.out else _nullctx(out)) as fh:
        write_table(COMPARISON_HEADER, (r.row() for r in rows), fh)
    return 0


class _nullctx:
    def __init__(self, obj):
        self.obj = obj

    def __enter__(self):
        return self.obj

    def __exit__(self, *exc):
        return False


def _parse_mu(text: str, P: TransitionMatrix, pi) -> np.ndarray:
    n = P.n
    if text == "pi":
        return np.asarray(pi, dtype=float)
    if text == "first":
        text = f"delta:{P.labels[0]}"
    if text == "uniform":
        return np.full(n, 1.0 / n)
    if text.startswith("delta:"):
        key = text.split(":", 1)[1]
        idx = P.labels.index(key) if key in P.labels else None
        if idx is None:
            try:
                idx = int(key)
            except ValueError:
                raise InputError(f"unknown state {key!r}") from None
        if not 0 <= idx < n:
            raise InputError(f"state index {idx} outside 0..{n - 1}")
        mu = np.zeros(n)
        mu[idx] = 1.0
        return mu
    mu = np.array(_floats(text))
    if mu.size != n:
        raise InputError(f"--mu has {mu.size} entries, chain has {n} states")
    return mu


def cmd_dual(args, out: TextIO) -> int:
    P = _load(args)
    from .chain import stationary_distribution

    pi = stationary_distribution(P)
    mu = _parse_mu(args.mu, P, pi)
    link = duality.build_link(P, pi, mu)
    residual = duality.verify_intertwining(link, P, link.dual)
    prof = distance_profile(P, pi, args.t_max, starts=mu[None, :])
    tail = bnd.sst_tail_profile(link.dual.betas, args.t_max)
    sep = np.concatenate([prof.sep, np.zeros(args.t_max + 1 - prof.sep.size)])
    with (_open_out(args.link_out) if args.link_out else _nullctx(out)) as fh:
        link.to_csv(fh, P.labels)
    if not args.link_out and not args.profile_out:
        out.write("\n")
    with (_open_out(args.profile_out) if args.profile_out else _nullctx(out)) as fh:
        write_table(("t", "sep", "sst_tail"), ((t, float(sep[t]), float(tail[t])) for t in range(args.t_max + 1)), fh)
    print(f"intertwining_residual: {fmt12(residual)}", file=sys.stderr)
    return 0


def cmd_schur(args, out: TextIO) -> int:
    if args.companion is not None:
        esym = _floats(args.companion)
        if not esym:
            raise InputError("--companion needs at least one coefficient")
        c = schur.companion_power(esym, args.t)
        write_table([f"c{j + 1}" for j in range(len(esym))], (list(map(float, row)) for row in c), out)
        return 0
    if args.partition:
        if args.m is None:
            raise InputError("--partition needs --m")
        tabs = schur.ssyt_enumerate(args.partition, args.m)
        if args.enumerate:
            for tab in tabs:
                out.write(f"{tab}\n")
        out.write(f"count: {len(tabs)}\n")
        if args.point:
            out.write(f"value: {fmt12(schur.schur_polynomial(args.partition, _floats(args.point)))}\n")
        return 0
    if args.shape:
        b, c = args.shape
        m = args.m
        if m is None:
            raise InputError("--shape needs --m")
        if args.count or not args.point:
            out.write(f"count: {schur.ssyt_count_hook(b, c, m)}\n")
        if args.point:
            x = _floats(args.point)
            if len(x) != m:
                raise InputError(f"--point needs {m} coordinates")
            e = schur.elementary_symmetric(x)
            out.write(f"value: {fmt12(schur.hook_schur_from_esym(e, m, (b, c)))}\n")
        return 0
    raise InputError("give --shape, --partition or --companion")


def cmd_example(args, out: TextIO) -> int:
    out.write(dumps(_example_chain(args.name, args), args.format))
    return 0


def cmd_profile(args, out: TextIO) -> int:
    P = _load(args)
    from .chain import stationary_distribution

    prof = distance_profile(P, stationary_distribution(P), args.t_max)
    with (_open_out(args.out) if args.out else _nullctx(out)) as fh:
        prof.to_csv(fh)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixbound", description="Spectral mixing-time analysis of finite Markov chains.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="stationary distribution, spectrum, gap, relaxation time")
    _add_input(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("bounds", help="all mixing-time bounds next to the exact mixing time")
    _add_input(p)
    p.add_argument("--epsilon", type=float, nargs="+", default=[0.25])
    p.add_argument("--exact-horizon", type=int, default=100_000)
    p.add_argument("--out")
    p.add_argument("--verbose", action="store_true", help="list failed hypotheses on stderr")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("dual", help="intertwining link and strong-stationary-time tail")
    _add_input(p)
    p.add_argument("--mu", default="first", help="first, delta:STATE (label, else 0-based index), pi, uniform, or comma-separated weights")
    p.add_argument("--t-max", type=int, default=100)
    p.add_argument("--link-out")
    p.add_argument("--profile-out")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("schur", help="hook Schur polynomials, tableau counts, companion powers")
    p.add_argument("--shape", type=int, nargs=2, metavar=("B", "C"), help="hook (B, 1^C)")
    p.add_argument("--partition", type=int, nargs="+", help="general partition, for enumeration")
    p.add_argument("--m", type=int, help="alphabet size / number of variables")
    p.add_argument("--count", action="store_true")
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--point", help="comma-separated evaluation point")
    p.add_argument("--companion", help="comma-separated e_1..e_m")
    p.add_argument("--t", type=int, default=0)
    p.set_defaults(func=cmd_schur)

    p = sub.add_parser("example", help="emit a generated chain as CSV or JSON")
    p.add_argument("name", choices=EXAMPLES)
    _add_params(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("profile", help="worst-start TV and separation for t = 0..T")
    _add_input(p)
    p.add_argument("--t-max", type=int, default=100)
    p.add_argument("--out")
    p.set_defaults(func=cmd_profile)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out or sys.stdout)
    except MixboundError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
