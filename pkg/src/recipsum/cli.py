"""Command-line front end.

Every subcommand emits :class:`~recipsum.records.ScanRecord` lines through a
single writer, so the output format and determinism guarantees are shared.

Exit codes: 0 success, 2 usage or parse error (including a corrupt resume
token), 3 a resource cap was reached, 4 a checked statement was violated.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .coprime import (
    DEFAULT_SUBSET_CAP,
    check_nu_lower_bound,
    check_prime_product_nu,
    nu_collision_scan,
    prime_hunter,
    ranked_subsets,
    verify_theorem_1_2,
)
from .errors import DomainError, ResourceLimitError
from .exact_arith import FinSet, delta, mu, nu, sigma
from .family import STRATEGIES, RationalTarget, assemble_theorem1
from .primes import DEFAULT_BUDGET
from .records import FORMATS, RecordWriter, ScanRecord
from .scans import SCANS, run_scan
from .sigma_sequence import DEFAULT_STEP_CAP, SeqState, disjoint_subsequence, run
from .stars import check_star_growth_and_primecount, exponent_profile
from .sylvester import (
    Report,
    sylvester_powers,
    verify_delta_divisibility,
    verify_nonintegrality,
    verify_prime_theorems,
    verify_two_power_lemma,
)
from .words import (
    DEFAULT_DIGIT_CAP,
    DEFAULT_MAX_K,
    Word,
    apply,
    check_length_uniqueness,
    iter_levels,
    preimages,
)

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_VIOLATION = 0, 2, 3, 4


@dataclass(frozen=True)
class RunConfig:
    """Caps and output settings shared by every subcommand.

    Defaults: ``max_k`` 20 levels, ``digit_cap`` 100000 decimal digits,
    ``subset_cap`` 2**20 subsets, ``budget`` 5,000,000 rho iterations per
    factorization, ``horizon`` 200000 sequence terms, JSON lines on stdout,
    one worker.
    """

    max_k: int = DEFAULT_MAX_K
    digit_cap: int = DEFAULT_DIGIT_CAP
    subset_cap: int = DEFAULT_SUBSET_CAP
    budget: int = DEFAULT_BUDGET
    horizon: int = DEFAULT_STEP_CAP
    fmt: str = "json"
    out: Path | None = None
    workers: int = 1

    def __post_init__(self):
        for name in ("max_k", "digit_cap", "subset_cap", "budget", "horizon", "workers"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise DomainError(f"{name} must be a positive integer, got {value!r}")
        if self.fmt not in FORMATS:
            raise DomainError(f"format must be one of {FORMATS}, got {self.fmt!r}")

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        return cls(max_k=ns.max_k, digit_cap=ns.digit_cap, subset_cap=ns.subset_cap,
                   budget=ns.budget, horizon=ns.horizon, fmt=ns.format,
                   out=Path(ns.out) if ns.out else None, workers=ns.workers)


def _status(bad) -> str:
    return "violation" if bad else "ok"


def _report_records(rep: Report) -> Iterator[ScanRecord]:
    for v in rep.violations:
        payload = v if isinstance(v, dict) else {"case": v}
        yield ScanRecord(f"{rep.name}-violation", rep.parameters, payload, "violation")
    for s in rep.skipped:
        yield ScanRecord(f"{rep.name}-skipped", rep.parameters, {"case": s})
    payload = {"checked": rep.checked, "violations": len(rep.violations),
               **{k: v for k, v in rep.witnesses.items() if not isinstance(v, float)}}
    if rep.findings:
        payload["findings"] = rep.findings
    yield ScanRecord(rep.name, rep.parameters, payload, _status(rep.violations))


# -- subcommands -----------------------------------------------------------


def cmd_sigma(ns, cfg):
    S = FinSet.parse(ns.set)
    yield ScanRecord("sigma", {"set": str(S)},
                     {"sigma": sigma(S), "nu": nu(S), "delta": delta(S), "mu": mu(S)})


def cmd_decompose(ns, cfg):
    target = RationalTarget(ns.a, ns.b)
    dec = assemble_theorem1(target, ns.count, ns.k_max, strategy=ns.strategy,
                            max_k=cfg.max_k, digit_cap=cfg.digit_cap)
    seen: set[int] = set()
    for rec, block in zip(dec.records(), dec.blocks):
        ok = sigma(block) == target.value and seen.isdisjoint(block)
        seen.update(block)
        yield ScanRecord("block", {}, rec, _status(not ok))
    yield ScanRecord("decomposition", {"a": ns.a, "b": ns.b, "count": ns.count,
                                       "k_max": ns.k_max, "strategy": ns.strategy},
                     {"blocks": len(dec.blocks), "level_indices": dec.level_indices,
                      "target": target.value, "pairwise_disjoint": True})


def cmd_words(ns, cfg):
    if ns.action == "apply":
        w = Word.parse(ns.word)
        yield ScanRecord("word", {"word": str(w), "n": ns.n},
                         {"glyphs": w.pretty(), "length": len(w), "value": apply(w, ns.n)})
    elif ns.action == "level":
        for lvl in iter_levels(ns.b, ns.k, max_k=cfg.max_k, digit_cap=cfg.digit_cap):
            if ns.all or lvl.k == ns.k:
                payload = {"size": len(lvl), "distinct": len(lvl.counts)}
                if lvl.simple:
                    payload["sigma"] = sigma(lvl.values)
                if ns.values:
                    payload["values"] = list(lvl.values)
                ok = lvl.simple and payload["sigma"] == Fraction(1, ns.b)
                yield ScanRecord("level", {"b": ns.b, "k": lvl.k}, payload,
                                 _status(ns.b >= 2 and not ok))
    elif ns.action == "preimages":
        ws = preimages(ns.b, ns.n)
        for w in ws:
            yield ScanRecord("preimage", {"b": ns.b, "n": ns.n},
                             {"word": str(w), "glyphs": w.pretty(), "length": len(w)})
        lengths = [len(w) for w in ws]
        yield ScanRecord("preimages", {"b": ns.b, "n": ns.n},
                         {"count": len(ws), "lengths": lengths},
                         _status(len(set(lengths)) != len(lengths)))
    else:
        rep = check_length_uniqueness(ns.b, ns.n_max)
        for v in rep.violations:
            yield ScanRecord("length-violation", {"b": ns.b}, v, "violation")
        yield ScanRecord("length-uniqueness", {"b": ns.b, "n_max": ns.n_max},
                         {"checked": rep.checked, "words": rep.words_seen,
                          "violations": len(rep.violations)}, _status(rep.violations))


def _load_seq_state(path: str) -> tuple[FinSet | None, SeqState]:
    last = None
    seed = None
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            try:
                rec = ScanRecord.from_json(line)
            except (ValueError, KeyError) as exc:
                raise DomainError(f"unreadable trace line in {path}: {exc}") from None
            if rec.kind == "seq-state":
                last = SeqState.from_record(rec.payload)
                seed = FinSet.parse(rec.parameters["seed"])
    if last is None:
        raise DomainError(f"{path} holds no seq-state records to resume from")
    return seed, last


def cmd_seq(ns, cfg):
    seed = FinSet.parse(ns.seed) if ns.seed else None
    if ns.disjoint is not None:
        if seed is None:
            raise DomainError("a seed is required with --disjoint")
        res = disjoint_subsequence(seed, ns.disjoint, step_cap=cfg.horizon)
        yield ScanRecord("disjoint-subsequence", {"seed": str(seed), "horizon": ns.disjoint},
                         {"indices": res.indices, "secured": res.secured,
                          "secure_threshold": res.secure_threshold})
        return
    start = None
    if ns.resume:
        saved_seed, start = _load_seq_state(ns.resume)
        if seed is not None and saved_seed != seed:
            raise DomainError(f"trace seed {saved_seed} differs from {seed}")
        seed = saved_seed
    if seed is None:
        raise DomainError("a seed is required unless resuming from a trace")
    trace = run(seed, ns.steps, step_cap=cfg.horizon, start=start)
    for st in trace.states:
        if start is not None and st.index == start.index:
            continue
        yield ScanRecord("seq-state", {"seed": str(seed)}, st.record())
    yield ScanRecord("seq-summary", {"seed": str(seed), "steps": ns.steps},
                     {"first_index": trace.states[0].index if trace.states else 1,
                      "last_index": trace.last.index, "final": trace.final,
                      "sigma": trace.sigma_value, "doomed": len(trace.doomed),
                      "first_index_of_min": {str(k): v for k, v in
                                             sorted(trace.first_index_of_min.items())}},
                     _status(sigma(trace.final) != sigma(seed)))


def cmd_sylvester(ns, cfg):
    X = FinSet.parse(ns.set)
    d = delta(X)
    for sp in sorted(sylvester_powers(X)):
        q = sp.p**sp.v
        exact = d % q == 0 and d % (q * sp.p) != 0
        yield ScanRecord("sylvester-power", {"set": str(X)},
                         {"p": sp.p, "v": sp.v, "power": str(sp), "exactly_divides_delta": exact},
                         _status(not exact))
    yield ScanRecord("sylvester", {"set": str(X)},
                     {"count": len(sylvester_powers(X)), "delta": d, "mu": mu(X)})


_SCAN_FLAGS = ("bound", "m_max", "n_max", "pool", "size")


def _scan_params(ns) -> dict:
    kind = ns.kind
    params: dict = {}
    if ns.bound is not None:
        params.update({"tk": {"m_max": ns.bound, "n_max": ns.bound},
                       "erdos-niven": {"N": ns.bound},
                       "quadruple": {"bound": ns.bound},
                       "nonintegrality": {"m_max": ns.bound, "d_max": ns.bound,
                                          "k_max": ns.bound},
                       "nu-collision": {}}[kind])
        if kind == "nu-collision":
            raise DomainError("nu-collision takes --pool and --size, not --bound")
    for flag in _SCAN_FLAGS[1:]:
        value = getattr(ns, flag)
        if value is not None:
            params[flag] = value
    for item in ns.param or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise DomainError(f"--param expects key=value, got {item!r}")
        default = SCANS[kind].defaults.get(key)
        if isinstance(default, int):
            try:
                params[key] = int(value)
            except ValueError:
                raise DomainError(f"--param {key} needs an integer, got {value!r}") from None
        else:
            params[key] = value
    return params


def cmd_scan(ns, cfg):
    yield from run_scan(ns.kind, _scan_params(ns), workers=cfg.workers,
                        checkpoint_every=ns.checkpoint_every, resume=ns.resume)


def _hunt_terms(text: str) -> tuple[list[int], list[int]]:
    primes, exps = [], []
    for part in text.split(","):
        base, _, exp = part.strip().partition("^")
        try:
            primes.append(int(base))
            exps.append(int(exp) if exp else 1)
        except ValueError:
            raise DomainError(f"cannot parse prime power {part!r}") from None
    return primes, exps


def cmd_coprime(ns, cfg):
    if ns.hunt:
        res = prime_hunter(*_hunt_terms(ns.hunt))
        yield ScanRecord("prime-hunter", {"powers": res.powers},
                         {"nu": res.nu, "factors": dict(res.factorization),
                          "complete": res.factorization.complete,
                          "coprime_to_all": res.coprime_to_all},
                         _status(not res.coprime_to_all))
        return
    X = FinSet.parse(ns.set)
    if ns.nu_collisions is not None:
        scan = nu_collision_scan(X, ns.nu_collisions, cfg.subset_cap)
        for c in scan.collisions:
            yield ScanRecord("nu-collision", {"size": c.size},
                             {"set_a": c.set_a, "set_b": c.set_b, "nu": c.nu})
        yield ScanRecord("nu-collision-scan", {"pool": str(X), "size": ns.nu_collisions},
                         {"subsets": scan.subsets, "collisions": len(scan.collisions),
                          "pool_coprime": scan.pool_coprime})
        return
    rep = verify_theorem_1_2(X, cfg.subset_cap)
    for a, b in rep.delta_collisions:
        yield ScanRecord("delta-collision", {"ground": str(X)},
                         {"set_a": a, "set_b": b, "delta": delta(a)}, "violation")
    for a, b in rep.sigma_collisions:
        yield ScanRecord("sigma-collision", {"ground": str(X)},
                         {"set_a": a, "set_b": b, "sigma": sigma(a)}, "violation")
    bad_integral = [C for C in rep.integral if C != FinSet([1])]
    for C in bad_integral:
        yield ScanRecord("integral-sigma", {"ground": str(X)}, {"set": C}, "violation")
    yield ScanRecord("coprime-injectivity", {"ground": str(X)},
                     {"subsets": rep.subsets, "delta_collisions": len(rep.delta_collisions),
                      "sigma_collisions": len(rep.sigma_collisions),
                      "integral": rep.integral}, _status(not rep.ok))


def cmd_stars(ns, cfg):
    prof = exponent_profile(ns.b, ns.depth, cfg.budget, cfg.digit_cap)
    params = {"b": ns.b, "depth": ns.depth}
    for row in prof.records():
        yield ScanRecord("star-prime", params, row)
    for v in prof.violations:
        yield ScanRecord("star-violation", params, v, "violation")
    if not prof.complete:
        yield ScanRecord("star-truncated", params,
                         {"verified_through_depth": prof.verified_through,
                          "unfactored": prof.unfactored, "budget": cfg.budget}, "truncated")
    yield ScanRecord("star-profile", params,
                     {"primes": len(prof.entries), "verified_through_depth": prof.verified_through,
                      "stabilized": prof.ok and prof.complete},
                     "violation" if prof.violations else
                     ("ok" if prof.complete else "truncated"))


def cmd_verify(ns, cfg):
    what = ns.what
    if what == "two-power":
        yield from _report_records(verify_two_power_lemma(ns.bound or 500))
    elif what == "primes":
        yield from _report_records(verify_prime_theorems(ns.n_max or 100_000,
                                                         ns.sylvester_max or 2000))
    elif what == "delta":
        yield from _report_records(verify_delta_divisibility(FinSet.parse(ns.set or "1000..1004")))
    elif what == "nonintegrality":
        b = ns.bound or 50
        yield from _report_records(verify_nonintegrality(m_max=b, d_max=b, k_max=b))
    elif what == "length":
        yield from cmd_words(argparse.Namespace(action="check", b=ns.b or 2,
                                                n_max=ns.n_max or 1000), cfg)
    elif what == "levels":
        bases = [ns.b] if ns.b else [2, 3, 5]
        k = ns.bound if ns.bound is not None else 10
        for b in bases:
            yield from cmd_words(argparse.Namespace(action="level", b=b, k=k, all=True,
                                                    values=False), cfg)
    elif what == "star-growth":
        b_max = ns.b or 10
        depth = ns.bound if ns.bound is not None else 6
        rep = check_star_growth_and_primecount(range(2, b_max + 1), depth, cfg.budget,
                                               cfg.digit_cap)
        params = {"b_max": b_max, "depth": depth}
        for v in rep.violations:
            yield ScanRecord("star-growth-violation", params, v, "violation")
        for row in rep.incomplete:
            yield ScanRecord("star-growth-unverified", params, row, "truncated")
        yield ScanRecord("star-growth", params, {"rows": len(rep.rows),
                                                 "violations": len(rep.violations)},
                         _status(rep.violations))
    elif what == "nu-bounds":
        k_max = ns.bound or 10
        rep = check_prime_product_nu(k_max)
        for v in rep.violations:
            yield ScanRecord("nu-prime-product-violation", {"k_max": k_max}, v, "violation")
        pool = FinSet.parse(ns.set or "{2,3,5,7,11,13}")
        bad = checked = 0
        for C in ranked_subsets(pool):
            nb = check_nu_lower_bound(C)
            checked += 1
            if not nb.ok:
                bad += 1
                yield ScanRecord("nu-lower-bound-violation", {"pool": str(pool)},
                                 {"set": C, "nu": nb.nu, "bound": nb.bound}, "violation")
        yield ScanRecord("nu-bounds", {"k_max": k_max, "pool": str(pool)},
                         {"prime_products": len(rep.rows), "subsets": checked,
                          "violations": bad + len(rep.violations)},
                         _status(bad or rep.violations))
    elif what == "coprime":
        yield from cmd_coprime(argparse.Namespace(
            set=ns.set or "{1,2,3,5,7,11,13,17,19,23}", nu_collisions=None, hunt=None), cfg)


COMMANDS = {
    "sigma": cmd_sigma,
    "decompose": cmd_decompose,
    "words": cmd_words,
    "seq": cmd_seq,
    "sylvester": cmd_sylvester,
    "scan": cmd_scan,
    "coprime": cmd_coprime,
    "stars": cmd_stars,
    "verify": cmd_verify,
}

VERIFY_TARGETS = ("two-power", "primes", "delta", "nonintegrality", "length", "levels",
                  "star-growth", "nu-bounds", "coprime")


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("output and caps")
    g.add_argument("--format", choices=FORMATS, default="json", help="record format")
    g.add_argument("--out", help="write records to this file instead of stdout")
    g.add_argument("--workers", type=int, default=1, help="worker processes for scans")
    g.add_argument("--max-k", type=int, default=DEFAULT_MAX_K, help="largest word level built")
    g.add_argument("--digit-cap", type=int, default=DEFAULT_DIGIT_CAP,
                   help="refuse integers with more decimal digits than this")
    g.add_argument("--subset-cap", type=int, default=DEFAULT_SUBSET_CAP,
                   help="refuse enumerations of more subsets than this")
    g.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="rho iterations allowed per factorization")
    g.add_argument("--horizon", type=int, default=DEFAULT_STEP_CAP,
                   help="largest sequence index followed")
    g.add_argument("--resume", help="scan checkpoint token, or a saved trace file for seq")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="recipsum", description="Exact reciprocal-sum experiments.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("sigma", parents=[common], help="sigma, nu, delta, mu of a set")
    p.add_argument("set", help='set literal "{a,b,c}" or interval "m..n"')

    p = sub.add_parser("decompose", parents=[common],
                       help="pairwise disjoint sets with reciprocal sum a/b")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("count", type=int)
    p.add_argument("--k-max", type=int, default=16, help="deepest level considered")
    p.add_argument("--strategy", choices=STRATEGIES, default="greedy")

    p = sub.add_parser("words", parents=[common], help="diamond/star words and levels")
    wsub = p.add_subparsers(dest="action", required=True)
    q = wsub.add_parser("apply", parents=[common], help="value of a word at n")
    q.add_argument("word", help='letters "d" (n+1) and "s" (n(n+1)), rightmost first')
    q.add_argument("n", type=int)
    q = wsub.add_parser("level", parents=[common], help="the level W_k b")
    q.add_argument("b", type=int)
    q.add_argument("k", type=int)
    q.add_argument("--all", action="store_true", help="emit every level up to k")
    q.add_argument("--values", action="store_true", help="include the level's elements")
    q = wsub.add_parser("preimages", parents=[common], help="all words sending b to n")
    q.add_argument("b", type=int)
    q.add_argument("n", type=int)
    q = wsub.add_parser("check", parents=[common], help="length uniqueness for n <= n_max")
    q.add_argument("b", type=int)
    q.add_argument("n_max", type=int)

    p = sub.add_parser("seq", parents=[common], help="the sigma-sequence from a seed")
    p.add_argument("seed", nargs="?", help="seed set; optional when resuming a trace")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--steps", type=int, default=6, help="index of the last term")
    mode.add_argument("--disjoint", type=int, metavar="HORIZON",
                      help="greedy disjoint term indices up to HORIZON")

    p = sub.add_parser("sylvester", parents=[common], help="sylvester powers of a set")
    p.add_argument("set")

    p = sub.add_parser("scan", parents=[common], help="bounded resumable scans")
    p.add_argument("kind", choices=list(SCANS))
    p.add_argument("--bound", type=int, help="main size knob of the scan")
    p.add_argument("--m-max", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--pool", help="nu-collision ground set")
    p.add_argument("--size", type=int, help="nu-collision subset size")
    p.add_argument("--param", action="append", metavar="KEY=VALUE",
                   help="set any scan parameter by name")
    p.add_argument("--checkpoint-every", type=int, metavar="UNITS")

    p = sub.add_parser("coprime", parents=[common],
                       help="injectivity over a pairwise coprime set")
    p.add_argument("set", nargs="?", default="{1,2,3,5,7,11,13,17,19,23}")
    p.add_argument("--nu-collisions", type=int, metavar="SIZE",
                   help="list equal numerators among SIZE-subsets instead")
    p.add_argument("--hunt", metavar="P^E,...", help="factor the numerator of sum 1/p^e")

    p = sub.add_parser("stars", parents=[common], help="prime exponent profile of n -> n(n+1)")
    p.add_argument("b", type=int)
    p.add_argument("depth", type=int)

    p = sub.add_parser("verify", parents=[common], help="run a bounded statement check")
    p.add_argument("what", choices=VERIFY_TARGETS)
    p.add_argument("--bound", type=int, help="size knob (bound, k, depth or k_max)")
    p.add_argument("--b", type=int, help="base (largest base for star-growth)")
    p.add_argument("--n-max", type=int)
    p.add_argument("--sylvester-max", type=int)
    p.add_argument("--set")
    return parser


@contextlib.contextmanager
def _output(cfg: RunConfig):
    if cfg.out is None:
        yield sys.stdout
    else:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _emit(records: Iterable[ScanRecord], writer: RecordWriter) -> int:
    code = EXIT_OK
    for rec in records:
        writer.write(rec)
        if rec.status == "violation":
            code = EXIT_VIOLATION
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(ns)
    except DomainError as exc:
        parser.error(str(exc))
    if ns.command == "decompose" and ns.b < 2:
        print(f"recipsum: error: b must be >= 2, got {ns.b}", file=sys.stderr)
        return EXIT_USAGE
    with _output(cfg) as stream:
        writer = RecordWriter(stream, cfg.fmt)
        try:
            return _emit(COMMANDS[ns.command](ns, cfg), writer)
        except ResourceLimitError as exc:
            writer.write(ScanRecord("resource-limit", {"command": ns.command},
                                    {"cap": exc.cap, "achieved": exc.achieved,
                                     "message": str(exc)}, "truncated"))
            print(f"recipsum: {exc}", file=sys.stderr)
            return EXIT_RESOURCE
        except DomainError as exc:
            print(f"recipsum: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        except OSError as exc:
            print(f"recipsum: error: {exc}", file=sys.stderr)
            return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
