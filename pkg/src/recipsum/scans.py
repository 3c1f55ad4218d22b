"""Bounded, resumable scans that stream :class:`ScanRecord` lines.

A scan is cut into units (usually one per starting value m).  Each unit is
a pure function of the scan parameters, so units can run in worker
processes and are merged back in unit order.  After every few units a
``checkpoint`` record carries a token; resuming from it replays exactly
the rest of the stream, including the final ``summary``.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from collections.abc import Callable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .exact_arith import FinSet, nu
from .records import ScanRecord, decode_token, encode_token, jsonable
from .sylvester import (
    _progression_sums,
    check_belbachir_khelladi,
    check_oblath,
    integral_intervals_from,
    interval_sigmas,
    interval_sylvester_index,
    interval_sylvester_powers,
    sylvester_key,
)

__all__ = ["SCANS", "ScanSpec", "run_scan", "scan_kinds"]


@dataclass(frozen=True)
class ScanSpec:
    name: str
    defaults: dict
    prepare: Callable[[dict], object]
    units: Callable[[dict, object], list]
    run_unit: Callable[[dict, object, object], tuple[list[ScanRecord], int]]


# -- theisinger-kurschak ---------------------------------------------------


def _tk_units(params, ctx):
    return list(range(1, params["m_max"] + 1))


def _tk_unit(params, ctx, m):
    n_max = params["n_max"]
    recs = []
    for n in integral_intervals_from(m, n_max):
        status = "ok" if (m, n) == (1, 1) else "violation"
        recs.append(ScanRecord("tk-integral", {"m": m, "n": n},
                               {"sigma": sum((Fraction(1, x) for x in range(m, n + 1)),
                                             Fraction(0))}, status))
    return recs, max(0, n_max - m + 1)


# -- erdos-niven -------------------------------------------------------------


def _en_prepare(params):
    N = params["N"]
    first: dict[tuple[int, int], tuple[int, int]] = {}
    for m in range(1, N + 1):
        for offset, key in enumerate(interval_sigmas(m, N)):
            first.setdefault(key, (m, m + offset))
    return first


def _en_units(params, ctx):
    return list(range(1, params["N"] + 1))


def _en_unit(params, first, m):
    N = params["N"]
    recs = []
    for offset, key in enumerate(interval_sigmas(m, N)):
        iv = (m, m + offset)
        if first[key] != iv:
            recs.append(ScanRecord("erdos-niven-collision",
                                   {"m": m, "n": m + offset},
                                   {"other": list(first[key]),
                                    "sigma": Fraction(*key)}, "violation"))
    return recs, N - m + 1


# -- quadruples ----------------------------------------------------------------


def _quad_prepare(params):
    return dict(interval_sylvester_index(params["bound"]))


def _quad_units(params, ctx):
    return list(range(2, params["bound"] + 1))


def _quad_unit(params, groups, m):
    bound = params["bound"]
    recs = []
    for n in range(m + 1, bound + 1):
        key = sylvester_key(interval_sylvester_powers(m, n))
        for other in groups[key]:
            if n < other.m:
                status = "violation" if n - m <= other.n - other.m else "ok"
                recs.append(ScanRecord(
                    "quadruple", {"m": m, "n": n, "m2": other.m, "n2": other.n},
                    {"powers": [f"{p}^{v}" if v > 1 else str(p) for p, v in key]}, status))
    return recs, bound - m


# -- nu collisions -----------------------------------------------------------


def _nu_prepare(params):
    pool = FinSet.parse(params["pool"])
    groups: dict[int, list[FinSet]] = defaultdict(list)
    for combo in itertools.combinations(pool, params["size"]):
        C = FinSet(combo)
        groups[nu(C)].append(C)
    return {"pool": pool, "groups": dict(groups)}


def _nu_units(params, ctx):
    return list(ctx["pool"])


def _nu_unit(params, ctx, lead):
    recs = []
    checked = 0
    for value in sorted(ctx["groups"]):
        sets = ctx["groups"][value]
        checked += sum(1 for C in sets if C.min() == lead)
        for a, b in itertools.combinations(sets, 2):
            if a.min() == lead:
                recs.append(ScanRecord("nu-collision", {"size": params["size"]},
                                       {"set_a": a, "set_b": b, "nu": value}))
    recs.sort(key=lambda r: (r.payload["set_a"].elements, r.payload["set_b"].elements))
    return recs, checked


# -- non-integrality ---------------------------------------------------------


def _ni_units(params, ctx):
    return ([("erdos", m) for m in range(1, params["m_max"] + 1)]
            + [("belbachir", 0), ("oblath-coprime", 0), ("oblath-odd", 0)])


def _ni_unit(params, ctx, unit):
    family, m = unit
    recs = []
    if family == "erdos":
        checked = 0
        for d in range(1, params["d_max"] + 1):
            for k, N, L in _progression_sums(m, d, params["k_max"]):
                if m == 1 and k == 1:
                    continue
                checked += 1
                if N % L == 0:
                    recs.append(ScanRecord("progression-integral", {"m": m, "d": d, "k": k},
                                           {"sum": Fraction(N, L)}, "violation"))
        return recs, checked
    if family == "belbachir":
        rep = check_belbachir_khelladi(params["belbachir"], params["seed"])
    else:
        rule = "coprime" if family == "oblath-coprime" else "odd-at-even"
        rep = check_oblath(range(1, params["oblath_m_max"] + 1),
                           range(1, params["oblath_len_max"] + 1),
                           seed=params["seed"], rule=rule)
    for v in rep.violations:
        recs.append(ScanRecord(f"{rep.name}-integral", {"family": family}, v, "violation"))
    return recs, rep.checked


SCANS: dict[str, ScanSpec] = {
    "tk": ScanSpec("tk", {"m_max": 2000, "n_max": 2000}, lambda p: None, _tk_units, _tk_unit),
    "erdos-niven": ScanSpec("erdos-niven", {"N": 400}, _en_prepare, _en_units, _en_unit),
    "quadruple": ScanSpec("quadruple", {"bound": 25}, _quad_prepare, _quad_units, _quad_unit),
    "nu-collision": ScanSpec("nu-collision", {"pool": "{2,3,5,7,11,13}", "size": 2},
                             _nu_prepare, _nu_units, _nu_unit),
    "nonintegrality": ScanSpec("nonintegrality",
                               {"m_max": 50, "d_max": 50, "k_max": 50, "belbachir": 200,
                                "seed": 0, "oblath_m_max": 30, "oblath_len_max": 12},
                               lambda p: None, _ni_units, _ni_unit),
}


def scan_kinds() -> list[str]:
    return list(SCANS)


def _normalize(kind: str, params: dict) -> dict:
    if kind not in SCANS:
        raise DomainError(f"unknown scan kind {kind!r}; expected one of {scan_kinds()}")
    spec = SCANS[kind]
    out = dict(spec.defaults)
    for k, v in params.items():
        if v is None:
            continue
        if k not in spec.defaults:
            raise DomainError(f"scan {kind!r} takes no parameter {k!r}")
        out[k] = v
    for k, v in out.items():
        if isinstance(spec.defaults[k], int) and (not isinstance(v, int) or v < 0):
            raise DomainError(f"parameter {k} must be a nonnegative integer, got {v!r}")
    if kind == "quadruple" and out["bound"] < 4:
        raise DomainError("quadruple scan needs bound >= 4")
    if kind == "nu-collision":
        out["pool"] = str(FinSet.parse(out["pool"]))
    return out


# worker-process state
_W: dict = {}


def _init_worker(kind, params, ctx):
    _W.update(kind=kind, params=params, ctx=ctx)


def _call_unit(unit):
    spec = SCANS[_W["kind"]]
    return spec.run_unit(_W["params"], _W["ctx"], unit)


def run_scan(kind: str, params: dict | None = None, *, workers: int = 1,
             checkpoint_every: int | None = None,
             resume: str | None = None) -> Iterator[ScanRecord]:
    """Stream the records of one scan.

    Output does not depend on ``workers``.  ``resume`` is a token taken from
    a ``checkpoint`` record of an earlier run with the same parameters.
    """
    params = _normalize(kind, params or {})
    counts = {"records": 0, "ok": 0, "violation": 0, "truncated": 0, "checked": 0}
    start = 0
    if resume is not None:
        state = decode_token(resume)
        if state.get("scan") != kind or state.get("params") != jsonable(params):
            raise DomainError("resume token belongs to a different scan or parameters")
        start = int(state["next"])
        try:
            # the token stores keys sorted; restore the fixed field order
            counts = {k: int(state["counts"][k]) for k in counts}
        except (KeyError, TypeError, ValueError):
            raise DomainError("corrupt resume token (counts)") from None
        if checkpoint_every is None:
            checkpoint_every = int(state["every"])
    spec = SCANS[kind]
    ctx = spec.prepare(params)
    units = spec.units(params, ctx)
    if start > len(units):
        raise DomainError("resume token points past the end of the scan")
    every = checkpoint_every or max(1, len(units) // 20)
    todo = units[start:]

    if workers > 1 and len(todo) > 1:
        pool = ProcessPoolExecutor(max_workers=workers, initializer=_init_worker,
                                   initargs=(kind, params, ctx))
        results = pool.map(_call_unit, todo, chunksize=max(1, len(todo) // (8 * workers)))
    else:
        pool = None
        results = (spec.run_unit(params, ctx, u) for u in todo)
    try:
        for i, (recs, checked) in enumerate(results, start=start):
            for r in recs:
                counts["records"] += 1
                counts[r.status] += 1
                yield r
            counts["checked"] += checked
            done = i + 1
            if done % every == 0 or done == len(units):
                token = encode_token({"scan": kind, "params": jsonable(params), "next": done,
                                      "every": every, "counts": counts})
                yield ScanRecord("checkpoint", {"scan": kind},
                                 {"next_unit": done, "units": len(units), "token": token})
    finally:
        if pool is not None:
            pool.shutdown()
    status = "violation" if counts["violation"] else "ok"
    yield ScanRecord("summary", {"scan": kind, **params}, dict(counts), status)
