"""Empirical certification of the congruence and periodicity claims.

Each check sweeps a finite grid, compares the closed-form/fast values
against direct summation, and returns a VerificationReport.  Reports
carry one summarized record per parameter class plus one individual
record per failing cell, so a failure is always accompanied by its
counterexample.

Theorem ids used in records:

    T1    full-block residue mod a prime (a = 1)
    T2.1  full-block residue mod 2^a, a >= 2
    T2.2  full-block residue mod q^a, q odd, a >= 2
    C2.3  q^(a-1) divides the full-block sum
    L2.2  q-divisibility of binomial expansion terms
    C2.5  (t + q^j)^n = t^n mod q^(i+j) when q^i | n
    T2.4  generator/block vanishing mod q^(i+j)
    T3.1  simultaneous row period and its sharpness
    T3.2  exact per-prime-power period formula
    LCM   combined period for composite moduli
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .arith import PrimePower, divisors, is_prime, nu
from .powersum import (
    _VEC_MOD_MAX,
    _vec_powmod,
    naive_sum,
    period,
    prime_power_congruence,
    row_period,
)

DEFAULT_PERIOD_BUDGET = 10**6

PASS = "pass"
FAIL = "fail"


@dataclass(frozen=True)
class VerificationRecord:
    """Outcome of one checked claim or one summarized sweep.

    Rows summarizing a class with a common asserted value carry that
    value in expected/actual; other summarized rows carry cell counts
    (expected = cells checked, actual = cells that agreed); individual
    rows carry the two values that were compared.  counterexample is
    present exactly when status == "fail".
    """

    theorem_id: str
    params: dict[str, str]
    status: str
    expected: str
    actual: str
    counterexample: dict[str, str] | None = None

    def __post_init__(self):
        if self.status not in (PASS, FAIL):
            raise ValueError(f"status must be pass or fail, got {self.status!r}")
        if (self.status == FAIL) != (self.counterexample is not None):
            raise ValueError("counterexample must be present iff status is fail")


@dataclass
class VerificationReport:
    """A batch of records with the swept grid and per-theorem tallies."""

    records: list[VerificationRecord]
    grid: dict[str, str]
    summary: dict[str, dict[str, int]]
    wall_time_ms: int

    @property
    def ok(self) -> bool:
        return all(c[FAIL] == 0 for c in self.summary.values())


def _params(**kw) -> dict[str, str]:
    return {k: str(v) for k, v in kw.items()}


def _rec(tid: str, params: dict, expected, actual, ok: bool) -> VerificationRecord:
    p = {k: str(v) for k, v in params.items()}
    return VerificationRecord(
        theorem_id=tid,
        params=p,
        status=PASS if ok else FAIL,
        expected=str(expected),
        actual=str(actual),
        counterexample=None if ok else dict(p),
    )


def _summarize(records: list[VerificationRecord]) -> dict[str, dict[str, int]]:
    out: dict[str, dict[str, int]] = {}
    for r in records:
        c = out.setdefault(r.theorem_id, {PASS: 0, FAIL: 0})
        c[r.status] += 1
    return out


def _finish(records, grid, t0) -> VerificationReport:
    return VerificationReport(
        records=records,
        grid={k: str(v) for k, v in grid.items()},
        summary=_summarize(records),
        wall_time_ms=int((time.perf_counter() - t0) * 1000),
    )


def merge_reports(named: list[tuple[str, VerificationReport]]) -> VerificationReport:
    """Concatenate reports, prefixing grid keys with the given names."""
    records: list[VerificationRecord] = []
    grid: dict[str, str] = {}
    wall = 0
    for name, rep in named:
        records.extend(rep.records)
        for k, v in rep.grid.items():
            grid[f"{name}.{k}"] = v
        wall += rep.wall_time_ms
    return VerificationReport(records, grid, _summarize(records), wall)


# ---------------------------------------------------------------------------
# report serialization


def emit_report(report: VerificationReport, fmt: str = "json") -> bytes:
    """Serialize a report as json, csv, or text.  Deterministic output."""
    if fmt == "json":
        recs = []
        for r in report.records:
            d = {
                "theorem_id": r.theorem_id,
                "params": r.params,
                "status": r.status,
                "expected": r.expected,
                "actual": r.actual,
            }
            if r.counterexample is not None:
                d["counterexample"] = r.counterexample
            recs.append(d)
        doc = {
            "records": recs,
            "summary": report.summary,
            "grid": report.grid,
            "wall_time_ms": report.wall_time_ms,
        }
        return (json.dumps(doc, separators=(",", ":")) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["theorem_id", "params", "status", "expected", "actual"])
        for r in report.records:
            packed = ";".join(f"{k}={v}" for k, v in sorted(r.params.items()))
            w.writerow([r.theorem_id, packed, r.status, r.expected, r.actual])
        return buf.getvalue().encode()
    if fmt == "text":
        lines = ["verification report"]
        if report.grid:
            lines.append(
                "grid: " + " ".join(f"{k}={v}" for k, v in sorted(report.grid.items()))
            )
        for tid in sorted(report.summary):
            c = report.summary[tid]
            lines.append(f"{tid}: {c[PASS]} pass, {c[FAIL]} fail")
        for r in report.records:
            if r.status == FAIL:
                packed = " ".join(f"{k}={v}" for k, v in sorted(r.counterexample.items()))
                lines.append(
                    f"FAIL {r.theorem_id} at {packed}: "
                    f"expected {r.expected}, got {r.actual}"
                )
        lines.append(f"wall time: {report.wall_time_ms} ms")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}, expected json, csv, or text")


def parse_report(data: bytes | str) -> VerificationReport:
    """Inverse of emit_report for the json format."""
    doc = json.loads(data)
    records = [
        VerificationRecord(
            theorem_id=r["theorem_id"],
            params=r["params"],
            status=r["status"],
            expected=r["expected"],
            actual=r["actual"],
            counterexample=r.get("counterexample"),
        )
        for r in doc["records"]
    ]
    return VerificationReport(
        records=records,
        grid=doc["grid"],
        summary={t: dict(c) for t, c in doc["summary"].items()},
        wall_time_ms=doc["wall_time_ms"],
    )


# ---------------------------------------------------------------------------
# shared sweep machinery


def _primes_upto(x: int) -> list[int]:
    if x < 2:
        return []
    sieve = bytearray([1]) * (x + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(x) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i in range(2, x + 1) if sieve[i]]


def _prime_powers_upto(x: int) -> list[PrimePower]:
    out = []
    for p in _primes_upto(x):
        v, a = p, 1
        while v <= x:
            out.append(PrimePower(p, a))
            v *= p
            a += 1
    return sorted(out, key=lambda pp: (pp.value, pp.q))


def _sum_table(n: int, k: int, length: int) -> np.ndarray:
    """S_n(m) mod k for m = 0, 1, ..., length as an int64 array.

    Same term-by-term sum as naive_sum, amortized: i^n mod k depends only
    on i mod k, so one power table plus a running sum covers the range.
    """
    if k == 1:
        return np.zeros(length + 1, dtype=np.int64)
    if k <= _VEC_MOD_MAX and k >= 1024:
        powtab = _vec_powmod(np.arange(k, dtype=np.int64), n, k)
    else:
        powtab = np.fromiter((pow(r, n, k) for r in range(k)), dtype=np.int64, count=k)
    terms = powtab[np.arange(1, length + 1, dtype=np.int64) % k]
    out = np.empty(length + 1, dtype=np.int64)
    out[0] = 0
    if length * (k - 1) < 2**62:
        out[1:] = np.cumsum(terms) % k
        return out
    # running sums could overflow int64: rebase chunk by chunk
    step = max(1, 2**62 // k)
    acc = 0
    for lo in range(0, length, step):
        hi = min(lo + step, length)
        c = np.cumsum(terms[lo:hi]) + acc
        out[lo + 1 : hi + 1] = c % k
        acc = int(out[hi])
    return out


def _sweep_block_sums(q: int, a: int, n_max: int) -> list[int]:
    """[S_n(q^a) mod q^a for n = 1..n_max] by incremental power tables."""
    m = q**a
    if m <= _VEC_MOD_MAX:
        base = np.arange(1, m + 1, dtype=np.int64) % m
        acc = base.copy()
        out = [int(acc.sum() % m)]
        for _ in range(n_max - 1):
            acc = acc * base % m
            out.append(int(acc.sum() % m))
        return out
    return [naive_sum(n, m, m, oracle_limit=m) for n in range(1, n_max + 1)]


# ---------------------------------------------------------------------------
# checks


def check_congruence_theorems(prime_power_max: int, n_max: int) -> VerificationReport:
    """Closed-form full-block residues vs direct sums, every q^a and n.

    For each prime power q^a <= prime_power_max and each n in [1, n_max],
    compares prime_power_congruence(n, q^a) with the summed S_n(q^a) mod
    q^a; for a >= 2 also checks divisibility by q^(a-1).
    """
    t0 = time.perf_counter()
    if prime_power_max < 2:
        raise ValueError(f"prime_power_max must be >= 2, got {prime_power_max}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    records = []
    for pp in _prime_powers_upto(prime_power_max):
        q, a = pp
        if a == 1:
            tid = "T1"
        elif q == 2:
            tid = "T2.1"
        else:
            tid = "T2.2"
        sums = _sweep_block_sums(q, a, n_max)
        # the predicted residue is constant within a case class, so group
        # n by class and emit one row per class (smallest n as witness)
        classes: dict[int, list[int]] = {}
        for n, observed in enumerate(sums, start=1):
            predicted = prime_power_congruence(n, pp).value
            if predicted == observed:
                classes.setdefault(predicted, []).append(n)
            else:
                records.append(
                    _rec(tid, _params(q=q, a=a, n=n), predicted, observed, False)
                )
        for predicted in sorted(classes):
            ns = classes[predicted]
            records.append(
                _rec(tid, _params(q=q, a=a, n=ns[0], n_count=len(ns)),
                     predicted, predicted, True)
            )
        if a >= 2:
            low = q ** (a - 1)
            div_ok = sum(1 for s in sums if s % low == 0)
            for n, s in enumerate(sums, start=1):
                if s % low != 0:
                    records.append(
                        _rec("C2.3", _params(q=q, a=a, n=n), 0, s % low, False)
                    )
            if div_ok:
                records.append(
                    _rec("C2.3", _params(q=q, a=a, n=1, n_count=div_ok), 0, 0, True)
                )
    return _finish(records, {"prime_power_max": prime_power_max, "n_max": n_max}, t0)


def check_lemma_binomial(q: int, i_max: int, j_max: int, n_max: int) -> VerificationReport:
    """q-power divisibility of binomial expansion terms C(n,k) * q^(jk).

    With i = min(i_max, nu_q(n)): q^(i+j) divides every term with k >= 1,
    and q^(i+j+1) divides every term with k >= 2.  Exact big-integer
    binomials throughout.  q must be an odd prime.
    """
    t0 = time.perf_counter()
    if q == 2 or not is_prime(q):
        raise ValueError(f"q must be an odd prime, got {q}")
    if i_max < 0 or j_max < 1 or n_max < 1:
        raise ValueError("need i_max >= 0, j_max >= 1, n_max >= 1")
    records = []
    for j in range(1, j_max + 1):
        passed = 0
        for n in range(1, n_max + 1):
            i = min(i_max, nu(q, n))
            need1 = q ** (i + j)
            need2 = q ** (i + j + 1)
            ok = True
            for kk in range(1, n + 1):
                term = math.comb(n, kk) * q ** (j * kk)
                bound = need2 if kk >= 2 else need1
                if term % bound != 0:
                    ok = False
                    records.append(
                        _rec("L2.2", _params(q=q, i=i, j=j, n=n, k=kk),
                             0, term % bound, False)
                    )
            if ok:
                passed += 1
        records.append(
            _rec("L2.2", _params(q=q, j=j, i_max=i_max, n_max=n_max),
                 n_max, passed, passed == n_max)
        )
    return _finish(records, {"q": q, "i_max": i_max, "j_max": j_max, "n_max": n_max}, t0)


def check_power_congruence(q: int, i: int, j: int, n: int, t_max: int) -> VerificationReport:
    """(t + q^j)^n = t^n mod q^(i+j) for t = 1..t_max, given q^i | n.

    q must be an odd prime and q^i must divide n.
    """
    t0 = time.perf_counter()
    if q == 2 or not is_prime(q):
        raise ValueError(f"q must be an odd prime, got {q}")
    if i < 0 or j < 1 or n < 1 or t_max < 1:
        raise ValueError("need i >= 0, j >= 1, n >= 1, t_max >= 1")
    if n % q**i != 0:
        raise ValueError(f"q^i = {q**i} must divide n = {n}")
    m = q ** (i + j)
    shift = q**j
    records = []
    passed = 0
    for t in range(1, t_max + 1):
        lhs = pow(t + shift, n, m)
        rhs = pow(t, n, m)
        if lhs == rhs:
            passed += 1
        else:
            records.append(_rec("C2.5", _params(q=q, i=i, j=j, n=n, t=t), rhs, lhs, False))
    records.append(
        _rec("C2.5", _params(q=q, i=i, j=j, n=n, t_max=t_max), t_max, passed,
             passed == t_max)
    )
    return _finish(records, {"q": q, "i": i, "j": j, "n": n, "t_max": t_max}, t0)


def check_generator_permutation(q: int) -> VerificationReport:
    """Multiplication by any unit permutes the nonzero residues mod q.

    For every g in [1, q-1], {g, 2g, ..., (q-1)g} mod q must equal
    {1, ..., q-1}.  q must be an odd prime, at most 10^4.
    """
    t0 = time.perf_counter()
    if q == 2 or not is_prime(q):
        raise ValueError(f"q must be an odd prime, got {q}")
    if q > 10**4:
        raise ValueError(f"q capped at 10^4 for the quadratic sweep, got {q}")
    t = np.arange(1, q, dtype=np.int64)
    records = []
    passed = 0
    for lo in range(1, q, 128):
        gs = np.arange(lo, min(lo + 128, q), dtype=np.int64)
        images = np.sort(gs[:, None] * t[None, :] % q, axis=1)
        ok_rows = (images == t[None, :]).all(axis=1)
        passed += int(ok_rows.sum())
        for idx in np.flatnonzero(~ok_rows):
            g = int(gs[idx])
            records.append(
                _rec("T2.4", _params(q=q, g=g), q - 1,
                     len(np.unique(images[idx])), False)
            )
    records.append(_rec("T2.4", _params(q=q), q - 1, passed, passed == q - 1))
    return _finish(records, {"q": q}, t0)


def check_generator_block(q: int, j_max: int, n_max: int) -> VerificationReport:
    """Vanishing of S_n(q^j) mod q^(i+j) when (q-1) does not divide n.

    i = nu_q(n).  Sums come from naive_sum, the direct oracle.  q must be
    an odd prime.
    """
    t0 = time.perf_counter()
    if q == 2 or not is_prime(q):
        raise ValueError(f"q must be an odd prime, got {q}")
    if j_max < 1 or n_max < 1:
        raise ValueError("need j_max >= 1, n_max >= 1")
    records = []
    for j in range(1, j_max + 1):
        total = 0
        passed = 0
        for n in range(1, n_max + 1):
            if n % (q - 1) == 0:
                continue
            total += 1
            i = nu(q, n)
            got = naive_sum(n, q**j, q ** (i + j))
            if got == 0:
                passed += 1
            else:
                records.append(
                    _rec("T2.4", _params(q=q, j=j, n=n, i=i), 0, got, False)
                )
        records.append(
            _rec("T2.4", _params(q=q, j=j, n_max=n_max), total, passed, passed == total)
        )
    return _finish(records, {"q": q, "j_max": j_max, "n_max": n_max}, t0)


def minimal_period_bruteforce(n: int, k: int, budget: int = DEFAULT_PERIOD_BUDGET) -> int:
    """Smallest period of m -> S_n(m) mod k, found by exhaustive comparison.

    Searches the divisors of row_period(k) in ascending order, comparing
    shifted copies of the actual sequence (no formulas involved).  Raises
    ValueError when row_period(k) exceeds the budget.
    """
    if n < 1:
        raise ValueError(f"exponent n must be >= 1, got {n}")
    p = row_period(k)
    if p > budget:
        raise ValueError(
            f"row period {p} of k = {k} exceeds the brute-force budget {budget}"
        )
    vals = _sum_table(n, k, 2 * p)
    head = vals[: p + 1]
    for d in divisors(p):
        if np.array_equal(vals[d : p + d + 1], head):
            return d
    raise RuntimeError(f"no divisor of {p} is a period for n={n}, k={k}")


def check_period_formulas(
    k_max: int, n_max: int, budget: int = DEFAULT_PERIOD_BUDGET
) -> VerificationReport:
    """Predicted periods vs brute-force minimal periods on a full grid.

    For every k <= k_max and n <= n_max the lcm-combined predicted period
    must equal the exhaustively measured minimal period.  Records fall
    under T3.2 for prime-power k and LCM for composite (or k = 1).
    """
    t0 = time.perf_counter()
    if k_max < 1 or n_max < 1:
        raise ValueError("need k_max >= 1, n_max >= 1")
    records = []
    for k in range(1, k_max + 1):
        parts = period(1, k).per_prime
        tid = "T3.2" if len(parts) == 1 else "LCM"
        passed = 0
        for n in range(1, n_max + 1):
            predicted = period(n, k).combined
            measured = minimal_period_bruteforce(n, k, budget)
            if predicted == measured:
                passed += 1
            else:
                records.append(
                    _rec(tid, _params(k=k, n=n), predicted, measured, False)
                )
        records.append(
            _rec(tid, _params(k=k, n_max=n_max), n_max, passed, passed == n_max)
        )
    return _finish(records, {"k_max": k_max, "n_max": n_max}, t0)


def check_row_period(
    k: int, n_window: int | None = None, budget: int = DEFAULT_PERIOD_BUDGET
) -> VerificationReport:
    """The simultaneous period P = prod q^(a+1) holds and is sharp.

    (a) P is a period of m -> S_n(m) mod k for every n in [1, n_window].
    (b) For each prime q | k, the maximal proper divisor P/q fails for
        some n, with the witness found at n = q - 1 (n = 1 for q = 2)
        or located by scanning the window.

    n_window defaults to max(50, largest prime factor of k), which always
    contains the expected witnesses.
    """
    t0 = time.perf_counter()
    p = row_period(k)
    if p > budget:
        raise ValueError(
            f"row period {p} of k = {k} exceeds the brute-force budget {budget}"
        )
    fac = period(1, k).per_prime
    primes = [pp.prime_power.q for pp in fac]
    if n_window is None:
        n_window = max(50, max(primes, default=2))
    tables: dict[int, np.ndarray] = {}

    def table(n: int) -> np.ndarray:
        if n not in tables:
            tables[n] = _sum_table(n, k, 2 * p)
        return tables[n]

    records = []
    passed = 0
    for n in range(1, n_window + 1):
        vals = table(n)
        mism = np.flatnonzero(vals[p : 2 * p + 1] != vals[: p + 1])
        if mism.size == 0:
            passed += 1
        else:
            m = int(mism[0])
            records.append(
                _rec("T3.1", _params(k=k, n=n, period=p, m=m),
                     int(vals[m]), int(vals[m + p]), False)
            )
    records.append(
        _rec("T3.1", _params(k=k, period=p, n_window=n_window), n_window, passed,
             passed == n_window)
    )
    for q in primes:
        d = p // q
        first = 1 if q == 2 else q - 1
        order = [first] + [n for n in range(1, n_window + 1) if n != first]
        witness = None
        for n in order:
            vals = table(n)
            diff = np.flatnonzero(vals[d : p + d + 1] != vals[: p + 1])
            if diff.size:
                witness = (n, int(diff[0]))
                break
        if witness is not None:
            records.append(
                _rec("T3.1",
                     _params(k=k, divisor=d, q=q, witness_n=witness[0],
                             witness_m=witness[1]),
                     1, 1, True)
            )
        else:
            records.append(_rec("T3.1", _params(k=k, divisor=d, q=q), 1, 0, False))
    return _finish(records, {"k": k, "n_window": n_window, "budget": budget}, t0)
