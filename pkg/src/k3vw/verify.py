"""Acceptance checks 1-8, in a small (fast) and a full suite.

Every check is split into independent units so the CLI can spread them over
worker processes; units are combined in a fixed order and reports contain no
timings, so the output does not depend on the worker count.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import partial

import mpmath

from .asymptotics import a_relative_errors
from .cyclotomic import CyclotomicValue
from .invariants import InvariantFamily, alpha, alpha2, alpha2_prime, alpha3, alpha3_prime, expand_partition_function
from .parallel import ordered_map
from .qseries import eta_inv24_oracle, eta_inv24_table, shared_table
from .rademacher import a_exact, a_resolved
from .turan import family_sequence, hermite_deviation, log_concave_at, renormalized_jensen, turan_scan


@dataclass(frozen=True)
class Suite:
    name: str
    table_n: int
    rademacher_ns: range
    asymptotic_ns: range
    expansion_n: int
    identity_n: int
    turan_window: tuple[int, int]
    turan_ds: tuple[int, ...]
    log_concave_n: int
    hermite_ns: tuple[int, ...] = (100, 1000, 10000)
    hermite_ds: tuple[int, ...] = (2, 3)


SUITES = {
    "small": Suite("small", 300, range(1, 21), range(10, 101), 100, 100, (1, 100), (2, 3), 300),
    "full": Suite("full", 2000, range(1, 51), range(10, 201), 500, 300, (1, 1000), (2, 3, 4, 5), 1000),
}


@dataclass(frozen=True)
class CheckResult:
    criterion: int
    name: str
    passed: bool
    detail: str

    @property
    def status(self) -> str:
        return "pass" if self.passed else "FAIL"


def expansion_families() -> list[InvariantFamily]:
    fams = [InvariantFamily.su_r(r) for r in (1, 2, 3, 4, 6)]
    for p in (2, 3, 5):
        fams.append(InvariantFamily.su_p(p, 0, zero_class=True))
        fams += [InvariantFamily.su_p(p, w2) for w2 in (2 * p, 2 * p + 2, 1)]
    fams += [InvariantFamily.twisted(p, rho) for p in (2, 3) for rho in (1, 22)]
    return fams


def turan_targets() -> list[tuple[InvariantFamily, str]]:
    """Family/subsequence pairs with a Turan guarantee: su_r on n, su_p on n
    for odd w^2, on pn and p^2 n when 2p | w^2, twisted on pn."""
    out = [(InvariantFamily.su_r(r), "n") for r in (1, 2, 3, 4, 6)]
    for p in (2, 3, 5):
        out.append((InvariantFamily.su_p(p, 1), "n"))
        for fam in (InvariantFamily.su_p(p, 0, zero_class=True), InvariantFamily.su_p(p, 2 * p)):
            out += [(fam, "pn"), (fam, "p2n")]
    out += [(InvariantFamily.twisted(p, rho), "pn") for p in (2, 3) for rho in (1, 22)]
    return out


def turan_diagnostics() -> list[tuple[InvariantFamily, str]]:
    """Scanned and reported but not required: w^2 = 2p + 2 vanishes on p^2 n."""
    return [(InvariantFamily.su_p(p, 2 * p + 2), "p2n") for p in (2, 3, 5)]


# -- units --------------------------------------------------------------------

def _c1(n_max: int):
    table = eta_inv24_table(n_max)
    oracle = eta_inv24_oracle(n_max)
    recurrence = eta_inv24_table(n_max, "recurrence")
    vals = table.values
    return (
        table == oracle,
        table == recurrence,
        table[-1] == 1 and table[0] == 24,
        all(v > 0 for v in vals),
        all(vals[i + 1] > vals[i] for i in range(1, len(vals) - 1)),
    )


def _c2(n: int):
    table = shared_table(n)
    fixed = a_exact(n, 100, 256)
    doubled = a_resolved(n, precision=256)
    ok = fixed.rounded == table[n] and fixed.residual < mpmath.mpf("1e-6") and doubled.rounded == table[n]
    return ok, fixed.residual, doubled.terms_used


def _c3(n: int):
    (_, err), = a_relative_errors([n])
    with mpmath.workprec(256):
        bound = mpmath.exp(-mpmath.pi * mpmath.sqrt(n))
    return n, err, err < bound


def _as_field(value, order: int) -> CyclotomicValue:
    if isinstance(value, CyclotomicValue):
        return value
    return CyclotomicValue.rational(order, value)


def _c4(fam: InvariantFamily, n_max: int):
    series = expand_partition_function(fam, n_max)
    bad = [n for n, coeff in series.items() if _as_field(alpha(fam, n), series.order) != coeff]
    return fam.label, series.n_min, bad


def _c5_pattern(p: int, w2: int, zero: bool, n_max: int):
    # even w^2: zero exactly when p does not divide n - w^2/2 and (p^2 does not divide n or w is not the zero class)
    bad = []
    for n in range(0, n_max + 1):
        expect_zero = (n - w2 // 2) % p != 0 and (n % (p * p) != 0 or not zero)
        if alpha2(p, zero, w2, n).is_zero() != expect_zero:
            bad.append(n)
    return f"su_p(p={p},w2={w2}{',zero' if zero else ''})", bad


def _c5_prime2(p: int, w2: int, zero: bool, n_max: int):
    bad = [n for n in range(0, n_max + 1) if alpha2(p, zero, w2, p * n) != CyclotomicValue.rational(2 * p, alpha2_prime(p, zero, w2, n))]
    return f"alpha2_prime(p={p},w2={w2})", bad


def _c5_prime3(p: int, n_max: int):
    bad = [n for n in range(0, n_max + 1) if alpha3(p, 22, p * n) != alpha3_prime(p, n)]
    series = expand_partition_function(InvariantFamily.twisted(p, 22), p * n_max)
    stray = [n for n in series.support() if n % p]
    return f"alpha3_prime(p={p})", bad, stray


def _c6_log_concave(n_max: int):
    seq = family_sequence(InvariantFamily.su_r(1), n_max=n_max + 1)
    return [n for n in range(2, n_max + 1) if not log_concave_at(seq, n)]


def _c6_scan(fam: InvariantFamily, sub: str, d: int, window: tuple[int, int], required: bool = True):
    report = turan_scan(fam, d, window[0], window[1], subsequence=sub)
    seq = family_sequence(fam, sub, window[1] + d)
    identically_zero = len(report.nonpositive) == window[1] - window[0] + 1 and all(
        seq(n) == 0 for n in range(window[0], window[1] + d + 1)
    )
    return report, identically_zero, required


def _c7(d: int, ns: tuple[int, ...]):
    seq = family_sequence(InvariantFamily.su_r(1), n_max=max(ns) + d)
    return [hermite_deviation(renormalized_jensen(seq, d, n, seq.scale, seq.shift), d) for n in ns]


# -- combining ----------------------------------------------------------------

def _fmt(x) -> str:
    return mpmath.nstr(x, 3)


def _combine_c1(suite: Suite, results) -> tuple[bool, str]:
    eq_oracle, eq_rec, anchors, positive, growing = results[0]
    ok = all(results[0])
    return ok, (
        f"n_max={suite.table_n}: table==oracle {eq_oracle}, kronecker==recurrence {eq_rec}, "
        f"a(-1)=1 and a(0)=24 {anchors}, positive {positive}, increasing {growing}"
    )


def _combine_c2(suite: Suite, results) -> tuple[bool, str]:
    bad = [n for n, (ok, _, _) in zip(suite.rademacher_ns, results) if not ok]
    worst = max(r[1] for r in results)
    terms = max(r[2] for r in results)
    ns = suite.rademacher_ns
    return not bad, f"n in [{ns.start},{ns.stop - 1}]: mismatches {bad}, max residual at K=100 {_fmt(worst)}, doubling reached K={terms}"


def _combine_c3(suite: Suite, results) -> tuple[bool, str]:
    above = [n for n, _, ok in results if not ok]
    errs = {n: e for n, e, _ in results}
    rising = [n for n in sorted(errs) if n >= 25 and n + 1 in errs and not errs[n + 1] < errs[n]]
    ns = suite.asymptotic_ns
    return not above and not rising, (
        f"n in [{ns.start},{ns.stop - 1}]: above exp(-pi sqrt n) {above}, not decreasing after n>=25 {rising}, "
        f"error at n={ns.stop - 1} {_fmt(errs[ns.stop - 1])}"
    )


def _combine_c4(suite: Suite, results) -> tuple[bool, str]:
    bad = [(label, n) for label, _, ns in results for n in ns]
    return not bad, f"{len(results)} families, n <= {suite.expansion_n}: mismatches {bad[:10]}"


def _combine_c5(suite: Suite, results) -> tuple[bool, str]:
    problems = []
    for res in results:
        if len(res) == 2:
            label, bad = res
            problems += [f"{label}@{n}" for n in bad[:5]]
        else:
            label, bad, stray = res
            problems += [f"{label}@{n}" for n in bad[:5]]
            problems += [f"{label} stray q^({n}/p)" for n in stray[:5]]
    return not problems, f"{len(results)} identity groups, n <= {suite.identity_n}: violations {problems}"


def _combine_c6(suite: Suite, results) -> tuple[bool, str]:
    log_bad = results[0]
    held, failed, non_real, extra = [], [], set(), {}
    for report, zero, required in results[1:]:
        if not required:
            state = "identically zero" if zero else f"hyperbolic from {report.first_hyperbolic_n}"
            extra.setdefault(report.label, set()).add(state)
            continue
        if report.non_real:
            non_real.add(report.label)
        if report.first_hyperbolic_n is None:
            failed.append(f"{report.label}/d={report.d}" + (" (identically zero)" if zero else ""))
        else:
            held.append(report.first_hyperbolic_n)
    ok = not log_bad and not failed
    lo, hi = suite.turan_window
    notes = "; ".join(f"{k} {', '.join(sorted(v))}" for k, v in extra.items())
    return ok, (
        f"log-concave 2..{suite.log_concave_n}: violations {log_bad[:5]}; "
        f"window [{lo},{hi}], d in {list(suite.turan_ds)}: {len(held)} scans hyperbolic from n0 <= {max(held, default=None)}, "
        f"no threshold {failed}, real part scanned {sorted(non_real)}; "
        f"outside the guarantee: {notes}"
    )


def _combine_c7(suite: Suite, results) -> tuple[bool, str]:
    parts, ok = [], True
    for d, devs in zip(suite.hermite_ds, results):
        mono = all(b < a for a, b in zip(devs, devs[1:]))
        ok &= mono
        parts.append(f"d={d}: " + " > ".join(_fmt(x) for x in devs) + ("" if mono else " (not decreasing)"))
    return ok, f"alpha_1,1 at n in {list(suite.hermite_ns)}: " + "; ".join(parts)


def _plan(suite: Suite):
    """(criterion, name, units, combine) for checks 1-7."""
    w = suite.turan_window
    c5 = []
    for p in (2, 3, 5):
        for w2, zero in ((0, True), (2 * p, False), (2 * p + 2, False)):
            c5.append(partial(_c5_pattern, p, w2, zero, suite.identity_n))
        for w2, zero in ((0, True), (2 * p, False)):
            c5.append(partial(_c5_prime2, p, w2, zero, suite.identity_n))
    c5 += [partial(_c5_prime3, p, suite.identity_n) for p in (2, 3)]
    c6 = [partial(_c6_log_concave, suite.log_concave_n)]
    c6 += [partial(_c6_scan, fam, sub, d, w) for fam, sub in turan_targets() for d in suite.turan_ds]
    c6 += [partial(_c6_scan, fam, sub, d, w, False) for fam, sub in turan_diagnostics() for d in suite.turan_ds]
    return [
        (1, "oracle equivalence", [partial(_c1, suite.table_n)], _combine_c1),
        (2, "exact formula recovers a(n)", [partial(_c2, n) for n in suite.rademacher_ns], _combine_c2),
        (3, "leading term dominance", [partial(_c3, n) for n in suite.asymptotic_ns], _combine_c3),
        (4, "closed forms match expansions", [partial(_c4, f, suite.expansion_n) for f in expansion_families()], _combine_c4),
        (5, "vanishing and reindexing identities", c5, _combine_c5),
        (6, "Turan inequalities", c6, _combine_c6),
        (7, "Hermite limit", [partial(_c7, d, suite.hermite_ns) for d in suite.hermite_ds], _combine_c7),
    ]


def _call(unit):
    return unit()


def _determinism(suite: Suite) -> CheckResult:
    ns = list(suite.asymptotic_ns)[:8]
    serial = [repr(x) for x in ordered_map(_c3, ns, 1)]
    pooled = [repr(x) for x in ordered_map(_c3, ns, 2)]
    same = serial == pooled
    return CheckResult(8, "determinism", same, f"leading-term sweep over {len(ns)} n: serial and 2-worker results identical {same}")


def run_suite(name: str = "small", workers: int = 1) -> list[CheckResult]:
    suite = SUITES[name]
    plan = _plan(suite)
    # build the largest table once so forked workers inherit it
    shared_table(max(25 * (suite.turan_window[1] + 6), max(suite.hermite_ns) + 6))
    units = [u for _, _, us, _ in plan for u in us]
    flat = ordered_map(_call, units, workers)
    out, pos = [], 0
    for criterion, label, us, combine in plan:
        chunk = flat[pos : pos + len(us)]
        pos += len(us)
        ok, detail = combine(suite, chunk)
        out.append(CheckResult(criterion, label, ok, detail))
    out.append(_determinism(suite))
    return out
