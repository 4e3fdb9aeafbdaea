"""Acceptance criteria, one test each, at their stated tolerances.

Every test records a ``PASS``/``FAIL criterion k: ...`` line; the lines are
printed at the end of the pytest run (see ``conftest.py``).
"""
import hashlib
import math
import random
import time
from collections import Counter
from fractions import Fraction

import mpmath
import pytest

from minorclass import asymptotics as asy
from minorclass import dist, egf
from minorclass import sampler as smp
from minorclass.classes import (
    BOWTIE_FREE,
    CATERPILLAR_FORESTS,
    DIAMOND_BOWTIE_FREE,
    FORESTS,
    MAX_DEGREE_TWO,
    PATH_FORESTS,
    all_classes_for_tests,
    all_egf,
    bounded,
    connected_egf,
    membership,
)
from minorclass.cli import sl_spot_check
from minorclass.egf import TruncatedEGF
from minorclass.oracle import count_class, member_masks

RESULTS = {}


def record(k, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"
    RESULTS[k] = line
    print(line)
    assert ok, line


def mp(q):
    return mpmath.mpf(q.numerator) / q.denominator


def rel(a, b):
    return abs(a / b - 1)


def coeff(cid, n, connected=False):
    return mp((connected_egf if connected else all_egf)(cid, n).coeff(n))


# 1 ---------------------------------------------------------------------------------------

def test_criterion_01_oracle_equivalence():
    start = time.perf_counter()
    bad, checks = [], 0
    for cid in all_classes_for_tests():
        a_ser, c_ser = all_egf(cid, 6), connected_egf(cid, 6)
        for n in range(1, 7):
            checks += 1
            if count_class(cid, n, method="both") != (a_ser.count(n), c_ser.count(n)):
                bad.append(f"{cid}@{n}")
    elapsed = time.perf_counter() - start
    record(1, not bad and elapsed < 120, f"{checks} class/size checks, {len(bad)} mismatches {bad}, {elapsed:.1f}s")


# 2 ---------------------------------------------------------------------------------------

def test_criterion_02_exact_formulas():
    c2 = connected_egf(MAX_DEGREE_TWO, 50)
    ok_m = c2.count(1) == 1 and c2.count(2) == 1 and all(
        c2.count(n) == Fraction(math.factorial(n), 2) + Fraction(math.factorial(n - 1), 2) for n in range(3, 51)
    )
    cp = connected_egf(PATH_FORESTS, 50)
    ok_p = cp.count(1) == 1 and all(cp.count(n) == Fraction(math.factorial(n), 2) for n in range(2, 51))
    record(2, ok_m and ok_p, f"max-degree-2 c_n formula n<=50: {ok_m}; path-forests c_n = n!/2: {ok_p}")


# 3 ---------------------------------------------------------------------------------------

def test_criterion_03_sl_identity():
    bad = [f"{cid}@{n}" for cid in all_classes_for_tests() for n in (10, 31, 60) if not sl_spot_check(cid, n)]
    record(3, not bad, f"P(S=n-k) = ((n-k)/n) P(L=n-k), n in 10,31,60, all classes; failures {bad}")


# 4 ---------------------------------------------------------------------------------------

def test_criterion_04_moment_duality():
    bad = []
    for cid in all_classes_for_tests():
        for n in range(1, 61):
            s_law = dist.root_component_dist(cid, n)
            n_law = dist.components_dist(cid, n)
            for i in range(1, min(3, n - 1) + 1):
                if dist.root_component_factorial_moment_series(cid, n, i) != s_law.factorial_moment(i, shift=1):
                    bad.append(f"S {cid}@{n},i={i}")
            for i in range(1, min(3, n) + 1):
                if dist.components_moments(cid, n, i) != n_law.factorial_moment(i):
                    bad.append(f"N {cid}@{n},i={i}")
    record(4, not bad, f"series moments == distribution moments, i<=3, n<=60, all classes; failures {bad[:5]}")


# 5 ---------------------------------------------------------------------------------------

def test_criterion_05_forests_ratio():
    target = mpmath.sqrt(mpmath.e)
    errs = {n: rel(coeff(FORESTS, n) / coeff(FORESTS, n, True), target) for n in (100, 400)}
    record(5, errs[400] < 0.02 and errs[400] < errs[100],
           f"|a_n/c_n / sqrt(e) - 1|: n=100 {float(errs[100]):.4f}, n=400 {float(errs[400]):.4f} (< 0.02)")


# 6 ---------------------------------------------------------------------------------------

def test_criterion_06_diamond_bowtie_free():
    e = mpmath.e
    err = {n: abs(coeff(DIAMOND_BOWTIE_FREE, n, True) * 4 * n / e ** n - 1) for n in (100, 400)}
    target = mpmath.mpf(0.25) * mpmath.mpf(0.5) ** -0.75
    beta = {n: rel(n * mp(dist.root_component_prob(DIAMOND_BOWTIE_FREE, n, n // 2)), target) for n in (100, 400)}
    ok_c = err[400] < 0.05 and err[400] < err[100]
    ok_b = beta[400] < 0.2 and beta[400] < beta[100]
    record(6, ok_c and ok_b,
           f"c_n*4n/(n!e^n) error n=100 {float(err[100]):.4f}, n=400 {float(err[400]):.4f} (< 0.05): {ok_c}; "
           f"beta local law error n=100 {float(beta[100]):.4f}, n=400 {float(beta[400]):.4f} (< 0.2): {ok_b}")


# 7 ---------------------------------------------------------------------------------------

def test_criterion_07_hayman():
    parts, ok = [], True
    for cid in (MAX_DEGREE_TWO, PATH_FORESTS, CATERPILLAR_FORESTS, BOWTIE_FREE):
        e50 = rel(asy.hayman_estimate(cid, 50), coeff(cid, 50))
        e400 = rel(asy.hayman_estimate(cid, 400), coeff(cid, 400))
        ok &= e400 < 0.15 and e400 < e50
        parts.append(f"{cid} {float(e50):.4f}->{float(e400):.4f}")
    record(7, ok, "hayman relative error n=50->400: " + ", ".join(parts))


# 8 ---------------------------------------------------------------------------------------

def _local_paths(n, x=1.0):
    scale = math.sqrt(2 * n)
    k = math.floor(x * scale)
    return rel(scale * mp(dist.root_component_prob(PATH_FORESTS, n, k)), x * math.exp(-x))


def _local_bowtie(n, x=1.0):
    scale = 2 * mpmath.mpf(n) ** (mpmath.mpf(2) / 3) / (mpmath.e - mpmath.mpf(5) / 4) ** (mpmath.mpf(2) / 3)
    k = int(mpmath.floor(x * scale))
    return rel(scale * mp(dist.root_component_prob(BOWTIE_FREE, n, k)), 2 * mpmath.sqrt(x / mpmath.pi) * mpmath.exp(-x))


def test_criterion_08_root_component_local_laws():
    p = {n: _local_paths(n) for n in (100, 400)}
    b = {n: _local_bowtie(n) for n in (100, 300)}
    ok_p = p[400] < 0.2 and p[400] < p[100]
    ok_b = b[300] < 0.25 and b[300] < b[100]
    record(8, ok_p and ok_b,
           f"path-forests xe^-x error n=100 {float(p[100]):.4f}, n=400 {float(p[400]):.4f} (< 0.2): {ok_p}; "
           f"bowtie-free Gamma(3/2) error n=100 {float(b[100]):.4f}, n=300 {float(b[300]):.4f} (< 0.25): {ok_b}")


# 9 ---------------------------------------------------------------------------------------

def test_criterion_09_gumbel():
    n = 500
    parts, ok = [], True
    start = time.perf_counter()
    for x in (-1, 0, 1, 2):
        k = asy.gumbel_k(n, x)
        p = float(dist.largest_component_cdf(PATH_FORESTS, n, k, backend="float"))
        lim = asy.gumbel_largest_cdf(x)
        ok &= abs(p - lim) < 0.1
        parts.append(f"x={x}: k={k} P={p:.5f} limit={lim:.5f} diff={abs(p - lim):.5f}")
    record(9, ok, "; ".join(parts) + f" ({time.perf_counter() - start:.1f}s)")


# 10 --------------------------------------------------------------------------------------

def test_criterion_10_poisson_dirichlet():
    drift = abs(asy.pd_rho(3) - asy.pd_rho(3, step=5e-4))
    n = 300
    p = float(dist.largest_component_cdf(DIAMOND_BOWTIE_FREE, n, math.ceil(0.6 * n), backend="float"))
    r = asy.pd_rho(1 / 0.6)
    record(10, drift < 1e-5 and abs(p - r) < 0.1,
           f"pd_rho(3) step-halving drift {drift:.2e} (< 1e-5); P(L_300 < 180) = {p:.5f} vs rho(1/0.6) = {r:.5f}, "
           f"diff {abs(p - r):.5f} (< 0.1)")


# 11 --------------------------------------------------------------------------------------

def test_criterion_11_bounded_dirac():
    p = float(dist.root_component_prob(bounded(3), 200, 3))
    record(11, p > 0.9, f"bounded:3 P(S_200 = 3) = {p:.5f} (> 0.9)")


# 12 --------------------------------------------------------------------------------------

def test_criterion_12_component_count():
    def err_paths(n):
        return rel(mp(dist.expected_components(PATH_FORESTS, n)), mpmath.sqrt(mpmath.mpf(n) / 2))

    def err_bowtie(n):
        pred = (mpmath.e - mpmath.mpf(5) / 4) ** (mpmath.mpf(2) / 3) * mpmath.mpf(n) ** (mpmath.mpf(1) / 3)
        return rel(mp(dist.expected_components(BOWTIE_FREE, n)), pred)

    p = {n: err_paths(n) for n in (100, 400)}
    b = {n: err_bowtie(n) for n in (100, 300)}
    ok_p = p[400] < 0.1 and p[400] < p[100]
    ok_b = b[300] < 0.15 and b[300] < b[100]
    record(12, ok_p and ok_b,
           f"path-forests E(N_n) vs sqrt(n/2): n=100 {float(p[100]):.4f}, n=400 {float(p[400]):.4f} (< 0.1): {ok_p}; "
           f"bowtie-free vs (e-5/4)^(2/3) n^(1/3): n=100 {float(b[100]):.4f}, n=300 {float(b[300]):.4f} "
           f"(< 0.15): {ok_b}")


# 13 --------------------------------------------------------------------------------------

SAMPLES = 100_000
NMAX = 60


def _run_class(cid, params):
    s = smp.BoltzmannSampler(smp.SamplerConfig(cid, seed=20240601, **params))
    sizes, small = Counter(), {n: Counter() for n in range(1, 5)}
    digest = hashlib.sha256()
    non_members = 0
    for g in s.samples(SAMPLES):
        sizes[g.n] += 1
        if 1 <= g.n <= 4:
            small[g.n][g.edge_mask()] += 1
        if not membership(cid, g):
            non_members += 1
        digest.update(g.to_graph6().encode() + b"\n")
    return s.x, sizes, small, non_members, digest.hexdigest()


@pytest.mark.slow
def test_criterion_13_sampler_statistics():
    parts, ok = [], True
    for cid in all_classes_for_tests():
        if not smp.supported(cid):
            parts.append(f"{cid} unsupported")
            continue
        params = smp.parameter_for_mean(cid)
        x, sizes, small, bad, digest = _run_class(cid, params)
        law = smp.size_law(cid, x, NMAX)
        emp = [sizes[n] / SAMPLES for n in range(NMAX + 1)]
        tv = 0.5 * (sum(abs(a - b) for a, b in zip(emp, law)) + abs((1 - sum(emp)) - max(0.0, 1 - sum(law))))
        uniform = True
        for n, counts in small.items():
            members = member_masks(cid, n)
            total = sum(counts.values())
            p = 1 / len(members)
            sigma = math.sqrt(total * p * (1 - p))
            uniform &= set(counts) <= set(members)
            uniform &= all(abs(counts[m] - total * p) <= 5 * sigma for m in members)
        rerun = _run_class(cid, params)[4] == digest
        good = tv < 0.01 and uniform and bad == 0 and rerun
        ok &= good
        parts.append(f"{cid} TV={tv:.4f} uniform={uniform} non-members={bad} identical-rerun={rerun}")
    record(13, ok, f"{SAMPLES} samples per class: " + "; ".join(parts))


# 14 --------------------------------------------------------------------------------------

def _random_series(rng, order):
    coeffs = [Fraction(0)] + [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(order)]
    return TruncatedEGF.from_coeffs(coeffs)


def test_criterion_14_series_kernels():
    rng = random.Random(14)
    round_trip = all(egf.log(egf.exp(f)) == f for f in (_random_series(rng, 40) for _ in range(10)))
    power_sum = True
    for _ in range(10):
        f = _random_series(rng, 15)
        total, power = egf.one(15), egf.one(15)
        for i in range(1, 16):
            power = egf.mul(power, f)
            total = total + power.scale(Fraction(1, math.factorial(i)))
        power_sum &= egf.exp(f) == total
    t = egf.solve_tree(40)
    fixed = t == egf.mul(egf.z(40), egf.exp(t))
    record(14, round_trip and power_sum and fixed,
           f"exp/log round trip order 40: {round_trip}; exp == sum f^i/i! order 15: {power_sum}; "
           f"T = z e^T order 40: {fixed}")
