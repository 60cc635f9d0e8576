"""Acceptance criteria 1-12, one reported line each (see the summary section of the run).

Every check is exact; the tolerance column only carries the runtime budget.
"""
import random
import subprocess
import sys
import time

import pytest

from asmcheck import checks, kernels, objects, recurrences as rec
from asmcheck.algebra import LaurentPolynomial, RationalFunction, parse_rational
from asmcheck.groups import (
    act,
    antisymmetrize,
    divides_delta,
    divides_vandermonde,
    hyperoctahedral,
    is_antisymmetric,
)
from asmcheck.series import constant_term, ct_fast, ct_iterated, res_iterated

import oracles

ASM_NUMBERS = [1, 2, 7, 42, 429, 7436]
SMALL = [(k, n) for k in (1, 2, 3) for n in range(k, 5)]


class Clock:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def test_01_asm_counts(criterion):
    with Clock() as c:
        got = [sum(1 for _ in objects.enumerate_asm(n)) for n in range(1, 7)]
    ok = got == ASM_NUMBERS and c.seconds < 60
    criterion(1, f"ASM counts n=1..6 -> {got}", ok, c.seconds, "exact, < 60 s")
    assert ok


def test_02_trapezoid_counts(criterion):
    with Clock() as c:
        bad = [(k, n) for n in range(1, 7) for k in range(1, n + 1) if objects.b_brute(k, n) != objects.m_brute(k, n)]
        spots = (objects.m_brute(3, 5), objects.m_brute(1, 3), objects.m_brute(2, 3))
    ok = not bad and spots == (387, 5, 7) and c.seconds < 180
    criterion(2, f"Gog = Magog counts for 1 <= k <= n <= 6; spots {spots}", ok, c.seconds, "exact, < 3 min")
    assert ok


def test_03_ct_totals(criterion):
    with Clock() as c:
        bad = []
        for k in (1, 2, 3):
            for n in range(k, 6):
                if constant_term(kernels.magog_total(k, n)) != objects.b_brute(k, n):
                    bad.append(("magog", k, n))
                if constant_term(kernels.gog_total(k, n)) != objects.m_brute(k, n):
                    bad.append(("gog", k, n))
    ok = not bad and c.seconds < 300
    criterion(3, "CT of both total integrands equals brute counts, k <= 3, n <= 5", ok, c.seconds, "exact, < 5 min",
              f"mismatches {bad}" if bad else "")
    assert ok


def _magog_border_brute(k, n, a):
    if not objects.in_land_of_magog(k, n, a):
        return 0
    return oracles.magog_border_table(k, n).get(tuple(a), 0)


def _tilde_brute(k, n, a):
    return objects.tilde_m(k, n, a) if objects.in_land_of_gog(k, n, a) else 0


def test_04_border_formulas(criterion):
    with Clock() as c:
        bad_c = [(k, n, a) for k, n in SMALL for a in objects.bar_land_of_magog(k, n)
                 if rec.c_value(k, n, a) != _magog_border_brute(k, n, a)]
        bad_h = [(k, n, a) for k, n in SMALL for a in objects.bar_land_of_gog(k, n)
                 if rec.h_value(k, n, a) != _tilde_brute(k, n, a)]
    ok = not bad_c and not bad_h
    criterion(4, "C_k = B_k on the extended Magog region; H_k = M~_k on the extended Gog region, k <= 3, n <= 4",
              ok, c.seconds)
    assert ok


@pytest.mark.xfail(strict=True, raises=AssertionError,
                   reason="the CT formula disagrees with M~ where n = k and a_1 = a_2 = k, points the extended region omits")
def test_04_border_formula_natural_gog_region(criterion):
    with Clock() as c:
        bad = [(k, n, a) for k, n in SMALL for a in objects.land_of_gog(k, n)
               if rec.h_value(k, n, a) != objects.tilde_m(k, n, a)]
    criterion(4, "H_k = M~_k on the natural Gog region, k <= 3, n <= 4", not bad, c.seconds,
              note=f"expected failure at {[(k, a) for k, n, a in bad]}" if bad else "")
    assert not bad


def test_05_recurrences(criterion):
    with Clock() as c:
        bad = []
        for k, n in SMALL:
            X, Y = rec.tabulate_X(k, n), rec.tabulate_Y(k, n)
            for a in objects.bar_land_of_magog(k, n):
                b = _magog_border_brute(k, n, a)
                if not X[(n, a)] == b == rec.c_value(k, n, a):
                    bad.append(("X", k, n, a))
            for a in objects.bar_land_of_gog(k, n) + objects.land_of_gog(k, n):
                if Y[(n, a)] != _tilde_brute(k, n, a):
                    bad.append(("Y", k, n, a))
            for a in objects.bar_land_of_gog(k, n):
                if rec.h_value(k, n, a) != _tilde_brute(k, n, a):
                    bad.append(("H", k, n, a))
            if n == k:
                continue
            for a in objects.land_of_magog(k, n):
                if not rec.check_ekhad(k, n, a)[0]:
                    bad.append(("ekhad", k, n, a))
            for a in objects.bar_land_of_magog(k, n):
                if a[0] <= n and a[-1] >= 1 and all(a[i] <= a[i - 1] for i in range(1, k)):
                    if not rec.check_pde_magog(k, n, a)[0]:
                        bad.append(("pde-magog", k, n, a))
            for a in objects.land_of_gog(k, n):
                for name, fn in (("howard", rec.check_howard), ("bill", rec.check_bill), ("pde-gog", rec.check_pde_gog)):
                    if not fn(k, n, a)[0]:
                        bad.append((name, k, n, a))
    ok = not bad
    criterion(5, "tabulations match brute and CT tables; Ekhad, Howard, Bill and both difference equations hold",
              ok, c.seconds, note=f"failures {bad[:5]}" if bad else "")
    assert ok


def test_06_gog_equals_magog(criterion):
    with Clock() as c:
        times = []
        ok = True
        for k in (1, 2, 3, 4):
            t = time.perf_counter()
            phi = kernels.phi(k)
            ok &= kernels.magog_avg_numerator(k) == phi * phi * (-1) ** k
            times.append(time.perf_counter() - t)
    ok = ok and times[-1] < 300
    criterion(6, "Delta_k times the antisymmetrized core equals (-1)^k Phi_k^2, k = 1..4", ok, c.seconds,
              "exact, k=4 < 5 min", f"k=4 took {times[-1]:.1f}s")
    assert ok


def test_07_signed_permutation_invariance(criterion):
    elements_3 = [checks.parse_element(t) for t in checks.ELEMENTS_3]
    with Clock() as c:
        bad = []
        cases = [(2, n, g) for n in (2, 3, 4) for g in hyperoctahedral(2)] + [(3, 3, g) for g in elements_3]
        for k, n, g in cases:
            if res_iterated(act(g, kernels.magog_res(k, n))) != objects.b_brute(k, n):
                bad.append(("magog", k, n, str(g)))
            if res_iterated(act(g, kernels.gog_res(k, n))) != objects.m_brute(k, n):
                bad.append(("gog", k, n, str(g)))
    flipped = sum(1 for g in elements_3 if -1 in g.eps)
    ok = not bad and len(elements_3) >= 6 and flipped >= 2
    criterion(7, f"residues invariant under all 8 elements of W(B2), n=2..4, and {len(elements_3)} elements of W(B3) "
              f"({flipped} with bars), n=3", ok, c.seconds)
    assert ok


def test_08_issai_and_vandermonde(criterion):
    with Clock() as c:
        issai = all(kernels.issai_lhs(k) == kernels.issai_rhs(k) for k in (1, 2, 3, 4))
        vander = True
        for k in range(1, 6):
            xs = [LaurentPolynomial.variable(i, k) for i in range(1, k + 1)]
            staircase = LaurentPolynomial.constant(1, k)
            product = LaurentPolynomial.constant(1, k)
            for i in range(k):
                staircase = staircase * xs[i] ** i
                for j in range(i + 1, k):
                    product = product * (xs[j] - xs[i])
            vander &= antisymmetrize(staircase, "Sk", k) == product
    ok = issai and vander
    criterion(8, f"Issai identity k <= 4: {issai}; Vandermonde k <= 5: {vander}", ok, c.seconds)
    assert ok


def test_09_act_five(criterion):
    ids = ["S151", "S1511", "S1512", "S152", "S1521", "S1522", "S15221", "S1523"]
    with Clock() as c:
        results = [checks.run_check(id_, **p) for id in ids for id_, p in checks.plan(4, 5, id)]
    bad = [f"{r.id}{r.params}" for r in results if r.status != "pass"]
    ok = not bad and {r.id for r in results} == set(ids)
    criterion(9, f"specializations, degree bounds, vanishing and trivial identities ({len(results)} checks)", ok,
              c.seconds, note=f"not passing {bad}" if bad else "")
    assert ok


def _swap(f, i, j):
    images = list(range(1, max(f.nvars, i, j) + 1))
    images[i - 1], images[j - 1] = j, i
    return f.permute(images)


def _fact_trials(rng, trials=100):
    """Seeded instances of each crucial fact; returns {name: failures}."""
    failures = {}

    def run(name, body):
        failures[name] = sum(0 if body() else 1 for _ in range(trials))

    def aleph1():
        f = oracles.random_admissible(rng, rng.randint(1, 3))
        return ct_iterated(f - _swap(f, 1, 2)) == 0

    def aleph3():
        k = rng.randint(1, 3)
        f = oracles.random_admissible(rng, k)
        P = oracles.random_poly(rng, k, terms=3, lo=-1, hi=1, coef=4)
        a = tuple(rng.randint(-1, 2) for _ in range(k))
        F = lambda n, b: ct_iterated(f * LaurentPolynomial.monomial(tuple(-v for v in b)))
        op = LaurentPolynomial({tuple(-e for e in ex): c for ex, c in P.terms.items()}, k)
        return rec.apply_operator(op, F, (0, a)) == ct_iterated(f * P * LaurentPolynomial.monomial(tuple(-v for v in a)))

    def aleph4():
        k = rng.randint(1, 3)
        f = oracles.random_admissible(rng, k)
        order = list(range(1, k + 1))
        rng.shuffle(order)
        return ct_iterated(f, order) == ct_iterated(f) and res_iterated(f, order) == res_iterated(f)

    def aleph5():
        A = rng.randint(0, 4)
        x = LaurentPolynomial.variable(1, 1)
        P = LaurentPolynomial.from_dict({(rng.randint(0, 2 * A),): rng.randint(-5, 5) for _ in range(3)}, 1)
        den = [(1 - x, A + 1)]
        ct_ok = ct_iterated(RationalFunction.from_factors(P * x ** -A, den)) == \
            ct_iterated(RationalFunction.from_factors(P.bar(1) * x ** -A, den))
        res_ok = res_iterated(RationalFunction.from_factors(P * x ** (-A - 1), den)) == \
            res_iterated(RationalFunction.from_factors(P.bar(1) * x ** (-A - 1), den))
        return ct_ok and res_ok

    def aleph6():
        k = rng.randint(1, 3)
        f = oracles.random_admissible(rng, k)
        order = list(range(1, k + 1))
        rng.shuffle(order)
        return ct_iterated(f, order) == res_iterated(f.times_poly(LaurentPolynomial.monomial((-1,) * k)), order)

    def aleph7():
        k = rng.randint(1, 3)
        f = oracles.random_poly(rng, k, terms=4, lo=0, hi=3, coef=6)
        return all(is_antisymmetric(antisymmetrize(f, g, k), g, k) for g in ("Sk", "WBk"))

    def aleph8():
        k = rng.randint(1, 3)
        f = oracles.random_poly(rng, k, terms=4, lo=0, hi=3, coef=6)
        return divides_vandermonde(antisymmetrize(f, "Sk", k), k) and divides_delta(antisymmetrize(f, "WBk", k), k)

    for name, body in [("1", aleph1), ("3", aleph3), ("4/4'", aleph4), ("5/5'", aleph5), ("6", aleph6),
                       ("7/7'", aleph7), ("8/8'", aleph8)]:
        run(name, body)
    return failures


def test_10_crucial_facts(criterion):
    with Clock() as c:
        failures = _fact_trials(random.Random(20261018))
        f = parse_rational("x1/(x1+x2)")
        counter = (ct_iterated(f, ["x1", "x2"]), ct_iterated(f, ["x2", "x1"]))
    ok = not any(failures.values()) and counter == (1, 0)
    criterion(10, f"crucial facts, 100 instances each, failures {failures}; x1/(x1+x2) by order -> {counter}",
              ok, c.seconds)
    assert ok


def test_11_engine_cross_validation(criterion):
    rng = random.Random(11)
    with Clock() as c:
        bad = 0
        for _ in range(200):
            f = oracles.random_admissible(rng, rng.randint(1, 3))
            bad += ct_fast(f) != ct_iterated(f)
    ok = bad == 0
    criterion(11, f"ct_fast = ct_iterated on 200 random admissible inputs ({bad} mismatches)", ok, c.seconds)
    assert ok


def _suite(*extra):
    start = time.perf_counter()
    out = subprocess.run([sys.executable, "-m", "asmcheck", "check", "all", "--format", "records", *extra],
                         capture_output=True, text=True)
    return out, time.perf_counter() - start


def test_12_suite_runtime(criterion):
    default, t_default = _suite()
    heavy, t_heavy = _suite("--heavy")
    n_default, n_heavy = len(default.stdout.splitlines()), len(heavy.stdout.splitlines())
    ok = default.returncode == 0 and heavy.returncode == 0 and t_default < 900 and t_heavy < 3600
    criterion(12, f"default suite {n_default} checks in {t_default:.1f}s; heavy suite {n_heavy} checks in {t_heavy:.1f}s",
              ok, t_default + t_heavy, "< 15 min / < 60 min")
    assert ok
