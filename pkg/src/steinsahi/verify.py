"""Invariant suites behind ``steinsahi verify``.

Each suite returns a list of :class:`Check` records; a suite passes when
every check does.  ``quick`` shrinks sample counts, not tolerances.
"""
from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from . import blowup, detid, group, oracle, su11
from .gamma import pochhammer, pole_leading_coefficient, reciprocal_gamma, signed_log_gamma, gamma
from .kernel import (
    KernelParams,
    classify_positivity,
    coefficient,
    coefficient_sin_form,
    l2_diagonal_check,
    normalized_coefficient,
    scan_class,
    tau_zero_coefficient,
)
from .schur import character
from .signatures import (
    Signature,
    classify_unipotent,
    dimension,
    dual,
    enumerate_signatures,
    omega_support,
    shift_all,
)

__all__ = ["Check", "SUITES", "run_suite", "run_all"]


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    residual: float
    tol: float
    detail: str = ""

    def as_dict(self):
        d = asdict(self)
        d["residual"] = float(d["residual"])
        return d


def _rel(a, b) -> float:
    a, b = complex(a), complex(b)
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale > 0 else 0.0


def _noninteger(rng, lo, hi, margin=0.05):
    while True:
        x = rng.uniform(lo, hi)
        if abs(x - round(x)) > margin:
            return x


def _random_signature(rng, n, M):
    labels = sorted(rng.choice(np.arange(-M, M + 1), size=n, replace=False).tolist(), reverse=True)
    return Signature(tuple(labels))


def _check(out, suite, name, residual, tol, detail=""):
    residual = float(residual)
    out.append(Check(suite, name, bool(residual <= tol), residual, tol, detail))


# ---------------------------------------------------------------------------


def suite_gamma(rng, quick=False):
    out = []
    N = 200 if quick else 1000
    worst = 0.0
    for _ in range(N):
        x = _noninteger(rng, -10, 10, 1e-3)
        a, b = signed_log_gamma(x), signed_log_gamma(1 - x)
        lhs = a.sign * b.sign * math.exp(a.logmag + b.logmag)
        worst = max(worst, _rel(lhs, math.pi / math.sin(math.pi * x)))
    _check(out, "gamma", "reflection", worst, 1e-10)
    worst = 0.0
    for _ in range(N):
        z = complex(rng.uniform(-8, 8), rng.uniform(-3, 3))
        if abs(z.imag) < 0.1 and abs(z.real - round(z.real)) < 0.1 and round(z.real) <= 0:
            continue
        worst = max(worst, abs(reciprocal_gamma(z) * gamma(z) - 1))
    _check(out, "gamma", "reciprocal", worst, 1e-12)
    worst = 0.0
    for _ in range(N):
        a = Fraction(int(rng.integers(-50, 50)), int(rng.integers(1, 7)))
        k = int(rng.integers(-6, 7))
        try:
            worst = max(worst, abs(pochhammer(a, k) * pochhammer(a + k, -k) - 1))
        except ValueError:
            continue
    _check(out, "gamma", "pochhammer inverse", worst, 0.0)
    worst = 0.0
    for k in range(6):
        f = [gamma(-k + e) * e for e in (1e-4, 1e-5)]
        lim = (1e-4 * f[1] - 1e-5 * f[0]) / (1e-4 - 1e-5)
        worst = max(worst, abs(lim - pole_leading_coefficient(k)))
    _check(out, "gamma", "pole residues", worst, 1e-6)
    return out


def suite_signatures(rng, quick=False):
    out = []
    N = 2000 if quick else 10000
    bad = 0
    for _ in range(N):
        n = int(rng.integers(1, 7))
        m = _random_signature(rng, n, 20)
        if dual(dual(m)) != m or dimension(dual(m)) != dimension(m):
            bad += 1
        if dimension(shift_all(m, int(rng.integers(-5, 6)))) != dimension(m):
            bad += 1
    _check(out, "signatures", "dual involution and dimension", bad, 0)
    bad = 0
    for n in range(1, 4):
        for alpha in range(n):
            for m in enumerate_signatures(n, 4):
                c = classify_unipotent(m, alpha)
                if alpha == 0 and c.is_tail:
                    bad += 1
                if not c.is_tail and not 0 <= c.j <= n - alpha:
                    bad += 1
    _check(out, "signatures", "unipotent partition", bad, 0)
    return out


def suite_schur(rng, quick=False):
    out = []
    N = 100 if quick else 500
    worst = 0.0
    worst_shift = 0.0
    for _ in range(N):
        n = int(rng.integers(1, 5))
        m = _random_signature(rng, n, 5)
        psi = rng.uniform(0, 2 * math.pi, n)
        worst = max(worst, abs(np.conj(character(m, psi)) - character(dual(m), psi)))
        k = int(rng.integers(-3, 4))
        lhs = character(shift_all(m, k), psi)
        rhs = np.exp(1j * psi.sum()) ** k * character(m, psi)
        worst_shift = max(worst_shift, abs(lhs - rhs))
    _check(out, "schur", "conjugation is dual", worst, 1e-10)
    _check(out, "schur", "determinant shift", worst_shift, 1e-10)
    bad = sum(character(m, np.zeros(n)) != dimension(m)
              for n in range(1, 5) for m in enumerate_signatures(n, 3))
    _check(out, "schur", "character at identity", bad, 0)
    worst = 0.0
    sigs = list(enumerate_signatures(2, 3))
    pairs = [(a, b) for a in sigs for b in sigs]
    if quick:
        pairs = pairs[::7]
    for a, b in pairs:
        worst = max(worst, oracle.orthogonality_residual(a, b, 2))
    _check(out, "schur", "orthogonality n=2", worst, 1e-6)
    return out


def suite_kernel(rng, quick=False, n_values=(1, 2, 3)):
    out = []
    P = 8 if quick else 20
    worst = 0.0
    for n in n_values:
        sigs = list(enumerate_signatures(n, 4))
        for _ in range(P):
            s = _noninteger(rng, -1.5, 1.5)
            t = _noninteger(rng, -0.8 - s + 0.02, 0.8 - s - 0.02)
            if abs(t - round(t)) < 0.05:
                continue
            params = KernelParams(n, s, t)
            for m in [sigs[i] for i in rng.choice(len(sigs), size=min(4, len(sigs)), replace=False)]:
                c = coefficient(m, params)
                if c != 0:
                    worst = max(worst, _rel(oracle.coefficient_det_reduction(m, params), c))
    _check(out, "kernel", "closed form vs determinant reduction", worst, 1e-6)

    worst = 0.0
    for _ in range(50 if quick else 200):
        n = int(rng.integers(1, 4))
        s, t = _noninteger(rng, -3, 3), _noninteger(rng, -3, 3)
        if abs((s + t) - round(s + t)) < 0.05:
            continue
        m = _random_signature(rng, n, 6)
        params = KernelParams(n, s, t)
        worst = max(worst, _rel(coefficient_sin_form(m, params), coefficient(m, params)))
    _check(out, "kernel", "sin form vs reciprocal-Gamma form", worst, 1e-10)

    worst = 0.0
    for _ in range(200 if quick else 1000):
        n = int(rng.integers(1, 4))
        s, t = _noninteger(rng, -3, 3), _noninteger(rng, -3, 3)
        if abs((s + t) - round(s + t)) < 0.05:
            continue
        m = _random_signature(rng, n, 8)
        a = coefficient(shift_all(m, 1), KernelParams(n, s + 1, t - 1))
        # l_{s+1|t-1} = prod(-e^{i psi}) l_{s|t} = (-1)^n det(z) l_{s|t}
        b = (-1) ** n * coefficient(m, KernelParams(n, s, t))
        worst = max(worst, _rel(a, b))
    _check(out, "kernel", "determinant shift identity, sign (-1)^n", worst, 1e-12)

    worst = 0.0
    for _ in range(100 if quick else 300):
        n = int(rng.integers(1, 4))
        s, t = _noninteger(rng, -3, 3), _noninteger(rng, -3, 3)
        if abs((s + t) - round(s + t)) < 0.05:
            continue
        m = _random_signature(rng, n, 6)
        a = coefficient(dual(m), KernelParams(n, t, s))
        b = np.conj(coefficient(m, KernelParams(n, s, t)))
        worst = max(worst, _rel(a, b))
    _check(out, "kernel", "conjugation symmetry", worst, 1e-10)

    bad = 0
    for n in (1, 2, 3):
        for sigma in (-4.5, -2.25, -0.5, 0.7):
            for m in enumerate_signatures(n, 5):
                if m.labels[-1] < 0 and coefficient(m, KernelParams(n, sigma, 0.0)) != 0:
                    bad += 1
    _check(out, "kernel", "tau=0 support", bad, 0)

    bad = 0
    for n in (1, 2, 3) if not quick else (1, 2):
        grid = np.arange(-n - 2 + 0.125, 2, 0.25)
        for s in grid:
            for t in grid:
                params = KernelParams(n, float(s), float(t))
                if classify_positivity(params) != scan_class(params, 6):
                    bad += 1
    _check(out, "kernel", "positivity classifier vs sign scan [-6,6]", bad, 0)

    worst, worst_const = 0.0, 0.0
    for n in (1, 2, 3):
        tau = 0.37
        ref = Signature(tuple(range(n - 1, -1, -1)))
        r0 = oracle.l2_diagonal_limit(ref, n, tau)
        for m in enumerate_signatures(n, 3):
            lim = oracle.l2_diagonal_limit(m, n, tau)
            worst = max(worst, abs(lim / r0 - dimension(m) / dimension(ref)))
            worst_const = max(worst_const, _rel(lim, l2_diagonal_check(m, n, tau)))
    _check(out, "kernel", "L2 diagonal limit proportional to dimension", worst, 1e-8)
    _check(out, "kernel", "L2 diagonal limit vs closed-form constant", worst_const, 1e-8)

    e = su11.asymptotic_exponent(su11.Su11Params(0.3, 0.3))
    _check(out, "kernel", "growth exponent n=1", abs(e - 0.4), 0.02)
    return out


def suite_blowup(rng, quick=False):
    out = []
    worst = 0.0
    cases = 30 if quick else 100
    for _ in range(cases):
        n = int(rng.integers(1, 4))
        alpha = int(rng.integers(0, n))
        s, t = rng.uniform(0.2, 2), rng.uniform(0.2, 2)
        m = _random_signature(rng, n, 3)
        L = float(blowup.directional_limit(m, n, -n + alpha, 0, s, t))
        if L != 0:
            num = oracle.epsilon_limit(m, n, -n + alpha, 0, s, t).real
            worst = max(worst, _rel(num, L))
    _check(out, "blowup", "analytic limit vs epsilon extrapolation", worst, 1e-6)
    bad = 0
    worst = 0.0
    for n in (1, 2, 3):
        for alpha in range(n):
            pieces = blowup.decompose_lj(n, alpha, 3)
            for j in range(n - alpha + 1):
                alt = blowup.lj_via_derivative(j, n, alpha, 3)
                bad += sum(alt.exact[m] != pieces[j].exact[m] for m in alt.exact)
                signs = {(v > 0) - (v < 0) for v in pieces[j].exact.values()} - {0}
                bad += len(signs) > 1
            for m in pieces[0].exact:
                tail = classify_unipotent(m, alpha).is_tail
                zero = blowup.directional_limit(m, n, -n + alpha, 0, 1, 3) == 0
                bad += tail != zero
            for _ in range(5 if quick else 20):
                s = Fraction(int(rng.integers(1, 50)), int(rng.integers(1, 9)))
                t = Fraction(int(rng.integers(-50, 50)), int(rng.integers(1, 9)))
                if s + t == 0:
                    continue
                for m in pieces[0].exact:
                    lim = blowup.directional_limit(m, n, -n + alpha, 0, s, t)
                    bad += blowup.reconstruct(pieces, m, s, t) != lim
                    lam = Fraction(int(rng.integers(1, 9)), 3) * (-1) ** int(rng.integers(0, 2))
                    bad += blowup.directional_limit(m, n, -n + alpha, 0, lam * s, lam * t) != lim
    _check(out, "blowup", "decomposition, tails, reconstruction, homogeneity", bad, 0)
    return out


def suite_oracle(rng, quick=False, n_values=(1, 2)):
    out = []
    worst = 0.0
    for _ in range(40 if quick else 200):
        mu = complex(rng.uniform(0.05, 3), rng.uniform(-1, 1))
        b = rng.uniform(-6, 6)
        v, _ = oracle.lobachevsky_numeric(mu, b)
        worst = max(worst, _rel(v, oracle.lobachevsky_closed(mu, b)))
    _check(out, "oracle", "Lobachevsky closed vs numeric", worst, 1e-8)
    worst = 0.0
    if 2 in n_values:
        for _ in range(3 if quick else 10):
            s = _noninteger(rng, -1, 1)
            t = rng.uniform(-0.85 - s, 0.85 - s)
            params = KernelParams(2, s, t)
            for m in ((1, 0), (2, -1), (0, -3)):
                a = oracle.coefficient_det_reduction(m, params)
                b = oracle.coefficient_full_quadrature(m, params)
                worst = max(worst, _rel(a, b))
    _check(out, "oracle", "determinant reduction vs full quadrature", worst, 1e-4)
    r = max(oracle.gauss_2f1_check(2, 2, 200), oracle.gauss_2f1_check(1.5, 1.2, 200),
            oracle.gauss_2f1_check(2, 3, 200))
    _check(out, "oracle", "Gauss summation", r, 1e-8)
    return out


def suite_su11(rng, quick=False):
    out = []
    w_int, w_dual = 0.0, 0.0
    for _ in range(5 if quick else 20):
        p = su11.Su11Params(_noninteger(rng, -3, 3), _noninteger(rng, -3, 3))
        w_int = max(w_int, su11.intertwining_residual(p, 100)["1-q|1-p"])
        w_dual = max(w_dual, su11.duality_residual(p, 100))
    _check(out, "su11", "intertwining into T_{1-q|1-p}", w_int, 1e-12)
    _check(out, "su11", "duality under Pi", w_dual, 1e-12)
    pos = min(float(su11.complementary_inner(k, su11.Su11Params(p, q)))
              for p, q in ((0.5, 0.5), (0.1, 0.9), (0.7, 0.2)) for k in range(-50, 51))
    _check(out, "su11", "complementary inner products positive", 0.0 if pos > 0 else 1.0, 0.0)
    worst = 0.0
    for p, q in ((0.3, 0.3), (0.5, 0.5), (0.2, 0.9), (0.8, 0.6)):
        e = su11.asymptotic_exponent(su11.Su11Params(p, q))
        worst = max(worst, abs(e - (1 - p - q)))
    _check(out, "su11", "asymptotic exponent", worst, 0.02)
    bad = 0
    for k in range(-10, 11):
        for s, t in ((0, 1), (1, 0), (1, 1), (2, 5), (3, -1)):
            lim = su11.blowup_multiplier_10(k, s, t)
            # Gamma(p+q-1) c_k = 2^{sigma+tau} c^{kernel}_{-k}, sigma = p-1, tau = q-1
            ker = Fraction(1, 2) * blowup.directional_limit((-k,), 1, 0, -1, s, t)
            bad += lim != ker
    _check(out, "su11", "blow-up at (1,0) vs kernel limit", bad, 0)
    exact = su11.form_invariance_residual(su11.Su11Params(Fraction(3, 10), Fraction(7, 10)), 50)
    _check(out, "su11", "form invariance (exact)", float(exact), 0.0)
    hw = max(abs((k + Fraction(3, 7)) * su11.highest_weight_norm(k + 1, Fraction(3, 7))
                 - (k + 1) * su11.highest_weight_norm(k, Fraction(3, 7))) for k in range(30))
    _check(out, "su11", "highest weight recursion (exact)", float(hw), 0.0)
    worst = 0.0
    for _ in range(50):
        s = _noninteger(rng, -1.5, 1.5)
        t = _noninteger(rng, -1 - s + 0.02, 1 - s - 0.02)
        if abs(t - round(t)) < 0.05:
            continue
        P = su11.Su11Params(s + 1, t + 1)
        for mm in range(-20, 21):
            ker = coefficient((mm,), KernelParams(1, s, t))
            bridge = 2.0 ** (-(s + t)) * gamma(s + t + 1) * su11.multiplier_c(-mm, P)
            worst = max(worst, _rel(ker, bridge))
    _check(out, "su11", "n=1 bridge to the kernel", worst, 1e-10)
    return out


def suite_group(rng, quick=False):
    out = []
    N = 100 if quick else 500
    keys = ["action", "unitarity", "jacobian chain", "covariance matrix", "covariance scalar",
            "cartan", "cover associativity", "cover det", "weight unitarity", "stabilizers"]
    worst = dict.fromkeys(keys, 0.0)
    for _ in range(N):
        n = int(rng.integers(1, 5))
        g1, g2, g3 = (group.random_pseudounitary(n, rng=rng) for _ in range(3))
        z = group.random_unitary(n, rng)
        z1 = group.moebius_act(z, g1)
        worst["action"] = max(worst["action"], np.linalg.norm(
            group.moebius_act(z1, g2) - group.moebius_act(z, g1 @ g2), 2))
        worst["unitarity"] = max(worst["unitarity"], np.linalg.norm(z1 @ z1.conj().T - np.eye(n), 2))
        J = group.jacobian(z, g1 @ g2)
        worst["jacobian chain"] = max(worst["jacobian chain"],
                                      abs(J - group.jacobian(z, g1) * group.jacobian(z1, g2)) / J)
        u, v = group.random_unitary(n, rng), group.random_unitary(n, rng)
        params = KernelParams(n, complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                              complex(rng.uniform(-1, 1), rng.uniform(-1, 1)))
        mr, sr = group.kernel_covariance_residual(u, v, group.lift(g1), params)
        worst["covariance matrix"] = max(worst["covariance matrix"], mr)
        worst["covariance scalar"] = max(worst["covariance scalar"], sr)
        dec = group.cartan_decompose(g1)
        worst["cartan"] = max(worst["cartan"], np.linalg.norm(group.cartan_reassemble(*dec).matrix - g1.matrix, 2))
        x1, x2, x3 = group.lift(g1), group.lift(g2, 1), group.lift(g3, -2)
        A = group.cover_multiply(group.cover_multiply(x1, x2), x3)
        B = group.cover_multiply(x1, group.cover_multiply(x2, x3))
        worst["cover associativity"] = max(worst["cover associativity"], abs(A.s - B.s), abs(A.t - B.t),
                                           np.linalg.norm(A.g.matrix - B.g.matrix, 2))
        worst["cover det"] = max(worst["cover det"], A.residual())
        im, s0 = rng.uniform(-1, 1), rng.uniform(-2, 2)
        line = KernelParams(n, complex(s0, im), complex(-n - s0, im))
        worst["weight unitarity"] = max(worst["weight unitarity"], group.weight_unitarity_residual(u, x1, line))
        al = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        T = al + al.conj().T
        I = np.eye(n)
        worst["stabilizers"] = max(
            worst["stabilizers"],
            np.linalg.norm(group.moebius_act(I, group.stabilizer_dilation(al)) - I, 2),
            np.linalg.norm(group.moebius_act(I, group.stabilizer_translation(0.3 * T)) - I, 2))
    for k in keys:
        _check(out, "group", k, worst[k], 1e-10 if k == "weight unitarity" else 1e-9)
    viol = 0
    M = 1000 if quick else 10000
    for _ in range(M):
        n = int(rng.integers(1, 5))
        g1 = group.random_pseudounitary(n, rng=rng, tmax=3.0)
        g2 = group.random_pseudounitary(n, rng=rng, tmax=3.0)
        viol += max(group.cocycle_defect(g1, g2)) >= 1.0
    _check(out, "group", "cocycle ball claim (violations)", viol, 0)
    return out


def suite_detid(rng, quick=False):
    out = []
    per_n = 300 if quick else 1700
    for kind in ("cauchy", "bordered", "krattenthaler"):
        worst = max(float(detid.batch_residuals(kind, n, per_n, rng).max()) for n in range(1, 7))
        _check(out, "detid", kind, worst, 1e-9)
    # y_1 -> infinity turns the Cauchy determinant into the bordered one
    x, b = [1.0, 2.5, 4.0], [0.7, 3.1]
    target = detid.bordered_cauchy_rhs(x, b)
    ys = (1e3, 1e6)

    def extrapolate(vals):
        return (ys[1] * vals[1] - ys[0] * vals[0]) / (ys[1] - ys[0])

    # two-point extrapolation leaves an O(1/(y_a y_b)) = O(1e-9) * C error
    formula = [y * detid.cauchy_rhs(x, [y] + b) for y in ys]
    _check(out, "detid", "Cauchy to bordered degeneration (product side)",
           _rel(extrapolate(formula), target), 1e-6)
    direct = [y * np.linalg.det(np.array(detid.cauchy_matrix(x, [y] + b))) for y in ys]
    _check(out, "detid", "Cauchy to bordered degeneration (determinant side)",
           _rel(extrapolate(direct), target), 1e-6)
    xs = [Fraction(1), Fraction(3), Fraction(7, 2), Fraction(9)]
    a = [Fraction(2), Fraction(5), Fraction(1, 3)]
    b2 = [Fraction(2), Fraction(11), Fraction(4)]
    d = detid.exact_det(detid.krattenthaler_matrix(xs, a, b2))
    _check(out, "detid", "Krattenthaler a_1 = b_1 vanishes exactly",
           float(abs(d)) + float(abs(detid.krattenthaler_rhs(xs, a, b2))), 0.0)
    return out


SUITES = {
    "gamma": suite_gamma,
    "signatures": suite_signatures,
    "schur": suite_schur,
    "kernel": suite_kernel,
    "blowup": suite_blowup,
    "oracle": suite_oracle,
    "su11": suite_su11,
    "group": suite_group,
    "detid": suite_detid,
}


def run_suite(name: str, seed: int = 0, quick: bool = False, n=None) -> list:
    rng = np.random.default_rng(seed)
    fn = SUITES[name]
    if n is not None and name in ("kernel", "oracle"):
        return fn(rng, quick, n_values=(n,))
    return fn(rng, quick)


def run_all(names=None, seed: int = 0, quick: bool = False, n=None) -> dict:
    names = list(SUITES) if names is None or names == ["all"] else names
    checks, timings = [], {}
    for name in names:
        t0 = time.perf_counter()
        checks.extend(run_suite(name, seed, quick, n))
        timings[name] = time.perf_counter() - t0
    return {
        "schema": 1,
        "passed": all(c.passed for c in checks),
        "quick": quick,
        "seed": seed,
        "timings": timings,
        "checks": [c.as_dict() for c in checks],
    }
