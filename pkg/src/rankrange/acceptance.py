"""End-to-end acceptance checks, one function per criterion.

Every check is seeded and returns ``(passed, detail)``; :func:`run_all`
wraps them in :class:`CriterionResult` records. The ``selftest`` command
and ``tests/test_acceptance.py`` both run these.
"""

import io
import math
import time
from dataclasses import dataclass

import numpy as np

from .dilation import (
    build_dilation,
    radius_bound_report,
    telescoping_residual,
    containment_reports,
    verify_dilation,
)
from .engine import (
    affine_map_region,
    conjugate_region,
    direct_sum,
    numerical_radius,
    rank_range,
    rank_ranges,
)
from .geometry import contains_point, hausdorff, is_subset
from .linalg import hermitian_eigenvalues, rotated_hermitian_part, shift_matrix
from .oracles import (
    char_det,
    hermitian_range,
    nilpotent_bound,
    normal_range,
    replicated_kth_largest,
    shift_range,
)
from .samples import (
    complex_gaussian,
    random_hermitian,
    random_isometry,
    random_nilpotent_contraction,
    random_normal,
    random_unitary,
)

__all__ = ["CriterionResult", "CRITERIA", "run_all", "run_one", "nilpotent_sample"]

THETA_SAMPLES = 720


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str

    def line(self):
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d}. {self.title}: {self.detail}"


def _same_or_close(A, B, tol):
    """Both empty, or both non-empty and within Hausdorff ``tol``; returns (ok, distance)."""
    if A.is_empty or B.is_empty:
        return A.is_empty == B.is_empty, 0.0
    d = hausdorff(A, B)
    return d <= tol, d


def shift_disc_reproduction():
    start = time.perf_counter()
    worst, cases = 0.0, 0
    for n in range(2, 13):
        ks = [k for k in range(1, n + 1) if math.cos(k * math.pi / (n + 1)) > 1e-12]
        for res in rank_ranges(shift_matrix(n), ks, THETA_SAMPLES, 1e-9):
            worst = max(worst, hausdorff(res.region, shift_range(n, res.k)))
            cases += 1
    elapsed = time.perf_counter() - start
    ok = worst <= 5e-4 and elapsed < 10.0
    return ok, f"{cases} cases, worst Hausdorff {worst:.3e} (<= 5e-4), {elapsed:.2f}s (< 10s)"


def shift_singleton():
    bad, worst = [], 0.0
    for n in (3, 5, 7, 9, 11):
        region = rank_range(shift_matrix(n), (n + 1) // 2, THETA_SAMPLES, 1e-9).region
        if region.is_empty:
            bad.append(n)
            continue
        v = region.vertices
        diam = float(np.max(np.abs(v[:, None] - v[None, :])))
        worst = max(worst, diam)
        if region.kind != "point" or diam > 1e-8 or not contains_point(region, 0, 1e-8):
            bad.append(n)
    return not bad, f"max diameter {worst:.2e} (<= 1e-8), failing n: {bad or 'none'}"


def shift_emptiness():
    bad, cases = [], 0
    for n in range(2, 13):
        ks = list(range((n + 1) // 2 + 1, n + 1))
        if not ks:
            continue
        for res in rank_ranges(shift_matrix(n), ks, THETA_SAMPLES, 1e-9):
            cases += 1
            if not res.region.is_empty:
                bad.append((n, res.k))
    return not bad, f"{cases} cases, non-empty: {bad or 'none'}"


def tridiagonal_eigenvalues():
    eig_err = det_err = 0.0
    for n in range(2, 26):
        S = shift_matrix(n)
        exact = 2.0 * np.cos(np.arange(1, n + 1) * math.pi / (n + 1))
        for theta in (0.0, 0.37, 2.1):
            computed = hermitian_eigenvalues(rotated_hermitian_part(S, theta))
            eig_err = max(eig_err, float(np.max(np.abs(computed - exact))))
            det_err = max(det_err, max(abs(char_det(n, lam)) for lam in computed))
    ok = eig_err <= 1e-10 and det_err <= 1e-8
    return ok, f"max eigenvalue error {eig_err:.2e} (<= 1e-10), max |char_det| {det_err:.2e} (<= 1e-8)"


def hermitian_equivalence(seed=1205, count=50):
    rng = np.random.default_rng(seed)
    worst, bad, cases = 0.0, [], 0
    for i in range(count):
        n = int(rng.integers(1, 9))
        H = random_hermitian(rng, n)
        spectrum = np.sort(np.linalg.eigvalsh(H))[::-1]
        for res in rank_ranges(H, None, THETA_SAMPLES):
            cases += 1
            exact = hermitian_range(spectrum, res.k)
            region = res.region
            if exact.is_empty or region.is_empty:
                if exact.is_empty != region.is_empty:
                    bad.append((i, res.k))
                continue
            v = region.vertices
            if region.kind not in ("point", "segment") or np.max(np.abs(v.imag)) > 1e-6:
                bad.append((i, res.k))
                continue
            err = max(abs(float(np.min(v.real)) - exact.lo), abs(float(np.max(v.real)) - exact.hi))
            worst = max(worst, err)
            if err > 1e-6:
                bad.append((i, res.k))
    return not bad, f"{cases} cases, worst endpoint error {worst:.2e} (<= 1e-6), failures: {bad or 'none'}"


def normal_equivalence(seed=2511, count=25):
    rng = np.random.default_rng(seed)
    worst, bad, cases = 0.0, [], 0
    for i in range(count):
        n = int(rng.integers(2, 8))
        T, eigs = random_normal(rng, n)
        for res in rank_ranges(T, None, THETA_SAMPLES, refine=True):
            cases += 1
            exact = normal_range(eigs, res.k)
            region = res.region
            if exact.is_empty or region.is_empty:
                if exact.is_empty != region.is_empty:
                    bad.append((i, res.k))
                continue
            if (exact.kind == "point") != (region.kind == "point"):
                bad.append((i, res.k))
            d = hausdorff(region, exact)
            worst = max(worst, d)
            if d > 1e-3:
                bad.append((i, res.k))
    return not bad, f"{cases} cases, worst Hausdorff {worst:.2e} (<= 1e-3), failures: {bad or 'none'}"


def structural_properties(seed=4407, count=50):
    rng = np.random.default_rng(seed)
    N = THETA_SAMPLES
    failures = {name: 0 for name in ("affine", "adjoint", "direct_sum", "unitary", "compression", "nesting")}
    worst = {name: 0.0 for name in ("affine", "adjoint", "unitary")}
    for _ in range(count):
        n = int(rng.integers(2, 7))
        T = complex_gaussian(rng, (n, n))
        norm = np.linalg.norm(T, 2)
        base = rank_ranges(T, None, N)

        # affine maps, with a grid-compatible rotation so the sample angles line up
        a = rng.uniform(0.3, 2.0) * np.exp(2j * math.pi * int(rng.integers(0, N)) / N)
        b = complex(complex_gaussian(rng, ()))
        mapped = rank_ranges(a * T + b * np.eye(n), None, N)
        tol1 = 1e-6 * (1 + abs(a)) * norm
        for res, got in zip(base, mapped):
            ok, d = _same_or_close(got.region, affine_map_region(res.region, a, b), tol1)
            failures["affine"] += not ok
            worst["affine"] = max(worst["affine"], d / tol1)

        adjoint = rank_ranges(T.conj().T, None, N)
        for res, got in zip(base, adjoint):
            ok, d = _same_or_close(got.region, conjugate_region(res.region), 1e-6)
            failures["adjoint"] += not ok
            worst["adjoint"] = max(worst["adjoint"], d)

        U = random_unitary(rng, n)
        similar = rank_ranges(U.conj().T @ T @ U, None, N)
        for res, got in zip(base, similar):
            ok, d = _same_or_close(got.region, res.region, 1e-6)
            failures["unitary"] += not ok
            worst["unitary"] = max(worst["unitary"], d)

        m = int(rng.integers(1, n + 1))
        Q = random_isometry(rng, n, m)
        compressed = rank_ranges(Q.conj().T @ T @ Q, None, N)
        for got in compressed:
            failures["compression"] += not is_subset(got.region, base[got.k - 1].region, 1e-6)

        for small, big in zip(base[1:], base[:-1]):
            failures["nesting"] += not is_subset(small.region, big.region, 1e-6)

        p = int(rng.integers(1, 5))
        S = complex_gaussian(rng, (p, p))
        whole = rank_ranges(direct_sum(T, S), None, N)
        for part in (base, rank_ranges(S, None, N)):
            for res in part:
                failures["direct_sum"] += not is_subset(res.region, whole[res.k - 1].region, 1e-6)

    ok = not any(failures.values())
    counts = ", ".join(f"{k}:{v}" for k, v in failures.items())
    return ok, (f"violations {counts}; worst affine {worst['affine']:.2e} of its tolerance, "
                f"adjoint {worst['adjoint']:.2e}, unitary {worst['unitary']:.2e}")


def nilpotent_sample(seed=8080, count=100):
    """The seeded nilpotent contractions shared by the dilation criteria."""
    rng = np.random.default_rng(seed)
    return [random_nilpotent_contraction(rng, int(rng.integers(2, 9))) for _ in range(count)]


def dilation_residuals():
    worst = [0.0, 0.0, 0.0]
    tele = 0.0
    for T in nilpotent_sample():
        res = verify_dilation(build_dilation(T))
        worst = [max(w, r) for w, r in zip(worst, res)]
        tele = max(tele, telescoping_residual(T))
    ok = max(worst) <= 1e-8 and tele <= 1e-9
    return ok, ("max residuals isometry {:.1e}, intertwining {:.1e}, compression {:.1e} (<= 1e-8); "
                "telescoping {:.1e} (<= 1e-9)").format(*worst, tele)


def dilation_containment():
    worst_margin = math.inf
    flagged = 0
    for T in nilpotent_sample():
        N = T.shape[0]
        for rep in containment_reports(T, range(1, min(N, 4) + 1)):
            worst_margin = min(worst_margin, rep.margin)
            flagged += rep.rank_sensitive
    worst_gap, bad = 0.0, []
    for n in (2, 3, 4):
        for r in (1, 2, 3):
            model = np.kron(np.eye(r), shift_matrix(n).conj().T)
            ks = [k for k in range(1, 5) if k <= n * r]
            for res in rank_ranges(model, ks, THETA_SAMPLES):
                bound = nilpotent_bound(n, res.k, r)
                if bound is None or res.region.is_empty:
                    if (bound is None) != res.region.is_empty:
                        bad.append((n, r, res.k))
                    continue
                gap = hausdorff(res.region, bound)
                worst_gap = max(worst_gap, gap)
                if gap > 5e-4:
                    bad.append((n, r, res.k))
    ok = worst_margin >= -1e-6 and not bad
    return ok, (f"smallest margin {worst_margin:.3e} (>= -1e-6), rank-sensitive reports {flagged}; "
                f"model ranges worst Hausdorff {worst_gap:.2e} (<= 5e-4), failures: {bad or 'none'}")


def radius_bound():
    worst_eq = 0.0
    for n in range(2, 13):
        worst_eq = max(worst_eq, abs(numerical_radius(shift_matrix(n), THETA_SAMPLES)
                                     - math.cos(math.pi / (n + 1))))
    excess = -math.inf
    for T in nilpotent_sample():
        omega, bound = radius_bound_report(T, THETA_SAMPLES)
        excess = max(excess, omega - bound)
    ok = worst_eq <= 1e-6 and excess <= 1e-8
    return ok, (f"shift equality error {worst_eq:.2e} (<= 1e-6); "
                f"largest omega - bound {excess:.3e} (<= 1e-8)")


def replicated_ranks(seed=1111):
    rng = np.random.default_rng(seed)
    checked, bad = 0, 0
    for n in range(1, 11):
        for r in range(1, 11):
            values = np.sort(rng.uniform(-5.0, 5.0, n))[::-1]
            while np.any(np.diff(values) >= 0):
                values = np.sort(rng.uniform(-5.0, 5.0, n))[::-1]
            brute = np.sort(np.repeat(values, r))[::-1]
            for k in range(1, n * r + 1):
                checked += 1
                bad += replicated_kth_largest(values, r, k) != brute[k - 1]
    return bad == 0, f"{checked} (n, r, k) triples, mismatches {bad}"


def determinism():
    from .cli import run_command

    outputs = []
    for _ in range(2):
        out, err = io.BytesIO(), io.StringIO()
        code = run_command(["range", "--seed", "7"], out=out, err=err)
        outputs.append((code, out.getvalue()))
    (c1, b1), (c2, b2) = outputs
    ok = c1 == 0 and c2 == 0 and len(b1) > 0 and b1 == b2
    return ok, f"exit codes {c1}/{c2}, {len(b1)} bytes, identical: {b1 == b2}"


CRITERIA = {
    1: ("shift disc reproduction", shift_disc_reproduction),
    2: ("singleton for odd n", shift_singleton),
    3: ("emptiness above the middle rank", shift_emptiness),
    4: ("tridiagonal eigenvalue formula", tridiagonal_eigenvalues),
    5: ("Hermitian oracle equivalence", hermitian_equivalence),
    6: ("normal oracle equivalence", normal_equivalence),
    7: ("affine, adjoint, unitary, compression, nesting, direct-sum properties", structural_properties),
    8: ("dilation residuals", dilation_residuals),
    9: ("dilation disc containment", dilation_containment),
    10: ("numerical radius bound", radius_bound),
    11: ("replicated k-th largest, exhaustive", replicated_ranks),
    12: ("seeded range determinism", determinism),
}


def run_one(number):
    title, check = CRITERIA[number]
    try:
        passed, detail = check()
    except Exception as exc:  # a crash is reported as a failure, not hidden
        passed, detail = False, f"raised {type(exc).__name__}: {exc}"
    return CriterionResult(number, title, bool(passed), detail)


def run_all(numbers=None):
    return [run_one(n) for n in (numbers or CRITERIA)]
