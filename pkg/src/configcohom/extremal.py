"""Extremal Hilbert functions of configuration spaces of CP^m.

The top of the complex for C_k(CP^m) sits near degree k(2m-2); the
interesting story is the "ray" k -> dim H^{k(2m-2)+i} for a fixed
offset i.  This module samples those rays, fits exact quasi-polynomial
certificates to the tails, and packages the verification of the
expected vanishing behaviour into a report:

  * for every i >= 4 the ray vanishes once k >= 4;
  * for m >= 2 and i in {1, 2, 3} the ray vanishes for large k (the
    report records the onset actually observed and flags it as
    "sharper" when it beats the claimed bound of 8);
  * at the largest sampled k, three structural facts about the reduced
    complex pin down why: the two-term subcomplex in degrees
    k(2m-2)+2, +3 is exact, the block out of (k(2m-2)+1, weight 1) has
    rank 1 with a 2-dimensional kernel, and the block out of
    (k(2m-2), weight 2) has rank 2.

The offset-0 ray is sampled and reported as data, with no claim
attached.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .homology import betti, complex_data
from .linalg import kernel_dim
from .rat import format_rational
from .ring import make_cpm


class UnderDeterminedError(ValueError):
    """Too few samples to certify any candidate in the search space."""


@dataclass
class HilbertRay:
    """Samples of k -> dim H^{k(2m-2)+i}(C_k(CP^m)) on a contiguous range."""
    m: int
    i: int
    samples: tuple  # ((k, dim), ...) with consecutive k

    def dims(self):
        return tuple(d for _, d in self.samples)

    def k_range(self):
        return (self.samples[0][0], self.samples[-1][0])


@dataclass
class QuasiPolynomial:
    """Certificate: for k >= onset, f(k) = P_{k mod period}(k).

    coefficients[r] lists the coefficients of the class-r polynomial in
    ascending powers of k (so the polynomials are in k itself, not in
    the class index).  degree is the largest actual degree over the
    classes; the certificate is minimal in lexicographic
    (period, onset, degree) order among those the samples support.
    """
    period: int
    onset: int
    degree: int
    coefficients: tuple  # per residue class, tuple of Fractions

    def evaluate(self, k):
        coeffs = self.coefficients[k % self.period]
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * k + c
        return acc

    def is_zero(self):
        return all(not c for coeffs in self.coefficients for c in coeffs)

    def matches(self, samples):
        """Exact agreement with every sample at k >= onset."""
        return all(self.evaluate(k) == d for k, d in samples if k >= self.onset)

    def to_json_dict(self):
        return {
            "period": self.period,
            "onset": self.onset,
            "degree": self.degree,
            "classes": [[format_rational(c) for c in coeffs]
                        for coeffs in self.coefficients],
        }


def _dims_for_k(args):
    """Worker: Betti dims of C_k(CP^m).  Top-level so it pickles."""
    m, k, mode = args
    return k, betti(make_cpm(m), k, mode).dims


def _betti_dims_range(m, ks, mode, jobs):
    """dims per k over a list of k, optionally fanned out to processes.

    Results are collected in submission order, so the outcome is
    byte-identical for any job count.
    """
    tasks = [(m, k, mode) for k in ks]
    if jobs <= 1 or len(tasks) <= 1:
        return dict(_dims_for_k(t) for t in tasks)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return dict(pool.map(_dims_for_k, tasks))


def hilbert_ray(R, i, k_min, k_max, mode="reduced", jobs=1):
    """Sample the offset-i extremal ray of CP^m over k_min..k_max."""
    if R.cpm is None:
        raise ValueError("extremal rays are defined for the built-in CP^m rings")
    if i < 0:
        raise ValueError("offset i must be non-negative")
    if k_min > k_max:
        raise ValueError("empty k range")
    if mode == "reduced" and k_min < 2:
        raise ValueError("reduced mode requires k >= 2")
    m = R.cpm
    ks = list(range(k_min, k_max + 1))
    dims = _betti_dims_range(m, ks, mode, jobs)
    samples = tuple((k, dims[k].get(k * (2 * m - 2) + i, 0)) for k in ks)
    return HilbertRay(m=m, i=i, samples=samples)


def _fits(values, degree):
    """Do the (degree+1)-th finite differences of values vanish?

    Valid only with at least degree+2 values (an arithmetic
    progression in k is fine: the step size cancels).
    """
    if len(values) < degree + 2:
        raise ValueError("need at least degree+2 values")
    diffs = list(values)
    for _ in range(degree + 1):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    return all(v == 0 for v in diffs)


def _interpolate(points, degree):
    """Coefficients (ascending) of the degree-<= polynomial through points.

    Lagrange interpolation over the first degree+1 points, exact.
    """
    coeffs = [Fraction(0)] * (degree + 1)
    pts = points[: degree + 1]
    for idx, (xi, yi) in enumerate(pts):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for jdx, (xj, _) in enumerate(pts):
            if jdx == idx:
                continue
            nxt = [Fraction(0)] * (len(basis) + 1)
            for p, c in enumerate(basis):
                nxt[p] += c * (-xj)
                nxt[p + 1] += c
            basis = nxt
            denom *= xi - xj
        scale = Fraction(yi) / denom
        for p, c in enumerate(basis):
            coeffs[p] += scale * c
    return coeffs


def detect_quasi_polynomial(samples, p_max=6, deg_max=4):
    """Minimal quasi-polynomial certificate for a sampled tail.

    samples is a sequence of (k, value) at consecutive k.  Candidates
    (period p, onset N, degree bound D) are scanned in lexicographic
    order; a candidate is certifiable when every residue class mod p
    has at least D+2 samples at k >= N, and it fits when the (D+1)-th
    finite differences vanish along every class.  The first fitting
    candidate is returned with exactly interpolated coefficients.

    Returns None when certifiable candidates exist but none fits;
    raises UnderDeterminedError when the sample window is too short to
    certify anything at all.
    """
    samples = sorted(samples)
    if not samples:
        raise UnderDeterminedError("no samples")
    ks = [k for k, _ in samples]
    if ks != list(range(ks[0], ks[0] + len(ks))):
        raise ValueError("samples must cover consecutive k")
    by_k = dict(samples)
    k_lo, k_hi = ks[0], ks[-1]

    any_certifiable = False
    for p in range(1, p_max + 1):
        for onset in range(k_lo, k_hi + 2):
            class_points = {}
            for r in range(p):
                pts = [(k, Fraction(by_k[k]))
                       for k in range(onset, k_hi + 1) if k % p == r]
                class_points[r] = pts
            max_deg = min(len(pts) for pts in class_points.values()) - 2
            if max_deg < 0:
                continue
            for degree in range(0, min(deg_max, max_deg) + 1):
                any_certifiable = True
                if all(_fits([y for _, y in class_points[r]], degree)
                       for r in range(p)):
                    coefficients = []
                    actual = 0
                    for r in range(p):
                        coeffs = _interpolate(class_points[r], degree)
                        while len(coeffs) > 1 and coeffs[-1] == 0:
                            coeffs.pop()
                        actual = max(actual, len(coeffs) - 1)
                        coefficients.append(tuple(coeffs))
                    return QuasiPolynomial(
                        period=p, onset=onset, degree=actual,
                        coefficients=tuple(coefficients))
    if not any_certifiable:
        raise UnderDeterminedError(
            "window k=%d..%d cannot certify any (period <= %d, degree <= %d) candidate"
            % (k_lo, k_hi, p_max, deg_max))
    return None


@dataclass
class RangeCheck:
    """One line of the verification report."""
    check_id: str
    description: str
    status: str  # "pass" | "sharper" | "fail"
    claimed_onset: object = None
    observed_onset: object = None
    detail: object = None

    def to_json_dict(self):
        out = {"id": self.check_id, "description": self.description,
               "status": self.status}
        if self.claimed_onset is not None:
            out["claimed_onset"] = self.claimed_onset
        out["observed_onset"] = self.observed_onset
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class RangeReport:
    """Verification of the extremal vanishing ranges for one CP^m."""
    m: int
    k_max: int
    checks: tuple
    i0_samples: tuple

    @property
    def ok(self):
        return all(c.status != "fail" for c in self.checks)

    def to_json_dict(self):
        return {
            "ring": "CP^%d" % self.m,
            "k_max": self.k_max,
            "checks": [c.to_json_dict() for c in self.checks],
            "i0_ray": [list(s) for s in self.i0_samples],
            "ok": self.ok,
        }

    def to_text(self):
        lines = ["extremal range verification: CP^%d, k up to %d" % (self.m, self.k_max)]
        for c in self.checks:
            line = "%-24s %s" % (c.check_id, c.description)
            if c.claimed_onset is not None:
                line += "; claimed onset %s" % c.claimed_onset
            if c.observed_onset is not None:
                line += "; observed onset %s" % c.observed_onset
            line += "; %s" % c.status.upper()
            lines.append(line)
        lines.append("offset-0 ray (reported, no claim): "
                     + ", ".join("k=%d: %d" % s for s in self.i0_samples))
        lines.append("overall: %s" % ("pass" if self.ok else "FAIL"))
        return "\n".join(lines)


def _observed_onset(flags):
    """First k after which a per-k predicate holds through the window.

    flags is a sorted list of (k, bool); returns the smallest k0 such
    that the predicate holds for all sampled k >= k0, or None if it
    fails at the final sample.
    """
    onset = None
    for k, good in flags:
        if good:
            if onset is None:
                onset = k
        else:
            onset = None
    return onset


def verify_vanishing_ranges(m, k_max, jobs=1):
    """Check the expected extremal vanishing behaviour of CP^m.

    Betti tables are computed from the full complex (where the degrees
    above the extremal edge actually exist) and cross-checked against
    the reduced complex degree by degree.  Vanishing claims come with a
    claimed onset; the report records the onset actually observed in
    the window and marks the check "sharper" when vanishing starts
    earlier than claimed, "fail" when a claimed-zero value is nonzero.
    """
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValueError("m must be a positive integer")
    if k_max < 8:
        raise ValueError("k_max must be at least 8 to exercise the claimed onsets")
    R = make_cpm(m)
    ks = list(range(2, k_max + 1))
    dims_by_k = _betti_dims_range(m, ks, "full", jobs)
    reduced_by_k = _betti_dims_range(m, ks, "reduced", jobs)
    edge = {k: k * (2 * m - 2) for k in ks}
    checks = []

    mismatches = []
    for k in ks:
        degrees = set(dims_by_k[k]) | set(reduced_by_k[k])
        bad = sorted(i for i in degrees
                     if dims_by_k[k].get(i, 0) != reduced_by_k[k].get(i, 0))
        if bad:
            mismatches.append([k, bad[0]])
    checks.append(RangeCheck(
        check_id="table-consistency",
        description="full and reduced Betti tables agree for k = 2..%d" % k_max,
        status="pass" if not mismatches else "fail",
        observed_onset=None,
        detail={"mismatches": mismatches} if mismatches else None,
    ))

    if m >= 2:
        for i in (1, 2, 3):
            flags = [(k, dims_by_k[k].get(edge[k] + i, 0) == 0) for k in ks]
            claimed = 8
            failed = [k for k, good in flags if k >= claimed and not good]
            onset = _observed_onset(flags)
            status = "fail" if failed else ("sharper" if onset is not None and onset < claimed else "pass")
            checks.append(RangeCheck(
                check_id="vanishing-offset-%d" % i,
                description="dim H^{k(2m-2)+%d}(C_k(CP^%d)) = 0" % (i, m),
                status=status, claimed_onset=claimed, observed_onset=onset,
                detail={"failing_k": failed} if failed else None,
            ))

    flags = []
    for k in ks:
        tail = [d for deg, d in dims_by_k[k].items() if deg >= edge[k] + 4]
        flags.append((k, all(d == 0 for d in tail)))
    claimed = 4
    failed = [k for k, good in flags if k >= claimed and not good]
    onset = _observed_onset(flags)
    status = "fail" if failed else ("sharper" if onset is not None and onset < claimed else "pass")
    checks.append(RangeCheck(
        check_id="vanishing-offset-ge4",
        description="dim H^{k(2m-2)+i}(C_k(CP^%d)) = 0 for every i >= 4" % m,
        status=status, claimed_onset=claimed, observed_onset=onset,
        detail={"failing_k": failed} if failed else None,
    ))

    if m >= 2:
        checks.extend(_structural_facts(R, m, k_max))

    i0 = tuple((k, dims_by_k[k].get(edge[k], 0)) for k in ks)
    return RangeReport(m=m, k_max=k_max, checks=tuple(checks), i0_samples=i0)


def _structural_facts(R, m, k):
    """Rank facts about the reduced complex near its top, at one k."""
    basis, blocks, ranks = complex_data(R, k, "reduced")
    e = k * (2 * m - 2)
    out = []

    dim_23 = (len(basis.slice(e + 2, 2)), len(basis.slice(e + 3, 1)))
    r = ranks.get((e + 2, 2), 0)
    exact = dim_23 == (1, 1) and r == 1
    out.append(RangeCheck(
        check_id="top-pair-exact",
        description="two-term subcomplex at degrees +2, +3 is exact (k=%d)" % k,
        status="pass" if exact else "fail",
        detail={"k": k, "dims": list(dim_23), "rank": r},
    ))

    b1 = blocks.get((e + 1, 1))
    r1 = ranks.get((e + 1, 1), 0)
    ker = kernel_dim(b1.matrix) if b1 is not None else None
    ok1 = b1 is not None and r1 == 1 and ker == 2
    out.append(RangeCheck(
        check_id="weight1-block",
        description="block out of (degree +1, weight 1): rank 1, kernel 2 (k=%d)" % k,
        status="pass" if ok1 else "fail",
        detail={"k": k, "rank": r1, "kernel": ker},
    ))

    r2 = ranks.get((e, 2), 0)
    ok2 = r2 == 2
    out.append(RangeCheck(
        check_id="weight2-block",
        description="block out of (degree +0, weight 2): rank 2 (k=%d)" % k,
        status="pass" if ok2 else "fail",
        detail={"k": k, "rank": r2},
    ))
    return out
