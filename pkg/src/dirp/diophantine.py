"""Continued fractions, badly-approximable diagnostics, and lattice minima.

The lattice searches enumerate integer frequencies with a float64
prefilter (rigorous error margins) and re-evaluate the surviving
candidates with certified arithmetic, so results are exact-grade while
the inner loop stays vectorized.  Every finite-depth verdict is
reported with its certification radius/depth and never as a theorem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import numpy as np

from .certified import CertifiedReal
from .directions import Direction, inner_product
from .errors import (
    DepthNotCertified,
    NonpositiveSigma,
    PrecisionExhausted,
    RationalRatio,
    UnsupportedLevel,
)
from .precision import DEFAULT_CONTEXT, PrecisionContext
from .quadratic import QuadExact

_CF_STATE_CAP = 100_000  # safety cap on period detection


# ---------------------------------------------------------------------------
# continued fractions
# ---------------------------------------------------------------------------

@dataclass
class CFExpansion:
    quotients: list[int]
    convergents: list[tuple[int, int]]  # (p_n, q_n)
    certified_depth: int
    exact: bool = False          # quotients certified to unlimited depth
    finite: bool = False         # the value is rational; expansion terminates
    period: Optional[tuple[int, list[int]]] = None  # (preperiod_len, period)
    note: str = ""

    def max_quotient(self) -> tuple[int, int]:
        """(max certified quotient after a0, its index)."""
        if self.certified_depth < 2:
            raise DepthNotCertified("need at least one certified quotient after a0")
        tail = self.quotients[1:self.certified_depth]
        m = max(tail)
        return m, 1 + tail.index(m)


def _convergents(quotients: Sequence[int]) -> list[tuple[int, int]]:
    out = []
    p_prev, p = 1, None
    q_prev, q = 0, None
    for a in quotients:
        if p is None:
            p, q = a, 1
        else:
            p, p_prev = a * p + p_prev, p
            q, q_prev = a * q + q_prev, q
        out.append((p, q))
    return out


def _cf_rational(x: Fraction, depth: int) -> CFExpansion:
    quotients = []
    num, den = x.numerator, x.denominator
    while den and len(quotients) < max(depth, 1) + 64:
        a, rem = divmod(num, den)
        quotients.append(a)
        num, den = den, rem
    finite = den == 0
    return CFExpansion(quotients, _convergents(quotients),
                       certified_depth=len(quotients), exact=True, finite=finite,
                       note="rational termination" if finite else "")


def _cf_quadratic(x: QuadExact, depth: int) -> CFExpansion:
    seen: dict[QuadExact, int] = {}
    quotients: list[int] = []
    cur = x
    period = None
    while len(quotients) < depth:
        if cur in seen:
            start = seen[cur]
            period = (start, quotients[start:])
            break
        if len(seen) > _CF_STATE_CAP:
            raise RuntimeError("period detection cap exceeded")
        seen[cur] = len(quotients)
        a = cur.floor()
        quotients.append(a)
        frac = cur - a
        if frac.sign() == 0:  # rational after all
            return CFExpansion(quotients, _convergents(quotients),
                               certified_depth=len(quotients), exact=True, finite=True,
                               note="rational termination")
        cur = 1 / frac
    if period is not None:
        start, cycle = period
        while len(quotients) < depth:
            quotients.append(cycle[(len(quotients) - start) % len(cycle)])
    return CFExpansion(quotients[:depth], _convergents(quotients[:depth]),
                       certified_depth=depth, exact=True, period=period)


def _cf_interval(x: CertifiedReal, depth: int, ctx: PrecisionContext) -> CFExpansion:
    digits = ctx.working_digits
    best: list[int] = []
    note = ""
    prev_len = -1
    while True:
        lo, hi = x.enclosure(digits)
        quotients: list[int] = []
        while len(quotients) < depth:
            flo, fhi = math.floor(lo), math.floor(hi)
            if flo != fhi:
                break
            quotients.append(flo)
            lo, hi = lo - flo, hi - flo
            if lo <= 0:  # cannot certify the next inversion
                if lo == 0 and hi == 0:
                    return CFExpansion(quotients, _convergents(quotients),
                                       certified_depth=len(quotients), exact=True,
                                       finite=True, note="rational termination")
                break
            lo, hi = 1 / hi, 1 / lo
        if len(quotients) > len(best):
            best = quotients
        if len(best) >= depth:
            break
        if not x.refinable or digits >= ctx.max_digits or len(best) == prev_len:
            note = (f"certified only {len(best)} of {depth} quotients from a "
                    f"{digits}-digit enclosure")
            break
        prev_len = len(best)
        digits = min(digits * 2, ctx.max_digits)
    return CFExpansion(best, _convergents(best), certified_depth=len(best),
                       exact=False, note=note)


def cf_expand(x, depth: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> CFExpansion:
    """Continued fraction of x to the requested depth.

    Exact specs (rational, quadratic irrational) certify unlimited depth,
    with period detection for quadratics.  Anything else runs the interval
    algorithm: a quotient is emitted only while the floor is constant
    across the whole enclosure; falling short is reported softly through
    certified_depth and note.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if isinstance(x, (int, Fraction)):
        return _cf_rational(Fraction(x), depth)
    if isinstance(x, QuadExact):
        if x.is_rational:
            return _cf_rational(x.as_fraction(), depth)
        return _cf_quadratic(x, depth)
    if isinstance(x, CertifiedReal):
        if x.exact is not None:
            return cf_expand(x.exact, depth, ctx)
        return _cf_interval(x, depth, ctx)
    raise TypeError(f"cannot expand {type(x).__name__}")


@dataclass
class BoundedQuotientReport:
    max_quotient: int
    index: int
    certified_depth: int
    bound: int
    exceeded: bool
    verdict: str


def bounded_quotient_report(cf: CFExpansion, bound_window: int) -> BoundedQuotientReport:
    """Finite-depth evidence about quotient boundedness.  Never a proof:
    the verdict is labeled with the certified depth it rests on."""
    m, idx = cf.max_quotient()
    if m > bound_window:
        verdict = (f"quotient {m} > {bound_window} at index {idx}: "
                   "unbounded-pattern evidence; direction expected inadmissible")
    else:
        verdict = (f"no quotient above {bound_window} within certified depth "
                   f"{cf.certified_depth} (evidence only, not a proof)")
    return BoundedQuotientReport(m, idx, cf.certified_depth, bound_window,
                                 m > bound_window, verdict)


# ---------------------------------------------------------------------------
# lattice minima
# ---------------------------------------------------------------------------

@dataclass
class LatticeSearchResult:
    direction: str
    radius: int
    weight_exponent: Fraction
    norm_used: str
    minimum: CertifiedReal
    argmin: tuple[int, ...]
    digits_used: int
    exact_zero_witness: Optional[tuple[int, ...]]
    enumerated: int

    def to_json(self, digits: int = DEFAULT_CONTEXT.working_digits) -> dict:
        return {
            "direction": self.direction,
            "radius": self.radius,
            "weight_exponent": str(self.weight_exponent),
            "norm": self.norm_used,
            "minimum": self.minimum.to_json(digits),
            "argmin": list(self.argmin),
            "digits_used": self.digits_used,
            "exact_zero_witness": (list(self.exact_zero_witness)
                                   if self.exact_zero_witness else None),
            "enumerated": self.enumerated,
        }


def _halfspace_blocks(d: int, R: int, block_rows: int = 4_000_000) -> Iterator[np.ndarray]:
    """Integer points in the box [-R, R]^d with the first nonzero coordinate
    positive (one representative per +/- pair), in chunks."""
    if d == 1:
        yield np.arange(1, R + 1, dtype=np.int64).reshape(-1, 1)
        return
    rest = [np.arange(-R, R + 1, dtype=np.int64)] * (d - 1)
    rows_per_first = (2 * R + 1) ** (d - 1)
    step = max(1, block_rows // rows_per_first)
    for start in range(0, R + 1, step):
        firsts = np.arange(start, min(start + step, R + 1), dtype=np.int64)
        grids = np.meshgrid(firsts, *rest, indexing="ij")
        K = np.stack([g.reshape(-1) for g in grids], axis=1)
        # half-space: first nonzero coordinate > 0
        mask = K[:, 0] > 0
        zero_so_far = K[:, 0] == 0
        for j in range(1, d):
            mask |= zero_so_far & (K[:, j] > 0)
            zero_so_far &= K[:, j] == 0
        K = K[mask]
        if len(K):
            yield K


def _weight_cr(k: Sequence[int], sigma: Fraction, norm: str) -> CertifiedReal:
    if norm == "euclidean":
        base = sum(c * c for c in k)
        return CertifiedReal.from_rational(base).pow_frac(sigma / 2)
    base = max(abs(c) for c in k)
    return CertifiedReal.from_rational(base).pow_frac(sigma)


def _prefilter_candidates(a: Direction, R: int, sigma: Fraction,
                          norm: str) -> tuple[list[tuple[int, tuple[int, ...]]], int]:
    """Shell-sorted candidate argmin frequencies plus the enumeration count.

    A point survives iff its rigorous float bracket overlaps the best
    bracket seen anywhere in the ball, so the true argmin always survives.
    """
    alpha = np.array(a.floats(), dtype=np.float64)
    err = np.array(a.float_radii(), dtype=np.float64) + 1e-15 * (np.abs(alpha) + 1.0)
    sig = float(sigma)
    best_hi = np.inf
    kept: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = []
    enumerated = 0
    for K in _halfspace_blocks(a.dim, R):
        normsq = (K * K).sum(axis=1)
        if norm == "euclidean":
            sel = normsq <= R * R
            K, normsq = K[sel], normsq[sel]
        if not len(K):
            continue
        enumerated += len(K)
        absK = np.abs(K).astype(np.float64)
        inner = K @ alpha
        ierr = absK @ err
        if norm == "euclidean":
            w = normsq.astype(np.float64) ** (sig / 2)
        else:
            w = np.abs(K).max(axis=1).astype(np.float64) ** sig
        val = w * np.abs(inner)
        verr = w * ierr * 1.01 + val * 1e-12 + 1e-290
        best_hi = min(best_hi, float((val + verr).min()))
        keep = (val - verr) <= best_hi
        if keep.any():
            kept.append((K[keep], normsq[keep], (val - verr)[keep]))
    cands: list[tuple[int, tuple[int, ...]]] = []
    for K, normsq, lo in kept:
        for row, ns, l in zip(K, normsq, lo):
            if l <= best_hi:  # re-cut with the final global bracket
                cands.append((int(ns), tuple(int(c) for c in row)))
    cands.sort()
    return cands, enumerated


def _certified_value(k: tuple[int, ...], a: Direction, sigma: Fraction,
                     norm: str, ctx: PrecisionContext
                     ) -> tuple[Optional[CertifiedReal], int]:
    """(|k|^sigma * |<k,alpha>|, sign); value None when the inner product
    is certified exactly zero."""
    ip = inner_product(k, a)
    try:
        s = ip.sign(ctx)
    except PrecisionExhausted as exc:
        raise PrecisionExhausted(
            f"<k,alpha> for k={k} cannot be separated from 0 within "
            f"max_digits={ctx.max_digits}", offending=k) from exc
    if s == 0:
        return None, 0
    return abs(ip) * _weight_cr(k, sigma, norm), s


def lattice_min(a: Direction, R: int, sigma, norm: str = "euclidean",
                ctx: PrecisionContext = DEFAULT_CONTEXT) -> LatticeSearchResult:
    """Minimum of |k|^sigma * |<k, alpha>| over 0 < |k| <= R.

    Enumeration order is frequency shells by exact squared norm, then
    lexicographic; one representative per +/- pair (the one whose first
    nonzero coordinate is positive) since the value is symmetric.  A
    certified exact zero of the inner product short-circuits the search
    and is reported as exact_zero_witness.
    """
    if R < 1:
        raise ValueError("R must be >= 1")
    sigma = Fraction(sigma)
    if norm not in ("euclidean", "max"):
        raise ValueError("norm must be euclidean or max")
    if a.dim == 1:
        k = (1,)
        ip = a.entries[0]
        if ip.sign_soft(ctx) == 0:
            return LatticeSearchResult(a.key(), R, sigma, norm,
                                       CertifiedReal.from_rational(0), k,
                                       ctx.working_digits, k, R)
        return LatticeSearchResult(a.key(), R, sigma, norm, abs(ip), k,
                                   ctx.working_digits, None, R)
    cands, enumerated = _prefilter_candidates(a, R, sigma, norm)
    best_val: Optional[CertifiedReal] = None
    best_k: Optional[tuple[int, ...]] = None
    witness = None
    for _, k in cands:
        value, s = _certified_value(k, a, sigma, norm, ctx)
        if s == 0:
            best_val = CertifiedReal.from_rational(0)
            best_k, witness = k, k
            break
        if best_val is None:
            best_val, best_k = value, k
        else:
            c = value.compare(best_val, ctx)
            if c is not None and c < 0:
                best_val, best_k = value, k  # ties keep the earlier shell/lex entry
    return LatticeSearchResult(a.key(), R, sigma, norm, best_val, best_k,
                               ctx.working_digits, witness, enumerated)


def lattice_min_profile(a: Direction, R: int, sigma, norm: str = "euclidean",
                        ctx: PrecisionContext = DEFAULT_CONTEXT
                        ) -> list[tuple[int, tuple[int, ...], CertifiedReal]]:
    """Running-minimum records: (|k|^2, k, value) at every radius where the
    ball minimum improves.  lattice_min(R') for any R' <= R is the last
    record with |k|^2 <= R'^2.  Certified exact zeros appear as value 0."""
    sigma = Fraction(sigma)
    alpha = np.array(a.floats(), dtype=np.float64)
    err = np.array(a.float_radii(), dtype=np.float64) + 1e-15 * (np.abs(alpha) + 1.0)
    sig = float(sigma)
    rows = []
    for K in _halfspace_blocks(a.dim, R):
        normsq = (K * K).sum(axis=1)
        if norm == "euclidean":
            sel = normsq <= R * R
            K, normsq = K[sel], normsq[sel]
        if len(K):
            rows.append((K, normsq))
    K = np.concatenate([r[0] for r in rows])
    normsq = np.concatenate([r[1] for r in rows])
    inner = K @ alpha
    ierr = np.abs(K).astype(np.float64) @ err
    if norm == "euclidean":
        w = normsq.astype(np.float64) ** (sig / 2)
    else:
        w = np.abs(K).max(axis=1).astype(np.float64) ** sig
    val = w * np.abs(inner)
    verr = w * ierr * 1.01 + val * 1e-12 + 1e-290
    order = np.lexsort(tuple(K[:, j] for j in reversed(range(K.shape[1]))) + (normsq,))
    hi_sorted = (val + verr)[order]
    lo_sorted = (val - verr)[order]
    run_hi = np.minimum.accumulate(hi_sorted)
    prev_hi = np.concatenate(([np.inf], run_hi[:-1]))
    cand_idx = order[lo_sorted <= prev_hi]
    records: list[tuple[int, tuple[int, ...], CertifiedReal]] = []
    best: Optional[CertifiedReal] = None
    for i in cand_idx:
        k = tuple(int(c) for c in K[i])
        value, s = _certified_value(k, a, sigma, norm, ctx)
        if s == 0:
            records.append((int(normsq[i]), k, CertifiedReal.from_rational(0)))
            break
        if best is None or (value.compare(best, ctx) or 0) < 0:
            best = value
            records.append((int(normsq[i]), k, value))
    return records


# ---------------------------------------------------------------------------
# systems of linear forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearFormSystem:
    """ell linear forms on Z^(d-1), each given by a Direction of length d-1."""

    forms: tuple[Direction, ...]

    def __post_init__(self):
        if not self.forms:
            raise ValueError("need at least one form")
        nvars = self.forms[0].dim
        for f in self.forms:
            if f.dim != nvars:
                raise ValueError("forms must share the variable count")
        if len(self.forms) > nvars:
            raise ValueError("need ell <= d-1")

    @property
    def nvars(self) -> int:
        return self.forms[0].dim

    @property
    def ell(self) -> int:
        return len(self.forms)

    @property
    def ambient_dim(self) -> int:
        return self.nvars + 1


def _dist_to_int_cr(ip: CertifiedReal, ctx: PrecisionContext) -> CertifiedReal:
    """Distance to the nearest integer as a certified value."""
    lo, hi = ip.enclosure(ctx.working_digits)
    candidates = {math.floor(lo + Fraction(1, 2)), math.floor(hi + Fraction(1, 2))}
    best = None
    for m in sorted(candidates):
        v = abs(ip - m)
        if best is None:
            best = v
        else:
            c = v.compare(best, ctx)
            if c is not None and c < 0:
                best = v
    return best


@dataclass
class SystemLatticeResult:
    system: str
    radius: int
    weight_exponent: Fraction
    minimum: CertifiedReal
    argmin: tuple[int, ...]
    digits_used: int
    exact_zero_witness: Optional[tuple[int, ...]]
    enumerated: int
    dirichlet_envelope_ok: bool
    improved_exponent: Fraction = Fraction(0)
    improved_minimum: Optional[CertifiedReal] = None
    improved_argmin: Optional[tuple[int, ...]] = None

    def to_json(self, digits: int = DEFAULT_CONTEXT.working_digits) -> dict:
        return {
            "system": self.system,
            "radius": self.radius,
            "weight_exponent": str(self.weight_exponent),
            "minimum": self.minimum.to_json(digits),
            "argmin": list(self.argmin),
            "digits_used": self.digits_used,
            "exact_zero_witness": (list(self.exact_zero_witness)
                                   if self.exact_zero_witness else None),
            "enumerated": self.enumerated,
            "dirichlet_envelope_ok": self.dirichlet_envelope_ok,
            "improved_variant": {
                "exponent": str(self.improved_exponent),
                "minimum": self.improved_minimum.to_json(digits),
                "argmin": list(self.improved_argmin),
            },
        }


def system_lattice_min(S: LinearFormSystem, R: int,
                       ctx: PrecisionContext = DEFAULT_CONTEXT) -> SystemLatticeResult:
    """Minimize max_i ||L_i(x)|| * (max|x_j|)^((d-1)/ell) over 0 < max|x| <= R,
    where ||.|| is distance to the nearest integer.

    Also reports the variant that replaces ||L_i|| by the plain absolute
    value |L_i| with exponent (d-1)/ell - 1 (floored at 0), and a sanity
    flag that the observed minimum does not exceed the Dirichlet
    pigeonhole envelope (weighted value 1) beyond the certified radius.
    """
    if R < 1:
        raise ValueError("R must be >= 1")
    nvars, ell = S.nvars, S.ell
    d = S.ambient_dim
    expo = Fraction(d - 1, ell)
    expo_abs = max(expo - 1, Fraction(0))
    A = np.array([f.floats() for f in S.forms], dtype=np.float64)
    Aerr = np.array([f.float_radii() for f in S.forms], dtype=np.float64) \
        + 1e-15 * (np.abs(A) + 1.0)

    best_hi = np.inf
    best_hi_abs = np.inf
    kept, kept_abs = [], []
    enumerated = 0
    for X in _halfspace_blocks(nvars, R):
        enumerated += len(X)
        absX = np.abs(X).astype(np.float64)
        L = X @ A.T
        ierr = absX @ Aerr.T
        dist = np.abs(L - np.rint(L))
        dmax = dist.max(axis=1)
        amax = np.abs(L).max(axis=1)
        emax = ierr.max(axis=1)
        w = np.abs(X).max(axis=1).astype(np.float64)
        val = dmax * w ** float(expo)
        verr = (w ** float(expo)) * emax * 1.01 + val * 1e-12 + 1e-290
        val2 = amax * w ** float(expo_abs)
        verr2 = (w ** float(expo_abs)) * emax * 1.01 + val2 * 1e-12 + 1e-290
        best_hi = min(best_hi, float((val + verr).min()))
        best_hi_abs = min(best_hi_abs, float((val2 + verr2).min()))
        keep = (val - verr) <= best_hi
        keep2 = (val2 - verr2) <= best_hi_abs
        maxn = np.abs(X).max(axis=1)
        if keep.any():
            kept.append((X[keep], maxn[keep], (val - verr)[keep]))
        if keep2.any():
            kept_abs.append((X[keep2], maxn[keep2], (val2 - verr2)[keep2]))

    def finalize(kept_rows, cut, exponent, use_dist):
        cands = []
        for X, maxn, lo in kept_rows:
            for row, mn, l in zip(X, maxn, lo):
                if l <= cut:
                    cands.append((int(mn), tuple(int(c) for c in row)))
        cands.sort()
        best_val, best_x, witness = None, None, None
        for _, x in cands:
            parts = []
            zero_all = True
            for form in S.forms:
                ip = inner_product(x, form)
                v = _dist_to_int_cr(ip, ctx) if use_dist else abs(ip)
                try:
                    if v.sign(ctx) != 0:
                        zero_all = False
                except PrecisionExhausted as exc:
                    raise PrecisionExhausted(
                        f"form value at x={x} cannot be resolved", offending=x) from exc
                parts.append(v)
            m = parts[0]
            for v in parts[1:]:
                c = v.compare(m, ctx)
                if c is not None and c > 0:
                    m = v
            value = m * CertifiedReal.from_rational(max(abs(c) for c in x)).pow_frac(exponent)
            if zero_all:
                return CertifiedReal.from_rational(0), x, x
            if best_val is None or (value.compare(best_val, ctx) or 0) < 0:
                best_val, best_x = value, x
        return best_val, best_x, witness

    minimum, argmin, witness = finalize(kept, best_hi, expo, use_dist=True)
    imp_min, imp_arg, _ = finalize(kept_abs, best_hi_abs, expo_abs, use_dist=False)
    lo, hi = minimum.enclosure(ctx.working_digits)
    dirichlet_ok = lo <= 1 + (hi - lo)
    name = "forms:[" + "; ".join(f.key() for f in S.forms) + "]"
    return SystemLatticeResult(name, R, expo, minimum, argmin,
                               ctx.working_digits, witness, enumerated,
                               dirichlet_ok, expo_abs, imp_min, imp_arg)


# ---------------------------------------------------------------------------
# exponent tables and classical constants
# ---------------------------------------------------------------------------

def delta_from_sigma(sigma) -> tuple[Fraction, Fraction]:
    """Map a polynomial lower-bound exponent sigma (so |<k,alpha>| is
    assumed >= c|k|^-sigma) to the exponent pair (1-delta, delta) with
    delta = 1/(sigma+1)."""
    sigma = Fraction(sigma)
    if sigma <= 0:
        raise NonpositiveSigma(f"sigma must be > 0, got {sigma}")
    delta = 1 / (sigma + 1)
    return (1 - delta, delta)


def roth_exponents(eps) -> tuple[Fraction, Fraction]:
    """Exponent pair (1/2 + eps, 1/2 - eps) for irrational algebraic slopes."""
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 2):
        raise ValueError("need 0 < eps < 1/2")
    return (Fraction(1, 2) + eps, Fraction(1, 2) - eps)


def markov_bounds(level: int) -> CertifiedReal:
    """The first three Lagrange/Markov constants sqrt5, sqrt8, sqrt221/5 as
    exact quadratic values; c_alpha <= |alpha| / L(level) for directions
    outside the corresponding exceptional classes."""
    table = {
        1: QuadExact(0, 1, 5),
        2: QuadExact(0, 1, 8),
        3: QuadExact(0, Fraction(1, 5), 221),
    }
    if level not in table:
        raise UnsupportedLevel(f"only levels 1..3 are known here, got {level}")
    return CertifiedReal.from_quad(table[level])


# ---------------------------------------------------------------------------
# Hurwitz witnesses
# ---------------------------------------------------------------------------

@dataclass
class HurwitzWitness:
    k: tuple[int, int]
    convergent: tuple[int, int]
    product: CertifiedReal  # |k| * |<k, alpha>|


def hurwitz_witnesses(a: Direction, count: int,
                      ctx: PrecisionContext = DEFAULT_CONTEXT) -> list[HurwitzWitness]:
    """Frequency pairs certifying |a1/a2 - p/q| <= 1/(sqrt5 q^2), taken from
    the continued-fraction convergents of a1/a2; each witness reports
    |k| * |<k, alpha>| so the upper bound c_alpha <= |alpha|/sqrt5 is
    exhibited at that frequency."""
    if a.dim != 2:
        raise ValueError("hurwitz_witnesses needs d = 2")
    if a.entries[0].sign_soft(ctx) == 0 or a.entries[1].sign_soft(ctx) == 0:
        raise ValueError("both entries must be nonzero")
    ratio = a.entries[0] / a.entries[1]
    if ratio.exact is not None and ratio.exact.is_rational:
        raise RationalRatio("a1/a2 is rational")
    sqrt5 = CertifiedReal.from_quad(QuadExact(0, 1, 5))
    out: list[HurwitzWitness] = []
    depth = max(2 * count + 10, 12)
    while True:
        cf = cf_expand(ratio, depth, ctx)
        if cf.finite:
            raise RationalRatio("a1/a2 terminated as a rational expansion")
        for p, q in cf.convergents[:cf.certified_depth]:
            if q <= 0:
                continue
            test = abs(ratio * q - p) * q * sqrt5 - 1
            s = test.sign_soft(ctx)
            if s is None or s > 0:
                continue
            k = (q, -p)
            ip = inner_product(k, a)
            product = abs(ip) * CertifiedReal.from_rational(p * p + q * q).sqrt()
            out.append(HurwitzWitness(k, (p, q), product))
            if len(out) == count:
                return out
        if cf.certified_depth < depth:
            raise DepthNotCertified(
                f"only {cf.certified_depth} convergents certified; "
                f"{len(out)} of {count} witnesses found")
        depth *= 2
        if depth > 10_000:
            raise DepthNotCertified("witness search exceeded depth cap")
