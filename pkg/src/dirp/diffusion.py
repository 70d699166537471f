"""Discrete circle model for averaging operators f(x) -> E f(x + tY).

Everything lives on a grid of M cells over T = R/Z: measures are
cell-mass vectors, functions are cell samples, and the averaging
operator is cyclic convolution with the law of tY.  All claims made
here are grid-level statements; the p = 2 contraction factor is exact
on the grid (spectral), while p in {1, inf} values are upper bounds
from witness families and are labeled as such.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import GridMismatch, ParseError, UnderResolved, ZeroDrift

_DIRECT_CONV_MAX = 4096   # exact cyclic summation up to here, FFT above
_MASS_TOL = 1e-12
DEFAULT_SEED = 1234


# ---------------------------------------------------------------------------
# random variable specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RVSpec:
    """Law of Y as a mixture of uniform densities and atoms.

    uniforms: (weight, lo, hi) triples; atoms: (position, mass) pairs;
    all exact Fractions, total mass 1.  Supports wider than [-1/2, 1/2]
    are allowed and wrap around the circle when discretized.
    """

    uniforms: tuple[tuple[Fraction, Fraction, Fraction], ...] = ()
    atoms: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        total = sum((w for w, _, _ in self.uniforms), Fraction(0))
        total += sum((m for _, m in self.atoms), Fraction(0))
        if total != 1:
            raise ValueError(f"total mass must be 1, got {total}")
        for w, lo, hi in self.uniforms:
            if w <= 0 or lo >= hi:
                raise ValueError("uniform parts need weight > 0 and lo < hi")
        for _, m in self.atoms:
            if m <= 0:
                raise ValueError("atoms need positive mass")

    @classmethod
    def uniform(cls, lo, hi) -> "RVSpec":
        return cls(uniforms=((Fraction(1), Fraction(lo), Fraction(hi)),))

    @classmethod
    def from_atoms(cls, pairs) -> "RVSpec":
        return cls(atoms=tuple((Fraction(p), Fraction(m)) for p, m in pairs))

    @classmethod
    def mixture(cls, parts) -> "RVSpec":
        """parts: (weight, RVSpec) pairs; weights sum to 1."""
        uniforms, atoms = [], []
        for w, spec in parts:
            w = Fraction(w)
            for wu, lo, hi in spec.uniforms:
                uniforms.append((w * wu, lo, hi))
            for p, m in spec.atoms:
                atoms.append((p, w * m))
        return cls(uniforms=tuple(uniforms), atoms=tuple(atoms))

    @property
    def mean(self) -> Fraction:
        """E Y, exact."""
        out = sum((w * (lo + hi) / 2 for w, lo, hi in self.uniforms), Fraction(0))
        return out + sum((p * m for p, m in self.atoms), Fraction(0))

    @property
    def ac_width(self) -> Fraction:
        """Total length of the absolutely continuous support."""
        return sum((hi - lo for _, lo, hi in self.uniforms), Fraction(0))

    def key(self) -> str:
        parts = [f"uniform:{lo}:{hi}*{w}" for w, lo, hi in self.uniforms]
        parts += [f"atom:{p}*{m}" for p, m in self.atoms]
        return " + ".join(parts)


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad number {text!r}") from exc


def _parse_pairs(body: str) -> list[tuple[str, str]]:
    body = body.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError(f"expected [..], got {body!r}")
    pairs = []
    depth, start = 0, None
    for i, ch in enumerate(body[1:-1], start=1):
        if ch in "([":
            if depth == 0:
                if ch != "(":
                    raise ParseError(f"expected (a,b) pair in {body!r}")
                start = i
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth == 0 and start is not None:
                inner = body[start + 1:i]
                # split on the first comma not nested in brackets
                d2 = 0
                for j, c2 in enumerate(inner):
                    if c2 in "([":
                        d2 += 1
                    elif c2 in ")]":
                        d2 -= 1
                    elif c2 == "," and d2 == 0:
                        pairs.append((inner[:j], inner[j + 1:]))
                        break
                else:
                    raise ParseError(f"pair without comma in {body!r}")
                start = None
        elif depth == 0 and ch not in ", \t":
            raise ParseError(f"unexpected {ch!r} in {body!r}")
    if depth != 0:
        raise ParseError(f"unbalanced brackets in {body!r}")
    return pairs


def parse_rv(text: str) -> RVSpec:
    """Grammar: uniform:lo:hi | atoms:[(pos,mass),...] |
    mix:[(weight,<spec-with-;-for-:>),...]."""
    text = text.strip()
    tag, _, body = text.partition(":")
    tag = tag.strip().lower()
    if tag == "uniform":
        lo, _, hi = body.partition(":")
        return RVSpec.uniform(_frac(lo), _frac(hi))
    if tag == "atoms":
        return RVSpec.from_atoms((_frac(p), _frac(m)) for p, m in _parse_pairs(body))
    if tag == "mix":
        parts = []
        for w, sub in _parse_pairs(body):
            parts.append((_frac(w), parse_rv(sub.strip().replace(";", ":"))))
        return RVSpec.mixture(parts)
    raise ParseError(f"unknown RV spec {text!r}")


# ---------------------------------------------------------------------------
# grid objects
# ---------------------------------------------------------------------------

@dataclass
class GridMeasure:
    M: int
    weights: np.ndarray
    log: list = field(default_factory=list)

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        if len(self.weights) != self.M:
            raise GridMismatch("weight vector length != M")
        if self.weights.min() < -1e-13:
            raise ValueError("negative cell mass")
        self.weights = np.maximum(self.weights, 0.0)
        drift = abs(float(self.weights.sum()) - 1.0)
        if drift > _MASS_TOL:
            self.log.append(f"renormalized: mass drift {drift:.3e}")
            self.weights = self.weights / self.weights.sum()

    @classmethod
    def delta(cls, M: int, cell: int = 0) -> "GridMeasure":
        w = np.zeros(M)
        w[cell % M] = 1.0
        return cls(M, w)

    @classmethod
    def uniform(cls, M: int) -> "GridMeasure":
        return cls(M, np.full(M, 1.0 / M))

    def density_floor(self) -> float:
        """Minimum cell density (cell mass times M)."""
        return float(self.weights.min()) * self.M


@dataclass
class GridFunction:
    M: int
    values: np.ndarray
    mean_zero: bool = False

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if len(self.values) != self.M:
            raise GridMismatch("value vector length != M")
        if self.mean_zero and abs(float(self.values.mean())) > _MASS_TOL:
            raise ValueError("mean_zero flag set but mean is not ~0")

    def lp_norm(self, p) -> float:
        if p == math.inf or p == "inf":
            return float(np.abs(self.values).max())
        p = float(p)
        return float((np.abs(self.values) ** p).mean() ** (1 / p))

    @classmethod
    def harmonic(cls, M: int, n: int, phase: float = 0.0) -> "GridFunction":
        x = np.arange(M) / M
        v = np.cos(2 * np.pi * n * x + phase)
        v -= v.mean()
        return cls(M, v, mean_zero=True)

    @classmethod
    def random_mean_zero(cls, M: int, rng: np.random.Generator) -> "GridFunction":
        v = rng.standard_normal(M)
        v -= v.mean()
        return cls(M, v, mean_zero=True)


# ---------------------------------------------------------------------------
# discretization
# ---------------------------------------------------------------------------

def measure_from_rv(Y: RVSpec, t, M: int) -> GridMeasure:
    """Cell-exact law of tY on the M-cell grid.

    Uniform parts are integrated analytically cell by cell (wrapping
    around the circle as needed); atoms are split proportionally between
    the two neighboring cells.  Requires every uniform part to span at
    least 4 cells after scaling.
    """
    if M < 64:
        raise UnderResolved(f"M={M} < 64")
    t = Fraction(t)
    if not 0 < t <= 1:
        raise ValueError(f"t must be in (0, 1], got {t}")
    for w, lo, hi in Y.uniforms:
        if t * (hi - lo) < Fraction(4, M):
            raise UnderResolved(
                f"uniform part ({lo},{hi}) scaled by t={t} spans fewer than "
                f"4 of {M} cells; increase M")
    mass = [Fraction(0)] * M
    half_cell = Fraction(1, 2 * M)
    for w, lo, hi in Y.uniforms:
        # cells are centered on the grid points j/M, matching the atom
        # interpolation below, so symmetric laws stay spectrally symmetric
        a, b = t * lo + half_cell, t * hi + half_cell
        length = b - a
        shift = math.floor(a)     # work with a' in [0,1)
        a -= shift
        b -= shift
        full = math.floor(length)
        if full:  # whole turns cover every cell equally
            per_cell = w * full / (length * M)
            for j in range(M):
                mass[j] += per_cell
        a2 = a + full
        rem = length - full
        if rem > 0:
            dens = w / length
            j0 = math.floor(a2 * M)
            j1 = math.floor(b * M) if b * M != math.floor(b * M) else int(b * M) - 1
            for j in range(j0, j1 + 1):
                left = max(a2, Fraction(j, M))
                right = min(b, Fraction(j + 1, M))
                if right > left:
                    mass[j % M] += dens * (right - left)
    for p, m in Y.atoms:
        x = t * p
        x -= math.floor(x)        # wrap to [0,1)
        scaled = x * M
        j = math.floor(scaled)
        frac = scaled - j
        mass[j % M] += m * (1 - frac)
        if frac:
            mass[(j + 1) % M] += m * frac
    return GridMeasure(M, np.array([float(v) for v in mass]))


# ---------------------------------------------------------------------------
# convolution
# ---------------------------------------------------------------------------

def _cyclic_conv_direct(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    M = len(a)
    full = np.convolve(a, np.concatenate([b, b]))
    return full[M:2 * M]


def _cyclic_conv_fft(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.real(np.fft.ifft(np.fft.fft(a) * np.fft.fft(b)))


def _cyclic_conv(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) <= _DIRECT_CONV_MAX:
        return _cyclic_conv_direct(a, b)
    return _cyclic_conv_fft(a, b)


def convolve(a: GridMeasure, b: GridMeasure) -> GridMeasure:
    if a.M != b.M:
        raise GridMismatch(f"grid sizes differ: {a.M} vs {b.M}")
    return GridMeasure(a.M, _cyclic_conv(a.weights, b.weights),
                       log=list(a.log) + list(b.log))


def convolution_power(a: GridMeasure, n: int) -> GridMeasure:
    """n-fold self-convolution via repeated squaring."""
    if n < 1:
        raise ValueError("n must be >= 1")
    result: Optional[GridMeasure] = None
    sq = a
    while n:
        if n & 1:
            result = sq if result is None else convolve(result, sq)
        n >>= 1
        if n:
            sq = convolve(sq, sq)
    return result


def apply_markov(f: GridFunction, mu: GridMeasure) -> GridFunction:
    """(f * mu)(x) = sum_y f(x + y) mu(y): cyclic correlation, mean
    preserving, non-expansive in every L^p (Young)."""
    if f.M != mu.M:
        raise GridMismatch(f"grid sizes differ: {f.M} vs {mu.M}")
    mu_rev = np.roll(mu.weights[::-1], 1)   # mu_rev[k] = mu[(-k) mod M]
    return GridFunction(f.M, _cyclic_conv(f.values, mu_rev),
                        mean_zero=f.mean_zero)


def cesaro_average(mu: GridMeasure, n: int) -> GridMeasure:
    """(1/n) * sum_{k=1..n} mu^k, by a running convolution."""
    if n < 1:
        raise ValueError("n must be >= 1")
    acc = mu.weights.copy()
    power = mu.weights
    for _ in range(n - 1):
        power = _cyclic_conv(power, mu.weights)
        acc += power
    return GridMeasure(mu.M, acc / n, log=list(mu.log))


# ---------------------------------------------------------------------------
# contraction factors
# ---------------------------------------------------------------------------

@dataclass
class ContractionValue:
    p: object
    t: float
    value: float
    method: str
    M: int
    is_upper_bound: bool

    def __float__(self):
        return self.value


def _witness_functions(M: int, trials: int, rng: np.random.Generator):
    n_max = min(M // 2, 64)
    for n in range(1, n_max + 1):
        for phase in (0.0, np.pi / 4, np.pi / 2):
            yield GridFunction.harmonic(M, n, phase)
    for _ in range(trials):
        yield GridFunction.random_mean_zero(M, rng)


def contraction_factor(Y: RVSpec, t, p, M: int, trials: int = 16,
                       seed: int = DEFAULT_SEED) -> ContractionValue:
    """h_p(t) on the grid: inf over mean-zero f of ||f - f*mu_t||_p/||f||_p.

    p = 2 is exact via the spectral characterization min_{n != 0}
    |1 - mu_hat(n)| over grid frequencies.  p in {1, inf} report the
    minimum over a witness family (harmonics plus seeded random
    functions), which is an upper bound on the true infimum.
    """
    mu = measure_from_rv(Y, t, M)
    if p == 2:
        mhat = np.fft.fft(mu.weights)
        h = float(np.abs(1 - mhat[1:]).min())
        return ContractionValue(2, float(t), h, "spectral-exact", M, False)
    if p not in (1, math.inf, "inf"):
        raise ValueError("p must be 1, 2 or inf")
    rng = np.random.default_rng(seed)
    best = math.inf
    for f in _witness_functions(M, trials, rng):
        g = apply_markov(f, mu)
        diff = GridFunction(M, f.values - g.values)
        denom = f.lp_norm(p)
        if denom > 0:
            best = min(best, diff.lp_norm(p) / denom)
    return ContractionValue(p, float(t), best,
                            f"witness-family (seed={seed})", M, True)


@dataclass
class ContractionEstimate:
    p: object
    t_grid: list[float]
    h_values: list[float]
    slope: float
    intercept: float
    residual: float
    regime: str
    M: int
    seed: int
    methods: list[str]

    def to_json(self) -> dict:
        return {
            "p": "inf" if self.p in (math.inf, "inf") else self.p,
            "t_grid": self.t_grid,
            "h": self.h_values,
            "slope": self.slope,
            "intercept": self.intercept,
            "residual": self.residual,
            "regime": self.regime,
            "M": self.M,
            "seed": self.seed,
        }


def scaling_fit(Y: RVSpec, p, t_grid: Sequence, M: int,
                seed: int = DEFAULT_SEED) -> ContractionEstimate:
    """Least-squares slope of log h_p(t) against log t.

    Verdicts: "quadratic regime" for slope in [1.9, 2.1] (symmetric Y,
    h ~ t^2), "linear regime" for slope in [0.9, 1.1]
    (drifted Y, h ~ t), "no contraction: periodic orbit"
    when some h vanishes on the grid, else "indeterminate".
    """
    ts = [Fraction(t) for t in t_grid]
    if any(b >= a for a, b in zip(ts, ts[1:])):
        raise ValueError("t_grid must be strictly decreasing")
    values, methods = [], []
    for t in ts:
        cv = contraction_factor(Y, t, p, M, seed=seed)
        values.append(cv.value)
        methods.append(cv.method)
    tf = [float(t) for t in ts]
    if min(values) <= 1e-14:
        return ContractionEstimate(p, tf, values, 0.0, 0.0, 0.0,
                                   "no contraction: periodic orbit", M, seed, methods)
    logs_t = np.log(tf)
    logs_h = np.log(values)
    slope, intercept = np.polyfit(logs_t, logs_h, 1)
    residual = float(np.abs(slope * logs_t + intercept - logs_h).max())
    if 1.9 <= slope <= 2.1:
        regime = "quadratic regime"
    elif 0.9 <= slope <= 1.1:
        regime = "linear regime"
    else:
        regime = "indeterminate"
    return ContractionEstimate(p, tf, values, float(slope), float(intercept),
                               residual, regime, M, seed, methods)


# ---------------------------------------------------------------------------
# density floors and lemma checks
# ---------------------------------------------------------------------------

def density_floor_check(Y: RVSpec, t, C, M: int) -> tuple[int, float]:
    """Cesaro-averaged density floor after n ~ C / (t |E Y|) steps.

    Returns (n_used, minimum cell density of the Cesaro average).  A
    positive floor is the grid analogue of the renewal-theoretic
    absolutely-continuous component; purely singular Y may honestly
    report 0.
    """
    t, C = Fraction(t), Fraction(C)
    if C <= 0:
        raise ValueError("C must be > 0")
    drift = Y.mean
    if drift == 0:
        raise ZeroDrift("E Y = 0: the density-floor mechanism needs drift")
    n = math.ceil(C / (t * abs(drift)))
    mu = measure_from_rv(Y, t, M)
    ces = cesaro_average(mu, n)
    return n, ces.density_floor()


@dataclass
class LemmaReport:
    c: float
    trials: int
    worst_margin: float
    holds: bool
    seed: int


def contraction_lemma_check(mu: GridMeasure, trials: int,
                            seed: int = DEFAULT_SEED) -> LemmaReport:
    """Pointwise-density contraction: with c = M * min cell mass (capped
    at 1), verify ||f * mu||_p <= (1 - c) ||f||_p + 1e-9 for random
    mean-zero f and p in {1, 2, inf}."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    c = min(1.0, mu.density_floor())
    rng = np.random.default_rng(seed)
    worst = -math.inf
    for _ in range(trials):
        f = GridFunction.random_mean_zero(mu.M, rng)
        g = apply_markov(f, mu)
        for p in (1, 2, math.inf):
            margin = g.lp_norm(p) - (1 - c) * f.lp_norm(p)
            worst = max(worst, margin)
    return LemmaReport(c, trials, worst, worst <= 1e-9, seed)


# ---------------------------------------------------------------------------
# Taylor limit of the arc average
# ---------------------------------------------------------------------------

def taylor_limit_check(harmonics: Sequence[tuple[int, float]],
                       t_grid: Sequence, M: int) -> dict:
    """For f = sum_i a_i cos(2 pi n_i x) and the arc average A_t over
    uniform(-t, t), tabulate ||f - A_t f||_2 / t^2 and extrapolate
    t -> 0; the limit should match the closed form ||f''||_2 / 6."""
    if M < 64:
        raise UnderResolved(f"M={M} < 64")
    if any(n == 0 for n, _ in harmonics) or not harmonics:
        raise ValueError("harmonics must be nonempty with n != 0 (mean zero)")
    ts = [Fraction(t) for t in t_grid]
    if any(b >= a for a, b in zip(ts, ts[1:])) or len(ts) < 2:
        raise ValueError("t_grid must be strictly decreasing, length >= 2")
    x = np.arange(M) / M
    f = np.zeros(M)
    for n, a_ in harmonics:
        f += float(a_) * np.cos(2 * np.pi * n * x)
    f -= f.mean()
    gf = GridFunction(M, f, mean_zero=True)
    arc = RVSpec.uniform(-1, 1)     # tY ~ uniform(-t, t)
    rows = []
    for t in ts:
        mu = measure_from_rv(arc, t, M)
        g = apply_markov(gf, mu)
        diff = GridFunction(M, gf.values - g.values)
        rows.append((float(t), diff.lp_norm(2) / float(t) ** 2))
    # Richardson step assuming r(t) = L + b t^2 + O(t^4)
    (t1, r1), (t2, r2) = rows[-2], rows[-1]
    limit = (r2 * t1 * t1 - r1 * t2 * t2) / (t1 * t1 - t2 * t2)
    # closed form ||f''||_2 / 6 via Parseval on the harmonics
    fpp_sq = sum((float(a_) * (2 * np.pi * n) ** 2) ** 2 / 2 for n, a_ in harmonics)
    target = math.sqrt(fpp_sq) / 6
    return {
        "rows": rows,
        "extrapolated_limit": limit,
        "closed_form": target,
        "relative_error": abs(limit - target) / target,
        "M": M,
    }
