"""Truncated Fock-space model.

Holomorphic functions on C^n are represented by their coefficients with
respect to the orthonormal monomial basis

    e_a(z) = z^a / sqrt(t^|a| a!),      |a| <= N,

ordered graded-lexicographically.  The weighted p-norms implemented here are

    ||f||_p = ( (p/(2 pi t))^n  int |f(z)|^p e^{-p|z|^2/(2t)} dz )^{1/p}

for p in {1, 2} and the weighted supremum for p = inf.  With this
normalization the orthonormal basis has unit 2-norm and the normalized
reproducing kernel has unit norm for every p.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln, gammaincc, eval_genlaguerre

__all__ = [
    "LITTLE_INFINITY",
    "FockParams",
    "MultiIndexBasis",
    "TruncatedVector",
    "OperatorMatrix",
    "basis_norm",
    "kernel_eval",
    "kernel_expand",
    "weyl_matrix",
    "fp_norm",
]

#: Marker for the subspace of inf-norm functions whose weighted values vanish
#: at infinity.  Shares all numerics with p = inf.
LITTLE_INFINITY = "little-infinity"

_SUPPORTED_P = (1, 2, np.inf, LITTLE_INFINITY)


def _canon_p(p):
    """Map a norm exponent to its numeric value, validating it."""
    if p == LITTLE_INFINITY:
        return np.inf
    if p in (1, 2) or p == np.inf:
        return float(p)
    raise ValueError(f"unsupported norm exponent {p!r}; expected 1, 2, inf or {LITTLE_INFINITY!r}")


@dataclass(frozen=True)
class FockParams:
    """Parameters of the weighted space: Gaussian scale t, dimension n, exponent p."""

    t: float
    n: int = 1
    p: object = 2

    def __post_init__(self):
        if not self.t > 0:
            raise ValueError(f"t must be positive, got {self.t}")
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ValueError(f"n must be a positive integer, got {self.n}")
        _canon_p(self.p)


def _grlex_indices(n: int, max_degree: int) -> tuple[tuple[int, ...], ...]:
    """All multi-indices a with |a| <= max_degree in graded lexicographic order."""
    out = []
    for deg in range(max_degree + 1):
        block = [a for a in itertools.product(range(deg + 1), repeat=n) if sum(a) == deg]
        block.sort(reverse=True)  # lexicographic within the graded block
        out.extend(block)
    return tuple(out)


@dataclass(frozen=True)
class MultiIndexBasis:
    """Graded-lexicographic monomial basis of the truncation to degree <= N."""

    params: FockParams
    max_degree: int
    indices: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self):
        if self.max_degree < 0:
            raise ValueError("max_degree must be nonnegative")
        object.__setattr__(self, "indices", _grlex_indices(self.params.n, self.max_degree))
        expected = math.comb(self.max_degree + self.params.n, self.params.n)
        assert len(self.indices) == expected

    @property
    def dimension(self) -> int:
        return len(self.indices)

    @property
    def degrees(self) -> np.ndarray:
        """|a| for each basis index, in order."""
        return np.array([sum(a) for a in self.indices])

    def index_of(self, alpha: tuple[int, ...]) -> int:
        return self.indices.index(tuple(alpha))

    def with_degree(self, max_degree: int) -> "MultiIndexBasis":
        return MultiIndexBasis(self.params, max_degree)


@dataclass(frozen=True)
class TruncatedVector:
    """Coefficient vector with respect to a MultiIndexBasis."""

    basis: MultiIndexBasis
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (self.basis.dimension,):
            raise ValueError(
                f"coefficient length {c.shape} does not match basis dimension {self.basis.dimension}"
            )
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    def evaluate(self, z) -> np.ndarray:
        """Pointwise value of the represented function (n = 1: z complex array)."""
        basis = self.basis
        if basis.params.n == 1:
            z = np.asarray(z, dtype=complex)
            ks = np.arange(basis.dimension)
            t = basis.params.t
            scaled = self.coeffs * np.exp(-0.5 * gammaln(ks + 1) - 0.5 * ks * math.log(t))
            out = np.full(z.shape, scaled[-1], dtype=complex)
            for c in scaled[-2::-1]:
                out *= z
                out += c
            return out
        z = np.asarray(z, dtype=complex)
        t = basis.params.t
        val = 0.0 + 0.0j
        for c, a in zip(self.coeffs, basis.indices):
            mono = np.prod([z[i] ** ai for i, ai in enumerate(a)])
            lg = sum(gammaln(ai + 1) for ai in a)
            val += c * mono * math.exp(-0.5 * (lg + sum(a) * math.log(t)))
        return val


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense matrix A[beta, alpha] = <A e_alpha, e_beta> on a truncated basis."""

    basis: MultiIndexBasis
    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        d = self.basis.dimension
        if m.shape != (d, d):
            raise ValueError(f"matrix shape {m.shape} does not match basis dimension {d}")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)

    def apply(self, v: TruncatedVector) -> TruncatedVector:
        if v.basis is not self.basis and v.basis != self.basis:
            raise ValueError("basis mismatch")
        return TruncatedVector(self.basis, self.entries @ v.coeffs)

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if other.basis != self.basis:
            raise ValueError("basis mismatch")
        return OperatorMatrix(self.basis, self.entries @ other.entries)


# ---------------------------------------------------------------------------
# basis norms


def _basis_norm_1d(k: int, p) -> float:
    """||e_k||_p for n = 1; t-independent for every p."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    p = _canon_p(p)
    if p == 2:
        return 1.0
    if k == 0:
        return 1.0
    lg_half_fact = 0.5 * gammaln(k + 1)
    if p == 1:
        # 2^{k/2} Gamma(k/2 + 1) / sqrt(k!)
        return math.exp(0.5 * k * math.log(2.0) + gammaln(0.5 * k + 1) - lg_half_fact)
    # p = inf: k^{k/2} e^{-k/2} / sqrt(k!)
    return math.exp(0.5 * k * (math.log(k) - 1.0) - lg_half_fact)


def basis_norm(params: FockParams, alpha, p=None) -> float:
    """p-norm of the basis element e_alpha.

    alpha may be an integer degree (n = 1) or a multi-index; for n > 1 the
    value is the product of the 1-D factors.
    """
    if p is None:
        p = params.p
    if isinstance(alpha, (int, np.integer)):
        alpha = (int(alpha),)
    val = 1.0
    for k in alpha:
        val *= _basis_norm_1d(int(k), p)
    return val


# ---------------------------------------------------------------------------
# reproducing kernels


def _dot(w, z):
    """Sesquilinear product w . conj(z), scalar-friendly."""
    w = np.asarray(w, dtype=complex)
    z = np.asarray(z, dtype=complex)
    if w.ndim == 0 and z.ndim == 0:
        return complex(w) * complex(np.conj(z))
    return np.sum(w * np.conj(z), axis=-1)


def _abs2(z):
    z = np.asarray(z, dtype=complex)
    if z.ndim == 0:
        return abs(complex(z)) ** 2
    return float(np.sum(np.abs(z) ** 2, axis=-1))


def kernel_eval(params: FockParams, z, w, normalized: bool = False):
    """Reproducing kernel K_z(w) = exp(w . conj(z) / t); optionally normalized."""
    t = params.t
    val = np.exp(_dot(w, z) / t)
    if normalized:
        val = val * np.exp(-_abs2(z) / (2 * t))
    return val


def kernel_expand(params: FockParams, basis: MultiIndexBasis, z):
    """Expand K_z over the truncated basis.

    Returns (vector, truncation_error) where truncation_error is the 2-norm of
    the discarded tail, sqrt(exp(|z|^2/t) - partial sum).
    """
    t = params.t
    if params.n == 1:
        z = complex(z)
        ks = np.arange(basis.dimension)
        # coeff_k = conj(e_k(z)) = conj(z)^k / sqrt(t^k k!)
        logmag = ks * np.log(max(abs(z), 1e-300)) - 0.5 * gammaln(ks + 1) - 0.5 * ks * math.log(t)
        phase = np.exp(-1j * ks * np.angle(z)) if z != 0 else np.ones_like(ks, dtype=complex)
        coeffs = np.exp(logmag) * phase
        if z == 0:
            coeffs = np.zeros(basis.dimension, dtype=complex)
            coeffs[0] = 1.0
    else:
        coeffs = np.empty(basis.dimension, dtype=complex)
        for i, a in enumerate(basis.indices):
            mono = np.prod([np.conj(z[j]) ** aj for j, aj in enumerate(a)])
            lg = sum(gammaln(aj + 1) for aj in a)
            coeffs[i] = mono * math.exp(-0.5 * (lg + sum(a) * math.log(t)))
    total = math.exp(_abs2(z) / t)
    partial = float(np.sum(np.abs(coeffs) ** 2))
    err2 = max(total - partial, 0.0)
    return TruncatedVector(basis, coeffs), math.sqrt(err2)


# ---------------------------------------------------------------------------
# Weyl operators


def _weyl_matrix_1d(t: float, dim: int, z: complex) -> np.ndarray:
    """Closed-form matrix of W_z on degrees 0..dim-1 for n = 1.

    For m >= k:  <W_z e_k, e_m> = e^{-x/2} conj(a)^{m-k} sqrt(k!/m!) L_k^{(m-k)}(x)
    with a = z/sqrt(t), x = |a|^2; the block m < k follows from W_z^* = W_{-z}.
    """
    a = z / math.sqrt(t)
    x = abs(a) ** 2
    ks = np.arange(dim)
    W = np.zeros((dim, dim), dtype=complex)
    if x == 0:
        np.fill_diagonal(W, 1.0)
        return W
    lf = gammaln(ks + 1.0)
    for m in range(dim):
        for k in range(m + 1):
            d = m - k
            mag = math.exp(-0.5 * x + 0.5 * (lf[k] - lf[m]) + d * math.log(abs(a)))
            lag = eval_genlaguerre(k, d, x)
            ph = np.exp(-1j * d * np.angle(a))
            W[m, k] = mag * lag * ph
            if d:
                W[k, m] = mag * lag * ((-1) ** d) * np.conj(ph)
    return W


def weyl_matrix(params: FockParams, basis: MultiIndexBasis, z) -> OperatorMatrix:
    """Matrix of the Weyl shift W_z on the truncated basis.

    n > 1 uses Kronecker products of the 1-D factors on the tensor basis
    (each component degree <= N), restricted to the graded basis |a| <= N:
    row/column for multi-index a is the tensor slot a_1*(N+1)^{n-1} + ... + a_n.
    """
    n = params.n
    if n == 1:
        z = complex(np.asarray(z, dtype=complex))
        return OperatorMatrix(basis, _weyl_matrix_1d(params.t, basis.dimension, z))
    z = np.asarray(z, dtype=complex)
    N = basis.max_degree
    full = np.ones((1, 1), dtype=complex)
    for j in range(n):
        full = np.kron(full, _weyl_matrix_1d(params.t, N + 1, complex(z[j])))
    slots = [sum(ai * (N + 1) ** (n - 1 - i) for i, ai in enumerate(a)) for a in basis.indices]
    sub = full[np.ix_(slots, slots)]
    return OperatorMatrix(basis, sub)


# ---------------------------------------------------------------------------
# p-norms of truncated vectors


def _radial_tail_bound_l1(t: float, abs_coeffs: np.ndarray, R: float) -> float:
    """Upper bound for the weighted-L1 mass of |f| e^{-r^2/2t} outside radius R.

    Uses |f(z)| <= sum_k |c_k| r^k / sqrt(k! t^k) and the incomplete-Gamma
    closed form of each radial tail integral.
    """
    ks = np.arange(len(abs_coeffs))
    # (1/t) int_R^inf r^{k+1} e^{-r^2/2t} dr = 2^{k/2} t^{k/2} Gamma(k/2+1) Q(k/2+1, R^2/2t)
    logterm = (
        np.log(np.maximum(abs_coeffs, 1e-300))
        - 0.5 * gammaln(ks + 1)
        - 0.5 * ks * math.log(t)
        + 0.5 * ks * math.log(2 * t)
        + gammaln(0.5 * ks + 1)
    )
    q = gammaincc(0.5 * ks + 1, R * R / (2 * t))
    mask = abs_coeffs > 0
    return float(np.sum(np.exp(logterm[mask]) * q[mask]))


def _weighted_abs_bound(t: float, abs_coeffs: np.ndarray, r: float) -> float:
    """sum_k |c_k| r^k/sqrt(k! t^k) e^{-r^2/2t}: decreasing for r^2 > N t."""
    ks = np.arange(len(abs_coeffs))
    logs = ks * math.log(max(r, 1e-300)) - 0.5 * gammaln(ks + 1) - 0.5 * ks * math.log(t) - r * r / (2 * t)
    mask = abs_coeffs > 0
    return float(np.sum(abs_coeffs[mask] * np.exp(logs[mask])))


def fp_norm(v: TruncatedVector, p=None, *, tol: float = 1e-10, max_refine: int = 12) -> float:
    """p-norm of a truncated vector.

    p = 2 is exact via coefficients.  p = 1 uses radial-angular quadrature with
    an incomplete-Gamma tail certificate; p = inf uses a polar grid supremum
    whose density doubles until two successive estimates agree to tol, plus an
    analytic decreasing-tail bound outside the grid radius.
    """
    params = v.basis.params
    if p is None:
        p = params.p
    p = _canon_p(p)
    if p == 2:
        return float(np.linalg.norm(v.coeffs))
    if params.n != 1:
        raise NotImplementedError("quadrature norms are implemented for n = 1")
    t = params.t
    N = v.basis.max_degree
    abs_c = np.abs(v.coeffs)
    if not np.any(abs_c > 0):
        return 0.0

    if p == 1:
        # radius R: tail bound below tol * crude norm scale
        scale = max(float(np.max(abs_c)), 1e-300)
        R = math.sqrt(max(2 * N * t, 4 * t))
        while _radial_tail_bound_l1(t, abs_c, R) > tol * scale and R < 60 * math.sqrt(t):
            R *= 1.25
        n_ang = 8 * N + 32
        prev = None
        n_rad = max(64, 2 * N)
        for _ in range(max_refine):
            x, w = np.polynomial.legendre.leggauss(n_rad)
            r = 0.5 * (x + 1) * R
            wr = 0.5 * w * R
            theta = 2 * np.pi * np.arange(n_ang) / n_ang
            zgrid = r[:, None] * np.exp(1j * theta)[None, :]
            vals = np.abs(v.evaluate(zgrid)) * np.exp(-(r * r) / (2 * t))[:, None]
            ang = vals.mean(axis=1)  # (1/2pi) int |f| e^{-r^2/2t} dtheta
            est = float(np.sum(wr * r * ang)) / t
            if prev is not None and abs(est - prev) <= tol * max(est, 1e-300):
                break
            prev = est
            # |f| has kinks at zeros of f, so angular convergence can be slow
            # for generic vectors; cap the grid instead of refining forever
            if n_rad >= 2048 or n_ang >= 8192:
                break
            n_rad = min(2 * n_rad, 2048)
            n_ang = min(2 * n_ang, 8192)
        return est + _radial_tail_bound_l1(t, abs_c, R)

    # p = inf: grid locates the maximizer, local search polishes it; the grid
    # doubles until two successive polished estimates agree
    R = math.sqrt(max((N + 1) * t, t)) * 1.05
    prev = None
    n_rad, n_ang = max(64, 4 * N), 8 * N + 16
    for _ in range(6):
        r = np.linspace(0.0, R, n_rad)
        theta = 2 * np.pi * np.arange(n_ang) / n_ang
        zgrid = r[:, None] * np.exp(1j * theta)[None, :]
        vals = np.abs(v.evaluate(zgrid)) * np.exp(-(r * r) / (2 * t))[:, None]
        i, j = np.unravel_index(np.argmax(vals), vals.shape)
        est = _local_sup_refine(v, t, r[i], theta[j], R, n_rad, n_ang)
        if prev is not None and abs(est - prev) <= tol * max(est, 1e-300):
            break
        prev = est
        n_rad *= 2
        n_ang *= 2
    # certify the tail: the term bound is decreasing for r^2 > N t and
    # must not exceed the estimate at the cutoff radius
    while _weighted_abs_bound(t, abs_c, R) > est * (1 + 1e-9):
        R *= 1.25
        r = np.linspace(0.0, R, n_rad)
        theta = 2 * np.pi * np.arange(n_ang) / n_ang
        zgrid = r[:, None] * np.exp(1j * theta)[None, :]
        vals = np.abs(v.evaluate(zgrid)) * np.exp(-(r * r) / (2 * t))[:, None]
        i, j = np.unravel_index(np.argmax(vals), vals.shape)
        if float(vals[i, j]) > est:
            est = _local_sup_refine(v, t, r[i], theta[j], R, n_rad, n_ang)
        if R > 80 * math.sqrt(t):
            raise RuntimeError("could not certify the weighted supremum tail bound")
    return est


def _local_sup_refine(v, t, r0, th0, R, n_rad, n_ang) -> float:
    """Refine the weighted supremum near a polar grid point by local search."""
    dr = R / max(n_rad - 1, 1)
    dth = 2 * np.pi / n_ang
    best = 0.0
    r0c, th0c = r0, th0
    for _ in range(30):
        rs = np.linspace(max(r0c - dr, 0.0), r0c + dr, 9)
        ths = np.linspace(th0c - dth, th0c + dth, 9)
        zg = rs[:, None] * np.exp(1j * ths)[None, :]
        vals = np.abs(v.evaluate(zg)) * np.exp(-(rs * rs) / (2 * t))[:, None]
        i, j = np.unravel_index(np.argmax(vals), vals.shape)
        best = float(vals[i, j])
        r0c, th0c = rs[i], ths[j]
        dr /= 4
        dth /= 4
        if dr < 1e-13 * max(R, 1.0):
            break
    return best
