"""Operator assembly and estimation on the truncated Fock space.

Everything here works with dense matrices over the graded monomial basis
(one complex variable).  Toeplitz matrices are assembled by polar quadrature
with an FFT over the angle; radial symbols take an exact-diagonal path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .fock import (
    FockParams,
    MultiIndexBasis,
    OperatorMatrix,
    TruncatedVector,
    basis_norm,
    fp_norm,
    kernel_expand,
    weyl_matrix,
)
from .symbols import CallableSymbol, Gaussian, PolyGaussian, Symbol

__all__ = [
    "QuadratureScheme",
    "toeplitz_matrix",
    "berezin",
    "berezin_symbol",
    "shift",
    "module_conv",
    "rank_one",
    "dilation_conjugate",
    "k_s_matrix",
    "integral_apply",
    "NormEstimate",
    "norm_estimate",
]


@dataclass(frozen=True)
class QuadratureScheme:
    """Polar quadrature sizes for Toeplitz assembly.

    Radial nodes are Gauss-Legendre in u = r^2 on [0, radial_cut]; the angle
    uses n_angular equispaced nodes resolved with an FFT.
    """

    n_radial: int
    n_angular: int
    radial_cut: float
    radial_breaks: tuple = ()

    @classmethod
    def default_for(cls, params: FockParams, max_degree: int, symbol: Symbol = None) -> "QuadratureScheme":
        N = max_degree
        cut = params.t * (2 * N + 14 * math.sqrt(N + 1) + 40)
        # split the radial rule at radii where the symbol is not smooth, so
        # each Gauss-Legendre panel sees an analytic integrand
        kinks = tuple(r * r for r in getattr(symbol, "radial_kinks", ()) if 0 < r * r < cut)
        return cls(max(200, 8 * N), max(256, 8 * N), cut, kinks)


def _radial_u_rule(scheme: QuadratureScheme):
    edges = [0.0] + sorted(scheme.radial_breaks) + [scheme.radial_cut]
    x, w = np.polynomial.legendre.leggauss(scheme.n_radial)
    us, wus = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        us.append(0.5 * (x + 1) * (hi - lo) + lo)
        wus.append(0.5 * w * (hi - lo))
    return np.concatenate(us), np.concatenate(wus)


def toeplitz_matrix(
    symbol: Symbol, params: FockParams, max_degree: int, scheme: QuadratureScheme = None
) -> OperatorMatrix:
    """Matrix of the Toeplitz operator T_f = P M_f P on degrees <= max_degree.

    Entries are <T_f e_k, e_m> = 1/(pi t) int f(z) e_k(z) conj(e_m(z))
    e^{-|z|^2/t} dz.  Radial symbols produce a diagonal matrix, evaluated by a
    dedicated radial rule; the general path samples f on a polar grid and
    extracts the angular Fourier modes with an FFT.
    """
    if params.n != 1:
        raise NotImplementedError("Toeplitz assembly is implemented for n = 1")
    basis = MultiIndexBasis(params, max_degree)
    if scheme is None:
        scheme = QuadratureScheme.default_for(params, max_degree, symbol)
    t = params.t
    dim = basis.dimension
    u, wu = _radial_u_rule(scheme)
    ks = np.arange(dim)
    # half-entry in log space: 0.5 k ln u - 0.5 ln k! - 0.5 k ln t - u/(2t)
    half = (
        0.5 * ks[None, :] * np.log(u)[:, None]
        - 0.5 * gammaln(ks + 1)[None, :]
        - 0.5 * ks[None, :] * math.log(t)
        - (u / (2 * t))[:, None]
    )
    E = np.exp(half)  # (n_radial, dim)

    if symbol.is_radial:
        fvals = symbol.eval(np.sqrt(u))
        diag = (wu * fvals)[:, None] * E * E
        return OperatorMatrix(basis, np.diag(diag.sum(axis=0) / t))

    M = scheme.n_angular
    theta = 2 * np.pi * np.arange(M) / M
    zgrid = np.sqrt(u)[:, None] * np.exp(1j * theta)[None, :]
    G = np.fft.fft(symbol.eval(zgrid), axis=1) / M  # G[i, d] ~ Fourier mode d of f
    T = np.zeros((dim, dim), dtype=complex)
    for d in range(-(dim - 1), dim):
        cols = np.arange(max(0, -d), dim - max(0, d))
        wd = wu * G[:, d % M]
        T[cols + d, cols] = np.sum(wd[:, None] * E[:, cols] * E[:, cols + d], axis=0) / t
    return OperatorMatrix(basis, T)


# ---------------------------------------------------------------------------
# Berezin transform


def berezin(A: OperatorMatrix, z, renormalize: bool = True):
    """Berezin transform <A k_z, k_z> at z (scalar or array of points).

    With renormalize=True the truncated kernel vector is normalized, which
    keeps the value meaningful while |z|^2/t stays below the truncation
    degree; without it the exact normalization e^{-|z|^2/t} is used.
    """
    params = A.basis.params
    zs = np.atleast_1d(np.asarray(z, dtype=complex))
    if params.n == 1:
        flat = zs.ravel()
        dim = A.basis.dimension
        ks = np.arange(dim)
        lognorm = -0.5 * gammaln(ks + 1) - 0.5 * ks * math.log(params.t)
        # rows: truncated kernel coefficients conj(z)^k / sqrt(t^k k!)
        C = np.conj(flat)[:, None] ** ks[None, :] * np.exp(lognorm)[None, :]
        num = np.sum(np.conj(C) * (C @ A.entries.T), axis=1)
        if renormalize:
            out = num / np.sum(np.abs(C) ** 2, axis=1)
        else:
            out = num * np.exp(-np.abs(flat) ** 2 / params.t)
        out = out.reshape(zs.shape)
    else:
        out = np.empty(zs.shape, dtype=complex)
        for i, zz in enumerate(zs.ravel()):
            v, _ = kernel_expand(params, A.basis, np.atleast_1d(zz))
            c = v.coeffs
            num = np.vdot(c, A.entries @ c)
            if renormalize:
                out.ravel()[i] = num / np.vdot(c, c)
            else:
                from .fock import _abs2

                out.ravel()[i] = num * math.exp(-_abs2(zz) / params.t)
    if np.asarray(z).ndim == 0:
        return complex(out.ravel()[0])
    return out


def berezin_symbol(A: OperatorMatrix, renormalize: bool = True) -> CallableSymbol:
    """The Berezin transform of A wrapped as a symbol.

    Bounded by the spectral norm of A; flagged radial when A is diagonal.
    With renormalize=False the symbol is the exact Berezin transform of the
    zero-extended finite-rank operator, valid at every z; the renormalized
    default instead tracks the transform of the un-truncated operator while
    |z|^2/t stays below the truncation degree.
    """
    bound = float(np.linalg.norm(A.entries, 2))
    off = A.entries - np.diag(np.diag(A.entries))
    radial = bool(np.max(np.abs(off)) < 1e-14 * max(bound, 1.0)) and np.allclose(
        np.imag(np.diag(A.entries)), 0.0, atol=1e-14 * max(bound, 1.0)
    )
    return CallableSymbol(lambda z: berezin(A, z, renormalize), bound=bound, radial=radial)


# ---------------------------------------------------------------------------
# group action on operators


def shift(A: OperatorMatrix, z) -> OperatorMatrix:
    """alpha_z(A) = W_z A W_z^*."""
    W = weyl_matrix(A.basis.params, A.basis, z).entries
    return OperatorMatrix(A.basis, W @ A.entries @ W.conj().T)


def module_conv(weight: Symbol, A: OperatorMatrix, *, n_nodes: int = 24) -> OperatorMatrix:
    """Operator-valued convolution  (g * A) = int g(z) alpha_z(A) dz.

    The weight must be a Gaussian or polynomial-times-Gaussian symbol; the
    integral is evaluated with a tensor Gauss-Hermite rule matched to the
    Gaussian factor.  A centered weight costs n_nodes^2 Weyl conjugations; an
    off-center weight adds a single extra conjugation, using
    alpha_{z0+u} = alpha_{z0} o alpha_u.
    """
    if isinstance(weight, Gaussian):
        s, z0 = complex(weight.width), complex(weight.center)

        def factor(u):
            return complex(weight.amplitude)

    elif isinstance(weight, PolyGaussian):
        s, z0 = complex(weight.width), complex(weight.center)

        def factor(u):
            return sum(c * u**p * np.conj(u) ** q for p, q, c in weight.terms)

    else:
        raise TypeError("module_conv supports Gaussian and PolyGaussian weights")
    if s.imag != 0 or s.real <= 0:
        raise ValueError("module_conv needs a real positive Gaussian width")
    s = s.real
    xi, wts = np.polynomial.hermite.hermgauss(n_nodes)
    acc = np.zeros_like(A.entries)
    for i in range(n_nodes):
        for j in range(n_nodes):
            u = math.sqrt(s) * (xi[i] + 1j * xi[j])
            acc += (wts[i] * wts[j] * factor(u)) * shift(A, u).entries
    acc *= s
    out = OperatorMatrix(A.basis, acc)
    if z0 != 0:
        out = shift(out, z0)
    return out


def rank_one(basis: MultiIndexBasis, f: TruncatedVector, g: TruncatedVector) -> OperatorMatrix:
    """The operator f (x) g : h -> <h, g> f."""
    return OperatorMatrix(basis, np.outer(f.coeffs, np.conj(g.coeffs)))


def dilation_conjugate(A: OperatorMatrix, lam: float):
    """Conjugate by the dilation unitary C_lam f = f(lam .).

    C_lam maps the scale-t space onto the scale-t/lam^2 space and fixes every
    basis coefficient, so the matrix is unchanged and only the parameters
    move:  C_lam T_f^{(t)} C_lam^{-1} = T_{f(lam .)}^{(t/lam^2)}.
    Returns the operator re-read over the rescaled space.
    """
    if lam <= 0:
        raise ValueError("dilation factor must be positive")
    old = A.basis.params
    new_params = FockParams(old.t / lam**2, old.n, old.p)
    new_basis = MultiIndexBasis(new_params, A.basis.max_degree)
    return OperatorMatrix(new_basis, A.entries)


def k_s_matrix(basis: MultiIndexBasis, s: float) -> OperatorMatrix:
    """Diagonal operator K_s e_a = s^{|a|} e_a (0 < s <= 1)."""
    if not 0 < s <= 1:
        raise ValueError("s must lie in (0, 1]")
    return OperatorMatrix(basis, np.diag(s ** basis.degrees.astype(float)).astype(complex))


# ---------------------------------------------------------------------------
# integral representation


def integral_apply(
    A: OperatorMatrix,
    f,
    z,
    *,
    n_radial: int = 160,
    n_angular: int = 256,
    radial_cut: float = None,
):
    """Apply A through its reproducing-kernel integral representation,

        (Af)(z) = 1/(pi t) int f(w) <A k_w, k_z> e^{|z|^2/2t - |w|^2/2t} dw,

    by polar quadrature over w.  f is a callable (or symbol) on C; returns the
    values of Af at the requested points.  Agrees with the coefficient action
    when f lies in the truncated range and the cut radius covers its mass.
    """
    params = A.basis.params
    if params.n != 1:
        raise NotImplementedError("integral representation is implemented for n = 1")
    t = params.t
    dim = A.basis.dimension
    if radial_cut is None:
        radial_cut = t * (2 * A.basis.max_degree + 14 * math.sqrt(A.basis.max_degree + 1) + 40)
    feval = f.eval if isinstance(f, Symbol) else f
    x, wq = np.polynomial.legendre.leggauss(n_radial)
    u = 0.5 * (x + 1) * radial_cut
    wu = 0.5 * wq * radial_cut
    theta = 2 * np.pi * np.arange(n_angular) / n_angular
    wgrid = (np.sqrt(u)[:, None] * np.exp(1j * theta)[None, :]).ravel()
    ks = np.arange(dim)
    # unnormalized kernel coefficients c_k(w) = conj(w)^k / sqrt(t^k k!)
    lognorm = -0.5 * gammaln(ks + 1) - 0.5 * ks * math.log(t)
    C = np.conj(wgrid)[:, None] ** ks[None, :] * np.exp(lognorm)[None, :]
    D = C @ A.entries.T  # row w: coefficients of A K_w
    weights = np.repeat(wu / (t * n_angular), n_angular) * np.exp(-np.abs(wgrid) ** 2 / t)
    fw = np.asarray(feval(wgrid), dtype=complex)
    zs = np.atleast_1d(np.asarray(z, dtype=complex))
    evec = zs[None, :] ** ks[:, None] * np.exp(lognorm)[:, None]  # e_k(z)
    out = (weights * fw) @ (D @ evec)
    if np.asarray(z).ndim == 0:
        return complex(out[0])
    return out


# ---------------------------------------------------------------------------
# operator norm estimation


@dataclass(frozen=True)
class NormEstimate:
    """Certified bracket lower <= ||A||_p <= upper, with the best witness."""

    p: object
    lower: float
    upper: float
    witness: str

    @property
    def gap(self) -> float:
        return self.upper - self.lower


def norm_estimate(A: OperatorMatrix, p=None, *, seed: int = 0, n_random: int = 4, tol: float = 1e-8) -> NormEstimate:
    """Estimate the operator norm of A on the p-normed truncated space.

    p = 2 is the exact largest singular value.  For p in {1, inf} the lower
    bound maximizes ||Av||_p / ||v||_p over basis vectors, normalized kernel
    vectors and seeded random vectors; the upper bound is the entrywise
    duality bound  2 sum_{m,k} ||e_m||_p |A_mk| ||e_k||_q.
    """
    params = A.basis.params
    if p is None:
        p = params.p
    if p == 2:
        s = float(np.linalg.norm(A.entries, 2))
        return NormEstimate(2, s, s, "singular-vector")
    from .fock import LITTLE_INFINITY, _canon_p

    pv = _canon_p(p)
    dim = A.basis.dimension
    norms_p = np.array([basis_norm(params, a, p) for a in A.basis.indices])
    q = 1 if pv == np.inf else LITTLE_INFINITY
    norms_q = np.array([basis_norm(params, a, q) for a in A.basis.indices])
    upper = 2.0 * float(norms_p @ np.abs(A.entries) @ norms_q)

    rng = np.random.default_rng(seed)
    lower, witness = 0.0, "none"

    def consider(vec, label):
        nonlocal lower, witness
        v = TruncatedVector(A.basis, vec)
        denom = fp_norm(v, p, tol=tol)
        if denom <= 0:
            return
        val = fp_norm(A.apply(v), p, tol=tol) / denom
        if val > lower:
            lower, witness = val, label

    for k in range(0, dim, max(1, dim // 8)):
        e = np.zeros(dim, dtype=complex)
        e[k] = 1.0
        consider(e, f"basis-{k}")
    for zz in (0.5, 1.0 + 0.5j, -1.5j):
        v, _ = kernel_expand(params, A.basis, zz)
        consider(v.coeffs / np.linalg.norm(v.coeffs), f"kernel-{zz}")
    for r in range(n_random):
        consider(rng.standard_normal(dim) + 1j * rng.standard_normal(dim), f"random-{r}")
    return NormEstimate(p, lower, upper, witness)
