"""Symbol families with group actions and heat transforms.

A symbol is a function f: C -> C (one complex variable throughout this
module) given by a closed-form family.  Families are closed under
translation, reflection and dilation, so the group-action identities hold
exactly; the heat transform

    (g_s * f)(z) = 1/(pi s) int f(w) exp(-|z-w|^2/s) dw

is evaluated in closed form for Gaussian-type families and by certified
polar quadrature otherwise.

Regularity tags are asserted by the constructor and checked numerically via
vo_modulus / c0_tail; they are never inferred.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import PchipInterpolator

__all__ = [
    "Symbol",
    "Constant",
    "Gaussian",
    "PolyGaussian",
    "Angular",
    "Oscillatory",
    "RadialProfile",
    "SampledRadial",
    "CallableSymbol",
    "Sum",
    "Product",
    "Translated",
    "Reflected",
    "Dilated",
    "HeatTransformResult",
    "translate",
    "reflect",
    "dilate",
    "heat_symbol",
    "heat_transform",
    "heat_transform_info",
    "vo_modulus",
    "c0_tail",
    "sin_sqrt_symbol",
    "slow_log_symbol",
    "unit_ripple_symbol",
    "symbol_from_dict",
]

KNOWN_TAGS = frozenset({"bounded", "C0", "BUC", "VO", "slowly-oscillating"})


def _check_tags(tags):
    tags = frozenset(tags)
    unknown = tags - KNOWN_TAGS
    if unknown:
        raise ValueError(f"unknown tags {sorted(unknown)}")
    return tags


@dataclass(frozen=True)
class Symbol:
    """Base class; subclasses implement eval() over complex arrays."""

    def eval(self, z):
        raise NotImplementedError

    @property
    def tags(self) -> frozenset:
        return frozenset()

    def sup_bound(self):
        """Certified bound on sup |f|, or None when unbounded/unknown."""
        return None

    @property
    def is_radial(self) -> bool:
        return False

    def heat(self, s: float):
        """Closed-form heat transform as a symbol, or None."""
        return None

    # closed-form radial value f(r) for radial symbols, used by the exact
    # Toeplitz diagonal path
    def radial(self, r):
        if not self.is_radial:
            raise ValueError("not a radial symbol")
        return self.eval(np.asarray(r, dtype=complex))


@dataclass(frozen=True)
class Constant(Symbol):
    value: complex = 1.0

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        return np.full(z.shape, complex(self.value))

    @property
    def tags(self):
        return frozenset({"bounded", "BUC", "VO", "slowly-oscillating"})

    def sup_bound(self):
        return abs(self.value)

    @property
    def is_radial(self):
        return True

    def heat(self, s):
        return self


@dataclass(frozen=True)
class Gaussian(Symbol):
    """amplitude * exp(-|z - center|^2 / width); width may be complex with
    Re(1/width) >= 0 (the heat transform of an oscillatory symbol)."""

    width: complex = 1.0
    center: complex = 0.0
    amplitude: complex = 1.0

    def __post_init__(self):
        if (1.0 / complex(self.width)).real < 0:
            raise ValueError("width must have Re(1/width) >= 0")

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        return self.amplitude * np.exp(-np.abs(z - self.center) ** 2 / self.width)

    @property
    def tags(self):
        base = {"bounded", "BUC", "slowly-oscillating", "VO"}
        if (1.0 / complex(self.width)).real > 0:
            base.add("C0")
        return frozenset(base)

    def sup_bound(self):
        return abs(self.amplitude)

    @property
    def is_radial(self):
        return self.center == 0

    def heat(self, s):
        w = complex(self.width)
        return Gaussian(w + s, self.center, self.amplitude * (w / (w + s)))


@dataclass(frozen=True)
class PolyGaussian(Symbol):
    """sum_{(p,q,c)} c (z-z0)^p conj(z-z0)^q * exp(-|z-z0|^2/width)."""

    terms: tuple  # of (p, q, coeff)
    width: complex = 1.0
    center: complex = 0.0

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((int(p), int(q), complex(c)) for p, q, c in self.terms))
        if (1.0 / complex(self.width)).real <= 0:
            raise ValueError("width must have Re(1/width) > 0")

    def eval(self, z):
        u = np.asarray(z, dtype=complex) - self.center
        uc = np.conj(u)
        out = np.zeros(u.shape, dtype=complex)
        for p, q, c in self.terms:
            out += c * u**p * uc**q
        return out * np.exp(-np.abs(u) ** 2 / self.width)

    @property
    def tags(self):
        return frozenset({"bounded", "BUC", "C0", "VO", "slowly-oscillating"})

    def sup_bound(self):
        ar = 1.0 / (1.0 / complex(self.width)).real
        bound = 0.0
        for p, q, c in self.terms:
            d = p + q
            peak = (0.5 * d * ar) ** (0.5 * d) * math.exp(-0.5 * d) if d else 1.0
            bound += abs(c) * peak
        return bound

    @property
    def is_radial(self):
        return self.center == 0 and all(p == q for p, q, _ in self.terms)

    def heat(self, s):
        a = complex(self.width)
        gamma = a * s / (a + s)
        lam = a / (a + s)  # mean factor: c = lam * zeta
        new = {}
        for p, q, cf in self.terms:
            for j in range(min(p, q) + 1):
                key = (p - j, q - j)
                coef = (
                    cf
                    * math.comb(p, j)
                    * math.comb(q, j)
                    * math.factorial(j)
                    * gamma**j
                    * lam ** (p - j)
                    * np.conj(lam) ** (q - j)
                )
                new[key] = new.get(key, 0.0) + coef
        terms = tuple((p, q, lam * c) for (p, q), c in sorted(new.items()))
        return PolyGaussian(terms, a + s, self.center)


def _smoothstep(x):
    """C^1 ramp: 0 for x <= 0, 1 for x >= 1."""
    x = np.clip(x, 0.0, 1.0)
    return x * x * (3 - 2 * x)


@dataclass(frozen=True)
class Angular(Symbol):
    """phi(arg z) outside radius r0, ramped smoothly to 0 at the origin.

    phi is a trigonometric polynomial sum_m c_m e^{i m theta}, given as a
    tuple of (m, c_m).
    """

    modes: tuple = ((1, 1.0),)
    r0: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple((int(m), complex(c)) for m, c in self.modes))
        if not self.r0 > 0:
            raise ValueError("r0 must be positive")

    def phase_value(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(theta.shape, dtype=complex)
        for m, c in self.modes:
            out += c * np.exp(1j * m * theta)
        return out

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        r = np.abs(z)
        theta = np.angle(np.where(r > 0, z, 1.0))
        return _smoothstep(r / self.r0) * self.phase_value(theta)

    @property
    def tags(self):
        return frozenset({"bounded", "BUC", "VO", "slowly-oscillating"})

    def sup_bound(self):
        return sum(abs(c) for _, c in self.modes)

    @property
    def is_radial(self):
        return all(m == 0 for m, _ in self.modes)

    @property
    def radial_kinks(self):
        # the cutoff ramp is only C^1 at r0; quadratures split panels there
        return (self.r0,)

    def heat(self, s):
        return AngularHeat(self, float(s))


@dataclass(frozen=True)
class AngularHeat(Symbol):
    """Heat transform of an Angular symbol.

    Convolving an e^{i m theta}-equivariant function with a radial Gaussian
    preserves the equivariance, so the transform is
    sum_m c_m e^{i m theta} H_m(r) with the radial factor reduced to a single
    modified-Bessel integral,

        H_m(r) = (2/s) int chi(rho) rho e^{-(r-rho)^2/s} ive(m, 2 r rho / s)
                 drho,

    evaluated by a Gauss-Legendre rule split at the cutoff kink.
    """

    base: Angular
    s: float
    n_nodes: int = 160

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        r = np.abs(z).ravel()
        theta = np.angle(np.where(r.reshape(z.shape) > 0, z, 1.0)).ravel()
        from scipy.special import ive

        s, r0 = self.s, self.base.r0
        rmax = float(np.max(r)) + math.sqrt(s) * (math.sqrt(-math.log(1e-16)) + 1.0)
        x, w = np.polynomial.legendre.leggauss(self.n_nodes)
        rho, wr = [], []
        for lo, hi in ((0.0, r0), (r0, rmax)):
            if hi > lo:
                rho.append(0.5 * (x + 1) * (hi - lo) + lo)
                wr.append(0.5 * w * (hi - lo))
        rho = np.concatenate(rho)
        wr = np.concatenate(wr)
        base_w = wr * _smoothstep(rho / r0) * rho
        out = np.zeros(r.shape, dtype=complex)
        # chunk over evaluation points to bound the (points x nodes) workspace
        for lo in range(0, len(r), 4096):
            sl = slice(lo, lo + 4096)
            rc = r[sl]
            gauss = np.exp(-((rc[:, None] - rho[None, :]) ** 2) / s)  # ive scaling folded in
            arg = 2.0 * rc[:, None] * rho[None, :] / s
            for m, c in self.base.modes:
                Hm = (2.0 / s) * ((gauss * ive(abs(m), arg)) @ base_w)
                out[sl] += c * Hm * np.exp(1j * m * theta[sl])
        return out.reshape(z.shape)

    @property
    def tags(self):
        return self.base.tags

    def sup_bound(self):
        return self.base.sup_bound()


@dataclass(frozen=True)
class Oscillatory(Symbol):
    """exp(i a |z|^2)."""

    freq: float = 1.0

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        return np.exp(1j * self.freq * np.abs(z) ** 2)

    @property
    def tags(self):
        return frozenset({"bounded"})

    def sup_bound(self):
        return 1.0

    @property
    def is_radial(self):
        return True

    def heat(self, s):
        # e^{ia|z|^2} = e^{-|z|^2/b} with b = i/a; Gaussian closed form applies
        b = 1j / self.freq
        return Gaussian(b + s, 0.0, b / (b + s))


@dataclass(frozen=True)
class RadialProfile(Symbol):
    """Closed-form radial symbol f(|z|) from a named profile."""

    name: str
    profile_tags: tuple = ()
    bound: float = 1.0

    _PROFILES = {
        "sin_sqrt": lambda r: np.sin(np.sqrt(1.0 + r)),
        "slow_log": lambda r: 1.0 / (1.0 + np.log1p(r)),
        "unit_ripple": lambda r: np.tanh(3.0 * np.sin(r)),
    }

    def __post_init__(self):
        if self.name not in self._PROFILES:
            raise ValueError(f"unknown radial profile {self.name!r}")
        _check_tags(self.profile_tags)

    def eval(self, z):
        r = np.abs(np.asarray(z, dtype=complex))
        return self._PROFILES[self.name](r).astype(complex)

    @property
    def tags(self):
        return frozenset(self.profile_tags) | {"bounded"}

    def sup_bound(self):
        return self.bound

    @property
    def is_radial(self):
        return True


@dataclass(frozen=True)
class SampledRadial(Symbol):
    """Radial symbol from samples, monotone-cubic interpolated.

    Evaluation beyond the sampled range is a hard error.
    """

    radii: tuple
    values: tuple
    profile_tags: tuple = ()

    def __post_init__(self):
        r = np.asarray(self.radii, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if r.ndim != 1 or r.size < 2 or np.any(np.diff(r) <= 0):
            raise ValueError("radii must be strictly increasing with >= 2 entries")
        _check_tags(self.profile_tags)
        object.__setattr__(self, "radii", tuple(r))
        object.__setattr__(self, "values", tuple(v))
        # interpolators built once; stored outside the dataclass fields
        object.__setattr__(
            self, "_interp_pair", (PchipInterpolator(r, v.real), PchipInterpolator(r, v.imag))
        )

    def _interp(self):
        return self._interp_pair

    def eval(self, z):
        r = np.abs(np.asarray(z, dtype=complex))
        if np.any(r < self.radii[0] - 1e-12) or np.any(r > self.radii[-1] + 1e-12):
            raise ValueError("evaluation outside the sampled radial range")
        ire, iim = self._interp()
        return ire(r) + 1j * iim(r)

    @property
    def tags(self):
        return frozenset(self.profile_tags) | {"bounded"}

    def sup_bound(self):
        # PCHIP stays within the data range componentwise
        v = np.asarray(self.values)
        return float(np.max(np.abs(v.real)) + np.max(np.abs(v.imag)))

    @property
    def is_radial(self):
        return True


@dataclass(frozen=True)
class CallableSymbol(Symbol):
    """Wrapper for computed symbols (e.g. Berezin transforms of operators)."""

    fn: object
    bound: float = None
    callable_tags: tuple = ()
    radial: bool = False

    def eval(self, z):
        return np.asarray(self.fn(np.asarray(z, dtype=complex)), dtype=complex)

    @property
    def tags(self):
        return frozenset(self.callable_tags) | ({"bounded"} if self.bound is not None else frozenset())

    def sup_bound(self):
        return self.bound

    @property
    def is_radial(self):
        return self.radial


@dataclass(frozen=True)
class Sum(Symbol):
    parts: tuple

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        for p in self.parts:
            out += p.eval(z)
        return out

    @property
    def tags(self):
        common = None
        for p in self.parts:
            common = p.tags if common is None else (common & p.tags)
        return common or frozenset()

    def sup_bound(self):
        bs = [p.sup_bound() for p in self.parts]
        return None if any(b is None for b in bs) else sum(bs)

    @property
    def is_radial(self):
        return all(p.is_radial for p in self.parts)

    def heat(self, s):
        hs = [p.heat(s) for p in self.parts]
        return None if any(h is None for h in hs) else Sum(tuple(hs))


@dataclass(frozen=True)
class Product(Symbol):
    parts: tuple

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.ones(z.shape, dtype=complex)
        for p in self.parts:
            out *= p.eval(z)
        return out

    @property
    def tags(self):
        if all("bounded" in p.tags for p in self.parts):
            return frozenset({"bounded"})
        return frozenset()

    def sup_bound(self):
        bs = [p.sup_bound() for p in self.parts]
        if any(b is None for b in bs):
            return None
        out = 1.0
        for b in bs:
            out *= b
        return out

    @property
    def is_radial(self):
        return all(p.is_radial for p in self.parts)


@dataclass(frozen=True)
class Translated(Symbol):
    base: Symbol
    shift: complex

    def eval(self, z):
        return self.base.eval(np.asarray(z, dtype=complex) - self.shift)

    @property
    def tags(self):
        return self.base.tags

    def sup_bound(self):
        return self.base.sup_bound()

    def heat(self, s):
        h = self.base.heat(s)
        return None if h is None else Translated(h, self.shift)


@dataclass(frozen=True)
class Reflected(Symbol):
    base: Symbol

    def eval(self, z):
        return self.base.eval(-np.asarray(z, dtype=complex))

    @property
    def tags(self):
        return self.base.tags

    def sup_bound(self):
        return self.base.sup_bound()

    @property
    def is_radial(self):
        return self.base.is_radial

    def heat(self, s):
        h = self.base.heat(s)
        return None if h is None else Reflected(h)


@dataclass(frozen=True)
class Dilated(Symbol):
    base: Symbol
    factor: float

    def __post_init__(self):
        if not self.factor > 0:
            raise ValueError("dilation factor must be positive")

    def eval(self, z):
        return self.base.eval(self.factor * np.asarray(z, dtype=complex))

    @property
    def tags(self):
        return self.base.tags

    def sup_bound(self):
        return self.base.sup_bound()

    @property
    def is_radial(self):
        return self.base.is_radial


# ---------------------------------------------------------------------------
# group actions


def translate(symbol: Symbol, z) -> Symbol:
    """alpha_z(f)(w) = f(w - z), exact on every family."""
    z = complex(z)
    if z == 0:
        return symbol
    if isinstance(symbol, (Gaussian, PolyGaussian)):
        return type(symbol)(
            **{**_fields(symbol), "center": symbol.center + z}
        )
    if isinstance(symbol, Translated):
        return translate(symbol.base, symbol.shift + z)
    if isinstance(symbol, Sum):
        return Sum(tuple(translate(p, z) for p in symbol.parts))
    return Translated(symbol, z)


def reflect(symbol: Symbol) -> Symbol:
    """(beta f)(w) = f(-w)."""
    if isinstance(symbol, Reflected):
        return symbol.base
    if symbol.is_radial:
        return symbol
    return Reflected(symbol)


def dilate(symbol: Symbol, lam: float) -> Symbol:
    """(delta_lam f)(z) = f(lam z)."""
    if lam <= 0:
        raise ValueError("dilation factor must be positive")
    if lam == 1:
        return symbol
    if isinstance(symbol, Gaussian) and symbol.center == 0:
        return Gaussian(symbol.width / lam**2, 0.0, symbol.amplitude)
    if isinstance(symbol, Oscillatory):
        return Oscillatory(symbol.freq * lam**2)
    if isinstance(symbol, Dilated):
        return dilate(symbol.base, symbol.factor * lam)
    if isinstance(symbol, Sum):
        return Sum(tuple(dilate(p, lam) for p in symbol.parts))
    return Dilated(symbol, lam)


def _fields(obj):
    import dataclasses

    return {f.name: getattr(obj, f.name) for f in dataclasses.fields(obj)}


# ---------------------------------------------------------------------------
# heat transform


@dataclass(frozen=True)
class HeatTransformResult:
    s: float
    values: dict
    method: str
    error_bound: float


def heat_symbol(symbol: Symbol, s: float) -> Symbol | None:
    """Closed-form heat transform as a symbol, or None when unavailable."""
    if s <= 0:
        raise ValueError("heat time must be positive")
    return symbol.heat(s)


def heat_transform(symbol: Symbol, s: float, z, *, tol: float = 1e-12):
    """(g_s * f)(z); closed form where available, certified quadrature else."""
    if s <= 0:
        raise ValueError("heat time must be positive")
    h = symbol.heat(s)
    if h is not None:
        return h.eval(z)
    return _heat_quadrature(symbol, s, z, tol)[0]


def heat_transform_info(symbol: Symbol, s: float, z) -> HeatTransformResult:
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    h = symbol.heat(s)
    if h is not None:
        vals = h.eval(z)
        return HeatTransformResult(s, dict(zip(map(complex, z), map(complex, vals))), "closed-form", 0.0)
    vals, err = _heat_quadrature(symbol, s, z, 1e-12)
    return HeatTransformResult(s, dict(zip(map(complex, z), map(complex, np.atleast_1d(vals)))), "quadrature", err)


def _heat_quadrature(symbol: Symbol, s: float, z, tol: float):
    sup = symbol.sup_bound()
    if sup is None:
        raise ValueError("quadrature heat transform needs a certified symbol bound")
    # radius where the Gaussian tail times sup|f| drops below tol
    R = math.sqrt(s * max(math.log(max(sup, 1.0) / max(tol, 1e-300)) + 4.0, 4.0))
    z = np.asarray(z, dtype=complex)
    flat = np.atleast_1d(z).ravel()
    tail = sup * math.exp(-R * R / s)

    def estimate(n_rad, n_ang):
        x, w = np.polynomial.legendre.leggauss(n_rad)
        r = 0.5 * (x + 1) * R
        wr = 0.5 * w * R
        theta = 2 * np.pi * np.arange(n_ang) / n_ang
        wshift = r[:, None] * np.exp(1j * theta)[None, :]
        out = np.empty(flat.shape, dtype=complex)
        for i, zz in enumerate(flat):
            ang = symbol.eval(zz - wshift).mean(axis=1)
            out[i] = (2.0 / s) * np.sum(wr * r * np.exp(-(r * r) / s) * ang)
        return out

    # double the rule until two successive estimates agree; symbols with
    # radial kinks (angular cutoffs etc.) converge only algebraically
    n_rad, n_ang = 96, 128
    out = estimate(n_rad, n_ang)
    for _ in range(4):
        n_rad, n_ang = 2 * n_rad, 2 * n_ang
        new = estimate(n_rad, n_ang)
        delta = float(np.max(np.abs(new - out)))
        out = new
        if delta <= max(tol, 1e-13):
            break
    out = out.reshape(np.atleast_1d(z).shape)
    if z.ndim == 0:
        return complex(out[0]), tail
    return out, tail


# ---------------------------------------------------------------------------
# tag checks


def vo_modulus(symbol: Symbol, R: float, *, n_angle: int = 48, n_shift: int = 120, refine: bool = True) -> float:
    """max over |z| = R, |w| <= 1 of |f(z) - f(z-w)| on a grid.

    With refine=True the grid is doubled once and the larger value returned.
    """
    def grid_value(na, ns):
        theta = 2 * np.pi * np.arange(na) / na
        zs = R * np.exp(1j * theta)
        rr = np.linspace(0.0, 1.0, max(int(math.isqrt(ns)), 4))
        tt = 2 * np.pi * np.arange(max(int(math.isqrt(ns)), 4)) / max(int(math.isqrt(ns)), 4)
        ws = (rr[:, None] * np.exp(1j * tt)[None, :]).ravel()
        fz = symbol.eval(zs)
        best = 0.0
        for wv in ws:
            best = max(best, float(np.max(np.abs(fz - symbol.eval(zs - wv)))))
        return best

    v = grid_value(n_angle, n_shift)
    if refine:
        v = max(v, grid_value(2 * n_angle, 2 * n_shift))
    return v


def c0_tail(symbol: Symbol, R: float, *, n_angle: int = 256) -> float:
    """sup over the grid on |z| = R of |f(z)|."""
    theta = 2 * np.pi * np.arange(n_angle) / n_angle
    return float(np.max(np.abs(symbol.eval(R * np.exp(1j * theta)))))


# ---------------------------------------------------------------------------
# named profiles and serialization


def sin_sqrt_symbol() -> RadialProfile:
    """sin(sqrt(1+|z|)): bounded, vanishing oscillation at infinity."""
    return RadialProfile("sin_sqrt", ("BUC", "VO", "slowly-oscillating"), 1.0)


def slow_log_symbol() -> RadialProfile:
    """1/(1+log(1+|z|)): slowly oscillating with a slow decay to zero."""
    return RadialProfile("slow_log", ("BUC", "VO", "slowly-oscillating", "C0"), 1.0)


def unit_ripple_symbol() -> RadialProfile:
    """tanh(3 sin |z|): oscillates at unit scale forever; not VO."""
    return RadialProfile("unit_ripple", ("BUC",), 1.0)


def symbol_from_dict(d: dict) -> Symbol:
    """Build a symbol from a configuration table (see the cli module docs)."""
    d = dict(d)
    family = d.pop("family")
    if family == "constant":
        return Constant(complex(d.pop("re", 1.0)) + 1j * float(d.pop("im", 0.0)))
    if family == "gaussian":
        return Gaussian(
            width=float(d.pop("width", 1.0)),
            center=complex(d.pop("center_re", 0.0)) + 1j * float(d.pop("center_im", 0.0)),
            amplitude=complex(d.pop("amplitude", 1.0)),
        )
    if family == "polygaussian":
        terms = tuple((int(t["p"]), int(t["q"]), complex(t["coeff"])) for t in d.pop("terms"))
        return PolyGaussian(terms, float(d.pop("width", 1.0)))
    if family == "angular":
        modes = tuple((int(m["m"]), complex(m["coeff"])) for m in d.pop("modes"))
        return Angular(modes, float(d.pop("r0", 1.0)))
    if family == "oscillatory":
        return Oscillatory(float(d.pop("freq", 1.0)))
    if family == "radial":
        name = d.pop("name")
        if name == "sin_sqrt":
            return sin_sqrt_symbol()
        if name == "slow_log":
            return slow_log_symbol()
        if name == "unit_ripple":
            return unit_ripple_symbol()
        raise ValueError(f"unknown radial profile {name!r}")
    if family == "sampled":
        return SampledRadial(tuple(d.pop("radii")), tuple(d.pop("values")), tuple(d.pop("tags", ())))
    raise ValueError(f"unknown symbol family {family!r}")
