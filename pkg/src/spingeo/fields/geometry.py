"""Chart geometries: flat and conformally flat orthonormal-frame backends.

A Geometry is one chart with frame data.  For the conformally flat kind,
g = exp(2 sigma) eta with coframe e^a = exp(sigma) dx^a; the torsion-free
spin connection in frame components is

    omega_{ab}(X_c) = exp(-sigma) (d_b sigma * eta_{ac} - d_a sigma * eta_{bc})

(the overall sign is pinned by requiring the stereographic-sphere chart to
produce constant positive scalar curvature), and the curvature 2-forms are
assembled from d omega + omega ^ omega.  Ricci 1-forms, scalar curvature,
Schouten 1-forms and conformal 2-forms are contractions thereof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..algebra import Multivector, Signature
from .base import halton_points


class GeometryError(ValueError):
    pass


class ScalarChart:
    """Scalar chart function with gradient and Hessian (analytic or FD)."""

    def __init__(self, fn, grad=None, hess=None, step: float = 1e-5):
        self.fn = fn
        self._grad = grad
        self._hess = hess
        self.step = step

    def value(self, x) -> float:
        return float(self.fn(np.asarray(x, dtype=float)))

    def grad(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self._grad is not None:
            return np.asarray(self._grad(x), dtype=float)
        n = len(x)
        out = np.empty(n)
        for i in range(n):
            e = np.zeros(n)
            e[i] = 1.0
            d1 = (self.fn(x + self.step * e) - self.fn(x - self.step * e)) / (2 * self.step)
            d2 = (self.fn(x + self.step / 2 * e) - self.fn(x - self.step / 2 * e)) / self.step
            out[i] = (4 * d2 - d1) / 3
        return out

    def hess(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self._hess is not None:
            return np.asarray(self._hess(x), dtype=float)
        n = len(x)
        h = self.step
        out = np.empty((n, n))
        f0 = self.fn(x)
        for i in range(n):
            ei = np.zeros(n)
            ei[i] = 1.0
            out[i, i] = (self.fn(x + h * ei) - 2 * f0 + self.fn(x - h * ei)) / h ** 2
            for j in range(i + 1, n):
                ej = np.zeros(n)
                ej[j] = 1.0
                v = (self.fn(x + h * ei + h * ej) - self.fn(x + h * ei - h * ej)
                     - self.fn(x - h * ei + h * ej) + self.fn(x - h * ei - h * ej)) / (4 * h ** 2)
                out[i, j] = out[j, i] = v
        return out


def sphere_sigma(dim: int) -> ScalarChart:
    """Stereographic chart of the unit round sphere: sigma = log(2/(1+|x|^2))."""
    def fn(x):
        return math.log(2.0 / (1.0 + float(np.dot(x, x))))

    def grad(x):
        return -2.0 * x / (1.0 + np.dot(x, x))

    def hess(x):
        r2 = np.dot(x, x)
        n = len(x)
        return (-2.0 / (1.0 + r2)) * np.eye(n) + (4.0 / (1.0 + r2) ** 2) * np.outer(x, x)

    return ScalarChart(fn, grad, hess)


@dataclass
class Geometry:
    """Single-chart geometry backend feeding the field operators."""

    sig: Signature
    kind: str                      # "flat" | "conformally_flat"
    sigma: ScalarChart | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return self.sig.dim

    @property
    def is_flat(self) -> bool:
        return self.kind == "flat"

    def frame_factor(self, x) -> float:
        """exp(sigma): e^a = frame_factor * dx^a."""
        if self.is_flat:
            return 1.0
        return math.exp(self.sigma.value(x))

    def conn(self, x) -> np.ndarray:
        """omega_{ab}(X_c), both frame indices down, antisymmetric in (a, b)."""
        n = self.dim
        if self.is_flat:
            return np.zeros((n, n, n))
        eta = np.array([self.sig.metric(a + 1) for a in range(n)], dtype=float)
        g = self.sigma.grad(x)
        s = math.exp(-self.sigma.value(x))
        w = np.zeros((n, n, n))
        for a in range(n):
            for b in range(n):
                if a == b:
                    continue
                # omega_{ab}(X_c) = e^-sigma (g_b eta_{ac} - g_a eta_{bc})
                w[a, b, a] += s * g[b] * eta[a]
                w[a, b, b] -= s * g[a] * eta[b]
        return w

    def conn_mixed(self, x) -> np.ndarray:
        """omega^a_b(X_c) = eta^{aa} omega_{ab}(X_c)."""
        w = self.conn(x)
        eta = np.array([self.sig.metric(a + 1) for a in range(self.dim)], dtype=float)
        return eta[:, None, None] * w

    def curvature(self, x) -> list:
        """R_{ab}(x) as frame 2-form multivectors (both indices down)."""
        n = self.dim
        if self.is_flat:
            zero = Multivector.zero(self.sig)
            return [[zero for _ in range(n)] for _ in range(n)]
        eta = np.array([self.sig.metric(a + 1) for a in range(n)], dtype=float)
        g = self.sigma.grad(x)
        h = self.sigma.hess(x)
        s2 = math.exp(-2.0 * self.sigma.value(x))

        # coordinate components of omega^a_b: w[a,b,mu] (no exp factor)
        w = np.zeros((n, n, n))
        for a in range(n):
            for b in range(n):
                w[a, b, a] += g[b] * eta[a] * eta[a]      # eta^{aa} * g_b * eta_{a mu}
                w[a, b, b] -= eta[a] * g[a] * eta[b]      # eta^{aa} eta_{aa} pattern
        # explicit: w[a,b,mu] = g_b delta^a_mu - eta^{ad} g_d eta_{b mu}
        w = np.zeros((n, n, n))
        for a in range(n):
            for b in range(n):
                for mu in range(n):
                    v = 0.0
                    if mu == a:
                        v += g[b]
                    if mu == b:
                        v -= eta[a] * g[a] * eta[b]
                    w[a, b, mu] = v

        out = []
        for a in range(n):
            row = []
            for b in range(n):
                terms = {}
                for mu in range(n):
                    for nu in range(mu + 1, n):
                        # d omega: d_mu w[a,b,nu] - d_nu w[a,b,mu]
                        dmu_wnu = (h[b, mu] if nu == a else 0.0) - (eta[a] * h[a, mu] * eta[b] if nu == b else 0.0)
                        dnu_wmu = (h[b, nu] if mu == a else 0.0) - (eta[a] * h[a, nu] * eta[b] if mu == b else 0.0)
                        comp = dmu_wnu - dnu_wmu
                        # omega ^ omega
                        for c in range(n):
                            comp += w[a, c, mu] * w[c, b, nu] - w[a, c, nu] * w[c, b, mu]
                        comp *= s2 * eta[a]          # lower a; frame conversion e^{-2 sigma}
                        if comp != 0.0:
                            terms[(1 << mu) | (1 << nu)] = complex(comp)
                row.append(Multivector(self.sig, terms))
            out.append(row)
        return out

    def ricci(self, x) -> list:
        """P_a = i_{X^b} R_{ba}."""
        R = self.curvature(x)
        n = self.dim
        out = []
        for a in range(n):
            p = Multivector.zero(self.sig)
            for b in range(n):
                p = p + R[b][a].contract_gen(b + 1).scale(self.sig.metric(b + 1))
            out.append(p)
        return out

    def scalar_curv(self, x) -> float:
        P = self.ricci(x)
        total = 0.0
        for a in range(self.dim):
            total += self.sig.metric(a + 1) * complex(P[a].contract_gen(a + 1).scalar_part()).real
        return total

    def schouten(self, x) -> list:
        """K_a = (1/(n-2)) (R/(2(n-1)) e_a - P_a); requires dim > 2."""
        n = self.dim
        if n <= 2:
            raise GeometryError("Schouten 1-forms need dim > 2")
        P = self.ricci(x)
        Rs = self.scalar_curv(x)
        out = []
        for a in range(n):
            e_low = Multivector.basis_vector(self.sig, a + 1).scale(self.sig.metric(a + 1))
            out.append((e_low.scale(Rs / (2 * (n - 1))) - P[a]).scale(1.0 / (n - 2)))
        return out

    def conformal2(self, x) -> list:
        """C_ab = R_ab - (P_a ^ e_b - P_b ^ e_a)/(n-2) + R e_a ^ e_b /((n-1)(n-2))."""
        n = self.dim
        if n <= 2:
            raise GeometryError("conformal 2-forms need dim > 2")
        R = self.curvature(x)
        P = self.ricci(x)
        Rs = self.scalar_curv(x)
        e_low = [Multivector.basis_vector(self.sig, a + 1).scale(self.sig.metric(a + 1))
                 for a in range(n)]
        out = []
        for a in range(n):
            row = []
            for b in range(n):
                c = R[a][b] \
                    - (P[a].wedge(e_low[b]) - P[b].wedge(e_low[a])).scale(1.0 / (n - 2)) \
                    + e_low[a].wedge(e_low[b]).scale(Rs / ((n - 1) * (n - 2)))
                row.append(c)
            out.append(row)
        return out


def make_geometry(kind: str, sig: Signature, sigma=None) -> Geometry:
    """Construct a geometry backend; probes FD differentiability of sigma."""
    if kind == "flat":
        return Geometry(sig=sig, kind="flat")
    if kind != "conformally_flat":
        raise ValueError(f"unknown geometry kind {kind!r}")
    if sigma is None:
        raise ValueError("conformally_flat needs a sigma chart function")
    if not isinstance(sigma, ScalarChart):
        sigma = ScalarChart(sigma)
    _probe_sigma(sigma, sig.dim)
    return Geometry(sig=sig, kind="conformally_flat", sigma=sigma)


def _probe_sigma(sigma: ScalarChart, dim: int) -> None:
    """Diagnose non-differentiable sigma by FD step-halving disagreement."""
    pts = np.vstack([np.zeros((1, dim)), halton_points(dim, 8, seed=3, box=0.8)])
    for x in pts:
        v = sigma.value(x)
        if not math.isfinite(v):
            raise GeometryError(f"sigma not finite at {x.tolist()}")
        g1 = ScalarChart(sigma.fn, step=1e-4).grad(x) if sigma._grad is None else sigma.grad(x)
        g2 = sigma.grad(x)
        if not np.all(np.isfinite(g2)):
            raise GeometryError(f"sigma gradient not finite at {x.tolist()}")
        if sigma._grad is None:
            scale = max(1.0, float(np.max(np.abs(g2))))
            if np.max(np.abs(g1 - g2)) > 1e-2 * scale:
                raise GeometryError(
                    f"sigma looks non-differentiable near {x.tolist()} "
                    f"(FD estimates disagree: {g1} vs {g2})")
        h = sigma.hess(x)
        if not np.all(np.isfinite(h)) or np.max(np.abs(h)) > 1e6:
            raise GeometryError(f"sigma second derivatives blow up at {x.tolist()}")
