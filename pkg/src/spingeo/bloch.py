"""Bloch models, Berry-phase invariants, Haldane phases, Kane-Mele Z2.

Momentum-space conventions: a BlochModel's Hamiltonian is a function of
reduced coordinates s in [0, 2pi)^2 (the torus), exactly periodic under
s -> s + 2pi e_i.  The Haldane model is built from the honeycomb d-vector

    d0 = 2 t2 cos(phi) sum_i cos(k.b_i)
    d1 = t1 sum_i cos(k.a_i)
    d2 = t1 sum_i sin(k.a_i)
    d3 = M - 2 t2 sin(phi) sum_i sin(k.b_i)

with the three nearest-neighbour vectors a_i and the Bravais combinations
b_1 = a_2 - a_3 (cyclic).  The (d1, d2) pair picks up a sublattice phase
under reciprocal translations, so for torus numerics the model is stored
in the periodic gauge (d1 + i d2) -> exp(-i k.a_1) (d1 + i d2), a
unitary conjugation that leaves spectra, gaps and all invariants
unchanged (asserted by the gauge-invariance test).

Berry orientation: the curvature sign is fixed so that the valence band
of the Haldane model carries C1 = (1/2)[sgn(M + 3 sqrt3 t2 sin phi)
- sgn(M - 3 sqrt3 t2 sin phi)] (C1 = +1 for phi > 0 at M = 0), the
convention of the source analysis; the orientation-reversed convention
differs by an overall sign on every Chern number and leaves the Z2
invariant unchanged.

Chern numbers default to the Fukui-Hatsugai-Suzuki link-variable field
strength (gauge-invariant, integer on gapped systems at modest grids);
the continuum d-vector winding integral is retained as the ``dvector``
method for two-band models.  The Z2 invariant is computed both as the
spin Chern parity and from the sewing matrix w_mn(k) = <u_m(-k)|T|u_n(k)>
as prod Pf(w)/sqrt(det w) over the four TRIM points with a deterministic
sweep-gauge-fixed occupied frame.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

SQRT3 = math.sqrt(3.0)

# nearest-neighbour vectors (unit length), 120 degrees apart
A_VECS = np.array([
    [0.0, 1.0],
    [-SQRT3 / 2, -0.5],
    [SQRT3 / 2, -0.5],
])
# next-nearest-neighbour (Bravais) combinations b1 = a2 - a3 etc.
B_VECS = np.array([
    A_VECS[1] - A_VECS[2],
    A_VECS[2] - A_VECS[0],
    A_VECS[0] - A_VECS[1],
])
# primitive Bravais vectors and duals with G_i . u_j = 2 pi delta_ij
_U1 = A_VECS[0] - A_VECS[1]
_U2 = A_VECS[0] - A_VECS[2]
_DET = _U1[0] * _U2[1] - _U1[1] * _U2[0]
G1 = 2 * math.pi / _DET * np.array([_U2[1], -_U2[0]])
G2 = 2 * math.pi / _DET * np.array([-_U1[1], _U1[0]])

# Dirac points: d3(K) = M + 3 sqrt(3) t2 sin(phi)
K_POINT = np.array([-4 * math.pi / (3 * SQRT3), 0.0])
K_PRIME = -K_POINT

PAULI = [
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]


class GaplessError(RuntimeError):
    def __init__(self, k, gap):
        self.k = tuple(float(v) for v in k)
        self.gap = float(gap)
        super().__init__(f"spectrum gapless (gap {gap:.3e}) at k = {self.k}")


class RoundingGuardError(RuntimeError):
    pass


@dataclass
class DVector:
    """Pauli decomposition H = d0 I + d . sigma of a two-band model."""

    d0: callable
    d1: callable
    d2: callable
    d3: callable

    def __call__(self, k) -> np.ndarray:
        return np.array([self.d0(k), self.d1(k), self.d2(k), self.d3(k)])

    def matrix(self, k) -> np.ndarray:
        d = self(k)
        return sum(d[i] * PAULI[i] for i in range(4))


@dataclass
class BlochModel:
    """h maps reduced torus coordinates s in [0, 2pi)^2 to a Hermitian matrix."""

    bands: int
    h: callable
    metadata: dict = field(default_factory=dict)
    dvec: DVector | None = None          # periodic-gauge d-vector (2-band)
    sz_conserving: bool = False
    sectors: tuple | None = None         # (up, down) BlochModels when Sz conserved
    time_reversal: np.ndarray | None = None   # U_T with T = U_T K, T^2 = -1
    h_grid: callable | None = None       # vectorized h over an (..., 2) array of s

    def hermiticity_defect(self, s) -> float:
        m = self.h(np.asarray(s, dtype=float))
        return float(np.abs(m - m.conj().T).max())


def haldane_d(k, t1=1.0, t2=0.0, phi=0.0, M=0.0) -> np.ndarray:
    """The four d-components at a cartesian momentum k (atomic gauge)."""
    k = np.asarray(k, dtype=float)
    ka = A_VECS @ k
    kb = B_VECS @ k
    return np.array([
        2 * t2 * math.cos(phi) * np.sum(np.cos(kb)),
        t1 * np.sum(np.cos(ka)),
        t1 * np.sum(np.sin(ka)),
        M - 2 * t2 * math.sin(phi) * np.sum(np.sin(kb)),
    ])


def haldane(k, t1=1.0, t2=0.0, phi=0.0, M=0.0):
    """2x2 Bloch Hamiltonian and d-vector at cartesian k (atomic gauge)."""
    d = haldane_d(k, t1, t2, phi, M)
    h = sum(d[i] * PAULI[i] for i in range(4))
    return h, d


def _reduced_to_cartesian(s) -> np.ndarray:
    return (s[0] * G1 + s[1] * G2) / (2 * math.pi)


def haldane_model(t1=1.0, t2=0.0, phi=0.0, M=0.0) -> BlochModel:
    """Periodic-gauge Haldane model on the reduced torus."""

    def d_grid(s):
        """Periodic-gauge d-components for an (..., 2) array of reduced coords."""
        s = np.asarray(s, dtype=float)
        k = (s[..., :1] * G1 + s[..., 1:] * G2) / (2 * math.pi)
        ka = k @ A_VECS.T
        kb = k @ B_VECS.T
        d0 = 2 * t2 * math.cos(phi) * np.cos(kb).sum(axis=-1)
        d3 = M - 2 * t2 * math.sin(phi) * np.sin(kb).sum(axis=-1)
        off = t1 * np.exp(1j * ka).sum(axis=-1) * np.exp(-1j * (k @ A_VECS[0]))
        return d0, off.real, off.imag, d3

    def h_grid(s):
        d0, d1, d2, d3 = d_grid(s)
        out = np.empty(d0.shape + (2, 2), dtype=complex)
        out[..., 0, 0] = d0 + d3
        out[..., 1, 1] = d0 - d3
        out[..., 0, 1] = d1 - 1j * d2
        out[..., 1, 0] = d1 + 1j * d2
        return out

    def dcomp(i):
        def f(s):
            comps = d_grid(np.asarray(s, dtype=float))
            return float(comps[i])
        return f

    dv = DVector(dcomp(0), dcomp(1), dcomp(2), dcomp(3))
    return BlochModel(bands=2, h=lambda s: h_grid(np.asarray(s, dtype=float)),
                      dvec=dv, h_grid=h_grid,
                      metadata={"t1": t1, "t2": t2, "phi": phi, "M": M})


def haldane_phase(t1=1.0, t2=0.0, phi=0.0, M=0.0) -> str:
    """Analytic phase: 'trivial' | 'chern(+1)' | 'chern(-1)' | 'gapless'."""
    mass_k = M + 3 * SQRT3 * t2 * math.sin(phi)
    mass_kp = M - 3 * SQRT3 * t2 * math.sin(phi)
    if mass_k == 0.0 or mass_kp == 0.0:
        return "gapless"
    c = (np.sign(mass_k) - np.sign(mass_kp)) / 2
    if c == 0:
        return "trivial"
    return f"chern({'+' if c > 0 else '-'}1)"


def kane_mele(t1=1.0, lambda_so=0.0, M=0.0) -> BlochModel:
    """Two decoupled Haldane copies: spin up phi=+pi/2, spin down phi=-pi/2.

    Basis order (A up, B up, A down, B down); Sz conserved by construction,
    time reversal T = (i sigma_y (x) I) K with T^2 = -1.
    """
    up = haldane_model(t1=t1, t2=lambda_so, phi=math.pi / 2, M=M)
    dn = haldane_model(t1=t1, t2=lambda_so, phi=-math.pi / 2, M=M)

    def h_grid(s):
        s = np.asarray(s, dtype=float)
        out = np.zeros(s.shape[:-1] + (4, 4), dtype=complex)
        out[..., :2, :2] = up.h_grid(s)
        out[..., 2:, 2:] = dn.h_grid(s)
        return out

    def h(s):
        return h_grid(np.asarray(s, dtype=float))

    u_t = np.zeros((4, 4), dtype=complex)
    u_t[:2, 2:] = -np.eye(2)
    u_t[2:, :2] = np.eye(2)
    return BlochModel(bands=4, h=h, h_grid=h_grid,
                      metadata={"t1": t1, "lambda_so": lambda_so, "M": M},
                      sz_conserving=True, sectors=(up, dn), time_reversal=u_t)


@dataclass
class InvariantResult:
    value: int
    method: str
    grid: int
    gap_min: float

    def to_json(self) -> dict:
        return {"method": self.method, "grid": self.grid,
                "value": int(self.value), "gap_min": self.gap_min}


def _occupied_grid(model: BlochModel, n_occ: int, N: int):
    """Eigen-frames of the lowest n_occ bands on the N x N reduced grid."""
    axis = 2 * math.pi * np.arange(N) / N
    if model.h_grid is not None:
        s = np.stack(np.meshgrid(axis, axis, indexing="ij"), axis=-1)
        w, v = np.linalg.eigh(model.h_grid(s))
        frames = v[..., :n_occ]
        gaps = w[..., n_occ] - w[..., n_occ - 1]
        loc = np.unravel_index(int(np.argmin(gaps)), gaps.shape)
        gap_min = float(gaps[loc])
        gap_loc = (axis[loc[0]], axis[loc[1]])
    else:
        frames = np.empty((N, N, model.bands, n_occ), dtype=complex)
        gap_min = math.inf
        gap_loc = (0.0, 0.0)
        for i in range(N):
            for j in range(N):
                s = np.array([axis[i], axis[j]])
                w, v = np.linalg.eigh(model.h(s))
                gap = w[n_occ] - w[n_occ - 1]
                if gap < gap_min:
                    gap_min, gap_loc = gap, s
                frames[i, j] = v[:, :n_occ]
    if gap_min <= 1e-10:
        raise GaplessError(gap_loc, gap_min)
    return frames, float(gap_min)


def fhs_field_strength(frames: np.ndarray) -> np.ndarray:
    """Lattice field strength from link variables of occupied frames."""
    def link(axis):
        rolled = np.roll(frames, -1, axis=axis)
        ov = np.einsum("ijkm,ijkn->ijmn", frames.conj(), rolled)
        det = np.linalg.det(ov)
        with np.errstate(invalid="ignore", divide="ignore"):
            return det / np.abs(det)

    u1 = link(0)
    u2 = link(1)
    with np.errstate(invalid="ignore", divide="ignore"):
        prod = u1 * np.roll(u2, -1, axis=0) / (np.roll(u1, -1, axis=1) * u2)
    return np.angle(prod)


def chern(model: BlochModel, n_occ: int = 1, grid: int = 24,
          method: str = "fhs_link") -> InvariantResult:
    """First Chern number of the lowest n_occ bands."""
    if method == "fhs_link":
        frames, gap_min = _occupied_grid(model, n_occ, grid)
        total = -fhs_field_strength(frames).sum() / (2 * math.pi)
    elif method == "dvector":
        if model.dvec is None or model.bands != 2:
            raise ValueError("dvector method needs a two-band model with a d-vector")
        total, gap_min = _dvector_winding(model, grid)
    else:
        raise ValueError(f"unknown Chern method {method!r}")
    if not math.isfinite(total):
        raise RoundingGuardError(
            "field-strength sum is not finite (degenerate link overlap); increase grid")
    value = round(total)
    if abs(total - value) > 0.1:
        raise RoundingGuardError(
            f"field-strength sum {total:.4f} not within 0.1 of an integer; increase grid")
    return InvariantResult(value=int(value), method=method, grid=grid, gap_min=gap_min)


def _dvector_winding(model: BlochModel, N: int):
    """Discretised unit-d winding (solid angle per plaquette, Berg-Luscher).

    The occupied band carries the winding of d-hat in the package's Berry
    orientation (see module docstring); matches the FHS method exactly.
    """
    dv = model.dvec
    axis = 2 * math.pi * np.arange(N) / N
    unit = np.empty((N, N, 3))
    gap_min = math.inf
    for i in range(N):
        for j in range(N):
            s = np.array([axis[i], axis[j]])
            d = dv(s)[1:]
            norm = np.linalg.norm(d)
            gap_min = min(gap_min, 2 * norm)
            if norm <= 1e-12:
                raise GaplessError(s, 0.0)
            unit[i, j] = d / norm
    total = 0.0
    for i in range(N):
        for j in range(N):
            n1 = unit[i, j]
            n2 = unit[(i + 1) % N, j]
            n3 = unit[(i + 1) % N, (j + 1) % N]
            n4 = unit[i, (j + 1) % N]
            total += _solid_angle(n1, n2, n3) + _solid_angle(n1, n3, n4)
    return total / (4 * math.pi), float(gap_min)


def _solid_angle(a, b, c) -> float:
    num = np.dot(a, np.cross(b, c))
    den = 1.0 + np.dot(a, b) + np.dot(b, c) + np.dot(c, a)
    return 2.0 * math.atan2(num, den)


# ---------------------------------------------------------------------------
# Z2 invariants


def pfaffian(m: np.ndarray) -> complex:
    """Pfaffian of an even-size skew-symmetric matrix (Parlett-Reid).

    Gaussian congruence transforms with partial pivoting; stable for the
    small sewing matrices this package meets.
    """
    m = np.array(m, dtype=complex)
    n = m.shape[0]
    if n != m.shape[1]:
        raise ValueError("pfaffian needs a square matrix")
    if n % 2:
        return 0.0 + 0.0j
    value = 1.0 + 0.0j
    for k in range(0, n - 1, 2):
        pivot = k + 1 + int(np.argmax(np.abs(m[k + 1:, k])))
        if pivot != k + 1:
            m[[k + 1, pivot]] = m[[pivot, k + 1]]
            m[:, [k + 1, pivot]] = m[:, [pivot, k + 1]]
            value = -value
        if m[k + 1, k] == 0:
            return 0.0 + 0.0j
        value *= m[k, k + 1]
        if k + 2 < n:
            tau = m[k + 2:, k] / m[k + 1, k]
            m[k + 2:, :] -= np.outer(tau, m[k + 1, :])
            m[:, k + 2:] -= np.outer(m[:, k + 1], tau)
    return value


def z2(model: BlochModel, method: str = "spin_chern", grid: int = 24) -> InvariantResult:
    """Z2 invariant nu = +-1 (+1 trivial, -1 topological)."""
    if method == "spin_chern":
        if not model.sz_conserving or model.sectors is None:
            raise ValueError("spin_chern needs an Sz-conserving model with sectors")
        up = chern(model.sectors[0], 1, grid)
        dn = chern(model.sectors[1], 1, grid)
        half = (up.value - dn.value) // 2
        return InvariantResult(value=(-1) ** half, method="spin_chern", grid=grid,
                               gap_min=min(up.gap_min, dn.gap_min))
    if method == "pfaffian":
        return _z2_pfaffian(model, grid)
    raise ValueError(f"unknown z2 method {method!r}")


def _z2_pfaffian(model: BlochModel, N: int) -> InvariantResult:
    """Fu-Kane nu from Pf/sqrt(det) of the sewing matrix at the TRIMs.

    Gauge construction: the occupied frames on the line s2 = 0 are
    gauge-fixed by maximal-overlap alignment and twisted into an exactly
    periodic gauge (the Wilson-loop holonomy is distributed as V^(i/N));
    the line s2 = pi inherits its gauge by parallel transport of every
    column through the half-torus sheet, which pins the relative winding
    of the two line gauges -- the piece of data the invariant lives in.
    sqrt(det w) is branch-continued along each line between its TRIMs.
    """
    if model.time_reversal is None:
        raise ValueError("pfaffian method needs a declared time-reversal operator")
    u_t = model.time_reversal
    if np.abs(u_t @ u_t.conj() + np.eye(model.bands)).max() > 1e-12:
        raise ValueError("declared time reversal does not square to -1")
    if N % 2:
        N += 1
    n_occ = model.bands // 2

    gap_min = math.inf

    def eig(i, j):
        nonlocal gap_min
        s = np.array([2 * math.pi * i / N, 2 * math.pi * j / N])
        w, v = np.linalg.eigh(model.h(s))
        gap = w[n_occ] - w[n_occ - 1]
        if gap <= 1e-10:
            raise GaplessError(s, gap)
        gap_min = min(gap_min, gap)
        return v[:, :n_occ]

    def aligned(prev, raw):
        ov = raw.conj().T @ prev
        uu, _, vv = np.linalg.svd(ov)
        return raw @ (uu @ vv)

    half = N // 2

    # smooth, exactly periodic gauge on the line s2 = 0: aligned sweep,
    # then the Wilson-loop holonomy V distributed as V^(i/N)
    line0 = [eig(0, 0)]
    for i in range(1, N):
        line0.append(aligned(line0[-1], eig(i, 0)))
    holonomy = line0[0].conj().T @ aligned(line0[-1], line0[0])
    evals, evecs = np.linalg.eig(holonomy)
    root = evecs @ np.diag(np.exp(-1j * np.angle(evals) / N)) @ np.linalg.inv(evecs)
    twist = np.eye(n_occ, dtype=complex)
    for i in range(1, N):
        twist = twist @ root
        line0[i] = line0[i] @ twist

    # line s2 = pi inherits the gauge by column transport through the sheet
    lineh = []
    for i in range(N):
        fr = line0[i]
        for j in range(1, half + 1):
            fr = aligned(fr, eig(i, j))
        lineh.append(fr)

    def sewing(line, i):
        w = line[(-i) % N].conj().T @ u_t @ line[i].conj()
        return w

    def line_deltas(line):
        """(Pf/sqrt(det w)) at the line's two TRIMs, one continued branch."""
        deltas = []
        s = None
        prev = None
        for i in range(half + 1):
            det = np.linalg.det(sewing(line, i))
            s = cmath.sqrt(det) if s is None else s * cmath.sqrt(det / prev)
            prev = det
            if i in (0, half):
                w = sewing(line, i)
                asym = np.abs(w + w.T).max()
                if asym > 1e-8:
                    raise ValueError(
                        f"sewing matrix not antisymmetric at a TRIM: {asym:.2e}")
                w = (w - w.T) / 2
                pf = pfaffian(w)
                if abs(pf * pf - np.linalg.det(w)) > 1e-10 * max(1.0, abs(pf) ** 2):
                    raise AssertionError("Pf^2 != det at a TRIM")
                delta = pf / s
                if abs(abs(delta) - 1) > 1e-6:
                    raise AssertionError("|Pf/sqrt(det)| != 1 at a TRIM")
                deltas.append(delta)
        return deltas

    nu = 1.0
    for delta in line_deltas(line0) + line_deltas(lineh):
        nu *= delta.real if abs(delta.imag) < 0.5 else delta
    value = 1 if nu.real > 0 else -1
    if abs(nu.real - value) > 0.1:
        raise RoundingGuardError(f"nu = {nu} not close to +-1; increase grid")
    return InvariantResult(value=value, method="pfaffian", grid=N, gap_min=float(gap_min))


# ---------------------------------------------------------------------------
# Haldane phase-diagram sweep


def haldane_sweep(m_over_t2, phis, t1=1.0, t2=1.0, grid: int = 24,
                  margin: float = 0.05, threads: int = 1):
    """Sweep rows: (phi, M/t2, gap_min, chern, phase_label).

    Points within ``margin`` (in M/t2 units) of the gapless boundary are
    labelled 'excluded' and carry no Chern number.
    """
    tasks = []
    for phi in phis:
        for ratio in m_over_t2:
            tasks.append((phi, ratio))

    def run(task):
        phi, ratio = task
        M = ratio * t2
        boundary = 3 * SQRT3 * math.sin(phi)
        if min(abs(ratio - boundary), abs(ratio + boundary)) <= margin:
            return (phi, ratio, float("nan"), None, "excluded")
        model = haldane_model(t1=t1, t2=t2, phi=phi, M=M)
        try:
            res = chern(model, 1, grid)
        except GaplessError:
            return (phi, ratio, 0.0, None, "gapless")
        label = haldane_phase(t1=t1, t2=t2, phi=phi, M=M)
        return (phi, ratio, res.gap_min, res.value, label)

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run, tasks))
    return [run(t) for t in tasks]


def analytic_chern(phi: float, ratio: float) -> int:
    """(1/2)[sgn(M/t2 + 3 sqrt3 sin phi) - sgn(M/t2 - 3 sqrt3 sin phi)]."""
    return int((np.sign(ratio + 3 * SQRT3 * math.sin(phi))
                - np.sign(ratio - 3 * SQRT3 * math.sin(phi))) / 2)
