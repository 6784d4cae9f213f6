"""Explicit gamma-matrix representations and spinor bilinears.

``build_rep`` realises Cl(p,q) on complex matrices of size 2^floor(dim/2)
by the standard Pauli tensor-product recursion, extended to odd dimension
by appending the scaled product of the even-dimensional generators.  On
top of the representation live the Spin-invariant inner products
(psi, phi) = psi^(tj) A phi, one per admissible involution
J in {xi, xi*eta, xi^*, (xi*eta)^*}; the intertwiner A is recovered
numerically from Schur's lemma as the null space of the stacked adjoint
constraints, then normalised deterministically.

Fierz reconstruction convention: with the coefficients
(psi phibar)_p = (phi, e_{a_p..a_1}.psi) e^{a_1..a_p} (sum over ascending
index sets), the multivector sum of all grades acts on spinors as
``fierz_norm(rep)`` times the rank-one operator kappa -> (phi, kappa) psi,
where fierz_norm = rep_dim in even dimension and 2*rep_dim in odd.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    Multivector,
    Signature,
    all_blades,
    blade_indices,
    lower_blade_sign,
)

_PAULI1 = np.array([[0, 1], [1, 0]], dtype=complex)
_PAULI2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
_PAULI3 = np.array([[1, 0], [0, -1]], dtype=complex)

ADJOINT_KINDS = ("xi", "xi_eta", "xi_star", "xi_eta_star")


class AdjointFormUnavailable(ValueError):
    """No intertwiner exists for the requested involution in this dimension."""


def _euclidean_gammas(dim: int) -> list[np.ndarray]:
    """Anticommuting matrices squaring to +1, size 2^floor(dim/2)."""
    if dim == 1:
        return [np.array([[1.0 + 0j]])]
    gammas = [_PAULI1.copy(), _PAULI2.copy()]
    while len(gammas) + 2 <= dim:
        eye = np.eye(gammas[0].shape[0], dtype=complex)
        gammas = [np.kron(g, _PAULI3) for g in gammas]
        gammas.append(np.kron(eye, _PAULI1))
        gammas.append(np.kron(eye, _PAULI2))
    if len(gammas) < dim:
        # odd dim: append the scaled product of the even-dim generators
        prod = gammas[0]
        for g in gammas[1:]:
            prod = prod @ g
        k = len(gammas) // 2
        phase = 1.0 if k % 2 == 0 else 1j
        gammas.append(phase * prod)
    return gammas


@dataclass
class GammaRep:
    """Irreducible complex matrix representation of Cl(p,q)."""

    sig: Signature
    gammas: list  # gammas[a-1] represents the coframe generator e^a
    rep_dim: int
    _blade_cache: dict = field(default_factory=dict, repr=False)

    def blade_matrix(self, bits: int) -> np.ndarray:
        """Matrix of the canonical blade with the given bitmask."""
        cached = self._blade_cache.get(bits)
        if cached is not None:
            return cached
        mat = np.eye(self.rep_dim, dtype=complex)
        for a in blade_indices(bits):
            mat = mat @ self.gammas[a - 1]
        self._blade_cache[bits] = mat
        return mat

    def matrix(self, mv: Multivector) -> np.ndarray:
        """Matrix of a multivector under the Clifford action."""
        if mv.sig != self.sig:
            raise ValueError("signature mismatch")
        out = np.zeros((self.rep_dim, self.rep_dim), dtype=complex)
        for bits, c in mv.terms.items():
            out += complex(c) * self.blade_matrix(bits)
        return out

    def volume_matrix(self) -> np.ndarray:
        return self.blade_matrix((1 << self.sig.dim) - 1)

    def chirality(self) -> np.ndarray:
        """Chirality operator in even dimension: z or iz, squaring to +1."""
        if self.sig.dim % 2:
            raise ValueError("chirality requires even dimension")
        z = self.volume_matrix()
        z2 = z @ z
        if np.allclose(z2, np.eye(self.rep_dim), atol=1e-12):
            return z
        return 1j * z

    def chiral_projectors(self):
        chi = self.chirality()
        eye = np.eye(self.rep_dim, dtype=complex)
        return (eye + chi) / 2, (eye - chi) / 2


def build_rep(sig: Signature) -> GammaRep:
    """Deterministic gamma representation with gamma_a^2 = g^{aa}."""
    gammas = _euclidean_gammas(sig.dim)
    for a in range(1, sig.dim + 1):
        if sig.metric(a) < 0:
            gammas[a - 1] = 1j * gammas[a - 1]
    return GammaRep(sig=sig, gammas=gammas, rep_dim=gammas[0].shape[0])


def act(mv: Multivector, psi: np.ndarray, rep: GammaRep) -> np.ndarray:
    """Clifford action of a multivector on a spinor column."""
    if mv.sig != rep.sig:
        raise ValueError("signature mismatch")
    out = np.zeros_like(psi, dtype=complex)
    for bits, c in mv.terms.items():
        out += complex(c) * (rep.blade_matrix(bits) @ psi)
    return out


def involute_mv(mv: Multivector, kind: str) -> Multivector:
    """Apply one of the four J involutions to a multivector."""
    out = mv.involute_xi()
    if kind in ("xi_eta", "xi_eta_star"):
        out = out.involute_eta()
    if kind in ("xi_star", "xi_eta_star"):
        out = out.conj()
    return out


@dataclass
class AdjointForm:
    """Inner product (psi, phi) = psi^(tj) A phi with (psi, a.phi) = (a^J.psi, phi).

    ``j`` is the identity for the bilinear kinds (xi, xi_eta) and complex
    conjugation for the sesquilinear ones (xi_star, xi_eta_star).  ``sign``
    is the symmetry (psi, phi) = sign * (phi, psi)^j; for the sesquilinear
    kinds A is normalised Hermitian so sign is +1 by construction, for the
    bilinear kinds the sign is intrinsic.
    """

    kind: str
    rep: GammaRep
    A: np.ndarray
    sign: int

    @property
    def conjugating(self) -> bool:
        return self.kind in ("xi_star", "xi_eta_star")

    def dual(self, psi: np.ndarray) -> np.ndarray:
        """Row covector psibar with psibar(phi) = (psi, phi)."""
        if self.conjugating:
            return np.conj(psi) @ self.A
        return psi @ self.A

    def inner(self, psi: np.ndarray, phi: np.ndarray) -> complex:
        return complex(self.dual(psi) @ phi)


def _adjoint_sign(kind: str) -> int:
    """epsilon with A gamma_a = epsilon gamma_a^T A (or dagger for star kinds)."""
    return 1 if kind in ("xi", "xi_star") else -1


def build_adjoint_form(rep: GammaRep, kind: str, tol: float = 1e-10) -> AdjointForm:
    """Solve the stacked intertwiner constraints for A by null-space extraction.

    Raises AdjointFormUnavailable when the involution has no intertwiner in
    this dimension (in odd dimensions only one of xi / xi_eta survives, and
    similarly for the starred kinds).
    """
    if kind not in ADJOINT_KINDS:
        raise ValueError(f"unknown adjoint kind {kind!r}")
    n = rep.rep_dim
    eps = _adjoint_sign(kind)
    star = kind in ("xi_star", "xi_eta_star")
    eye = np.eye(n, dtype=complex)
    blocks = []
    for g in rep.gammas:
        gt = np.conj(g.T) if star else g.T
        # A g - eps g^T A = 0  as a linear map on vec(A)
        blocks.append(np.kron(g.T, eye) - eps * np.kron(eye, gt))
    m = np.vstack(blocks)
    _, s, vh = np.linalg.svd(m)
    null_dim = int(np.sum(s <= tol * s[0]))
    if null_dim == 0:
        raise AdjointFormUnavailable(f"no intertwiner for J = {kind} in dim {rep.sig.dim}")
    a_vec = vh[-1].conj()
    A = a_vec.reshape(n, n)

    # deterministic normalisation: unitary scale, then phase
    scale = np.sqrt(np.trace(A.conj().T @ A).real / n)
    A = A / scale
    if star:
        # rotate so that A is Hermitian (always possible, Schur)
        idx = np.unravel_index(np.argmax(np.abs(A)), A.shape)
        c = np.conj(A.T)[idx] / A[idx]
        A = A * np.exp(1j * np.angle(c) / 2)
        sign = 1
    else:
        idx = np.unravel_index(np.argmax(np.abs(A)), A.shape)
        sign = int(np.sign((A.T[idx] / A[idx]).real))
    flat = A.ravel()
    lead = flat[np.argmax(np.abs(flat) > tol)]
    phase = lead / abs(lead)
    A = A / phase
    if star and abs(np.angle(phase)) > 1e-12:
        # keep Hermiticity: only +-1 rescale allowed
        A = A * phase
        if A.ravel()[np.argmax(np.abs(A.ravel()) > tol)].real < 0:
            A = -A

    form = AdjointForm(kind=kind, rep=rep, A=A, sign=sign)
    _check_adjoint(form, tol=1e-9)
    return form


def _check_adjoint(form: AdjointForm, tol: float) -> None:
    rep = form.rep
    n = rep.rep_dim
    rng = np.random.default_rng(7)
    psi = rng.normal(size=n) + 1j * rng.normal(size=n)
    phi = rng.normal(size=n) + 1j * rng.normal(size=n)
    for a in range(1, rep.sig.dim + 1):
        e_a = Multivector.basis_vector(rep.sig, a)
        lhs = form.inner(psi, act(e_a, phi, rep))
        rhs = form.inner(act(involute_mv(e_a, form.kind), psi, rep), phi)
        if abs(lhs - rhs) > tol * max(1.0, abs(lhs)):
            raise AssertionError(f"adjoint relation violated for {form.kind}, a={a}")


def available_adjoint_forms(rep: GammaRep, kinds=ADJOINT_KINDS) -> dict:
    out = {}
    for kind in kinds:
        try:
            out[kind] = build_adjoint_form(rep, kind)
        except AdjointFormUnavailable:
            pass
    return out


def symmetric_bilinear_form(rep: GammaRep) -> AdjointForm | None:
    """The symmetric (sign +1) bilinear form with J = xi or xi_eta, if any.

    Existence depends on dim mod 8; when it exists, 2-form currents of any
    spinor with itself vanish identically.
    """
    for kind in ("xi", "xi_eta"):
        try:
            form = build_adjoint_form(rep, kind)
        except AdjointFormUnavailable:
            continue
        if form.sign == 1:
            return form
    return None


def bilinear(psi: np.ndarray, phi: np.ndarray, form: AdjointForm, p: int) -> Multivector:
    """Grade-p spinor bilinear (psi phibar)_p = (phi, e_{a_p..a_1}.psi) e^{a_1..a_p}."""
    rep = form.rep
    sig = rep.sig
    terms = {}
    for bits in all_blades(sig.dim, p):
        s = lower_blade_sign(sig, bits)           # lower the indices
        if (p // 2) % 2:
            s = -s                                # reverse the index order (xi sign)
        coeff = s * form.inner(phi, rep.blade_matrix(bits) @ psi)
        terms[bits] = coeff
    return Multivector(sig, terms)


def dirac_current(psi: np.ndarray, form: AdjointForm) -> Multivector:
    """The 1-form Dirac current (psi psibar)_1."""
    return bilinear(psi, psi, form, 1)


@dataclass
class BilinearSpectrum:
    """All grades of psi otimes phibar expressed as multivectors."""

    form: AdjointForm
    parts: list  # parts[p] = (psi phibar)_p

    def total(self) -> Multivector:
        out = Multivector.zero(self.form.rep.sig)
        for part in self.parts:
            out = out + part
        return out

    def reconstruct(self) -> np.ndarray:
        """Matrix of the total bilinear under the Clifford action."""
        return self.form.rep.matrix(self.total())


def fierz_norm(rep: GammaRep) -> int:
    """Reconstruction constant: act(sum of bilinears) = const * rank-one."""
    return rep.rep_dim * (2 if rep.sig.dim % 2 else 1)


def fierz(psi: np.ndarray, phi: np.ndarray, form: AdjointForm) -> BilinearSpectrum:
    parts = [bilinear(psi, phi, form, p) for p in range(form.rep.sig.dim + 1)]
    return BilinearSpectrum(form=form, parts=parts)


def rank_one(psi: np.ndarray, phi: np.ndarray, form: AdjointForm) -> np.ndarray:
    """Matrix of kappa -> (phi, kappa) psi."""
    return np.outer(psi, form.dual(phi))


def spinor_to_json(psi: np.ndarray, sig: Signature) -> dict:
    """Complex component array in the same JSON envelope style as multivectors."""
    return {
        "signature": {"pos": sig.pos, "neg": sig.neg},
        "components": [{"re": float(c.real), "im": float(c.imag)} for c in psi],
    }


def spinor_from_json(data: dict) -> tuple[np.ndarray, Signature]:
    sig = Signature(data["signature"]["pos"], data["signature"]["neg"])
    psi = np.array([complex(c["re"], c["im"]) for c in data["components"]])
    return psi, sig
