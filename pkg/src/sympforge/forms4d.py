"""Pointwise exterior algebra on 4d Lorentzian vector spaces.

Coordinates are ordered (t, x, y, z); the Levi-Civita symbol is normalized
by eps_{0123} = +1 and multiplied by the orientation flag.  On two-forms the
Lorentzian Hodge star squares to minus the identity, so the polarized
operator (star tensor J) squares to plus the identity and splits
vector-valued two-forms into self-dual and anti-self-dual parts.
"""

from dataclasses import dataclass

import numpy as np

from . import taming

ALG_TOL = 1e-10
COMPOSED_TOL = 1e-9


class WrongSignature(ValueError):
    pass


class RankMismatch(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class NotSymplectic(ValueError):
    pass


def _levi_civita4():
    eps = np.zeros((4, 4, 4, 4))
    from itertools import permutations

    def parity(p):
        p = list(p)
        sign = 1
        for i in range(len(p)):
            while p[i] != i:
                j = p[i]
                p[i], p[j] = p[j], p[i]
                sign = -sign
        return sign

    for p in permutations(range(4)):
        eps[p] = parity(p)
    return eps


_EPS4 = _levi_civita4()


@dataclass
class LorentzPoint:
    metric: np.ndarray
    orientation: int = 1

    def __post_init__(self):
        self.metric = np.asarray(self.metric, dtype=float)
        if self.metric.shape != (4, 4):
            raise ValueError("metric must be 4x4")
        if not np.allclose(self.metric, self.metric.T, atol=1e-10):
            raise ValueError("metric must be symmetric")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        eig = np.linalg.eigvalsh(self.metric)
        if np.sum(eig < 0) != 1 or np.sum(eig > 0) != 3:
            raise WrongSignature("metric must have mostly-plus signature (3,1)")

    @property
    def inverse_metric(self):
        return np.linalg.inv(self.metric)


def as_two_form(coeffs):
    """Validate a vector-valued two-form: shape (k, 4, 4), antisymmetric."""
    V = np.asarray(coeffs, dtype=float)
    if V.ndim == 2:
        V = V[None, :, :]
    if V.shape[-2:] != (4, 4):
        raise ValueError("two-form coefficients must be k x 4 x 4")
    if not np.allclose(V, -np.swapaxes(V, -1, -2), atol=1e-12):
        raise ValueError("coefficients must be antisymmetric")
    return V


def hodge_star2(p, F):
    """Componentwise Hodge star on two-forms:

        (*F)_ab = (1/2) s sqrt(|det g|) eps_abcd g^ce g^df F_ef.
    """
    F = as_two_form(F)
    ginv = p.inverse_metric
    vol = p.orientation * np.sqrt(abs(np.linalg.det(p.metric)))
    return 0.5 * vol * np.einsum("abcd,ce,df,kef->kab", _EPS4, ginv, ginv, F)


def polarized_star(p, J, V):
    """Polarized Hodge operator: J on the component index, star on forms."""
    V = as_two_form(V)
    J = np.asarray(J, dtype=float)
    if J.shape[0] != V.shape[0]:
        raise RankMismatch(f"J is {J.shape[0]}-dim but form has rank {V.shape[0]}")
    return np.einsum("jk,kab->jab", J, hodge_star2(p, V))


def selfdual_project(p, J, V):
    """Split V into (self-dual, anti-self-dual) halves of the polarized star."""
    V = as_two_form(V)
    sV = polarized_star(p, J, V)
    return 0.5 * (V + sV), 0.5 * (V - sV)


def g_map(p, N, F):
    """Magnetoelectric partner of a field strength: -R F - I (*F)."""
    F = as_two_form(F)
    if not isinstance(N, taming.PeriodMatrix):
        N = taming.PeriodMatrix(*N)
    if N.n != F.shape[0]:
        raise DimensionMismatch(f"period matrix rank {N.n} vs form rank {F.shape[0]}")
    sF = hodge_star2(p, F)
    return -np.einsum("ij,jab->iab", N.R, F) - np.einsum("ij,jab->iab", N.I, sF)


def check_polarized_selfdual(p, N, V, tol=COMPOSED_TOL):
    """Test *V = -J V with J the taming of N; extract the upper half.

    Returns (ok, F, report).  When ok, F is the first n components and the
    last n components agree with g_map(p, N, F) within tol; the report also
    carries the equivalent global-form residual of (star_{g,J} V - V).
    """
    V = as_two_form(V)
    if not isinstance(N, taming.PeriodMatrix):
        N = taming.PeriodMatrix(*N)
    if V.shape[0] != 2 * N.n:
        raise DimensionMismatch("form rank must be twice the period-matrix rank")
    J = taming.theta_forward(N)
    sV = hodge_star2(p, V)
    JV = np.einsum("jk,kab->jab", J, V)
    residual = float(np.max(np.abs(sV + JV)))
    global_residual = float(np.max(np.abs(polarized_star(p, J, V) - V)))
    scale = max(1.0, float(np.max(np.abs(V))))
    ok = residual < tol * scale
    report = {"residual": residual, "global_residual": global_residual}
    F = V[: N.n]
    if ok:
        lower_gap = float(np.max(np.abs(V[N.n:] - g_map(p, N, F))))
        report["lower_gap"] = lower_gap
        assert lower_gap < 10 * tol * scale
    return ok, F, report


def duality_act(gamma, V, tol=ALG_TOL):
    """Linear duality action on the component index of a two-form."""
    V = as_two_form(V)
    gamma = np.asarray(gamma, dtype=float)
    if gamma.shape[0] != V.shape[0]:
        raise RankMismatch("gamma size does not match form rank")
    if not taming.is_symplectic(gamma, tol=max(tol, 1e-10)):
        raise NotSymplectic("duality transformations must be symplectic")
    return np.einsum("jk,kab->jab", gamma, V)


def random_metric(rng, max_cond=20.0):
    """Random well-conditioned signature-(3,1) metric."""
    while True:
        A = rng.standard_normal((4, 4))
        if np.linalg.cond(A) <= max_cond:
            break
    eta = np.diag([-1.0, 1.0, 1.0, 1.0])
    return LorentzPoint(A.T @ eta @ A, orientation=1 if rng.random() < 0.5 else -1)


def random_two_form(rng, rank):
    A = rng.standard_normal((rank, 4, 4))
    return A - np.swapaxes(A, -1, -2)
