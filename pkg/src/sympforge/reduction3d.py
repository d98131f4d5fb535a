"""Static timelike reduction: 3d Hodge calculus, the polarized Bogomolny
residual on Cartesian grids, and theta-coupled electromagnetostatics.

A static product metric -dt^2 + h splits a 4d two-form into a spatial
1-form part (the dt-wedge factor) and a spatial 2-form part; the 4d Hodge
star then factors through the 3d star of h.  Solving is done elsewhere --
this module only evaluates residuals, with second-order central
differences and the one-cell boundary layer excluded from aggregation.
"""

from dataclasses import dataclass

import numpy as np

from . import forms4d

EQ_TOL = 1e-10


class NotStaticMetric(ValueError):
    pass


class GridTooSmall(ValueError):
    pass


class RankMismatch(ValueError):
    pass


def _levi_civita3():
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1
    return eps


_EPS3 = _levi_civita3()


@dataclass
class Grid3:
    shape: tuple
    spacing: tuple
    origin: tuple = (0.0, 0.0, 0.0)
    metric: np.ndarray = None  # (3,3) constant or per-node (*shape, 3, 3)

    def __post_init__(self):
        self.shape = tuple(int(s) for s in self.shape)
        self.spacing = tuple(float(h) for h in self.spacing)
        self.origin = tuple(float(x) for x in self.origin)
        if len(self.shape) != 3 or len(self.spacing) != 3:
            raise ValueError("shape and spacing must have three entries")
        if min(self.shape) < 3:
            raise GridTooSmall("need at least 3 nodes per axis for central differences")
        if self.metric is None:
            self.metric = np.eye(3)
        self.metric = np.asarray(self.metric, dtype=float)
        if self.metric.shape not in ((3, 3), self.shape + (3, 3)):
            raise ValueError("metric must be 3x3 or per-node")
        probe = self.metric if self.metric.shape == (3, 3) else self.metric.reshape(-1, 3, 3)[0]
        if np.any(np.linalg.eigvalsh(probe) <= 0):
            raise ValueError("metric must be positive-definite")

    def axes(self):
        return [self.origin[k] + self.spacing[k] * np.arange(self.shape[k])
                for k in range(3)]

    def points(self):
        """Coordinate arrays of shape (*shape, 3)."""
        X = np.meshgrid(*self.axes(), indexing="ij")
        return np.stack(X, axis=-1)

    def metric_field(self):
        if self.metric.shape == (3, 3):
            return np.broadcast_to(self.metric, self.shape + (3, 3))
        return self.metric


# ---------------------------------------------------------------------------
# pointwise 3d Hodge operators (broadcast over leading axes)

def star_1form(h, E):
    """(*E)_ab = sqrt(det h) eps_abc h^cd E_d, batched over leading axes."""
    h = np.asarray(h, dtype=float)
    hinv = np.linalg.inv(h)
    vol = np.sqrt(np.linalg.det(h))
    return np.einsum("...,abc,...cd,...d->...ab", vol, _EPS3, hinv, E)


def star_2form(h, B):
    """(*B)_a = (1/2) sqrt(det h) eps_abc h^bd h^ce B_de."""
    h = np.asarray(h, dtype=float)
    hinv = np.linalg.inv(h)
    vol = np.sqrt(np.linalg.det(h))
    return 0.5 * np.einsum("...,abc,...bd,...ce,...de->...a", vol, _EPS3, hinv, hinv, B)


def sharp(h, E):
    """Index raising of a 1-form."""
    return np.einsum("...ab,...b->...a", np.linalg.inv(np.asarray(h, dtype=float)), E)


# ---------------------------------------------------------------------------
# static 4d decomposition

def _check_static(p):
    g = p.metric
    if abs(g[0, 0] + 1.0) > 1e-12 or np.max(np.abs(g[0, 1:])) > 1e-12:
        raise NotStaticMetric("metric must be -dt^2 + h in coordinates (t,x,y,z)")
    return g[1:, 1:]


def decompose_form(omega):
    """Split a 4d two-form into (top: spatial 1-form, perp: spatial 2-form).

    Convention: top = contraction with d/dt, so omega = dt ^ top + perp
    reassembles exactly.
    """
    omega = forms4d.as_two_form(omega)
    top = omega[..., 0, 1:]
    perp = omega[..., 1:, 1:]
    return top, perp


def reassemble_form(top, perp):
    top = np.asarray(top, dtype=float)
    perp = np.asarray(perp, dtype=float)
    omega = np.zeros(top.shape[:-1] + (4, 4))
    omega[..., 0, 1:] = top
    omega[..., 1:, 0] = -top
    omega[..., 1:, 1:] = perp
    return omega


def star_decompose_check(p, omega):
    """Residual of the static factorization of the 4d Hodge star:

        (*_g w)_top = *_h w_perp,   (*_g w)_perp = - *_h w_top,

    compared against the direct 4d epsilon-tensor computation.
    """
    h = _check_static(p)
    omega = forms4d.as_two_form(omega)
    lhs_top, lhs_perp = decompose_form(forms4d.hodge_star2(p, omega))
    top, perp = decompose_form(omega)
    s = p.orientation
    rhs_top = s * star_2form(h, perp)
    rhs_perp = -s * star_1form(h, top)
    return float(max(np.max(np.abs(lhs_top - rhs_top)),
                     np.max(np.abs(lhs_perp - rhs_perp))))


# ---------------------------------------------------------------------------
# grid fields

@dataclass
class BogomolnyPair:
    psi: np.ndarray  # (*shape, 2n)
    V: np.ndarray    # (*shape, 2n, 3, 3) spatial-index antisymmetric

    def __post_init__(self):
        self.psi = np.asarray(self.psi, dtype=float)
        self.V = np.asarray(self.V, dtype=float)
        if self.V.shape[-2:] != (3, 3):
            raise ValueError("V must have trailing 3x3 axes")
        if not np.allclose(self.V, -np.swapaxes(self.V, -1, -2), atol=1e-12):
            raise ValueError("V must be antisymmetric in its form indices")
        if self.psi.shape != self.V.shape[:-2]:
            raise ValueError("psi and V node/rank shapes disagree")


def grad_nodes(grid, field):
    """Central-difference coordinate gradient over the grid axes.

    field has shape (*grid.shape, ...); returns (*grid.shape, ..., 3).
    """
    parts = [np.gradient(field, grid.spacing[k], axis=k, edge_order=2)
             for k in range(3)]
    return np.stack(parts, axis=-1)


def _interior_max(x):
    sl = (slice(1, -1),) * 3
    return float(np.max(np.abs(x[sl]))) if x[sl].size else float("nan")


def bogomolny_residual(grid, J, pair):
    """Residuals of the polarized Bogomolny equation star_{h,J} V = d psi
    and of the closure condition d V = 0, aggregated over interior nodes.
    """
    if not isinstance(pair, BogomolnyPair):
        pair = BogomolnyPair(*pair)
    J = np.asarray(J, dtype=float)
    two_n = pair.psi.shape[-1]
    if J.shape[-2:] != (two_n, two_n):
        raise RankMismatch("taming size does not match field rank")
    h = grid.metric_field()[..., None, :, :]  # broadcast over the 2n axis
    star_v = star_2form(h, pair.V)            # (*shape, 2n, 3)
    if J.ndim == 2:
        lhs = np.einsum("jk,...ka->...ja", J, star_v)
    else:
        lhs = np.einsum("...jk,...ka->...ja", J, star_v)
    dpsi = grad_nodes(grid, pair.psi)
    eq_field = lhs - dpsi
    # discrete exterior derivative of the 2-form: one 3-form component
    dV = (np.gradient(pair.V[..., 1, 2], grid.spacing[0], axis=0, edge_order=2)
          + np.gradient(pair.V[..., 2, 0], grid.spacing[1], axis=1, edge_order=2)
          + np.gradient(pair.V[..., 0, 1], grid.spacing[2], axis=2, edge_order=2))
    return {
        "eq_residual": _interior_max(eq_field),
        "closure_residual": _interior_max(dV),
        "eq_field": eq_field,
        "closure_field": dV,
    }


def lift_to_4d(pair, grid, J):
    """Assemble the time-invariant 4d field dt ^ d psi + V and evaluate the
    4d polarized self-duality residual star_g Vhat + J Vhat pointwise.
    """
    if not isinstance(pair, BogomolnyPair):
        pair = BogomolnyPair(*pair)
    J = np.asarray(J, dtype=float)
    dpsi = grad_nodes(grid, pair.psi)
    vhat = reassemble_form(dpsi, pair.V)      # (*shape, 2n, 4, 4)
    h = grid.metric_field()
    ginv = np.zeros(grid.shape + (4, 4))
    ginv[..., 0, 0] = -1.0
    ginv[..., 1:, 1:] = np.linalg.inv(h)
    vol = np.sqrt(np.linalg.det(h))           # sqrt|det g| for g = -dt^2 + h
    star_vhat = 0.5 * np.einsum("...,abcd,...ce,...df,...kef->...kab",
                                vol, forms4d._EPS4, ginv, ginv, vhat)
    resid = star_vhat + np.einsum("jk,...kab->...jab", J, vhat)
    return {"field": vhat, "residual": _interior_max(resid), "residual_field": resid}


def divergence(grid, X):
    """Metric divergence (1/sqrt h) d_i (sqrt h X^i) of a vector field.

    X has shape (*shape, ..., 3) with contravariant last index.
    """
    h = grid.metric_field()
    vol = np.sqrt(np.linalg.det(h))
    volX = vol[(...,) + (None,) * (X.ndim - 4)] * np.moveaxis(X, -1, 0)
    out = sum(np.gradient(volX[k], grid.spacing[k], axis=k, edge_order=2)
              for k in range(3))
    return out / vol[(...,) + (None,) * (X.ndim - 4)]


def em_static_residual(grid, R, I, E, B, Phi, Upsilon):
    """Residual report for the four static equations:

        E = -grad Phi,
        I Bvec + R Evec = -grad Upsilon,
        div Bvec = 0,
        div (R Bvec + I Evec) = 0,

    with Bvec the metric proxy of the 2-form B and all gradients central.
    """
    R = np.atleast_2d(np.asarray(R, dtype=float))
    I = np.atleast_2d(np.asarray(I, dtype=float))
    E = np.asarray(E, dtype=float)
    B = np.asarray(B, dtype=float)
    Phi = np.asarray(Phi, dtype=float)
    Upsilon = np.asarray(Upsilon, dtype=float)
    if Phi.ndim == 3:
        Phi = Phi[..., None]
        Upsilon = Upsilon[..., None]
    if E.ndim == 4:
        E = E[..., None, :]
        B = B[..., None, :, :]

    h = grid.metric_field()[..., None, :, :]
    Evec = sharp(h, E)
    Bvec = sharp(h, star_2form(h, B))
    grad_phi_vec = sharp(h, grad_nodes(grid, Phi))
    grad_ups_vec = sharp(h, grad_nodes(grid, Upsilon))

    res1 = Evec + grad_phi_vec
    res2 = (np.einsum("jk,...ka->...ja", I, Bvec)
            + np.einsum("jk,...ka->...ja", R, Evec) + grad_ups_vec)
    res3 = divergence(grid, Bvec)
    res4 = divergence(grid, np.einsum("jk,...ka->...ja", R, Bvec)
                      + np.einsum("jk,...ka->...ja", I, Evec))
    return {
        "electric_potential": _interior_max(res1),
        "magnetic_potential": _interior_max(res2),
        "magnetic_gauss": _interior_max(res3),
        "dual_gauss": _interior_max(res4),
    }
