"""Closed-form spherically symmetric polarized dyons on punctured R^3.

For a constant taming J the radial Higgs field is psi(r) = J v / (2r) + v'
and the curvature two-form is -(1/2) v times the solid-angle form, so the
flux through any sphere around the puncture is -2 pi v.  The charge vector
v must lie in the integer lattice for the solution to come from an honest
principal connection; flux_quantization checks that through quadrature.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from . import reduction3d, symplattice, taming


class NonPositiveRadius(ValueError):
    pass


class QuadratureFailure(RuntimeError):
    pass


class InvalidCoupling(ValueError):
    pass


class SampleMismatch(ValueError):
    pass


class NonIntegerVWarning(UserWarning):
    pass


def solid_angle_form(x):
    """Pullback of the unit-sphere area form: sigma_ab = eps_abc x_c / r^3."""
    x = np.asarray(x, dtype=float)
    r = np.linalg.norm(x, axis=-1, keepdims=True)
    xs = x / r**3
    return np.einsum("abc,...c->...ab", reduction3d._EPS3, xs)


@dataclass
class DyonSolution:
    v: np.ndarray
    v_prime: np.ndarray
    J: object                 # (2n, 2n) array, or callable r -> (2n, 2n)
    type_ctx: tuple = None

    def __post_init__(self):
        self.v = np.asarray(self.v, dtype=float)
        self.v_prime = np.asarray(self.v_prime, dtype=float)
        if self.type_ctx is None:
            self.type_ctx = symplattice.delta(len(self.v) // 2)
        self.type_ctx = symplattice.validate_type(self.type_ctx)

    @property
    def rank2n(self):
        return len(self.v)

    def J_at(self, r):
        return self.J(r) if callable(self.J) else np.asarray(self.J, dtype=float)

    def dpsi_dr(self, r):
        if np.any(np.asarray(r) <= 0):
            raise NonPositiveRadius("radius must be positive")
        return -self.J_at(r) @ self.v / (2.0 * r**2)

    def psi(self, r):
        """Higgs profile; closed form for constant J, quadrature otherwise."""
        if np.any(np.asarray(r) <= 0):
            raise NonPositiveRadius("radius must be positive")
        if not callable(self.J):
            return self.J_at(r) @ self.v / (2.0 * r) + self.v_prime
        # psi(r) = v' - int_1^r J(s) v / (2 s^2) ds, fixing psi(1) = v'
        out = np.array([quad(lambda s, i=i: (self.J(s) @ self.v)[i] / (2 * s**2),
                             1.0, r, epsrel=1e-10, epsabs=1e-13)[0]
                        for i in range(self.rank2n)])
        return self.v_prime - out

    def curvature_coeff(self):
        """Constant vector c with V = c * (solid-angle form)."""
        return -0.5 * self.v

    def V_at(self, x):
        """Curvature two-form at Cartesian points; shape (..., 2n, 3, 3)."""
        sigma = solid_angle_form(x)
        return np.einsum("j,...ab->...jab", self.curvature_coeff(), sigma)

    def sample_pair(self, grid):
        """Sample (psi, V) on a Cartesian grid as a BogomolnyPair."""
        X = grid.points()
        r = np.linalg.norm(X, axis=-1)
        if np.any(r <= 0):
            raise NonPositiveRadius("grid touches the puncture")
        if callable(self.J):
            psi = np.stack([self.psi(val) for val in r.ravel()]).reshape(r.shape + (self.rank2n,))
        else:
            Jv = self.J_at(1.0) @ self.v
            psi = Jv / (2.0 * r[..., None]) + self.v_prime
        return reduction3d.BogomolnyPair(psi=psi, V=self.V_at(X))


def dyon_construct(J, v, v_prime, type_ctx=None, tol=1e-9):
    """Build the radial dyon for a (constant or radial) taming J.

    Non-integer v is allowed -- the construction solves the equations for
    any real v -- but a warning flags that flux quantization will fail.
    """
    v = np.asarray(v, dtype=float)
    v_prime = np.asarray(v_prime, dtype=float)
    if v.shape != v_prime.shape or v.ndim != 1 or len(v) % 2:
        raise ValueError("v and v' must be equal-length even-dimensional vectors")
    J0 = J(1.0) if callable(J) else J
    ok, report = taming.is_taming(J0, tol=max(tol, 1e-9))
    if not ok:
        raise taming.NotATaming(f"J fails the taming invariants: {report}")
    if np.max(np.abs(v - np.round(v))) > 1e-8:
        warnings.warn("charge vector v is not integral; the solution exists "
                      "but fails flux quantization", NonIntegerVWarning,
                      stacklevel=2)
    return DyonSolution(v=v, v_prime=v_prime, J=J, type_ctx=type_ctx)


def dyon_verify(sol, radii, fd_step=1e-5):
    """Check V = -r^2 J(r) psi'(r) sigma at each radius, plus the
    integrability derivative d/dr (r^2 J psi') by central differences.
    """
    radii = np.asarray(radii, dtype=float)
    if np.any(radii <= 0):
        raise NonPositiveRadius("radii must be positive")
    c = sol.curvature_coeff()
    eq_res = 0.0
    integ_res = 0.0
    for r in radii:
        rhs = -r**2 * (sol.J_at(r) @ sol.dpsi_dr(r))
        eq_res = max(eq_res, float(np.max(np.abs(c - rhs))))
        hh = fd_step * r
        f = lambda s: s**2 * (sol.J_at(s) @ sol.dpsi_dr(s))
        deriv = (f(r + hh) - f(r - hh)) / (2 * hh)
        integ_res = max(integ_res, float(np.max(np.abs(deriv))))
    return {"eq_residual": eq_res, "integrability_residual": integ_res}


@dataclass
class FluxReport:
    flux: np.ndarray
    normalized: np.ndarray
    lattice_member: bool
    realized_sign: int
    chern: np.ndarray = None


def flux_quantization(sol, n_polar=32, n_azimuth=64, tol=1e-8):
    """Quadrature of the curvature over the unit sphere.

    Gauss-Legendre nodes in cos(polar) x uniform azimuth; the analytic
    value is -2 pi v.  Membership is tested for both signs of flux / 2 pi
    (the orientation of the sphere is a convention) against Z^{2n}.
    """
    u, wu = np.polynomial.legendre.leggauss(n_polar)
    phi = 2 * np.pi * np.arange(n_azimuth) / n_azimuth
    wphi = 2 * np.pi / n_azimuth
    U, PHI = np.meshgrid(u, phi, indexing="ij")
    s = np.sqrt(np.maximum(1 - U**2, 0.0))
    pts = np.stack([s * np.cos(PHI), s * np.sin(PHI), U], axis=-1)
    # tangents of the (phi, u) parametrization; this ordering gives the
    # outward orientation with integral +4 pi for the solid-angle form
    t_phi = np.stack([-s * np.sin(PHI), s * np.cos(PHI), np.zeros_like(U)], axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        du = np.stack([-U / s * np.cos(PHI), -U / s * np.sin(PHI),
                       np.ones_like(U)], axis=-1)
    du = np.nan_to_num(du)
    V = sol.V_at(pts)  # (..., 2n, 3, 3)
    integrand = np.einsum("...jab,...a,...b->...j", V, t_phi, du)
    flux = np.einsum("uvj,u->j", integrand, wu) * wphi
    if not np.all(np.isfinite(flux)):
        raise QuadratureFailure("non-finite quadrature result")
    normalized = flux / (2 * np.pi)
    member = bool(np.max(np.abs(normalized - np.round(normalized))) < tol)
    if np.max(np.abs(normalized + sol.v)) < tol:
        realized = -1
    elif np.max(np.abs(normalized - sol.v)) < tol:
        realized = 1
    else:
        realized = 0
    return FluxReport(flux=flux, normalized=normalized, lattice_member=member,
                      realized_sign=realized, chern=0.5 * sol.v)


def default_far_grid(spacing=0.01, nodes=9, offset=2.0):
    """Small Euclidean grid well away from the puncture at the origin."""
    return reduction3d.Grid3(shape=(nodes,) * 3, spacing=(spacing,) * 3,
                             origin=(offset,) * 3)


def electrodynamics_dyon(theta, g_sq, q_e, q_m, type_t=1, grid=None):
    """The n = 1 dyon of theta-coupled electrodynamics.

    Builds the charge-(q_e, q_m) radial solution for the constant
    electrodynamics taming, extracts the scalar potentials from the Higgs
    field via psi = (-Phi, Upsilon), and verifies the static Maxwell system
    and the potential form of B on a sample grid.
    """
    if g_sq <= 0:
        raise InvalidCoupling("g^2 must be positive")
    J = taming.electrodynamics_taming(theta, g_sq)
    v = np.array([float(q_e), float(q_m)])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonIntegerVWarning)
        sol = dyon_construct(J, v, np.zeros(2), type_ctx=(int(type_t),))
    if grid is None:
        grid = default_far_grid()

    X = grid.points()
    r = np.linalg.norm(X, axis=-1)
    rhat = X / r[..., None]
    Jv = J @ v
    psi = Jv / (2.0 * r[..., None])
    Phi = -psi[..., 0]
    Upsilon = psi[..., 1]
    dpsi = -Jv / (2.0 * r[..., None] ** 2)  # radial derivative, per component
    E_vec = dpsi[..., 0:1] * rhat            # -grad Phi = grad psi_1
    B_vec = -(g_sq / (4 * np.pi)) * (dpsi[..., 1:2]
                                     + (theta / (2 * np.pi)) * dpsi[..., 0:1]) * rhat

    period = taming.electrodynamics_period(theta, g_sq)
    h = grid.metric_field()
    E_form = np.einsum("...ab,...b->...a", h, E_vec)[..., None, :]
    B_form = reduction3d.star_1form(h, np.einsum("...ab,...b->...a", h, B_vec))[..., None, :, :]
    maxwell = reduction3d.em_static_residual(grid, period.R, period.I,
                                             E_form, B_form,
                                             Phi[..., None], Upsilon[..., None])
    # displayed consequence of the potential equations
    pot_gap = float(np.max(np.abs(
        B_vec + (g_sq / (4 * np.pi))
        * reduction3d.sharp(h, reduction3d.grad_nodes(
            grid, Upsilon - (theta / (2 * np.pi)) * Phi)))[1:-1, 1:-1, 1:-1]))
    return {
        "solution": sol,
        "grid": grid,
        "Phi": Phi,
        "Upsilon": Upsilon,
        "E_vec": E_vec,
        "B_vec": B_vec,
        "maxwell": maxwell,
        "potential_gap": pot_gap,
    }


def h_theta_fiber_check(grid, E_vec, B_vec, Phi, Upsilon, theta, g_sq, tol=1e-5):
    """Fiber characterization of the electrodynamics correspondence.

    True iff (E, B) passes the static Maxwell residuals and grad psi with
    psi = (-Phi, Upsilon) matches (E, -(theta/2pi) E - (4pi/g^2) B).
    """
    if g_sq <= 0:
        raise InvalidCoupling("g^2 must be positive")
    E_vec = np.asarray(E_vec, dtype=float)
    B_vec = np.asarray(B_vec, dtype=float)
    Phi = np.asarray(Phi, dtype=float)
    Upsilon = np.asarray(Upsilon, dtype=float)
    if E_vec.shape != B_vec.shape or Phi.shape != Upsilon.shape \
            or E_vec.shape[:3] != Phi.shape[:3] or E_vec.shape[:3] != grid.shape:
        raise SampleMismatch("fields must share the grid sample set")

    h = grid.metric_field()
    grad_phi = reduction3d.sharp(h, reduction3d.grad_nodes(grid, Phi))
    grad_ups = reduction3d.sharp(h, reduction3d.grad_nodes(grid, Upsilon))
    res_e = grad_phi + E_vec                     # grad(-Phi) = E
    res_u = grad_ups + (theta / (2 * np.pi)) * E_vec + (4 * np.pi / g_sq) * B_vec
    div_e = reduction3d.divergence(grid, E_vec)
    div_b = reduction3d.divergence(grid, B_vec)
    report = {
        "electric_gradient": reduction3d._interior_max(res_e),
        "magnetoelectric_gradient": reduction3d._interior_max(res_u),
        "div_E": reduction3d._interior_max(div_e),
        "div_B": reduction3d._interior_max(div_b),
    }
    ok = all(val < tol for val in report.values())
    return ok, report
