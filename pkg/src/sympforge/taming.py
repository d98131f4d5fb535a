"""Tamings of the standard symplectic form and their period matrices.

A taming J squares to minus the identity, is compatible with the symplectic
form, and makes omega(J., .) positive-definite.  Every taming of the
standard form comes from a unique period matrix N = R + iI with I
positive-definite, via the block formula implemented in theta_forward; the
two directions are exact inverses of each other up to floating point.
"""

from dataclasses import dataclass

import numpy as np

ALG_TOL = 1e-10    # single algebraic identities on well-conditioned input
ROUNDTRIP_TOL = 1e-9


class SingularImaginaryPart(ValueError):
    pass


class SingularBlock(ValueError):
    pass


class NotATaming(ValueError):
    pass


class NotSymplectic(ValueError):
    pass


def std_omega(n):
    """Standard symplectic Gram matrix as a float array."""
    W = np.zeros((2 * n, 2 * n))
    W[:n, n:] = np.eye(n)
    W[n:, :n] = -np.eye(n)
    return W


@dataclass
class PeriodMatrix:
    R: np.ndarray
    I: np.ndarray

    def __post_init__(self):
        self.R = np.asarray(self.R, dtype=float)
        self.I = np.asarray(self.I, dtype=float)
        if self.R.shape != self.I.shape or self.R.ndim != 2:
            raise ValueError("R and I must be square matrices of equal shape")
        if not np.allclose(self.R, self.R.T, atol=1e-12):
            raise ValueError("R must be symmetric")
        if not np.allclose(self.I, self.I.T, atol=1e-12):
            raise ValueError("I must be symmetric")
        try:
            np.linalg.cholesky(self.I)
        except np.linalg.LinAlgError:
            raise ValueError("I must be positive-definite") from None

    @property
    def n(self):
        return self.R.shape[0]


def _spd(M, tol=ALG_TOL):
    M = 0.5 * (M + M.T)
    try:
        np.linalg.cholesky(M + tol * np.eye(len(M)))
        return True
    except np.linalg.LinAlgError:
        return False


def is_taming(J, gram=None, tol=ALG_TOL):
    """Check the three taming invariants; returns (ok, report)."""
    J = np.asarray(J, dtype=float)
    if J.ndim != 2 or J.shape[0] != J.shape[1] or J.shape[0] % 2:
        raise ValueError("J must be square of even dimension")
    n = J.shape[0] // 2
    W = std_omega(n) if gram is None else np.asarray(gram, dtype=float)
    report = {}
    report["square_residual"] = float(np.max(np.abs(J @ J + np.eye(2 * n))))
    report["compat_residual"] = float(np.max(np.abs(J.T @ W @ J - W)))
    Q = J.T @ W
    report["q_symmetric_residual"] = float(np.max(np.abs(Q - Q.T)))
    report["q_positive"] = _spd(Q, tol)
    ok = (report["square_residual"] < tol
          and report["compat_residual"] < tol
          and report["q_symmetric_residual"] < 10 * tol
          and report["q_positive"])
    return ok, report


def theta_forward(N):
    """Taming of a period matrix: the block formula

        J = [[I^-1 R, I^-1], [-I - R I^-1 R, -R I^-1]].
    """
    if not isinstance(N, PeriodMatrix):
        N = PeriodMatrix(*N)
    R, I = N.R, N.I
    try:
        Iinv = np.linalg.inv(I)
    except np.linalg.LinAlgError:
        raise SingularImaginaryPart("imaginary part is singular") from None
    top = np.hstack([Iinv @ R, Iinv])
    bot = np.hstack([-I - R @ Iinv @ R, -R @ Iinv])
    return np.vstack([top, bot])


def theta_inverse(J, tol=ALG_TOL):
    """Period matrix of a taming: I = J12^-1, R = J12^-1 J11."""
    J = np.asarray(J, dtype=float)
    ok, report = is_taming(J, tol=tol)
    if not ok:
        raise NotATaming(f"taming invariants fail: {report}")
    n = J.shape[0] // 2
    J11, J12 = J[:n, :n], J[:n, n:]
    try:
        I = np.linalg.inv(J12)
    except np.linalg.LinAlgError:
        raise SingularBlock("upper-right block is singular") from None
    R = I @ J11
    # symmetrize away roundoff before validation
    return PeriodMatrix(0.5 * (R + R.T), 0.5 * (I + I.T))


def is_symplectic(g, tol=ALG_TOL, gram=None):
    g = np.asarray(g, dtype=float)
    n = g.shape[0] // 2
    W = std_omega(n) if gram is None else np.asarray(gram, dtype=float)
    return np.max(np.abs(g.T @ W @ g - W)) < tol


def taming_conjugate(J, g, tol=ALG_TOL):
    """Duality conjugation g J g^-1; preserves the taming property."""
    J = np.asarray(J, dtype=float)
    g = np.asarray(g, dtype=float)
    if not is_symplectic(g, tol=max(tol, 1e-10)):
        raise NotSymplectic("conjugator is not symplectic")
    return g @ J @ np.linalg.inv(g)


def electrodynamics_taming(theta, g_sq):
    """Constant taming of classical electrodynamics with theta angle.

    Corresponds to the period matrix R = theta / 2 pi, I = 4 pi / g^2.
    """
    if g_sq <= 0:
        raise ValueError("coupling g^2 must be positive")
    pi = np.pi
    return np.array([
        [g_sq * theta / (8 * pi**2), g_sq / (4 * pi)],
        [-4 * pi / g_sq - g_sq * theta**2 / (16 * pi**3),
         -g_sq * theta / (8 * pi**2)],
    ])


def electrodynamics_period(theta, g_sq):
    if g_sq <= 0:
        raise ValueError("coupling g^2 must be positive")
    return PeriodMatrix(np.array([[theta / (2 * np.pi)]]),
                        np.array([[4 * np.pi / g_sq]]))


def random_period_matrix(n, rng, spread=1.0):
    """Well-conditioned random period matrix for property sweeps."""
    A = rng.standard_normal((n, n))
    R = spread * 0.5 * (A + A.T)
    B = rng.standard_normal((n, n)) * 0.3
    I = np.eye(n) + B @ B.T
    return PeriodMatrix(R, I)


def random_symplectic(n, rng, scale=0.4):
    """Random element of Sp(2n, R) near the identity (exp of a Lie algebra
    element), kept well-conditioned for tolerance-based tests."""
    from scipy.linalg import expm

    W = std_omega(n)
    S = rng.standard_normal((2 * n, 2 * n))
    S = 0.5 * (S + S.T) * scale
    return expm(W @ S)
