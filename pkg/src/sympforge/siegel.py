"""Arithmetic of the modified Siegel modular groups and the affine
symplectic torus automorphism group.

Group elements are exact integer matrices preserving the block Gram matrix
of a given type; the affine group pairs such a rotation with a torus
translation stored as exact rationals mod 1, so the group axioms can be
tested with equality rather than tolerances.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm

from . import exactmat as xm
from . import symplattice as sl


class DimensionMismatch(ValueError):
    pass


class TypeContextMismatch(ValueError):
    pass


class NotSymplectic(ValueError):
    pass


class NotFound(Exception):
    """No type within the search bound makes the matrix integral."""


def std_omega(n):
    """Standard principal symplectic Gram matrix [[0, I], [-I, 0]]."""
    return sl.standard_gram(sl.delta(n))


def is_member(S, t):
    """Membership in the modified Siegel group of type t (Z^{2n} picture).

    True iff S is an integer matrix with S^T Omega_t S = Omega_t exactly.
    """
    t = sl.validate_type(t)
    m = len(S)
    if not xm.is_square(S) or m != 2 * len(t):
        raise DimensionMismatch(f"expected a {2*len(t)}x{2*len(t)} matrix")
    if not xm.is_integral(S):
        return False
    S = xm.to_int(S)
    G = sl.standard_gram(t)
    return xm.mat_equal(xm.matmul(xm.transpose(S), xm.matmul(G, S)), G)


@dataclass(frozen=True)
class SiegelElement:
    matrix: tuple  # rows of ints
    type_ctx: tuple

    @staticmethod
    def make(matrix, type_ctx):
        t = sl.validate_type(type_ctx)
        if not is_member(matrix, t):
            raise NotSymplectic("matrix does not preserve the type-t Gram matrix")
        return SiegelElement(tuple(tuple(int(x) for x in row) for row in matrix), t)

    def rows(self):
        return [list(r) for r in self.matrix]

    def inverse(self):
        inv = xm.to_int(xm.inverse(self.rows()))
        return SiegelElement.make(inv, self.type_ctx)

    def __matmul__(self, other):
        if self.type_ctx != other.type_ctx:
            raise TypeContextMismatch("elements live in groups of different type")
        return SiegelElement.make(xm.matmul(self.rows(), other.rows()), self.type_ctx)

    def is_identity(self):
        return xm.mat_equal(self.rows(), xm.identity(len(self.matrix)))


def _divisor_chains(n, cap):
    """All divisibility chains of length n whose entries divide cap."""
    divs = sorted(d for d in range(1, cap + 1) if cap % d == 0)
    chains = [()]
    for _ in range(n):
        chains = [c + (d,) for c in chains for d in divs
                  if not c or d % c[-1] == 0]
    return chains


def element_min_type(T, search_factor=1):
    """Minimal type t with Gamma_t^{-1} T Gamma_t integral.

    T must be an exactly symplectic rational matrix for the principal form.
    The search runs over divisor chains bounded by (lcm of entry
    denominators)^n; raises NotFound if no chain in that range works.  The
    set of admissible types is closed under meets, so the minimum is unique.
    """
    T = xm.to_fraction(T)
    m = len(T)
    if not xm.is_square(T) or m % 2:
        raise DimensionMismatch("matrix must be square of even dimension")
    n = m // 2
    W = std_omega(n)
    if not xm.mat_equal(xm.matmul(xm.transpose(T), xm.matmul(xm.to_fraction(W), T)),
                        xm.to_fraction(W)):
        raise NotSymplectic("matrix is not symplectic for the standard form")

    L = lcm(*(x.denominator for row in T for x in row))
    cap = max(1, L) ** n * max(1, search_factor)
    candidates = []
    for t in _divisor_chains(n, cap):
        G = xm.to_fraction(sl.gamma_matrix(t))
        S = xm.matmul(xm.inverse(G), xm.matmul(T, G))
        if xm.is_integral(S):
            candidates.append(t)
    if not candidates:
        raise NotFound(f"no admissible type with entries dividing {cap}")
    meet = candidates[0]
    for t in candidates[1:]:
        meet, _ = sl.type_meet_join(meet, t)
    if meet not in candidates:
        # should not happen (admissible types are meet-closed); be safe
        candidates.sort()
        meet = min((t for t in candidates
                    if not any(t2 != t and sl.type_leq(t2, t) for t2 in candidates)))
    return meet


def transport(S, t, t2):
    """Move a type-t member to the type-t2 picture; None if non-integral.

    The transport conjugates by Gamma_t then Gamma_{t2}^{-1}; whenever the
    result is integral it is automatically a member at t2.
    """
    g1 = xm.to_fraction(sl.gamma_matrix(t))
    g2 = xm.to_fraction(sl.gamma_matrix(t2))
    M = xm.matmul(xm.inverse(g2), xm.matmul(g1, xm.matmul(xm.to_fraction(S),
                                                          xm.matmul(xm.inverse(g1), g2))))
    if not xm.is_integral(M):
        return None
    return xm.to_int(M)


# ---------------------------------------------------------------------------
# the affine group: torus translations semidirect rotations

def _mod1(x):
    return Fraction(x) % 1


@dataclass(frozen=True)
class AffElement:
    translation: tuple  # Fractions in [0, 1)
    rotation: SiegelElement

    @staticmethod
    def make(translation, rotation):
        a = tuple(_mod1(x) for x in translation)
        if len(a) != len(rotation.matrix):
            raise DimensionMismatch("translation length does not match rotation size")
        return AffElement(a, rotation)

    @staticmethod
    def identity_element(t):
        t = sl.validate_type(t)
        n = len(t)
        rot = SiegelElement.make(xm.identity(2 * n), t)
        return AffElement((Fraction(0),) * (2 * n), rot)

    def is_identity(self):
        return all(x == 0 for x in self.translation) and self.rotation.is_identity()


def aff_compose(g1, g2):
    """(a1, r1)(a2, r2) = (a1 + r1 a2 mod 1, r1 r2)."""
    if g1.rotation.type_ctx != g2.rotation.type_ctx:
        raise TypeContextMismatch("elements live in groups of different type")
    moved = xm.matvec(xm.to_fraction(g1.rotation.rows()), list(g2.translation))
    a = tuple(_mod1(x + y) for x, y in zip(g1.translation, moved))
    return AffElement(a, g1.rotation @ g2.rotation)


def aff_inverse(g):
    rot_inv = g.rotation.inverse()
    moved = xm.matvec(xm.to_fraction(rot_inv.rows()), list(g.translation))
    return AffElement(tuple(_mod1(-x) for x in moved), rot_inv)


def aff_adjoint(g):
    """Adjoint representation: translations act trivially, so Ad(a, r) = r."""
    return g.rotation.rows()


def isogeny_kernel(t, t2):
    """Cyclic factors (q_1, ..., q_n) = (t2_i / t_i) of the isogeny kernel."""
    t, t2 = sl.validate_type(t), sl.validate_type(t2)
    if not sl.type_leq(t, t2):
        raise sl.NotComparable(f"{t} does not divide {t2} componentwise")
    return tuple(b // a for a, b in zip(t, t2))


# ---------------------------------------------------------------------------
# generator sampling, used by the self-test suites

def generators(t):
    """A finite generating-ish set of type-t members for random sampling."""
    t = sl.validate_type(t)
    n = len(t)
    gens = []
    for i in range(n):
        # upper unipotent with D_t B symmetric
        B = xm.zeros(n, n)
        B[i][i] = 1
        gens.append(_embed_upper(B, t))
        C = xm.zeros(n, n)
        C[i][i] = 1
        gens.append(_embed_lower(C, t))
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(t[i], t[j])
            B = xm.zeros(n, n)
            B[i][j] = t[j] // g
            B[j][i] = t[i] // g
            gens.append(_embed_upper(B, t))
    # the symplectic reflection e_i -> -f_i-ish block rotation, principal only
    if all(x == t[0] for x in t):
        J = xm.zeros(2 * n, 2 * n)
        for i in range(n):
            J[i][n + i] = 1
            J[n + i][i] = -1
        gens.append(SiegelElement.make(J, t))
    return gens


def _embed_upper(B, t):
    n = len(B)
    S = xm.identity(2 * n)
    for i in range(n):
        for j in range(n):
            S[i][n + j] = B[i][j]
    return SiegelElement.make(S, t)


def _embed_lower(C, t):
    n = len(C)
    S = xm.identity(2 * n)
    for i in range(n):
        for j in range(n):
            S[n + i][j] = C[i][j]
    return SiegelElement.make(S, t)


def random_member(t, rng, word_length=6):
    """Random word in the generator set (and inverses)."""
    gens = generators(t)
    t = sl.validate_type(t)
    g = SiegelElement.make(xm.identity(2 * len(t)), t)
    for _ in range(word_length):
        pick = gens[rng.randrange(len(gens))]
        if rng.random() < 0.5:
            pick = pick.inverse()
        g = g @ pick
    return g
