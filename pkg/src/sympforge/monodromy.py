"""Verification of monodromy representations into the modified Siegel
groups: relator checking, Dirac-system witnesses, and bounded conjugacy
search.  Everything is exact integer/rational arithmetic; the conjugacy
search is sound but only complete within its entry bound.
"""

from dataclasses import dataclass
from itertools import product

from . import exactmat as xm
from . import siegel
from . import symplattice as sl


class ShapeMismatch(ValueError):
    pass


class DegenerateLattice(ValueError):
    pass


class BoundTooLargeForBudget(RuntimeError):
    pass


@dataclass(frozen=True)
class Presentation:
    n_generators: int
    relators: tuple  # words: tuples of nonzero signed 1-based generator indices

    @staticmethod
    def make(n_generators, relators):
        n = int(n_generators)
        if n < 1:
            raise ValueError("need at least one generator")
        rels = []
        for word in relators:
            word = tuple(int(x) for x in word)
            if any(x == 0 or abs(x) > n for x in word):
                raise ValueError(f"relator index out of range in {word}")
            rels.append(word)
        return Presentation(n, tuple(rels))


@dataclass(frozen=True)
class Representation:
    images: tuple   # SiegelElements, one per generator
    type_ctx: tuple

    @staticmethod
    def make(matrices, type_ctx):
        t = sl.validate_type(type_ctx)
        return Representation(tuple(siegel.SiegelElement.make(m, t) for m in matrices), t)

    def evaluate(self, word):
        m = len(self.images[0].matrix)
        acc = siegel.SiegelElement.make(xm.identity(m), self.type_ctx)
        for idx in word:
            g = self.images[abs(idx) - 1]
            acc = acc @ (g if idx > 0 else g.inverse())
        return acc

    def conjugated(self, gamma):
        g = siegel.SiegelElement.make(gamma, self.type_ctx) \
            if not isinstance(gamma, siegel.SiegelElement) else gamma
        ginv = g.inverse()
        return Representation(tuple(g @ im @ ginv for im in self.images), self.type_ctx)


def validate_representation(pres, rep):
    """True iff every relator evaluates to the identity (membership of the
    images is enforced by construction of the Representation)."""
    if pres.n_generators != len(rep.images):
        raise ShapeMismatch("generator count does not match image count")
    return all(rep.evaluate(word).is_identity() for word in pres.relators)


def is_holonomy_trivial(rep):
    return all(im.is_identity() for im in rep.images)


def verify_dirac_system(images, lattice_basis):
    """Verify a supplied invariant-lattice witness for rational monodromy.

    images: rational matrices, each exactly symplectic for the principal
    form.  lattice_basis: columns spanning a full lattice.  True iff every
    image preserves the lattice (the basis-conjugate and its inverse are
    integral) and the form restricted to the lattice is integer-valued;
    returns (ok, type) with the type of the restricted Gram matrix.
    """
    L = xm.to_fraction(lattice_basis)
    m = len(L)
    if m % 2 or not xm.is_square(L):
        raise ValueError("lattice basis must be square of even dimension")
    if xm.det(L) == 0:
        raise DegenerateLattice("lattice basis is singular")
    n = m // 2
    W = xm.to_fraction(siegel.std_omega(n))
    Linv = xm.inverse(L)
    for T in images:
        T = xm.to_fraction(T)
        if not xm.mat_equal(xm.matmul(xm.transpose(T), xm.matmul(W, T)), W):
            raise siegel.NotSymplectic("image is not symplectic for the standard form")
        C = xm.matmul(Linv, xm.matmul(T, L))
        if not xm.is_integral(C):
            return False, None
        # det C = det T = 1, so the inverse is integral too; assert anyway
        if not xm.is_integral(xm.inverse(C)):
            return False, None
    G = xm.matmul(xm.transpose(L), xm.matmul(W, L))
    if not xm.is_integral(G):
        return False, None
    return True, sl.space_type(xm.to_int(G))


def _candidate_members(dim, t, entry_bound, budget):
    count = 0
    vals = range(-entry_bound, entry_bound + 1)
    for entries in product(vals, repeat=dim * dim):
        count += 1
        if count > budget:
            raise BoundTooLargeForBudget(
                f"candidate count exceeds budget {budget}; lower the bound")
        M = [list(entries[i * dim:(i + 1) * dim]) for i in range(dim)]
        if siegel.is_member(M, t):
            yield M


def conjugacy_test_bounded(rep1, rep2, entry_bound, budget=2_000_000):
    """Exhaustive conjugator search over members with bounded entries.

    Returns (gamma, certificate).  gamma is the first conjugator found in
    lexicographic candidate order, or None; a None with certificate
    "trace mismatch" is decisive, otherwise None only means not-found
    within the bound.
    """
    if rep1.type_ctx != rep2.type_ctx or len(rep1.images) != len(rep2.images):
        raise ShapeMismatch("representations are not comparable")
    # conjugation invariants give a cheap decisive prefilter
    for a, b in zip(rep1.images, rep2.images):
        if sum(a.matrix[i][i] for i in range(len(a.matrix))) != \
           sum(b.matrix[i][i] for i in range(len(b.matrix))):
            return None, "trace mismatch"
    dim = len(rep1.images[0].matrix)
    targets = [b.rows() for b in rep2.images]
    for gamma in _candidate_members(dim, rep1.type_ctx, entry_bound, budget):
        ginv = xm.inverse(gamma)
        if all(xm.mat_equal(xm.to_fraction(xm.matmul(gamma, xm.matmul(a.rows(), ginv))),
                            xm.to_fraction(tgt))
               for a, tgt in zip(rep1.images, targets)):
            return gamma, "found"
    return None, "not found within bound"
