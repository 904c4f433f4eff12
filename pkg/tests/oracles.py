"""Independent brute-force oracles used only by the tests.

Subspaces are given by spanning lists of coordinate vectors; everything is
exact over Fraction/int, so dimension counts are reliable.
"""

from fractions import Fraction

from mft import linalg
from mft.exterior import Multivector


def span_dim(vectors):
    if not vectors:
        return 0
    return linalg.rank([list(v) for v in vectors])


def intersect_spans(u_basis, w_basis):
    """Basis of the intersection of two spans in k^n."""
    if not u_basis or not w_basis:
        return []
    n = len(u_basis[0])
    cols = [list(v) for v in u_basis] + [[-x for x in v] for v in w_basis]
    m = [[cols[c][r] for c in range(len(cols))] for r in range(n)]
    out = []
    for coeffs in linalg.nullspace(m):
        vec = [
            sum(coeffs[i] * u_basis[i][r] for i in range(len(u_basis)))
            for r in range(n)
        ]
        if any(x != 0 for x in vec):
            out.append(vec)
    return out


def common_point_exists(subspaces):
    """True iff the intersection of all the spans is nonzero."""
    current = subspaces[0]
    for nxt in subspaces[1:]:
        current = intersect_spans(current, nxt)
        if not current:
            return False
    return span_dim(current) >= 1


def wedge_of_vectors(vectors, dim=4):
    out = Multivector.basis(dim, ())
    for v in vectors:
        out = out ^ Multivector.from_vector(v, dim=dim)
    return out


def random_rational_vector(rng, dim=4):
    return [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(dim)]


def random_subspace(rng, k, dim=4):
    """k independent random rational vectors (resampled until independent)."""
    while True:
        vs = [random_rational_vector(rng, dim) for _ in range(k)]
        if span_dim(vs) == k:
            return vs


def random_subspace_through(rng, point, k, dim=4):
    """k-dim subspace containing the given point."""
    while True:
        vs = [list(point)] + [random_rational_vector(rng, dim) for _ in range(k - 1)]
        if span_dim(vs) == k:
            return vs
