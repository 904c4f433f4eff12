"""Catalog of the relative GL-invariant tensors driving the construction.

Each invariant is a sparse coefficient array over tuples of index subsets,
one subset per tensor factor.  The weight is the integer k with
g . I = det(g)^k I; it is measured, not assumed, by check_weight.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

from .coaction import GroupElement
from .exterior import index_subsets, merge_sign, minor
from .scalars import scalar_to_json


class InvarianceViolationError(ValueError):
    """Raised when a claimed invariant fails the det-power equivariance test."""

    def __init__(self, message, g=None):
        super().__init__(message)
        self.g = g


class Invariant:
    """Sparse tensor in Lambda^(s1) V* x .. x Lambda^(sn) V*."""

    __slots__ = ("dim", "signature", "coeffs", "name")

    def __init__(self, dim: int, signature, coeffs, name: str = ""):
        self.dim = dim
        self.signature = tuple(signature)
        clean = {}
        for key, c in coeffs.items():
            key = tuple(tuple(k) for k in key)
            if len(key) != len(self.signature):
                raise ValueError("coefficient key arity mismatch")
            for part, s in zip(key, self.signature):
                if len(part) != s:
                    raise ValueError(f"key part {part} has length != {s}")
            if c != 0:
                clean[key] = c
        if not clean:
            raise ValueError("invariant must have a nonzero coefficient")
        self.coeffs = clean
        self.name = name

    @property
    def degrees(self):
        """The tuple (p1, .., pn) with signature components p_i + 1."""
        return tuple(s - 1 for s in self.signature)

    def arity(self):
        return len(self.signature)

    def to_json(self):
        return {
            "dim": self.dim,
            "signature": list(self.signature),
            "name": self.name,
            "coeffs": {
                ";".join(",".join(map(str, part)) for part in key): scalar_to_json(c)
                for key, c in sorted(self.coeffs.items())
            },
        }


def invariant_wedge_pair(m: int, p1: int, p2: int) -> Invariant:
    """The two-factor wedge pairing: coefficient on (R, S) is the sign of
    sorting R + S when R and S partition {0..m-1}, else zero."""
    if p1 + p2 + 2 != m:
        raise ValueError(f"wedge pair needs p1+p2+2 == m, got ({m}, {p1}, {p2})")
    coeffs = {}
    for R in index_subsets(m, p1 + 1):
        comp = tuple(sorted(set(range(m)) - set(R)))
        merged = merge_sign(R, comp)
        assert merged is not None
        coeffs[(R, comp)] = merged[0]
    return Invariant(m, (p1 + 1, p2 + 1), coeffs, name=f"wedge:{m},{p1},{p2}")


def invariant_bifocal() -> Invariant:
    """The dim-4 line-line pairing behind fundamental/essential matrices."""
    inv = invariant_wedge_pair(4, 1, 1)
    inv.name = "bifocal"
    return inv


def invariant_trifocal() -> Invariant:
    """The (3,2,3)-signature invariant in dim 4, expanded from the
    antisymmetric sandwich of signed complementary 3-forms."""
    # row/column vectors: slot i carries (-1)^i e_{complement(i)}
    side = []
    for i in range(4):
        comp = tuple(j for j in range(4) if j != i)
        side.append((comp, 1 if i % 2 == 0 else -1))
    coeffs = {}
    for i in range(4):
        for j in range(4):
            if i == j:
                continue
            mid = (min(i, j), max(i, j))
            eps = 1 if i < j else -1
            key = (side[i][0], mid, side[j][0])
            coeffs[key] = coeffs.get(key, 0) + side[i][1] * side[j][1] * eps
    return Invariant(4, (3, 2, 3), coeffs, name="trifocal")


def invariant_quadrifocal() -> Invariant:
    """Four-factor invariant of 3-forms in dim 4: the determinant of the
    four signed complementary covectors.

    Convention: e_R maps to sign(R + (c,)) times the covector at the
    complementary index c; the coefficient on a 4-tuple is the product of
    those signs times the sign of the permutation of complements.
    """
    comp_sign = {}
    for c in range(4):
        R = tuple(j for j in range(4) if j != c)
        jumps = sum(1 for r in R if r > c)  # c moves from the end past these
        comp_sign[R] = (c, 1 if jumps % 2 == 0 else -1)
    coeffs = {}
    for perm in permutations(range(4)):
        key = []
        total = _perm_sign(perm)
        for c in perm:
            R = tuple(j for j in range(4) if j != c)
            key.append(R)
            total *= comp_sign[R][1]
        coeffs[tuple(key)] = total
    return Invariant(4, (3, 3, 3, 3), coeffs, name="quadrifocal")


def _perm_sign(perm):
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def transform(g: GroupElement, inv: Invariant) -> Invariant:
    """Action of g on a dual-side tensor: contract each factor with the
    compound minors of g^{-1}."""
    if g.dim != inv.dim:
        raise ValueError("dimension mismatch")
    ginv = g.inverse()
    coeffs = {}
    subset_lists = [index_subsets(inv.dim, s) for s in inv.signature]
    # one minor table per distinct factor degree
    tables = {}
    for s, subsets in zip(inv.signature, subset_lists):
        if s not in tables:
            tables[s] = {
                (R, C): minor(ginv, R, C) for R in subsets for C in subsets
            }
    for key, c in inv.coeffs.items():
        # distribute each factor over the target subsets
        partial = {(): c}
        for factor_idx, R in enumerate(key):
            table = tables[inv.signature[factor_idx]]
            new_partial = {}
            for prefix, val in partial.items():
                for C in subset_lists[factor_idx]:
                    mnr = table[(R, C)]
                    if mnr == 0:
                        continue
                    nk = prefix + (C,)
                    new_partial[nk] = new_partial.get(nk, 0) + val * mnr
            partial = new_partial
        for nk, val in partial.items():
            coeffs[nk] = coeffs.get(nk, 0) + val
    coeffs = {k: v for k, v in coeffs.items() if v != 0}
    return Invariant(inv.dim, inv.signature, coeffs, name=inv.name)


def _random_rational_group_element(m, rng):
    while True:
        entries = [[Fraction(rng.randint(-5, 5)) for _ in range(m)] for _ in range(m)]
        try:
            return GroupElement(entries)
        except ValueError:
            continue


def check_weight(inv: Invariant, trials: int = 20, seed: int = 0) -> int:
    """Measure the integer k with g . I = det(g)^k I, exactly, over random
    rational group elements.  Raises InvarianceViolationError otherwise."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    found_k = None
    for _ in range(trials):
        g = _random_rational_group_element(inv.dim, rng)
        moved = transform(g, inv)
        k = _match_det_power(inv, moved, g)
        if k is None:
            raise InvarianceViolationError(
                f"no integer determinant power matches the action on {inv.name or 'invariant'}",
                g=g,
            )
        if found_k is None:
            found_k = k
        elif found_k != k:
            raise InvarianceViolationError(
                f"inconsistent weights {found_k} vs {k}", g=g
            )
    return found_k


def _match_det_power(inv, moved, g):
    d = Fraction(g.det())
    # ratio from any reference coefficient, then verify globally
    ref_key = next(iter(inv.coeffs))
    if ref_key not in moved.coeffs:
        return None
    ratio = Fraction(moved.coeffs[ref_key]) / Fraction(inv.coeffs[ref_key])
    k = None
    for cand in range(-12, 13):
        if d**cand == ratio:
            k = cand
            break
    if k is None:
        return None
    scaled = {key: c * ratio for key, c in inv.coeffs.items()}
    if scaled != moved.coeffs:
        return None
    return k


CATALOG = {
    "bifocal": invariant_bifocal,
    "trifocal": invariant_trifocal,
    "quadrifocal": invariant_quadrifocal,
}


def catalog_lookup(name: str) -> Invariant:
    """Resolve an invariant by CLI-style name, including wedge:m,p1,p2."""
    if name in CATALOG:
        return CATALOG[name]()
    if name.startswith("wedge:"):
        parts = name[len("wedge:") :].split(",")
        if len(parts) != 3:
            raise ValueError(f"bad wedge invariant spec {name!r}")
        m, p1, p2 = (int(s) for s in parts)
        return invariant_wedge_pair(m, p1, p2)
    raise ValueError(f"unknown invariant {name!r}")
