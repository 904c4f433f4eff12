"""The main construction: contracting psi matrices against an invariant.

multifocal(I, frames) evaluates the tensor product of psi maps on I, giving
an n-way array with axis i indexed by p_i-subsets of {1..m-1}.  For dim 4
and the cataloged invariants these are the bifocal (essential/fundamental),
trifocal, and quadrifocal tensors.
"""

from __future__ import annotations

import enum
from itertools import product

from .coaction import GroupElement, compound_matrix, psi
from .exterior import DimensionMismatchError, Multivector, index_subsets
from .invariants import Invariant
from .scalars import TOL, is_zero, scalar_from_json, scalar_to_json


class FocalTensor:
    """n-way array over Lambda^(p_i) of the quotient space W, axis i of
    dimension C(m-1, p_i); stored un-normalized (a weighted representative)."""

    __slots__ = ("dim", "signature", "data", "axes")

    def __init__(self, dim: int, signature, data):
        self.dim = dim
        self.signature = tuple(signature)
        self.axes = [index_subsets(dim, p, start=1) for p in self.signature]
        expected = [len(a) for a in self.axes]
        self.data = data
        shape = _shape(data)
        if shape != expected:
            raise ValueError(f"data shape {shape} does not match axes {expected}")

    @classmethod
    def zeros(cls, dim: int, signature):
        signature = tuple(signature)
        axes = [index_subsets(dim, p, start=1) for p in signature]

        def build(level):
            if level == len(axes):
                return 0
            return [build(level + 1) for _ in axes[level]]

        return cls(dim, signature, build(0))

    def get(self, *subsets):
        cell = self.data
        for axis, J in zip(self.axes, subsets):
            cell = cell[axis.index(tuple(J))]
        return cell

    def set(self, subsets, value):
        cell = self.data
        for axis, J in zip(self.axes[:-1], subsets[:-1]):
            cell = cell[axis.index(tuple(J))]
        cell[self.axes[-1].index(tuple(subsets[-1]))] = value

    def cells(self):
        """Iterate (index tuple of subsets, value) in lexicographic order."""
        for combo in product(*self.axes):
            yield combo, self.get(*combo)

    def flat(self):
        """Row-major flattening in lexicographic axis order."""
        return [v for _, v in self.cells()]

    @classmethod
    def from_flat(cls, dim, signature, values):
        t = cls.zeros(dim, signature)
        it = iter(values)
        for combo in product(*t.axes):
            t.set(combo, next(it))
        return t

    def scale(self, s):
        return FocalTensor.from_flat(self.dim, self.signature, [v * s for v in self.flat()])

    def max_abs(self):
        return max((abs(v) for v in self.flat()), default=0)

    def is_zero(self, tol: float = TOL):
        return all(is_zero(v, tol) for v in self.flat())

    def __eq__(self, other):
        return (
            isinstance(other, FocalTensor)
            and self.dim == other.dim
            and self.signature == other.signature
            and self.flat() == other.flat()
        )

    def __repr__(self):
        return f"FocalTensor(dim={self.dim}, signature={self.signature})"

    def to_json(self):
        def conv(node):
            if isinstance(node, list):
                return [conv(x) for x in node]
            return scalar_to_json(node)

        return {"dim": self.dim, "signature": list(self.signature), "data": conv(self.data)}

    @classmethod
    def from_json(cls, obj):
        def conv(node):
            if isinstance(node, list):
                return [conv(x) for x in node]
            return scalar_from_json(node)

        return cls(obj["dim"], tuple(obj["signature"]), conv(obj["data"]))


def _shape(data):
    shape = []
    node = data
    while isinstance(node, list):
        shape.append(len(node))
        node = node[0] if node else None
    return shape


class Section(enum.Enum):
    CHAIN = "chain"
    TRIFOCAL_INVERSE = "trifocal-inverse"


def multifocal(I: Invariant, frames) -> FocalTensor:
    """Contract the tensor product of psi(g_i, p_i) against I."""
    frames = list(frames)
    if len(frames) != I.arity():
        raise ValueError(
            f"invariant arity {I.arity()} != number of frames {len(frames)}"
        )
    if any(g.dim != I.dim for g in frames):
        raise DimensionMismatchError("frame dimension differs from invariant")
    degrees = I.degrees
    psis = [psi(g, p) for g, p in zip(frames, degrees)]
    out = FocalTensor.zeros(I.dim, degrees)
    axes = out.axes
    for key, c in I.coeffs.items():
        rows = [ps.row(R) for ps, R in zip(psis, key)]
        for combo_pos in product(*(range(len(a)) for a in axes)):
            val = c
            for row, pos in zip(rows, combo_pos):
                val = val * row[pos]
                if val == 0:
                    break
            if val == 0:
                continue
            cell = out.data
            for pos in combo_pos[:-1]:
                cell = cell[pos]
            cell[combo_pos[-1]] = cell[combo_pos[-1]] + val
    return out


def apply_section(frames_relative, convention: Section):
    """Expand n-1 relative frames into an n-tuple of absolute frames.

    CHAIN: (b1, .., b_{n-1}) -> (b_{n-1}..b2 b1, .., b_{n-1}, id).
    TRIFOCAL_INVERSE (n=3 only): (g1, g2) -> (g1^-1, id, g2^-1).
    """
    frames_relative = list(frames_relative)
    if not frames_relative:
        raise ValueError("need at least one relative frame")
    dim = frames_relative[0].dim
    if convention is Section.CHAIN:
        # slot i (1-based, i < n) holds the suffix product b_{n-1} .. b_i
        result = []
        for i in range(1, len(frames_relative) + 1):
            acc = GroupElement.identity(dim)
            for b in reversed(frames_relative[i - 1 :]):
                acc = acc @ b
            result.append(acc)
        result.append(GroupElement.identity(dim))
        return result
    if convention is Section.TRIFOCAL_INVERSE:
        if len(frames_relative) != 2:
            raise ValueError("TRIFOCAL_INVERSE needs exactly 2 relative frames")
        g1, g2 = frames_relative
        return [g1.inverse(), GroupElement.identity(dim), g2.inverse()]
    raise ValueError(f"unknown section convention {convention!r}")


def contract(t: FocalTensor, cs):
    """Full contraction of t against one W-multivector per axis."""
    cs = list(cs)
    if len(cs) != len(t.signature):
        raise ValueError("contraction arity mismatch")
    for c, p in zip(cs, t.signature):
        if c.degree != p:
            raise DimensionMismatchError(
                f"feature degree {c.degree} != axis degree {p}"
            )
        if any(0 in key for key in c.coeffs):
            raise ValueError("contraction features must avoid index 0")
    total = 0
    for combo, val in t.cells():
        if val == 0:
            continue
        for c, J in zip(cs, combo):
            val = val * c.coeff(J)
            if val == 0:
                break
        total = total + val
    return total


def lift(g: GroupElement, c: Multivector) -> Multivector:
    """Transport an image-side multivector to the ambient space: apply the
    compound action of g to e0 ^ c."""
    m = g.dim
    if c.dim != m:
        raise DimensionMismatchError("dimension mismatch in lift")
    base = Multivector(m, c.degree + 1, {(0,) + key: val for key, val in c.coeffs.items()})
    action = compound_matrix(g, c.degree)  # acts on degree c.degree + 1
    subsets = index_subsets(m, c.degree + 1)
    coeffs = {}
    for ri, R in enumerate(subsets):
        total = 0
        for ci, C in enumerate(subsets):
            v = base.coeff(C)
            if v != 0:
                total = total + action[ri][ci] * v
        if total != 0:
            coeffs[R] = total
    return Multivector(m, c.degree + 1, coeffs)


def incidence(I: Invariant, ds):
    """Evaluate I on a tuple of ambient multivectors by coefficient
    contraction; zero exactly at the incident configurations."""
    ds = list(ds)
    if len(ds) != I.arity():
        raise ValueError("incidence arity mismatch")
    for d, s in zip(ds, I.signature):
        if d.degree != s:
            raise DimensionMismatchError(f"degree {d.degree} != factor degree {s}")
    total = 0
    for key, c in I.coeffs.items():
        val = c
        for d, R in zip(ds, key):
            val = val * d.coeff(R)
            if val == 0:
                break
        total = total + val
    return total
