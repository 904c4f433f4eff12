"""Polynomial constraints and identities on bifocal and trifocal varieties.

All evaluators are residual-style: they return numbers (or matrices of
numbers) that vanish exactly on the variety in question.  check_all
aggregates the intrinsic trifocal families on scale-normalized input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations, product

from . import linalg
from .euclidean import EuclideanMotion, tensor_to_identified
from .focal import FocalTensor
from .scalars import TOL, is_exact, is_zero


# ---------------------------------------------------------------------------
# 3x3 matrix utilities


def adjugate(mtx):
    """Classical adjoint: transpose of the cofactor matrix."""
    m = mtx
    cof = [
        [
            m[(i + 1) % 3][(j + 1) % 3] * m[(i + 2) % 3][(j + 2) % 3]
            - m[(i + 1) % 3][(j + 2) % 3] * m[(i + 2) % 3][(j + 1) % 3]
            for j in range(3)
        ]
        for i in range(3)
    ]
    return linalg.transpose(cof)


def _tr(m):
    return m[0][0] + m[1][1] + m[2][2]


def _mmt(m):
    return linalg.mat_mul(m, linalg.transpose(m))


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _half(x):
    return Fraction(x, 2) if isinstance(x, int) else (x / 2 if not is_exact(x) else x * Fraction(1, 2))


def _outer(x, y):
    return [[xi * yj for yj in y] for xi in x]


def _cross(x, y):
    return [
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    ]


def _dot(x, y):
    return sum(a * b for a, b in zip(x, y))


# ---------------------------------------------------------------------------
# Bifocal constraints


def demazure_c(mtx):
    """Demazure's cubic matrix (1/2) tr(m m^t) m - m m^t m; zero exactly on
    the essential variety."""
    A = _mmt(mtx)
    t = _half(_tr(A))
    Am = linalg.mat_mul(A, mtx)
    return [[t * mtx[i][j] - Am[i][j] for j in range(3)] for i in range(3)]


def bifocal_q(mtx):
    """The quartic (1/2) (tr m m^t)^2 - tr[(m m^t)^2]."""
    A = _mmt(mtx)
    A2 = linalg.mat_mul(A, A)
    return _half(_tr(A)) * _tr(A) - _tr(A2)


def frobenius_identity_residual(mtx):
    """tr(c c^t) + (1/2) tr(m m^t) q(m) - 3 (det m)^2.

    A polynomial identity: identically zero on ALL 3x3 matrices.  (The
    homogeneous-degree-6 exponent 2 on det m is forced; see
    docs/frobenius.md for the power-sum derivation.)
    """
    c = demazure_c(mtx)
    lhs = _tr(_mmt(c))
    d = _det3(mtx)
    return lhs + _half(_tr(_mmt(mtx))) * bifocal_q(mtx) - 3 * d * d


# ---------------------------------------------------------------------------
# Trifocal slices


class TrifocalSlices:
    """The three 3x3 slice matrices of a (2,1,2) focal tensor in identified
    coordinates, with lazily computed adjugates."""

    def __init__(self, t1, t2, t3):
        self.t = (t1, t2, t3)

    @classmethod
    def from_tensor(cls, tensor: FocalTensor):
        m = tensor_to_identified(tensor)
        slices = [
            [[m[i][j][k] for k in range(3)] for i in range(3)] for j in range(3)
        ]
        return cls(*slices)

    @classmethod
    def from_identified(cls, m):
        return cls(*[[[m[i][j][k] for k in range(3)] for i in range(3)] for j in range(3)])

    @cached_property
    def a(self):
        return tuple(adjugate(ti) for ti in self.t)

    def t_of(self, x):
        return [
            [sum(x[n] * self.t[n][i][j] for n in range(3)) for j in range(3)]
            for i in range(3)
        ]

    def max_abs(self):
        return max(abs(v) for ti in self.t for row in ti for v in row)

    def scaled(self, s):
        return TrifocalSlices(
            *[[[v * s for v in row] for row in ti] for ti in self.t]
        )


# Fixed monomial order for the 10 cubic coefficients of det t(x).
DET_CUBIC_MONOMIALS = [
    (3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1),
    (1, 0, 2), (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3),
]

_DET_CUBIC_POINTS = [
    (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, -1, 0),
    (1, 0, 1), (1, 0, -1), (0, 1, 1), (0, 1, -1), (1, 1, 1),
]

_det_cubic_inverse_cache = None


def _det_cubic_inverse():
    global _det_cubic_inverse_cache
    if _det_cubic_inverse_cache is None:
        rows = [
            [
                Fraction(x[0] ** e[0] * x[1] ** e[1] * x[2] ** e[2])
                for e in DET_CUBIC_MONOMIALS
            ]
            for x in _DET_CUBIC_POINTS
        ]
        _det_cubic_inverse_cache = linalg.inverse(rows)
    return _det_cubic_inverse_cache


def trifocal_det_cubics(ts: TrifocalSlices):
    """The 10 coefficients of det(x1 t1 + x2 t2 + x3 t3) in the fixed
    monomial order; all vanish on the trifocal variety."""
    evals = [_det3(ts.t_of(x)) for x in _DET_CUBIC_POINTS]
    inv = _det_cubic_inverse()
    return [sum(inv[i][j] * evals[j] for j in range(10)) for i in range(10)]


def epipolar_sextics(ts: TrifocalSlices):
    """Both chirality families of the 27 degree-6 epipolar constraints,
    returned as (right_kernel_family, left_kernel_family).

    Intended for slice triples of rank exactly 2; each family is indexed by
    (i, j, k) in lexicographic order.
    """
    a1, a2, a3 = ts.a
    right = []
    left = []
    for i, j, k in product(range(3), repeat=3):
        r_val = 0
        l_val = 0
        for sigma in permutations(range(3)):
            sgn = _perm_sign(sigma)
            r_val = r_val + sgn * a1[i][sigma[0]] * a2[j][sigma[1]] * a3[k][sigma[2]]
            l_val = l_val + sgn * a1[sigma[0]][i] * a2[sigma[1]][j] * a3[sigma[2]][k]
        right.append(r_val)
        left.append(l_val)
    return right, left


def _perm_sign(perm):
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def braid_residual(ts: TrifocalSlices):
    """Max-abs entry of t_i a_j t_i - t_j a_i t_j over unordered pairs; a
    degree-4 system vanishing on the Euclidean trifocal variety."""
    worst = 0
    for i, j in combinations(range(3), 2):
        lhs = linalg.mat_mul(linalg.mat_mul(ts.t[i], ts.a[j]), ts.t[i])
        rhs = linalg.mat_mul(linalg.mat_mul(ts.t[j], ts.a[i]), ts.t[j])
        for ri, rj in zip(lhs, rhs):
            for x, y in zip(ri, rj):
                worst = max(worst, abs(x - y))
    return worst


# ---------------------------------------------------------------------------
# Report plumbing


@dataclass
class Family:
    name: str
    max: float
    mean: float
    count: int
    passed: bool

    def to_json(self):
        return {
            "name": self.name,
            "max": float(self.max),
            "mean": float(self.mean),
            "count": self.count,
            "pass": self.passed,
        }


@dataclass
class ConstraintReport:
    families: list = field(default_factory=list)
    normalized: bool = True
    flags: dict = field(default_factory=dict)

    def add(self, name, residuals, tol):
        vals = [abs(v) for v in residuals]
        mx = max(vals) if vals else 0
        mean = sum(vals) / len(vals) if vals else 0
        self.families.append(Family(name, mx, mean, len(vals), _passes(mx, tol)))

    @property
    def passed(self):
        return all(f.passed for f in self.families)

    def family(self, name):
        for f in self.families:
            if f.name == name:
                return f
        raise KeyError(name)

    def max_residual(self):
        return max((f.max for f in self.families), default=0)

    def to_json(self):
        return {
            "families": [f.to_json() for f in self.families],
            "normalized": self.normalized,
            "pass": self.passed,
            **({"flags": self.flags} if self.flags else {}),
        }


def _passes(value, tol):
    if is_exact(value):
        return value == 0
    return abs(value) <= tol


# ---------------------------------------------------------------------------
# Euclidean identity suite (needs ground-truth motions)


def euclidean_identity_suite(
    ts: TrifocalSlices, a: EuclideanMotion, b: EuclideanMotion, tol: float = TOL
) -> ConstraintReport:
    """Residuals of the seven slice/adjugate identity families, with the
    ground-truth motions (r, u) = a and (s, w) = b on the right-hand sides."""
    r, u = a.r, list(a.u)
    s, w = b.r, list(b.u)
    r_col = [[r[i][j] for i in range(3)] for j in range(3)]
    s_col = [[s[i][j] for i in range(3)] for j in range(3)]
    t, adj = ts.t, ts.a

    report = ConstraintReport()

    res = []
    for i in range(3):
        rhs = _outer(_cross(s_col[i], w), _cross(r_col[i], u))
        res.extend(_mat_diff(adj[i], rhs))
    report.add("f1:adjugate-form", res, tol)

    res = []
    for i in range(3):
        prod = linalg.mat_mul(t[i], adj[i])
        res.extend(v for row in prod for v in row)
        res.append(_det3(t[i]))
    report.add("f2:slice-singular", res, tol)

    res = []
    for i, j in permutations(range(3), 2):
        coef = _dot(_cross(s_col[i], s_col[j]), w)
        rhs = _outer(u, _cross(r_col[j], u))
        rhs = [[coef * v for v in row] for row in rhs]
        res.extend(_mat_diff(linalg.mat_mul(t[i], adj[j]), rhs))
    report.add("f3:t-adj", res, tol)

    res = []
    for i, j in permutations(range(3), 2):
        coef = _dot(_cross(r_col[i], r_col[j]), u)
        rhs = _outer(_cross(s_col[j], w), w)
        rhs = [[-coef * v for v in row] for row in rhs]
        res.extend(_mat_diff(linalg.mat_mul(adj[j], t[i]), rhs))
    report.add("f4:adj-t", res, tol)

    res = []
    for i, j in permutations(range(3), 2):
        coef = _dot(_cross(s_col[i], s_col[j]), w) * _dot(_cross(r_col[j], r_col[i]), u)
        rhs = [[coef * v for v in row] for row in _outer(u, w)]
        lhs = linalg.mat_mul(linalg.mat_mul(t[i], adj[j]), t[i])
        res.extend(_mat_diff(lhs, rhs))
    report.add("f5:sandwich-pair", res, tol)

    res = []
    for i, j, k in permutations(range(3)):
        coef = _dot(_cross(s_col[i], s_col[j]), w) * _dot(_cross(r_col[j], r_col[k]), u)
        rhs = [[coef * v for v in row] for row in _outer(u, w)]
        lhs = linalg.mat_mul(linalg.mat_mul(t[i], adj[j]), t[k])
        res.extend(_mat_diff(lhs, rhs))
    report.add("f6:sandwich-triple", res, tol)

    res = []
    for i, j, k in permutations(range(3)):
        lhs = linalg.mat_mul(linalg.mat_mul(adj[i], t[j]), adj[k])
        res.extend(v for row in lhs for v in row)
    report.add("f7:adj-sandwich-zero", res, tol)

    return report


def _mat_diff(x, y):
    return [a - b for rx, ry in zip(x, y) for a, b in zip(rx, ry)]


# ---------------------------------------------------------------------------
# Rank-one certificates


def _block_tensor(ts: TrifocalSlices):
    """The 81-entry 4-tensor Q[i][j][p][q]: block (p, q) holds a triple
    product of slices and adjugates; equals u (x) w (x) w_bar (x) u_bar on
    the Euclidean trifocal variety."""
    t, a = ts.t, ts.a

    def tri(x, y, z, sign=1):
        m = linalg.mat_mul(linalg.mat_mul(x, y), z)
        return [[sign * v for v in row] for row in m]

    blocks = [
        [tri(t[2], a[1], t[2], -1), tri(t[1], a[2], t[0]), tri(t[2], a[1], t[0])],
        [tri(t[0], a[2], t[1]), tri(t[2], a[0], t[2], -1), tri(t[2], a[0], t[1])],
        [tri(t[0], a[1], t[2]), tri(t[1], a[0], t[2]), tri(t[1], a[0], t[1], -1)],
    ]
    q = [[[[0] * 3 for _ in range(3)] for _ in range(3)] for _ in range(3)]
    for p in range(3):
        for qq in range(3):
            for i in range(3):
                for j in range(3):
                    q[i][j][p][qq] = blocks[p][qq][i][j]
    return q


def _rank_one_minors(matrix):
    """All 2x2 minors of a (possibly non-square) matrix as a flat list."""
    nrows, ncols = len(matrix), len(matrix[0])
    out = []
    for r1, r2 in combinations(range(nrows), 2):
        row1, row2 = matrix[r1], matrix[r2]
        for c1, c2 in combinations(range(ncols), 2):
            out.append(row1[c1] * row2[c2] - row1[c2] * row2[c1])
    return out


def _flattenings(q):
    """The four mode flattenings of a 3x3x3x3 nested-list tensor."""
    flats = []
    for mode in range(4):
        rows = []
        for i in range(3):
            row = []
            for idx in product(range(3), repeat=3):
                full = list(idx)
                full.insert(mode, i)
                a, b, c, d = full
                row.append(q[a][b][c][d])
            rows.append(row)
        flats.append(rows)
    return flats


def rank_one_certificates(
    ts: TrifocalSlices, motions=None, tol: float = TOL
) -> ConstraintReport:
    """Rank-one structure of the adjugate sum and the block 4-tensor.

    Intrinsic checks need no motions; when the ground-truth motion pair is
    supplied, entrywise equality with the closed forms is also verified.
    """
    report = ConstraintReport()
    asum = [
        [ts.a[0][i][j] + ts.a[1][i][j] + ts.a[2][i][j] for j in range(3)]
        for i in range(3)
    ]
    adj_asum = adjugate(asum)
    report.add("adjugate-sum-rank1", _rank_one_minors(adj_asum), tol)

    q = _block_tensor(ts)
    res = []
    for flat in _flattenings(q):
        res.extend(_rank_one_minors(flat))
    report.add("block-tensor-rank1", res, tol)

    if motions is not None:
        a, b = motions
        u, w = list(a.u), list(b.u)
        u_bar = [-sum(a.r[i][j] * u[i] for i in range(3)) for j in range(3)]
        w_bar = [-sum(b.r[i][j] * w[i] for i in range(3)) for j in range(3)]
        coef = _dot(u_bar, w_bar)
        target = [[coef * ui * wj for wj in w] for ui in u]
        report.add("adjugate-sum-closed-form", _mat_diff(adj_asum, target), tol)
        res = []
        for i, j, p, qq in product(range(3), repeat=4):
            res.append(q[i][j][p][qq] - u[i] * w[j] * w_bar[p] * u_bar[qq])
        report.add("block-tensor-closed-form", res, tol)
    return report


# ---------------------------------------------------------------------------
# Aggregate


def check_all(tensor: FocalTensor, tol: float = TOL) -> ConstraintReport:
    """All intrinsic constraint families on a (2,1,2) tensor, after scaling
    to unit max-abs entry.  Pass iff every family is within tol."""
    if tensor.signature != (2, 1, 2) or tensor.dim != 4:
        raise ValueError("check_all expects a dim-4 tensor of signature (2,1,2)")
    ts = TrifocalSlices.from_tensor(tensor)
    report = ConstraintReport()
    mx = ts.max_abs()
    if mx == 0:
        report.flags["rank_deficient"] = True
        report.add("det-cubics", [0], tol)
        return report
    ts = ts.scaled(1 / mx if not is_exact(mx) else Fraction(1) / Fraction(mx))

    slice_ranks = [linalg.rank(ti) for ti in ts.t]
    if any(rk < 2 for rk in slice_ranks):
        report.flags["rank_deficient"] = True
    report.flags["slice_ranks"] = slice_ranks

    report.add("det-cubics", trifocal_det_cubics(ts), tol)
    right, left = epipolar_sextics(ts)
    report.add("epipolar-sextics-right", right, tol)
    report.add("epipolar-sextics-left", left, tol)
    report.add("braid", [braid_residual(ts)], tol)
    for fam in rank_one_certificates(ts, tol=tol).families:
        report.families.append(fam)
    return report
