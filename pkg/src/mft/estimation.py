"""Synthetic scenes, correspondences, and linear tensor recovery.

A correspondence is one image feature per view (points as degree-1
multivectors on indices 1..3, lines as degree-2).  Each correspondence
whose lifts are incident gives one linear equation on the tensor entries;
with enough of them the tensor spans the nullspace of the stacked system.
"""

from __future__ import annotations

import enum
import random
from fractions import Fraction

import numpy as np

from . import linalg
from .coaction import GroupElement
from .euclidean import MotionMode, embed, random_motion
from .exterior import Multivector, index_subsets
from .focal import FocalTensor, contract
from .scalars import is_exact


class DegenerateProjectionError(ValueError):
    pass


class AmbiguousSolutionError(ValueError):
    """Nullspace dimension above 1; carries the measured nullity."""

    def __init__(self, message, nullity):
        super().__init__(message)
        self.nullity = nullity


class SceneKind(enum.Enum):
    EUCLIDEAN = "euclidean"
    GENERAL = "general"


class Scene:
    """Absolute frames for n views, plus the motions when Euclidean."""

    def __init__(self, frames, motions=None, kind=SceneKind.GENERAL):
        self.frames = list(frames)
        self.motions = motions
        self.kind = kind

    def __len__(self):
        return len(self.frames)


class Correspondence:
    """One feature per view; degrees must match the target signature."""

    def __init__(self, features):
        self.features = tuple(features)

    @property
    def degrees(self):
        return tuple(c.degree for c in self.features)


def random_scene(
    n_views: int,
    kind: SceneKind = SceneKind.EUCLIDEAN,
    seed=None,
    mode: MotionMode = MotionMode.FLOAT_HAAR,
    rng=None,
) -> Scene:
    if rng is None:
        rng = random.Random(seed)
    if kind is SceneKind.EUCLIDEAN:
        motions = [random_motion(mode=mode, rng=rng) for _ in range(n_views)]
        return Scene([embed(mo) for mo in motions], motions=motions, kind=kind)
    if kind is SceneKind.GENERAL:
        frames = []
        for _ in range(n_views):
            for _attempt in range(100):
                entries = [
                    [Fraction(rng.randint(-5, 5)) for _ in range(4)] for _ in range(4)
                ]
                try:
                    frames.append(GroupElement(entries))
                    break
                except ValueError:
                    continue
            else:
                raise RuntimeError("failed to sample an invertible frame")
        return Scene(frames, kind=kind)
    raise ValueError(f"unknown scene kind {kind!r}")


# ---------------------------------------------------------------------------
# Projection


def project_point(g: GroupElement, X):
    """Image coordinates of the ambient point X in the view with frame g:
    components 1..3 of g^-1 X, valid when component 0 is nonzero."""
    y = g.inverse().apply(X)
    if y[0] == 0 or (not is_exact(y[0]) and abs(y[0]) < 1e-12):
        raise DegenerateProjectionError("point projects into the base locus")
    return y[1:]


def project_line(g: GroupElement, L: Multivector) -> Multivector:
    """Image of an ambient line (degree-2 multivector): transport by g^-1
    and drop the terms containing index 0."""
    if L.dim != g.dim or L.degree != 2:
        raise ValueError("project_line expects an ambient degree-2 multivector")
    ginv = g.inverse()
    subsets = index_subsets(g.dim, 2)
    coeffs = {}
    for R in subsets:
        if 0 in R:
            continue
        total = 0
        for C in subsets:
            v = L.coeff(C)
            if v != 0:
                total = total + linalg.det(
                    [[ginv.entries[r][c] for c in C] for r in R]
                ) * v
        if total != 0:
            coeffs[R] = total
    return Multivector(g.dim, 2, coeffs)


def point_feature(coords) -> Multivector:
    """Image point as a degree-1 multivector on indices 1..3 of dim 4."""
    return Multivector(4, 1, {(i + 1,): c for i, c in enumerate(coords)})


def line_through(p: Multivector, q: Multivector) -> Multivector:
    """Image line spanned by two image points."""
    return p ^ q


# ---------------------------------------------------------------------------
# Correspondence generators


def _random_ambient_point(rng, exact):
    if exact:
        return [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(4)]
    return [rng.gauss(0, 1) for _ in range(4)]


def _random_image_point(rng, exact):
    if exact:
        return point_feature(
            [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3)]
        )
    return point_feature([rng.gauss(0, 1) for _ in range(3)])


def _projected_features(scene, rng, exact, bound=100):
    """Project a common random ambient point into every view; resample on
    degenerate projections."""
    for _attempt in range(bound):
        X = _random_ambient_point(rng, exact)
        try:
            return [point_feature(project_point(g, X)) for g in scene.frames]
        except DegenerateProjectionError:
            continue
    raise RuntimeError("could not sample a nondegenerate ambient point")


def _line_through_random(p, rng, exact, bound=100):
    for _attempt in range(bound):
        line = line_through(p, _random_image_point(rng, exact))
        if not line.is_zero():
            return line
    raise RuntimeError("could not sample a line through the image point")


def correspondences_bifocal(scene: Scene, count: int, seed=None, rng=None):
    """Matched point pairs seen from a common ambient point."""
    return _generate(scene, count, (1, 1), seed, rng)


def correspondences_trifocal(scene: Scene, count: int, seed=None, rng=None):
    """Line in views 1 and 3 through the matched image point, the point
    itself in view 2."""
    return _generate(scene, count, (2, 1, 2), seed, rng)


def correspondences_quadrifocal(scene: Scene, count: int, seed=None, rng=None):
    """Image lines through the matched image point in all four views."""
    return _generate(scene, count, (2, 2, 2, 2), seed, rng)


def _generate(scene, count, degrees, seed, rng):
    if len(scene.frames) != len(degrees):
        raise ValueError(f"scene has {len(scene.frames)} views, need {len(degrees)}")
    if rng is None:
        rng = random.Random(seed)
    exact = all(
        is_exact(x) for g in scene.frames for row in g.entries for x in row
    )
    out = []
    for _ in range(count):
        points = _projected_features(scene, rng, exact)
        features = []
        for p, d in zip(points, degrees):
            if d == 1:
                features.append(p)
            elif d == 2:
                features.append(_line_through_random(p, rng, exact))
            else:
                raise ValueError(f"unsupported feature degree {d}")
        out.append(Correspondence(features))
    return out


# ---------------------------------------------------------------------------
# Linear system


def linear_rows(signature, correspondences):
    """Coefficient rows of the homogeneous system: row entry at flattened
    cell (J1..Jn) is the product of feature coefficients at those subsets."""
    axes = [index_subsets(4, p, start=1) for p in signature]
    rows = []
    for corr in correspondences:
        if corr.degrees != tuple(signature):
            raise ValueError(
                f"correspondence degrees {corr.degrees} != signature {tuple(signature)}"
            )
        row = []
        _fill_row(axes, corr.features, 0, 1, row)
        rows.append(row)
    return rows


def _fill_row(axes, features, level, acc, row):
    if level == len(axes):
        row.append(acc)
        return
    c = features[level]
    for J in axes[level]:
        _fill_row(axes, features, level + 1, acc * c.coeff(J), row)


def residuals(t: FocalTensor, correspondences):
    """contract(t, features) per correspondence; zero at true matches."""
    return [contract(t, corr.features) for corr in correspondences]


def solve_nullspace(rows, tol: float = 1e-7):
    """One-dimensional nullspace of the stacked system.

    Exact rows use rational elimination; float rows use SVD with singular
    values below tol * s_max counted as zero.  Returns (vector, rank) with
    the vector scaled to unit max-abs and first nonzero entry positive.
    """
    if not rows:
        raise ValueError("no rows")
    ncols = len(rows[0])
    exact = all(is_exact(x) for row in rows for x in row)
    if exact:
        basis = linalg.nullspace([list(r) for r in rows])
        rank = ncols - len(basis)
        if len(basis) != 1:
            raise AmbiguousSolutionError(
                f"nullspace dimension {len(basis)}, expected 1", nullity=len(basis)
            )
        vec = list(basis[0])
    else:
        a = np.asarray(rows, dtype=float)
        # equalize row scales so the rank gap is visible in the spectrum
        norms = np.linalg.norm(a, axis=1)
        norms[norms == 0] = 1.0
        a = a / norms[:, None]
        _, s, vt = np.linalg.svd(a)
        smax = s[0] if len(s) else 0.0
        rank = int(np.sum(s > tol * smax)) if smax > 0 else 0
        nullity = ncols - rank
        if nullity != 1:
            raise AmbiguousSolutionError(
                f"nullspace dimension {nullity}, expected 1", nullity=nullity
            )
        vec = [float(v) for v in vt[-1]]
    mx = max(abs(v) for v in vec)
    vec = [v / mx for v in vec]
    for v in vec:
        if v != 0:
            if (is_exact(v) and v < 0) or (not is_exact(v) and v < -0.0):
                vec = [-x for x in vec]
            break
    return vec, rank


def estimate_tensor(signature, correspondences, tol: float = 1e-7):
    """Recover the focal tensor (up to scale) from matched features."""
    rows = linear_rows(signature, correspondences)
    vec, rank = solve_nullspace(rows, tol=tol)
    return FocalTensor.from_flat(4, signature, vec), rank


def align_scale(estimate: FocalTensor, target: FocalTensor):
    """Least-squares scalar lambda minimizing |lambda e - t|."""
    e = estimate.flat()
    t = target.flat()
    denom = sum(x * x for x in e)
    if denom == 0:
        raise ValueError("cannot align a zero estimate")
    return sum(x * y for x, y in zip(e, t)) / denom


def alignment_error(estimate: FocalTensor, target: FocalTensor):
    """Max-abs entry of lambda e - t at the optimal lambda, after scaling
    the target to unit max-abs."""
    mx = target.max_abs()
    if mx == 0:
        raise ValueError("target tensor is zero")
    t = target.scale(1 / mx if not is_exact(mx) else Fraction(1) / Fraction(mx))
    lam = align_scale(estimate, t)
    return max(abs(lam * x - y) for x, y in zip(estimate.flat(), t.flat()))
