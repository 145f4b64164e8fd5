"""Adaptive planar quadrature for densities with isolated rational singularities.

The engine evaluates integrals of the form

    I = integral  prod_k S_k(u) * m(u) * g(u)  da(u)

where each singular factor S_k is 1/(u - s) or 1/conj(u - s), m is a smooth
bounded multiplier and g is a DensitySpec.  Strategy:

* a dyadic block (2x2 cells of a fixed quadtree depth) is excised around each
  singular point; inside the block the integral is taken in polar coordinates
  centred at the point, where the area Jacobian cancels one singular factor
  and radial integrals split exactly at the radii where region boundaries
  cross the ray, so the indicator part of g never crosses a quadrature panel;
* the remainder is covered by an adaptive quadtree whose cells are classified
  geometrically against every region: cells on which g is constant use a
  tensor 5-point Gauss-Legendre rule, cells straddling at most one curved
  boundary use the exact intersection area with a midpoint value of the
  smooth part, and refinement is driven by two-level differences;
* cell contributions are accumulated with a fixed-order pairwise summation,
  so results are bit-identical for identical inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .density import DensitySpec, clear_radius, eval_density
from .geometry import INSIDE, OUTSIDE, STRADDLE, Disk

__all__ = [
    "QuadratureResult", "DiagonalMass", "InvalidPointError", "ToleranceError",
    "QuadratureError", "TolNotReached", "integrate_singular",
    "integrate_bi_singular", "cauchy_transform", "integrate_diagonal",
    "radial_inverse_square_integral", "disc_mass",
]


class QuadratureError(RuntimeError):
    """Engine could not produce a meaningful result."""


class TolNotReached(QuadratureError):
    """Refinement budget ran out with the error estimate above tolerance."""

    def __init__(self, message, value=None, error_estimate=None):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


class InvalidPointError(ValueError):
    """Evaluation point violates a precondition (e.g. diagonal point inside support)."""


class ToleranceError(ValueError):
    """Requested tolerance is not a positive finite number."""


def _check_tol(tol: float) -> float:
    if not (isinstance(tol, (int, float)) and math.isfinite(tol) and tol > 0.0):
        raise ToleranceError(f"tolerance must be positive and finite, got {tol!r}")
    return float(tol)


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float
    cells: int
    evaluations: int


@dataclass(frozen=True)
class DiagonalMass:
    """Outcome of the diagonal mass integral (1/pi) * integral g(u) |u-w|^-2 da.

    ``divergent`` follows the dichotomy: True when the partial sum over
    geometric annuli crossed the divergence threshold, False when the
    remaining tail is known to vanish (or decays geometrically below tol).
    ``value`` is the finite integral, or the partial sum at stopping.
    """

    divergent: bool
    value: float
    error_estimate: float
    octaves: int

    @property
    def is_finite(self) -> bool:
        return not self.divergent


_GL5_X, _GL5_W = leggauss(5)
_GL7_X, _GL7_W = leggauss(7)
_GL15_X, _GL15_W = leggauss(15)

_T5X, _T5Y = np.meshgrid(_GL5_X, _GL5_X, indexing="ij")
_T5X = _T5X.ravel()
_T5Y = _T5Y.ravel()
_T5W = np.outer(_GL5_W, _GL5_W).ravel()
_CENTER_IDX = 12  # node (2, 2) of the 5x5 tensor rule sits at the cell centre

Factor = tuple[str, complex]


def _factor_values(pts: np.ndarray, factors: tuple[Factor, ...], multiplier) -> np.ndarray:
    F = np.ones_like(pts, dtype=complex)
    for kind, s in factors:
        d = pts - s
        if kind == "recip":
            F = F / d
        else:
            F = F / np.conj(d)
    if multiplier is not None:
        F = F * multiplier(pts)
    return F


# ---------------------------------------------------------------------------
# Radial columns: integrals along a ray with g piecewise constant


def _ray_segments(g: DensitySpec, sx: float, sy: float, ct: float, st: float,
                  r_lo: float, r_hi: float, extra: tuple[float, ...] = ()):
    """Segments (a, b, g_value) of [r_lo, r_hi] on which g is constant along the ray."""
    crossings = [r_lo, r_hi]
    for region, _ in g.terms:
        crossings.extend(region.ray_crossings(sx, sy, ct, st))
    if g.grid is not None:
        crossings.extend(g.grid.ray_crossings(sx, sy, ct, st))
    crossings.extend(
        Disk(g.support_center.real, g.support_center.imag,
             g.support_radius).ray_crossings(sx, sy, ct, st))
    for t in extra:
        crossings.append(t)
    pts = sorted(t for t in crossings if r_lo < t < r_hi)
    pts = [r_lo] + pts + [r_hi]
    edges = []
    last = pts[0]
    for t in pts[1:]:
        if t - last > 1e-15 * max(abs(t), abs(last)):
            edges.append((last, t))
            last = t
    if not edges:
        return []
    mids = np.array([0.5 * (a + b) for a, b in edges])
    us = (sx + mids * ct) + 1j * (sy + mids * st)
    gv = np.atleast_1d(eval_density(g, us))
    return [(a, b, float(v)) for (a, b), v in zip(edges, gv) if v != 0.0]


def _column_exact(g: DensitySpec, sx: float, sy: float, ct: float, st: float,
                  r_lo: float, r_hi: float, weight: str) -> float:
    """Exact radial integral of g times r ('mass') or 1/r ('invsq')."""
    total = 0.0
    for a, b, gv in _ray_segments(g, sx, sy, ct, st, r_lo, r_hi):
        if weight == "mass":
            total += gv * 0.5 * (b * b - a * a)
        else:
            total += gv * math.log(b / a)
    return total


def _column_gl(g: DensitySpec, s: complex, ct: float, st: float, r_hi: float,
               fvec, seg_tol: float, extra: tuple[float, ...]) -> tuple[complex, float, int]:
    """Adaptive radial integral of fvec(r) * g along a ray from s, split at g breakpoints."""
    segs = _ray_segments(g, s.real, s.imag, ct, st, 0.0, r_hi, extra)
    total = 0.0 + 0.0j
    err = 0.0
    evals = 0
    stack = [(a, b, gv, 0) for a, b, gv in reversed(segs)]
    while stack:
        a, b, gv, depth = stack.pop()
        h = 0.5 * (b - a)
        mid = 0.5 * (a + b)
        r15 = mid + h * _GL15_X
        r7 = mid + h * _GL7_X
        f15 = fvec(r15)
        f7 = fvec(r7)
        evals += 22
        v15 = h * np.dot(_GL15_W, f15)
        v7 = h * np.dot(_GL7_W, f7)
        d = abs(v15 - v7)
        if d <= seg_tol or depth >= 10 or (b - a) <= 1e-14 * r_hi:
            total += gv * v15
            err += abs(gv) * d
        else:
            stack.append((mid, b, gv, depth + 1))
            stack.append((a, mid, gv, depth + 1))
    return total, err, evals


def _adaptive_1d(f, breaks: list[float], tol: float, max_depth: int = 24):
    """Adaptive GL15/GL7 integration of a scalar callable over consecutive intervals.

    ``f(x)`` returns (value, error, evaluations); node errors are propagated
    into the total estimate alongside the two-level rule differences.
    """
    total = 0.0 + 0.0j
    err_total = 0.0
    evals = 0
    span = breaks[-1] - breaks[0]
    stack = []
    for a, b in zip(breaks[:-1], breaks[1:]):
        if b > a:
            stack.append((a, b, tol * (b - a) / span, 0))
    stack.reverse()
    while stack:
        a, b, tol_i, depth = stack.pop()
        h = 0.5 * (b - a)
        mid = 0.5 * (a + b)
        v15 = 0.0 + 0.0j
        v7 = 0.0 + 0.0j
        node_err = 0.0
        for x, wgt in zip(_GL15_X, _GL15_W):
            v, e, n = f(mid + h * x)
            v15 += wgt * v
            node_err += wgt * e
            evals += n
        for x, wgt in zip(_GL7_X, _GL7_W):
            v, e, n = f(mid + h * x)
            v7 += wgt * v
            node_err += wgt * e
            evals += n
        v15 *= h
        v7 *= h
        d = abs(v15 - v7)
        if d <= tol_i or depth >= max_depth or (b - a) <= 1e-12 * span:
            total += v15
            err_total += d + h * node_err
        else:
            stack.append((mid, b, 0.5 * tol_i, depth + 1))
            stack.append((a, mid, 0.5 * tol_i, depth + 1))
    return total, err_total, evals


# ---------------------------------------------------------------------------
# Polar patches over excised blocks


def _block_exit_radius(sx: float, sy: float, ct: float, st: float,
                       bx0: float, bx1: float, by0: float, by1: float) -> float:
    if ct > 1e-300:
        tx = (bx1 - sx) / ct
    elif ct < -1e-300:
        tx = (bx0 - sx) / ct
    else:
        tx = math.inf
    if st > 1e-300:
        ty = (by1 - sy) / st
    elif st < -1e-300:
        ty = (by0 - sy) / st
    else:
        ty = math.inf
    return max(min(tx, ty), 0.0)


def _polar_patch(g: DensitySpec, s: complex, cancel: str | None,
                 rest: tuple[Factor, ...], multiplier, block, tol: float,
                 extra_radii: tuple[float, ...]):
    """Integral over an axis-aligned block around s, in polar coordinates at s.

    The Jacobian r cancels the singular factor at s (``cancel``); remaining
    factors and the multiplier stay in the radial integrand.
    """
    bx0, bx1, by0, by1 = block
    sx, sy = s.real, s.imag
    corners = []
    for cx in (bx0, bx1):
        for cy in (by0, by1):
            corners.append(math.atan2(cy - sy, cx - sx))
    corners = sorted(set(corners))
    breaks = corners + [corners[0] + 2.0 * math.pi]
    n_cols_budget = max(len(breaks) - 1, 1)
    seg_tol = tol / (4.0 * math.pi)

    def column(theta: float):
        ct, st = math.cos(theta), math.sin(theta)
        rmax = _block_exit_radius(sx, sy, ct, st, bx0, bx1, by0, by1)
        if rmax <= 0.0:
            return 0.0 + 0.0j, 0.0, 0
        e = complex(ct, st)
        if cancel == "recip":
            phase = complex(ct, -st)
        elif cancel == "recip_conj":
            phase = e
        else:
            phase = 1.0 + 0.0j

        def fvec(r):
            u = s + r * e
            F = _factor_values(u, rest, multiplier)
            if cancel is None:
                F = F * r
            return F * phase

        return _column_gl(g, s, ct, st, rmax, fvec, seg_tol / n_cols_budget, extra_radii)

    return _adaptive_1d(column, breaks, tol)


# ---------------------------------------------------------------------------
# Adaptive quadtree over the support square


class _Engine:
    def __init__(self, g: DensitySpec, factors: tuple[Factor, ...], multiplier,
                 budget: int, max_depth: int):
        self.g = g
        self.factors = factors
        self.multiplier = multiplier
        self.budget = budget
        self.max_depth = max_depth
        self.cx = g.support_center.real
        self.cy = g.support_center.imag
        self.half = g.support_radius
        self.evals = 0
        self.leaves: dict[tuple[int, int, int], list] = {}
        # Blocks live on the dyadic grid as integer index triples (depth, i0, j0)
        # spanning columns [i0, i0+2) and rows [j0, j0+2); keeping them integral
        # makes every containment test exact at any refinement depth.
        self.blocks: list[tuple[int, int, int]] = []
        self.block_depth = 0

    # -- geometry helpers

    def _bounds(self, key):
        depth, ix, iy = key
        h = 2.0 * self.half / (1 << depth)
        x0 = self.cx - self.half + ix * h
        y0 = self.cy - self.half + iy * h
        return x0, x0 + h, y0, y0 + h

    def set_blocks(self, points: list[complex]) -> list[tuple[complex, tuple]]:
        """Excise an aligned 2x2 cell block around each point inside the root square."""
        pts = [p for p in points
               if abs(p.real - self.cx) <= self.half and abs(p.imag - self.cy) <= self.half]
        if not pts:
            return []
        seps = [abs(a - b) for i, a in enumerate(pts) for b in pts[i + 1:] if a != b]
        d = 4
        if seps:
            sep = min(seps)
            if sep > 0.0:
                d = max(4, math.ceil(math.log2(12.0 * self.half / sep)))
        d = min(d, self.max_depth - 2)
        self.block_depth = d
        n = 1 << d
        h = 2.0 * self.half / n
        out = []
        for p in pts:
            tx = (p.real - (self.cx - self.half)) / h
            ty = (p.imag - (self.cy - self.half)) / h
            i0 = min(max(int(math.floor(tx - 0.5)), 0), n - 2)
            j0 = min(max(int(math.floor(ty - 0.5)), 0), n - 2)
            overlap = any(i0 < bi + 2 and i0 + 2 > bi and j0 < bj + 2 and j0 + 2 > bj
                          for _, bi, bj in self.blocks)
            if overlap:
                continue  # near-coincident points share the earlier block (best effort)
            self.blocks.append((d, i0, j0))
            rect = (self.cx - self.half + i0 * h, self.cx - self.half + (i0 + 2) * h,
                    self.cy - self.half + j0 * h, self.cy - self.half + (j0 + 2) * h)
            out.append((p, rect))
        return out

    def _block_relation(self, key) -> int:
        """1 when the cell is inside some block, 0 when disjoint from all, -1 overlap."""
        depth, ix, iy = key
        for bd, bi, bj in self.blocks:
            if depth >= bd:
                sh = depth - bd
                if bi <= ix >> sh < bi + 2 and bj <= iy >> sh < bj + 2:
                    return 1
            else:
                sh = bd - depth
                lx, hx = ix << sh, (ix + 1) << sh
                ly, hy = iy << sh, (iy + 1) << sh
                if lx < bi + 2 and hx > bi and ly < bj + 2 and hy > bj:
                    if bi <= lx and hx <= bi + 2 and bj <= ly and hy <= bj + 2:
                        return 1
                    return -1
        return 0

    def _materialize(self, key, out: list) -> None:
        rel = self._block_relation(key)
        if rel == 0:
            out.append(key)
        elif rel == -1:
            depth, ix, iy = key
            for dx in (0, 1):
                for dy in (0, 1):
                    self._materialize((depth + 1, 2 * ix + dx, 2 * iy + dy), out)
        # rel == 1: covered by a polar patch

    # -- classification and evaluation

    def _classify(self, bounds):
        """(kind, payload): 'const' with g value, or 'mass' with exact/sampled masses."""
        x0, x1, y0, y1 = bounds
        any_straddle = False
        curved = 0
        statuses = []
        for region, coeff in self.g.terms:
            st = region.classify_cell(x0, x1, y0, y1)
            statuses.append(st)
            if st == STRADDLE:
                any_straddle = True
                if region.curved:
                    curved += 1
        grid = self.g.grid
        grid_const = 0.0
        grid_straddle = False
        if grid is not None:
            gx0, gx1, gy0, gy1 = grid.bbox
            if x1 <= gx0 or x0 >= gx1 or y1 <= gy0 or y0 >= gy1:
                grid_const = 0.0
            else:
                s = grid.spacing
                i0 = math.floor((x0 - grid.origin_x) / s)
                j0 = math.floor((y0 - grid.origin_y) / s)
                i1 = math.ceil((x1 - grid.origin_x) / s)
                j1 = math.ceil((y1 - grid.origin_y) / s)
                if (i1 - i0 == 1 and j1 - j0 == 1 and x0 >= gx0 and x1 <= gx1
                        and y0 >= gy0 and y1 <= gy1):
                    grid_const = float(grid.values[int(j0), int(i0)])
                else:
                    grid_straddle = True
        if not any_straddle and not grid_straddle:
            gc = grid_const
            for (region, coeff), st in zip(self.g.terms, statuses):
                if st == INSIDE:
                    gc += coeff
            return "const", gc
        area = (x1 - x0) * (y1 - y0)
        if curved <= 1:
            mass = 0.0
            absmass = 0.0
            for (region, coeff), st in zip(self.g.terms, statuses):
                if st == OUTSIDE:
                    continue
                a = region.cell_area(x0, x1, y0, y1) if st == STRADDLE else area
                mass += coeff * a
                absmass += abs(coeff) * a
            if grid is not None:
                gm = grid.cell_mass(x0, x1, y0, y1) if grid_straddle else grid_const * area
                mass += gm
                absmass += gm
            return "mass", (mass, absmass, 0.0)
        # Two or more distinct curved boundaries through one cell: sampled
        # masses.  Sampling can miss thin slivers between the sample points
        # entirely, so the spread is floored by the worst density range the
        # straddling terms could produce, which forces refinement here.
        xs = x0 + (np.arange(4) + 0.5) * (x1 - x0) / 4.0
        ys = y0 + (np.arange(4) + 0.5) * (y1 - y0) / 4.0
        uu = (xs[None, :] + 1j * ys[:, None]).ravel()
        gv = np.atleast_1d(eval_density(self.g, uu))
        self.evals += gv.size
        range_bound = sum(abs(coeff) for (region, coeff), st
                          in zip(self.g.terms, statuses) if st == STRADDLE)
        mass = float(np.mean(gv)) * area
        absmass = float(np.mean(np.abs(gv))) * area
        spread = max(float(gv.max() - gv.min()), range_bound) * area
        return "mass", (mass, absmass, spread)

    def _evaluate_batch(self, keys: list) -> dict:
        """Classify and evaluate a batch of cells; returns key -> leaf record.

        Leaf record: [value, err, kind, aux] with kind 'const' or 'mass'.
        """
        const_keys = []
        const_g = []
        const_bounds = []
        mass_keys = []
        mass_data = []
        mass_bounds = []
        for key in keys:
            b = self._bounds(key)
            kind, payload = self._classify(b)
            if kind == "const":
                if payload == 0.0:
                    continue
                const_keys.append(key)
                const_g.append(payload)
                const_bounds.append(b)
            else:
                mass, absmass, spread = payload
                if absmass <= 1e-300 and spread <= 1e-300:
                    continue
                mass_keys.append(key)
                mass_data.append(payload)
                mass_bounds.append(b)
        out = {}
        if const_keys:
            nb = np.asarray(const_bounds)
            xm = 0.5 * (nb[:, 0] + nb[:, 1])
            ym = 0.5 * (nb[:, 2] + nb[:, 3])
            hx = 0.5 * (nb[:, 1] - nb[:, 0])
            hy = 0.5 * (nb[:, 3] - nb[:, 2])
            pts = (xm[:, None] + hx[:, None] * _T5X[None, :]) + 1j * (
                ym[:, None] + hy[:, None] * _T5Y[None, :])
            F = _factor_values(pts, self.factors, self.multiplier)
            self.evals += F.size
            area4 = hx * hy  # cell area / 4
            vals = (F @ _T5W) * area4
            mids = F[:, _CENTER_IDX] * (4.0 * area4)
            gc = np.asarray(const_g)
            for i, key in enumerate(const_keys):
                v = gc[i] * vals[i]
                e = 0.5 * abs(gc[i]) * abs(vals[i] - mids[i])
                out[key] = [v, e, "const", gc[i]]
        if mass_keys:
            nb = np.asarray(mass_bounds)
            xm = 0.5 * (nb[:, 0] + nb[:, 1])
            ym = 0.5 * (nb[:, 2] + nb[:, 3])
            pts = np.stack([
                xm + 1j * ym,
                nb[:, 0] + 1j * nb[:, 2],
                nb[:, 0] + 1j * nb[:, 3],
                nb[:, 1] + 1j * nb[:, 2],
                nb[:, 1] + 1j * nb[:, 3],
            ], axis=1)
            F = _factor_values(pts, self.factors, self.multiplier)
            self.evals += F.size
            for i, key in enumerate(mass_keys):
                mass, absmass, spread = mass_data[i]
                fc = F[i, 0]
                v = fc * mass
                dF = float(np.max(np.abs(F[i, 1:] - fc)))
                e = 0.5 * dF * absmass + 0.5 * spread * abs(fc)
                out[key] = [v, e, "mass", (mass, absmass, spread)]
        return out

    def run(self, tol: float, init_depth: int = 2) -> tuple[complex, float]:
        roots: list = []
        n0 = 1 << init_depth
        for ix in range(n0):
            for iy in range(n0):
                self._materialize((init_depth, ix, iy), roots)
        self.leaves = self._evaluate_batch(roots)
        while self.evals < self.budget:
            n = max(len(self.leaves), 1)
            errs = np.array([rec[1] for rec in self.leaves.values()]) if self.leaves else np.zeros(0)
            total_err = float(np.sum(np.sort(errs))) if errs.size else 0.0
            if total_err <= tol:
                break
            share = tol / (2.0 * n)
            batch = sorted(
                (k for k, rec in self.leaves.items() if rec[1] > share and k[0] < self.max_depth),
                key=lambda k: (-self.leaves[k][1], k))
            if not batch:
                break
            batch = batch[:max(2048, len(self.leaves) // 2)]
            child_lists: dict = {}
            all_children: list = []
            for key in batch:
                depth, ix, iy = key
                kids: list = []
                for dx in (0, 1):
                    for dy in (0, 1):
                        self._materialize((depth + 1, 2 * ix + dx, 2 * iy + dy), kids)
                child_lists[key] = kids
                all_children.extend(kids)
            created = self._evaluate_batch(all_children)
            for key in batch:
                parent = self.leaves.pop(key)
                kid_sum = 0.0 + 0.0j
                kids = [k for k in child_lists[key] if k in created]
                for k in kids:
                    kid_sum += created[k][0]
                err_obs = abs(kid_sum - parent[0])
                for k in kids:
                    rec = created[k]
                    base = 0.25 * err_obs
                    if rec[2] == "mass" and rec[3][2] > 0.0:
                        base = max(base, rec[1])
                    rec[1] = base
                    self.leaves[k] = rec
        keys = sorted(self.leaves)
        vals = np.array([self.leaves[k][0] for k in keys], dtype=complex)
        errs = np.array([self.leaves[k][1] for k in keys], dtype=float)
        value = complex(np.sum(vals)) if vals.size else 0.0 + 0.0j
        err = float(np.sum(errs)) if errs.size else 0.0
        return value, err


# ---------------------------------------------------------------------------
# Public operations


def integrate_singular(g: DensitySpec, factors, tol: float, multiplier=None,
                       attention=(), budget: int = 2_000_000,
                       max_depth: int = 26) -> QuadratureResult:
    """Integral of prod(factors) * multiplier * g over the plane.

    ``factors`` is a sequence of ('recip'|'recip_conj', point); ``attention``
    lists additional points around which the integrand is merely non-smooth
    (they get an excised block and a polar patch, without factor cancellation).
    """
    tol = _check_tol(tol)
    factors = tuple((k, complex(s)) for k, s in factors)
    engine = _Engine(g, factors, multiplier, budget, max_depth)
    seen = set()
    points = []
    kinds = {}
    for kind, s in factors:
        if s not in seen:
            seen.add(s)
            points.append(s)
            kinds[s] = kind
        # a second factor at the same point keeps the first cancellation
    for p in attention:
        p = complex(p)
        if p not in seen:
            seen.add(p)
            points.append(p)
            kinds[p] = None
    placed = engine.set_blocks(points)
    patch_tol = 0.5 * tol / len(placed) if placed else 0.0
    tree_tol = 0.5 * tol if placed else tol
    value = 0.0 + 0.0j
    err = 0.0
    cells = 0
    evals = 0
    for p, rect in placed:
        rest = tuple((k, s) for k, s in factors if s != p or kinds[p] is None)
        if kinds[p] is not None:
            # drop exactly one factor at p; keep duplicates beyond the first
            dropped = False
            rest = []
            for k, s in factors:
                if s == p and k == kinds[p] and not dropped:
                    dropped = True
                    continue
                rest.append((k, s))
            rest = tuple(rest)
        extra = tuple(abs(q - p) for q in points if q != p)
        v, e, n = _polar_patch(g, p, kinds[p], rest, multiplier, rect, patch_tol, extra)
        value += v
        err += e
        evals += n
        cells += 1
    tv, te = engine.run(tree_tol)
    value += tv
    err += te
    cells += max(len(engine.leaves), 1)
    evals += engine.evals
    if err > tol * (1.0 + 1e-9):
        raise TolNotReached(
            f"error estimate {err:.3e} above tolerance {tol:.3e} "
            f"after {evals} evaluations", complex(value), float(err))
    return QuadratureResult(complex(value), float(err), cells, max(evals, cells))


def integrate_bi_singular(g: DensitySpec, w: complex, lam: complex, tol: float,
                          **kw) -> QuadratureResult:
    """log-kernel integral f_w(lam) = -(1/pi) * integral g(u) / (conj(u-w)(u-lam)) da(u).

    Requires lam != w unless g vanishes on a neighbourhood of w, in which case
    the integrand is bounded and the diagonal value is legitimate.
    """
    w = complex(w)
    lam = complex(lam)
    if lam == w and clear_radius(g, w) <= 0.0:
        raise InvalidPointError(
            "diagonal point inside the support: use integrate_diagonal")
    res = integrate_singular(g, [("recip_conj", w), ("recip", lam)], tol=tol, **kw)
    return QuadratureResult(-res.value / math.pi, res.error_estimate / math.pi,
                            res.cells, res.evaluations)


def cauchy_transform(g: DensitySpec, lam: complex, tol: float, multiplier=None,
                     attention=(), **kw) -> QuadratureResult:
    """Cauchy transform (1/pi) * integral m(u) g(u) / (u - lam) da(u)."""
    lam = complex(lam)
    res = integrate_singular(g, [("recip", lam)], tol=tol, multiplier=multiplier,
                             attention=attention, **kw)
    return QuadratureResult(res.value / math.pi, res.error_estimate / math.pi,
                            res.cells, res.evaluations)


def _octave(g: DensitySpec, w: complex, r_lo: float, r_hi: float, tol: float):
    """(1/pi) * integral of g |u-w|^-2 over the annulus r_lo <= |u-w| <= r_hi."""
    wx, wy = w.real, w.imag

    def column(theta: float):
        v = _column_exact(g, wx, wy, math.cos(theta), math.sin(theta), r_lo, r_hi, "invsq")
        return v, 0.0, 1

    breaks = [0.0, 0.5 * math.pi, math.pi, 1.5 * math.pi, 2.0 * math.pi]
    v, e, n = _adaptive_1d(column, breaks, tol * math.pi)
    return v.real / math.pi, e / math.pi, n


def integrate_diagonal(g: DensitySpec, w: complex, tol: float = 1e-6,
                       divergence_threshold: float = 40.0,
                       max_octaves: int = 1000) -> DiagonalMass:
    """Diagonal mass (1/pi) * integral g(u) |u-w|^-2 da(u) with divergence detection.

    The integral is accumulated over geometric annuli r_k = r_top * 2^-k; the
    partial sum is monotone, so crossing ``divergence_threshold`` certifies
    divergence at any positive Lebesgue density point.  Descent stops early
    when the remaining disc is provably free of support.
    """
    tol = _check_tol(tol)
    w = complex(w)
    cr = clear_radius(g, w)
    r_top = abs(w - g.support_center) + g.support_radius
    acc = 0.0
    err = 0.0
    vals: list[float] = []
    for k in range(max_octaves):
        r_hi = r_top * 2.0 ** (-k)
        if r_hi <= cr:
            return DiagonalMass(False, acc, err, k)
        tol_k = max(tol / (2.0 * (k + 1) * (k + 2)), 1e-13)
        v, e, _ = _octave(g, w, 0.5 * r_hi, r_hi, tol_k)
        acc += v
        err += e
        vals.append(v)
        if acc >= divergence_threshold:
            return DiagonalMass(True, acc, err, k + 1)
        if len(vals) >= 3 and max(vals[-3:]) <= 0.125 * tol:
            # Quiet octaves alone do not certify convergence: the support may
            # resume deeper inside (an island separated from w by a gap), so
            # stop only once the remaining disc is provably free of mass.
            inner, _ = disc_mass(g, w, 0.5 * r_hi, 1e-9)
            if inner <= 1e-12:
                return DiagonalMass(False, acc, err, k + 1)
    raise QuadratureError(
        f"diagonal mass undecided after {max_octaves} octaves (partial sum {acc:.6g})")


def radial_inverse_square_integral(g: DensitySpec, center: complex, r_lo: float,
                                   r_hi: float, tol: float = 1e-8) -> tuple[float, float]:
    """(1/pi) * integral of g |u-c|^-2 over the annulus r_lo <= |u-c| <= r_hi."""
    tol = _check_tol(tol)
    if not (0.0 < r_lo < r_hi):
        raise InvalidPointError("need 0 < r_lo < r_hi")
    total = 0.0
    err = 0.0
    hi = r_hi
    k = 0
    while hi > r_lo:
        lo = max(hi * 0.5, r_lo)
        tol_k = max(tol / (2.0 * (k + 1) * (k + 2)), 1e-14)
        v, e, _ = _octave(g, center, lo, hi, tol_k)
        total += v
        err += e
        hi = lo
        k += 1
    return total, err


def disc_mass(g: DensitySpec, center: complex, radius: float,
              tol: float = 1e-9) -> tuple[float, float]:
    """integral of g over the disc D(center, radius) by exact radial columns."""
    tol = _check_tol(tol)
    cx, cy = complex(center).real, complex(center).imag

    def column(theta: float):
        v = _column_exact(g, cx, cy, math.cos(theta), math.sin(theta), 0.0, radius, "mass")
        return v, 0.0, 1

    breaks = [0.0, 0.5 * math.pi, math.pi, 1.5 * math.pi, 2.0 * math.pi]
    v, e, _ = _adaptive_1d(column, breaks, tol)
    return v.real, e
