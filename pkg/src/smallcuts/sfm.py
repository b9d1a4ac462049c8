"""Submodular function minimization backends.

Two interchangeable backends share the :func:`sfm_minimize` contract:

``exhaustive``
    evaluates every subset; exact, and among minimizers returns the one whose
    membership vector is lexicographically smallest in ground order.
``mnp``
    the Fujishige-Wolfe minimum-norm-point algorithm.  Because the functions
    here are integer valued, a candidate set is accepted only once the gap
    between its value and the lower bound ``sum(min(x_i, 0))`` drops below 1/2;
    the returned value is then re-evaluated exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import BackendError, InputError
from .ground import GroundSet, Mask

BatchFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class GenericSetFn:
    """An arbitrary integer set function; callers state any structural assumptions."""

    ground: GroundSet
    func: Callable[[Mask], int]
    batch: Optional[BatchFn] = None

    def __call__(self, mask: Mask) -> int:
        return int(self.func(mask))

    def all_values(self) -> np.ndarray:
        size = 1 << self.ground.n
        masks = np.arange(size, dtype=np.int64)
        if self.batch is not None:
            return np.asarray(self.batch(masks), dtype=np.int64)
        return np.fromiter((self.func(int(m)) for m in masks), dtype=np.int64, count=size)


@dataclass(frozen=True)
class SfmBackend:
    tag: str = "exhaustive"
    tolerance: float = 0.5
    max_iter: int = 5000

    def __post_init__(self) -> None:
        if self.tag not in ("exhaustive", "mnp"):
            raise InputError(f"unknown backend {self.tag!r} (expected exhaustive or mnp)")
        if not 0 < self.tolerance <= 0.5:
            raise InputError("mnp tolerance must lie in (0, 1/2]")

    @classmethod
    def parse(cls, name: str) -> SfmBackend:
        aliases = {"exhaustive": "exhaustive", "mnp": "mnp", "min-norm-point": "mnp"}
        try:
            return cls(aliases[name])
        except KeyError:
            raise InputError(f"unknown backend {name!r}") from None


EXHAUSTIVE = SfmBackend("exhaustive")
MIN_NORM_POINT = SfmBackend("mnp")


def sfm_minimize(g: GenericSetFn, backend: SfmBackend = EXHAUSTIVE) -> tuple[Mask, int]:
    """Return ``(minimizer, minimum)`` of the submodular function ``g``."""
    if backend.tag == "exhaustive":
        return exhaustive_minimize(g)
    res = mnp_minimize(g, tolerance=backend.tolerance, max_iter=backend.max_iter)
    return res.mask, res.value


def exhaustive_minimize(g: GenericSetFn) -> tuple[Mask, int]:
    m = g.ground.n
    values = g.all_values()
    best = values.min()
    cands = np.nonzero(values == best)[0]
    if cands.size > 1:
        key = np.zeros(cands.shape, dtype=np.int64)
        for i in range(m):
            key |= ((cands >> i) & 1) << (m - 1 - i)
        cands = cands[np.argmin(key)]
    else:
        cands = cands[0]
    return int(cands), int(best)


# --------------------------------------------------------------------------
# Fujishige-Wolfe


@dataclass(frozen=True)
class MnpResult:
    mask: Mask
    value: int
    lower_bound: float
    gap: float
    iterations: int


def _greedy_vertex(w: np.ndarray, g: Callable[[Mask], int], offset: int) -> np.ndarray:
    """Vertex of the base polytope of ``g - offset`` minimizing ``<w, q>``."""
    order = np.argsort(w, kind="stable")
    q = np.empty(len(w), dtype=float)
    prefix = 0
    prev = 0
    for i in order:
        prefix |= 1 << int(i)
        val = g(prefix) - offset
        q[i] = val - prev
        prev = val
    return q


def _affine_minimizer(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Min-norm point of the affine hull of the rows of ``points``."""
    k = points.shape[0]
    gram = points @ points.T
    kkt = np.zeros((k + 1, k + 1))
    kkt[0, 1:] = 1.0
    kkt[1:, 0] = 1.0
    kkt[1:, 1:] = gram
    rhs = np.zeros(k + 1)
    rhs[0] = 1.0
    sol = np.linalg.lstsq(kkt, rhs, rcond=None)[0]
    alpha = sol[1:]
    return alpha, alpha @ points


def mnp_minimize(g: GenericSetFn, tolerance: float = 0.5, max_iter: int = 5000) -> MnpResult:
    """Minimize ``g`` with the minimum-norm-point algorithm and certify the answer."""
    m = g.ground.n
    memo: dict[Mask, int] = {}

    def ev(mask: Mask) -> int:
        v = memo.get(mask)
        if v is None:
            v = memo[mask] = g(mask)
        return v

    offset = ev(0)
    if m == 0:
        return MnpResult(0, offset, float(offset), 0.0, 0)

    eps = 1e-10
    x = _greedy_vertex(np.zeros(m), ev, offset)
    pts = x[None, :]
    lam = np.ones(1)
    iterations = 0
    for iterations in range(1, max_iter + 1):
        q = _greedy_vertex(x, ev, offset)
        scale = max(1.0, float(q @ q), float(np.max(np.einsum("ij,ij->i", pts, pts))))
        if x @ x - x @ q <= eps * scale:
            break
        if np.any(np.all(np.abs(pts - q) < 1e-12, axis=1)):
            break
        pts = np.vstack([pts, q])
        lam = np.append(lam, 0.0)
        while True:
            alpha, y = _affine_minimizer(pts)
            if np.all(alpha > eps):
                lam, x = alpha, y
                break
            neg = alpha <= eps
            denom = lam[neg] - alpha[neg]
            ok = denom > eps
            theta = float(np.min(lam[neg][ok] / denom[ok])) if np.any(ok) else 0.0
            theta = min(max(theta, 0.0), 1.0)
            lam = (1 - theta) * lam + theta * alpha
            keep = lam > eps
            pts, lam = pts[keep], lam[keep]
            lam = lam / lam.sum()
            x = lam @ pts
            if len(lam) == 1:
                break
    else:
        raise BackendError(
            f"min-norm-point did not converge within {max_iter} iterations; "
            "use the exhaustive backend"
        )

    lower = float(np.minimum(x, 0.0).sum()) + offset
    order = np.argsort(x, kind="stable")
    best_mask, best_val = 0, ev(0)
    prefix = 0
    for i in order:
        prefix |= 1 << int(i)
        val = ev(prefix)
        if val < best_val:
            best_mask, best_val = prefix, val
    gap = best_val - lower
    if gap >= tolerance:
        raise BackendError(
            f"min-norm-point gap {gap:.3g} is not below {tolerance}; use the exhaustive backend"
        )
    return MnpResult(best_mask, int(g(best_mask)), lower, gap, iterations)
