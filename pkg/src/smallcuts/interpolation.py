"""The minimum interpolation ``fstar(S, T) = min { f(X) : S <= X <= V - T }``.

``fstar`` is evaluated by minimizing the restriction of ``f`` to the free
elements ``V - (S | T)`` with ``S`` pinned in, using a pluggable
:class:`~smallcuts.sfm.SfmBackend`.  Values are cached per ``(S, T)``.
"""

from __future__ import annotations

import numpy as np

from .errors import ContractError
from .ground import GroundSet, Mask, bits, popcount
from .oracles import ConnectivityFn
from .sfm import EXHAUSTIVE, GenericSetFn, SfmBackend, sfm_minimize


class _Embedding:
    """Maps masks over a sub-ground (given by sorted indices) into the full ground."""

    def __init__(self, indices: list[int]) -> None:
        self.indices = indices

    def __call__(self, z: Mask) -> Mask:
        out = 0
        for j, i in enumerate(self.indices):
            if z >> j & 1:
                out |= 1 << i
        return out

    def many(self, zs: np.ndarray) -> np.ndarray:
        out = np.zeros(zs.shape, dtype=np.int64)
        for j, i in enumerate(self.indices):
            out |= ((zs >> j) & 1) << i
        return out


def restrict(f: ConnectivityFn, pinned: Mask, free: Mask) -> GenericSetFn:
    """``Z -> f(pinned | Z)`` with ``Z`` ranging over subsets of ``free``."""
    emb = _Embedding(list(bits(free)))
    sub = f.ground.subset(emb.indices)

    def func(z: Mask) -> int:
        return f(pinned | emb(z))

    def batch(zs: np.ndarray) -> np.ndarray:
        return f.eval_many(pinned | emb.many(zs))

    return GenericSetFn(sub, func, batch if f.n <= 20 else None)


class FStar:
    """Cached evaluator of the minimum interpolation of ``f``."""

    def __init__(self, f: ConnectivityFn, backend: SfmBackend = EXHAUSTIVE) -> None:
        self.f = f
        self.backend = backend
        self._cache: dict[tuple[Mask, Mask], int] = {}

    @property
    def ground(self) -> GroundSet:
        return self.f.ground

    @property
    def n(self) -> int:
        return self.f.n

    @property
    def evaluations(self) -> int:
        """Number of distinct ``(S, T)`` pairs evaluated."""
        return len(self._cache)

    def __call__(self, S: Mask, T: Mask) -> int:
        key = (S, T)
        value = self._cache.get(key)
        if value is not None:
            return value
        if S & T:
            raise ContractError(
                f"fstar needs disjoint sets, got S={{{self.ground.format(S)}}} "
                f"T={{{self.ground.format(T)}}}"
            )
        free = self.ground.full & ~(S | T)
        if free == 0:
            value = self.f(S)
        else:
            _, value = sfm_minimize(restrict(self.f, S, free), self.backend)
        self._cache[key] = value
        return value


def fstar(F: FStar, S: Mask, T: Mask) -> int:
    return F(S, T)


def shrink_support(r: GenericSetFn) -> Mask:
    """Small set ``A`` with ``r(A) = r(ground)`` and ``|A| <= r(ground)``.

    ``r`` must be monotone and submodular with ``r(empty) = 0``.  Elements are
    dropped greedily in ground order whenever the value is unchanged, which
    costs exactly ``n`` evaluations after the initial one.
    """
    current = r.ground.full
    value = r(current)
    for v in range(r.ground.n):
        trial = current & ~(1 << v)
        tv = r(trial)
        if tv > value:
            raise ContractError(
                f"set function is not monotone: removing {r.ground.names[v]} raised it "
                f"from {value} to {tv}"
            )
        if tv == value:
            current = trial
    return current


def find_base(F: FStar, X: Mask, k: int) -> tuple[Mask, Mask]:
    """Return ``(A, B)`` with ``A <= X``, ``B <= V - X``, ``|A|, |B| <= k`` and ``fstar(A, B) = k``."""
    value = F.f(X)
    if value != k:
        raise ContractError(f"find_base needs f(X) = {k}, got {value}")
    ground = F.ground
    outside = ground.full & ~X

    inside_idx = list(bits(X))
    emb_in = _Embedding(inside_idx)
    r = GenericSetFn(ground.subset(inside_idx), lambda z: F(emb_in(z), outside))
    A = emb_in(shrink_support(r))

    outside_idx = list(bits(outside))
    emb_out = _Embedding(outside_idx)
    r2 = GenericSetFn(ground.subset(outside_idx), lambda z: F(A, emb_out(z)))
    B = emb_out(shrink_support(r2))

    if popcount(A) > k or popcount(B) > k or F(A, B) != k:
        raise ContractError("find_base post-condition failed; is f a connectivity function?")
    return A, B
