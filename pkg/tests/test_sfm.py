import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import path_graph, submasks
from smallcuts.errors import BackendError, InputError
from smallcuts.ground import GroundSet
from smallcuts.instances import erdos_renyi, random_gf2_matrix
from smallcuts.interpolation import restrict
from smallcuts.oracles import (
    Gf2Matrix,
    cut_rank_oracle,
    edge_cut_oracle,
    matroid_connectivity_oracle,
)
from smallcuts.sfm import (
    EXHAUSTIVE,
    MIN_NORM_POINT,
    GenericSetFn,
    SfmBackend,
    exhaustive_minimize,
    mnp_minimize,
    sfm_minimize,
)


def test_pinned_path_restriction():
    f = edge_cut_oracle(path_graph("abc"))
    g = restrict(f, pinned=0b001, free=0b010)
    assert sfm_minimize(g) == (0, 1)
    assert sfm_minimize(g, MIN_NORM_POINT)[1] == 1


def test_constant_zero_picks_empty_set():
    g = GenericSetFn(GroundSet.of_size(4), lambda x: 0)
    assert exhaustive_minimize(g) == (0, 0)


def test_identity_matroid_minimum():
    eye = Gf2Matrix.from_lists([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    lam = matroid_connectivity_oracle(eye)
    assert sfm_minimize(GenericSetFn(lam.ground, lam)) == (0, 0)


def test_exhaustive_tie_break_is_lexicographic():
    # minimizers {b} and {a, c}: membership (0,1,0) < (1,0,1)
    g = GenericSetFn(GroundSet.of_size(3), lambda x: 0 if x in (0b010, 0b101) else 1)
    assert exhaustive_minimize(g) == (0b010, 0)


def test_backend_parsing():
    assert SfmBackend.parse("min-norm-point") == MIN_NORM_POINT
    with pytest.raises(InputError):
        SfmBackend.parse("simplex")


def test_mnp_reports_budget_exhaustion():
    f = cut_rank_oracle(erdos_renyi(8, 0.5, 3))
    g = GenericSetFn(f.ground, f)
    with pytest.raises(BackendError):
        mnp_minimize(g, max_iter=1)


def _random_restriction(seed):
    rng = np.random.default_rng(seed)
    kind = seed % 3
    if kind == 2:
        f = matroid_connectivity_oracle(random_gf2_matrix(4, 10, 0.5, seed))
    else:
        g = erdos_renyi(10, float(rng.uniform(0.2, 0.8)), seed)
        f = edge_cut_oracle(g) if kind == 0 else cut_rank_oracle(g)
    roles = rng.integers(0, 4, size=f.n)
    pinned = sum(1 << i for i in range(f.n) if roles[i] == 0)
    free = sum(1 << i for i in range(f.n) if roles[i] >= 2)
    return restrict(f, pinned, free)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_mnp_agrees_with_exhaustive(seed):
    g = _random_restriction(seed)
    res = mnp_minimize(g)
    assert res.gap < 0.5
    assert res.value == exhaustive_minimize(g)[1]
    assert g(res.mask) == res.value


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_exhaustive_is_a_true_minimum(seed):
    g = _random_restriction(seed)
    mask, value = sfm_minimize(g, EXHAUSTIVE)
    assert g(mask) == value == min(g(z) for z in submasks(g.ground.full))
