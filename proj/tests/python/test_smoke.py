import math

import pytest

import _fkmix as fk


def test_thresholds():
    assert fk.p_u(1.0, 2.0) == pytest.approx(0.5, abs=1e-8)
    assert fk.p_u(2.0, 2.0) == pytest.approx(2.0 / 3.0, abs=1e-8)
    assert fk.beta_u(2.0, 2.0) == pytest.approx(-math.log(1.0 / 3.0), abs=1e-8)
    pu = fk.p_u(2.0, 3.0)
    assert fk.check_alternate_form(pu - 1e-6, 2.0, 3.0)
    assert not fk.check_alternate_form(pu + 1e-6, 2.0, 3.0)


def test_exact_rc_single_edge():
    g = fk.MultiGraph(2)
    g.add_edge(0, 1)
    params = fk.RcParams(0.5, 2.0)
    dist = fk.ExactRcDistribution(g, fk.BoundaryPartition(2), params)
    assert dist.edge_marginal(0) == pytest.approx(params.phat, abs=1e-12)


def test_tree_phi_matches_path_connectivity():
    # height-2 unary tree is a 2-edge path; root-leaf connectivity is phat^2
    params = fk.RcParams(0.5, 2.0)
    assert fk.tree_phi_regular(1, 2, 0.5, 2.0) == pytest.approx(params.phat**2, abs=1e-12)


def test_generation():
    g = fk.sample_configuration_model([3] * 10, 42)
    assert g.n() == 10
    assert g.m() == 15
    er = fk.sample_er_poisson_cloning(200, 2.0, 7)
    assert er.n() == 200
    assert 100 < er.m() < 320


def test_fk_chain_and_coupling():
    g = fk.MultiGraph(3)
    g.add_edge(0, 1)
    g.add_edge(1, 2)
    g.add_edge(2, 0)
    params = fk.RcParams(0.4, 2.0)
    chain = fk.FkChain(g, fk.BoundaryPartition(3), params, [0, 0, 0])
    rng = fk.Rng(1)
    chain.run_continuous(5.0, rng)
    assert len(chain.config()) == 3
    res = fk.couple_extremes(g, fk.BoundaryPartition(3), params, 11, 200.0)
    assert res.coupled
    assert res.time >= 0.0


def test_shatter_and_sparsity():
    g = fk.sample_er_poisson_cloning(256, 2.0, 5)
    rep = fk.shatter_stats(g, fk.RcParams(0.2, 2.0), 30.0, 2, 9)
    assert len(rep.max_cluster) == 2
    for sizes in rep.component_sizes:
        assert sum(sizes) == 256
    ok, max_sparsity = fk.kr_sparse_check(g, [0] * g.m(), 1, 2)
    assert ok
    assert max_sparsity == 0


def test_potts_chain():
    g = fk.MultiGraph(4)
    for v in range(3):
        g.add_edge(v, v + 1)
    chain = fk.PottsChain(g, 0.5, 3, [0, 1, 2, 0])
    rng = fk.Rng(3)
    chain.run_discrete(1000, rng)
    assert all(0 <= s < 3 for s in chain.config())
    assert fk.potts_beta_from_p(0.5) == pytest.approx(math.log(2.0))
