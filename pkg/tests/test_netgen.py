"""Synthetic generator: structure, density, determinism, request sampling."""

import math
import random

import numpy as np
import pytest

from mecnet.netgen import GenConfig, InsufficientPairsError, generate_inter_qnet, sample_requests
from mecnet.qnet import instance_to_text


def cross_pair_count(sizes):
    n = sum(sizes)
    return (n * (n - 1) - sum(s * (s - 1) for s in sizes)) // 2


class TestGenConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            GenConfig(1, (3,), 0.5, 0)
        with pytest.raises(ValueError):
            GenConfig(2, (3,), 0.5, 0)
        with pytest.raises(ValueError):
            GenConfig(2, (3, 0), 0.5, 0)
        with pytest.raises(ValueError):
            GenConfig(2, (3, 3), 1.5, 0)


class TestGenerate:
    def test_p_zero_is_spanning_tree(self):
        for seed in range(20):
            iq = generate_inter_qnet(GenConfig(3, (4, 3, 3), 0.0, seed))
            assert iq.graph.edge_count == 9  # nodes - 1
            assert iq.connected

    def test_p_one_is_complete_multipartite(self):
        iq = generate_inter_qnet(GenConfig(3, (3, 2, 2), 1.0, 5))
        assert iq.graph.edge_count == cross_pair_count((3, 2, 2))

    def test_always_connected_and_cross_domain(self):
        rnd = random.Random(60)
        for _ in range(50):
            k = rnd.choice([2, 3, 4])
            sizes = tuple(rnd.randint(1, 6) for _ in range(k))
            p = rnd.random()
            iq = generate_inter_qnet(GenConfig(k, sizes, p, rnd.randrange(10**6)))
            assert iq.connected
            m = iq.partition.membership
            for u, v in iq.graph.edges():
                assert m[u] != m[v]

    def test_reproducible_bit_exact(self):
        cfg = GenConfig(4, (5, 5, 5, 5), 0.4, 1234)
        a = generate_inter_qnet(cfg)
        b = generate_inter_qnet(cfg)
        assert instance_to_text(a) == instance_to_text(b)

    def test_seed_changes_graph(self):
        a = generate_inter_qnet(GenConfig(3, (4, 4, 4), 0.5, 1))
        b = generate_inter_qnet(GenConfig(3, (4, 4, 4), 0.5, 2))
        assert a.graph != b.graph

    def test_density_matches_expectation(self):
        # beyond the tree, each remaining cross pair appears with chance p;
        # the observed mean edge count over many instances stays within
        # three standard errors of the expectation
        sizes = (6, 6, 6)
        p = 0.3
        cross = cross_pair_count(sizes)
        n = sum(sizes)
        counts = [
            generate_inter_qnet(GenConfig(3, sizes, p, seed)).graph.edge_count
            for seed in range(400)
        ]
        extra = cross - (n - 1)
        expect = (n - 1) + extra * p
        sigma = math.sqrt(extra * p * (1 - p))
        assert abs(np.mean(counts) - expect) < 3 * sigma / math.sqrt(len(counts)) + 0.5


class TestSampleRequests:
    def test_complete_graph_has_no_pairs(self):
        iq = generate_inter_qnet(GenConfig(2, (3, 3), 1.0, 0))
        with pytest.raises(InsufficientPairsError):
            sample_requests(iq, 1, 0)

    def test_zero_count(self):
        iq = generate_inter_qnet(GenConfig(2, (3, 3), 0.0, 0))
        assert sample_requests(iq, 0, 0).requests == ()

    def test_requests_valid_and_deterministic(self):
        iq = generate_inter_qnet(GenConfig(3, (5, 5, 5), 0.2, 3))
        a = sample_requests(iq, 10, 99)
        b = sample_requests(iq, 10, 99)
        assert a.requests == b.requests
        m = iq.partition.membership
        for s, d in a.requests:
            assert m[s] != m[d]
            assert not iq.graph.has_edge(s, d)

    def test_without_replacement(self):
        iq = generate_inter_qnet(GenConfig(3, (4, 4, 4), 0.1, 4))
        rs = sample_requests(iq, 15, 7)
        assert len(set(rs.requests)) == 15
