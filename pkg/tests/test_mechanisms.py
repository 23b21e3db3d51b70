import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.stats import chi2_contingency
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from impartial.impartiality import enumerate_profiles
from impartial.mechanisms import (
    ApprovalVoting,
    AVDBeats,
    AVDTie,
    ConstantMechanism,
    beats_batch,
    default_node,
    mechanism_from_dict,
    select,
    select_lazy,
)
from impartial.priors import Duplicated, LazySample, Popularity, Uniform, sample_lazy
from impartial.profile import NodeRangeError, NominationProfile, beats, new_profile


def test_default_node_rule():
    assert default_node(Uniform(7, 0.3)) == 0
    assert default_node(Popularity([0.1, 0.9, 0.5])) == 1
    assert default_node(Duplicated(Popularity([0.1, 0.9, 0.5]))) == 1


def test_select_examples():
    out = select(AVDBeats(default=3), new_profile(4, [(1, 0), (2, 0), (3, 0)]))
    assert (out.winner, out.gap, out.via_default) == (0, 0, False)
    out = select(AVDBeats(default=2), new_profile(3, [(1, 0)]))
    assert (out.winner, out.gap, out.via_default) == (2, 1, True)
    out = select(AVDTie(default=2), new_profile(3, [(1, 0), (0, 1)]))
    assert (out.winner, out.gap) == (2, 1)


def test_constant_ignores_profile(rng):
    mech = ConstantMechanism(default=2)
    for _ in range(10):
        out = mech.select(Uniform(5, 0.5).sample(rng))
        assert out.winner == 2 and out.via_default


def test_approval_voting_lowest_index_tie_break():
    assert ApprovalVoting().select(new_profile(3, [(2, 0), (2, 1)])).winner == 0
    assert ApprovalVoting().select(new_profile(3, [(2, 1), (0, 1)])).winner == 1


def test_default_may_win_by_beating_everyone():
    out = AVDBeats(default=0).select(new_profile(3, [(1, 0), (2, 0)]))
    assert out.winner == 0 and not out.via_default


def test_beats_batch_matches_scalar_beats_on_all_4_node_profiles():
    adj = enumerate_profiles(4)
    for t in range(4):
        bb = beats_batch(adj, t)
        for b in range(0, adj.shape[0], 37):
            p = NominationProfile(adj[b])
            for k, j in itertools.permutations(range(4), 2):
                assert bb[b, k, j] == beats(p, k, j, t)


@pytest.mark.parametrize("mech", [AVDBeats(default=2), AVDBeats(default=0), AVDTie(default=1),
                                  ApprovalVoting(), ConstantMechanism(default=3)])
def test_select_matches_select_batch_on_all_4_node_profiles(mech):
    adj = enumerate_profiles(4)
    batch = mech.select_batch(adj)
    single = np.array([mech.select(NominationProfile(a)).winner for a in adj])
    np.testing.assert_array_equal(batch, single)


def test_selection_outcome_invariants():
    adj = enumerate_profiles(4)
    mech = AVDBeats(default=1)
    for a in adj[::13]:
        p = NominationProfile(a)
        out = mech.select(p)
        assert out.gap == p.in_degrees.max() - out.winner_degree >= 0
        assert out.winner_degree >= p.in_degrees[1]


def test_duplication_always_falls_back_to_default():
    # every base profile on 4 nodes, mirrored onto sink copies
    base = enumerate_profiles(4)
    adj = np.zeros((base.shape[0], 8, 8), dtype=bool)
    adj[:, :4, :4] = base
    adj[:, :4, 4:] = base
    for t in range(8):
        assert (AVDBeats(default=t).select_batch(adj) == t).all()


def test_fit_sets_default_from_prior():
    mech = AVDBeats().fit(Popularity([0.1, 0.9, 0.5]))
    assert mech.default_ == 1 and mech.n_nodes_ == 3
    assert AVDBeats(default=2).fit(Popularity([0.1, 0.9, 0.5])).default_ == 2


def test_unfitted_mechanism_without_default_raises():
    with pytest.raises(NotFittedError):
        AVDBeats().select(new_profile(3))


def test_invalid_default_rejected():
    with pytest.raises(NodeRangeError):
        AVDBeats(default=5).select(new_profile(3))
    with pytest.raises(NodeRangeError):
        ConstantMechanism(default=4).fit(Uniform(3, 0.5))


def test_estimator_api():
    mech = AVDTie(default=1)
    assert mech.get_params() == {"default": 1}
    assert clone(mech).default == 1
    assert ApprovalVoting().get_params() == {}
    # second profile: nodes 0 and 2 tie at degree 2, default 1 has degree 0
    profiles = [new_profile(3, [(1, 0), (2, 0)]), new_profile(3, [(0, 2), (1, 2), (2, 0), (1, 0)])]
    np.testing.assert_array_equal(mech.predict(profiles), [0, 1])
    assert mech.score(profiles) == -1.0


def test_mechanism_json_round_trip():
    for data in ({"kind": "constant", "default": 2}, {"kind": "avd_beats"},
                 {"kind": "avd_tie", "default": 0}, {"kind": "approval"}):
        assert mechanism_from_dict(data).to_dict() == data
    with pytest.raises(ValueError):
        mechanism_from_dict({"kind": "plurality"})


def test_lazy_zero_reveals_with_clear_winner(rng):
    s = LazySample([0, 9, 3, 2, 1, 0, 0, 0, 0, 0])
    out = select_lazy(AVDBeats(default=2), s, rng)
    assert out.winner == 1 and s.reveals == 0


def test_lazy_all_zero_totals_gives_default(rng):
    s = LazySample(np.zeros(6, dtype=int))
    out = select_lazy(AVDBeats(default=4), s, rng)
    assert (out.winner, out.gap, out.via_default) == (4, 0, True)


@pytest.mark.parametrize("prior", [Uniform(9, 0.5), Uniform(40, 0.5), Popularity([0.2, 0.5, 0.6, 0.5, 0.4, 0.7])])
def test_lazy_matches_dense_select_on_materialized_profile(prior, rng):
    mech = AVDBeats().fit(prior)
    for _ in range(400):
        s = sample_lazy(prior, rng)
        lazy = select_lazy(mech, s, rng)
        full = s.materialize(rng)
        assert lazy == mech.select(full)


@pytest.mark.parametrize("mech", [AVDTie(default=0), ApprovalVoting(), ConstantMechanism(default=1)])
def test_lazy_other_mechanisms_use_totals(mech, rng):
    prior = Uniform(12, 0.5)
    for _ in range(100):
        s = sample_lazy(prior, rng)
        assert select_lazy(mech, s, rng) == mech.select(s.materialize(rng))


def test_lazy_winner_distribution_matches_dense():
    prior = Uniform(9, 0.5)
    mech = AVDBeats(default=0)
    trials = 100_000
    rng = np.random.default_rng(99)
    adj = rng.random((trials, 9, 9)) < 0.5
    adj[:, np.arange(9), np.arange(9)] = False
    dense = np.bincount(mech.select_batch(adj), minlength=9)
    lazy = np.zeros(9, dtype=int)
    for _ in range(trials):
        lazy[select_lazy(mech, sample_lazy(prior, rng), rng).winner] += 1
    table = np.vstack([dense, lazy])
    table = table[:, table.sum(axis=0) > 0]
    assert chi2_contingency(table).pvalue > 1e-4


def _profiles(max_m=7):
    return st.integers(2, max_m).flatmap(
        lambda m: st.lists(st.booleans(), min_size=m * m, max_size=m * m).map(
            lambda bits: np.array(bits, dtype=bool).reshape(m, m)))


@given(_profiles(), st.data())
def test_avd_winner_floor_and_uniqueness(a, data):
    np.fill_diagonal(a, False)
    m = a.shape[0]
    t = data.draw(st.integers(0, m - 1))
    p = NominationProfile(a)
    out = AVDBeats(default=t).select(p)
    assert out.winner_degree >= p.in_degrees[t]
    beaters = [k for k in range(m) if all(beats(p, k, j, t) for j in range(m) if j != k)]
    assert len(beaters) <= 1
    assert out.winner == (beaters[0] if beaters else t)
