from dataclasses import replace

import pytest

from octomagic.euler import EULER_EXAMPLE, generate_solutions
from octomagic.magic import SquareMatrix, build_matrix, classify
from octomagic.search import (
    Candidate,
    RegionTooLarge,
    SearchConfig,
    SearchStats,
    best_constant,
    diagonalize_rows,
    exhaustive_search,
    random_search,
    read_log,
    search_points,
    worker_stream,
    write_log,
)

# half-integer units: A_9476 doubled, and a 2-point interval around each doubled P coordinate
A_UNITS = (16, -4, -8, 16, -8, -2, -10, -8)
P_BOX = ((4, 5), (6, 7), (-1, 0), (-3, -2), (-7, -6), (1, 2), (7, 8), (1, 2))


def box_cfg(**kw):
    base = dict(dim=8, half_integer_mode=True, a_box=tuple((u, u) for u in A_UNITS),
                p_box=P_BOX, predicates={"entries_distinct"}, iterations=3000, seed=0)
    base.update(kw)
    return SearchConfig(**base)


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(lo=3, hi=2)
    with pytest.raises(ValueError):
        SearchConfig(predicates={"nonsense"})
    with pytest.raises(ValueError):
        SearchConfig(dim=16)
    with pytest.raises(ValueError):
        SearchConfig(iterations=0)
    with pytest.raises(ValueError):
        SearchConfig(dim=8, layout="euler")
    with pytest.raises(ValueError):
        SearchConfig(dim=4, a_box=((0, 1),) * 3)


def test_box_hits_9476(witness_9476):
    A, P = witness_9476
    found = list(random_search(box_cfg()))
    hits = [c for c in found if c.A == A and c.P == P]
    assert len(hits) == 1
    assert hits[0].constant == 9476 and hits[0].kind == "semimagic"
    assert all(c.verify() for c in found)


def test_deterministic():
    cfg = SearchConfig(dim=4, lo=-9, hi=9, iterations=3000, seed=42)
    first = [c.dumps() for c in random_search(cfg)]
    second = [c.dumps() for c in random_search(cfg)]
    assert first and first == second
    other = [c.dumps() for c in random_search(replace(cfg, seed=43))]
    assert other != first


def test_predicates_respected():
    cfg = SearchConfig(dim=4, lo=-9, hi=9, iterations=5000, seed=1,
                       predicates={"entries_distinct", "squares_distinct"})
    cands = list(random_search(cfg))
    assert cands
    for c in cands:
        assert c.entries_distinct and c.squares_distinct
        assert c.verify()


def test_half_integer_mode_integral_filter():
    cfg = SearchConfig(dim=8, lo=-6, hi=6, half_integer_mode=True, iterations=20000, seed=3,
                       predicates={"entries_integral"})
    cands = list(random_search(cfg))
    assert cands
    assert all(c.entries_integral and c.verify() for c in cands)
    assert any(not v.is_integer() for c in cands for v in c.P.coords)


def test_best_constant_monotone():
    stats = SearchStats()
    cfg = SearchConfig(dim=4, lo=-9, hi=9, iterations=5000, seed=7)
    cands = list(random_search(cfg, stats))
    hist = stats.best_history
    assert len(hist) == len(cands) > 1
    assert all(b <= a for a, b in zip(hist, hist[1:]))
    assert stats.best_constant == best_constant(cands)
    assert stats.visited == 5000


def test_parallel_matches_worker_streams():
    cfg = SearchConfig(dim=4, lo=-9, hi=9, iterations=4000, seed=11, workers=2)
    merged = {c.dumps() for c in random_search(cfg)}
    union = {c.dumps() for w in range(2) for c in worker_stream(cfg, w)}
    assert merged == union
    assert merged


def test_fully_magic_small_run_empty():
    cfg = SearchConfig(dim=8, lo=-4, hi=4, predicates={"fully_magic"}, iterations=50_000, seed=5)
    assert list(random_search(cfg)) == []


def test_euler_layout_hits():
    pairs = [([int(v) for v in p.abcd], [int(v) for v in p.pqrs])
             for p in generate_solutions(seed=0, count=100)]
    cfg = SearchConfig(dim=4, predicates={"fully_magic"}, iterations=1, layout="euler")
    hits = list(search_points(cfg, pairs))
    assert hits
    for c in hits:
        assert c.kind == "fully_magic" and c.entries_distinct and c.verify()


def test_exhaustive_baseline():
    stats = SearchStats()
    cfg = SearchConfig(dim=4, lo=-1, hi=1, iterations=1, predicates={"entries_distinct"})
    assert list(exhaustive_search(cfg, stats)) == []
    assert stats.visited == 3 ** 8
    assert stats.skipped == 3240
    # without predicates every nonzero-constant point is a (semimagic) candidate
    stats = SearchStats()
    everything = list(exhaustive_search(replace(cfg, predicates=frozenset()), stats))
    assert len(everything) == 3200
    assert all(classify(c.matrix()).is_semimagic for c in everything[::97])
    assert len(list(exhaustive_search(replace(cfg, predicates=frozenset(), quotient=False)))) == 6400


def test_exhaustive_baseline_range2():
    cfg = SearchConfig(dim=4, lo=-2, hi=2, iterations=1, batch_size=65536,
                       predicates={"entries_distinct"})
    assert list(exhaustive_search(cfg)) == []


def test_exhaustive_distinct_range3():
    # counts frozen from the first exhaustive run
    stats = SearchStats()
    cfg = SearchConfig(dim=4, lo=-3, hi=3, iterations=1, batch_size=65536, max_lattice=6_000_000,
                       predicates={"entries_distinct"})
    cands = list(exhaustive_search(cfg, stats))
    assert stats.visited == 7 ** 8
    assert stats.skipped == 2887840
    assert len(cands) == 28416
    assert best_constant(cands) == 198


def test_exhaustive_superset_of_random():
    cfg = SearchConfig(dim=4, iterations=3000, seed=2, predicates={"entries_distinct"},
                       quotient=False, a_box=((5, 7), (-4, -2), (1, 3), (7, 9)),
                       p_box=((-2, 0), (3, 5), (6, 8), (-9, -7)))
    full = {(c.A, c.P) for c in exhaustive_search(cfg)}
    sampled = {(c.A, c.P) for c in random_search(cfg)}
    assert sampled and sampled <= full


def test_exhaustive_empty_and_cap():
    empty = SearchConfig(dim=4, iterations=1, a_box=((1, 0),) + ((0, 1),) * 3)
    assert list(exhaustive_search(empty)) == []
    with pytest.raises(RegionTooLarge):
        list(exhaustive_search(SearchConfig(dim=8, lo=-32, hi=32, iterations=1)))


def test_log_round_trip(tmp_path):
    cands = list(random_search(box_cfg()))
    path = tmp_path / "log.jsonl"
    assert write_log(path, cands) == len(cands)
    back = read_log(path)
    assert [c.dumps() for c in back] == [c.dumps() for c in cands]
    assert all(c.verify() for c in back)


def test_tampered_candidate_fails_verify(witness_9476):
    c = next(iter(random_search(box_cfg())))
    assert not replace(c, constant=c.constant + 1).verify()
    assert not replace(c, squares_distinct=not c.squares_distinct).verify()


def test_diagonalize_euler_identity():
    assert diagonalize_rows(SquareMatrix(EULER_EXAMPLE)) == (0, 1, 2, 3)


def test_diagonalize_recovers_shuffled_rows():
    M = SquareMatrix(EULER_EXAMPLE).permute_rows((2, 0, 3, 1))
    assert not classify(M).is_fully_magic
    perm = diagonalize_rows(M)
    assert perm is not None
    assert classify(M.permute_rows(perm)).is_fully_magic


def test_diagonalize_9476_none(witness_9476):
    assert diagonalize_rows(build_matrix(*witness_9476)) is None


def test_diagonalize_requires_semimagic():
    with pytest.raises(ValueError):
        diagonalize_rows(SquareMatrix([[1, 2], [3, 4]]))


def test_candidate_json_keys(witness_9476):
    c = next(iter(random_search(box_cfg())))
    data = c.to_json()
    assert "timestamp" not in data
    assert Candidate.from_json(data) == c
    timed = next(iter(random_search(box_cfg(record_time=True))))
    assert isinstance(timed.to_json()["timestamp"], float)
