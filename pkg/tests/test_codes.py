import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from embcodes.codes import (
    LinearCode,
    WeightDistribution,
    ab_bound_satisfied,
    alternating_functional,
    code_from_system,
    functional_classes,
    hyperplane_sweep,
    is_minimal_code,
    is_minimal_codeword,
    minimum_distance,
    null_space,
    symplectic_minweight_predicate,
    weight_distribution,
)
from embcodes.embeddings import ProjectiveSystem, hyperplane_preimage
from embcodes.gf import field_of_order
from embcodes.linalg import EnumerationCapExceeded, rank
from embcodes.zoo import standard_form

F2, F3 = field_of_order(2), field_of_order(3)

SMALL = [
    ("grassmann", 2, dict(n=4, k=2)), ("grassmann", 3, dict(n=4, k=2)), ("grassmann", 2, dict(n=5, k=2)),
    ("symplectic", 3, dict(n=2, k=2)), ("symplectic", 2, dict(n=2, k=2)), ("symplectic", 2, dict(n=3, k=2)),
    ("orthogonal", 2, dict(n=2, k=2)), ("orthogonal", 3, dict(n=2, k=2)), ("orthogonal_plus", 2, dict(n=3, k=3)),
    ("hermitian_even", 4, dict(n=2, k=2)), ("segre", 2, dict(m=1, second=1)), ("segre", 2, dict(m=1, second=2)),
    ("point_hyperplane", 2, dict(n=2)), ("point_hyperplane", 3, dict(n=2)),
]


def all_words(code):
    msgs = np.array(list(itertools.product(range(code.q), repeat=code.K)), dtype=np.int64)
    return msgs, np.array([code.encode(m) for m in msgs])


def brute_minimal_flags(code):
    """Per nonzero message: no word outside its scalar class has a contained support."""
    msgs, words = all_words(code)
    supp = words != 0
    nz = supp.any(axis=1)
    flags = {}
    for i in np.flatnonzero(nz):
        inside = ~(supp & ~supp[i]).any(axis=1) & nz
        # words with contained support that are not scalar multiples of word i
        cand = words[inside]
        others = 0
        for w in cand:
            ratios = {(int(a), int(b)) for a, b in zip(words[i], w) if a or b}
            lam = None
            ok = True
            for a, b in ratios:
                if a == 0 or b == 0:
                    ok = False
                    break
                r = code.field.div(b, a)
                if lam is None:
                    lam = r
                elif r != lam:
                    ok = False
                    break
            others += not ok
        flags[tuple(msgs[i].tolist())] = others == 0
    return flags


def random_system(q, seed, max_dim=4, max_pts=9):
    F = field_of_order(q)
    rng = np.random.default_rng(seed)
    d = int(rng.integers(1, max_dim + 1))
    pts = rng.integers(0, q, size=(int(rng.integers(1, max_pts + 1)), d))
    pts = pts[pts.any(axis=1)]
    if len(pts) == 0:
        pts = np.eye(d, dtype=np.int64)[:1]
    sys = ProjectiveSystem(F, pts)
    uniq = {r.tobytes(): r for r in sys.points}
    return ProjectiveSystem(F, np.array(list(uniq.values())))


# -- construction -------------------------------------------------------------

def test_code_from_system_examples(get_built):
    c = get_built("grassmann", 2, n=4, k=2).code
    assert c.generator.shape == (6, 35) and rank(F2, c.generator) == 6
    one = code_from_system(ProjectiveSystem(F3, np.array([[2]])))
    assert one.generator.tolist() == [[1]]
    o = get_built("orthogonal_plus", 2, n=3, k=3).code
    # 30 generators, not the published 270; see the ledger
    assert o.generator.shape == (14, 30) and rank(F2, o.generator) == 14
    with pytest.raises(ValueError):
        code_from_system(ProjectiveSystem(F2, np.array([[1, 0], [1, 0]])))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.integers(0, 2**32 - 1))
def test_span_rewrite_preserves_hyperplane_sections(q, seed):
    sys = random_system(q, seed)
    code = code_from_system(sys)
    assert code.K == sys.span_dim and code.N == sys.num_points
    assert rank(sys.field, code.generator) == code.K
    # the zero patterns of codewords are exactly the hyperplane sections of the span
    from embcodes.report import iter_functionals

    ambient = {hyperplane_preimage(sys, f) for f in iter_functionals(q, sys.ambient_dim)}
    ambient.discard(frozenset(range(sys.num_points)))
    msgs, words = all_words(code)
    coded = {frozenset(np.flatnonzero(w == 0).tolist()) for w in words[1:]}
    assert ambient == coded


# -- weight distributions -----------------------------------------------------

def test_distribution_examples(get_built):
    c = get_built("grassmann", 2, n=4, k=2).code
    for strat in ("message_enum", "hyperplane_count"):
        assert weight_distribution(c, strat).counts == {0: 1, 16: 35, 20: 28}
    tiny = LinearCode(F3, np.array([[1]]))
    assert weight_distribution(tiny).counts == {0: 1, 1: 2}
    assert weight_distribution(tiny, "hyperplane_count").counts == {0: 1, 1: 2}
    s = get_built("symplectic", 2, n=2, k=2).code
    assert weight_distribution(s).min_weight == 6
    with pytest.raises(ValueError):
        weight_distribution(c, "sampling")
    with pytest.raises(EnumerationCapExceeded):
        weight_distribution(c, "message_enum", cap=10)
    with pytest.raises(EnumerationCapExceeded):
        weight_distribution(c, "hyperplane_count", cap=10)


def test_distribution_record():
    d = WeightDistribution({0: 1, 20: 28, 16: 35}, 2, 6, 35)
    assert list(d.counts) == [0, 16, 20] and d.total == 64
    assert d.weights == [16, 20] and d[16] == 35 and d[17] == 0
    d.check()
    with pytest.raises(AssertionError):
        WeightDistribution({0: 1, 16: 35}, 2, 6, 35).check()
    with pytest.raises(AssertionError):
        WeightDistribution({0: 1, 40: 63}, 2, 6, 35).check()


@pytest.mark.parametrize("family,q,kw", SMALL)
def test_strategies_agree(get_built, family, q, kw):
    c = get_built(family, q, **kw).code
    a = weight_distribution(c, "message_enum")
    b = weight_distribution(c, "hyperplane_count")
    assert a == b
    assert minimum_distance(c) == a.min_weight


def test_minimum_distance_examples(get_built):
    assert minimum_distance(get_built("grassmann", 2, n=4, k=2).code) == 16
    assert minimum_distance(get_built("segre", 2, m=1, second=1).code) == 4
    assert minimum_distance(get_built("point_hyperplane", 2, n=2).code) == 6


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 8, 9]), st.integers(0, 2**32 - 1))
def test_strategies_agree_on_random_codes(q, seed):
    code = code_from_system(random_system(q, seed, max_dim=5, max_pts=12))
    msgs, words = all_words(code)
    brute = {}
    for w in np.count_nonzero(words, axis=1).tolist():
        brute[w] = brute.get(w, 0) + 1
    assert weight_distribution(code, "message_enum").counts == brute
    assert weight_distribution(code, "hyperplane_count").counts == brute


# -- minimality -------------------------------------------------------------

def test_identity_code_not_minimal():
    code = LinearCode(F2, np.eye(3, dtype=np.int64))
    r = is_minimal_code(code)
    assert not r.minimal
    assert r.witness == (0, 1, 1)  # lexicographically first failing class
    assert r.non_minimal_classes == 4 and r.classes == 7
    assert not is_minimal_codeword(code, (1, 1, 0))
    assert is_minimal_codeword(code, (1, 0, 0))


def test_small_minimal_examples():
    # (1,1) contains the support of (1,0)
    r = is_minimal_code(LinearCode(F2, np.eye(2, dtype=np.int64)))
    assert not r.minimal and r.witness == (1, 1)
    assert is_minimal_code(LinearCode(F2, np.array([[1, 0, 1], [0, 1, 1]]))).minimal
    # the repeated column makes (1,1,1) contain the support of (1,0,0)
    r = is_minimal_code(LinearCode(F2, np.array([[1, 0, 0], [0, 1, 1]])))
    assert not r.minimal and r.witness == (1, 1)
    g = LinearCode(F2, np.array([[1, 0, 1], [0, 1, 1], [0, 0, 1]]))
    assert is_minimal_codeword(g, (0, 0, 1))
    with pytest.raises(ValueError):
        is_minimal_codeword(g, (0, 0, 0))


def test_minimal_codeword_examples(get_built):
    g42 = get_built("grassmann", 2, n=4, k=2).code
    assert is_minimal_code(g42).minimal
    msgs, words = all_words(g42)
    for m, w in zip(msgs, words):
        if np.count_nonzero(w) == 16:
            assert is_minimal_codeword(g42, m)
    # no word of the Segre code has full support, so check the heaviest ones
    s11 = get_built("segre", 2, m=1, second=1).code
    msgs, words = all_words(s11)
    wts = np.count_nonzero(words, axis=1)
    heavy = [m for m, w in zip(msgs, wts) if w == wts.max()]
    assert wts.max() == 6 and len(heavy) == 6
    assert all(is_minimal_codeword(s11, m) for m in heavy)


@pytest.mark.parametrize("family,q,kw", SMALL)
def test_code_minimality_matches_per_word(get_built, family, q, kw):
    c = get_built(family, q, **kw).code
    if c.q**c.K > 2**16:
        pytest.skip("message space above 2^16")
    verdict = is_minimal_code(c).minimal
    msgs = itertools.product(range(c.q), repeat=c.K)
    # one message per scalar class suffices
    normal = (m for m in msgs if any(m) and m[next(i for i, x in enumerate(m) if x)] == 1)
    assert verdict == all(is_minimal_codeword(c, m) for m in normal)


@pytest.mark.parametrize("family,q,kw", SMALL)
def test_rank_test_matches_support_containment(get_built, family, q, kw):
    c = get_built(family, q, **kw).code
    if c.q**c.K > 4096:
        pytest.skip("brute-force containment limited to 4096 words")
    flags = brute_minimal_flags(c)
    for m, ok in flags.items():
        assert is_minimal_codeword(c, m) == ok
    assert is_minimal_code(c).minimal == all(flags.values())


def test_point_hyperplane_f2_non_minimal_words(get_built):
    c = get_built("point_hyperplane", 2, n=2).code
    flags = brute_minimal_flags(c)
    msgs, words = all_words(c)
    weight = {tuple(m.tolist()): int(np.count_nonzero(w)) for m, w in zip(msgs, words)}
    bad = [m for m, ok in flags.items() if not ok]
    assert len(bad) == 42 and {weight[m] for m in bad} == {12}
    assert is_minimal_code(c).non_minimal_classes == 42


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.integers(0, 2**32 - 1))
def test_minimality_random_codes(q, seed):
    code = code_from_system(random_system(q, seed, max_dim=4, max_pts=10))
    flags = brute_minimal_flags(code)
    r = is_minimal_code(code)
    assert r.minimal == all(flags.values())
    assert r.non_minimal_classes * (q - 1) == sum(not v for v in flags.values())
    if r.witness is not None:
        assert not is_minimal_codeword(code, r.witness)
        failing = sorted(m for m, ok in flags.items() if not ok and m[next(i for i, x in enumerate(m) if x)] == 1)
        assert r.witness == failing[0]
    dist = weight_distribution(code)
    if ab_bound_satisfied(dist):
        assert r.minimal


# -- Ashikhmin-Barg -----------------------------------------------------------

def test_ab_examples(get_built):
    d = weight_distribution(get_built("grassmann", 2, n=4, k=2).code)
    assert ab_bound_satisfied(d)
    ph = weight_distribution(get_built("point_hyperplane", 2, n=2).code)
    assert (ph.min_weight, ph.max_weight) == (6, 14)
    assert not ab_bound_satisfied(ph)
    assert ab_bound_satisfied(WeightDistribution({0: 1, 4: 15}, 2, 4, 8))
    with pytest.raises(ValueError):
        ab_bound_satisfied(WeightDistribution({0: 1}, 2, 0, 3))


@pytest.mark.parametrize("family,q,kw", SMALL)
def test_ab_implies_minimal(get_built, family, q, kw):
    c = get_built(family, q, **kw).code
    if ab_bound_satisfied(weight_distribution(c)):
        assert is_minimal_code(c).minimal


# -- sweeps -----------------------------------------------------------------

def test_sweep_is_thread_independent(get_built):
    c = get_built("grassmann", 2, n=5, k=2).code
    fresh = [LinearCode(c.field, c.generator) for _ in range(3)]
    results = [hyperplane_sweep(f, True, threads=t) for f, t in zip(fresh, (1, 2, 4))]
    assert results[0] == results[1] == results[2]
    assert results[0].classes == functional_classes(2, 10)


def test_sweep_without_tables_refused():
    big = field_of_order(2**11)
    with pytest.raises(EnumerationCapExceeded):
        hyperplane_sweep(LinearCode(big, np.array([[1, 0], [0, 1]])))


def test_null_space(get_built):
    c = get_built("segre", 2, m=1, second=1).code
    dual = null_space(c)
    assert dual.dim == c.N - c.K
    assert not (np.array(dual.matrix) @ c.generator.T % 2).any()


# -- symplectic eigenspace predicate ----------------------------------------

def test_symplectic_predicate_examples():
    for q in (2, 3):
        F = field_of_order(q)
        m = standard_form("alternating", 4, F).gram
        assert not symplectic_minweight_predicate(F, np.zeros((4, 4), dtype=np.int64), m)
        assert not symplectic_minweight_predicate(F, m, m)
    with pytest.raises(ValueError):
        symplectic_minweight_predicate(F3, np.zeros((3, 3), dtype=np.int64), np.eye(3, dtype=np.int64))


def test_symplectic_predicate_characterises_min_weight(get_built):
    b = get_built("symplectic", 3, n=2, k=2)
    F, sys = b.system.field, b.system
    gram = standard_form("alternating", 4, F).gram
    d = weight_distribution(b.code).min_weight
    assert d == 24
    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    seen = 0
    for vals in itertools.product(range(3), repeat=6):
        if not any(vals):
            continue
        s = np.zeros((4, 4), dtype=np.int64)
        for (i, j), v in zip(pairs, vals):
            s[i, j], s[j, i] = v, F.neg(v)
        f = alternating_functional(F, s)
        w = sys.num_points - len(hyperplane_preimage(sys, f))
        if w == 0:
            continue  # multiples of the form itself vanish on the system
        seen += 1
        assert symplectic_minweight_predicate(F, s, gram) == (w == d)
    assert seen == 3**6 - 3
