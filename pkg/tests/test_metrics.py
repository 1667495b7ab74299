import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capaudit.corpus import tokenize
from capaudit.errors import BackendError, DataError, UsageError
from capaudit.metrics import (
    FenseConfig,
    LexicalCosineBackend,
    MetricScore,
    bleu,
    build_corpus_stats,
    cider_d,
    fense,
    fense_star,
    lcs_length,
    make_scorer,
    meteor_lite,
    rouge_l,
    score_pairs,
)

tokens_lists = st.lists(st.sampled_from("abcdefg"), min_size=1, max_size=8)


def brute_force_lcs(a, b):
    """Exhaustive subsequence enumeration; independent of the DP route."""
    best = 0
    for mask in range(1 << len(a)):
        sub = [a[i] for i in range(len(a)) if mask >> i & 1]
        if len(sub) <= best:
            continue
        it = iter(b)
        if all(tok in it for tok in sub):
            best = len(sub)
    return best


class TestBleu:
    def test_identity_is_one(self):
        ref = tokenize("a dog barks loudly in the yard")
        assert bleu(ref, [ref]).value == 1.0

    def test_disjoint_is_zero(self):
        assert bleu(["cat"], [tokenize("a dog barks")]).value == 0.0

    def test_worked_example(self):
        score = bleu(tokenize("a dog barks"), [tokenize("a dog barks loudly")], 2)
        assert score.components["p1"] == 1.0
        assert score.components["p2"] == 1.0
        assert score.components["brevity_penalty"] == pytest.approx(math.exp(-1 / 3))
        assert score.value == pytest.approx(0.7165313, abs=1e-6)

    def test_brevity_tie_prefers_shorter_reference(self):
        # refs of length 2 and 4 are equidistant from a 3-token hypothesis
        hyp = tokenize("a dog barks")
        refs = [tokenize("a dog"), tokenize("a dog barks loudly")]
        score = bleu(hyp, refs, 1)
        assert score.components["ref_len"] == 2.0
        assert score.components["brevity_penalty"] == 1.0

    def test_empty_inputs_rejected(self):
        with pytest.raises(ValueError):
            bleu([], [["a"]])
        with pytest.raises(ValueError):
            bleu(["a"], [])
        with pytest.raises(ValueError):
            bleu(["a"], [["b"], []])

    def test_order_zero_rejected(self):
        with pytest.raises(ValueError):
            bleu(["a"], [["a"]], 0)

    @given(tokens_lists, st.randoms(use_true_random=False))
    def test_p1_invariant_under_permutation(self, hyp, rnd):
        refs = [["a", "b", "c", "d"]]
        shuffled = hyp.copy()
        rnd.shuffle(shuffled)
        assert (
            bleu(hyp, refs).components["p1"] == bleu(shuffled, refs).components["p1"]
        )


class TestRouge:
    def test_identity_is_one(self):
        ref = tokenize("rain falls on the roof")
        assert rouge_l(ref, [ref]).value == 1.0

    def test_swap_example(self):
        score = rouge_l(["b", "a"], [["a", "b"]])
        assert score.components["lcs"] == 1.0
        assert score.components["precision"] == 0.5
        assert score.components["recall"] == 0.5
        assert score.value == 0.5

    def test_disjoint_is_zero(self):
        assert rouge_l(["x", "y"], [["a", "b"]]).value == 0.0

    @settings(max_examples=200)
    @given(tokens_lists, tokens_lists)
    def test_lcs_matches_brute_force(self, a, b):
        assert lcs_length(a, b) == brute_force_lcs(a, b)

    @given(tokens_lists, tokens_lists)
    def test_removing_matching_unigram_never_raises_recall(self, hyp, ref):
        base = rouge_l(hyp, [ref]).components["recall"]
        for i, tok in enumerate(hyp):
            if tok in ref and len(hyp) > 1:
                shorter = hyp[:i] + hyp[i + 1 :]
                assert rouge_l(shorter, [ref]).components["recall"] <= base


class TestMeteor:
    def test_identity_four_tokens(self):
        toks = ["a", "b", "c", "d"]
        score = meteor_lite(toks, [toks])
        assert score.value == 0.9921875
        assert score.components["chunks"] == 1.0

    def test_no_match_is_zero(self):
        assert meteor_lite(["x"], [["y", "z"]]).value == 0.0

    def test_stem_match_example(self):
        score = meteor_lite(tokenize("dogs barking"), [tokenize("dog barks")])
        assert score.components["matches"] == 2.0
        assert score.value == 0.9375

    def test_fragmented_alignment_penalized(self):
        # same matches, different chunk counts -> lower score
        contiguous = meteor_lite(["a", "b", "c"], [["a", "b", "c", "x"]])
        scattered = meteor_lite(["a", "b", "c"], [["a", "x", "b", "y", "c"]])
        assert scattered.value < contiguous.value


class TestCider:
    def test_idf_conventions(self):
        stats = build_corpus_stats([["dog", "cat"], ["dog", "bird"]])
        assert stats.idf(1, ("dog",)) == 0.0
        assert stats.idf(1, ("cat",)) == pytest.approx(math.log(2))
        assert stats.idf(1, ("unseen",)) == pytest.approx(math.log(2))

    def test_worked_example(self):
        stats = build_corpus_stats([tokenize("a dog barks"), tokenize("rain falls")])
        hyp = tokenize("a dog barks")
        score = cider_d(hyp, [hyp], stats)
        assert [score.components[f"sim{n}"] for n in (1, 2, 3, 4)] == [1.0, 1.0, 1.0, 0.0]
        assert score.value == 7.5
        assert cider_d(hyp, [hyp], stats, max_order=3).value == 10.0

    def test_disjoint_is_zero(self):
        stats = build_corpus_stats([tokenize("a dog barks"), tokenize("rain falls")])
        assert cider_d(tokenize("wind blows"), [tokenize("a dog barks")], stats).value == 0.0

    def test_empty_corpus_rejected(self):
        with pytest.raises(ValueError):
            build_corpus_stats([])

    def test_length_penalty_applies(self):
        stats = build_corpus_stats([["a"], ["b"]])
        short = cider_d(["a"], [["a"]], stats, max_order=1)
        padded = cider_d(["a", "a", "a", "a"], [["a"]], stats, max_order=1)
        assert padded.value < short.value


class TestLexicalCosine:
    def test_identity(self):
        backend = LexicalCosineBackend()
        assert backend.similarity("a dog barks", ["a dog barks"]) == 1.0

    def test_disjoint(self):
        backend = LexicalCosineBackend()
        assert backend.similarity("a dog barks", ["rain falls"]) == 0.0

    def test_two_thirds_example(self):
        backend = LexicalCosineBackend()
        assert backend.similarity("a dog barks", ["a dog sleeps"]) == pytest.approx(2 / 3)

    def test_empty_tokens_score_zero(self):
        backend = LexicalCosineBackend()
        assert backend.similarity("...", ["a dog"]) == 0.0

    def test_permutation_invariant(self):
        backend = LexicalCosineBackend()
        assert backend.similarity("dog a barks", ["a dog barks"]) == 1.0


class _FixedSimilarity:
    def __init__(self, value):
        self.value = value

    def similarity(self, hypothesis, references):
        return self.value


class _FailingBackend:
    def similarity(self, hypothesis, references):
        raise BackendError("unreachable")

    def error_probability(self, sentence):
        raise BackendError("unreachable")


class _FixedFluency:
    def __init__(self, p):
        self.p = p

    def error_probability(self, sentence):
        return self.p


class TestFense:
    def test_star_identity(self):
        score = fense_star("a dog barks", ["a dog barks"], LexicalCosineBackend())
        assert score.value == 1.0

    def test_star_mean_aggregation(self):
        score = fense_star(
            "a dog barks", ["a dog barks", "rain falls"], LexicalCosineBackend()
        )
        assert score.value == 0.5
        assert score.components == {"ref0": 1.0, "ref1": 0.0}

    def test_star_max_aggregation(self):
        config = FenseConfig(reference_aggregation="max")
        score = fense_star(
            "a dog barks", ["a dog barks", "rain falls"], LexicalCosineBackend(), config
        )
        assert score.value == 1.0

    def test_star_backend_error_propagates(self):
        with pytest.raises(BackendError):
            fense_star("a b", ["c d"], _FailingBackend())

    def test_no_error_probability_keeps_star_value(self):
        score = fense("a dog barks", ["a dog barks"], LexicalCosineBackend(), _FixedFluency(0.0))
        assert score.value == 1.0
        assert score.components["penalty_applied"] == 0.0

    def test_penalty_formula(self):
        score = fense("x", ["y"], _FixedSimilarity(0.8), _FixedFluency(1.0))
        assert score.value == pytest.approx(0.08)
        assert score.components["penalty_applied"] == 1.0

    def test_threshold_boundary_is_strict(self):
        score = fense("x", ["x"], _FixedSimilarity(0.7), _FixedFluency(0.9))
        assert score.value == pytest.approx(0.7)
        assert score.components["penalty_applied"] == 0.0

    def test_config_validation(self):
        with pytest.raises(ValueError):
            FenseConfig(error_threshold=1.5)
        with pytest.raises(ValueError):
            FenseConfig(reference_aggregation="median")


class TestScorePairs:
    def test_single_pair(self):
        scorer = make_scorer("rougel")
        scores, mean = score_pairs(scorer, [("a dog", ["a dog"])])
        assert mean == scores[0].value == 1.0

    def test_mean_of_two(self):
        scorer = make_scorer("rougel")
        scores, mean = score_pairs(
            scorer, [("a dog", ["a dog"]), ("x y", ["p q"])]
        )
        assert [s.value for s in scores] == [1.0, 0.0]
        assert mean == 0.5

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            score_pairs(make_scorer("rougel"), [])

    def test_error_carries_index(self):
        scorer = make_scorer("bleu4")
        with pytest.raises(DataError, match="item 1"):
            score_pairs(scorer, [("a b", ["a b"]), ("", ["a b"])])

    def test_backend_error_carries_index_and_type(self):
        scorer = make_scorer("fense_star", similarity_backend=_FailingBackend())
        with pytest.raises(BackendError, match="item 0"):
            score_pairs(scorer, [("a b", ["a b"])])


class TestRegistry:
    def test_unknown_metric(self):
        with pytest.raises(UsageError):
            make_scorer("spice")

    def test_ciderd_requires_stats(self):
        with pytest.raises(UsageError):
            make_scorer("ciderd")

    def test_fense_requires_backends(self):
        with pytest.raises(UsageError):
            make_scorer("fense", similarity_backend=LexicalCosineBackend())

    def test_bleu_orders(self):
        scorer = make_scorer("bleu2")
        assert scorer("a dog barks", ["a dog barks loudly"]).value == pytest.approx(
            math.exp(-1 / 3)
        )


WORDS = ["dog", "cat", "rain", "wind", "man", "barks", "sings", "falls", "plays", "hums"]


def _random_caption(rnd, min_len=4, max_len=9):
    return " ".join(rnd.choice(WORDS) for _ in range(rnd.randint(min_len, max_len)))


class TestCrossMetricProperties:
    def test_identity_scores_one_for_all_lexical_metrics(self):
        rnd = random.Random(5)
        captions = [_random_caption(rnd, 8, 12) for _ in range(50)]
        stats = build_corpus_stats([tokenize(c) for c in captions])
        for caption in captions:
            toks = tokenize(caption)
            assert bleu(toks, [toks]).value == 1.0
            assert rouge_l(toks, [toks]).value == 1.0
            assert meteor_lite(toks, [toks]).value >= 0.99
            cid = cider_d(toks, [toks], stats)
            for n in (1, 2, 3, 4):
                if len(toks) >= n:
                    assert cid.components[f"sim{n}"] == 1.0

    def test_reference_order_invariance(self):
        rnd = random.Random(9)
        refs = [_random_caption(rnd) for _ in range(4)]
        hyp = _random_caption(rnd)
        stats = build_corpus_stats([tokenize(r) for r in refs])
        reversed_refs = list(reversed(refs))
        toks = tokenize(hyp)
        ref_tok = [tokenize(r) for r in refs]
        rev_tok = [tokenize(r) for r in reversed_refs]
        assert bleu(toks, ref_tok).value == bleu(toks, rev_tok).value
        assert rouge_l(toks, ref_tok).value == rouge_l(toks, rev_tok).value
        assert meteor_lite(toks, ref_tok).value == meteor_lite(toks, rev_tok).value
        assert cider_d(toks, ref_tok, stats).value == pytest.approx(
            cider_d(toks, rev_tok, stats).value, abs=1e-12
        )
        backend = LexicalCosineBackend()
        assert (
            fense_star(hyp, refs, backend).value
            == fense_star(hyp, reversed_refs, backend).value
        )

    def test_metric_score_bounds(self):
        rnd = random.Random(13)
        refs = [_random_caption(rnd) for _ in range(30)]
        stats = build_corpus_stats([tokenize(r) for r in refs])
        for _ in range(30):
            hyp, ref = _random_caption(rnd), rnd.choice(refs)
            toks, ref_toks = tokenize(hyp), [tokenize(ref)]
            assert 0.0 <= bleu(toks, ref_toks).value <= 1.0
            assert 0.0 <= rouge_l(toks, ref_toks).value <= 1.0
            assert 0.0 <= meteor_lite(toks, ref_toks).value <= 1.0
            assert 0.0 <= cider_d(toks, ref_toks, stats).value <= 10.0

    def test_metric_score_requires_finite(self):
        with pytest.raises(ValueError):
            MetricScore(value=float("nan"))
