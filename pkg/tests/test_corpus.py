import wave
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capaudit.corpus import (
    AudioBuffer,
    Caption,
    CaptionedClip,
    Corpus,
    filter_max_words,
    load_audiocaps_csv,
    load_clotho_csv,
    load_manifest,
    ngrams,
    probe_wav,
    read_wav,
    stem,
    tokenize,
    vocab_cdf,
    vocab_stats,
    write_manifest,
    write_wav,
)
from capaudit.errors import DataError

from conftest import audiocaps_clip, clotho_clip, make_wav


class TestTokenize:
    def test_strips_punctuation_and_lowercases(self):
        assert tokenize("A dog, barks!") == ["a", "dog", "barks"]

    def test_empty(self):
        assert tokenize("") == []
        assert tokenize("... !!") == []

    def test_plain_sentence(self):
        assert tokenize("rain falls followed by thunder") == [
            "rain", "falls", "followed", "by", "thunder",
        ]

    def test_hyphen_merges(self):
        # '-' is stripped, not replaced by a space
        assert tokenize("dog-house") == ["doghouse"]

    @given(st.text(max_size=80))
    def test_idempotent_on_own_output(self, text):
        tokens = tokenize(text)
        assert tokenize(" ".join(tokens)) == tokens


class TestNgrams:
    def test_bigrams(self):
        assert ngrams(["a", "dog", "barks"], 2) == Counter(
            {("a", "dog"): 1, ("dog", "barks"): 1}
        )

    def test_too_short(self):
        assert ngrams(["a", "dog", "barks"], 4) == Counter()

    def test_multiplicity(self):
        assert ngrams(["a", "a", "a"], 1) == Counter({("a",): 3})

    def test_order_zero_rejected(self):
        with pytest.raises(ValueError):
            ngrams(["a"], 0)


# Hand-traced through the published algorithm, end to end (not per-step).
PORTER_ORACLE = [
    ("caresses", "caress"), ("ponies", "poni"), ("ties", "ti"), ("caress", "caress"),
    ("cats", "cat"), ("feed", "feed"), ("agreed", "agre"), ("plastered", "plaster"),
    ("bled", "bled"), ("motoring", "motor"), ("sing", "sing"), ("hopping", "hop"),
    ("tanned", "tan"), ("falling", "fall"), ("hissing", "hiss"), ("fizzed", "fizz"),
    ("failing", "fail"), ("filing", "file"), ("happy", "happi"), ("sky", "sky"),
    ("running", "run"), ("sized", "size"), ("troubled", "troubl"),
    ("relational", "relat"), ("conditional", "condit"), ("rational", "ration"),
    ("electrical", "electr"), ("hopefulness", "hope"), ("goodness", "good"),
    ("formalities", "formal"), ("revival", "reviv"), ("allowance", "allow"),
    ("inference", "infer"), ("airliner", "airlin"), ("adjustable", "adjust"),
    ("replacement", "replac"), ("adjustment", "adjust"), ("dependent", "depend"),
    ("adoption", "adopt"), ("communism", "commun"), ("activate", "activ"),
    ("effective", "effect"), ("bowdlerize", "bowdler"), ("probate", "probat"),
    ("rate", "rate"), ("cease", "ceas"), ("controlling", "control"),
    ("rolling", "roll"), ("generalization", "gener"), ("oscillators", "oscil"),
]


class TestPorter:
    @pytest.mark.parametrize("word,expected", PORTER_ORACLE)
    def test_reference_pairs(self, word, expected):
        assert stem(word) == expected

    def test_short_words_unchanged(self):
        assert stem("a") == "a"
        assert stem("on") == "on"

    def test_tolerates_digits(self):
        assert stem("dog42") == "dog42"


class TestWav:
    def test_full_scale_negative_reads_as_minus_one(self, tmp_path):
        path = tmp_path / "x.wav"
        with wave.open(str(path), "wb") as wf:
            wf.setnchannels(1)
            wf.setsampwidth(2)
            wf.setframerate(16000)
            wf.writeframes(np.array([-32768, 0, 32767], dtype="<i2").tobytes())
        buf = read_wav(path)
        assert buf.samples[0] == -1.0
        assert buf.samples[1] == 0.0
        assert buf.samples[2] == pytest.approx(32767 / 32768)

    def test_round_trip_within_one_step(self, tmp_path):
        rng = np.random.default_rng(0)
        ints = rng.integers(-32768, 32768, size=500, dtype=np.int64)
        src = tmp_path / "src.wav"
        with wave.open(str(src), "wb") as wf:
            wf.setnchannels(1)
            wf.setsampwidth(2)
            wf.setframerate(16000)
            wf.writeframes(ints.astype("<i2").tobytes())
        first = read_wav(src)
        dst = tmp_path / "dst.wav"
        write_wav(first, dst)
        second = read_wav(dst)
        assert len(first) == len(second)
        assert float(np.max(np.abs(first.samples - second.samples))) <= 1 / 32768

    def test_stereo_downmix_mean(self, tmp_path):
        path = tmp_path / "st.wav"
        frames = np.array([[1000, 3000], [-2000, -4000]], dtype="<i2")
        with wave.open(str(path), "wb") as wf:
            wf.setnchannels(2)
            wf.setsampwidth(2)
            wf.setframerate(8000)
            wf.writeframes(frames.tobytes())
        buf = read_wav(path)
        assert buf.samples == pytest.approx([2000 / 32768, -3000 / 32768])

    def test_eight_bit_rejected(self, tmp_path):
        path = tmp_path / "8bit.wav"
        with wave.open(str(path), "wb") as wf:
            wf.setnchannels(1)
            wf.setsampwidth(1)
            wf.setframerate(8000)
            wf.writeframes(b"\x00\x10\x20")
        with pytest.raises(DataError, match="bit depth"):
            read_wav(path)

    def test_zero_length_rejected(self, tmp_path):
        path = tmp_path / "empty.wav"
        with wave.open(str(path), "wb") as wf:
            wf.setnchannels(1)
            wf.setsampwidth(2)
            wf.setframerate(8000)
        with pytest.raises(DataError, match="zero-length"):
            read_wav(path)

    def test_garbage_rejected(self, tmp_path):
        path = tmp_path / "bad.wav"
        path.write_bytes(b"not a riff header at all")
        with pytest.raises(DataError, match="malformed"):
            read_wav(path)

    def test_probe(self, tmp_path):
        path = make_wav(tmp_path / "p.wav", np.zeros(8000) + 0.25, rate=8000)
        assert probe_wav(path) == (8000, 1.0)

    def test_saturation_on_write(self, tmp_path):
        buf = AudioBuffer(samples=np.array([-1.0, 1.0]), sample_rate=8000)
        path = tmp_path / "sat.wav"
        write_wav(buf, path)
        with wave.open(str(path), "rb") as wf:
            raw = np.frombuffer(wf.readframes(2), dtype="<i2")
        assert list(raw) == [-32767, 32767]


CLOTHO_HEADER = "file_name,caption_1,caption_2,caption_3,caption_4,caption_5\n"


def _clotho_row(name, caps):
    return ",".join([name] + [f'"{c}"' for c in caps]) + "\n"


class TestClothoCsv:
    def test_loads_five_captions(self, tmp_path, recwarn):
        csv_path = tmp_path / "dev.csv"
        caps = [f"a dog barks take {i}" for i in range(5)]
        csv_path.write_text(
            CLOTHO_HEADER + _clotho_row("a.wav", caps) + _clotho_row("b.wav", caps)
        )
        with pytest.warns(UserWarning, match="split has 2 items"):
            corpus = load_clotho_csv(csv_path, tmp_path)
        assert len(corpus) == 2
        assert all(len(item.captions) == 5 for item in corpus.items)
        assert corpus.items[0].source == "clotho"

    def test_empty_caption_cell(self, tmp_path):
        csv_path = tmp_path / "dev.csv"
        csv_path.write_text(
            CLOTHO_HEADER + _clotho_row("a.wav", ["one two", "x y", "", "a b", "c d"])
        )
        with pytest.raises(DataError, match="empty caption_3"):
            load_clotho_csv(csv_path, tmp_path)

    def test_duplicate_file_name(self, tmp_path):
        csv_path = tmp_path / "dev.csv"
        caps = ["a b"] * 5
        csv_path.write_text(
            CLOTHO_HEADER + _clotho_row("a.wav", caps) + _clotho_row("a.wav", caps)
        )
        with pytest.raises(DataError, match="duplicate file_name"):
            load_clotho_csv(csv_path, tmp_path)

    def test_missing_columns(self, tmp_path):
        csv_path = tmp_path / "dev.csv"
        csv_path.write_text("file_name,caption_1\na.wav,hello there\n")
        with pytest.raises(DataError, match="missing required columns"):
            load_clotho_csv(csv_path, tmp_path)

    def test_probes_audio_header_when_present(self, tmp_path):
        make_wav(tmp_path / "a.wav", np.zeros(16000 * 20) + 0.1)
        csv_path = tmp_path / "dev.csv"
        csv_path.write_text(CLOTHO_HEADER + _clotho_row("a.wav", ["a b"] * 5))
        with pytest.warns(UserWarning):  # split-size warning only
            corpus = load_clotho_csv(csv_path, tmp_path)
        assert corpus.items[0].sample_rate == 16000
        assert corpus.items[0].duration_s == pytest.approx(20.0)


AUDIOCAPS_HEADER = "audiocap_id,youtube_id,start_time,caption\n"


class TestAudiocapsCsv:
    def test_loads_single_caption(self, tmp_path):
        csv_path = tmp_path / "train.csv"
        csv_path.write_text(AUDIOCAPS_HEADER + '1,yt1,30,"a man speaks"\n')
        corpus = load_audiocaps_csv(csv_path, tmp_path)
        assert len(corpus) == 1
        assert corpus.items[0].captions[0].text == "a man speaks"
        assert corpus.items[0].source == "audiocaps"

    def test_empty_caption(self, tmp_path):
        csv_path = tmp_path / "train.csv"
        csv_path.write_text(AUDIOCAPS_HEADER + "1,yt1,30,\n")
        with pytest.raises(DataError, match="empty caption"):
            load_audiocaps_csv(csv_path, tmp_path)

    def test_non_numeric_start_time(self, tmp_path):
        csv_path = tmp_path / "train.csv"
        csv_path.write_text(AUDIOCAPS_HEADER + "1,yt1,soon,a man speaks\n")
        with pytest.raises(DataError, match="non-numeric start_time"):
            load_audiocaps_csv(csv_path, tmp_path)


class TestFilterMaxWords:
    def test_short_caption_retained(self):
        corpus = Corpus(items=[audiocaps_clip("x", "a man speaks")])
        assert len(filter_max_words(corpus, 8)) == 1

    def test_long_caption_dropped(self):
        corpus = Corpus(
            items=[audiocaps_clip("x", "one two three four five six seven eight nine")]
        )
        assert len(filter_max_words(corpus, 8)) == 0

    def test_zero_limit_rejected(self):
        corpus = Corpus(items=[audiocaps_clip("x", "a man speaks")])
        with pytest.raises(ValueError):
            filter_max_words(corpus, 0)


class TestVocab:
    def test_counts(self):
        corpus = Corpus(items=[audiocaps_clip("1", "a dog"), audiocaps_clip("2", "a cat")])
        stats = vocab_stats(corpus)
        assert stats.counts == {"a": 2, "dog": 1, "cat": 1}
        assert stats.total_tokens == 4
        assert stats.ranked == ["a", "cat", "dog"]  # ties broken lexicographically

    def test_single_caption(self):
        corpus = Corpus(items=[audiocaps_clip("1", "a a")])
        assert vocab_stats(corpus).counts == {"a": 2}

    def test_empty_corpus(self):
        with pytest.raises(ValueError):
            vocab_stats(Corpus(items=[]))

    def test_cdf_example(self):
        from capaudit.corpus.model import VocabStats

        stats = VocabStats.from_counts({"the": 5, "dog": 3, "barks": 2})
        assert vocab_cdf(stats) == [0.5, 0.8, 1.0]

    def test_cdf_single_word(self):
        from capaudit.corpus.model import VocabStats

        assert vocab_cdf(VocabStats.from_counts({"a": 7})) == [1.0]

    @given(
        st.dictionaries(
            st.text(alphabet="abcdefg", min_size=1, max_size=6),
            st.integers(min_value=1, max_value=50),
            min_size=1,
            max_size=30,
        )
    )
    def test_cdf_monotone_and_ends_at_one(self, counts):
        from capaudit.corpus.model import VocabStats

        stats = VocabStats.from_counts(counts)
        cdf = vocab_cdf(stats)
        assert len(cdf) == len(stats.ranked) == len(stats.counts)
        assert all(a <= b for a, b in zip(cdf, cdf[1:]))
        assert cdf[-1] == 1.0


class TestModelInvariants:
    def test_caption_rejects_empty(self):
        with pytest.raises(ValueError):
            Caption("")
        with pytest.raises(ValueError):
            Caption("!!! ...")

    def test_clotho_needs_exactly_five(self):
        with pytest.raises(ValueError, match="captions"):
            clotho_clip("x", ["a b", "c d"])

    def test_audiocaps_needs_exactly_one(self):
        with pytest.raises(ValueError, match="captions"):
            CaptionedClip(
                id="x",
                audio_path="y",
                captions=[Caption("a b"), Caption("c d")],
                source="audiocaps",
                sample_rate=16000,
                duration_s=1.0,
            )

    def test_corpus_rejects_duplicate_ids(self):
        with pytest.raises(ValueError, match="duplicate"):
            Corpus(items=[audiocaps_clip("x", "a b"), audiocaps_clip("x", "c d")])

    def test_audio_buffer_bounds(self):
        with pytest.raises(ValueError):
            AudioBuffer(samples=np.array([0.0, 1.5]), sample_rate=16000)
        with pytest.raises(ValueError):
            AudioBuffer(samples=np.zeros(4), sample_rate=0)


@st.composite
def corpora(draw):
    words = ["dog", "cat", "rain", "wind", "man", "barks", "sings", "falls"]
    n = draw(st.integers(min_value=0, max_value=6))
    items = []
    for i in range(n):
        source = draw(st.sampled_from(("clotho", "audiocaps", "augmented")))
        n_caps = {"clotho": 5, "audiocaps": 1, "augmented": 1}[source]
        caps = [
            Caption(" ".join(draw(st.lists(st.sampled_from(words), min_size=1, max_size=6))))
            for _ in range(n_caps)
        ]
        provenance = None
        if source == "augmented" and draw(st.booleans()):
            provenance = {"method": "concat", "clotho_id": "c", "audiocaps_id": "a"}
        items.append(
            CaptionedClip(
                id=f"clip-{i}",
                audio_path=f"audio/{i}.wav",
                captions=caps,
                source=source,
                sample_rate=draw(st.sampled_from((8000, 16000, 44100))),
                duration_s=draw(
                    st.floats(min_value=0.0, max_value=60.0, allow_nan=False)
                ),
                provenance=provenance,
            )
        )
    return Corpus(items=items)


class TestManifest:
    @settings(max_examples=50)
    @given(corpora())
    def test_round_trip_identity(self, tmp_path_factory, corpus):
        path = tmp_path_factory.mktemp("manifests") / "m.jsonl"
        write_manifest(corpus, path)
        assert load_manifest(path) == corpus

    def test_missing_captions_field(self, tmp_path):
        path = tmp_path / "m.jsonl"
        path.write_text(
            '{"id": "x", "audio_path": "y", "source": "clotho", '
            '"sample_rate": 16000, "duration_s": 1.0}\n'
        )
        with pytest.raises(DataError, match="missing fields"):
            load_manifest(path)

    def test_unknown_source(self, tmp_path):
        path = tmp_path / "m.jsonl"
        path.write_text(
            '{"id": "x", "audio_path": "y", "captions": ["a b"], "source": "foo", '
            '"sample_rate": 16000, "duration_s": 1.0}\n'
        )
        with pytest.raises(DataError, match="unknown source"):
            load_manifest(path)

    def test_unexpected_field(self, tmp_path):
        path = tmp_path / "m.jsonl"
        path.write_text(
            '{"id": "x", "audio_path": "y", "captions": ["a b"], "source": "audiocaps", '
            '"sample_rate": 16000, "duration_s": 1.0, "extra": 1}\n'
        )
        with pytest.raises(DataError, match="unexpected fields"):
            load_manifest(path)

    def test_invalid_json_line(self, tmp_path):
        path = tmp_path / "m.jsonl"
        path.write_text("{nope}\n")
        with pytest.raises(DataError, match="invalid JSON"):
            load_manifest(path)
