import json
from pathlib import Path

import pytest

from rampforge.corpus import corpus_stats, parse_corpus, parse_corpus_text, serialize_corpus
from rampforge.errors import CorpusError

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "rampforge" / "data"


def test_parse_single_line():
    corpus = parse_corpus_text(
        "cb-blues-5,colorbrewer,sequential,#EFF3FF;#BDD7E7;#6BAED6;#3182BD;#08519C\n")
    assert len(corpus.ramps) == 1
    ramp = corpus.ramps[0]
    assert ramp.id == "cb-blues-5"
    assert ramp.source.value == "colorbrewer"
    assert ramp.kind.value == "sequential"
    assert len(ramp.colors) == 5


def test_duplicate_id_names_both_lines():
    text = ("a,other,sequential,#000000;#FFFFFF\n"
            "b,other,sequential,#000000;#FFFFFF\n"
            "a,other,sequential,#111111;#EEEEEE\n")
    with pytest.raises(CorpusError, match=r"lines 1 and 3"):
        parse_corpus_text(text)


def test_empty_file():
    corpus = parse_corpus_text("")
    stats = corpus_stats(corpus)
    assert stats.total == 0
    assert stats.min_colors == 0 and stats.max_colors == 0
    assert stats.by_kind == {} and stats.by_source == {}


def test_bad_hex_carries_line_number():
    text = "# comment\nok,other,sequential,#000000;#FFFFFF\nbad,other,sequential,#00;#FFFFFF\n"
    with pytest.raises(CorpusError, match="line 3"):
        parse_corpus_text(text)


def test_unknown_source_and_kind():
    with pytest.raises(CorpusError, match="unknown source"):
        parse_corpus_text("x,excel,sequential,#000000;#FFFFFF\n")
    with pytest.raises(CorpusError, match="unknown kind"):
        parse_corpus_text("x,other,rainbow,#000000;#FFFFFF\n")


def test_too_short_ramp():
    with pytest.raises(CorpusError, match="fewer than 2"):
        parse_corpus_text("x,other,sequential,#000000\n")


def test_consecutive_duplicate_color_rejected():
    with pytest.raises(CorpusError, match="repeats color"):
        parse_corpus_text("x,other,sequential,#000000;#000000;#FFFFFF\n")


def test_canonicalization_lossless_round_trip():
    messy = ("# a comment\r\n"
             "  one , colorbrewer , sequential , #eff3ff ; #bdd7e7;#6BAED6  \r\n"
             "\r\n"
             "two,tableau,diverging,#112233;#FFFFFF;#332211\n")
    corpus = parse_corpus_text(messy)
    canonical = serialize_corpus(corpus)
    assert canonical == ("one,colorbrewer,sequential,#EFF3FF;#BDD7E7;#6BAED6\n"
                         "two,tableau,diverging,#112233;#FFFFFF;#332211\n")
    # reparsing the canonical text is a fixed point
    again = parse_corpus_text(canonical)
    assert serialize_corpus(again) == canonical
    assert again.fingerprint == corpus.fingerprint


def test_fingerprint_tracks_content_not_formatting():
    base = parse_corpus_text("a,other,sequential,#000000;#FFFFFF\n")
    reformatted = parse_corpus_text("# hi\n  a , other , sequential , #000000 ; #ffffff \n")
    changed = parse_corpus_text("a,other,sequential,#000000;#FFFFFE\n")
    assert base.fingerprint == reformatted.fingerprint
    assert base.fingerprint != changed.fingerprint


def test_sample_corpus_matches_manifest():
    corpus = parse_corpus(DATA_DIR / "sample_corpus.txt")
    manifest = json.loads((DATA_DIR / "sample_corpus_manifest.json").read_text())
    stats = corpus_stats(corpus)
    assert stats.total == manifest["total"]
    assert stats.by_kind.get("sequential", 0) == manifest["sequential"]
    assert stats.by_kind.get("diverging", 0) == manifest["diverging"]
    assert stats.by_source == manifest["by_source"]
    assert stats.min_colors == manifest["min_colors"]
    assert stats.max_colors == manifest["max_colors"]
    assert 5 <= stats.min_colors and stats.max_colors <= 13


def test_missing_file():
    with pytest.raises(CorpusError, match="cannot read"):
        parse_corpus("/nonexistent/corpus.txt")
