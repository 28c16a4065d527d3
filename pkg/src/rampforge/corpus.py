"""Corpus ingestion: the canonical ramp file format, validation, and stats.

One ramp per line: `id,source,kind,hex1;hex2;...`. `#` starts a comment line.
Canonical form trims whitespace, uppercases hex, drops comments and blank
lines, and uses LF endings; the corpus fingerprint is the SHA-256 of that
canonical text.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass

from .colorspace import format_hex, lab_to_srgb, parse_hex, srgb_to_lab
from .curve import RampKind, RampSource, RawRamp
from .errors import CorpusError, HexParseError


@dataclass(frozen=True)
class Corpus:
    ramps: tuple[RawRamp, ...]
    fingerprint: str


@dataclass(frozen=True)
class CorpusStats:
    total: int
    by_kind: dict[str, int]
    by_source: dict[str, int]
    length_histogram: dict[int, int]
    min_colors: int
    max_colors: int


def parse_corpus_text(text: str) -> Corpus:
    """Parse corpus file content; errors carry 1-based line numbers."""
    ramps = []
    seen_ids: dict[str, int] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != 4:
            raise CorpusError(
                f"line {lineno}: expected 'id,source,kind,colors', got {len(fields)} fields")
        ramp_id, source_text, kind_text, colors_text = fields
        if not ramp_id:
            raise CorpusError(f"line {lineno}: empty ramp id")
        if ramp_id in seen_ids:
            raise CorpusError(
                f"duplicate id {ramp_id!r} on lines {seen_ids[ramp_id]} and {lineno}")
        seen_ids[ramp_id] = lineno
        try:
            source = RampSource(source_text.lower())
        except ValueError:
            raise CorpusError(f"line {lineno}: unknown source {source_text!r}") from None
        try:
            kind = RampKind(kind_text.lower())
        except ValueError:
            raise CorpusError(f"line {lineno}: unknown kind {kind_text!r}") from None
        hexes = [h.strip() for h in colors_text.split(";") if h.strip()]
        if len(hexes) < 2:
            raise CorpusError(f"line {lineno}: ramp {ramp_id!r} has fewer than 2 colors")
        colors = []
        for h in hexes:
            try:
                colors.append(srgb_to_lab(parse_hex(h)))
            except HexParseError as err:
                raise CorpusError(f"line {lineno}: {err}") from None
        for i in range(1, len(hexes)):
            if hexes[i].upper() == hexes[i - 1].upper():
                raise CorpusError(
                    f"line {lineno}: ramp {ramp_id!r} repeats color {hexes[i].upper()} "
                    f"at positions {i} and {i + 1}")
        ramps.append(RawRamp(id=ramp_id, source=source, kind=kind, colors=tuple(colors)))
    canonical = serialize_corpus_ramps(ramps)
    fingerprint = hashlib.sha256(canonical.encode("utf-8")).hexdigest()
    return Corpus(ramps=tuple(ramps), fingerprint=fingerprint)


def parse_corpus(path) -> Corpus:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_corpus_text(fh.read())
    except OSError as err:
        raise CorpusError(f"cannot read corpus file {path}: {err}") from None


def serialize_corpus_ramps(ramps) -> str:
    """Canonical text for a ramp sequence (LF endings, uppercase hex)."""
    lines = []
    for r in ramps:
        hexes = ";".join(format_hex(lab_to_srgb(c)) for c in r.colors)
        lines.append(f"{r.id},{r.source.value},{r.kind.value},{hexes}")
    return "".join(line + "\n" for line in lines)


def serialize_corpus(corpus: Corpus) -> str:
    return serialize_corpus_ramps(corpus.ramps)


def corpus_stats(corpus: Corpus) -> CorpusStats:
    lengths = [len(r.colors) for r in corpus.ramps]
    return CorpusStats(
        total=len(corpus.ramps),
        by_kind=dict(Counter(r.kind.value for r in corpus.ramps)),
        by_source=dict(Counter(r.source.value for r in corpus.ramps)),
        length_histogram=dict(sorted(Counter(lengths).items())),
        min_colors=min(lengths, default=0),
        max_colors=max(lengths, default=0),
    )
