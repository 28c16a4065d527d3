#!/usr/bin/env python3
"""Convert ad hoc ramp collections into the canonical corpus format.

Accepts either a JSON file (list of {"id", "source", "kind", "colors":
["#RRGGBB", ...]} objects) or a CSV file with columns id,source,kind and the
remaining cells holding one hex color each. Writes canonical corpus lines to
stdout or --out.

    python tools/import_corpus.py ramps.json --out corpus.txt
"""

import argparse
import csv
import json
import sys
from pathlib import Path


def rows_from_json(path):
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, list):
        raise SystemExit("JSON corpus must be a list of ramp objects")
    for entry in data:
        yield entry["id"], entry.get("source", "other"), entry.get("kind", "sequential"), entry["colors"]


def rows_from_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if len(row) < 5:
                raise SystemExit(f"need id,source,kind plus >=2 colors: {row}")
            yield row[0], row[1], row[2], [c for c in row[3:] if c.strip()]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("input", help="ramp collection (.json or .csv)")
    parser.add_argument("--out", help="output corpus file (default: stdout)")
    args = parser.parse_args()

    rows = rows_from_json(args.input) if args.input.endswith(".json") else rows_from_csv(args.input)
    lines = []
    for ramp_id, source, kind, colors in rows:
        hexes = ";".join(c.strip().upper() for c in colors)
        lines.append(f"{ramp_id.strip()},{source.strip().lower()},{kind.strip().lower()},{hexes}")
    text = "\n".join(lines) + "\n"

    # validate through the real parser before writing anything
    from rampforge.corpus import parse_corpus_text
    corpus = parse_corpus_text(text)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {len(corpus.ramps)} ramps to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
