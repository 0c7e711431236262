#!/usr/bin/env python3
"""Write a small synthetic corpus TSV for offline demos and the web UI.

Usage: python scripts/seed_demo_corpus.py [--out corpus.tsv] [--seed 0]
"""

import argparse
import random
from pathlib import Path

from projsearch.sim import CorpusSpec, build_corpus


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="demo-corpus.tsv")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--docs-per-topic", type=int, default=150)
    args = parser.parse_args()

    spec = CorpusSpec(docs_per_topic=(args.docs_per_topic, args.docs_per_topic))
    corpus = build_corpus(spec, random.Random(args.seed))
    lines = [
        f"{d.doc_id}\t{d.title}\t{d.abstract_text}" for d in corpus.provider.documents()
    ]
    Path(args.out).write_text("\n".join(lines) + "\n", "utf-8")
    topic = corpus.topics[0]
    print(f"wrote {args.out} ({len(lines)} docs)")
    print(f"try: projsearch --corpus {args.out} search \"{topic.core_terms[0]} or {topic.shared_terms[0]}\"")


if __name__ == "__main__":
    main()
