#!/usr/bin/env python3
# Copyright 2026 The relgraph Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the synthetic test corpora under tests/data.

The sentences are template-built so that each relation label has a lexical
trigger; the point is to exercise the pipeline, not to resemble real news.
Output is deterministic for a given seed.
"""

import argparse
import hashlib
import json
import pathlib
import random

LABELS = [
    "PART-OF", "PHYSICAL", "USAGE", "ROLE", "SOCIAL", "GENERAL-AFFILIATION",
    "COMPARE", "TEMPORAL", "ARTIFACT", "ORIGIN", "TOPIC", "OPPOSITE",
    "CAUSE-EFFECT", "WIN-DEFEAT", "TYPE-OF", "NAMED", "RELATED-TO",
]

TRIGGERS = {
    "PART-OF": ["is part of", "belongs inside"],
    "PHYSICAL": ["is located in", "stood near"],
    "USAGE": ["relies on", "makes use of"],
    "ROLE": ["works for", "chairs"],
    "SOCIAL": ["met with", "is a friend of"],
    "GENERAL-AFFILIATION": ["is affiliated with", "joined"],
    "COMPARE": ["was compared with", "resembles"],
    "TEMPORAL": ["took place during", "followed"],
    "ARTIFACT": ["built", "produced"],
    "ORIGIN": ["comes from", "originates in"],
    "TOPIC": ["wrote about", "reported on"],
    "OPPOSITE": ["opposed", "argued against"],
    "CAUSE-EFFECT": ["caused", "led to"],
    "WIN-DEFEAT": ["defeated", "won against"],
    "TYPE-OF": ["is a kind of", "is a type of"],
    "NAMED": ["is also called", "was renamed"],
    "RELATED-TO": ["appeared alongside", "was mentioned with"],
}

# Pairs that co-occur as a multi-label annotation.
MULTI = [("PART-OF", "PHYSICAL"), ("ROLE", "GENERAL-AFFILIATION"),
         ("ORIGIN", "PHYSICAL")]

TYPES = ["person", "organisation", "location", "country", "misc"]

SYLLABLES = ["ka", "lo", "mir", "dan", "vel", "tor", "sa", "ren", "bi", "gon",
             "ul", "fen", "ria", "mos", "tek", "har", "zu", "pel", "on", "ast"]

FILLERS = [
    ["Reports", "said", "that"], ["On", "Monday"], ["According", "to", "officials"],
    ["Earlier", "this", "year"], ["In", "a", "statement"], [],
    ["Sources", "confirmed", "that"], ["Last", "week"],
]


def name(rng, words):
    out = []
    for _ in range(words):
        w = "".join(rng.choice(SYLLABLES) for _ in range(rng.randint(2, 3)))
        out.append(w.capitalize())
    return out


def sentence(tokens):
    # Matches the library's detokenizer for word tokens plus a final period.
    return " ".join(tokens[:-1]) + tokens[-1]


def make_record(rng, key, labels_plan):
    """labels_plan: list of label lists, one per relation."""
    tokens = list(rng.choice(FILLERS))
    ner = []
    relations = []
    for i, labels in enumerate(labels_plan):
        if i > 0:
            tokens += [rng.choice(["and", "while", "whereas"])]
        head = name(rng, rng.randint(1, 2))
        tail = name(rng, rng.randint(1, 2))
        hs = len(tokens)
        tokens += head
        he = len(tokens) - 1
        trigger = " ".join(rng.choice(TRIGGERS[l]) for l in labels).split()
        tokens += trigger
        ts = len(tokens)
        tokens += tail
        te = len(tokens) - 1
        ner.append([hs, he, rng.choice(TYPES)])
        ner.append([ts, te, rng.choice(TYPES)])
        for l in labels:
            relations.append([hs, he, ts, te, l, "", False, False])
    if rng.random() < 0.3:
        extra = name(rng, 1)
        tokens += ["near"]
        s = len(tokens)
        tokens += extra
        ner.append([s, s, "location"])
    tokens.append(".")
    return {"doc_key": key, "sentence": tokens, "ner": ner, "relations": relations}


def label_plan(rng, n_relations):
    plan = []
    for _ in range(n_relations):
        r = rng.random()
        if r < 0.12:
            plan.append(list(rng.choice(MULTI)))
        else:
            # Skewed distribution, like real data.
            weights = [1.0 / (1 + 0.25 * i) for i in range(len(LABELS))]
            plan.append([rng.choices(LABELS, weights=weights)[0]])
    return plan


def support(rng, rec, bad=False):
    toks = rec["sentence"]
    ents = [" ".join(toks[s:e + 1]) for s, e, _ in rec["ner"]]
    orig = sentence(toks)
    if bad:
        return f"{ents[0]} was busy. {orig}"
    lines = [
        f"Background coverage often mentions {ents[0]}.",
        orig,
        f"Observers noted that {ents[-1]} drew attention.",
        f"Later reports linked {ents[0]} and {ents[1]} again.",
    ]
    if rng.random() < 0.5:
        lines.append("The story continued to develop.")
    return " ".join(lines)


def write_jsonl(path, records):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps(r, separators=(",", ":")) + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).parent))
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    rng = random.Random(args.seed)

    fixtures = {}
    sizes = {"train": 164, "dev": 350, "test": 400}
    for split, n in sizes.items():
        records = []
        for i in range(n):
            rec = make_record(rng, f"news-{split}-{i:04d}",
                              label_plan(rng, rng.choice([1, 1, 2, 2, 3])))
            records.append(rec)
            roll = rng.random()
            # Most sentences get a fixture; a few get a malformed one that
            # forces the fallback path; the rest use the synthesized paragraph.
            if roll < 0.6 or roll >= 0.62:
                if roll < 0.6:
                    key = hashlib.sha256(sentence(rec["sentence"]).encode()).hexdigest()
                    fixtures[key] = support(rng, rec)
            else:
                key = hashlib.sha256(sentence(rec["sentence"]).encode()).hexdigest()
                fixtures[key] = support(rng, rec, bad=True)
        write_jsonl(out / "news" / f"news-{split}.json", records)
    with open(out / "news" / "fixtures.json", "w", encoding="utf-8") as f:
        json.dump(fixtures, f, indent=1, sort_keys=True)
        f.write("\n")

    # Ten sentences that together carry every label.
    plans = [[[LABELS[2 * i]], [LABELS[2 * i + 1]]] for i in range(8)]
    plans.append([["RELATED-TO"]])
    plans.append([["PART-OF", "PHYSICAL"]])
    overfit = [make_record(rng, f"overfit-{i:02d}", p) for i, p in enumerate(plans)]
    write_jsonl(out / "overfit" / "news-train.json", overfit)


if __name__ == "__main__":
    main()
