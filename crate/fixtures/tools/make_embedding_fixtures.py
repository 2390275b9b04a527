"""Writes the small embedding fixtures used by the CLI tests and examples.

ekman/: a 3-d synthetic space whose anchor lemmas sit on unit axes, so the
projected coordinates of the six basic emotions equal their first two
vector components.

similarity/: two seeded 4-d spaces over twelve lemmas plus golden
per-lemma correlations recomputed here with plain loops and
statistics.correlation.
"""

import json
import math
import pathlib
import random
import statistics

ROOT = pathlib.Path(__file__).resolve().parents[1]

EKMAN = {
    "fear": (-0.8508593, 1.045894),
    "anger": (-0.67413247, 0.76769996),
    "joy": (0.9546092, -0.21090859),
    "sadness": (-1.1178665, -0.27373743),
    "disgust": (-0.69370687, 0.60925367),
    "surprise": (0.3570112, 1.2101021),
}

ANCHORS = {
    "pleased": (1.0, 0.0),
    "miserable": (-1.0, 0.0),
    "alarmed": (0.0, 1.0),
    "sleepy": (0.0, -1.0),
}

SIM_LEMMAS = [
    "joy", "anger", "fear", "sadness", "disgust", "surprise",
    "pride", "shame", "guilt", "calm", "envy", "awe",
]


def lexicon_line(lemma, languages):
    phrases = {lang: {"feel": f"I feel {lemma}", "am": f"I am {lemma}"} for lang in languages}
    return json.dumps({"lemma": lemma, "phrases": phrases})


def write_lines(path, lines):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def ekman():
    lemmas = list(ANCHORS) + list(EKMAN)
    write_lines(ROOT / "ekman" / "lexicon.jsonl", [lexicon_line(l, ["en"]) for l in lemmas])
    rows = [json.dumps({"model_id": "synthetic-3d", "language": "en", "dim": 3})]
    for lemma, (v, a) in ANCHORS.items():
        rows.append(json.dumps({"lemma": lemma, "vector": [v, a, 0.0]}))
    depth = 0.25
    for lemma, (v, a) in EKMAN.items():
        # the third component is orthogonal to the plane and drops out
        rows.append(json.dumps({"lemma": lemma, "vector": [v, a, depth]}))
        depth = -depth
    write_lines(ROOT / "ekman" / "embeddings.jsonl", rows)
    anchors = {
        "version": 1,
        "positive_valence": ["pleased"],
        "negative_valence": ["miserable"],
        "high_arousal": ["alarmed"],
        "low_arousal": ["sleepy"],
    }
    (ROOT / "ekman" / "anchors.json").write_text(json.dumps(anchors, indent=2) + "\n", encoding="utf-8")
    expected = {k: {"valence": v, "arousal": a} for k, (v, a) in EKMAN.items()}
    (ROOT / "ekman" / "expected.json").write_text(json.dumps(expected, indent=2) + "\n", encoding="utf-8")


def ranks(xs):
    return [1 + sum(w < v for w in xs) + (sum(w == v for w in xs) - 1) / 2 for v in xs]


def euclidean(u, v):
    return math.sqrt(sum((a - b) ** 2 for a, b in zip(u, v)))


def cosine(u, v):
    uv = sum(a * b for a, b in zip(u, v))
    d = 1 - uv / (math.sqrt(sum(a * a for a in u)) * math.sqrt(sum(b * b for b in v)))
    return min(max(d, 0.0), 2.0)


def golden(left, right, dist, ranked):
    per = []
    for i in range(len(left)):
        dl = [dist(left[i], left[j]) for j in range(len(left)) if j != i]
        dr = [dist(right[i], right[j]) for j in range(len(right)) if j != i]
        if ranked:
            dl, dr = ranks(dl), ranks(dr)
        per.append(statistics.correlation(dl, dr))
    mean = sum(per) / len(per)
    std = math.sqrt(sum((r - mean) ** 2 for r in per) / len(per))
    return {"per_lemma": per, "mean_r": mean, "std_r": std}


def similarity():
    rng = random.Random(20231019)
    left = [[round(rng.gauss(0, 1), 6) for _ in range(4)] for _ in SIM_LEMMAS]
    right = [[round(x + rng.gauss(0, 0.6), 6) for x in v] for v in left]
    write_lines(ROOT / "similarity" / "lexicon.jsonl", [lexicon_line(l, ["en"]) for l in SIM_LEMMAS])
    for name, model, vecs in (("left", "synthetic-mono", left), ("right", "synthetic-multi", right)):
        rows = [json.dumps({"model_id": model, "language": "en", "dim": 4})]
        rows += [json.dumps({"lemma": l, "vector": v}) for l, v in zip(SIM_LEMMAS, vecs)]
        write_lines(ROOT / "similarity" / f"{name}.jsonl", rows)
    gold = {
        "lemmas": SIM_LEMMAS,
        "euclidean_pearson": golden(left, right, euclidean, False),
        "cosine_spearman": golden(left, right, cosine, True),
    }
    (ROOT / "similarity" / "golden.json").write_text(json.dumps(gold, indent=2) + "\n", encoding="utf-8")


if __name__ == "__main__":
    ekman()
    similarity()
    print("wrote ekman/ and similarity/ fixtures")
