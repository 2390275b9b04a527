"""Builds fixtures/study/annotations.csv.

Raw annotations were never released, so each (model, context mode, language)
group is synthesized: two annotators rate the study questions on the 1-7
scale such that the group mean, printed to two decimals, equals the
published bar value and the annotator Pearson r, printed to three decimals,
equals the published agreement. Pearson r here comes from the standard
library, independently of the Rust implementation.

Run from the repository root: python3 fixtures/tools/make_study_fixture.py
"""

import csv
import json
import random
import statistics
from pathlib import Path

ROOT = Path(__file__).resolve().parents[2]
QUESTIONS = json.loads((ROOT / "data" / "study_questions.json").read_text())["questions"]

# (model, mode, language): (published mean, published agreement, questions used)
TARGETS = {
    ("gpt-3.5-turbo", "english", "en"): (5.19, 0.785, 18),
    ("gpt-3.5-turbo", "english", "es"): (5.14, 0.547, 18),
    ("gpt-3.5-turbo", "english", "ja"): (4.78, 0.847, 18),
    ("gpt-3.5-turbo", "english", "zh"): (4.58, 0.665, 18),
    ("gpt-3.5-turbo", "native", "en"): (5.69, 0.705, 18),
    ("gpt-3.5-turbo", "native", "es"): (3.69, 0.662, 18),
    ("gpt-3.5-turbo", "native", "ja"): (3.83, 0.878, 18),
    ("gpt-3.5-turbo", "native", "zh"): (4.36, 0.609, 18),
    ("gpt-4", "english", "en"): (6.28, 0.823, 18),
    ("gpt-4", "english", "es"): (5.36, 0.559, 18),
    ("gpt-4", "english", "ja"): (5.19, 0.843, 18),
    ("gpt-4", "english", "zh"): (5.06, 0.708, 18),
    ("gpt-4", "native", "en"): (6.47, 0.673, 18),
    # no k/36 prints as 5.41; 184/34 does, so this group has 17 questions
    ("gpt-4", "native", "es"): (5.41, 0.776, 17),
    ("gpt-4", "native", "ja"): (4.00, 0.900, 18),
    ("gpt-4", "native", "zh"): (4.58, 0.749, 18),
}


def total_for(mean, n_ratings):
    hits = [k for k in range(n_ratings, 7 * n_ratings + 1) if f"{k / n_ratings:.2f}" == f"{mean:.2f}"]
    if not hits:
        raise SystemExit(f"no integer total gives mean {mean} over {n_ratings} ratings")
    return hits[0]


def pearson_gap(a, b, r_target):
    if len(set(a)) < 2 or len(set(b)) < 2:
        return 2.0
    return abs(statistics.correlation(a, b) - r_target)


def solve(n, mean, r_target, rng):
    total = total_for(mean, 2 * n)
    while True:
        # start at the right total, then only make total-preserving moves
        scores = [rng.randint(1, 7) for _ in range(2 * n)]
        while sum(scores) != total:
            i = rng.randrange(2 * n)
            step = 1 if sum(scores) < total else -1
            if 1 <= scores[i] + step <= 7:
                scores[i] += step
        current = pearson_gap(scores[:n], scores[n:], r_target)
        for _ in range(5000):
            i, j = rng.randrange(2 * n), rng.randrange(2 * n)
            if i == j or scores[i] == 7 or scores[j] == 1:
                continue
            scores[i] += 1
            scores[j] -= 1
            gap = pearson_gap(scores[:n], scores[n:], r_target)
            if gap <= current:
                current = gap
            else:
                scores[i] -= 1
                scores[j] += 1
            a, b = scores[:n], scores[n:]
            if current < 0.0005 and f"{statistics.correlation(a, b):.3f}" == f"{r_target:.3f}":
                return a, b


def main():
    rng = random.Random(20231019)
    rows = []
    for (model, mode, lang), (mean, r, n) in TARGETS.items():
        a, b = solve(n, mean, r, rng)
        assert f"{(sum(a) + sum(b)) / (2 * n):.2f}" == f"{mean:.2f}"
        assert f"{statistics.correlation(a, b):.3f}" == f"{r:.3f}"
        for q, sa, sb in zip(QUESTIONS, a, b):
            text = f"I would feel ... (synthetic {model} completion, {mode} context, {lang})"
            rows.append([q["id"], lang, model, mode, f"{lang}-annotator-1", sa, text])
            rows.append([q["id"], lang, model, mode, f"{lang}-annotator-2", sb, text])
    out = ROOT / "fixtures" / "study" / "annotations.csv"
    with out.open("w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["question_id", "language", "model_id", "context_mode", "annotator_id", "score", "completion_text"])
        w.writerows(rows)
    print(f"wrote {len(rows)} rows to {out}")


if __name__ == "__main__":
    main()
