"""Writes the pride/shame scenario log-probability fixture.

Each record carries the published summed log-probability of the feeling
sentence as a single token, so summing reproduces the printed value exactly.
Japanese prompt wording was not published; those records reuse the English
context text and use the Japanese surface form of the emotion word as the
feeling text.
"""

import json
import pathlib

WORDS = [
    ("proud", "pride", "誇らしい"),
    ("happy", "pride", "嬉しい"),
    ("ashamed", "shame", "恥ずかしい"),
    ("embarrassed", "shame", "照れくさい"),
]

SCENARIOS = [
    ("teacher-self", "My teacher complimented me in front of the class.", "I feel",
     ["-22.386", "-26.923", "-29.947", "-25.872"], ["-23.012", "-30.642", "-32.584", "-41.096"]),
    ("teacher-friend", "My teacher complimented my friend in front of the class.", "I expect he feels",
     ["-36.620", "-39.324", "-46.868", "-42.395"], ["-25.175", "-28.946", "-33.690", "-33.736"]),
    ("award-self", "I received an award in front of my coworkers.", "I feel",
     ["-17.834", "-23.863", "-24.926", "-23.890"], ["-14.236", "-20.497", "-22.559", "-27.832"]),
    ("award-colleague", "My colleague received an award in front of our coworkers.", "I expect he feels",
     ["-29.238", "-33.736", "-39.236", "-34.866"], ["-14.017", "-18.251", "-23.928", "-21.340"]),
    ("parents-self", "My parents praised me in front of my siblings.", "I feel",
     ["-17.925", "-21.063", "-24.843", "-22.504"], ["-23.258", "-30.589", "-30.610", "-40.588"]),
    ("parents-brother", "My parents praised my brother in front of our siblings.", "I expect he feels",
     ["-34.805", "-36.931", "-42.669", "-38.356"], ["-30.318", "-33.213", "-35.108", "-35.152"]),
]


def main():
    out = pathlib.Path(__file__).resolve().parents[1] / "logprob" / "scenarios.jsonl"
    lines = []
    for sid, context, lead, en, ja in SCENARIOS:
        for (word, cls, ja_word), en_v, ja_v in zip(WORDS, en, ja):
            for lang, value, feeling in (("en", en_v, f"{lead} {word}."), ("ja", ja_v, f"{ja_word}。")):
                record = {
                    "scenario_id": sid,
                    "language": lang,
                    "model_id": "davinci",
                    "context_text": context,
                    "feeling_text": feeling,
                    "emotion_word": word,
                    "emotion_class": cls,
                    "token_logprobs": [{"token": feeling, "logprob": float(value)}],
                }
                lines.append(json.dumps(record, ensure_ascii=False))
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(lines)} records to {out}")


if __name__ == "__main__":
    main()
