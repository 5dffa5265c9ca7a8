"""Regenerate the bundled toy fixture in src/tnorm/data/.

Two gold sets ("a" and "b") with disjoint OOV words share one 50-word
lexicon and one 16-dimensional embedding file.  Run from the repo root:

    python tests/data/make_toy_fixture.py
"""

from pathlib import Path

import numpy as np

DIM = 16
SEED = 20171127

LEXICON = """
you are your someone today tomorrow tonight great please thanks love people
before good really because what friend birthday message picture text school
weekend though through never always every girl night the and for with have
this that just like know time back think want make going see need still
well happy
""".split()

GOLD_A = {
    "u": "you", "r": "are", "ur": "your", "sum1": "someone", "2day": "today",
    "tmrw": "tomorrow", "gr8": "great", "pls": "please", "thx": "thanks",
    "luv": "love", "ppl": "people", "b4": "before", "gud": "good", "rly": "really",
    "cuz": "because", "wat": "what", "frnd": "friend", "bday": "birthday",
    "msg": "message", "pic": "picture", "txt": "text", "skool": "school",
    "wknd": "weekend", "tho": "though", "thru": "through", "nvr": "never",
    "alwys": "always", "evry": "every", "gurl": "girl", "nite": "night",
    # gold targets outside the lexicon: never matchable
    "omg": "oh", "lol": "laughing", "tbh": "honestly", "brb": "be",
    "jk": "joking", "fml": "my", "lmk": "let",
}

GOLD_B = {
    "ya": "you", "ar": "are", "yr": "your", "sumone": "someone", "2dy": "today",
    "tmr": "tomorrow", "gr8t": "great", "plz": "please", "thnx": "thanks",
    "lov": "love", "peeps": "people", "bfore": "before", "gd": "good",
    "realy": "really", "bc": "because", "wut": "what", "fren": "friend",
    "bdae": "birthday", "mesage": "message", "pik": "picture", "txtt": "text",
    "skul": "school", "wkend": "weekend", "tho0": "though", "thruu": "through",
    "neva": "never", "allways": "always", "evrey": "every", "grl": "girl",
    "2nite": "tonight",
    "idk": "dunno", "smh": "shaking", "imo": "opinion", "ikr": "i", "wtf": "why",
    "hmu": "hit", "tbf": "fair",
}

# OOV words left without a vector (contextual similarity undefined)
NO_VECTOR = {"sum1", "alwys", "sumone", "allways", "tho0",
             "omg", "lol", "tbh", "brb", "jk", "fml", "lmk",
             "idk", "smh", "imo", "ikr", "wtf", "hmu", "tbf"}


def main() -> None:
    rng = np.random.default_rng(SEED)
    vectors = {w: rng.normal(size=DIM) for w in LEXICON}
    for gold in (GOLD_A, GOLD_B):
        for oov, iv in gold.items():
            if oov in NO_VECTOR:
                continue
            base = vectors.get(iv)
            if base is None:
                vectors[oov] = rng.normal(size=DIM)
            else:
                # noisy copy of the target's vector: cosine mostly 0.4 to 0.9
                mix = rng.uniform(0.4, 1.2)
                vectors[oov] = base + rng.normal(size=DIM) * mix
    out = Path(__file__).resolve().parents[2] / "src" / "tnorm" / "data"
    out.mkdir(parents=True, exist_ok=True)
    (out / "toy_lexicon.txt").write_text("# toy IV lexicon\n" + "\n".join(LEXICON) + "\n")
    for name, gold in (("a", GOLD_A), ("b", GOLD_B)):
        (out / f"toy_gold_{name}.tsv").write_text(
            "".join(f"{o}\t{i}\n" for o, i in gold.items()))
    with open(out / "toy_embeddings.txt", "w") as fh:
        fh.write(f"{len(vectors)} {DIM}\n")
        for w, v in vectors.items():
            fh.write(w + " " + " ".join(f"{x:.6f}" for x in v) + "\n")
    print(f"wrote fixture with {len(LEXICON)} IV words, {len(vectors)} vectors to {out}")


if __name__ == "__main__":
    main()
