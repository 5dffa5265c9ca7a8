"""Regenerate metaphone_conformance.json from the abydos reference encoder.

Dev-only: abydos is not a runtime or test dependency.  Run from the repo root:

    python tests/data/make_metaphone_fixture.py
"""

import json
from pathlib import Path

from abydos.phonetic import DoubleMetaphone

WORDS = """
smith schmidt night nite knight gnome pneumonia wright psychology xavier xeno
caesar chianti michael chemistry chorus character charisma chore church
orchestra architect orchid mchugh mcclellan czerny focaccia bellocchio bacchus
accident accede succeed success bacci bertucci mac caffrey
edge edgar budget ladder width laugh cough rough tough gough hugh bough
broughton ghislane ghiradelli ghost tagliaro agnes cagney gnarl sign campagna
gesture gyro giraffe danger ranger manger biaggi hogg egg gauge rogier
hochmeier jose san jacinto yankelovich jankelowicz bajador raj hajj jump
cabrillo gallegos villa allegro dumb thumb plumber campbell raspberry
phone philip queen quick resnais artois island isle carlisle carlysle
sugar shoe holmes schooner schermerhorn schenker school schlesinger
schwartz science scythe skate nation station tiara match thomas thames
thumbnail with van von wasserman vasserman arnow arnoff filipowicz
filipowitz wholesale whale breaux zhao zola zipper pizza lazy
are you your someone today tomorrow tonight because please thanks love
people good great really see sure tweet twitter follow friend girl boy
before after always never every though through thought enough weight
eight photo laugh funny happy birthday morning evening night week weekend
school teacher student music video phone call text message picture
dictionary normalize similarity weight threshold neighbor matching vector
embedding context string phonetic vocabulary precision recall measure
xylophone exactly excellent axe box fix tax mix six
judge jewel jelly region magic logic allergy energy strategy
cello celtic circle cycle cinema accent vaccine succinct coccyx
""".split()


def main() -> None:
    words = sorted(set(WORDS))
    short = DoubleMetaphone(max_length=4)
    full = DoubleMetaphone(max_length=-1)
    rows = []
    for w in words:
        p4, a4 = short.encode(w)
        pf, af = full.encode(w)
        rows.append({
            "word": w,
            "primary": p4,
            "alternate": a4 if a4 and a4 != p4 else None,
            "primary_full": pf,
            "alternate_full": af if af and af != pf else None,
        })
    out = Path(__file__).with_name("metaphone_conformance.json")
    out.write_text(json.dumps(rows, indent=1) + "\n")
    print(f"wrote {len(rows)} words to {out}")


if __name__ == "__main__":
    main()
