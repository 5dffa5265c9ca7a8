"""Double Metaphone encoding and code-level phonetic similarity.

The encoder follows Lawrence Philips' published rule set (as distributed in
Kevin Atkinson's C implementation), including the default truncation of both
codes to four symbols.  Only alphabetic characters of the input take part in
encoding.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Optional

from tnorm import probe
from tnorm.textsim import string_similarity

DEFAULT_MAX_CODE_LEN = 4

_VOWELS = frozenset("AEIOUY")
_PAD = "     "


@dataclass(frozen=True)
class PhoneticCodes:
    primary: str
    alternate: Optional[str] = None

    def codes(self) -> tuple[str, ...]:
        """Non-empty codes, primary first."""
        return tuple(c for c in (self.primary, self.alternate) if c)


class _Encoder:
    # Mirrors the state of the reference loop: a cursor over the padded,
    # uppercased word and the two code buffers being built.

    def __init__(self, letters: str):
        self.s = letters + _PAD
        self.length = len(letters)
        self.last = self.length - 1
        self.primary: list[str] = []
        self.secondary: list[str] = []
        self.slavo_germanic = any(x in letters for x in ("W", "K", "CZ", "WITZ"))

    def at(self, start: int, *subs: str) -> bool:
        if start < 0 or start >= len(self.s):
            return False
        return any(self.s.startswith(sub, start) for sub in subs)

    def char(self, pos: int) -> str:
        if pos < 0 or pos >= len(self.s):
            return ""
        return self.s[pos]

    def vowel(self, pos: int) -> bool:
        return self.char(pos) in _VOWELS

    def add(self, main: str, alt: Optional[str] = None) -> None:
        self.primary.append(main)
        self.secondary.append(main if alt is None else alt)

    def run(self) -> tuple[str, str]:
        cur = 0
        if self.at(0, "GN", "KN", "PN", "WR", "PS"):
            cur += 1
        if self.char(0) == "X":
            self.add("S")
            cur += 1
        while cur < self.length:
            ch = self.s[cur]
            handler = _HANDLERS.get(ch)
            if handler is None:
                if ch in _VOWELS and cur == 0:
                    self.add("A")
                cur += 1
            else:
                cur = handler(self, cur)
        return "".join(self.primary), "".join(self.secondary)

    # -- one method per consonant; each returns the next cursor position --

    def _b(self, cur):
        self.add("P")
        return cur + (2 if self.char(cur + 1) == "B" else 1)

    def _c_cedilla(self, cur):
        self.add("S")
        return cur + 1

    def _c(self, cur):
        at, char = self.at, self.char
        # germanic 'ach' unless followed by i or e (bacher/macher excepted)
        if (cur > 1 and not self.vowel(cur - 2) and at(cur - 1, "ACH")
                and char(cur + 2) != "I"
                and (char(cur + 2) != "E" or at(cur - 2, "BACHER", "MACHER"))):
            self.add("K")
            return cur + 2
        if cur == 0 and at(cur, "CAESAR"):
            self.add("S")
            return cur + 2
        if at(cur, "CHIA"):
            self.add("K")
            return cur + 2
        if at(cur, "CH"):
            if cur > 0 and at(cur, "CHAE"):
                self.add("K", "X")
                return cur + 2
            if (cur == 0
                    and (at(cur + 1, "HARAC", "HARIS") or at(cur + 1, "HOR", "HYM", "HIA", "HEM"))
                    and not at(0, "CHORE")):
                self.add("K")
                return cur + 2
            if (at(0, "VAN ", "VON ", "SCH")
                    or at(cur - 2, "ORCHES", "ARCHIT", "ORCHID")
                    or at(cur + 2, "T", "S")
                    or ((at(cur - 1, "A", "O", "U", "E") or cur == 0)
                        and at(cur + 2, "L", "R", "N", "M", "B", "H", "F", "V", "W", " "))):
                self.add("K")
            elif cur > 0:
                if at(0, "MC"):
                    self.add("K")
                else:
                    self.add("X", "K")
            else:
                self.add("X")
            return cur + 2
        if at(cur, "CZ") and not at(cur - 2, "WICZ"):
            self.add("S", "X")
            return cur + 2
        if at(cur + 1, "CIA"):
            self.add("X")
            return cur + 3
        if at(cur, "CC") and not (cur == 1 and char(0) == "M"):
            if at(cur + 2, "I", "E", "H") and not at(cur + 2, "HU"):
                if (cur == 1 and char(cur - 1) == "A") or at(cur - 1, "UCCEE", "UCCES"):
                    self.add("KS")
                else:
                    self.add("X")
                return cur + 3
            self.add("K")
            return cur + 2
        if at(cur, "CK", "CG", "CQ"):
            self.add("K")
            return cur + 2
        if at(cur, "CI", "CE", "CY"):
            if at(cur, "CIO", "CIE", "CIA"):
                self.add("S", "X")
            else:
                self.add("S")
            return cur + 2
        self.add("K")
        if at(cur + 1, " C", " Q", " G"):
            return cur + 3
        if at(cur + 1, "C", "K", "Q") and not at(cur + 1, "CE", "CI"):
            return cur + 2
        return cur + 1

    def _d(self, cur):
        if self.at(cur, "DG"):
            if self.at(cur + 2, "I", "E", "Y"):
                self.add("J")
                return cur + 3
            self.add("TK")
            return cur + 2
        self.add("T")
        return cur + (2 if self.at(cur, "DT", "DD") else 1)

    def _f(self, cur):
        self.add("F")
        return cur + (2 if self.char(cur + 1) == "F" else 1)

    def _g(self, cur):
        at, char = self.at, self.char
        if char(cur + 1) == "H":
            if cur > 0 and not self.vowel(cur - 1):
                self.add("K")
                return cur + 2
            if cur == 0:
                self.add("J" if char(cur + 2) == "I" else "K")
                return cur + 2
            # Parker's rule: silent 'gh' as in 'hugh', 'bough', 'broughton'
            if ((cur > 1 and at(cur - 2, "B", "H", "D"))
                    or (cur > 2 and at(cur - 3, "B", "H", "D"))
                    or (cur > 3 and at(cur - 4, "B", "H"))):
                return cur + 2
            if cur > 2 and char(cur - 1) == "U" and at(cur - 3, "C", "G", "L", "R", "T"):
                self.add("F")
            elif cur > 0 and char(cur - 1) != "I":
                self.add("K")
            return cur + 2
        if char(cur + 1) == "N":
            if cur == 1 and self.vowel(0) and not self.slavo_germanic:
                self.add("KN", "N")
            elif not at(cur + 2, "EY") and char(cur + 1) != "Y" and not self.slavo_germanic:
                self.add("N", "KN")
            else:
                self.add("KN")
            return cur + 2
        if at(cur + 1, "LI") and not self.slavo_germanic:
            self.add("KL", "L")
            return cur + 2
        if cur == 0 and (char(cur + 1) == "Y" or at(cur + 1, "ES", "EP", "EB", "EL", "EY", "IB",
                                                      "IL", "IN", "IE", "EI", "ER")):
            self.add("K", "J")
            return cur + 2
        if ((at(cur + 1, "ER") or char(cur + 1) == "Y")
                and not at(0, "DANGER", "RANGER", "MANGER")
                and not at(cur - 1, "E", "I")
                and not at(cur - 1, "RGY", "OGY")):
            self.add("K", "J")
            return cur + 2
        if at(cur + 1, "E", "I", "Y") or at(cur - 1, "AGGI", "OGGI"):
            if at(0, "VAN ", "VON ", "SCH") or at(cur + 1, "ET"):
                self.add("K")
            elif at(cur + 1, "IER "):
                self.add("J")
            else:
                self.add("J", "K")
            return cur + 2
        self.add("K")
        return cur + (2 if char(cur + 1) == "G" else 1)

    def _h(self, cur):
        if (cur == 0 or self.vowel(cur - 1)) and self.vowel(cur + 1):
            self.add("H")
            return cur + 2
        return cur + 1

    def _j(self, cur):
        at, char = self.at, self.char
        if at(cur, "JOSE") or at(0, "SAN "):
            if (cur == 0 and char(cur + 4) == " ") or at(0, "SAN "):
                self.add("H")
            else:
                self.add("J", "H")
            return cur + 1
        if cur == 0 and not at(cur, "JOSE"):
            self.add("J", "A")
        elif self.vowel(cur - 1) and not self.slavo_germanic and char(cur + 1) in ("A", "O"):
            self.add("J", "H")
        elif cur == self.last:
            self.add("J", "")
        elif not at(cur + 1, "L", "T", "K", "S", "N", "M", "B", "Z") and not at(cur - 1, "S", "K", "L"):
            self.add("J")
        return cur + (2 if char(cur + 1) == "J" else 1)

    def _k(self, cur):
        self.add("K")
        return cur + (2 if self.char(cur + 1) == "K" else 1)

    def _l(self, cur):
        at = self.at
        if self.char(cur + 1) == "L":
            # spanish 'cabrillo', 'gallegos'
            if ((cur == self.length - 3 and at(cur - 1, "ILLO", "ILLA", "ALLE"))
                    or ((at(self.last - 1, "AS", "OS") or at(self.last, "A", "O"))
                        and at(cur - 1, "ALLE"))):
                self.add("L", "")
                return cur + 2
            self.add("L")
            return cur + 2
        self.add("L")
        return cur + 1

    def _m(self, cur):
        self.add("M")
        if ((self.at(cur - 1, "UMB") and (cur + 1 == self.last or self.at(cur + 2, "ER")))
                or self.char(cur + 1) == "M"):
            return cur + 2
        return cur + 1

    def _n(self, cur):
        self.add("N")
        return cur + (2 if self.char(cur + 1) == "N" else 1)

    def _n_tilde(self, cur):
        self.add("N")
        return cur + 1

    def _p(self, cur):
        if self.char(cur + 1) == "H":
            self.add("F")
            return cur + 2
        self.add("P")
        return cur + (2 if self.at(cur + 1, "P", "B") else 1)

    def _q(self, cur):
        self.add("K")
        return cur + (2 if self.char(cur + 1) == "Q" else 1)

    def _r(self, cur):
        # french 'rogier', but not 'hochmeier'
        if (cur == self.last and not self.slavo_germanic and self.at(cur - 2, "IE")
                and not self.at(cur - 4, "ME", "MA")):
            self.add("", "R")
        else:
            self.add("R")
        return cur + (2 if self.char(cur + 1) == "R" else 1)

    def _s(self, cur):
        at, char = self.at, self.char
        if at(cur - 1, "ISL", "YSL"):
            return cur + 1
        if cur == 0 and at(cur, "SUGAR"):
            self.add("X", "S")
            return cur + 1
        if at(cur, "SH"):
            self.add("S" if at(cur + 1, "HEIM", "HOEK", "HOLM", "HOLZ") else "X")
            return cur + 2
        if at(cur, "SIO", "SIA", "SIAN"):
            if self.slavo_germanic:
                self.add("S")
            else:
                self.add("S", "X")
            return cur + 3
        if (cur == 0 and at(cur + 1, "M", "N", "L", "W")) or at(cur + 1, "Z"):
            self.add("S", "X")
            return cur + (2 if at(cur + 1, "Z") else 1)
        if at(cur, "SC"):
            if char(cur + 2) == "H":
                if at(cur + 3, "OO", "ER", "EN", "UY", "ED", "EM"):
                    if at(cur + 3, "ER", "EN"):
                        self.add("X", "SK")
                    else:
                        self.add("SK")
                elif cur == 0 and not self.vowel(3) and char(3) != "W":
                    self.add("X", "S")
                else:
                    self.add("X")
                return cur + 3
            if at(cur + 2, "I", "E", "Y"):
                self.add("S")
            else:
                self.add("SK")
            return cur + 3
        if cur == self.last and at(cur - 2, "AI", "OI"):
            self.add("", "S")
        else:
            self.add("S")
        return cur + (2 if at(cur + 1, "S", "Z") else 1)

    def _t(self, cur):
        at = self.at
        if at(cur, "TION", "TIA", "TCH"):
            self.add("X")
            return cur + 3
        if at(cur, "TH", "TTH"):
            if at(cur + 2, "OM", "AM") or at(0, "VAN ", "VON ", "SCH"):
                self.add("T")
            else:
                self.add("0", "T")
            return cur + 2
        self.add("T")
        return cur + (2 if at(cur + 1, "T", "D") else 1)

    def _v(self, cur):
        self.add("F")
        return cur + (2 if self.char(cur + 1) == "V" else 1)

    def _w(self, cur):
        at = self.at
        if at(cur, "WR"):
            self.add("R")
            return cur + 2
        if cur == 0 and (self.vowel(cur + 1) or at(cur, "WH")):
            # Wasserman should match Vasserman
            if self.vowel(cur + 1):
                self.add("A", "F")
            else:
                self.add("A")
        # Arnow should match Arnoff
        if ((cur == self.last and self.vowel(cur - 1))
                or at(cur - 1, "EWSKI", "EWSKY", "OWSKI", "OWSKY")
                or at(0, "SCH")):
            self.add("", "F")
            return cur + 1
        if at(cur, "WICZ", "WITZ"):
            self.add("TS", "FX")
            return cur + 4
        return cur + 1

    def _x(self, cur):
        # french 'breaux'
        if not (cur == self.last and (self.at(cur - 3, "IAU", "EAU") or self.at(cur - 2, "AU", "OU"))):
            self.add("KS")
        return cur + (2 if self.at(cur + 1, "C", "X") else 1)

    def _z(self, cur):
        char = self.char
        if char(cur + 1) == "H":
            # chinese pinyin 'zhao'
            self.add("J")
            return cur + 2
        if (self.at(cur + 1, "ZO", "ZI", "ZA")
                or (self.slavo_germanic and cur > 0 and char(cur - 1) != "T")):
            self.add("S", "TS")
        else:
            self.add("S")
        return cur + (2 if char(cur + 1) == "Z" else 1)


_HANDLERS = {
    "B": _Encoder._b, "Ç": _Encoder._c_cedilla, "C": _Encoder._c, "D": _Encoder._d,
    "F": _Encoder._f, "G": _Encoder._g, "H": _Encoder._h, "J": _Encoder._j,
    "K": _Encoder._k, "L": _Encoder._l, "M": _Encoder._m, "N": _Encoder._n,
    "Ñ": _Encoder._n_tilde, "P": _Encoder._p, "Q": _Encoder._q, "R": _Encoder._r,
    "S": _Encoder._s, "T": _Encoder._t, "V": _Encoder._v, "W": _Encoder._w,
    "X": _Encoder._x, "Z": _Encoder._z,
}


def encode(word: str, max_code_len: Optional[int] = DEFAULT_MAX_CODE_LEN) -> PhoneticCodes:
    """Double Metaphone codes of ``word``.

    Non-letters are dropped before encoding, so a word without letters
    encodes to an empty primary and no alternate.  ``max_code_len=None``
    disables truncation.
    """
    if max_code_len is not None and max_code_len < 1:
        raise ValueError("max_code_len must be >= 1")
    letters = "".join(ch for ch in unicodedata.normalize("NFC", word) if ch.isalpha()).upper()
    if not letters:
        return PhoneticCodes("")
    primary, secondary = _Encoder(letters).run()
    if max_code_len is not None:
        primary, secondary = primary[:max_code_len], secondary[:max_code_len]
    return PhoneticCodes(primary, secondary if secondary != primary else None)


def phonetic_similarity(a: str, b: str, max_code_len: Optional[int] = DEFAULT_MAX_CODE_LEN) -> Optional[float]:
    """Best string similarity over all pairs of codes of ``a`` and ``b``.

    Returns ``None`` when either word has no usable code; callers treat that
    as an undefined component rather than a zero.
    """
    probe.record("phonetic")
    codes_a = encode(a, max_code_len).codes()
    codes_b = encode(b, max_code_len).codes()
    if not codes_a or not codes_b:
        return None
    return max(string_similarity(x, y) for x in codes_a for y in codes_b)
