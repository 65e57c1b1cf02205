"""Deterministic tokenizer and rule-based lemmatizer.

No external NLP dependency: whitespace+punctuation tokenization with
character offsets, and a lemmatizer built from an irregular-form table
plus ordered suffix rules. Good enough for trigger lookup; not a full
morphological analyzer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_TOKEN_RE = re.compile(r"[A-Za-z0-9]+(?:'[A-Za-z]+)*|[^\sA-Za-z0-9]")

# Irregular surface form -> lemma. Covers common English irregular verbs
# (past, participle, 3sg where odd), noun plurals, and contractions.
IRREGULAR_LEMMAS: dict[str, str] = {
    # be / auxiliaries
    "am": "be", "is": "be", "are": "be", "was": "be", "were": "be",
    "been": "be", "being": "be",
    "has": "have", "had": "have", "having": "have",
    "does": "do", "did": "do", "done": "do", "doing": "do",
    "won't": "will", "can't": "can", "cannot": "can",
    "don't": "do", "doesn't": "do", "didn't": "do",
    "isn't": "be", "aren't": "be", "wasn't": "be", "weren't": "be",
    "hasn't": "have", "haven't": "have", "hadn't": "have",
    # irregular verb forms
    "ate": "eat", "eaten": "eat", "eating": "eat",
    "took": "take", "taken": "take", "taking": "take",
    "got": "get", "gotten": "get", "getting": "get",
    "gave": "give", "given": "give", "giving": "give",
    "went": "go", "gone": "go", "goes": "go", "going": "go",
    "came": "come", "coming": "come",
    "saw": "see", "seen": "see", "seeing": "see",
    "knew": "know", "known": "know", "knowing": "know",
    "told": "tell", "telling": "tell",
    "said": "say", "saying": "say",
    "made": "make", "making": "make",
    "felt": "feel", "feeling": "feel",
    "found": "find", "finding": "find",
    "bought": "buy", "buying": "buy",
    "brought": "bring", "bringing": "bring",
    "thought": "think", "thinking": "think",
    "taught": "teach", "teaching": "teach",
    "caught": "catch", "catching": "catch",
    "sold": "sell", "selling": "sell",
    "sent": "send", "sending": "send",
    "spent": "spend", "spending": "spend",
    "built": "build", "building": "build",
    "heard": "hear", "hearing": "hear",
    "held": "hold", "holding": "hold",
    "kept": "keep", "keeping": "keep",
    "left": "leave", "leaving": "leave",
    "lost": "lose", "losing": "lose",
    "met": "meet", "meeting": "meet",
    "paid": "pay", "paying": "pay",
    "ran": "run", "running": "run",
    "sat": "sit", "sitting": "sit",
    "slept": "sleep", "sleeping": "sleep",
    "spoke": "speak", "spoken": "speak", "speaking": "speak",
    "stood": "stand", "standing": "stand",
    "swam": "swim", "swum": "swim", "swimming": "swim",
    "threw": "throw", "thrown": "throw", "throwing": "throw",
    "understood": "understand", "understanding": "understand",
    "woke": "wake", "woken": "wake", "waking": "wake",
    "wore": "wear", "worn": "wear", "wearing": "wear",
    "won": "win", "winning": "win",
    "wrote": "write", "written": "write", "writing": "write",
    "drank": "drink", "drunk": "drink", "drinking": "drink",
    "drove": "drive", "driven": "drive", "driving": "drive",
    "fell": "fall", "fallen": "fall", "falling": "fall",
    "flew": "fly", "flown": "fly", "flying": "fly",
    "grew": "grow", "grown": "grow", "growing": "grow",
    "hid": "hide", "hidden": "hide", "hiding": "hide",
    "rode": "ride", "ridden": "ride", "riding": "ride",
    "rose": "rise", "risen": "rise", "rising": "rise",
    "sang": "sing", "sung": "sing", "singing": "sing",
    "shook": "shake", "shaken": "shake", "shaking": "shake",
    "became": "become", "becoming": "become",
    "began": "begin", "begun": "begin", "beginning": "begin",
    "broke": "break", "broken": "break", "breaking": "break",
    "chose": "choose", "chosen": "choose", "choosing": "choose",
    "forgot": "forget", "forgotten": "forget", "forgetting": "forget",
    "moved": "move", "moving": "move",
    "used": "use", "using": "use",
    "liked": "like", "liking": "like",
    "loved": "love", "loving": "love",
    "lived": "live", "living": "live",
    "arrived": "arrive", "arriving": "arrive",
    "received": "receive", "receiving": "receive",
    "believed": "believe", "believing": "believe",
    "smiled": "smile", "smiling": "smile",
    "cried": "cry", "crying": "cry",
    "carried": "carry", "carrying": "carry",
    "tried": "try", "trying": "try",
    "studied": "study", "studying": "study",
    "hoped": "hope", "hoping": "hope",
    "saved": "save", "saving": "save",
    "served": "serve", "serving": "serve",
    "shared": "share", "sharing": "share",
    "caused": "cause", "causing": "cause",
    "closed": "close", "closing": "close",
    "decided": "decide", "deciding": "decide",
    "noticed": "notice", "noticing": "notice",
    "placed": "place", "placing": "place",
    "raised": "raise", "raising": "raise",
    "scored": "score", "scoring": "score",
    "quarantined": "quarantine", "quarantining": "quarantine",
    "exposed": "expose", "exposing": "expose",
    "obscured": "obscure", "obscuring": "obscure",
    # noun plurals
    "children": "child", "men": "man", "women": "woman",
    "feet": "foot", "teeth": "tooth", "mice": "mouse", "geese": "goose",
    "people": "person", "wolves": "wolf", "leaves": "leaf",
    "lives": "life", "knives": "knife", "shelves": "shelf",
    "cookies": "cookie", "movies": "movie", "stories": "story",
    "babies": "baby", "families": "family", "parties": "party",
    "bodies": "body", "cities": "city",
    # adverbs / misc normalizations
    "better": "good", "best": "good", "worse": "bad", "worst": "bad",
    "its": "its", "this": "this",
}

_DOUBLE_CONSONANTS = ("bb", "dd", "gg", "mm", "nn", "pp", "rr", "tt")


def lemmatize(word: str) -> str:
    """Lowercase and reduce an inflected surface form to its lemma."""
    w = word.lower()
    if w in IRREGULAR_LEMMAS:
        return IRREGULAR_LEMMAS[w]
    if len(w) <= 3:
        return w
    if w.endswith("ies") and len(w) > 4:
        return w[:-3] + "y"
    if w.endswith("sses"):
        return w[:-2]
    if w.endswith(("shes", "ches", "xes", "zes", "oes")) and len(w) > 4:
        return w[:-2]
    if w.endswith("ing") and len(w) > 5:
        stem = w[:-3]
        if stem.endswith(_DOUBLE_CONSONANTS):
            return stem[:-1]
        return stem
    if w.endswith("ed") and len(w) > 4:
        stem = w[:-2]
        if stem.endswith(_DOUBLE_CONSONANTS):
            return stem[:-1]
        return stem
    if w.endswith("s") and not w.endswith(("ss", "us", "is")):
        return w[:-1]
    return w


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    char_span: tuple[int, int]
    is_function_word: bool = False

    @property
    def is_word(self) -> bool:
        return bool(re.match(r"[A-Za-z0-9]", self.surface))


@dataclass
class TokenSeq:
    """Ordered tokens with non-overlapping character spans over `text`."""

    text: str
    tokens: list[Token]

    def __iter__(self):
        return iter(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def lemmas(self) -> list[str]:
        return [t.lemma for t in self.tokens if t.is_word]

    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens if t.is_word]

    def span_text(self, span: tuple[int, int]) -> str:
        return self.text[span[0]:span[1]]


def tokenize(text: str, function_words: frozenset[str] | None = None) -> TokenSeq:
    """Split `text` into tokens with character offsets.

    Words keep internal apostrophes; every punctuation character is its
    own token. `function_words` marks tokens whose lowercased surface or
    lemma is in the set.
    """
    fw = function_words or frozenset()
    tokens: list[Token] = []
    for m in _TOKEN_RE.finditer(text):
        surface = m.group(0)
        if re.match(r"[A-Za-z0-9]", surface):
            lemma = lemmatize(surface)
            is_func = surface.lower() in fw or lemma in fw
        else:
            lemma = surface
            is_func = True
        tokens.append(Token(surface, lemma, (m.start(), m.end()), is_func))
    return TokenSeq(text=text, tokens=tokens)
