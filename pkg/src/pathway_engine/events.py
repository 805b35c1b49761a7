"""Event mention extraction over a fixed 9-type ontology, plus the
most-liked-downstream-post opinion selector.

Extraction is deterministic: longest-match trigger search over per-type
lexicons (case-insensitive, token-boundary aligned), then positional
argument rules resolved left to right within the trigger's sentence.
Spans are character offsets into the original text, so ``text[start:end]``
always reproduces the surface form.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .corpus.model import Corpus
from .influence import CommunityAssignment
from .pathway import PathwayGraph

EVENT_TYPES = (
    "end_organization", "social_distancing", "lock_down", "quarantine",
    "vaccinate", "die", "fine", "transport", "extradite",
)

ARGUMENT_ROLES = ("agent", "patient", "place", "organization", "time", "amount")

DEFAULT_TRIGGERS: dict[str, tuple[str, ...]] = {
    "end_organization": ("defund", "defunds", "defunded", "defunding",
                         "disband", "disbanded", "dissolve", "dissolved",
                         "withdraw from", "withdrew from", "pull funding from",
                         "end funding for", "ended funding for"),
    "social_distancing": ("social distancing", "social distance",
                          "socially distance", "socially distanced",
                          "keep distance", "six feet apart", "6 feet apart",
                          "distancing rules"),
    "lock_down": ("lockdown", "lockdowns", "lock down", "locked down",
                  "stay-at-home order", "shelter in place", "curfew"),
    "quarantine": ("quarantine", "quarantined", "quarantines", "quarantining",
                   "self-isolate", "self-isolated", "self-isolation",
                   "isolate at home"),
    "vaccinate": ("vaccinate", "vaccinated", "vaccinates", "vaccination",
                  "vaccinations", "inoculate", "inoculated", "booster shot",
                  "jab", "jabs"),
    "die": ("die", "died", "dies", "dying", "death", "deaths", "passed away",
            "fatalities", "succumbed"),
    "fine": ("fine", "fined", "fines", "penalize", "penalized", "penalty",
             "penalties"),
    "transport": ("transport", "transported", "transporting", "airlift",
                  "airlifted", "evacuate", "evacuated", "evacuation",
                  "ferried", "shipped"),
    "extradite": ("extradite", "extradited", "extradites", "extradition"),
}

DEFAULT_ROLES: dict[str, tuple[str, ...]] = {
    "end_organization": ("agent", "organization", "place", "time"),
    "social_distancing": ("agent", "place", "time"),
    "lock_down": ("agent", "place", "time"),
    "quarantine": ("agent", "patient", "place", "time"),
    "vaccinate": ("agent", "patient", "place", "time", "amount"),
    "die": ("patient", "place", "time", "amount"),
    "fine": ("agent", "patient", "amount", "place", "time"),
    "transport": ("agent", "patient", "place", "time"),
    "extradite": ("agent", "patient", "place", "time"),
}

_TOKEN_RE = re.compile(r"[A-Za-z0-9][A-Za-z0-9'\-]*|[$€£¥]")
_SENT_BREAK_RE = re.compile(r"[.!?]+")

_STOPWORDS = frozenset(
    "the a an this that these those it he she they we i you his her their its "
    "our your and or but if then than so of to in at on for with by from as "
    "is are was were be been will would could should has have had do does did "
    "not no".split())

_CURRENCY_WORDS = frozenset(
    "euro euros dollar dollars usd eur gbp pound pounds yen rupee rupees "
    "franc francs".split())
_CURRENCY_SYMBOLS = frozenset("$€£¥")

_DATE_WORDS = frozenset(
    "today tomorrow yesterday monday tuesday wednesday thursday friday "
    "saturday sunday january february march april may june july august "
    "september october november december".split())
_YEAR_RE = re.compile(r"^(19|20)\d\d$")
_ORDINAL_RE = re.compile(r"^\d{1,2}(st|nd|rd|th)$")
_NUMBER_RE = re.compile(r"^\d+([.,]\d+)*$")


@dataclass
class Span:
    start: int
    end: int
    text: str


@dataclass
class Argument:
    role: str
    span: Span


@dataclass
class EventMention:
    event_type: str
    trigger: Span
    arguments: list[Argument] = field(default_factory=list)
    post_id: str | None = None

    def to_dict(self) -> dict:
        return {
            "post_id": self.post_id,
            "event_type": self.event_type,
            "trigger": {"start": self.trigger.start, "end": self.trigger.end,
                        "text": self.trigger.text},
            "arguments": [{"role": a.role, "start": a.span.start,
                           "end": a.span.end, "text": a.span.text}
                          for a in self.arguments],
        }


@dataclass
class EventOntology:
    triggers: dict[str, tuple[str, ...]]
    roles: dict[str, tuple[str, ...]]

    def validate(self) -> None:
        unknown = set(self.triggers) - set(EVENT_TYPES)
        if unknown:
            raise ValueError(f"unknown event types {sorted(unknown)}")
        seen: dict[str, str] = {}
        for etype, phrases in self.triggers.items():
            for phrase in phrases:
                norm = " ".join(phrase.lower().split())
                if norm in seen and seen[norm] != etype:
                    raise ValueError(
                        f"trigger {phrase!r} maps to both {seen[norm]} and {etype}")
                seen[norm] = etype
        for etype, roles in self.roles.items():
            bad = set(roles) - set(ARGUMENT_ROLES)
            if bad:
                raise ValueError(f"{etype}: unknown roles {sorted(bad)}")

    def to_json(self, path: str | Path) -> None:
        payload = {etype: {"triggers": list(self.triggers[etype]),
                           "roles": list(self.roles.get(etype, ()))}
                   for etype in self.triggers}
        Path(path).write_text(json.dumps(payload, indent=2) + "\n",
                              encoding="utf-8")

    @classmethod
    def from_json(cls, path: str | Path) -> "EventOntology":
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        onto = cls(
            triggers={etype: tuple(spec["triggers"]) for etype, spec in payload.items()},
            roles={etype: tuple(spec.get("roles", ())) for etype, spec in payload.items()},
        )
        onto.validate()
        return onto


def default_ontology() -> EventOntology:
    onto = EventOntology(triggers=dict(DEFAULT_TRIGGERS), roles=dict(DEFAULT_ROLES))
    onto.validate()
    return onto


def _tokenize(text: str) -> list[Span]:
    return [Span(m.start(), m.end(), m.group()) for m in _TOKEN_RE.finditer(text)]


def _sentence_id(breaks: list[int], offset: int) -> int:
    sid = 0
    for b in breaks:
        if offset >= b:
            sid += 1
        else:
            break
    return sid


def extract_events(ontology: EventOntology, text: str) -> list[EventMention]:
    """All event mentions in ``text``, in trigger order."""
    tokens = _tokenize(text)
    if not tokens:
        return []
    breaks = [m.end() for m in _SENT_BREAK_RE.finditer(text)]
    sent_of = [_sentence_id(breaks, tok.start) for tok in tokens]

    # phrase -> (token length, event type), longest first per start token
    lexicon: dict[tuple[str, ...], str] = {}
    max_len = 1
    for etype, phrases in ontology.triggers.items():
        for phrase in phrases:
            words = tuple(w.lower() for w in phrase.split())
            lexicon[words] = etype
            max_len = max(max_len, len(words))

    lowered = [tok.text.lower() for tok in tokens]
    mentions: list[EventMention] = []
    trigger_token_idx: set[int] = set()
    i = 0
    while i < len(tokens):
        match = None
        for length in range(min(max_len, len(tokens) - i), 0, -1):
            if sent_of[i + length - 1] != sent_of[i]:
                continue
            etype = lexicon.get(tuple(lowered[i:i + length]))
            if etype is not None:
                match = (length, etype)
                break
        if match is None:
            i += 1
            continue
        length, etype = match
        span = Span(tokens[i].start, tokens[i + length - 1].end,
                    text[tokens[i].start:tokens[i + length - 1].end])
        mentions.append(EventMention(event_type=etype, trigger=span))
        trigger_token_idx.update(range(i, i + length))
        mentions[-1]._token_range = (i, i + length)  # type: ignore[attr-defined]
        i += length

    for mention in mentions:
        lo, hi = mention._token_range  # type: ignore[attr-defined]
        del mention._token_range  # type: ignore[attr-defined]
        mention.arguments = _extract_arguments(
            text, tokens, lowered, sent_of, trigger_token_idx, lo, hi,
            ontology.roles.get(mention.event_type, ()))
    return mentions


def _is_capitalized(tok: Span) -> bool:
    return tok.text[0].isupper() and tok.text.lower() not in _STOPWORDS


def _cap_sequence(tokens: list[Span], idx: int, limit: set[int],
                  sent_of: list[int], sid: int, text: str) -> Span | None:
    """Maximal capitalized run starting at idx, within the sentence."""
    if idx >= len(tokens) or idx in limit or sent_of[idx] != sid:
        return None
    if not _is_capitalized(tokens[idx]):
        return None
    end = idx
    while (end + 1 < len(tokens) and end + 1 not in limit
           and sent_of[end + 1] == sid and _is_capitalized(tokens[end + 1])):
        end += 1
    return Span(tokens[idx].start, tokens[end].end,
                text[tokens[idx].start:tokens[end].end])


def _extract_arguments(text: str, tokens: list[Span], lowered: list[str],
                       sent_of: list[int], trigger_idx: set[int],
                       lo: int, hi: int, allowed: tuple[str, ...],
                       ) -> list[Argument]:
    sid = sent_of[lo]
    sent_idx = [k for k in range(len(tokens))
                if sent_of[k] == sid and k not in trigger_idx]
    taken: set[int] = set()
    found: dict[str, Span] = {}

    def claim(role: str, span_idx: list[int], surface: Span | None = None):
        if role not in allowed or role in found:
            return
        found[role] = surface or Span(tokens[span_idx[0]].start,
                                      tokens[span_idx[-1]].end,
                                      text[tokens[span_idx[0]].start:
                                           tokens[span_idx[-1]].end])
        taken.update(span_idx)

    # typed patterns first, left to right: amounts, times, places
    for k in sent_idx:
        if k in taken:
            continue
        word = lowered[k]
        if _NUMBER_RE.match(word):
            prev_cur = k - 1 in range(len(tokens)) and sent_of[k - 1] == sid and \
                (lowered[k - 1] in _CURRENCY_WORDS or tokens[k - 1].text in _CURRENCY_SYMBOLS)
            next_cur = k + 1 < len(tokens) and sent_of[k + 1] == sid and \
                (lowered[k + 1] in _CURRENCY_WORDS or tokens[k + 1].text in _CURRENCY_SYMBOLS)
            if prev_cur or next_cur:
                claim("amount", [k])
                continue
        if word in _DATE_WORDS or _YEAR_RE.match(word) or _ORDINAL_RE.match(word):
            claim("time", [k])
            continue
        if word in ("in", "at"):
            cap = _cap_sequence(tokens, k + 1, taken | trigger_idx, sent_of, sid, text)
            if cap is not None:
                idxs = [m for m in range(k + 1, len(tokens))
                        if m < len(tokens) and tokens[m].start < cap.end]
                claim("place", [m for m in idxs if tokens[m].end <= cap.end], cap)

    # agent: nearest capitalized sequence before the trigger
    for k in range(lo - 1, -1, -1):
        if sent_of[k] != sid:
            break
        if k in taken or k in trigger_idx:
            continue
        if _is_capitalized(tokens[k]):
            start = k
            while (start - 1 >= 0 and sent_of[start - 1] == sid
                   and start - 1 not in taken and start - 1 not in trigger_idx
                   and _is_capitalized(tokens[start - 1])):
                start -= 1
            role = "agent" if "agent" in allowed else "patient"
            claim(role, list(range(start, k + 1)))
            break

    # patient/organization: nearest eligible token after the trigger
    for k in range(hi, len(tokens)):
        if sent_of[k] != sid:
            break
        if k in taken or k in trigger_idx or lowered[k] in _STOPWORDS:
            continue
        if tokens[k].text in _CURRENCY_SYMBOLS or lowered[k] in _CURRENCY_WORDS:
            continue
        cap = _cap_sequence(tokens, k, taken | trigger_idx, sent_of, sid, text)
        role = "organization" if ("organization" in allowed
                                  and "patient" not in allowed) else "patient"
        if cap is not None:
            idxs = [m for m in range(k, len(tokens)) if tokens[m].end <= cap.end]
            claim(role, idxs, cap)
        else:
            claim(role, [k])
        break

    order = {role: pos for pos, role in enumerate(ARGUMENT_ROLES)}
    return [Argument(role=role, span=found[role])
            for role in sorted(found, key=order.get)]


@dataclass
class RepresentativeOpinion:
    community_id: str
    article_url: str
    post_id: str
    like_count: int
    text: str


def select_representative_opinion(corpus: Corpus, pathway: PathwayGraph,
                                  assignment: CommunityAssignment,
                                  community_id: str,
                                  ) -> RepresentativeOpinion | None:
    """Most liked non-source pathway post authored by a community member.

    Ties break toward the earlier timestamp, then the ascending post id.
    """
    if pathway.level != "user":
        raise ValueError("representative opinion needs a user-level pathway")
    roots = corpus.url_index.get(pathway.article_url, [])
    children: dict[str, list[str]] = {}
    for pid in sorted(corpus.posts):
        parent_id = corpus.posts[pid].parent_id
        if parent_id is not None:
            children.setdefault(parent_id, []).append(pid)

    best: tuple[int, int, str] | None = None
    stack = list(roots)
    while stack:
        pid = stack.pop()
        stack.extend(children.get(pid, []))
        post = corpus.posts[pid]
        if post.kind == "source":
            continue
        if assignment.by_user.get(post.author_id) != community_id:
            continue
        key = (-post.like_count, post.timestamp, post.id)
        if best is None or key < best:
            best = key
    if best is None:
        return None
    post = corpus.posts[best[2]]
    return RepresentativeOpinion(
        community_id=community_id, article_url=pathway.article_url,
        post_id=post.id, like_count=post.like_count, text=post.text)
