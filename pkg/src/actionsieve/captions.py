"""Benchmark-side data model and metrics.

Covers the structured caption document (per-subject attributes plus
chronological events), multiple-choice QA items in five categories,
deterministic option shuffling, accuracy with refusal handling, the
caption-based QA round against a pluggable answering client, and the
good/same/bad preference score.
"""

from __future__ import annotations

import json
import math
import random
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Protocol, Sequence

QA_CATEGORIES = ("interaction", "action_details", "action_sequence", "count", "attribute")

N_OPTIONS = 4

OPTION_LETTERS = "ABCD"

DEFAULT_REFUSAL_TOKEN = "REFUSED"


@dataclass(frozen=True)
class SubjectAttributes:
    gender: str = ""
    age_group: str = ""
    clothing: tuple[str, ...] = ()
    accessories: tuple[str, ...] = ()


@dataclass(frozen=True)
class Subject:
    subject_id: str
    attributes: SubjectAttributes = field(default_factory=SubjectAttributes)


@dataclass(frozen=True)
class Event:
    order_index: int
    subject_id: str
    description: str
    interaction_targets: tuple[str, ...] = ()


@dataclass(frozen=True)
class CaptionDoc:
    """Structured caption: who is in the video, then what happens, in order."""

    subjects: tuple[Subject, ...]
    events: tuple[Event, ...]


@dataclass(frozen=True)
class QAItem:
    category: str
    question: str
    options: tuple[str, str, str, str]
    answer_index: int


@dataclass(frozen=True)
class GsbJudgment:
    """Pairwise human preference counts between two systems' outputs."""

    good: int
    same: int
    bad: int


@dataclass(frozen=True)
class AnswerOutcome:
    """Either a chosen option index or a refusal; keeps the raw reply for audit."""

    kind: str  # "choice" or "refusal"
    index: int | None = None
    raw_reply: str | None = None
    reason: str | None = None

    @classmethod
    def choice(cls, index: int, raw_reply: str | None = None) -> "AnswerOutcome":
        if not 0 <= index < N_OPTIONS:
            raise ValueError(f"choice index {index} out of range")
        return cls(kind="choice", index=index, raw_reply=raw_reply)

    @classmethod
    def refusal(
        cls, raw_reply: str | None = None, reason: str | None = None
    ) -> "AnswerOutcome":
        return cls(kind="refusal", index=None, raw_reply=raw_reply, reason=reason)


def validate_caption_doc(doc: CaptionDoc) -> list[str]:
    """Every structural violation, each naming the offending field path."""
    violations: list[str] = []
    if not doc.subjects:
        violations.append("subjects: empty, need at least one subject")
    seen: set[str] = set()
    for i, s in enumerate(doc.subjects):
        if not s.subject_id:
            violations.append(f"subjects[{i}].subject_id: empty")
        elif s.subject_id in seen:
            violations.append(f"subjects[{i}].subject_id: duplicate '{s.subject_id}'")
        seen.add(s.subject_id)
    prev_order = None
    for i, e in enumerate(doc.events):
        if e.subject_id not in seen:
            violations.append(f"events[{i}].subject_id: unknown subject_id {e.subject_id}")
        if prev_order is not None and e.order_index <= prev_order:
            violations.append(
                f"events[{i}].order_index: non-increasing order_index "
                f"({prev_order} then {e.order_index})"
            )
        prev_order = e.order_index
        for j, target in enumerate(e.interaction_targets):
            if target not in seen:
                violations.append(
                    f"events[{i}].interaction_targets[{j}]: unknown subject_id {target}"
                )
    return violations


def validate_qa_item(item: QAItem) -> list[str]:
    violations = []
    if item.category not in QA_CATEGORIES:
        violations.append(f"category: unknown '{item.category}'")
    if len(item.options) != N_OPTIONS:
        violations.append(f"options: need exactly {N_OPTIONS}, got {len(item.options)}")
    if len(set(item.options)) != len(item.options):
        violations.append("options: not pairwise distinct")
    if not 0 <= item.answer_index < len(item.options):
        violations.append(f"answer_index: {item.answer_index} out of range")
    return violations


def option_permutation(seed: int) -> tuple[int, ...]:
    """The deterministic permutation used by ``shuffle_options`` for a seed."""
    return tuple(random.Random(seed).sample(range(N_OPTIONS), N_OPTIONS))


def shuffle_options(item: QAItem, seed: int) -> QAItem:
    """Permute the options by a seeded permutation, keeping the answer text.

    position i of the result holds the original option perm[i]; the answer
    index is remapped accordingly, so the correct option's text never changes.
    """
    perm = option_permutation(seed)
    options = tuple(item.options[p] for p in perm)
    answer_index = perm.index(item.answer_index)
    return QAItem(
        category=item.category,
        question=item.question,
        options=options,  # type: ignore[arg-type]
        answer_index=answer_index,
    )


@dataclass(frozen=True)
class AccuracyReport:
    overall: float
    by_category: dict[str, float]
    n_total: int
    n_correct: int
    n_refusals: int


def accuracy(
    outcomes: Sequence[AnswerOutcome],
    gold: Sequence[int],
    categories: Sequence[str] | None = None,
) -> AccuracyReport:
    """Fraction correct; refusals stay in the denominator and never count.

    With ``categories`` given (one per item), also breaks accuracy down per
    category.
    """
    if len(outcomes) != len(gold):
        raise ValueError(f"{len(outcomes)} outcomes vs {len(gold)} gold answers")
    if not outcomes:
        raise ValueError("need at least one outcome")
    if categories is not None and len(categories) != len(outcomes):
        raise ValueError("categories length mismatch")

    correct_total = 0
    refusals = 0
    per_cat_total: Counter[str] = Counter()
    per_cat_correct: Counter[str] = Counter()
    for i, (out, ans) in enumerate(zip(outcomes, gold)):
        ok = out.kind == "choice" and out.index == ans
        if out.kind == "refusal":
            refusals += 1
        correct_total += ok
        if categories is not None:
            per_cat_total[categories[i]] += 1
            per_cat_correct[categories[i]] += ok
    by_category = {
        c: per_cat_correct[c] / per_cat_total[c] for c in sorted(per_cat_total)
    }
    return AccuracyReport(
        overall=correct_total / len(outcomes),
        by_category=by_category,
        n_total=len(outcomes),
        n_correct=correct_total,
        n_refusals=refusals,
    )


def gsb_score(j: GsbJudgment) -> float:
    """(good + same) / (bad + same); +inf when nothing was judged bad or same."""
    if j.good < 0 or j.same < 0 or j.bad < 0:
        raise ValueError("counts must be non-negative")
    if j.good + j.same + j.bad == 0:
        raise ValueError("need at least one judgment")
    denom = j.bad + j.same
    if denom == 0:
        return math.inf
    return (j.good + j.same) / denom


def format_gsb(score: float) -> str:
    """Two-decimal rendering used in text reports; unbounded scores print as inf."""
    if math.isinf(score):
        return "inf"
    return f"{score:.2f}"


class AnsweringClient(Protocol):
    """Anything that answers a multiple-choice question from a caption.

    Implementations receive the caption text, the question and exactly four
    options, and return the raw reply string. A remote client should raise
    ``AnswerTransportError`` for retryable transport problems. The repository
    ships only a scripted stub; an HTTP adapter simply POSTs
    ``{"caption","question","options"}`` as JSON and returns the reply field.
    """

    def answer(self, caption: str, question: str, options: Sequence[str]) -> str: ...


class AnswerTransportError(RuntimeError):
    """Transport-level failure talking to an answering client; retryable."""


class ScriptedAnswerer:
    """Test double: replays a fixed list of replies in order."""

    def __init__(self, replies: Iterable[str]):
        self._replies = list(replies)
        self.calls: list[tuple[str, str, tuple[str, ...]]] = []

    def answer(self, caption: str, question: str, options: Sequence[str]) -> str:
        self.calls.append((caption, question, tuple(options)))
        if not self._replies:
            raise AnswerTransportError("script exhausted")
        return self._replies.pop(0)


_PAREN_LETTER_RE = re.compile(r"\(([A-Da-d])\)")


def parse_answer_reply(
    reply: str, refusal_token: str = DEFAULT_REFUSAL_TOKEN
) -> AnswerOutcome:
    """Deterministic reply parsing: bare letter, then parenthesized letter,
    then refusal.

    A reply that is a single option letter (optionally wrapped in parentheses
    or followed by punctuation) is a choice; otherwise the first "(X)" with X
    in A-D decides; anything else, including the refusal token, is a refusal.
    """
    stripped = reply.strip()
    bare = stripped.strip("().:,;! \t")
    if len(bare) == 1 and bare.upper() in OPTION_LETTERS:
        return AnswerOutcome.choice(OPTION_LETTERS.index(bare.upper()), raw_reply=reply)
    m = _PAREN_LETTER_RE.search(stripped)
    if m:
        return AnswerOutcome.choice(
            OPTION_LETTERS.index(m.group(1).upper()), raw_reply=reply
        )
    if refusal_token.lower() in stripped.lower():
        return AnswerOutcome.refusal(raw_reply=reply, reason="explicit refusal")
    return AnswerOutcome.refusal(raw_reply=reply, reason="unparseable reply")


def caption_eval_round(
    caption: str,
    item: QAItem,
    answerer: AnsweringClient,
    refusal_token: str = DEFAULT_REFUSAL_TOKEN,
    max_attempts: int = 3,
) -> AnswerOutcome:
    """Ask the client to answer one question from a caption alone.

    Transport failures are retried up to ``max_attempts`` times in total and
    then recorded as a refusal with reason "client failure".
    """
    problems = validate_qa_item(item)
    if problems:
        raise ValueError("; ".join(problems))
    last_exc: Exception | None = None
    for _ in range(max_attempts):
        try:
            reply = answerer.answer(caption, item.question, item.options)
        except AnswerTransportError as exc:
            last_exc = exc
            continue
        return parse_answer_reply(reply, refusal_token=refusal_token)
    return AnswerOutcome.refusal(reason=f"client failure: {last_exc}")


def qa_item_from_dict(d: dict[str, Any]) -> QAItem:
    item = QAItem(
        category=d["category"],
        question=d["question"],
        options=tuple(d["options"]),
        answer_index=d["answer_index"],
    )
    problems = validate_qa_item(item)
    if problems:
        raise ValueError("; ".join(problems))
    return item


def qa_item_to_dict(item: QAItem) -> dict[str, Any]:
    return {
        "category": item.category,
        "question": item.question,
        "options": list(item.options),
        "answer_index": item.answer_index,
    }


def read_qa_items(path: str | Path) -> list[QAItem]:
    items = []
    with open(path, encoding="utf-8") as f:
        for i, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                items.append(qa_item_from_dict(json.loads(line)))
            except (json.JSONDecodeError, KeyError, ValueError) as exc:
                raise ValueError(f"line {i}: {exc}") from exc
    return items


def caption_doc_from_dict(d: dict[str, Any]) -> CaptionDoc:
    subjects = tuple(
        Subject(
            subject_id=s["subject_id"],
            attributes=SubjectAttributes(
                gender=s.get("attributes", {}).get("gender", ""),
                age_group=s.get("attributes", {}).get("age_group", ""),
                clothing=tuple(s.get("attributes", {}).get("clothing", ())),
                accessories=tuple(s.get("attributes", {}).get("accessories", ())),
            ),
        )
        for s in d["subjects"]
    )
    events = tuple(
        Event(
            order_index=e["order_index"],
            subject_id=e["subject_id"],
            description=e["description"],
            interaction_targets=tuple(e.get("interaction_targets", ())),
        )
        for e in d["events"]
    )
    return CaptionDoc(subjects=subjects, events=events)


def caption_doc_to_dict(doc: CaptionDoc) -> dict[str, Any]:
    return {
        "subjects": [
            {
                "subject_id": s.subject_id,
                "attributes": {
                    "gender": s.attributes.gender,
                    "age_group": s.attributes.age_group,
                    "clothing": list(s.attributes.clothing),
                    "accessories": list(s.attributes.accessories),
                },
            }
            for s in doc.subjects
        ],
        "events": [
            {
                "order_index": e.order_index,
                "subject_id": e.subject_id,
                "description": e.description,
                "interaction_targets": list(e.interaction_targets),
            }
            for e in doc.events
        ],
    }


def read_caption_docs(path: str | Path) -> list[CaptionDoc]:
    docs = []
    with open(path, encoding="utf-8") as f:
        for i, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                docs.append(caption_doc_from_dict(json.loads(line)))
            except (json.JSONDecodeError, KeyError) as exc:
                raise ValueError(f"line {i}: {exc}") from exc
    return docs


def dataset_stats(
    docs: Sequence[CaptionDoc] = (), items: Sequence[QAItem] = ()
) -> dict[str, Any]:
    """Corpus-level counts: subjects/events per caption, caption word counts,
    QA items per category."""
    word_counts = [
        sum(len(e.description.split()) for e in d.events) for d in docs
    ]
    return {
        "n_captions": len(docs),
        "n_qa_items": len(items),
        "qa_per_category": dict(Counter(i.category for i in items)),
        "subjects_per_caption": [len(d.subjects) for d in docs],
        "events_per_caption": [len(d.events) for d in docs],
        "caption_word_counts": word_counts,
    }
