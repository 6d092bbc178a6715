"""Intonation-annotated sentences: span typing and meaning computation.

A sentence is split into theme spans (shared information) and rheme
spans (new information) with implicit boundaries between them.  Each
span is typed and composed on its own so that it reduces to the theme
or rheme atom; the boundary then merges the span vectors over the
shared space, which over a fixed basis comes down to element-wise
multiplication: the rheme restricts the theme's alternatives.

Annotation syntax: ``{T Mary likes} {R musicals}``.  Bare tokens
outside braces form implicit theme spans, so ``Mary likes {R musicals}``
means the same thing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .frobenius import boundary_tensor, mu_tensor
from .lexicon import Lexicon, RHEME_BASE, THEME_BASE
from .pregroup import PregroupType, ReductionDiagram, atom, reduce
from .tensor import TypedTensor, compose

THEME = "theme"
RHEME = "rheme"

PATTERN_SINGLE = "single-rheme"
PATTERN_DOUBLE = "double-rheme"
PATTERN_RELATIONAL = "relational-rheme"
PATTERN_SPLIT = "split-theme"

_THETA = atom(THEME_BASE)
_RHO = atom(RHEME_BASE)
_ROLE_ATOM = {THEME: _THETA, RHEME: _RHO}


class AnnotationSyntaxError(ValueError):
    """Malformed span annotation text."""


class InfelicitousStructure(Exception):
    """No typing realizes the annotated theme/rheme structure."""


@dataclass(frozen=True)
class Span:
    role: str
    tokens: tuple[str, ...]

    def __post_init__(self):
        if self.role not in (THEME, RHEME):
            raise ValueError(f"role must be 'theme' or 'rheme', not {self.role!r}")
        if not self.tokens:
            raise ValueError("a span needs at least one token")

    def __str__(self) -> str:
        tag = "T" if self.role == THEME else "R"
        return "{%s %s}" % (tag, " ".join(self.tokens))


@dataclass(frozen=True)
class AnnotatedSentence:
    spans: tuple[Span, ...]

    def __post_init__(self):
        if not self.spans:
            raise ValueError("a sentence needs at least one span")
        for a, b in zip(self.spans, self.spans[1:]):
            if a.role == b.role:
                raise ValueError("adjacent spans must differ in role")

    @property
    def roles(self) -> tuple[str, ...]:
        return tuple(s.role for s in self.spans)

    def __str__(self) -> str:
        return " ".join(str(s) for s in self.spans)


def parse_annotated(text: str) -> AnnotatedSentence:
    """Parse ``{T ...}`` / ``{R ...}`` spans; bare tokens become themes.

    Adjacent spans of the same role merge into one span.

    >>> print(parse_annotated("Mary likes {R musicals}"))
    {T Mary likes} {R musicals}
    """
    spans: list[Span] = []
    pending: list[str] = []

    def flush():
        if pending:
            spans.append(Span(THEME, tuple(pending)))
            pending.clear()

    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c == "{":
            close = text.find("}", i)
            if close < 0:
                raise AnnotationSyntaxError(f"unclosed '{{' at position {i}")
            inner = text[i + 1:close]
            if "{" in inner:
                raise AnnotationSyntaxError(f"nested '{{' at position {i + 1 + inner.index('{')}")
            parts = inner.split()
            if not parts or parts[0] not in ("T", "R"):
                raise AnnotationSyntaxError(
                    f"span at position {i} must start with 'T' or 'R'"
                )
            if len(parts) < 2:
                raise AnnotationSyntaxError(f"empty span at position {i}")
            flush()
            spans.append(Span(THEME if parts[0] == "T" else RHEME, tuple(parts[1:])))
            i = close + 1
        elif c == "}":
            raise AnnotationSyntaxError(f"unmatched '}}' at position {i}")
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "{}":
                j += 1
            pending.append(text[i:j])
            i = j
    flush()
    if not spans:
        raise AnnotationSyntaxError("the sentence has no tokens")
    merged: list[Span] = []
    for s in spans:
        if merged and merged[-1].role == s.role:
            merged[-1] = Span(s.role, merged[-1].tokens + s.tokens)
        else:
            merged.append(s)
    return AnnotatedSentence(tuple(merged))


@dataclass(frozen=True)
class SpanTyping:
    """One way to type a span: chosen senses plus the reduction used."""

    span: Span
    senses: tuple[TypedTensor, ...]
    diagram: ReductionDiagram
    target: PregroupType

    def value(self) -> TypedTensor:
        return compose(self.senses, self.diagram)


@dataclass(frozen=True)
class SentenceMeaning:
    """A meaning tensor tagged with the span pattern that produced it."""

    array: np.ndarray
    pattern: str

    def __post_init__(self):
        arr = np.array(self.array, dtype=np.float64)
        arr.setflags(write=False)
        object.__setattr__(self, "array", arr)

    @property
    def order(self) -> int:
        return self.array.ndim


@dataclass(frozen=True)
class Analysis:
    """A full derivation: per-span typings, span values, and the meaning."""

    pattern: str
    typings: tuple[SpanTyping, ...]
    values: tuple[TypedTensor, ...]
    meaning: SentenceMeaning


def _plans(sentence: AnnotatedSentence) -> list[tuple[str, list[PregroupType]]]:
    """Candidate (pattern, per-span target) assignments for this span shape."""
    roles = sentence.roles
    if len(roles) == 2:
        return [(PATTERN_SINGLE, [_ROLE_ATOM[r] for r in roles])]
    if roles == (RHEME, THEME, RHEME):
        return [(PATTERN_DOUBLE, [_RHO, _THETA @ _THETA, _RHO])]
    if roles == (THEME, RHEME, THEME):
        return [
            (PATTERN_SPLIT, [_THETA, _RHO, _THETA]),
            (PATTERN_RELATIONAL, [_THETA, _RHO @ _RHO, _THETA]),
        ]
    raise InfelicitousStructure(
        f"unsupported span pattern {'-'.join(roles)}: expected theme/rheme, "
        "rheme-theme-rheme, or theme-rheme-theme"
    )


def _span_options(span: Span, lexicon: Lexicon, target: PregroupType) -> list[SpanTyping]:
    """Every sense assignment and reduction taking the span to the target."""
    sense_lists = [lexicon[w].senses for w in span.tokens]
    out = []
    for combo in itertools.product(*sense_lists):
        for diagram in reduce([s.type for s in combo], target):
            out.append(SpanTyping(span, combo, diagram, target))
    return out


def _derivations(
    sentence: AnnotatedSentence, lexicon: Lexicon
) -> list[tuple[str, tuple[SpanTyping, ...]]]:
    found: list[tuple[str, tuple[SpanTyping, ...]]] = []
    failures: list[str] = []
    for pattern, targets in _plans(sentence):
        options = [
            _span_options(span, lexicon, tgt)
            for span, tgt in zip(sentence.spans, targets)
        ]
        empty = [k for k, opts in enumerate(options) if not opts]
        if empty:
            for k in empty:
                failures.append(
                    f"{pattern}: span {k + 1} {sentence.spans[k]} has no sense "
                    f"assignment reducing to '{targets[k]}'"
                )
            continue
        for combo in itertools.product(*options):
            found.append((pattern, tuple(combo)))
    if not found:
        raise InfelicitousStructure("; ".join(failures))
    return found


def type_spans(
    sentence: AnnotatedSentence, lexicon: Lexicon
) -> list[tuple[SpanTyping, ...]]:
    """All ways to type every span of the sentence, one tuple per derivation.

    Each span must reduce to its role's target type (the theme or rheme
    atom; the middle span of the three-span patterns may carry the
    matrix type instead).  Raises InfelicitousStructure, naming the
    offending spans, when no sense combination works.
    """
    return [typings for _, typings in _derivations(sentence, lexicon)]


def _double_rheme_wiring(r1: np.ndarray, theme: np.ndarray, r2: np.ndarray) -> np.ndarray:
    """Merge each rheme into one wire of the theme matrix (two mu maps)."""
    d = theme.shape[0]
    m3 = mu_tensor(d)
    a = np.tensordot(r1, m3, axes=(0, 0))
    b = np.tensordot(a, theme, axes=(0, 0))
    c = np.tensordot(b, m3, axes=(1, 0))
    return np.tensordot(c, r2, axes=(1, 0))


def _combine(pattern: str, roles: tuple[str, ...], arrays: list[np.ndarray]) -> np.ndarray:
    if pattern == PATTERN_SINGLE:
        theme = arrays[roles.index(THEME)]
        rheme = arrays[roles.index(RHEME)]
        if theme.shape != rheme.shape:
            raise InfelicitousStructure(
                f"dimension mismatch between theme {theme.shape} and rheme {rheme.shape}"
            )
        return theme * rheme
    if pattern == PATTERN_DOUBLE:
        r1, m, r2 = arrays
        return _double_rheme_wiring(r1, m, r2)
    if pattern == PATTERN_RELATIONAL:
        t1, m, t2 = arrays
        return np.outer(t1, t2) * m
    if pattern == PATTERN_SPLIT:
        t1, r, t2 = arrays
        return t1 * r * t2
    raise ValueError(f"unknown pattern {pattern!r}")


def analyses(sentence: AnnotatedSentence, lexicon: Lexicon) -> list[Analysis]:
    """Every derivation of the sentence with its meaning, canonical order.

    Patterns are tried in a fixed order (for theme-rheme-theme: the
    all-vector split-theme reading before the matrix relational-rheme
    reading); within a pattern, sense combinations follow lexicon order
    and reductions follow the canonical reduction order.
    """
    lexicon.shared_dim()
    out = []
    for pattern, typings in _derivations(sentence, lexicon):
        values = tuple(t.value() for t in typings)
        arr = _combine(pattern, sentence.roles, [v.array for v in values])
        out.append(Analysis(pattern, typings, values, SentenceMeaning(arr, pattern)))
    return out


def meaning(sentence: AnnotatedSentence, lexicon: Lexicon) -> SentenceMeaning:
    """The meaning of the first derivation (see :func:`analyses`).

    For the general theme/rheme case this is the element-wise product of
    the two span vectors; the three-span patterns dispatch to their own
    combination rules.
    """
    return analyses(sentence, lexicon)[0].meaning


def _pattern_meaning(
    sentence: AnnotatedSentence, lexicon: Lexicon, pattern: str
) -> SentenceMeaning:
    for a in analyses(sentence, lexicon):
        if a.pattern == pattern:
            return a.meaning
    raise InfelicitousStructure(
        f"no derivation of {sentence} realizes the {pattern} pattern"
    )


def meaning_multiple_rhemes(
    sentence: AnnotatedSentence, lexicon: Lexicon
) -> SentenceMeaning:
    """Order-2 meaning of a rheme-theme-rheme sentence.

    The theme composes to a matrix (type theta.theta); each rheme is
    merged into one of its wires, so the result is
    (rheme1 (x) rheme2) (.) theme-matrix.
    """
    if sentence.roles != (RHEME, THEME, RHEME):
        raise InfelicitousStructure(
            f"expected a rheme-theme-rheme sentence, got {'-'.join(sentence.roles)}"
        )
    return _pattern_meaning(sentence, lexicon, PATTERN_DOUBLE)


def meaning_split_theme(
    sentence: AnnotatedSentence, lexicon: Lexicon
) -> SentenceMeaning:
    """Order-1 meaning of a theme-rheme-theme sentence with vector spans:
    theme1 (.) rheme (.) theme2 (the spider normal form of the two
    chained boundaries)."""
    if sentence.roles != (THEME, RHEME, THEME):
        raise InfelicitousStructure(
            f"expected a theme-rheme-theme sentence, got {'-'.join(sentence.roles)}"
        )
    return _pattern_meaning(sentence, lexicon, PATTERN_SPLIT)


def boundary_contraction(
    theme: np.ndarray, rheme: np.ndarray, rheme_first: bool = False
) -> np.ndarray:
    """Contract the boundary tensor with a theme and a rheme vector.

    The categorical route to the single-rheme meaning; always equals the
    element-wise product of the two vectors.
    """
    theme = np.asarray(theme, dtype=np.float64)
    rheme = np.asarray(rheme, dtype=np.float64)
    if theme.ndim != 1 or rheme.ndim != 1 or theme.shape != rheme.shape:
        raise ValueError("boundary_contraction expects two equal-length vectors")
    d = theme.shape[0]
    b = boundary_tensor(d, rheme_first=rheme_first)
    if rheme_first:
        words = [TypedTensor(_RHO, rheme), b, TypedTensor(_THETA, theme)]
    else:
        words = [TypedTensor(_THETA, theme), b, TypedTensor(_RHO, rheme)]
    diagrams = reduce([w.type for w in words], atom("s"))
    assert len(diagrams) == 1
    return compose(words, diagrams[0]).array


def copy_expand(verb_matrix: np.ndarray, which: str = "object") -> np.ndarray:
    """Lift a verb matrix to an order-3 tensor by copying one wire.

    ``which="object"`` copies the column wire: T[i, k, j] = M[i, k] when
    k == j, so contracting with subject and object gives
    (subject x M) (.) object.  ``which="subject"`` copies the row wire:
    T[i, k, j] = M[i, j] when i == k, giving subject (.) (M x object).
    Contracting the middle wire with the all-ones vector recovers the
    plain transitive reading subject x M x object.
    """
    m = np.asarray(verb_matrix, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("copy_expand expects a square matrix")
    d = m.shape[0]
    idx = np.arange(d)
    t = np.zeros((d, d, d))
    if which == "object":
        t[:, idx, idx] = m
    elif which == "subject":
        t[idx, idx, :] = m
    else:
        raise ValueError(f"which must be 'subject' or 'object', not {which!r}")
    return t
