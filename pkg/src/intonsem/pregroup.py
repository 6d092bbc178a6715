"""Pregroup type algebra and planar reduction search.

A pregroup type is a sequence of simple types.  Each simple type is an
atomic base name together with an integer adjoint order ``z``: negative
values are iterated left adjoints (rendered ``.l``), positive values are
iterated right adjoints (rendered ``.r``), zero is the plain base.

Grammaticality of a sequence of types is witnessed by a reduction: a
planar set of links, each link cancelling a pair of simple types under
the rule base(i) == base(j) and z(j) == z(i) + 1 for i < j, such that
the unlinked survivors spell out the target type.  Contractions alone
suffice to decide reducibility to a plain target, so the search below
never needs to introduce expansions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence


class TypeSyntaxError(ValueError):
    """Malformed type text.  ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class SimpleType:
    """An atomic base with an integer adjoint order.

    >>> n = SimpleType("n")
    >>> print(n.r)
    n.r
    >>> print(n.l.l)
    n.l.l
    >>> n.r.l == n
    True
    """

    base: str
    z: int = 0

    @property
    def l(self) -> "SimpleType":
        return SimpleType(self.base, self.z - 1)

    @property
    def r(self) -> "SimpleType":
        return SimpleType(self.base, self.z + 1)

    def __str__(self) -> str:
        suffix = ".l" * -self.z if self.z < 0 else ".r" * self.z
        return self.base + suffix


def cancels(left: SimpleType, right: SimpleType) -> bool:
    """True when ``left . right`` contracts to the unit (p.p.r or p.l.p)."""
    return left.base == right.base and right.z == left.z + 1


@dataclass(frozen=True)
class PregroupType:
    """A juxtaposition of simple types; the empty tuple is the unit.

    >>> s = parse_type("n.r s n.l")
    >>> print(s.r)
    n s.r n.r.r
    >>> print(atom("n") @ atom("s"))
    n s
    >>> len(parse_type(""))
    0
    """

    factors: tuple[SimpleType, ...] = ()

    def __post_init__(self):
        if not all(isinstance(f, SimpleType) for f in self.factors):
            raise TypeError("factors must be SimpleType instances")

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self) -> Iterator[SimpleType]:
        return iter(self.factors)

    def __getitem__(self, i):
        got = self.factors[i]
        return PregroupType(got) if isinstance(i, slice) else got

    def __matmul__(self, other: "PregroupType") -> "PregroupType":
        return PregroupType(self.factors + other.factors)

    @property
    def l(self) -> "PregroupType":
        # The adjoint of a product reverses the order of the factors.
        return PregroupType(tuple(f.l for f in reversed(self.factors)))

    @property
    def r(self) -> "PregroupType":
        return PregroupType(tuple(f.r for f in reversed(self.factors)))

    def __str__(self) -> str:
        return " ".join(str(f) for f in self.factors)


def atom(name: str, z: int = 0) -> PregroupType:
    """A single-factor type."""
    return PregroupType((SimpleType(name, z),))


def parse_type(text: str) -> PregroupType:
    """Parse whitespace-separated factors like ``"n.r s n.l"``.

    Factor syntax is a base name (identifier) followed by any number of
    ``.l`` / ``.r`` suffixes.  The empty string is the unit type.

    >>> parse_type("n.r s n.l") == atom("n").r @ atom("s") @ atom("n").l
    True
    >>> parse_type("n$s")
    Traceback (most recent call last):
        ...
    intonsem.pregroup.TypeSyntaxError: unexpected character '$' (byte offset 1)
    """
    factors: list[SimpleType] = []
    i, n = 0, len(text)

    def offset(pos: int) -> int:
        return len(text[:pos].encode("utf-8"))

    while i < n:
        if text[i].isspace():
            i += 1
            continue
        start = i
        if not (text[i].isalpha() or text[i] == "_"):
            raise TypeSyntaxError(f"unexpected character {text[i]!r}", offset(i))
        while i < n and (text[i].isalnum() or text[i] == "_"):
            i += 1
        base = text[start:i]
        z = 0
        while i < n and text[i] == ".":
            if i + 1 >= n or text[i + 1] not in ("l", "r"):
                raise TypeSyntaxError("expected 'l' or 'r' after '.'", offset(i + 1))
            z += -1 if text[i + 1] == "l" else 1
            i += 2
            if i < n and (text[i].isalnum() or text[i] == "_"):
                raise TypeSyntaxError(
                    f"unexpected character {text[i]!r} after adjoint suffix", offset(i)
                )
        factors.append(SimpleType(base, z))
    return PregroupType(tuple(factors))


@dataclass(frozen=True)
class ReductionDiagram:
    """A planar reduction witness over ``size`` flattened simple types.

    ``links`` are 0-based index pairs (i, j) with i < j; ``survivors`` are
    the unlinked 0-based indices in ascending order.  Together they
    partition range(size).  The JSON form (:meth:`to_json`) is 1-based.
    """

    links: tuple[tuple[int, int], ...]
    survivors: tuple[int, ...]
    size: int

    def __post_init__(self):
        seen = sorted([k for ij in self.links for k in ij] + list(self.survivors))
        if seen != list(range(self.size)):
            raise ValueError("links and survivors must partition range(size)")
        if any(i >= j for i, j in self.links):
            raise ValueError("links must be (i, j) pairs with i < j")

    def is_planar(self) -> bool:
        """No two links (i, j), (k, l) interleave as i < k < j < l."""
        for a, (i, j) in enumerate(self.links):
            for k, l in self.links[a + 1:]:
                if i < k < j < l or k < i < l < j:
                    return False
        return True

    def replay(self, factors: Sequence[SimpleType]) -> list[SimpleType]:
        """Apply the links as adjacent cancellations; return the survivors.

        Raises ValueError when some link never becomes an adjacent
        cancellable pair, i.e. the diagram is not a sound reduction of
        ``factors``.
        """
        if len(factors) != self.size:
            raise ValueError("diagram size does not match the factor sequence")
        remaining = list(range(self.size))
        pending = set(self.links)
        while pending:
            for i, j in sorted(pending):
                k = remaining.index(i) if i in remaining else -1
                if k >= 0 and k + 1 < len(remaining) and remaining[k + 1] == j \
                        and cancels(factors[i], factors[j]):
                    del remaining[k:k + 2]
                    pending.discard((i, j))
                    break
            else:
                raise ValueError(f"links {sorted(pending)} cannot be cancelled")
        return [factors[k] for k in remaining]

    def to_json(self) -> dict:
        """1-based wire form: {"links": [[i, j], ...], "survivors": [k, ...]}."""
        return {
            "links": [[i + 1, j + 1] for i, j in self.links],
            "survivors": [k + 1 for k in self.survivors],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ReductionDiagram":
        links = tuple(sorted((i - 1, j - 1) for i, j in obj["links"]))
        survivors = tuple(sorted(k - 1 for k in obj["survivors"]))
        return cls(links, survivors, 2 * len(links) + len(survivors))


def flatten(types: Sequence[PregroupType]) -> list[SimpleType]:
    """Concatenate the factors of a sequence of types."""
    return [f for t in types for f in t]


def _enumerate_reductions(
    factors: Sequence[SimpleType], target: Sequence[SimpleType]
) -> Iterator[ReductionDiagram]:
    """Depth-first scan: each factor either links to the top of the stack
    of open factors or is pushed as a potential survivor.  Every planar
    reduction arises from exactly one choice sequence."""
    n, m = len(factors), len(target)
    stack: list[int] = []
    links: list[tuple[int, int]] = []

    def scan(i: int) -> Iterator[ReductionDiagram]:
        rest = n - i
        # The stack can shrink by at most one per remaining factor, and
        # its size changes parity with each step.
        if abs(len(stack) - m) > rest or (len(stack) + rest - m) % 2:
            return
        if i == n:
            if all(factors[k] == t for k, t in zip(stack, target)):
                yield ReductionDiagram(tuple(sorted(links)), tuple(stack), n)
            return
        if stack and cancels(factors[stack[-1]], factors[i]):
            top = stack.pop()
            links.append((top, i))
            yield from scan(i + 1)
            links.pop()
            stack.append(top)
        stack.append(i)
        yield from scan(i + 1)
        stack.pop()

    return scan(0)


def reduce(
    types: Sequence[PregroupType], target: PregroupType
) -> list[ReductionDiagram]:
    """All reductions of the juxtaposition of ``types`` to ``target``.

    ``types`` must be nonempty and ``target`` must consist of plain
    (adjoint-order zero) factors.  The result is in canonical order:
    diagrams sorted by their ascending link lists.  An empty list means
    the sequence does not reduce to the target.

    >>> n, s = atom("n"), atom("s")
    >>> [d.to_json() for d in reduce([n, n.r @ s @ n.l, n], s)]
    [{'links': [[1, 2], [4, 5]], 'survivors': [3]}]
    """
    if len(types) == 0:
        raise ValueError("need at least one type to reduce")
    if any(f.z != 0 for f in target):
        raise ValueError("target must consist of plain factors")
    found = list(_enumerate_reductions(flatten(types), list(target)))
    return sorted(found, key=lambda d: d.links)


def grammatical(types: Sequence[PregroupType], target: PregroupType) -> bool:
    """Whether the juxtaposition of ``types`` reduces to ``target``."""
    if len(types) == 0:
        raise ValueError("need at least one type to reduce")
    if any(f.z != 0 for f in target):
        raise ValueError("target must consist of plain factors")
    gen = _enumerate_reductions(flatten(types), list(target))
    return next(iter(gen), None) is not None
