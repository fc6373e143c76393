"""Propositional programs whose rule bodies are generalized atoms.

A generalized atom is an arbitrary Boolean function over a finite domain of
propositional atoms. Four concrete body shapes are provided: conjunctions of
literals, count aggregates, explicit DNF formulas, and opaque truth tables.
All values are immutable after construction and safe to share.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

RESERVED_PREFIX = "__aux"
DEFAULT_ATOM_LIMIT = 20

_PLAIN_NAME = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
_RESERVED_NAME = re.compile(r"__aux[A-Za-z0-9_]*\Z")


class GaspError(Exception):
    """Base class for all errors raised by this package."""


class UnsatisfiableBody(GaspError):
    """A body is false on every subset of its domain; it has no DNF."""


class TooManyAtoms(GaspError):
    """An exhaustive 2^n operation was asked for more atoms than allowed."""


class ReservedAtomError(GaspError):
    """A reserved `__aux` atom appeared where only source atoms are allowed."""


@dataclass(frozen=True, order=True)
class Atom:
    """A propositional atom, identified by name.

    Ordinary names start with a lowercase letter; names starting with
    `__aux` are reserved for compilation output and rejected wherever user
    input is expected.
    """

    name: str

    def __post_init__(self):
        if not (_PLAIN_NAME.match(self.name) or _RESERVED_NAME.match(self.name)):
            raise ValueError(f"invalid atom name: {self.name!r}")

    @property
    def is_reserved(self) -> bool:
        return self.name.startswith(RESERVED_PREFIX)

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"Atom({self.name!r})"


Interpretation = frozenset[Atom]


def atoms(*names: str) -> frozenset[Atom]:
    return frozenset(Atom(n) for n in names)


def interp_sort_key(interpretation: Iterable[Atom]) -> tuple[str, ...]:
    """Canonical ordering key for interpretations: the sorted name tuple."""
    return tuple(sorted(a.name for a in interpretation))


def format_interpretation(interpretation: Iterable[Atom]) -> str:
    return "{" + ", ".join(sorted(a.name for a in interpretation)) + "}"


@dataclass(frozen=True)
class Conjunct:
    """A conjunction of literals, split into positive and negative atoms."""

    positives: frozenset[Atom]
    negatives: frozenset[Atom]

    def __post_init__(self):
        object.__setattr__(self, "positives", frozenset(self.positives))
        object.__setattr__(self, "negatives", frozenset(self.negatives))
        clash = self.positives & self.negatives
        if clash:
            names = ", ".join(sorted(a.name for a in clash))
            raise ValueError(f"atom(s) both positive and negative: {names}")

    def atoms(self) -> frozenset[Atom]:
        return self.positives | self.negatives

    def holds(self, interpretation: Interpretation) -> bool:
        return self.positives <= interpretation and not (self.negatives & interpretation)

    def literals(self) -> tuple[tuple[Atom, bool], ...]:
        """All literals, positives first, each group in canonical atom order."""
        pos = tuple((a, True) for a in sorted(self.positives))
        neg = tuple((a, False) for a in sorted(self.negatives))
        return pos + neg

    def sort_key(self) -> tuple[tuple[str, ...], tuple[str, ...]]:
        return (tuple(sorted(a.name for a in self.positives)),
                tuple(sorted(a.name for a in self.negatives)))


class Body:
    """Marker base for rule bodies.

    Every body exposes `domain` (a frozenset of the atoms it can observe)
    and `eval(interpretation)`. Truth only ever depends on the restriction
    of the interpretation to the domain.
    """

    domain: frozenset[Atom]

    def eval(self, interpretation: Interpretation) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class LiteralConjunction(Body):
    """Body that is a conjunction of literals; empty means always true."""

    conjunct: Conjunct

    @property
    def domain(self) -> frozenset[Atom]:
        return self.conjunct.atoms()

    def eval(self, interpretation: Interpretation) -> bool:
        return self.conjunct.holds(interpretation)

    @property
    def is_always_true(self) -> bool:
        return not self.conjunct.positives and not self.conjunct.negatives


TOP = LiteralConjunction(Conjunct(frozenset(), frozenset()))

COMPARATORS = {
    "=": operator.eq,
    "!=": operator.ne,
    "<=": operator.le,
    ">=": operator.ge,
    "<": operator.lt,
    ">": operator.gt,
}


@dataclass(frozen=True)
class CountAggregate(Body):
    """Body comparing |atoms ∩ I| against a fixed bound."""

    atoms: frozenset[Atom]
    comparator: str
    bound: int

    def __post_init__(self):
        object.__setattr__(self, "atoms", frozenset(self.atoms))
        if not self.atoms:
            raise ValueError("count aggregate needs at least one atom")
        if self.comparator not in COMPARATORS:
            raise ValueError(f"unknown comparator: {self.comparator!r}")
        if self.bound < 0:
            raise ValueError("count bound must be non-negative")

    @property
    def domain(self) -> frozenset[Atom]:
        return self.atoms

    def eval(self, interpretation: Interpretation) -> bool:
        return COMPARATORS[self.comparator](len(self.atoms & interpretation), self.bound)


@dataclass(frozen=True)
class Dnf(Body):
    """Body given as a disjunction of literal conjunctions (at least one)."""

    disjuncts: tuple[Conjunct, ...]

    def __post_init__(self):
        object.__setattr__(self, "disjuncts", tuple(self.disjuncts))
        if not self.disjuncts:
            raise ValueError("dnf body needs at least one disjunct")

    @property
    def domain(self) -> frozenset[Atom]:
        out: frozenset[Atom] = frozenset()
        for d in self.disjuncts:
            out |= d.atoms()
        return out

    def eval(self, interpretation: Interpretation) -> bool:
        return any(d.holds(interpretation) for d in self.disjuncts)


@dataclass(frozen=True)
class TruthTable(Body):
    """Body defined extensionally: the exact family of satisfying subsets.

    The domain is declared explicitly, so it may include atoms that no
    satisfying subset mentions (relevant but unmentioned atoms).
    """

    domain: frozenset[Atom]
    satisfying: frozenset[frozenset[Atom]]

    def __post_init__(self):
        object.__setattr__(self, "domain", frozenset(self.domain))
        object.__setattr__(
            self, "satisfying", frozenset(frozenset(s) for s in self.satisfying)
        )
        for s in self.satisfying:
            if not s <= self.domain:
                extra = ", ".join(sorted(a.name for a in s - self.domain))
                raise ValueError(f"satisfying subset mentions atoms outside the domain: {extra}")

    def eval(self, interpretation: Interpretation) -> bool:
        return (interpretation & self.domain) in self.satisfying


GeneralizedAtomBody = Union[LiteralConjunction, CountAggregate, Dnf, TruthTable]


@dataclass(frozen=True)
class Rule:
    """A rule `head :- body`; an empty head is a constraint."""

    head: frozenset[Atom]
    body: Body

    def __post_init__(self):
        object.__setattr__(self, "head", frozenset(self.head))

    @property
    def is_constraint(self) -> bool:
        return not self.head

    def atoms(self) -> frozenset[Atom]:
        return self.head | self.body.domain


def subsets_in_canonical_order(domain: Iterable[Atom]) -> Iterator[frozenset[Atom]]:
    """All subsets of `domain`, ordered by their sorted-name tuples.

    The empty set comes first; {a} precedes {a,b} precedes {b}.
    """
    items = sorted(set(domain))

    def rec(prefix: list[Atom], rest: list[Atom]) -> Iterator[frozenset[Atom]]:
        yield frozenset(prefix)
        for i, x in enumerate(rest):
            yield from rec(prefix + [x], rest[i + 1:])

    yield from rec([], items)


def _names(group: Iterable[Atom]) -> tuple[str, ...]:
    return tuple(sorted(a.name for a in group))


def body_key(body: Body):
    """Canonical comparison key for a body.

    Keys are structural up to reordering, with two collapses: a DNF
    containing an empty disjunct is a tautology and keys like the empty
    literal conjunction, and a satisfiable truth table keys like its
    minterm DNF (which is how it is rendered).
    """
    if isinstance(body, LiteralConjunction):
        c = body.conjunct
        return ("lit", _names(c.positives), _names(c.negatives))
    if isinstance(body, CountAggregate):
        return ("count", _names(body.atoms), body.comparator, body.bound)
    if isinstance(body, Dnf):
        pairs = {(_names(d.positives), _names(d.negatives)) for d in body.disjuncts}
        return _dnf_key(pairs)
    if isinstance(body, TruthTable):
        if not body.satisfying:
            return ("table", _names(body.domain), ())
        dom = body.domain
        pairs = {(_names(s), _names(dom - s)) for s in body.satisfying}
        return _dnf_key(pairs)
    raise TypeError(f"not a body: {body!r}")


def _dnf_key(pairs: set[tuple[tuple[str, ...], tuple[str, ...]]]):
    if ((), ()) in pairs:
        return ("lit", (), ())
    return ("dnf", tuple(sorted(pairs)))


def rule_key(rule: Rule):
    return (_names(rule.head), body_key(rule.body))


@dataclass(frozen=True, eq=False)
class Program:
    """A finite sequence of rules with set semantics.

    Construction collapses duplicate rules (first occurrence wins) using
    canonical rule keys, so equality and hashing are order-insensitive
    while rendering stays deterministic.
    """

    rules: tuple[Rule, ...]

    def __init__(self, rules: Iterable[Rule] = ()):
        seen = set()
        kept = []
        for r in rules:
            key = rule_key(r)
            if key not in seen:
                seen.add(key)
                kept.append(r)
        object.__setattr__(self, "rules", tuple(kept))
        object.__setattr__(self, "_keys", frozenset(seen))

    def atoms(self) -> frozenset[Atom]:
        out: frozenset[Atom] = frozenset()
        for r in self.rules:
            out |= r.atoms()
        return out

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Program):
            return NotImplemented
        return self._keys == other._keys

    def __hash__(self) -> int:
        return hash(self._keys)

    def __repr__(self) -> str:
        return f"Program({len(self.rules)} rules)"


def to_dnf(body: Body, max_domain: int = DEFAULT_ATOM_LIMIT) -> Dnf:
    """Minterm DNF of a body: one full conjunct per satisfying subset.

    Disjuncts come out in the canonical subset order, so the result is a
    unique normal form for each (domain, truth function) pair. Raises
    UnsatisfiableBody when no subset of the domain satisfies the body.
    """
    dom = body.domain
    if len(dom) > max_domain:
        raise TooManyAtoms(f"dnf expansion over {len(dom)} atoms exceeds the limit of {max_domain}")
    disjuncts = []
    for subset in subsets_in_canonical_order(dom):
        if body.eval(subset):
            disjuncts.append(Conjunct(subset, dom - subset))
    if not disjuncts:
        raise UnsatisfiableBody("body is false on every subset of its domain")
    return Dnf(tuple(disjuncts))


def is_convex(body: Body, max_domain: int = DEFAULT_ATOM_LIMIT) -> bool:
    """Whether truth survives between any two nested satisfying subsets.

    Decided by exhaustive scan of the domain's powerset: the body is
    non-convex exactly when some false J has a satisfying subset below it
    and a satisfying superset above it.
    """
    dom = sorted(body.domain)
    if len(dom) > max_domain:
        raise TooManyAtoms(f"convexity scan over {len(dom)} atoms exceeds the limit of {max_domain}")
    n = len(dom)
    true_masks = []
    false_masks = []
    for mask in range(1 << n):
        subset = frozenset(dom[i] for i in range(n) if mask >> i & 1)
        (true_masks if body.eval(subset) else false_masks).append(mask)
    for j in false_masks:
        if any(t & j == t for t in true_masks) and any(t & j == j for t in true_masks):
            return False
    return True


def is_convex_program(program: Program, max_domain: int = DEFAULT_ATOM_LIMIT) -> bool:
    return all(is_convex(r.body, max_domain) for r in program.rules)
