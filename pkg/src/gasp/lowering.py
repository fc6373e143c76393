"""Bitmask form of a program, the input format of the enumeration kernels.

Atoms are assigned bit positions in canonical (name) order. Each rule is
flattened to a head mask plus a small tagged parameter record, so a kernel
can evaluate any body against a candidate mask in O(1) or O(domain):

    kind 0  literal conjunction   p0=positive mask, p1=negative mask
    kind 1  count aggregate       p0=member mask, p1=comparator code, p2=bound
    kind 2  dnf                   p0=offset into dnf_pos/dnf_neg, p1=#disjuncts
    kind 3  truth table           p0=domain mask, p1=word offset, p2=#words

Truth tables are packed as bitsets indexed by the compressed projection of
the candidate onto the domain mask (pext order).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    Atom,
    Body,
    CountAggregate,
    Dnf,
    Interpretation,
    LiteralConjunction,
    Program,
    TruthTable,
)

KIND_LITERAL = 0
KIND_COUNT = 1
KIND_DNF = 2
KIND_TABLE = 3

CMP_CODES = {"=": 0, "!=": 1, "<=": 2, ">=": 3, "<": 4, ">": 5}

# Enumeration modes shared with the kernels.
ENUM_MODELS = 0
ENUM_SUPPORTED = 1
ENUM_FLP = 2
ENUM_SFLP = 3


@dataclass
class LoweredProgram:
    atoms: tuple[Atom, ...]
    index: dict[Atom, int]
    n: int
    heads: list[int] = field(default_factory=list)
    kinds: list[int] = field(default_factory=list)
    p0: list[int] = field(default_factory=list)
    p1: list[int] = field(default_factory=list)
    p2: list[int] = field(default_factory=list)
    dnf_pos: list[int] = field(default_factory=list)
    dnf_neg: list[int] = field(default_factory=list)
    table_words: list[int] = field(default_factory=list)

    @property
    def rule_count(self) -> int:
        return len(self.heads)

    def mask_of(self, interpretation: Interpretation) -> int:
        mask = 0
        for a in interpretation:
            mask |= 1 << self.index[a]
        return mask

    def interpretation_of(self, mask: int) -> frozenset[Atom]:
        return frozenset(self.atoms[i] for i in range(self.n) if mask >> i & 1)


def lower(program: Program, universe: tuple[Atom, ...] | None = None) -> LoweredProgram:
    """Flatten a program over a fixed atom universe (defaults to atoms(P))."""
    if universe is None:
        universe = tuple(sorted(program.atoms()))
    lp = LoweredProgram(atoms=universe, index={a: i for i, a in enumerate(universe)}, n=len(universe))
    for rule in program.rules:
        lp.heads.append(lp.mask_of(rule.head))
        _lower_body(lp, rule.body)
    return lp


def _lower_body(lp: LoweredProgram, body: Body) -> None:
    if isinstance(body, LiteralConjunction):
        lp.kinds.append(KIND_LITERAL)
        lp.p0.append(lp.mask_of(body.conjunct.positives))
        lp.p1.append(lp.mask_of(body.conjunct.negatives))
        lp.p2.append(0)
    elif isinstance(body, CountAggregate):
        lp.kinds.append(KIND_COUNT)
        lp.p0.append(lp.mask_of(body.atoms))
        lp.p1.append(CMP_CODES[body.comparator])
        lp.p2.append(body.bound)
    elif isinstance(body, Dnf):
        lp.kinds.append(KIND_DNF)
        lp.p0.append(len(lp.dnf_pos))
        lp.p1.append(len(body.disjuncts))
        lp.p2.append(0)
        for d in body.disjuncts:
            lp.dnf_pos.append(lp.mask_of(d.positives))
            lp.dnf_neg.append(lp.mask_of(d.negatives))
    elif isinstance(body, TruthTable):
        dom = sorted(body.domain, key=lambda a: lp.index[a])
        bit_of = {a: j for j, a in enumerate(dom)}
        size = 1 << len(dom)
        words = [0] * ((size + 63) >> 6)
        for s in body.satisfying:
            idx = 0
            for a in s:
                idx |= 1 << bit_of[a]
            words[idx >> 6] |= 1 << (idx & 63)
        lp.kinds.append(KIND_TABLE)
        lp.p0.append(lp.mask_of(body.domain))
        lp.p1.append(len(lp.table_words))
        lp.p2.append(len(words))
        lp.table_words.extend(words)
    else:
        raise TypeError(f"not a body: {body!r}")
