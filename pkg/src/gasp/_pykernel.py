"""Pure-Python enumeration kernel.

Reference implementation of the hot loops; gasp._ckernel is the compiled
twin with the same observable behaviour. Candidates and interpretations
are plain integers (bit i = i-th atom of the lowered universe), so this
backend also covers universes wider than 62 atoms should anyone raise the
limit that far.
"""

from __future__ import annotations

from typing import Iterator

from .lowering import (
    ENUM_FLP,
    ENUM_MODELS,
    ENUM_SFLP,
    ENUM_SUPPORTED,
    KIND_COUNT,
    KIND_DNF,
    KIND_LITERAL,
    LoweredProgram,
)

NAME = "pure"

_CMP = (
    lambda c, b: c == b,
    lambda c, b: c != b,
    lambda c, b: c <= b,
    lambda c, b: c >= b,
    lambda c, b: c < b,
    lambda c, b: c > b,
)


def _pext(value: int, mask: int) -> int:
    """Compress the bits of `value` selected by `mask` into the low bits."""
    out = 0
    bit = 0
    while mask:
        low = mask & -mask
        if value & low:
            out |= 1 << bit
        bit += 1
        mask ^= low
    return out


def eval_mask(lp: LoweredProgram, r: int, candidate: int) -> bool:
    """Truth of rule r's body at a candidate mask."""
    kind = lp.kinds[r]
    if kind == KIND_LITERAL:
        pos = lp.p0[r]
        return candidate & pos == pos and candidate & lp.p1[r] == 0
    if kind == KIND_COUNT:
        return _CMP[lp.p1[r]]((candidate & lp.p0[r]).bit_count(), lp.p2[r])
    if kind == KIND_DNF:
        off = lp.p0[r]
        for d in range(off, off + lp.p1[r]):
            pos = lp.dnf_pos[d]
            if candidate & pos == pos and candidate & lp.dnf_neg[d] == 0:
                return True
        return False
    idx = _pext(candidate, lp.p0[r])
    return lp.table_words[lp.p1[r] + (idx >> 6)] >> (idx & 63) & 1 == 1


def proper_subsets_increasing(mask: int) -> Iterator[int]:
    """Proper subsets of a mask, smallest cardinality first.

    Gosper's hack walks fixed-popcount patterns in a compressed k-bit
    space, which are then expanded back onto the mask's bit positions.
    """
    bits = []
    rest = mask
    while rest:
        low = rest & -rest
        bits.append(low)
        rest ^= low
    k = len(bits)
    if k == 0:
        return
    yield 0
    for card in range(1, k):
        pattern = (1 << card) - 1
        top = 1 << k
        while pattern < top:
            sub = 0
            t = pattern
            while t:
                b = t & -t
                sub |= bits[b.bit_length() - 1]
                t ^= b
            yield sub
            low = pattern & -pattern
            ripple = pattern + low
            pattern = ripple | ((pattern ^ ripple) >> 2) // low


def _is_model(lp: LoweredProgram, rules: list[int], candidate: int) -> bool:
    for r in rules:
        if eval_mask(lp, r, candidate) and not lp.heads[r] & candidate:
            return False
    return True


def _is_supported(lp: LoweredProgram, rules: list[int], candidate: int) -> bool:
    evals = [eval_mask(lp, r, candidate) for r in rules]
    for i, r in enumerate(rules):
        if evals[i] and not lp.heads[r] & candidate:
            return False
    rest = candidate
    while rest:
        bit = rest & -rest
        rest ^= bit
        for i, r in enumerate(rules):
            if evals[i] and lp.heads[r] & candidate == bit:
                break
        else:
            return False
    return True


def enumerate_masks(lp: LoweredProgram, mode: int) -> list[int]:
    """All candidate masks over the lowered universe accepted by `mode`."""
    all_rules = list(range(lp.rule_count))
    out = []
    for candidate in range(1 << lp.n):
        evals = [eval_mask(lp, r, candidate) for r in all_rules]
        if any(evals[r] and not lp.heads[r] & candidate for r in all_rules):
            continue
        if mode == ENUM_MODELS:
            out.append(candidate)
            continue
        if mode in (ENUM_SUPPORTED, ENUM_SFLP):
            rest = candidate
            supported = True
            while rest:
                bit = rest & -rest
                rest ^= bit
                if not any(evals[r] and lp.heads[r] & candidate == bit for r in all_rules):
                    supported = False
                    break
            if not supported:
                continue
            if mode == ENUM_SUPPORTED:
                out.append(candidate)
                continue
        reduct = [r for r in all_rules if evals[r]]
        if mode == ENUM_FLP:
            blocked = any(
                _is_model(lp, reduct, j) for j in proper_subsets_increasing(candidate)
            )
        else:
            blocked = any(
                _is_supported(lp, reduct, j) for j in proper_subsets_increasing(candidate)
            )
        if not blocked:
            out.append(candidate)
    return out
