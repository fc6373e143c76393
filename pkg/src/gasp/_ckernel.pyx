# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel.

Behaviourally identical to gasp._pykernel but with C integer loops; masks
are uint64, so this backend handles universes of up to 62 atoms.
"""

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport free, malloc

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #  define GASP_POPCOUNT(x) __builtin_popcountll(x)
    #  define GASP_CTZ(x) __builtin_ctzll(x)
    #else
    static int GASP_POPCOUNT(unsigned long long v) {
        int c = 0;
        while (v) { v &= v - 1; ++c; }
        return c;
    }
    static int GASP_CTZ(unsigned long long v) {
        int c = 0;
        while (!(v & 1)) { v >>= 1; ++c; }
        return c;
    }
    #endif
    """
    int GASP_POPCOUNT(unsigned long long x) nogil
    int GASP_CTZ(unsigned long long x) nogil

NAME = "compiled"
MAX_ATOMS = 62

DEF KIND_LITERAL = 0
DEF KIND_COUNT = 1
DEF KIND_DNF = 2
DEF KIND_TABLE = 3

DEF ENUM_MODELS = 0
DEF ENUM_SUPPORTED = 1
DEF ENUM_FLP = 2
DEF ENUM_SFLP = 3


cdef struct Prog:
    int m
    uint64_t* heads
    int* kinds
    uint64_t* p0
    int64_t* p1
    int64_t* p2
    uint64_t* dnf_pos
    uint64_t* dnf_neg
    uint64_t* table_words


cdef inline uint64_t _pext(uint64_t value, uint64_t mask) nogil:
    cdef uint64_t out = 0, low
    cdef int bit = 0
    while mask:
        low = mask & (~mask + 1)
        if value & low:
            out |= (<uint64_t>1) << bit
        bit += 1
        mask ^= low
    return out


cdef inline bint _cmp(int code, int count, int64_t bound) nogil:
    if code == 0:
        return count == bound
    if code == 1:
        return count != bound
    if code == 2:
        return count <= bound
    if code == 3:
        return count >= bound
    if code == 4:
        return count < bound
    return count > bound


cdef inline bint _eval(Prog* pg, int r, uint64_t candidate) nogil:
    cdef int kind = pg.kinds[r]
    cdef uint64_t pos, idx
    cdef int64_t d
    if kind == KIND_LITERAL:
        pos = pg.p0[r]
        return (candidate & pos) == pos and (candidate & <uint64_t>pg.p1[r]) == 0
    if kind == KIND_COUNT:
        return _cmp(<int>pg.p1[r], GASP_POPCOUNT(candidate & pg.p0[r]), pg.p2[r])
    if kind == KIND_DNF:
        for d in range(<int64_t>pg.p0[r], <int64_t>pg.p0[r] + pg.p1[r]):
            pos = pg.dnf_pos[d]
            if (candidate & pos) == pos and (candidate & pg.dnf_neg[d]) == 0:
                return True
        return False
    idx = _pext(candidate, pg.p0[r])
    return (pg.table_words[pg.p1[r] + (idx >> 6)] >> (idx & 63)) & 1


cdef bint _is_model(Prog* pg, int* rules, int nr, uint64_t candidate) nogil:
    cdef int i
    for i in range(nr):
        if _eval(pg, rules[i], candidate) and not (pg.heads[rules[i]] & candidate):
            return False
    return True


cdef bint _is_supported(Prog* pg, int* rules, int nr, uint64_t candidate, char* evals) nogil:
    cdef int i
    cdef uint64_t rest, bit
    cdef bint found
    for i in range(nr):
        evals[i] = _eval(pg, rules[i], candidate)
        if evals[i] and not (pg.heads[rules[i]] & candidate):
            return False
    rest = candidate
    while rest:
        bit = rest & (~rest + 1)
        rest ^= bit
        found = False
        for i in range(nr):
            if evals[i] and (pg.heads[rules[i]] & candidate) == bit:
                found = True
                break
        if not found:
            return False
    return True


cdef bint _has_blocking_subset(Prog* pg, int* reduct, int nr, uint64_t candidate,
                               bint supported_mode, char* scratch) nogil:
    # Proper subsets of the candidate, smallest cardinality first, with
    # early exit on the first blocking witness.
    cdef uint64_t bits[64]
    cdef uint64_t rest = candidate, low, top, pattern, sub, t, b, ripple
    cdef int k = 0, card
    while rest:
        low = rest & (~rest + 1)
        bits[k] = low
        k += 1
        rest ^= low
    if k == 0:
        return False
    if supported_mode:
        if _is_supported(pg, reduct, nr, 0, scratch):
            return True
    elif _is_model(pg, reduct, nr, 0):
        return True
    top = (<uint64_t>1) << k
    for card in range(1, k):
        pattern = ((<uint64_t>1) << card) - 1
        while pattern < top:
            sub = 0
            t = pattern
            while t:
                b = t & (~t + 1)
                sub |= bits[GASP_CTZ(b)]
                t ^= b
            if supported_mode:
                if _is_supported(pg, reduct, nr, sub, scratch):
                    return True
            elif _is_model(pg, reduct, nr, sub):
                return True
            low = pattern & (~pattern + 1)
            ripple = pattern + low
            pattern = ripple | ((pattern ^ ripple) >> 2) / low
    return False


def enumerate_masks(lp, int mode):
    """All candidate masks over the lowered universe accepted by `mode`."""
    cdef int n = lp.n
    cdef int m = lp.rule_count
    cdef Prog pg
    cdef list heads = lp.heads, kinds = lp.kinds
    cdef list lp0 = lp.p0, lp1 = lp.p1, lp2 = lp.p2
    cdef list dpos = lp.dnf_pos, dneg = lp.dnf_neg, twords = lp.table_words
    cdef int nd = len(dpos), nw = len(twords)
    cdef int i, r, nr
    cdef int* reduct
    cdef char* evals
    cdef char* scratch
    cdef uint64_t top, candidate, rest, bit
    cdef bint bad, supported, found, blocked
    cdef list out

    if n > MAX_ATOMS:
        raise ValueError(f"compiled kernel supports at most {MAX_ATOMS} atoms, got {n}")
    pg.m = m
    pg.heads = <uint64_t*>malloc((m if m else 1) * sizeof(uint64_t))
    pg.kinds = <int*>malloc((m if m else 1) * sizeof(int))
    pg.p0 = <uint64_t*>malloc((m if m else 1) * sizeof(uint64_t))
    pg.p1 = <int64_t*>malloc((m if m else 1) * sizeof(int64_t))
    pg.p2 = <int64_t*>malloc((m if m else 1) * sizeof(int64_t))
    pg.dnf_pos = <uint64_t*>malloc((nd if nd else 1) * sizeof(uint64_t))
    pg.dnf_neg = <uint64_t*>malloc((nd if nd else 1) * sizeof(uint64_t))
    pg.table_words = <uint64_t*>malloc((nw if nw else 1) * sizeof(uint64_t))
    reduct = <int*>malloc((m if m else 1) * sizeof(int))
    evals = <char*>malloc((m if m else 1) * sizeof(char))
    scratch = <char*>malloc((m if m else 1) * sizeof(char))
    if (pg.heads == NULL or pg.kinds == NULL or pg.p0 == NULL or pg.p1 == NULL
            or pg.p2 == NULL or pg.dnf_pos == NULL or pg.dnf_neg == NULL
            or pg.table_words == NULL or reduct == NULL
            or evals == NULL or scratch == NULL):
        _free_all(&pg, reduct, evals, scratch)
        raise MemoryError()
    try:
        for i in range(m):
            pg.heads[i] = heads[i]
            pg.kinds[i] = kinds[i]
            pg.p0[i] = lp0[i]
            pg.p1[i] = lp1[i]
            pg.p2[i] = lp2[i]
        for i in range(nd):
            pg.dnf_pos[i] = dpos[i]
            pg.dnf_neg[i] = dneg[i]
        for i in range(nw):
            pg.table_words[i] = twords[i]

        out = []
        top = (<uint64_t>1) << n
        candidate = 0
        while candidate < top:
            bad = False
            for r in range(m):
                evals[r] = _eval(&pg, r, candidate)
                if evals[r] and not (pg.heads[r] & candidate):
                    bad = True
                    break
            if bad:
                candidate += 1
                continue
            if mode == ENUM_MODELS:
                out.append(candidate)
                candidate += 1
                continue
            if mode == ENUM_SUPPORTED or mode == ENUM_SFLP:
                supported = True
                rest = candidate
                while rest:
                    bit = rest & (~rest + 1)
                    rest ^= bit
                    found = False
                    for r in range(m):
                        if evals[r] and (pg.heads[r] & candidate) == bit:
                            found = True
                            break
                    if not found:
                        supported = False
                        break
                if not supported:
                    candidate += 1
                    continue
                if mode == ENUM_SUPPORTED:
                    out.append(candidate)
                    candidate += 1
                    continue
            nr = 0
            for r in range(m):
                if evals[r]:
                    reduct[nr] = r
                    nr += 1
            blocked = _has_blocking_subset(&pg, reduct, nr, candidate,
                                           mode == ENUM_SFLP, scratch)
            if not blocked:
                out.append(candidate)
            candidate += 1
        return out
    finally:
        _free_all(&pg, reduct, evals, scratch)


cdef void _free_all(Prog* pg, int* reduct, char* evals, char* scratch):
    free(pg.heads)
    free(pg.kinds)
    free(pg.p0)
    free(pg.p1)
    free(pg.p2)
    free(pg.dnf_pos)
    free(pg.dnf_neg)
    free(pg.table_words)
    free(reduct)
    free(evals)
    free(scratch)
