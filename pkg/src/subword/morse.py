"""Discrete Morse theory on intervals of generalized subword order.

Maximal chains are labeled by (position, letter) moves under the
rightmost-zeroing convention, totally ordered lexicographically (a PLO), and
analyzed for skipped intervals, MSIs, J-intervals and criticality.  The Morse
route to the Mobius function sums (-1)^d over critical chains.

Two skipped-interval tests coexist:

* a brute-force test quantifying over all PLO-earlier chains of the interval
  (:func:`skipped_intervals`), used by small-scale property tests; and
* an exact direct test used by :meth:`MorseEngine.critical_chains`: an interval
  I of C is skipped iff the PLO-minimum maximal chain through C - I precedes
  C.  Combined with generating only chains whose label sequences strictly
  decrease (no other chain can be critical), this keeps large sweeps feasible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DomainError, InputError, ResourceLimitError, check_i64
from .poset import ZERO, AugmentedPoset, FinitePoset, NaturalLabeling, natural_labeling
from .words import (
    DEFAULT_MAX_CHAINS,
    DEFAULT_MAX_NODES,
    Embedding,
    Word,
    _down_words,
    check_word,
    format_word,
    is_embedding,
    is_leq_words,
    restrict,
)

Label = tuple[int, int]  # (1-based position in w, letter id or ZERO)
IndexInterval = tuple[int, int]  # inclusive indices into a chain's word list


@dataclass(frozen=True)
class LabeledChain:
    """A maximal chain of [u, w] with its embedding track and label sequence."""

    poset: FinitePoset
    words: tuple[Word, ...]  # top w first, bottom u last
    embeddings: tuple[Embedding, ...]
    labels: tuple[Label, ...]

    @property
    def top(self) -> Word:
        return self.words[0]

    @property
    def bottom(self) -> Word:
        return self.words[-1]

    @property
    def final_embedding(self) -> Embedding:
        return self.embeddings[-1]

    def open_range(self) -> tuple[int, int]:
        """Index range of the open chain C(w, u); empty when hi < lo."""
        return 1, len(self.words) - 2

    def describe(self) -> str:
        words = " > ".join(format_word(self.poset, v) for v in self.words)
        labels = ", ".join(self._label_text(l) for l in self.labels)
        return f"{words}  [{labels}]"

    def _label_text(self, label: Label) -> str:
        j, x = label
        return f"<{j},{'0' if x == ZERO else self.poset.names[x]}>"


@dataclass(frozen=True)
class MsiDecomposition:
    """MSIs, disjointified J-intervals, and criticality data of one chain."""

    chain: LabeledChain
    msis: tuple[IndexInterval, ...]
    j_intervals: tuple[IndexInterval, ...]
    is_critical: bool
    critical_dimension: int

    def sign(self) -> int:
        return -1 if self.critical_dimension % 2 else 1


def chain_sign(dimension: int) -> int:
    return -1 if dimension % 2 else 1


def _contains(outer: IndexInterval, inner: IndexInterval) -> bool:
    return outer[0] <= inner[0] and inner[1] <= outer[1]


def j_construction(
    msis: Sequence[IndexInterval], open_lo: int, open_hi: int
) -> tuple[tuple[IndexInterval, ...], bool]:
    """Disjointify MSIs into J-intervals; report whether they cover the open chain."""
    current = sorted(set(msis))
    lefts = [iv[0] for iv in current]
    assert len(lefts) == len(set(lefts)), "MSI left endpoints must be distinct"
    js: list[IndexInterval] = []
    while current:
        j = current[0]
        js.append(j)
        clipped = []
        for lo, hi in current[1:]:
            lo2 = max(lo, j[1] + 1)
            if lo2 <= hi:
                clipped.append((lo2, hi))
        clipped = sorted(set(clipped))
        current = sorted(
            iv
            for iv in clipped
            if not any(o != iv and _contains(iv, o) for o in clipped)
        )
    covered: set[int] = set()
    for lo, hi in js:
        covered.update(range(lo, hi + 1))
    is_critical = covered == set(range(open_lo, open_hi + 1))
    return tuple(js), is_critical


class ChainContext:
    """All maximal chains of one interval, PLO-sorted, with element sets."""

    def __init__(self, engine: "MorseEngine", u: Word, w: Word, chains: list[LabeledChain]):
        self.engine = engine
        self.u = u
        self.w = w
        self.chains = sorted(chains, key=engine.plo_key)
        self.sets = [frozenset(c.words) for c in self.chains]
        self._index = {c.labels: i for i, c in enumerate(self.chains)}
        if len(self._index) != len(self.chains):
            raise InputError("duplicate label sequences: PLO is not total here")

    def index_of(self, chain: LabeledChain) -> int:
        try:
            return self._index[chain.labels]
        except KeyError:
            raise DomainError("chain does not belong to this interval") from None


class MorseEngine:
    """Chain labeling, PLO and critical-chain machinery for one ground poset."""

    def __init__(self, poset: FinitePoset, labeling: NaturalLabeling | None = None):
        self.poset = poset
        self.p0 = AugmentedPoset(poset)
        self.labeling = labeling if labeling is not None else natural_labeling(poset)
        self._move_cache: dict[Embedding, tuple[tuple[Label, Embedding], ...]] = {}
        self._lexmin_cache: dict[tuple[Embedding, tuple[Word, ...]], tuple[Label, ...]] = {}

    # -- labels and the PLO ---------------------------------------------------

    def label_key(self, label: Label) -> tuple[int, int]:
        j, x = label
        return (j, self.labeling(x))

    def plo_key(self, chain: LabeledChain) -> tuple[tuple[int, int], ...]:
        return tuple(self.label_key(l) for l in chain.labels)

    def plo_compare(self, c1: LabeledChain, c2: LabeledChain) -> int:
        if (c1.top, c1.bottom) != (c2.top, c2.bottom):
            raise DomainError("plo_compare requires chains of the same interval")
        k1, k2 = self.plo_key(c1), self.plo_key(c2)
        return -1 if k1 < k2 else (1 if k1 > k2 else 0)

    # -- cover moves ----------------------------------------------------------

    def cover_moves(self, eta: Embedding) -> tuple[tuple[Label, Embedding], ...]:
        """All covers of the word carried by eta, as canonically labeled moves.

        A move either decreases one nonzero position one cover step down in P,
        or deletes a minimal letter; a deletion zeroes the first position of
        its run (the rightmost embedding of the shorter word).  Moves are
        sorted by label key, so DFS emits chains in PLO order.
        """
        cached = self._move_cache.get(eta)
        if cached is not None:
            return cached
        moves: list[tuple[Label, Embedding]] = []
        support = [j for j, x in enumerate(eta) if x != ZERO]
        for j in support:
            for y in self.poset.covered_by(eta[j]):
                moves.append(((j + 1, y), eta[:j] + (y,) + eta[j + 1 :]))
        # one deletion per run of a minimal letter, zeroing the run's first slot
        prev_letter = None
        for idx, j in enumerate(support):
            letter = eta[j]
            if letter != prev_letter and not self.poset.covered_by(letter):
                moves.append(((j + 1, ZERO), eta[:j] + (ZERO,) + eta[j + 1 :]))
            prev_letter = letter
        moves.sort(key=lambda m: self.label_key(m[0]))
        result = tuple(moves)
        self._move_cache[eta] = result
        return result

    def label_chain(self, words: Sequence[Word]) -> LabeledChain:
        """Label a maximal chain (given top-to-bottom as words)."""
        words = [check_word(self.poset, v) for v in words]
        if not words:
            raise DomainError("a chain needs at least one element")
        etas: list[Embedding] = [tuple(words[0])]
        labels: list[Label] = []
        for v in words[1:]:
            for label, eta in self.cover_moves(etas[-1]):
                if restrict(eta) == v:
                    etas.append(eta)
                    labels.append(label)
                    break
            else:
                raise DomainError(
                    f"{format_word(self.poset, v)} is not covered by "
                    f"{format_word(self.poset, restrict(etas[-1]))}"
                )
        return LabeledChain(self.poset, tuple(words), tuple(etas), tuple(labels))

    def chain_specified_by(self, w: Word, labels: Sequence[Label]) -> LabeledChain:
        """Apply labels as embedding moves from w, then re-derive canonical labels."""
        w = check_word(self.poset, w)
        eta = list(w)
        words = [w]
        for j, x in labels:
            if not 1 <= j <= len(w):
                raise DomainError(f"label position {j} outside 1..{len(w)}")
            cur = eta[j - 1]
            if cur == ZERO or x not in self.p0.covered_by(cur):
                raise DomainError(f"label <{j},{x}> is not applicable at its step")
            eta[j - 1] = x
            words.append(restrict(tuple(eta)))
        return self.label_chain(words)

    # -- chain enumeration ----------------------------------------------------

    def all_chains(
        self, u: Word, w: Word, max_chains: int = DEFAULT_MAX_CHAINS
    ) -> ChainContext:
        """Every maximal chain of [u, w], PLO-sorted."""
        u = check_word(self.poset, u)
        w = check_word(self.poset, w)
        if not is_leq_words(self.poset, u, w):
            raise DomainError("all_chains requires u <= w")
        chains: list[LabeledChain] = []
        etas: list[Embedding] = [tuple(w)]
        words: list[Word] = [w]
        labels: list[Label] = []

        def descend() -> None:
            if words[-1] == u:
                if len(chains) >= max_chains:
                    raise ResourceLimitError(
                        f"interval has more than {max_chains} maximal chains"
                    )
                chains.append(
                    LabeledChain(self.poset, tuple(words), tuple(etas), tuple(labels))
                )
                return
            for label, eta in self.cover_moves(etas[-1]):
                v = restrict(eta)
                if is_leq_words(self.poset, u, v):
                    etas.append(eta)
                    words.append(v)
                    labels.append(label)
                    descend()
                    etas.pop()
                    words.pop()
                    labels.pop()

        descend()
        return ChainContext(self, u, w, chains)

    def _lex_decreasing_chains(
        self, w: Word, u: Word | None
    ) -> Iterator[LabeledChain]:
        """Saturated descending chains from w with strictly decreasing labels.

        With u given, only full chains down to u are yielded; with u None every
        proper descending prefix is yielded (its endpoint is the chain bottom).
        """
        etas: list[Embedding] = [tuple(w)]
        words: list[Word] = [w]
        labels: list[Label] = []

        def emit() -> LabeledChain:
            return LabeledChain(self.poset, tuple(words), tuple(etas), tuple(labels))

        def descend() -> Iterator[LabeledChain]:
            if u is None and len(words) > 1:
                yield emit()
            elif u is not None and words[-1] == u:
                yield emit()
                return
            last = self.label_key(labels[-1]) if labels else None
            for label, eta in self.cover_moves(etas[-1]):
                if last is not None and self.label_key(label) >= last:
                    continue
                v = restrict(eta)
                if u is not None and not is_leq_words(self.poset, u, v):
                    continue
                etas.append(eta)
                words.append(v)
                labels.append(label)
                yield from descend()
                etas.pop()
                words.pop()
                labels.pop()

        yield from descend()

    # -- skipped intervals: brute force over earlier chains --------------------

    def skipped_intervals(
        self, chain: LabeledChain, context: ChainContext
    ) -> list[IndexInterval]:
        """All SIs of chain, by containment checks against PLO-earlier chains."""
        idx = context.index_of(chain)
        elems = chain.words
        lo, hi = chain.open_range()
        earlier = context.sets[:idx]
        out: list[IndexInterval] = []
        for i in range(lo, hi + 1):
            for j in range(i, hi + 1):
                needed = frozenset(elems[:i]) | frozenset(elems[j + 1 :])
                if any(needed <= s for s in earlier):
                    out.append((i, j))
        return out

    def msis(self, chain: LabeledChain, context: ChainContext) -> list[IndexInterval]:
        sis = self.skipped_intervals(chain, context)
        return _minimal_intervals(sis)

    def decomposition(
        self, chain: LabeledChain, context: ChainContext
    ) -> MsiDecomposition:
        return self._decompose(chain, self.msis(chain, context))

    def _decompose(
        self, chain: LabeledChain, msis: Sequence[IndexInterval]
    ) -> MsiDecomposition:
        lo, hi = chain.open_range()
        js, crit = j_construction(msis, lo, hi)
        return MsiDecomposition(chain, tuple(sorted(msis)), js, crit, len(js) - 1)

    # -- skipped intervals: direct PLO-minimum test ---------------------------

    def _lexmin_through(self, w_eta: Embedding, required: tuple[Word, ...]) -> tuple[Label, ...]:
        """Label sequence of the PLO-minimum maximal chain from w through the
        given descending element list (which starts below w and ends at the
        chain bottom)."""
        key = (w_eta, required)
        cached = self._lexmin_cache.get(key)
        if cached is not None:
            return cached
        labels: list[Label] = []
        eta = w_eta
        remaining = list(required)
        while remaining:
            target = remaining[0]
            if restrict(eta) == target:
                remaining.pop(0)
                continue
            for label, nxt in self.cover_moves(eta):
                if is_leq_words(self.poset, target, restrict(nxt)):
                    labels.append(label)
                    eta = nxt
                    break
            else:  # pragma: no cover - target <= current always leaves a move
                raise AssertionError("no feasible cover move")
        result = tuple(labels)
        self._lexmin_cache[key] = result
        return result

    def is_si(self, chain: LabeledChain, interval: IndexInterval) -> bool:
        """Exact SI test: some chain through C - I precedes C in the PLO."""
        i, j = interval
        lo, hi = chain.open_range()
        if not (lo <= i <= j <= hi):
            raise DomainError("interval must lie in the open chain")
        required = chain.words[1:i] + chain.words[j + 1 :]
        lexmin = self._lexmin_through(chain.embeddings[0], required)
        own = tuple(self.label_key(l) for l in chain.labels)
        other = tuple(self.label_key(l) for l in lexmin)
        return other < own

    def msis_direct(self, chain: LabeledChain) -> list[IndexInterval]:
        lo, hi = chain.open_range()
        sis = [
            (i, j)
            for i in range(lo, hi + 1)
            for j in range(i, hi + 1)
            if self.is_si(chain, (i, j))
        ]
        return _minimal_intervals(sis)

    def decomposition_direct(self, chain: LabeledChain) -> MsiDecomposition:
        return self._decompose(chain, self.msis_direct(chain))

    # -- critical chains and the Morse Mobius sum -----------------------------

    def critical_chains(self, u: Word, w: Word) -> list[MsiDecomposition]:
        """All critical chains of [u, w], PLO-sorted.

        Only chains with strictly decreasing label sequences are examined;
        no other chain can be critical.
        """
        u = check_word(self.poset, u)
        w = check_word(self.poset, w)
        if not is_leq_words(self.poset, u, w):
            raise DomainError("critical_chains requires u <= w")
        if u == w:
            return []
        out = [
            dec
            for chain in self._lex_decreasing_chains(w, u)
            if (dec := self.decomposition_direct(chain)).is_critical
        ]
        out.sort(key=lambda d: self.plo_key(d.chain))
        return out

    def critical_chains_below(self, w: Word) -> dict[Word, list[MsiDecomposition]]:
        """Critical chains of [u, w] for every u < w, from one traversal."""
        w = check_word(self.poset, w)
        table: dict[Word, list[MsiDecomposition]] = {}
        for chain in self._lex_decreasing_chains(w, None):
            dec = self.decomposition_direct(chain)
            if dec.is_critical:
                table.setdefault(chain.bottom, []).append(dec)
        for decs in table.values():
            decs.sort(key=lambda d: self.plo_key(d.chain))
        return table

    def mobius_morse(self, u: Word, w: Word) -> int:
        u = check_word(self.poset, u)
        w = check_word(self.poset, w)
        if u == w:
            return 1
        if not is_leq_words(self.poset, u, w):
            raise DomainError("mobius_morse requires u <= w")
        if any(restrict(eta) == u for _, eta in self.cover_moves(tuple(w))):
            return -1
        total = sum(dec.sign() for dec in self.critical_chains(u, w))
        return check_i64(total, "mobius_morse")

    def mobius_morse_below(self, w: Word) -> dict[Word, int]:
        """mu(u, w) for every u <= w via the Morse sum, one traversal of w."""
        w = check_word(self.poset, w)
        critical = self.critical_chains_below(w)
        table = {
            u: check_i64(sum(d.sign() for d in decs), "mobius_morse_below")
            for u, decs in critical.items()
        }
        for u in _down_words(self.poset, w, DEFAULT_MAX_NODES):
            table.setdefault(u, 0)
        table[w] = 1
        return table

    def per_embedding_mu(self, eta: Embedding, w: Word) -> int:
        """Morse contribution of the critical chains ending at the embedding eta."""
        w = check_word(self.poset, w)
        u = restrict(eta)
        if not is_embedding(self.poset, eta, w):
            raise DomainError("eta is not an embedding in w")
        if u == w:
            return 1
        total = sum(
            dec.sign()
            for dec in self.critical_chains(u, w)
            if dec.chain.final_embedding == eta
        )
        return check_i64(total, "per_embedding_mu")

    # -- single-position MSI classification -----------------------------------

    def classify_single_position_msi(self, chain: LabeledChain) -> bool:
        """Predict whether C(w, eta) is an MSI when eta differs from w in one slot."""
        w = chain.top
        eta = chain.final_embedding
        diff = [j for j in range(len(w)) if eta[j] != w[j]]
        if len(diff) != 1:
            raise DomainError("endpoints must differ in exactly one position")
        j = diff[0]
        chain0 = tuple(e[j] for e in chain.embeddings)
        if len(chain0) <= 2:
            return False  # empty open interval cannot be an MSI
        rightmost = not (
            eta[j] == ZERO and j > 0 and self.p0.leq(w[j - 1], w[j])
        )
        if rightmost:
            return self._p0_open_is_msi(chain0)
        open_elems = chain0[1:-1]
        if any(self.p0.leq(w[j - 1], x) for x in open_elems):
            return False
        return not self._p0_has_proper_si(chain0)

    # -- Morse machinery inside P0 --------------------------------------------

    def _p0_sis(self, chain0: tuple[int, ...]) -> list[IndexInterval]:
        """Brute-force SIs of a maximal chain of a P0 interval under its PLO."""
        top, bottom = chain0[0], chain0[-1]
        all0 = self.p0.maximal_chains(bottom, top)
        keyed = sorted(all0, key=lambda c: tuple(self.labeling(x) for x in c[1:]))
        idx = keyed.index(chain0)
        earlier = [frozenset(c) for c in keyed[:idx]]
        out: list[IndexInterval] = []
        hi = len(chain0) - 2
        for i in range(1, hi + 1):
            for k in range(i, hi + 1):
                needed = frozenset(chain0[:i]) | frozenset(chain0[k + 1 :])
                if any(needed <= s for s in earlier):
                    out.append((i, k))
        return out

    def _p0_open_is_msi(self, chain0: tuple[int, ...]) -> bool:
        sis = self._p0_sis(chain0)
        full = (1, len(chain0) - 2)
        return full in sis and all(si == full for si in sis)

    def _p0_has_proper_si(self, chain0: tuple[int, ...]) -> bool:
        full = (1, len(chain0) - 2)
        return any(si != full for si in self._p0_sis(chain0))


def _minimal_intervals(intervals: Sequence[IndexInterval]) -> list[IndexInterval]:
    uniq = sorted(set(intervals))
    return [
        iv
        for iv in uniq
        if not any(o != iv and _contains(iv, o) for o in uniq)
    ]


# -- module-level convenience wrappers ----------------------------------------


def label_chain(poset: FinitePoset, words: Sequence[Word]) -> LabeledChain:
    return MorseEngine(poset).label_chain(words)


def mobius_morse(poset: FinitePoset, u: Word, w: Word) -> int:
    return MorseEngine(poset).mobius_morse(u, w)


def critical_chains(poset: FinitePoset, u: Word, w: Word) -> list[MsiDecomposition]:
    return MorseEngine(poset).critical_chains(u, w)
