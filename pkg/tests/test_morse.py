import itertools

import pytest

from subword import (
    AugmentedPoset,
    DomainError,
    NaturalLabeling,
    ZERO,
    builtin_poset,
    build_interval,
    contribution,
    embeddings,
    mobius_main,
    mobius_oracle,
    parse_word,
)
from subword.morse import MorseEngine, j_construction
from subword.poset import all_linear_extensions, random_poset

CHAIN3 = builtin_poset("chain:3")


def words(poset, *texts):
    return [parse_word(poset, t) for t in texts]


def L(poset, text):
    """Parse labels like "<1,1> <3,1> <2,0>"."""
    out = []
    for part in text.split():
        j, x = part.strip("<>").split(",")
        out.append((int(j), ZERO if x == "0" else poset.id_of(x)))
    return tuple(out)


# -- labeling ------------------------------------------------------------------


def test_label_chain_c(lam):
    chain = MorseEngine(lam).label_chain(words(lam, "333", "133", "131", "111", "11"))
    assert chain.labels == L(lam, "<1,1> <3,1> <2,1> <1,0>")
    assert chain.final_embedding == (ZERO, 0, 0)


def test_label_chain_d(lam):
    chain = MorseEngine(lam).label_chain(words(lam, "333", "332", "33", "31", "11"))
    assert chain.labels == L(lam, "<3,2> <3,0> <2,1> <1,1>")


def test_label_chain_cprime(lam):
    chain = MorseEngine(lam).label_chain(words(lam, "333", "313", "33", "13", "11"))
    assert chain.labels == L(lam, "<2,1> <2,0> <1,1> <3,1>")
    assert chain.embeddings[1] == parse_word(lam, "313")


def test_label_chain_single_cover():
    # deleting the minimal letter a from ab zeroes position 1
    chain = MorseEngine(CHAIN3).label_chain(words(CHAIN3, "12", "2"))
    assert chain.labels == L(CHAIN3, "<1,0>")


def test_label_chain_run_deletion():
    # deleting from the run [5,6] of a's zeroes the run's first slot
    chain = MorseEngine(CHAIN3).label_chain(words(CHAIN3, "111211333", "11121333"))
    assert chain.labels == ((5, ZERO),)


def test_label_chain_rejects_non_cover(lam):
    with pytest.raises(DomainError):
        MorseEngine(lam).label_chain(words(lam, "333", "3"))


# -- PLO -----------------------------------------------------------------------


def test_plo_compare(lam):
    eng = MorseEngine(lam)
    c = eng.label_chain(words(lam, "333", "313", "33", "13", "11"))
    cprime = eng.label_chain(words(lam, "333", "133", "113", "111", "11"))
    d = eng.label_chain(words(lam, "333", "332", "33", "31", "11"))
    assert eng.plo_compare(cprime, c) == -1
    assert eng.plo_compare(c, d) == -1
    assert eng.plo_compare(cprime, d) == -1
    assert eng.plo_compare(d, d) == 0
    other = eng.label_chain(words(lam, "22", "2"))
    with pytest.raises(DomainError):
        eng.plo_compare(c, other)


def test_plo_zero_label_first(lam):
    # <1,0> sorts before <1,1>: l(0)=0
    eng = MorseEngine(lam)
    assert eng.label_key((1, ZERO)) < eng.label_key((1, 0))


def test_plo_total_on_interval(lam):
    eng = MorseEngine(lam)
    ctx = eng.all_chains(parse_word(lam, "11"), parse_word(lam, "333"))
    keys = [eng.plo_key(c) for c in ctx.chains]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


# -- chain specification -------------------------------------------------------


def test_chain_specified_by_example(lam):
    eng = MorseEngine(lam)
    spec = eng.chain_specified_by(
        parse_word(lam, "333"), L(lam, "<1,1> <2,1> <3,1> <2,0>")
    )
    assert spec.words == tuple(words(lam, "333", "133", "113", "111", "11"))
    assert spec.labels == L(lam, "<1,1> <2,1> <3,1> <1,0>")


def test_chain_specified_by_identity(lam):
    eng = MorseEngine(lam)
    chain = eng.label_chain(words(lam, "333", "313", "33", "13", "11"))
    again = eng.chain_specified_by(chain.top, chain.labels)
    assert again == chain


def test_chain_specified_by_consistent_permutations(lam):
    # every consistent permutation specifies a chain ending at the same word,
    # with canonical labels lex <= the permuted input
    eng = MorseEngine(lam)
    ctx = eng.all_chains(parse_word(lam, "11"), parse_word(lam, "333"))
    for chain in ctx.chains:
        for perm in itertools.permutations(chain.labels):
            per_pos = {}
            for lab in perm:
                per_pos.setdefault(lab[0], []).append(lab)
            consistent = all(
                per_pos[j] == [l for l in chain.labels if l[0] == j]
                for j in per_pos
            )
            if not consistent:
                continue
            spec = eng.chain_specified_by(chain.top, perm)
            assert spec.bottom == chain.bottom
            key = tuple(eng.label_key(l) for l in spec.labels)
            perm_key = tuple(eng.label_key(l) for l in perm)
            assert key <= perm_key


def test_chain_specified_by_bad_label(lam):
    eng = MorseEngine(lam)
    with pytest.raises(DomainError):
        eng.chain_specified_by(parse_word(lam, "33"), L(lam, "<5,1>"))
    with pytest.raises(DomainError):
        eng.chain_specified_by(parse_word(lam, "33"), L(lam, "<1,0>"))


# -- skipped intervals and MSIs ------------------------------------------------


def test_sis_of_chain_d(lam):
    eng = MorseEngine(lam)
    ctx = eng.all_chains(parse_word(lam, "11"), parse_word(lam, "333"))
    d = eng.label_chain(words(lam, "333", "332", "33", "31", "11"))
    sis = eng.skipped_intervals(d, ctx)
    assert (1, 1) in sis  # {332}
    assert (1, 3) in sis  # {332, 33, 31}
    msis = eng.msis(d, ctx)
    assert msis == [(1, 1), (2, 2), (3, 3)]
    dec = eng.decomposition(d, ctx)
    assert dec.is_critical and dec.critical_dimension == 2


def test_plo_first_chain_has_no_sis(lam):
    eng = MorseEngine(lam)
    ctx = eng.all_chains(parse_word(lam, "11"), parse_word(lam, "333"))
    assert eng.skipped_intervals(ctx.chains[0], ctx) == []


def test_descent_example(lam):
    # 322 > 32 > 22 has the 1-descent {32}, beaten by 322 > 222 > 022
    eng = MorseEngine(lam)
    u, w = parse_word(lam, "22"), parse_word(lam, "322")
    ctx = eng.all_chains(u, w)
    chain = eng.label_chain(words(lam, "322", "32", "22"))
    assert chain.labels == L(lam, "<2,0> <1,2>")
    assert eng.msis(chain, ctx) == [(1, 1)]
    earlier = eng.label_chain(words(lam, "322", "222", "22"))
    assert eng.plo_compare(earlier, chain) == -1


def test_descents_are_singleton_msis(lam):
    eng = MorseEngine(lam)
    for w_txt, u_txt in [("333", "11"), ("322", "2"), ("133", "")]:
        u, w = parse_word(lam, u_txt), parse_word(lam, w_txt)
        ctx = eng.all_chains(u, w)
        for chain in ctx.chains:
            sis = eng.skipped_intervals(chain, ctx)
            lo, hi = chain.open_range()
            for k in range(lo, hi + 1):
                if chain.labels[k][0] < chain.labels[k - 1][0]:
                    assert (k, k) in sis


def test_no_msi_contains_an_ascent(lam):
    eng = MorseEngine(lam)
    for w_txt, u_txt in [("333", "11"), ("322", "2"), ("133", "")]:
        u, w = parse_word(lam, u_txt), parse_word(lam, w_txt)
        ctx = eng.all_chains(u, w)
        for chain in ctx.chains:
            for a, b in eng.msis(chain, ctx):
                for k in range(a, b + 1):
                    assert chain.labels[k][0] <= chain.labels[k - 1][0]


def test_fast_si_test_matches_brute_force(lam, fig3):
    for poset, pairs in [
        (lam, [("333", "11"), ("322", "2"), ("233", "")]),
        (fig3, [("29", "2"), ("99", "1"), ("68", "")]),
    ]:
        eng = MorseEngine(poset)
        for w_txt, u_txt in pairs:
            u, w = parse_word(poset, u_txt), parse_word(poset, w_txt)
            ctx = eng.all_chains(u, w)
            for chain in ctx.chains:
                assert eng.msis(chain, ctx) == eng.msis_direct(chain)
                brute = eng.decomposition(chain, ctx)
                fast = eng.decomposition_direct(chain)
                assert brute.is_critical == fast.is_critical
                assert brute.j_intervals == fast.j_intervals


def test_j_construction():
    # overlapping MSIs are clipped, non-minimal remnants dropped
    js, crit = j_construction([(1, 2), (2, 4)], 1, 4)
    assert js == ((1, 2), (3, 4)) and crit
    js, crit = j_construction([(1, 1), (2, 3)], 1, 4)
    assert js == ((1, 1), (2, 3)) and not crit
    js, crit = j_construction([], 1, 0)
    assert js == () and crit  # empty open chain


def test_critical_chains_fig3(fig3):
    eng = MorseEngine(fig3)
    u, w = parse_word(fig3, "2"), parse_word(fig3, "29")
    decs = eng.critical_chains(u, w)
    assert len(decs) == 4
    dims = sorted(d.critical_dimension for d in decs)
    assert dims == [0, 0, 1, 1]
    d0 = {
        tuple(d.chain.words) for d in decs if d.critical_dimension == 0
    }
    assert d0 == {
        tuple(words(fig3, "29", "25", "21", "2")),
        tuple(words(fig3, "29", "28", "23", "2")),
    }
    assert sum(d.sign() for d in decs) == 0


def test_critical_chain_labels_strictly_decrease(lam, fig3):
    for poset, pairs in [
        (lam, [("333", "11"), ("333", "")]),
        (fig3, [("29", "2"), ("99", "")]),
    ]:
        eng = MorseEngine(poset)
        for w_txt, u_txt in pairs:
            u, w = parse_word(poset, u_txt), parse_word(poset, w_txt)
            for dec in eng.critical_chains(u, w):
                keys = [eng.label_key(l) for l in dec.chain.labels]
                assert keys == sorted(keys, reverse=True)
                assert len(set(keys)) == len(keys)


def test_mobius_morse_values(lam, fig3):
    eng = MorseEngine(lam)
    assert eng.mobius_morse(parse_word(lam, "11"), parse_word(lam, "333")) == 5
    assert eng.mobius_morse((), parse_word(lam, "33333")) == 16
    u = parse_word(lam, "21")
    assert eng.mobius_morse(u, u) == 1
    assert eng.mobius_morse(parse_word(lam, "1"), parse_word(lam, "3")) == -1
    eng3 = MorseEngine(fig3)
    assert eng3.mobius_morse(parse_word(fig3, "2"), parse_word(fig3, "29")) == 0


def test_mobius_morse_below_matches_pointwise(fig3):
    eng = MorseEngine(fig3)
    w = parse_word(fig3, "29")
    table = eng.mobius_morse_below(w)
    for u, value in table.items():
        assert eng.mobius_morse(u, w) == value
        assert mobius_main(fig3, u, w).value == value


def test_per_embedding_mu(lam, fig3):
    eng3 = MorseEngine(fig3)
    two = fig3.id_of("2")
    assert eng3.per_embedding_mu((two, ZERO), parse_word(fig3, "29")) == 1
    w = parse_word(fig3, "29")
    assert eng3.per_embedding_mu(w, w) == 1
    eng = MorseEngine(lam)
    one = lam.id_of("1")
    assert eng.per_embedding_mu((one, one, ZERO), parse_word(lam, "333")) == 2


def test_per_embedding_mu_matches_contribution(lam, fig3):
    for poset, pairs in [
        (lam, [("333", "11"), ("332", "2"), ("333", "")]),
        (fig3, [("29", "2"), ("99", "5")]),
    ]:
        eng = MorseEngine(poset)
        p0 = AugmentedPoset(poset)
        for w_txt, u_txt in pairs:
            u, w = parse_word(poset, u_txt), parse_word(poset, w_txt)
            total = 0
            for eta in embeddings(poset, u, w):
                value = eng.per_embedding_mu(eta, w)
                assert value == contribution(p0, eta, w)
                total += value
            assert total == eng.mobius_morse(u, w)


def test_classify_single_position_msi(lam, fig3):
    # prediction agrees with brute force on every single-position chain
    for poset, pairs in [
        (lam, [("33", "3"), ("333", "33")]),
        (fig3, [("29", "2"), ("89", "8")]),
    ]:
        eng = MorseEngine(poset)
        for w_txt, u_txt in pairs:
            u, w = parse_word(poset, u_txt), parse_word(poset, w_txt)
            ctx = eng.all_chains(u, w)
            for chain in ctx.chains:
                diff = [
                    j
                    for j in range(len(w))
                    if chain.embeddings[0][j] != chain.final_embedding[j]
                ]
                if len(diff) != 1:
                    continue
                lo, hi = chain.open_range()
                whole = (lo, hi)
                brute = eng.msis(chain, ctx) == [whole] if hi >= lo else False
                assert eng.classify_single_position_msi(chain) == brute


def test_morse_agreement_small_sweep():
    for name in ("lambda", "chain:3", "antichain:3"):
        poset = builtin_poset(name)
        eng = MorseEngine(poset)
        for length in range(3):
            for w in itertools.product(range(poset.n), repeat=length):
                oracle = build_interval(poset, (), w).mobius_to_top()
                morse = eng.mobius_morse_below(w)
                assert morse == oracle


def test_labeling_independence():
    # the Morse sum is the same under every natural labeling
    for seed in (3, 7, 11):
        poset = random_poset(seed, max_elements=4)
        values = set()
        for order in all_linear_extensions(poset):
            eng = MorseEngine(poset, NaturalLabeling(poset, order))
            w = tuple(range(poset.n))[:3]
            table = eng.mobius_morse_below(w)
            values.add(tuple(sorted(table.items())))
        assert len(values) == 1


def test_critical_chains_requires_comparable(lam):
    eng = MorseEngine(lam)
    with pytest.raises(DomainError):
        eng.critical_chains(parse_word(lam, "2"), parse_word(lam, "11"))
    assert eng.critical_chains(parse_word(lam, "3"), parse_word(lam, "3")) == []
