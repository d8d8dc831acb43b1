import itertools
import random

import pytest

from ordbench import (
    BOT,
    N2,
    NSUM,
    OMEGA,
    T,
    TOP,
    LazyPoset,
    MonotoneMap,
    PosetError,
    canonical_quasi_section,
    check_quasi_retraction,
    family_witness,
    format_code,
    hat_f,
    hat_f_rigidity_check,
    n2_family,
    node,
    omega_side,
    parse_code,
    parse_poset,
    t_family,
    truncate,
)

from oracles import monotone_maps


# -- codes ------------------------------------------------------------------


def test_code_syntax_round_trip():
    for code in (BOT, TOP, OMEGA, node(0, 3), node(1, 17), omega_side(1)):
        assert parse_code(format_code(code)) == code
    assert format_code(node(0, 3)) == "n:0:3"
    assert format_code(omega_side(0)) == "omega0"


def test_malformed_codes_rejected():
    for bad in ("n:2:1", "n:0", "omegax", "", "n:0:-1"):
        with pytest.raises(PosetError):
            parse_code(bad)
    with pytest.raises(PosetError):
        N2.validate(("top",))
    with pytest.raises(PosetError):
        N2.validate(("n", 0, -1))


def test_unknown_kind_rejected():
    with pytest.raises(PosetError, match="kind"):
        LazyPoset("plotkin")


# -- order rules ---------------------------------------------------------------


def test_two_ladders_under_omega():
    assert N2.leq(node(0, 3), OMEGA)
    assert N2.leq(node(0, 1), node(0, 4))
    assert not N2.leq(node(0, 4), node(0, 1))
    assert not N2.leq(node(0, 2), node(1, 2))
    assert not N2.leq(OMEGA, node(0, 3))
    assert N2.leq(BOT, OMEGA)


def test_level_rule_crosses_branches():
    assert T.leq(node(0, 2), node(1, 3))
    assert not T.leq(node(0, 2), node(1, 2))
    assert T.leq(node(0, 2), node(0, 2))
    assert T.leq(node(1, 0), TOP)
    assert not T.leq(TOP, node(1, 0))
    assert T.leq(BOT, node(0, 0))


def test_disjoint_chains_have_no_cross_relations():
    assert NSUM.leq(node(0, 2), omega_side(0))
    assert not NSUM.leq(node(0, 2), omega_side(1))
    assert not NSUM.leq(node(0, 2), node(1, 5))
    assert not NSUM.leq(omega_side(0), omega_side(1))
    assert NSUM.leq(BOT, omega_side(1))


def sample_codes(L, max_level):
    out = [BOT]
    for j in (0, 1):
        out.extend(node(j, m) for m in range(max_level))
    if L.kind == "n2":
        out.append(OMEGA)
    elif L.kind == "t":
        out.append(TOP)
    else:
        out.extend([omega_side(0), omega_side(1)])
    return out


@pytest.mark.parametrize("kind", ["n2", "t", "nsum"])
def test_order_axioms_on_sampled_codes(kind):
    L = LazyPoset(kind)
    codes = sample_codes(L, 6)
    for x in codes:
        assert L.leq(x, x)
        for y in codes:
            if L.leq(x, y) and L.leq(y, x):
                assert x == y
            for z in codes:
                if L.leq(x, y) and L.leq(y, z):
                    assert L.leq(x, z)


# -- quasi-deflation families --------------------------------------------------


def test_ladder_family_values():
    phi = n2_family(2, 3)
    assert phi(OMEGA) == (node(0, 2), node(1, 3))
    assert phi(node(0, 5)) == (node(0, 2), node(1, 3))
    assert phi(node(0, 1)) == (node(0, 1), node(1, 3))
    assert phi(BOT) == (BOT,)


def test_level_family_values():
    phi = t_family(2)
    assert phi(node(0, 1)) == (node(0, 1),)
    assert phi(node(0, 5)) == (node(0, 2), node(1, 2))
    assert phi(TOP) == (node(0, 2), node(1, 2))
    assert phi(BOT) == (BOT,)


@pytest.mark.parametrize(
    "family,L,indices",
    [
        (
            n2_family,
            N2,
            [(i, j) for i in (0, 1, 2, 5, 20) for j in (0, 1, 3, 20)],
        ),
        (t_family, T, [(i,) for i in (0, 1, 2, 7, 20)]),
    ],
)
def test_families_obey_quasi_deflation_laws(family, L, indices):
    codes = sample_codes(L, 41)
    for idx in indices:
        phi = family(*idx)
        for x in codes:
            assert L.in_up(phi(x), x)
            for y in codes:
                if L.leq(x, y):
                    assert L.smyth_leq(phi(x), phi(y))


def test_families_grow_with_their_indices():
    codes = sample_codes(N2, 15)
    for (i1, j1), (i2, j2) in [((1, 1), (3, 2)), ((0, 4), (2, 4)), ((2, 2), (2, 2))]:
        lo, hi = n2_family(i1, j1), n2_family(i2, j2)
        for x in codes:
            assert N2.smyth_leq(lo(x), hi(x))
    tcodes = sample_codes(T, 15)
    for i1, i2 in [(0, 1), (1, 4), (3, 3)]:
        lo, hi = t_family(i1), t_family(i2)
        for x in tcodes:
            assert T.smyth_leq(lo(x), hi(x))


# -- witnesses -------------------------------------------------------------------


def test_witness_excludes_a_point_below_omega():
    idx = family_witness(N2, OMEGA, node(0, 7))
    assert idx == (8, 8)
    phi = n2_family(*idx)
    assert not N2.in_up(phi(OMEGA), node(0, 7))


def test_witness_separates_level_twins():
    idx = family_witness(T, node(0, 3), node(1, 3))
    assert idx == 4
    assert t_family(idx)(node(0, 3)) == (node(0, 3),)
    assert not T.in_up(t_family(idx)(node(0, 3)), node(1, 3))


def test_witness_excludes_bottom():
    idx = family_witness(N2, node(0, 2), BOT)
    assert idx == (3, 3)
    assert not N2.in_up(n2_family(*idx)(node(0, 2)), BOT)


def test_witness_rejects_comparable_pairs():
    with pytest.raises(PosetError, match="witness"):
        family_witness(N2, node(0, 1), OMEGA)


def test_witness_not_defined_for_the_chain_sum():
    with pytest.raises(PosetError):
        family_witness(NSUM, node(0, 1), node(1, 1))


def test_witness_valid_across_sampled_pairs():
    for L, fam in ((N2, n2_family), (T, t_family)):
        codes = sample_codes(L, 12)
        for x, y in itertools.product(codes, repeat=2):
            if L.leq(x, y):
                continue
            idx = family_witness(L, x, y)
            phi = fam(*idx) if isinstance(idx, tuple) else fam(idx)
            assert L.in_up(phi(x), x)
            assert not L.in_up(phi(x), y)


def test_opposite_ladder_never_reaches_across():
    for m in range(41):
        for n in range(41):
            assert not N2.leq(node(0, m), node(1, n))


# -- truncations --------------------------------------------------------------------


def test_ladder_truncation_carrier():
    t1 = truncate(N2, 1)
    assert len(t1.poset.elements) == 6
    assert set(t1.poset.elements) == {"bot", "n:0:0", "n:0:1", "n:1:0", "n:1:1", "omega"}
    assert t1.poset.leq("n:0:0", "omega")
    assert not t1.poset.leq("n:0:1", "n:1:1")


def test_level_truncation_at_depth_one_is_a_diamond():
    t1 = truncate(T, 1)
    diamond = parse_poset(
        "elements: bot a b top\norder: bot < a; bot < b; a < top; b < top"
    )
    assert len(t1.poset.elements) == 4
    relabel = dict(zip(t1.poset.elements, diamond.elements))
    for x in t1.poset.elements:
        for y in t1.poset.elements:
            assert t1.poset.leq(x, y) == diamond.leq(relabel[x], relabel[y])
    assert t1.project is None


def test_chain_sum_truncation_carrier():
    t1 = truncate(NSUM, 1)
    assert len(t1.poset.elements) == 7
    assert t1.poset.leq("n:1:0", "omega1")
    assert not t1.poset.leq("n:1:0", "omega0")


def test_truncation_depth_must_be_positive():
    with pytest.raises(PosetError):
        truncate(N2, 0)


@pytest.mark.parametrize("kind", ["n2", "nsum"])
def test_projection_laws_up_to_depth_ten(kind):
    L = LazyPoset(kind)
    for k in range(1, 11):
        tr = truncate(L, k)
        for name in tr.poset.elements:
            assert tr.project(tr.embed(name)) == name
        for code in sample_codes(L, k + 6):
            back = tr.embed(tr.project(code))
            assert L.leq(back, code)


def test_embed_rejects_names_outside_the_carrier():
    tr = truncate(N2, 1)
    with pytest.raises(PosetError):
        tr.embed("n:0:2")


def test_chain_sum_retracts_onto_the_ladder():
    """Collapsing the two chain tops to the limit point admits a two-sided section."""
    src = truncate(NSUM, 2).poset
    dst = truncate(N2, 2).poset
    table = {x: ("omega" if x.startswith("omega") else x) for x in src.elements}
    r = MonotoneMap(src, dst, table)
    qs = canonical_quasi_section(r)
    assert set(qs("omega")) == {"omega0", "omega1"}
    rep = check_quasi_retraction(r, qs)
    assert rep.ok and rep.canonical


# -- branch swaps and rigidity ----------------------------------------------------------


def test_all_zero_bits_is_the_identity():
    f = hat_f([0, 0])
    assert all(f(x) == x for x in f.source.elements)


def test_single_swap_on_depth_one():
    f = hat_f([1])
    assert f("n:0:0") == "n:1:0"
    assert f("n:1:0") == "n:0:0"
    assert f("bot") == "bot" and f("top") == "top"


@pytest.mark.parametrize("bits", [[0], [1], [0, 1], [1, 1], [1, 0, 1]])
def test_swaps_are_involutions(bits):
    f = hat_f(bits)
    assert f.compose(f) == MonotoneMap(f.source, f.source, lambda x: x)


def test_bits_must_be_binary():
    with pytest.raises(PosetError):
        hat_f([2])
    with pytest.raises(PosetError):
        hat_f([])


def test_rigidity_trivial_cases():
    bits = [1, 0]
    f = hat_f(bits)
    assert hat_f_rigidity_check(f, bits)
    const = MonotoneMap(f.source, f.source, {x: "bot" for x in f.source.elements})
    assert hat_f_rigidity_check(const, bits)


def test_rigidity_holds_for_every_monotone_endomap_at_depth_two():
    for bits in ([0, 0], [0, 1], [1, 0], [1, 1]):
        f = hat_f(bits)
        Tk = f.source
        for table in monotone_maps(Tk, Tk):
            g = MonotoneMap(Tk, Tk, dict(zip(Tk.elements, table)))
            assert hat_f_rigidity_check(g, bits)
            below = all(Tk.leq(g(x), f(x)) for x in Tk.elements)
            keeps = g("n:0:0") != "bot" and g("n:1:0") != "bot"
            if below and keeps:
                assert g == f
