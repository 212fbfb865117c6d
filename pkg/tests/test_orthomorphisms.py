import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthomorph.groups import EnumerationBoundError, GroupError, build_cyclic, parse_group_spec
from orthomorph.orthomorphisms import (
    Orthomorphism,
    check_lemma1,
    complete_mapping,
    enumerate_orthomorphisms,
    format_cycles,
    from_cycles,
    is_orthomorphism,
    order_partition,
    orthomorphism_defect,
    parse_cycles,
)

from conftest import THETA_STAR, add, neg, pair


def brute_force_orthomorphisms(g):
    """Filter every permutation fixing 0 by the definition, using sets only."""
    out = []
    for rest in itertools.permutations(range(1, g.order)):
        m = (0,) + rest
        if len({g.mul[g.inv[i]][m[i]] for i in range(g.order)}) == g.order:
            out.append(m)
    return out


def labels(G, idxs):
    return {G.labels[i] for i in idxs}


# complete_mapping

def test_complete_mapping_of_identity_is_constant(G):
    assert complete_mapping(G, tuple(range(8))) == (0,) * 8


def test_complete_mapping_z3_swap():
    assert complete_mapping(build_cyclic(3), (0, 2, 1)) == (0, 1, 2)


def test_complete_mapping_theta_star(G, theta_star):
    # x^-1 theta(x) computed on coordinate pairs, independently of the tables.
    expected = [add(neg(pair(G.labels[i])), pair(G.labels[theta_star(i)])) for i in range(8)]
    assert expected == [(0, 0), (1, 0), (1, 1), (0, 3), (0, 2), (1, 2), (1, 3), (0, 1)]
    phi = complete_mapping(G, theta_star.images)
    assert [pair(G.labels[v]) for v in phi] == expected
    assert sorted(phi) == list(range(8))


# is_orthomorphism

def test_identity_is_not_orthomorphism(G):
    assert not is_orthomorphism(G, tuple(range(8)))


def test_theta_star_is_orthomorphism(G, theta_star):
    assert is_orthomorphism(G, theta_star.images)


def test_z4_has_no_complete_mapping():
    g = build_cyclic(4)
    perms = [(0,) + p for p in itertools.permutations(range(1, 4))]
    assert len(perms) == 6
    assert not any(is_orthomorphism(g, p) for p in perms)


@pytest.mark.parametrize("bad, reason", [
    ((0, 1, 2), "expected 8 images"),
    ((0, 1, 2, 3, 4, 5, 6, 9), "element indices"),
    ((0, 1, 1, 3, 4, 5, 6, 7), "not a bijection"),
    ((1, 0, 2, 3, 4, 5, 6, 7), "does not fix the identity"),
    ((0, 1, 2, 3, 4, 5, 6, 7), "complete mapping"),
])
def test_malformed_maps_give_diagnostics(G, bad, reason):
    assert not is_orthomorphism(G, bad)
    assert reason in orthomorphism_defect(G, bad)


def test_orthomorphism_constructor_validates(G):
    with pytest.raises(ValueError):
        Orthomorphism(G, tuple(range(8)))


# enumeration

@pytest.mark.parametrize("spec, count", [
    ("cyclic:1", 1), ("cyclic:3", 1), ("cyclic:4", 0), ("klein", 2), ("cyclic:5", 3),
    ("cyclic:6", 0), ("z2xz4", 48), ("cyclic:7", 19),
])
def test_enumeration_matches_brute_force(spec, count):
    g = parse_group_spec(spec)
    found = [t.images for t in enumerate_orthomorphisms(g)]
    assert found == brute_force_orthomorphisms(g)
    assert len(found) == count


def test_enumeration_sorted_and_unique(orthos):
    images = [t.images for t in orthos]
    assert images == sorted(set(images))


@pytest.mark.parametrize("jobs", [2, 4, 7])
def test_parallel_enumeration_is_identical(G, orthos, jobs):
    assert enumerate_orthomorphisms(G, jobs=jobs) == orthos


def test_enumeration_bound():
    with pytest.raises(EnumerationBoundError):
        enumerate_orthomorphisms(build_cyclic(13))
    assert len(enumerate_orthomorphisms(build_cyclic(3), max_order=3)) == 1


# order partition

def test_partition_theta_star(G, theta_star):
    p = order_partition(theta_star)
    assert labels(G, p.a44) == {"(0,1)", "(1,1)"}
    assert labels(G, p.a42) == {"(0,3)", "(1,3)"}
    assert labels(G, p.a24) == {"(0,2)", "(1,2)"}
    assert labels(G, p.a22) == {"(1,0)"}
    # a = (0,1), x = (1,0): A44 = {a, ax}
    assert labels(G, p.a44) == {"(0,1)", "(1,1)"}


def test_partition_sizes_and_cover(orthos):
    for t in orthos:
        p = order_partition(t)
        assert p.sizes() == (2, 2, 2, 1)
        cells = [p.a44, p.a42, p.a24, p.a22]
        assert sum(map(len, cells)) == 7
        assert frozenset().union(*cells) == frozenset(range(1, 8))


def test_partition_rejects_other_exponents():
    g = build_cyclic(3)
    t = enumerate_orthomorphisms(g)[0]
    with pytest.raises(GroupError):
        order_partition(t)
    with pytest.raises(GroupError):
        check_lemma1(g, t.images)


def test_corollary2_identities(G, orthos):
    for t in orthos:
        p = order_partition(t)
        img = lambda s: {t(v) for v in s}  # noqa: E731
        for s in (p.a44 & img(p.a44), p.a44 & img(p.a24), p.a42 & img(p.a44), p.a42 & img(p.a24)):
            assert len(s) == 1
        (x,) = p.a22
        xt = G.op(x, t(x))
        assert img(p.a42) == {x, xt}
        assert p.a24 == {t(x), xt}
        assert {t.phi[v] for v in p.a44} == {x, t(x)}


def test_proposition1_and_remark1(G, orthos):
    for t in orthos:
        p = order_partition(t)
        (x,) = p.a22
        tx = t(x)
        outside = p.a44 - {t(v) for v in p.a44}
        assert len(outside) == 1
        (a,) = outside
        ax = G.op(a, x)
        assert t(a) == ax
        assert p.a44 == {a, ax}
        assert {t(v) for v in p.a44} == {ax, G.op(ax, tx)}
        assert p.a42 == {G.op(ax, tx), G.op(a, tx)}
        assert G.elements_of_order(2) == {x, tx, G.op(x, tx)}
        assert G.elements_of_order(4) == {a, ax, G.op(a, tx), G.op(ax, tx)}


# Lemma 1 criteria

def test_lemma1_examples(G, theta_star):
    assert check_lemma1(G, theta_star.images) == (True, True)
    assert check_lemma1(G, tuple(range(8))) == (True, False)


def test_lemma1_exhaustive(G):
    hits = 0
    for rest in itertools.permutations(range(1, 8)):
        m = (0,) + rest
        bij, orth = check_lemma1(G, m)
        assert bij
        assert orth == is_orthomorphism(G, m)
        hits += orth
    assert hits == 48


@settings(max_examples=400, deadline=None)
@given(st.lists(st.integers(0, 7), min_size=8, max_size=8))
def test_lemma1_on_arbitrary_maps(G, images):
    m = tuple(images)
    bij, orth = check_lemma1(G, m)
    assert bij == (len(set(m)) == 8 and m[0] == 0)
    assert orth == is_orthomorphism(G, m)


# cycle notation

def test_cycle_notation_theta_star(theta_star):
    assert theta_star.cycle_notation() == THETA_STAR
    assert str(theta_star) == THETA_STAR


def test_cycle_printer_normalises(G):
    perm = from_cycles(G, parse_cycles(G, "((1,3) (0,3) (0,1) (1,2))((1,0) (0,2) (1,1))"))
    assert format_cycles(G, perm) == "((0,1) (1,2) (1,3) (0,3))((0,2) (1,1) (1,0))"
    assert format_cycles(G, tuple(range(8))) == "()"


def test_cycle_round_trip(G, orthos):
    for t in orthos:
        assert from_cycles(G, parse_cycles(G, t.cycle_notation())) == t.images


def test_cyclic_labels():
    g = build_cyclic(5)
    assert format_cycles(g, (0, 2, 4, 1, 3)) == "(1 2 4 3)"
    assert from_cycles(g, parse_cycles(g, "(1 2 4 3)")) == (0, 2, 4, 1, 3)


def test_from_cycles_rejects_overlap(G):
    with pytest.raises(ValueError):
        from_cycles(G, [(1, 2), (2, 3)])


def test_parse_cycles_errors(G):
    with pytest.raises(ValueError):
        parse_cycles(G, "((0,1) (1,1)")
    with pytest.raises(KeyError):
        parse_cycles(G, "((0,1) (2,1))")
