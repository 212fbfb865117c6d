import itertools
from collections import Counter

import pytest

from orthomorph.graph import are_orthogonal, build_graph, component_report, homology
from orthomorph.groups import GroupError, automorphisms, compose, identity_map, parse_group_spec
from orthomorph.latin import latin_orthogonal, to_latin_square
from orthomorph.orthomorphisms import cycles, enumerate_orthomorphisms, order_partition
from orthomorph.z2z4 import (
    CycleForm,
    Form,
    alpha_of,
    anchor,
    classify_form,
    construct_form,
    four_cycle_decomposition,
    four_cycle_of,
    intersection_adjacency,
    intersection_size,
    predicted_partners,
    require_z2xz4,
    table_row,
)

from conftest import ortho


def cf(G, form, a, x, tx):
    return CycleForm(form, G.index(a), G.index(x), G.index(tx))


# construct_form / classify_form

def test_construct_form_i_gives_theta_star(G, theta_star):
    assert construct_form(G, cf(G, Form.I, "(0,1)", "(1,0)", "(1,2)")) == theta_star


def test_construct_form_ii(G):
    t = construct_form(G, cf(G, Form.II, "(0,1)", "(0,2)", "(1,0)"))
    # a=(0,1) ax=(0,3) ax.tx=(1,3) x.tx=(1,2); tx=(1,0) a.tx=(1,1) x=(0,2)
    assert t == ortho(G, "((0,1) (0,3) (1,3) (1,2))((1,0) (1,1) (0,2))")


@pytest.mark.parametrize("form, a, x, tx, message", [
    (Form.I, "(0,1)", "(0,2)", "(1,0)", "= a^2"),
    (Form.IV, "(0,1)", "(0,2)", "(1,2)", "= a^2"),
    (Form.II, "(0,1)", "(1,0)", "(1,2)", "!= a^2"),
    (Form.I, "(1,0)", "(0,2)", "(1,2)", "order 4"),
    (Form.II, "(0,1)", "(0,2)", "(0,2)", "must differ"),
    (Form.III, "(0,1)", "(0,3)", "(1,0)", "order 2"),
])
def test_construct_form_rejects(G, form, a, x, tx, message):
    with pytest.raises(ValueError, match=message.replace("^", r"\^")):
        construct_form(G, cf(G, form, a, x, tx))


def test_classify_theta_star(G, theta_star):
    c = classify_form(theta_star)
    assert c == cf(G, Form.I, "(0,1)", "(1,0)", "(1,2)")
    assert anchor(theta_star) == (G.index("(0,1)"), G.index("(1,0)"))


def test_classification_counts_and_round_trip(G, orthos):
    counts = Counter()
    for t in orthos:
        c = classify_form(t)
        assert construct_form(G, c) == t
        counts[c.form] += 1
    assert [counts[f] for f in Form] == [8, 16, 16, 8]


def test_forms_i_and_iv_share_cycle_type(orthos):
    types = {}
    for t in orthos:
        shape = tuple(sorted(len(c) for c in cycles(t.images)))
        types.setdefault(classify_form(t).form, set()).add(shape)
    assert types[Form.I] == types[Form.IV] == {(7,)}
    assert types[Form.II] == {(3, 4)}
    assert types[Form.III] == {(2, 5)}


def test_non_z2xz4_rejected(klein):
    with pytest.raises(GroupError):
        require_z2xz4(klein)
    for spec in ("cyclic:8", "product:cyclic:2,cyclic:2,cyclic:2"):
        with pytest.raises(GroupError):
            require_z2xz4(parse_group_spec(spec))


# intersection adjacency

def test_intersection_examples(G, theta_star, psi1):
    assert order_partition(psi1).a44 == {G.index("(1,3)"), G.index("(0,3)")}
    assert intersection_size(theta_star, psi1) == 0
    assert intersection_adjacency(theta_star, psi1)
    with pytest.raises(ValueError):
        intersection_adjacency(theta_star, theta_star)


@pytest.mark.parametrize("size, pairs", [(2, 168), (1, 768)])
def test_positive_intersection_never_adjacent(orthos, size, pairs):
    seen = 0
    for t1, t2 in itertools.combinations(orthos, 2):
        if intersection_size(t1, t2) == size:
            seen += 1
            assert not are_orthogonal(t1, t2)
            assert not intersection_adjacency(t1, t2)
    assert seen == pairs


def test_adjacent_pairs_have_disjoint_a44(orthos, graph):
    for i, j in graph.edges():
        assert intersection_size(orthos[i], orthos[j]) == 0


# partner table

def test_partners_of_theta_star(theta_star, psi1, psi2):
    assert predicted_partners(theta_star) == (psi1, psi2)


def test_partners_are_the_neighbours(orthos, graph):
    rows = Counter()
    for i, t in enumerate(orthos):
        rows[table_row(classify_form(t), t.group)] += 1
        partners = predicted_partners(t)
        assert {graph.index(p) for p in partners} == set(graph.neighbors(i))
        p1, p2 = partners
        assert order_partition(p1).a44 == order_partition(p2).a44 == order_partition(t).a42
        assert not are_orthogonal(p1, p2)
        for p in partners:
            assert t in predicted_partners(p)
    assert rows == {1: 8, 2: 8, 3: 8, 4: 8, 5: 8, 6: 8}


# alpha and the 4-cycles

def test_alpha_of_theta_star(G, theta_star):
    alpha = alpha_of(theta_star)
    swapped = {(G.labels[i], G.labels[v]) for i, v in enumerate(alpha) if i != v}
    assert swapped == {("(0,1)", "(1,1)"), ("(1,1)", "(0,1)"), ("(0,3)", "(1,3)"), ("(1,3)", "(0,3)")}
    assert compose(alpha, alpha) == identity_map(G)


def test_alpha_is_automorphism_and_conjugates_partners(G, orthos):
    auts = set(automorphisms(G))
    for t in orthos:
        alpha = alpha_of(t)
        assert alpha in auts
        psi1, psi2 = predicted_partners(t)
        assert homology(alpha, psi1) == psi2
        assert homology(alpha, psi2) == psi1


def test_four_cycle_of_theta_star(G, theta_star, psi1, psi2, graph):
    quad = four_cycle_of(theta_star)
    assert quad[0] == theta_star and quad[1] == psi1 and quad[3] == psi2
    assert len(set(quad)) == 4
    comp = next(c for c in component_report(graph).components if graph.index(theta_star) in c)
    assert sorted(graph.index(t) for t in quad) == list(comp)


def test_four_cycle_decomposition(orthos, graph):
    quads = four_cycle_decomposition(orthos)
    assert len(quads) == 12
    covered = [t for q in quads for t in q]
    assert len(set(covered)) == 48
    expected = sorted(component_report(graph).components)
    assert sorted(tuple(sorted(graph.index(t) for t in q)) for q in quads) == expected


def test_structure_on_isomorphic_copy():
    # Z4 x Z2 indexes elements differently; the structure must not depend on that.
    g = parse_group_spec("product:cyclic:4,cyclic:2")
    orthos = enumerate_orthomorphisms(g)
    assert len(orthos) == 48
    assert Counter(classify_form(t).form for t in orthos) == {Form.I: 8, Form.II: 16, Form.III: 16, Form.IV: 8}
    graph = build_graph(orthos)
    for i, t in enumerate(orthos):
        assert {graph.index(p) for p in predicted_partners(t)} == set(graph.neighbors(i))
    assert len(four_cycle_decomposition(orthos)) == 12


def test_disjoint_a44_is_necessary_not_sufficient(G, orthos):
    # Six possible A44 sets (2-subsets {a, ax} of the order-4 elements), eight
    # orthomorphisms each, so every theta has 8 vertices with disjoint A44 but
    # only its 2 neighbours among them. The Latin oracle decides adjacency here.
    classes = Counter(order_partition(t).a44 for t in orthos)
    assert len(classes) == 6 and set(classes.values()) == {8}
    squares = {t: to_latin_square(G, t) for t in orthos}
    for t in orthos:
        disjoint = [s for s in orthos if s != t and intersection_size(t, s) == 0]
        assert len(disjoint) == 8
        assert sum(latin_orthogonal(squares[t], squares[s]) for s in disjoint) == 2
