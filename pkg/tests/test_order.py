import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from argabs.abstraction import build_partition, galois_pair
from argabs.errors import BoundExceededError, CarrierMismatchError, MembershipError, OrderLawError
from argabs.order import (
    EquivalenceRelation,
    FinitePoset,
    FiniteRelation,
    GaloisPair,
    approximation_quality,
    bounds,
    check_complete_lattice,
    check_galois,
    check_order_properties,
    kernel_equivalence,
    lift_preorder,
    quotient_set,
)


def fs(*xs):
    return frozenset(xs)


def diamond():
    # a, b below both c and d; c and d incomparable
    carrier = ["a", "b", "c", "d"]
    pairs = {(x, x) for x in carrier} | {("a", "c"), ("b", "c"), ("a", "d"), ("b", "d")}
    return FinitePoset(FiniteRelation(carrier, pairs))


def closure(carrier, pairs):
    """Reflexive-transitive closure by Warshall's algorithm."""
    rel = {(x, x) for x in carrier} | set(pairs)
    for k in carrier:
        for i in carrier:
            for j in carrier:
                if (i, k) in rel and (k, j) in rel:
                    rel.add((i, j))
    return FiniteRelation(carrier, rel)


@st.composite
def preorders(draw, max_size=7):
    n = draw(st.integers(1, max_size))
    carrier = [f"e{i}" for i in range(n)]
    pairs = draw(st.lists(st.tuples(st.sampled_from(carrier), st.sampled_from(carrier)), max_size=2 * n))
    return closure(carrier, pairs)


# ---------------------------------------------------------------- order laws

def test_powerset_inclusion_is_partial_order():
    p = FinitePoset.powerset([1, 2])
    assert len(p) == 4
    rep = check_order_properties(p.relation)
    assert rep.reflexive and rep.antisymmetric and rep.transitive and not rep.symmetric
    assert rep.witnesses["symmetric"] == (fs(), fs(1))


def test_mutual_pair_not_antisymmetric():
    rel = FiniteRelation(["a", "b"], {("a", "b"), ("b", "a"), ("a", "a"), ("b", "b")})
    rep = check_order_properties(rel)
    assert rep.reflexive and rep.transitive and rep.symmetric and not rep.antisymmetric
    assert rep.witnesses == {"antisymmetric": ("a", "b")}


def test_empty_relation_not_reflexive():
    rep = check_order_properties(FiniteRelation(["a", "b"], ()))
    assert not rep.reflexive and rep.witnesses["reflexive"] == ("a",)


def test_transitivity_witness():
    rel = FiniteRelation(["x", "y", "z"], {("x", "y"), ("y", "z")})
    rep = check_order_properties(rel)
    assert not rep.transitive and rep.witnesses["transitive"] == ("x", "y", "z")


def test_relation_endpoint_membership():
    with pytest.raises(MembershipError):
        FiniteRelation(["a"], {("a", "b")})


def test_poset_rejects_non_order():
    with pytest.raises(OrderLawError) as err:
        FinitePoset(FiniteRelation(["a", "b"], {("a", "b"), ("b", "a"), ("a", "a"), ("b", "b")}))
    assert err.value.witness == ("a", "b")


@settings(max_examples=150)
@given(st.integers(1, 6), st.data())
def test_law_flags_match_definitions(n, data):
    carrier = list(range(n))
    pairs = data.draw(st.sets(st.tuples(st.sampled_from(carrier), st.sampled_from(carrier))))
    rep = check_order_properties(FiniteRelation(carrier, pairs))
    assert rep.reflexive == all((x, x) in pairs for x in carrier)
    assert rep.symmetric == all((y, x) in pairs for x, y in pairs)
    assert rep.antisymmetric == all(x == y for x, y in pairs if (y, x) in pairs)
    assert rep.transitive == all((x, z) in pairs for x, y in pairs for y2, z in pairs if y == y2)


# ---------------------------------------------------------------- bounds and lattices

def test_bounds_in_powerset():
    p = FinitePoset.powerset([1, 2, 3])
    b = bounds(p, [fs(1), fs(2)])
    assert b.lub == fs(1, 2) and b.glb == fs()


def test_bounds_absent_in_diamond():
    b = bounds(diamond(), ["a", "b"])
    assert b.lub is None and b.glb is None


def test_singleton_bounds():
    d = diamond()
    for x in d.carrier:
        assert bounds(d, [x]).lub == x == bounds(d, [x]).glb


def test_bounds_of_empty_subset_are_extremes():
    p = FinitePoset.powerset([1, 2])
    b = bounds(p, [])
    assert b.lub == fs() and b.glb == fs(1, 2)


def test_bounds_membership():
    with pytest.raises(MembershipError):
        bounds(diamond(), ["zz"])


def test_powerset_complete_lattice():
    rep = check_complete_lattice(FinitePoset.powerset([1, 2, 3]))
    assert rep.is_lattice and rep.is_complete
    assert rep.top == fs(1, 2, 3) and rep.bottom == fs()
    assert rep.is_cpo


def test_diamond_not_lattice():
    rep = check_complete_lattice(diamond())
    assert not rep.is_lattice and not rep.is_complete
    assert rep.witness == ("a", "b")
    assert not rep.has_top and not rep.has_bottom


def test_one_element_lattice():
    rep = check_complete_lattice(FinitePoset.from_predicate(["x"], lambda a, b: True))
    assert rep.is_lattice and rep.is_complete and rep.top == rep.bottom == "x"


def test_exhaustive_agrees_with_pairwise():
    for poset in (FinitePoset.powerset([1, 2, 3]), diamond(),
                  FinitePoset.from_predicate(range(5), lambda a, b: a <= b),
                  FinitePoset.from_predicate(range(4), lambda a, b: a == b)):
        fast = check_complete_lattice(poset)
        slow = check_complete_lattice(poset, exhaustive=True)
        assert fast.is_complete == slow.is_complete


def test_exhaustive_bound():
    with pytest.raises(BoundExceededError):
        check_complete_lattice(FinitePoset.powerset(range(5)), exhaustive=True, exhaustive_bound=20)


def test_divisibility_lattice():
    carrier = [1, 2, 3, 6, 4, 12]
    rep = check_complete_lattice(FinitePoset.from_predicate(carrier, lambda a, b: b % a == 0))
    assert rep.is_lattice and rep.top == 12 and rep.bottom == 1


# ---------------------------------------------------------------- equivalences and quotients

def test_kernel_merges_mutual_pair():
    pre = closure(["a", "b", "c"], [("a", "b"), ("b", "a")])
    eq = kernel_equivalence(pre)
    assert quotient_set(["a", "b", "c"], eq) == (fs("a", "b"), fs("c"))


def test_kernel_of_partial_order_is_identity():
    eq = kernel_equivalence(diamond().relation)
    assert quotient_set("abcd", eq) == tuple(fs(x) for x in "abcd")


def test_kernel_of_total_relation():
    pre = FiniteRelation.from_predicate("abc", lambda x, y: True)
    assert quotient_set("abc", kernel_equivalence(pre)) == (fs("a", "b", "c"),)


def test_kernel_rejects_non_preorder():
    with pytest.raises(OrderLawError) as err:
        kernel_equivalence(FiniteRelation(["a", "b"], {("a", "b")}))
    assert err.value.law == "a preorder"


def test_quotient_examples():
    eq = EquivalenceRelation.from_blocks([["a", "b"], ["c"]])
    assert quotient_set("abc", eq) == (fs("a", "b"), fs("c"))
    ident = EquivalenceRelation.from_blocks([["a"], ["b"], ["c"]])
    assert quotient_set("abc", ident) == (fs("a"), fs("b"), fs("c"))
    total = EquivalenceRelation.from_blocks(["abc"])
    assert quotient_set("abc", total) == (fs("a", "b", "c"),)


def test_quotient_carrier_mismatch():
    with pytest.raises(CarrierMismatchError):
        quotient_set("abcd", EquivalenceRelation.from_blocks(["abc"]))


def test_equivalence_requires_symmetry():
    with pytest.raises(OrderLawError):
        EquivalenceRelation(closure(["a", "b"], [("a", "b")]))


def assert_partition(blocks, carrier):
    assert all(blocks)
    for b1, b2 in itertools.combinations(blocks, 2):
        assert not b1 & b2
    assert frozenset().union(*blocks) == frozenset(carrier)


@settings(max_examples=200)
@given(preorders())
def test_kernel_is_equivalence_and_quotient_partitions(pre):
    eq = kernel_equivalence(pre)
    assert check_order_properties(eq.relation).is_equivalence
    assert_partition(quotient_set(pre.carrier, eq), pre.carrier)


# ---------------------------------------------------------------- lifted preorders

def test_lift_collapses_kernel_class():
    pre = closure("abc", [("a", "b"), ("b", "a"), ("a", "c")])
    lifted = lift_preorder(pre, kernel_equivalence(pre))
    ab, c = fs("a", "b"), fs("c")
    assert lifted.pairs == {(ab, ab), (c, c), (ab, c)}
    assert check_order_properties(lifted).is_partial_order


def test_lift_partial_order_identity_kernel():
    d = diamond().relation
    lifted = lift_preorder(d, kernel_equivalence(d))
    assert lifted.pairs == {(fs(x), fs(y)) for x, y in d.pairs}


def non_kernel_counterexample():
    pre = closure("abcd", [("a", "b"), ("c", "d")])
    eq = EquivalenceRelation.from_blocks([["a", "d"], ["b", "c"]])
    return pre, eq


def test_lift_with_non_kernel_equivalence_breaks_antisymmetry():
    pre, eq = non_kernel_counterexample()
    lifted = lift_preorder(pre, eq)
    ad, bc = fs("a", "d"), fs("b", "c")
    assert (ad, bc) in lifted.pairs and (bc, ad) in lifted.pairs
    rep = check_order_properties(lifted)
    assert not rep.antisymmetric
    assert set(rep.witnesses["antisymmetric"]) == {ad, bc}


def test_lift_errors():
    pre, eq = non_kernel_counterexample()
    with pytest.raises(CarrierMismatchError):
        lift_preorder(pre, EquivalenceRelation.from_blocks(["abc"]))
    with pytest.raises(OrderLawError):
        lift_preorder(FiniteRelation("abcd", {("a", "b")}), eq)


@settings(max_examples=300)
@given(preorders())
def test_lift_with_kernel_is_partial_order(pre):
    lifted = lift_preorder(pre, kernel_equivalence(pre))
    assert check_order_properties(lifted).is_partial_order
    # existential definition, checked pair by pair
    for b1 in lifted.carrier:
        for b2 in lifted.carrier:
            expected = any(pre.holds(x, y) for x in b1 for y in b2)
            assert lifted.holds(b1, b2) == expected


# ---------------------------------------------------------------- Galois connections

def test_identity_adjunction():
    p = FinitePoset.powerset("xy")
    ident = {x: x for x in p.carrier}
    rep = check_galois(GaloisPair(p, p, ident, ident))
    assert rep.all_hold and rep.insertion_holds and not rep.counterexamples


def test_top_bottom_maps_break_adjunction():
    c = FinitePoset.powerset("xy")
    a = FinitePoset.powerset("p")
    top, bottom = fs("p"), fs()
    rep = check_galois(GaloisPair(c, a, {x: top for x in c.carrier}, {y: bottom for y in a.carrier}))
    assert not rep.adjunction_holds
    for x, y in rep.counterexamples["adjunction"]:
        assert a.leq(top, y) != c.leq(x, bottom)
    # every nonempty x breaks the biconditional against the abstract top
    for x in c.carrier:
        if x != bottom:
            assert a.leq(top, top) and not c.leq(x, bottom)
    assert not rep.extensive_holds and rep.counterexamples["extensive"]
    assert not rep.reductive_holds


def test_galois_totality_checked():
    c = FinitePoset.powerset("x")
    with pytest.raises(MembershipError):
        GaloisPair(c, c, {fs(): fs()}, {x: x for x in c.carrier})


def test_galois_bound():
    p = FinitePoset.powerset("xyz")
    ident = {x: x for x in p.carrier}
    with pytest.raises(BoundExceededError):
        check_galois(GaloisPair(p, p, ident, ident), max_pairs=10)


def naive_galois(pair):
    C, A = pair.concrete, pair.abstract
    al, ga = pair.alpha, pair.gamma
    return {
        "adjunction_holds": all(A.leq(al(x), y) == C.leq(x, ga(y)) for x in C.carrier for y in A.carrier),
        "alpha_monotone": all(A.leq(al(x), al(z)) for x in C.carrier for z in C.carrier if C.leq(x, z)),
        "gamma_monotone": all(C.leq(ga(y), ga(w)) for y in A.carrier for w in A.carrier if A.leq(y, w)),
        "extensive_holds": all(C.leq(x, ga(al(x))) for x in C.carrier),
        "reductive_holds": all(A.leq(al(ga(y)), y) for y in A.carrier),
        "insertion_holds": all(al(ga(y)) == y for y in A.carrier),
    }


CHAINS = [FinitePoset.from_predicate(range(n), lambda a, b: a <= b) for n in (1, 2, 3, 4)]


@settings(max_examples=300)
@given(st.sampled_from(CHAINS + [FinitePoset.powerset("xy")]),
       st.sampled_from(CHAINS + [FinitePoset.powerset("p")]), st.data())
def test_check_galois_matches_naive_loops(concrete, abstract, data):
    alpha_table = {x: data.draw(st.sampled_from(abstract.carrier)) for x in concrete.carrier}
    gamma_table = {y: data.draw(st.sampled_from(concrete.carrier)) for y in abstract.carrier}
    pair = GaloisPair(concrete, abstract, alpha_table, gamma_table)
    rep = check_galois(pair)
    expected = naive_galois(pair)
    for flag, value in expected.items():
        assert getattr(rep, flag) == value, flag
    if rep.adjunction_holds:
        assert rep.all_hold
    for law in ("adjunction", "alpha_monotone", "gamma_monotone", "extensive", "reductive", "insertion"):
        flag = law if law.endswith("monotone") else f"{law}_holds"
        assert getattr(rep, flag) == (law not in rep.counterexamples)


# ---------------------------------------------------------------- approximation quality

@pytest.fixture
def jj_pair(jj):
    return galois_pair(build_partition(jj, {"AX": ["a1", "a2", "a4"], "B3": ["a3"], "B5": ["a5"]}))


def test_exact_union_of_blocks(jj_pair):
    q = approximation_quality(jj_pair, fs("a1", "a2", "a4"), fs("AX"))
    assert q.sound and q.exact


def test_sound_not_exact(jj_pair):
    q = approximation_quality(jj_pair, fs("a1"), fs("AX"))
    assert q.sound and not q.exact
    assert jj_pair.gamma(jj_pair.alpha(fs("a1"))) == fs("a1", "a2", "a4")


def test_not_sound(jj_pair):
    assert not approximation_quality(jj_pair, fs("a3"), fs("AX")).sound


def test_approximation_membership(jj_pair):
    with pytest.raises(MembershipError):
        approximation_quality(jj_pair, fs("zz"), fs("AX"))
