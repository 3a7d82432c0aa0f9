"""Finite order theory over explicit carriers.

Relations are stored as dense boolean matrices indexed by carrier position, so
every law check is exhaustive and witnesses come out in canonical (carrier,
row-major) order. Carrier elements may be any hashable value except ``None``,
which is reserved for "absent" in :func:`bounds`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Mapping

import numpy as np

from .errors import BoundExceededError, CarrierMismatchError, MembershipError, OrderLawError

#: Default ceiling on |concrete| * |abstract| for exhaustive Galois checks.
GALOIS_PAIR_BOUND = 1 << 24
#: Largest base set whose powerset is materialized as a dense matrix.
POWERSET_BASE_BOUND = 13
MAX_WITNESSES = 3


class FiniteRelation:
    """Binary relation over an ordered, duplicate-free carrier."""

    def __init__(self, carrier: Iterable[Hashable], pairs: Iterable[tuple] = (), *, matrix=None):
        self.carrier = tuple(carrier)
        self.index = {x: i for i, x in enumerate(self.carrier)}
        if len(self.index) != len(self.carrier):
            raise ValueError("carrier contains duplicate elements")
        n = len(self.carrier)
        if matrix is None:
            m = np.zeros((n, n), dtype=bool)
            for x, y in pairs:
                m[self._pos(x), self._pos(y)] = True
        else:
            m = np.asarray(matrix, dtype=bool)
            if m.shape != (n, n):
                raise ValueError(f"matrix shape {m.shape} does not match carrier size {n}")
        self.matrix = m

    @classmethod
    def from_predicate(cls, carrier, holds: Callable[[Any, Any], bool]) -> FiniteRelation:
        carrier = tuple(carrier)
        m = np.array([[bool(holds(x, y)) for y in carrier] for x in carrier], dtype=bool).reshape(len(carrier), len(carrier))
        return cls(carrier, matrix=m)

    def _pos(self, x):
        try:
            return self.index[x]
        except KeyError:
            raise MembershipError(x) from None

    def holds(self, x, y) -> bool:
        return bool(self.matrix[self._pos(x), self._pos(y)])

    @property
    def pairs(self) -> frozenset:
        c = self.carrier
        return frozenset((c[i], c[j]) for i, j in np.argwhere(self.matrix))

    def __len__(self):
        return len(self.carrier)

    def __eq__(self, other):
        if not isinstance(other, FiniteRelation):
            return NotImplemented
        return set(self.carrier) == set(other.carrier) and self.pairs == other.pairs

    def __hash__(self):
        return hash((frozenset(self.carrier), self.pairs))

    def __repr__(self):
        return f"FiniteRelation(carrier={list(self.carrier)!r}, pairs={sorted(self.pairs, key=repr)!r})"


@dataclass(frozen=True)
class OrderReport:
    reflexive: bool
    antisymmetric: bool
    transitive: bool
    symmetric: bool
    witnesses: dict[str, tuple] = field(default_factory=dict)

    @property
    def is_preorder(self):
        return self.reflexive and self.transitive

    @property
    def is_partial_order(self):
        return self.is_preorder and self.antisymmetric

    @property
    def is_equivalence(self):
        return self.is_preorder and self.symmetric


def _first(mask):
    hits = np.argwhere(mask)
    return tuple(int(i) for i in hits[0]) if len(hits) else None


def check_order_properties(rel: FiniteRelation) -> OrderReport:
    m = rel.matrix
    c = rel.carrier
    n = len(c)
    witnesses = {}

    bad = _first(~np.diag(m)) if n else None
    if bad is not None:
        witnesses["reflexive"] = (c[bad[0]],)

    off_diag = ~np.eye(n, dtype=bool)
    bad = _first(m & m.T & off_diag)
    if bad is not None:
        witnesses["antisymmetric"] = (c[bad[0]], c[bad[1]])

    bad = _first(m & ~m.T)
    if bad is not None:
        witnesses["symmetric"] = (c[bad[0]], c[bad[1]])

    if n:
        f = m.astype(np.float32)
        composed = (f @ f) > 0
        bad = _first(composed & ~m)
        if bad is not None:
            i, k = bad
            j = int(np.argmax(m[i] & m[:, k]))
            witnesses["transitive"] = (c[i], c[j], c[k])

    return OrderReport(
        reflexive="reflexive" not in witnesses,
        antisymmetric="antisymmetric" not in witnesses,
        transitive="transitive" not in witnesses,
        symmetric="symmetric" not in witnesses,
        witnesses=witnesses,
    )


def _require(rel, report, laws, name):
    for law in laws:
        if not getattr(report, law):
            raise OrderLawError(name, report.witnesses[law])


class FinitePoset:
    """A relation certified reflexive, antisymmetric and transitive."""

    def __init__(self, relation: FiniteRelation, _trusted: bool = False):
        if not _trusted:
            _require(relation, check_order_properties(relation),
                     ("reflexive", "antisymmetric", "transitive"), "a partial order")
        self.relation = relation

    @classmethod
    def from_predicate(cls, carrier, leq) -> FinitePoset:
        return cls(FiniteRelation.from_predicate(carrier, leq))

    @classmethod
    def powerset(cls, base: Iterable[Hashable]) -> FinitePoset:
        """Subsets of ``base`` under inclusion, ordered by bitmask over the sorted base."""
        base = sorted(base)
        n = len(base)
        if n > POWERSET_BASE_BOUND:
            raise BoundExceededError(n, POWERSET_BASE_BOUND, "powerset base")
        carrier = [frozenset(b for i, b in enumerate(base) if mask >> i & 1) for mask in range(1 << n)]
        masks = np.arange(1 << n, dtype=np.uint16)
        matrix = (masks[:, None] & ~masks[None, :]) == 0
        return cls(FiniteRelation(carrier, matrix=matrix), _trusted=True)

    @property
    def carrier(self):
        return self.relation.carrier

    @property
    def matrix(self):
        return self.relation.matrix

    def index_of(self, x) -> int:
        return self.relation._pos(x)

    def leq(self, x, y) -> bool:
        return self.relation.holds(x, y)

    def __len__(self):
        return len(self.relation)


class EquivalenceRelation:
    """A relation certified reflexive, symmetric and transitive."""

    def __init__(self, relation: FiniteRelation):
        _require(relation, check_order_properties(relation),
                 ("reflexive", "symmetric", "transitive"), "an equivalence")
        self.relation = relation

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[Hashable]]) -> EquivalenceRelation:
        blocks = [list(b) for b in blocks]
        carrier = [x for b in blocks for x in b]
        return cls(FiniteRelation(carrier, [(x, y) for b in blocks for x in b for y in b]))

    @property
    def carrier(self):
        return self.relation.carrier

    def equivalent(self, x, y) -> bool:
        return self.relation.holds(x, y)

    def class_of(self, x) -> frozenset:
        r = self.relation
        row = r.matrix[r._pos(x)]
        return frozenset(r.carrier[j] for j in np.flatnonzero(row))


@dataclass(frozen=True)
class Bounds:
    lub: Any = None
    glb: Any = None


def _least(m, candidates):
    # the candidate below every other candidate, if any
    if not len(candidates):
        return None
    sub = m[np.ix_(candidates, candidates)]
    hits = np.flatnonzero(sub.all(axis=1))
    return int(candidates[hits[0]]) if len(hits) else None


def _bound_indices(m, idx):
    uppers = np.flatnonzero(m[idx].all(axis=0)) if len(idx) else np.arange(m.shape[0])
    lowers = np.flatnonzero(m[:, idx].all(axis=1)) if len(idx) else np.arange(m.shape[0])
    lub = _least(m, uppers)
    glb = _least(m.T, lowers)
    return lub, glb


def bounds(poset: FinitePoset, subset: Iterable[Hashable]) -> Bounds:
    """Least upper and greatest lower bound of ``subset``; ``None`` where absent."""
    idx = np.array(sorted({poset.index_of(x) for x in subset}), dtype=np.intp)
    lub, glb = _bound_indices(poset.matrix, idx)
    c = poset.carrier
    return Bounds(lub=None if lub is None else c[lub], glb=None if glb is None else c[glb])


@dataclass(frozen=True)
class LatticeReport:
    is_lattice: bool
    is_complete: bool
    top: Any = None
    bottom: Any = None
    has_top: bool = False
    has_bottom: bool = False
    witness: tuple | None = None

    @property
    def is_cpo(self):
        # finite posets: every ascending chain is finite, so only the bottom matters
        return self.has_bottom


def check_complete_lattice(poset: FinitePoset, exhaustive: bool = False, exhaustive_bound: int = 20) -> LatticeReport:
    """Decide lattice and complete-lattice status.

    By default completeness follows from the pairwise check on a nonempty
    carrier. ``exhaustive=True`` instead sweeps every subset, and refuses
    carriers larger than ``exhaustive_bound``.
    """
    m = poset.matrix
    c = poset.carrier
    n = len(c)
    if exhaustive and n > exhaustive_bound:
        raise BoundExceededError(n, exhaustive_bound, "carrier")

    witness = None
    for i, j in itertools.combinations(range(n), 2):
        lub, glb = _bound_indices(m, np.array([i, j], dtype=np.intp))
        if lub is None or glb is None:
            witness = (c[i], c[j])
            break
    is_lattice = witness is None

    everything = np.arange(n, dtype=np.intp)
    top, bottom = _bound_indices(m, everything) if n else (None, None)

    if exhaustive:
        is_complete = n > 0
        for r in range(0, n + 1):
            if not is_complete:
                break
            for combo in itertools.combinations(range(n), r):
                lub, glb = _bound_indices(m, np.array(combo, dtype=np.intp))
                if lub is None or glb is None:
                    is_complete = False
                    witness = witness or tuple(c[k] for k in combo)
                    break
    else:
        is_complete = is_lattice and n > 0

    return LatticeReport(
        is_lattice=is_lattice,
        is_complete=is_complete,
        top=None if top is None else c[top],
        bottom=None if bottom is None else c[bottom],
        has_top=top is not None,
        has_bottom=bottom is not None,
        witness=witness,
    )


def _require_preorder(rel):
    _require(rel, check_order_properties(rel), ("reflexive", "transitive"), "a preorder")


def kernel_equivalence(preorder: FiniteRelation) -> EquivalenceRelation:
    """x ~ y iff x <= y and y <= x."""
    _require_preorder(preorder)
    m = preorder.matrix
    return EquivalenceRelation(FiniteRelation(preorder.carrier, matrix=m & m.T))


def _check_carrier(carrier, equiv):
    if set(carrier) != set(equiv.carrier):
        raise CarrierMismatchError("carrier and equivalence relation range over different elements")


def quotient_set(carrier: Iterable[Hashable], equiv: EquivalenceRelation) -> tuple[frozenset, ...]:
    """Equivalence classes of ``carrier``, ordered by their first member in carrier order."""
    carrier = tuple(carrier)
    _check_carrier(carrier, equiv)
    seen = set()
    blocks = []
    for x in carrier:
        if x in seen:
            continue
        block = equiv.class_of(x)
        seen |= block
        blocks.append(block)
    return tuple(blocks)


def lift_preorder(preorder: FiniteRelation, equiv: EquivalenceRelation) -> FiniteRelation:
    """Lift ``preorder`` to the quotient: [x] <= [y] iff some x' in [x], y' in [y] have x' <= y'."""
    _check_carrier(preorder.carrier, equiv)
    _require_preorder(preorder)
    blocks = quotient_set(preorder.carrier, equiv)
    ind = np.zeros((len(preorder.carrier), len(blocks)), dtype=np.float32)
    for k, block in enumerate(blocks):
        for x in block:
            ind[preorder.index[x], k] = 1.0
    lifted = (ind.T @ preorder.matrix.astype(np.float32) @ ind) > 0
    return FiniteRelation(blocks, matrix=lifted)


# ---------------------------------------------------------------- Galois

@dataclass(frozen=True)
class GaloisPair:
    """Explicit abstraction/concretisation tables between two finite posets."""

    concrete: FinitePoset
    abstract: FinitePoset
    alpha_table: Mapping
    gamma_table: Mapping

    def __post_init__(self):
        for name, table, src, dst in (("alpha", self.alpha_table, self.concrete, self.abstract),
                                      ("gamma", self.gamma_table, self.abstract, self.concrete)):
            for x in src.carrier:
                if x not in table:
                    raise MembershipError(x, f"domain of {name}")
                dst.index_of(table[x])

    def alpha(self, x):
        return self.alpha_table[x]

    def gamma(self, y):
        return self.gamma_table[y]


@dataclass(frozen=True)
class GaloisReport:
    adjunction_holds: bool
    alpha_monotone: bool
    gamma_monotone: bool
    extensive_holds: bool
    reductive_holds: bool
    insertion_holds: bool
    counterexamples: dict[str, list[tuple]] = field(default_factory=dict)
    sampled: bool = False
    checked_pairs: int = 0

    @property
    def all_hold(self):
        return (self.adjunction_holds and self.alpha_monotone and self.gamma_monotone
                and self.extensive_holds and self.reductive_holds)


def _witnesses(mask, render, limit=MAX_WITNESSES):
    return [render(*(int(k) for k in hit)) for hit in np.argwhere(mask)[:limit]]


def check_galois(pair: GaloisPair, max_pairs: int = GALOIS_PAIR_BOUND) -> GaloisReport:
    """Exhaustively check the adjunction and each derived law.

    The adjunction is the biconditional alpha(x) <= y iff x <= gamma(y) over
    every pair; monotonicity, extensivity (x <= gamma(alpha(x))), reductivity
    (alpha(gamma(y)) <= y) and insertion (alpha(gamma(y)) == y) are checked
    on their own so a broken pair reports every law it violates.
    """
    C, A = pair.concrete, pair.abstract
    n, k = len(C), len(A)
    if n * k > max_pairs:
        raise BoundExceededError(n * k, max_pairs, "Galois pair space")
    cm, am = C.matrix, A.matrix
    cc, ac = C.carrier, A.carrier
    a = np.array([A.index_of(pair.alpha_table[x]) for x in cc], dtype=np.intp)
    g = np.array([C.index_of(pair.gamma_table[y]) for y in ac], dtype=np.intp)
    rng_c, rng_a = np.arange(n), np.arange(k)

    adjunction = am[a, :] != cm[:, g]
    alpha_mono = cm & ~am[np.ix_(a, a)]
    gamma_mono = am & ~cm[np.ix_(g, g)]
    extensive = ~cm[rng_c, g[a]] if n else np.zeros(0, dtype=bool)
    reductive = ~am[a[g], rng_a] if k else np.zeros(0, dtype=bool)
    insertion = a[g] != rng_a

    cx = {}
    if adjunction.any():
        cx["adjunction"] = _witnesses(adjunction, lambda i, j: (cc[i], ac[j]))
    if alpha_mono.any():
        cx["alpha_monotone"] = _witnesses(alpha_mono, lambda i, j: (cc[i], cc[j]))
    if gamma_mono.any():
        cx["gamma_monotone"] = _witnesses(gamma_mono, lambda i, j: (ac[i], ac[j]))
    if extensive.any():
        cx["extensive"] = _witnesses(extensive, lambda i: (cc[i], cc[g[a[i]]]))
    if reductive.any():
        cx["reductive"] = _witnesses(reductive, lambda j: (ac[j], ac[a[g[j]]]))
    if insertion.any():
        cx["insertion"] = _witnesses(insertion, lambda j: (ac[j], ac[a[g[j]]]))

    return GaloisReport(
        adjunction_holds="adjunction" not in cx,
        alpha_monotone="alpha_monotone" not in cx,
        gamma_monotone="gamma_monotone" not in cx,
        extensive_holds="extensive" not in cx,
        reductive_holds="reductive" not in cx,
        insertion_holds="insertion" not in cx,
        counterexamples=cx,
        checked_pairs=n * k,
    )


@dataclass(frozen=True)
class Approximation:
    sound: bool
    exact: bool


def approximation_quality(pair: GaloisPair, x, y_abs) -> Approximation:
    """``y_abs`` is sound for ``x`` iff x <= gamma(y_abs); ``x`` is exact iff gamma(alpha(x)) == x."""
    C = pair.concrete
    C.index_of(x)
    pair.abstract.index_of(y_abs)
    return Approximation(
        sound=C.leq(x, pair.gamma(y_abs)),
        exact=pair.gamma(pair.alpha(x)) == x,
    )
