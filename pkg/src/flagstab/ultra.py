"""Filters, ultrafilters and ultraproducts over finite index sets.

Subsets of a ground set {0, ..., n-1} are int bitmasks.  On a finite set every
ultrafilter is principal, so every statement here can be checked by
exhaustive enumeration; the caps below keep those enumerations small.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from functools import cmp_to_key, reduce
from typing import Iterable, Sequence

from .errors import (
    AtBoundary,
    CapExceeded,
    NoFIP,
    PreconditionViolated,
    SignatureMismatch,
    ZeroVector,
)
from .exactlinalg import Subspace, contains, is_zero, subspace_leq
from .flags import is_generalized_flag
from .report import Report

MAX_GROUND = 20
MAX_FIP_MEMBERS = 18
MAX_FILTER_ENUMERATION = 4
MAX_PRODUCT = 20000
MAX_MALCEV = 4


def bits(elements: Iterable[int]) -> int:
    return reduce(lambda acc, e: acc | (1 << e), elements, 0)


def elements_of(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


@dataclass(frozen=True)
class GroundSet:
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("a ground set is nonempty")

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def subsets(self) -> range:
        if self.size > MAX_GROUND:
            raise CapExceeded(f"ground set of size {self.size} exceeds the cap {MAX_GROUND}")
        return range(1 << self.size)

    def complement(self, mask: int) -> int:
        return self.full & ~mask


@dataclass(frozen=True)
class SetFamily:
    ground: GroundSet
    members: frozenset

    def __post_init__(self):
        for m in self.members:
            if m < 0 or m > self.ground.full:
                raise ValueError(f"subset {elements_of(m)} is not inside the ground set")

    @classmethod
    def of(cls, ground: GroundSet | int, sets: Iterable[Iterable[int]]) -> SetFamily:
        if isinstance(ground, int):
            ground = GroundSet(ground)
        return cls(ground, frozenset(bits(s) for s in sets))

    def __contains__(self, mask: int) -> bool:
        return mask in self.members

    def __len__(self) -> int:
        return len(self.members)

    def to_lists(self) -> list[list[int]]:
        return sorted(elements_of(m) for m in self.members)


class Ultrafilter(SetFamily):
    """A set family validated as an ultrafilter at construction."""

    def __post_init__(self):
        super().__post_init__()
        if not is_ultrafilter(self):
            raise ValueError("family is not an ultrafilter")

    @classmethod
    def principal(cls, ground: GroundSet | int, point: int) -> Ultrafilter:
        if isinstance(ground, int):
            ground = GroundSet(ground)
        if not 0 <= point < ground.size:
            raise ValueError(f"point {point} outside the ground set")
        b = 1 << point
        return cls(ground, frozenset(s for s in ground.subsets() if s & b))

    @property
    def core(self) -> int:
        """Intersection of all members; a member itself since the ground is finite."""
        return reduce(lambda a, b: a & b, self.members, self.ground.full)

    @property
    def point(self) -> int:
        (p,) = elements_of(self.core)
        return p


def has_fip(fam: SetFamily) -> bool:
    """True iff every intersection of finitely many members is nonempty.

    Checked over every nonempty sub-collection of members.
    """
    members = sorted(fam.members)
    if len(members) > MAX_FIP_MEMBERS:
        raise CapExceeded(f"{len(members)} members exceeds the cap {MAX_FIP_MEMBERS}")
    # depth-first over sub-collections, carrying the running intersection
    stack = [(0, fam.ground.full)]
    while stack:
        start, acc = stack.pop()
        for i in range(start, len(members)):
            cut = acc & members[i]
            if cut == 0:
                return False
            stack.append((i + 1, cut))
    return True


def _intersection_closure(masks: Iterable[int]) -> set[int]:
    closed = set(masks)
    frontier = list(closed)
    while frontier:
        new = []
        for a in frontier:
            for b in list(closed):
                c = a & b
                if c not in closed:
                    closed.add(c)
                    new.append(c)
        frontier = new
    return closed


def upward_closure(ground: GroundSet, masks: Iterable[int]) -> frozenset:
    out: set[int] = set()
    for m in masks:
        free = elements_of(ground.complement(m))
        for k in range(1 << len(free)):
            out.add(m | bits(e for j, e in enumerate(free) if k >> j & 1))
    return frozenset(out)


def generate_filter(fam: SetFamily) -> SetFamily:
    """All supersets of finite intersections of members (the empty family gives {X})."""
    if not has_fip(fam):
        raise NoFIP("family lacks the finite intersection property")
    cuts = _intersection_closure(fam.members) if fam.members else {fam.ground.full}
    return SetFamily(fam.ground, upward_closure(fam.ground, cuts))


def is_filter(fam: SetFamily) -> bool:
    """Nonempty, no empty set, closed under pairwise intersection and supersets."""
    ground, members = fam.ground, fam.members
    if not members or 0 in members:
        return False
    for a in members:
        # superset closure follows from closure under adding single points
        for e in range(ground.size):
            if (a | (1 << e)) not in members:
                return False
    if len(members) > 256:
        # an upward-closed family is intersection-closed iff it holds its core
        return reduce(lambda x, y: x & y, members) in members
    return all(a & b in members for a in members for b in members)


def is_ultrafilter(fam: SetFamily) -> bool:
    if not is_filter(fam):
        return False
    return all(t in fam.members or fam.ground.complement(t) in fam.members
               for t in fam.ground.subsets())


def enumerate_filters(ground: GroundSet) -> list[SetFamily]:
    """Every filter on a ground set of size at most 4, by brute force over all families."""
    if ground.size > MAX_FILTER_ENUMERATION:
        raise CapExceeded(f"filter enumeration is capped at ground size {MAX_FILTER_ENUMERATION}")
    n_subsets = 1 << ground.size
    full_bit = 1 << ground.full
    out = []
    for code in range(1 << n_subsets):
        if not code & full_bit or code & 1:
            continue
        fam = SetFamily(ground, frozenset(s for s in range(n_subsets) if code >> s & 1))
        if is_filter(fam):
            out.append(fam)
    return out


def is_maximal_filter(fam: SetFamily, filters: Sequence[SetFamily] | None = None) -> bool:
    """True iff ``fam`` is a filter strictly contained in no other filter."""
    if not is_filter(fam):
        return False
    if filters is None:
        filters = enumerate_filters(fam.ground)
    return not any(fam.members < g.members for g in filters)


def enumerate_ultrafilters(ground: GroundSet | int) -> list[Ultrafilter]:
    """The ultrafilters on a finite set: one principal ultrafilter per point."""
    if isinstance(ground, int):
        ground = GroundSet(ground)
    if ground.size > MAX_GROUND:
        raise CapExceeded(f"ground set of size {ground.size} exceeds the cap {MAX_GROUND}")
    return [Ultrafilter.principal(ground, p) for p in range(ground.size)]


def partition_selects_one(uf: SetFamily, parts: Sequence[int]) -> int:
    """Index of the unique part in ``uf``, for disjoint parts whose union is in ``uf``."""
    for i, j in itertools.combinations(range(len(parts)), 2):
        if parts[i] & parts[j]:
            raise PreconditionViolated(f"parts {i} and {j} overlap")
    union = reduce(lambda a, b: a | b, parts, 0)
    if union not in uf.members:
        raise PreconditionViolated("the union of the parts is not in the ultrafilter")
    chosen = [i for i, p in enumerate(parts) if p in uf.members]
    if len(chosen) != 1:
        raise AssertionError(f"{len(chosen)} parts selected; family is not an ultrafilter")
    return chosen[0]


# -- finite structures -------------------------------------------------------

Op = tuple  # (arity, function)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z/m_1 x ... x Z/m_k with elements as tuples of residues."""

    moduli: tuple

    signature = "abelian_group"

    def elements(self) -> list[tuple]:
        return list(itertools.product(*(range(m) for m in self.moduli)))

    @property
    def zero(self) -> tuple:
        return (0,) * len(self.moduli)

    def operations(self) -> dict[str, Op]:
        mods = self.moduli
        return {
            "zero": (0, lambda: (0,) * len(mods)),
            "neg": (1, lambda a: tuple(-x % m for x, m in zip(a, mods))),
            "add": (2, lambda a, b: tuple((x + y) % m for x, y, m in zip(a, b, mods))),
        }

    def __str__(self) -> str:
        return " x ".join(f"Z/{m}" for m in self.moduli) or "0"


@dataclass(frozen=True)
class PrimeFieldVectorSpace:
    """F_p^d with elements as tuples of residues."""

    p: int
    dim: int

    @property
    def signature(self) -> str:
        return f"vector_space_F{self.p}"

    def elements(self) -> list[tuple]:
        return list(itertools.product(range(self.p), repeat=self.dim))

    @property
    def zero(self) -> tuple:
        return (0,) * self.dim

    def operations(self) -> dict[str, Op]:
        p, d = self.p, self.dim
        ops: dict[str, Op] = {
            "zero": (0, lambda: (0,) * d),
            "neg": (1, lambda a: tuple(-x % p for x in a)),
            "add": (2, lambda a, b: tuple((x + y) % p for x, y in zip(a, b))),
        }
        for c in range(p):
            ops[f"smul{c}"] = (1, lambda a, c=c: tuple(c * x % p for x in a))
        return ops

    def __str__(self) -> str:
        return f"F_{self.p}^{self.dim}"


@dataclass(frozen=True)
class Substructure:
    """A subset of a structure closed under all of its operations."""

    parent: object
    carrier: frozenset

    @property
    def signature(self) -> str:
        return self.parent.signature

    def elements(self) -> list[tuple]:
        return sorted(self.carrier)

    @property
    def zero(self) -> tuple:
        return self.parent.zero

    def operations(self) -> dict[str, Op]:
        return self.parent.operations()


def generated_substructure(structure, seeds: Iterable) -> Substructure:
    ops = structure.operations()
    carrier = set(seeds)
    carrier.update(f() for arity, f in ops.values() if arity == 0)
    while True:
        new = set()
        for arity, f in ops.values():
            for args in itertools.product(sorted(carrier), repeat=arity):
                if arity:
                    new.add(f(*args))
        if new <= carrier:
            return Substructure(structure, frozenset(carrier))
        carrier |= new


def _op_names(structure) -> tuple:
    return tuple(sorted(structure.operations()))


class Ultraproduct:
    """The quotient of the product of ``factors`` by agreement on an ultrafilter set.

    Elements of the product are tuples with one entry per index.  Operations
    act pointwise; two tuples are identified when the set of indices where
    they agree belongs to the ultrafilter.
    """

    def __init__(self, factors: Sequence, uf: SetFamily):
        if len(factors) != uf.ground.size:
            raise SignatureMismatch("one factor per index of the ground set is required")
        sigs = {(f.signature, _op_names(f)) for f in factors}
        if len(sigs) != 1:
            raise SignatureMismatch(f"factors have different signatures: {sorted(s[0] for s in sigs)}")
        self.factors = tuple(factors)
        self.uf = uf
        self._ops = [f.operations() for f in factors]
        self._core = elements_of(reduce(lambda a, b: a & b, uf.members, uf.ground.full))

    def agreement(self, f: Sequence, g: Sequence) -> int:
        return bits(i for i, (a, b) in enumerate(zip(f, g)) if a == b)

    def equivalent(self, f: Sequence, g: Sequence) -> bool:
        return self.agreement(f, g) in self.uf.members

    def key(self, f: Sequence) -> tuple:
        """Canonical label of f's class: its entries on the smallest ultrafilter set."""
        return tuple(f[i] for i in self._core)

    def apply(self, name: str, *args: Sequence) -> tuple:
        return tuple(ops[name][1](*(a[i] for a in args)) for i, ops in enumerate(self._ops))

    def operation_names(self) -> list[str]:
        return sorted(self._ops[0])

    def arity(self, name: str) -> int:
        return self._ops[0][name][0]

    def size_of_product(self) -> int:
        return reduce(lambda a, f: a * len(f.elements()), self.factors, 1)

    def classes(self) -> dict[tuple, tuple]:
        """Map from class label to one representative tuple (enumerates the product)."""
        if self.size_of_product() > MAX_PRODUCT:
            raise CapExceeded(f"product has more than {MAX_PRODUCT} elements")
        out: dict[tuple, tuple] = {}
        for f in itertools.product(*(fac.elements() for fac in self.factors)):
            out.setdefault(self.key(f), f)
        return out

    def projection_report(self, index: int | None = None) -> Report:
        """Check that projecting to one factor is an isomorphism of the quotient onto it.

        ``index`` defaults to the principal point of the ultrafilter.
        """
        if index is None:
            (index,) = self._core
        report = Report("ultraproduct_projection")
        report.fact("factor_index", index)
        report.fact("factor", self.factors[index])
        reps = self.classes()
        report.fact("classes", len(reps))
        image = {}
        for label, f in reps.items():
            image.setdefault(f[index], []).append(label)
        target = set(self.factors[index].elements())
        if set(image) != target:
            report.fail("projection is not onto the factor")
        if any(len(v) > 1 for v in image.values()):
            report.fail("projection identifies distinct classes")
        ops = self.factors[index].operations()
        reps_list = list(reps.values())
        for name in self.operation_names():
            arity = self.arity(name)
            for args in itertools.product(reps_list, repeat=arity):
                lhs = self.apply(name, *args)[index]
                rhs = ops[name][1](*(a[index] for a in args))
                if lhs != rhs:
                    report.fail(f"projection does not preserve {name}")
                    break
        return report


def ultraproduct_classes(factors: Sequence, uf: SetFamily) -> Ultraproduct:
    return Ultraproduct(factors, uf)


def shipped_structures() -> list:
    """Every shipped structure with at most 4 elements."""
    return [
        FiniteAbelianGroup((1,)),
        FiniteAbelianGroup((2,)),
        FiniteAbelianGroup((3,)),
        FiniteAbelianGroup((4,)),
        FiniteAbelianGroup((2, 2)),
        PrimeFieldVectorSpace(2, 1),
        PrimeFieldVectorSpace(3, 1),
        PrimeFieldVectorSpace(2, 2),
    ]


@dataclass
class MalcevEmbedding:
    """A structure A mapped into the ultraproduct of its finitely generated substructures.

    The index set X is all nonempty subsets of A (as bitmasks over A's
    element list); cone[a] is the set of indices containing a; the
    ultrafilter is principal at the index of A itself, which lies in every
    cone.  psi[x] is the tuple with entry x wherever x lies in the
    substructure and that substructure's zero elsewhere.
    """

    structure: object
    elements: list
    ground: GroundSet
    index_sets: list  # index -> bitmask over elements
    cones: list  # index -> bitmask over indices
    uf: Ultrafilter
    subsystems: list
    psi: dict = field(repr=False)
    product: Ultraproduct = field(repr=False)

    def verify(self, psi: dict | None = None) -> Report:
        psi = self.psi if psi is None else psi
        report = Report("malcev_embedding")
        report.fact("structure", self.structure)
        report.fact("elements", len(self.elements))
        report.fact("index_set_size", self.ground.size)
        report.fact("principal_index", self.uf.point)
        for i, cone in enumerate(self.cones):
            if cone not in self.uf.members:
                report.fail(f"cone {i} is not in the ultrafilter")
        if not has_fip(SetFamily(self.ground, frozenset(self.cones))):
            report.fail("cones lack the finite intersection property")
        pos = {x: i for i, x in enumerate(self.elements)}
        for x, image in psi.items():
            if any(image[a] not in self.subsystems[a].carrier for a in range(self.ground.size)):
                report.fail(f"psi({x}) leaves a factor")
        ops = self.structure.operations()
        for name, (arity, f) in sorted(ops.items()):
            for args in itertools.product(self.elements, repeat=arity):
                lhs = psi[f(*args)]
                rhs = self.product.apply(name, *(psi[a] for a in args))
                agree = self.product.agreement(lhs, rhs)
                if agree not in self.uf.members:
                    report.fail(f"psi does not preserve {name} at {args}")
                    continue
                # the agreement set contains the cone of the arguments
                needed = reduce(lambda acc, a: acc & self.cones[pos[a]], args, self.ground.full)
                if psi is self.psi and needed & ~agree:
                    report.fail(f"agreement set for {name} at {args} misses the argument cone")
        injective = True
        for x, y in itertools.combinations(self.elements, 2):
            if self.product.equivalent(psi[x], psi[y]):
                report.fail(f"psi identifies {x} and {y}")
                injective = False
        report.fact("injective", injective)
        return report


def malcev_embedding(structure) -> MalcevEmbedding:
    elements = structure.elements()
    if len(elements) > MAX_MALCEV:
        raise CapExceeded(f"structures are capped at {MAX_MALCEV} elements")
    k = len(elements)
    index_sets = list(range(1, 1 << k))
    ground = GroundSet(len(index_sets))
    cones = [bits(b for b, beta in enumerate(index_sets) if beta >> a & 1) for a in range(k)]
    uf = Ultrafilter.principal(ground, index_sets.index((1 << k) - 1))
    subsystems = [generated_substructure(structure, (elements[e] for e in elements_of(alpha)))
                  for alpha in index_sets]
    psi = {x: tuple(x if x in sub.carrier else sub.zero for sub in subsystems) for x in elements}
    product = Ultraproduct(subsystems, uf)
    return MalcevEmbedding(structure, elements, ground, index_sets, cones, uf, subsystems, psi, product)


# -- flags indexed by an ultrafilter ---------------------------------------------

class Order(Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


@dataclass(frozen=True)
class FlagIndexFunction:
    """q(alpha) in {0, ..., n_alpha}: the level picked in each factor flag."""

    values: tuple
    bounds: tuple

    def __post_init__(self):
        if len(self.values) != len(self.bounds):
            raise ValueError("values and bounds differ in length")
        for q, n in zip(self.values, self.bounds):
            if not 0 <= q <= n:
                raise ValueError(f"level {q} outside 0..{n}")

    def __getitem__(self, a: int) -> int:
        return self.values[a]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class UltraFlagSystem:
    """One flag per index of the ground set, and an ultrafilter on it.

    ``strict`` requires every factor flag to be full.
    """

    ground: GroundSet
    factor_flags: tuple
    uf: Ultrafilter
    strict: bool = True

    def __post_init__(self):
        if len(self.factor_flags) != self.ground.size or self.uf.ground != self.ground:
            raise ValueError("one factor flag per index and an ultrafilter on the same ground")
        if self.strict and not all(f.is_full for f in self.factor_flags):
            raise ValueError("every factor flag must be full")

    @property
    def bounds(self) -> tuple:
        return tuple(len(f.chain) - 1 for f in self.factor_flags)

    def q_min(self) -> FlagIndexFunction:
        return FlagIndexFunction((0,) * self.ground.size, self.bounds)

    def q_max(self) -> FlagIndexFunction:
        return FlagIndexFunction(self.bounds, self.bounds)

    def index_functions(self) -> list[FlagIndexFunction]:
        total = reduce(lambda a, n: a * (n + 1), self.bounds, 1)
        if total > MAX_PRODUCT:
            raise CapExceeded(f"{total} index functions exceeds the cap {MAX_PRODUCT}")
        return [FlagIndexFunction(v, self.bounds)
                for v in itertools.product(*(range(n + 1) for n in self.bounds))]


def uf_compare(p: FlagIndexFunction, q: FlagIndexFunction, uf: SetFamily) -> Order:
    if p.bounds != q.bounds:
        raise ValueError("index functions over different factor dimensions")
    above = bits(a for a in range(len(p)) if p[a] > q[a])
    equal = bits(a for a in range(len(p)) if p[a] == q[a])
    below = bits(a for a in range(len(p)) if p[a] < q[a])
    return (Order.GREATER, Order.EQUAL, Order.LESS)[partition_selects_one(uf, [above, equal, below])]


def _at(q: FlagIndexFunction, target: Sequence[int], uf: SetFamily | None) -> bool:
    if uf is None:
        return tuple(q.values) == tuple(target)
    return uf_compare(q, FlagIndexFunction(tuple(target), q.bounds), uf) is Order.EQUAL


def uf_successor(q: FlagIndexFunction, uf: SetFamily | None = None) -> FlagIndexFunction:
    """(q+1)(a) = q(a) + 1 wherever q(a) < n_a, unchanged elsewhere.

    Without ``uf`` the boundary test is componentwise; with it, q must not be
    equivalent to q_max.
    """
    if _at(q, q.bounds, uf):
        raise AtBoundary("q is the maximum and has no successor")
    return FlagIndexFunction(tuple(v + 1 if v < n else v for v, n in zip(q.values, q.bounds)), q.bounds)


def uf_predecessor(q: FlagIndexFunction, uf: SetFamily | None = None) -> FlagIndexFunction:
    if _at(q, (0,) * len(q), uf):
        raise AtBoundary("q is the minimum and has no predecessor")
    return FlagIndexFunction(tuple(v - 1 if v > 0 else v for v, n in zip(q.values, q.bounds)), q.bounds)


def realize(q: FlagIndexFunction, sys: UltraFlagSystem) -> Subspace:
    """The subspace of the factor at the ultrafilter's point picked out by q."""
    a = sys.uf.point
    return sys.factor_flags[a].chain[q[a]]


def uf_contains(q: FlagIndexFunction, v: Sequence, sys: UltraFlagSystem) -> bool:
    """Whether the class of v lies in the class of q: {a : v(a) in F_a[q(a)]} is in the ultrafilter."""
    where = bits(a for a in range(sys.ground.size)
                 if contains(sys.factor_flags[a].chain[q[a]], v[a]))
    return where in sys.uf.members


def uf_locate(v: Sequence, sys: UltraFlagSystem) -> FlagIndexFunction:
    """q_v: in each factor with v(a) != 0, the lowest flag level containing v(a); 0 elsewhere."""
    support = bits(a for a in range(sys.ground.size) if not is_zero(v[a]))
    if support not in sys.uf.members:
        raise ZeroVector("vector is equivalent to zero under the ultrafilter")
    levels = []
    for a, f in enumerate(sys.factor_flags):
        if is_zero(v[a]):
            levels.append(0)
        else:
            levels.append(next(i for i, s in enumerate(f.chain) if contains(s, v[a])))
    return FlagIndexFunction(tuple(levels), sys.bounds)


def _probe_vectors(sys: UltraFlagSystem) -> Iterable[tuple]:
    per_factor = []
    for f in sys.factor_flags:
        top = f.chain[-1]
        choices = [tuple(0 for _ in range(top.ambient_dim))] + list(top.basis)
        if top.dim > 1:
            choices.append(tuple(sum(col) for col in zip(*top.basis)))
        per_factor.append(choices)
    total = reduce(lambda a, c: a * len(c), per_factor, 1)
    if total > MAX_PRODUCT:
        raise CapExceeded(f"{total} probe vectors exceeds the cap {MAX_PRODUCT}")
    return itertools.product(*per_factor)


def verify_ultraflag(sys: UltraFlagSystem) -> Report:
    """Check that the ultraproduct of the factor flags is a maximal generalized flag.

    Over all index functions: the ultrafilter order matches inclusion of the
    realized subspaces; each class other than the extremes has an immediate
    successor and predecessor with one-dimensional quotient; every probe
    vector not equivalent to zero is located in exactly the gap q_v - 1 < q_v.
    """
    report = Report("ultraflag")
    uf = sys.uf
    report.fact("ground", sys.ground.size)
    report.fact("principal_index", uf.point)
    report.fact("bounds", sys.bounds)
    for a, f in enumerate(sys.factor_flags):
        if not f.is_full:
            report.fail(f"hypothesis: factor flag {a} is not full")
    funcs = sys.index_functions()
    # total order agrees with inclusion
    for p in funcs:
        rp = realize(p, sys)
        for q in funcs:
            verdict = uf_compare(p, q, uf)
            rq = realize(q, sys)
            if (verdict is not Order.GREATER) != subspace_leq(rp, rq):
                report.fail(f"order of {p.values} vs {q.values} disagrees with inclusion")
            if (verdict is Order.EQUAL) != (rp == rq):
                report.fail(f"equality of {p.values} and {q.values} disagrees with realization")
    cmp = cmp_to_key(lambda p, q: {Order.LESS: -1, Order.EQUAL: 0, Order.GREATER: 1}[uf_compare(p, q, uf)])
    classes: list[FlagIndexFunction] = []
    for q in sorted(funcs, key=cmp):
        if not classes or uf_compare(classes[-1], q, uf) is not Order.EQUAL:
            classes.append(q)
    report.fact("classes", len(classes))
    report.fact("realized_dims", [realize(q, sys).dim for q in classes])
    if realize(sys.q_min(), sys).dim != 0:
        report.fail("q_min does not realize the zero subspace")
    top = realize(sys.q_max(), sys)
    if top.dim != top.ambient_dim:
        report.fail("q_max does not realize the whole space")
    for idx, q in enumerate(classes):
        if uf_compare(q, sys.q_max(), uf) is not Order.EQUAL:
            s = uf_successor(q, uf)
            if uf_compare(q, s, uf) is not Order.LESS:
                report.fail(f"successor of {q.values} is not above it")
            elif any(uf_compare(q, r, uf) is Order.LESS and uf_compare(r, s, uf) is Order.LESS
                     for r in classes):
                report.fail(f"successor of {q.values} is not immediate")
            gap = realize(s, sys).dim - realize(q, sys).dim
            if gap != 1:
                report.fail(f"maximality: quotient (q+1)/q at {q.values} has dimension {gap}")
        if uf_compare(q, sys.q_min(), uf) is not Order.EQUAL:
            p = uf_predecessor(q, uf)
            if uf_compare(p, q, uf) is not Order.LESS:
                report.fail(f"predecessor of {q.values} is not below it")
            elif any(uf_compare(p, r, uf) is Order.LESS and uf_compare(r, q, uf) is Order.LESS
                     for r in classes):
                report.fail(f"predecessor of {q.values} is not immediate")
    located = 0
    for v in _probe_vectors(sys):
        try:
            qv = uf_locate(v, sys)
        except ZeroVector:
            continue
        located += 1
        if not uf_contains(qv, v, sys):
            report.fail(f"probe {v} is not in its located level")
        elif uf_compare(qv, sys.q_min(), uf) is Order.EQUAL:
            report.fail(f"nonzero probe {v} located at the zero level")
        elif uf_contains(uf_predecessor(qv, uf), v, sys):
            report.fail(f"probe {v} already lies in the level below its located one")
    report.fact("located_probes", located)
    point_flag = sys.factor_flags[uf.point]
    report.fact("factor_is_generalized_flag", is_generalized_flag(point_flag.chain).clean)
    return report


__all__ = [
    "GroundSet", "SetFamily", "Ultrafilter", "has_fip", "generate_filter", "is_filter",
    "is_ultrafilter", "enumerate_filters", "is_maximal_filter", "enumerate_ultrafilters",
    "partition_selects_one", "FiniteAbelianGroup", "PrimeFieldVectorSpace", "Substructure",
    "generated_substructure", "Ultraproduct", "ultraproduct_classes", "shipped_structures",
    "MalcevEmbedding", "malcev_embedding", "Order", "FlagIndexFunction", "UltraFlagSystem",
    "uf_compare", "uf_successor", "uf_predecessor", "realize", "uf_contains", "uf_locate",
    "verify_ultraflag", "bits", "elements_of", "upward_closure",
]
