"""Group-symmetric weight systems over labelled complexes.

A weight system attaches an integer colour vector to every size-r labelled
edge of each pattern's symmetry complex.  Pattern copies become molecules
(weight-labelled embeddings), single coloured/directed edges become atoms
(weight-labelled orbits), and the divisibility lattice is the set of edge
vectors whose restriction sums land, orbit by orbit, in the integer span of
the lifted atom vectors.  One membership primitive from the integer-lattice
module serves every checker built on top of this.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .complexes import LabelledComplex, PermGroup
from .core import (
    ColouredMultidigraph,
    ColouredMultigraph,
    Digraph,
    Inj,
    Partition,
    inj_compose,
    inj_domain,
)
from .intlattice import SpanChecker

ZERO = ()


def _zero(dim: int) -> tuple[int, ...]:
    return (0,) * dim


def _unit(dim: int, d: int) -> tuple[int, ...]:
    return tuple(1 if k == d else 0 for k in range(dim))


def _vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


class WeightSystem:
    """Weights on the size-r labelled edges of tagged symmetry complexes.

    Each tag names one pattern; its complex is the full restriction family
    of the group, so a size-r labelled edge is any restriction of a group
    element composed into an r-subset of labels.
    """

    def __init__(self, group: PermGroup, r: int, dim: int, tags, weight: dict) -> None:
        self.group = group
        self.q = group.degree
        self.r = r
        self.dim = dim
        self.tags = tuple(tags)
        self.weight = dict(weight)  # (tag_index, theta) -> tuple[int]*dim

    def weight_of(self, tag: int, theta: Inj) -> tuple[int, ...]:
        return self.weight.get((tag, theta), _zero(self.dim))

    def level_maps(self, labels) -> tuple[Inj, ...]:
        """A_B: restrictions of group elements to the label set."""
        return self.group.restrictions(labels)

    def r_subsets(self):
        return list(combinations(range(self.q), self.r))

    def to_json_dict(self) -> dict:
        return {
            "type": "weight-system",
            "q": self.q,
            "r": self.r,
            "dim": self.dim,
            "tags": list(self.tags),
            "group": [list(s) for s in self.group.elements],
            "weights": [
                {"tag": tag, "map": [list(p) for p in theta], "vector": list(vec)}
                for (tag, theta), vec in sorted(self.weight.items())
            ],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "WeightSystem":
        if doc.get("type") != "weight-system":
            raise ValueError("not a weight-system document")
        group = PermGroup(doc["q"], [tuple(s) for s in doc["group"]])
        weight = {
            (w["tag"], tuple(tuple(p) for p in w["map"])): tuple(w["vector"])
            for w in doc["weights"]
        }
        return cls(group, doc["r"], doc["dim"], doc["tags"], weight)


# ---------------------------------------------------------------------------
# builders


def coloured_weight_system(
    patterns, partition: Partition | None = None
) -> WeightSystem:
    """One tag per coloured pattern; an r-level map gets the unit vector of
    the colour its image carries in that pattern.

    With a label partition the group is the part stabilizer, otherwise
    the full symmetric group.
    """
    if not patterns:
        raise ValueError("empty pattern family")
    q = patterns[0].n
    r = patterns[0].r
    dim = patterns[0].colours
    for h in patterns:
        if (h.n, h.r, h.colours) != (q, r, dim):
            raise ValueError("patterns disagree on (q, r, colours)")
        for e, vec in h.mult:
            if sum(vec) != 1:
                raise ValueError(f"pattern edge {e} must carry exactly one colour once")
    group = (
        PermGroup.part_stabilizer(partition)
        if partition is not None
        else PermGroup.symmetric(q)
    )
    weight = {}
    for tag, h in enumerate(patterns):
        colour_of = {e: vec.index(1) for e, vec in h.mult}
        for B in combinations(range(q), r):
            for theta in group.restrictions(B):
                image = tuple(sorted(v for _, v in theta))
                d = colour_of.get(image)
                if d is not None:
                    weight[(tag, theta)] = _unit(dim, d)
    return WeightSystem(group, r, dim, [f"pattern-{i}" for i in range(len(patterns))], weight)


def digraph_weight_system(pattern: Digraph, allow_non_simple: bool = False) -> WeightSystem:
    """Indicator weights on order-preserving lifts of the pattern's arcs.

    Non-simple patterns (repeated arc images) generally break atom
    independence and are rejected unless explicitly allowed for diagnosis.
    """
    if not allow_non_simple and not pattern.is_simple():
        raise ValueError("pattern digraph must be simple (distinct arc images)")
    q = pattern.n
    r = pattern.r
    group = PermGroup.symmetric(q)
    weight = {}
    for B in combinations(range(q), r):
        for theta in group.restrictions(B):
            values = tuple(v for _, v in theta)  # ordered by label
            if values in pattern.arcs:
                weight[(0, theta)] = (1,)
    return WeightSystem(group, r, 1, ["pattern-0"], weight)


def master_weight_system(
    patterns,
    partition: Partition,
    groups_by_colour=None,
) -> WeightSystem:
    """Weight system for coloured directed partite families.

    Requires the family to pass the canonical-structure check (see
    divisibility.canonical_family_check); lifts each colour class along
    order-preserving position maps whose label set matches the colour's
    part index.
    """
    from .divisibility import canonical_family_check

    info = canonical_family_check(patterns, partition)
    q = patterns[0].n
    r = patterns[0].r
    dim = patterns[0].colours
    group = PermGroup.part_stabilizer(partition)
    weight = {}
    for tag, h in enumerate(patterns):
        for B in combinations(range(q), r):
            idx_B = partition.index_vector(B)
            for theta in group.restrictions(B):
                values = tuple(v for _, v in theta)
                vec = h.multiplicity(values)
                for d in range(dim):
                    if vec[d] and idx_B == info.colour_index[d]:
                        weight[(tag, theta)] = _unit(dim, d)
    return WeightSystem(group, r, dim, [f"pattern-{i}" for i in range(len(patterns))], weight)


# ---------------------------------------------------------------------------
# types and atoms


@dataclass(frozen=True)
class TypeClass:
    labels: frozenset  # B
    vector: tuple  # concatenated weights over group.onto(B), sigma-sorted
    members: tuple  # ((tag, theta), ...)

    @property
    def is_zero(self) -> bool:
        return not any(any(v) for v in self.vector)


class TypeTable:
    """Per r-subset B: the partition of tagged level maps by type vector."""

    def __init__(self, system: WeightSystem) -> None:
        self.system = system
        self.by_labels: dict[frozenset, list[TypeClass]] = {}
        self._type_of: dict[tuple, int] = {}
        group = system.group
        for B in system.r_subsets():
            fb = frozenset(B)
            sigmas = group.onto(B)
            buckets: dict[tuple, list] = {}
            for tag in range(len(system.tags)):
                for theta in group.restrictions(B):
                    vec = tuple(
                        system.weight_of(tag, inj_compose(theta, sigma))
                        for sigma in sigmas
                    )
                    buckets.setdefault(vec, []).append((tag, theta))
            classes = [
                TypeClass(fb, vec, tuple(sorted(members)))
                for vec, members in sorted(buckets.items())
            ]
            self.by_labels[fb] = classes
            for idx, cls in enumerate(classes):
                for member in cls.members:
                    self._type_of[(fb, member[0], member[1])] = idx

    def classes(self, labels) -> list[TypeClass]:
        return self.by_labels[frozenset(labels)]

    def nonzero_classes(self, labels) -> list[tuple[int, TypeClass]]:
        return [
            (idx, cls)
            for idx, cls in enumerate(self.classes(labels))
            if not cls.is_zero
        ]

    def type_of(self, tag: int, theta: Inj) -> int:
        return self._type_of[(inj_domain(theta), tag, theta)]

    def nonzero_level_maps(self, tag: int) -> list[tuple[Inj, int]]:
        """Every level map of the tagged complex whose type is nonzero,
        with its type index; this is the support a molecule can touch."""
        out = []
        for B, classes in self.by_labels.items():
            for theta in self.system.group.restrictions(B):
                idx = self._type_of[(B, tag, theta)]
                if not classes[idx].is_zero:
                    out.append((theta, idx))
        return out

    def counts(self) -> dict[frozenset, int]:
        return {B: len(cls) for B, cls in self.by_labels.items()}


def is_elementary(system: WeightSystem, types: TypeTable | None = None) -> bool:
    """Distinct nonzero atom vectors at each orbit shape must be independent."""
    types = types or TypeTable(system)
    for B in system.r_subsets():
        vectors = {
            tuple(x for vec in cls.vector for x in vec)
            for _, cls in types.nonzero_classes(B)
        }
        if not vectors:
            continue
        rows = sorted(vectors)
        checker = SpanChecker(rows)
        rank = len(checker._pivots)
        if rank != len(rows):
            return False
    return True


# ---------------------------------------------------------------------------
# edge vectors, molecules, atom decompositions

EdgeVector = dict  # Inj -> tuple[int]*dim, sparse


def molecule(system: WeightSystem, tag: int, phi: Inj) -> EdgeVector:
    """The weight vector of one pattern copy: phi composed over every
    nonzero r-level map of the tagged complex."""
    out: EdgeVector = {}
    for (t, theta), vec in system.weight.items():
        if t != tag:
            continue
        psi = inj_compose(phi, theta)
        if psi in out:
            raise ValueError("molecule support collision")
        out[psi] = vec
    return out


def edge_vector_add(a: EdgeVector, b: EdgeVector, dim: int, sign: int = 1) -> EdgeVector:
    out = dict(a)
    for k, v in b.items():
        cur = out.get(k, _zero(dim))
        new = tuple(x + sign * y for x, y in zip(cur, v))
        if any(new):
            out[k] = new
        else:
            out.pop(k, None)
    return out


@dataclass
class AtomDecomposition:
    terms: list  # (orbit representative, type index, coefficient)
    failed_orbit: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.failed_orbit is None


def atom_decomposition(
    J: EdgeVector, system: WeightSystem, phi: LabelledComplex, types: TypeTable | None = None
) -> AtomDecomposition:
    """Express J orbit-by-orbit as integer combinations of typed atoms.

    Fails (returning the offending orbit) when some orbit restriction lies
    outside the integer span of the atoms there; with an elementary system
    the coefficients are unique.
    """
    types = types or TypeTable(system)
    group = system.group
    dim = system.dim
    seen = set()
    terms = []
    for psi in sorted(J):
        if psi in seen:
            continue
        B = inj_domain(psi)
        sigmas = group.onto(B)
        rep = min(inj_compose(psi, s) for s in sigmas)
        B_rep = inj_domain(rep)
        sig_rep = group.onto(B_rep)
        members = [inj_compose(rep, s) for s in sig_rep]
        seen.update(members)
        target = []
        for member in members:
            target.extend(J.get(member, _zero(dim)))
        nonzero = types.nonzero_classes(B_rep)
        gens = [tuple(x for vec in cls.vector for x in vec) for _, cls in nonzero]
        coeffs = SpanChecker(gens).membership(target)
        if coeffs is None:
            return AtomDecomposition(terms=[], failed_orbit=(rep, tuple(target)))
        for (idx, _cls), c in zip(nonzero, coeffs):
            if c:
                terms.append((rep, idx, c))
    return AtomDecomposition(terms=terms)


def dominates(
    J: EdgeVector,
    system: WeightSystem,
    phi: LabelledComplex,
    tag: int,
    embedding: Inj,
    types: TypeTable | None = None,
) -> bool:
    """True when J minus the molecule of (tag, embedding) is a nonnegative
    integer combination of atoms."""
    diff = edge_vector_add(J, molecule(system, tag, embedding), system.dim, sign=-1)
    dec = atom_decomposition(diff, system, phi, types)
    return dec.ok and all(c >= 0 for _, _, c in dec.terms)


# ---------------------------------------------------------------------------
# divisibility lattice membership


@dataclass
class OrbitVerdict:
    representative: Inj
    ok: bool
    witness: list | None
    target: tuple
    generator_count: int


@dataclass
class LatticeReport:
    member: bool
    failing_orbit: OrbitVerdict | None
    orbits_checked: int
    notes: list[str] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        doc = {
            "type": "lattice-membership-report",
            "member": self.member,
            "orbits_checked": self.orbits_checked,
            "notes": self.notes,
        }
        if self.failing_orbit is not None:
            doc["failing_orbit"] = {
                "representative": [list(p) for p in self.failing_orbit.representative],
                "target": list(self.failing_orbit.target),
                "generator_count": self.failing_orbit.generator_count,
            }
        return doc


class LatticeChecker:
    """Precomputed orbit structure for repeated lattice-membership queries.

    The per-orbit generator matrices depend only on the complex, the group
    and the weights, so they are built once; queries then flatten the
    restriction sums of J to each orbit and delegate to exact span checks,
    memoized per generator matrix.
    """

    def __init__(
        self,
        system: WeightSystem,
        phi: LabelledComplex,
        include_high_levels: bool = False,
    ) -> None:
        self.system = system
        self.phi = phi
        self.dim = system.dim
        self.r_subsets = [frozenset(B) for B in system.r_subsets()]
        group = system.group
        # lifted generator sums: (tag, theta', B) -> sum of weights over
        # extensions of theta' in the tagged complex at level B
        self._sharp_weight: dict = {}
        for (tag, theta), vec in system.weight.items():
            B = inj_domain(theta)
            dom = sorted(x for x, _ in theta)
            for size in range(len(dom) + 1):
                for sub in combinations(dom, size):
                    key = (tag, tuple((x, dict(theta)[x]) for x in sub), B)
                    cur = self._sharp_weight.get(key, _zero(self.dim))
                    self._sharp_weight[key] = _vec_add(cur, vec)
        levels = list(range(system.r + 1))
        if include_high_levels:
            levels = list(range(system.q + 1))
        self.orbits = []  # (rep, [(sigma, member)], coords, span_key)
        self._span_cache: dict[tuple, SpanChecker] = {}
        self._verdict_cache: dict[tuple, tuple] = {}
        ntags = len(system.tags)
        for size in levels:
            for orbit in phi.orbits_at_size(size, group):
                rep = orbit[0]
                B_rep = inj_domain(rep)
                sig = group.onto(B_rep)
                members = [(s, inj_compose(rep, s)) for s in sig]
                coords = []
                for s, member in members:
                    dom = inj_domain(member)
                    for B in self.r_subsets:
                        if dom <= B:
                            coords.append((s, member, B))
                gens = []
                for tag in range(ntags):
                    for theta0 in group.restrictions(B_rep):
                        partial = tuple(
                            sorted(
                                (dict(theta0)[x], dict(rep)[x])
                                for x in sorted(B_rep)
                            )
                        )
                        if not phi.full_embedding_exists(partial):
                            continue
                        row = []
                        for s, _member, B in coords:
                            row.extend(
                                self._sharp_weight.get(
                                    (tag, inj_compose(theta0, s), B),
                                    _zero(self.dim),
                                )
                            )
                        gens.append(tuple(row))
                gens = sorted(set(gens))
                span_key = tuple(gens)
                if span_key not in self._span_cache:
                    self._span_cache[span_key] = SpanChecker(list(gens))
                self.orbits.append((rep, members, coords, span_key))

    def check(self, J: EdgeVector) -> LatticeReport:
        dim = self.dim
        sharp: dict = {}
        for psi, vec in J.items():
            B = inj_domain(psi)
            if B not in self.r_subsets:
                raise ValueError("edge vector supported outside the r-level")
            dom = sorted(x for x, _ in psi)
            lookup = dict(psi)
            for size in range(len(dom) + 1):
                for sub in combinations(dom, size):
                    key = (tuple((x, lookup[x]) for x in sub), B)
                    cur = sharp.get(key, _zero(dim))
                    sharp[key] = _vec_add(cur, vec)
        checked = 0
        for rep, members, coords, span_key in self.orbits:
            target = []
            for _s, member, B in coords:
                target.extend(sharp.get((member, B), _zero(dim)))
            target_t = tuple(target)
            checked += 1
            cache_key = (span_key, target_t)
            hit = self._verdict_cache.get(cache_key)
            if hit is None:
                witness = self._span_cache[span_key].membership(list(target_t))
                hit = (witness is not None, witness)
                self._verdict_cache[cache_key] = hit
            ok, witness = hit
            if not ok:
                return LatticeReport(
                    member=False,
                    failing_orbit=OrbitVerdict(
                        representative=rep,
                        ok=False,
                        witness=None,
                        target=target_t,
                        generator_count=len(span_key),
                    ),
                    orbits_checked=checked,
                )
        return LatticeReport(member=True, failing_orbit=None, orbits_checked=checked)


def lattice_membership(
    J: EdgeVector,
    system: WeightSystem,
    phi: LabelledComplex,
    include_high_levels: bool = False,
) -> LatticeReport:
    return LatticeChecker(system, phi, include_high_levels).check(J)


# ---------------------------------------------------------------------------
# host encodings into edge vectors


def coloured_edge_vector(g: ColouredMultigraph, phi: LabelledComplex) -> EdgeVector:
    """Every labelled edge of the complex carries the multiplicity vector of
    its image edge."""
    by_image = {e: vec for e, vec in g.mult}
    out: EdgeVector = {}
    for B in combinations(range(phi.q), g.r):
        for psi in phi.level(B):
            image = tuple(sorted(v for _, v in psi))
            vec = by_image.get(image)
            if vec is not None:
                out[psi] = vec
    return out


def digraph_edge_vector(g: Digraph, phi: LabelledComplex) -> EdgeVector:
    """Indicator of order-preserving lifts: a labelled edge is in the lift
    iff reading its values in label order gives an arc."""
    out: EdgeVector = {}
    for B in combinations(range(phi.q), g.r):
        for psi in phi.level(B):
            values = tuple(v for _, v in psi)
            if values in g.arcs:
                out[psi] = (1,)
    return out


def master_edge_vector(
    g: ColouredMultidigraph,
    host_partition: Partition,
    phi: LabelledComplex,
) -> EdgeVector:
    """Order-preserving lift of a coloured multidigraph into a partite complex.

    Each arc lifts to the label sets whose part index matches the arc
    image's host index; the arc must place its position blocks into the
    matching host parts in ascending order, otherwise the lift leaves the
    complex and the host is rejected.
    """
    out: EdgeVector = {}
    q = phi.q
    r = g.r
    label_index = {}
    for B in combinations(range(q), r):
        label_index.setdefault(
            phi.label_partition.index_vector(B) if phi.label_partition else (r,),
            [],
        ).append(B)
    for arc, vec in g.mult:
        host_idx = host_partition.index_vector(arc)
        targets = label_index.get(host_idx, [])
        if not targets:
            raise ValueError(f"arc {arc} has index {host_idx} outside the label indices")
        for B in targets:
            pairs = tuple(zip(sorted(B), arc))
            psi = tuple(sorted(pairs))
            if psi not in phi:
                raise ValueError(
                    f"arc {arc} does not map its position blocks into the host parts"
                )
            cur = out.get(psi, _zero(g.colours))
            out[psi] = _vec_add(cur, vec)
    return out


# ---------------------------------------------------------------------------
# regularity witnesses


@dataclass
class RegularityReport:
    regular: bool
    worst_ratio: Fraction | None
    box_violations: int
    band_violations: int
    checked: int
    notes: list[str] = field(default_factory=list)


def verify_regularity_witness(
    y: dict,
    J: EdgeVector,
    system: WeightSystem,
    phi: LabelledComplex,
    c,
    omega,
    types: TypeTable | None = None,
) -> RegularityReport:
    """Check a molecule weighting: box constraints on each weight and the
    typed degree sums within (1 +- c) of J's atom coefficients.

    ``y`` maps (tag, full embedding) to a rational weight and must be
    indexed by copies whose molecules J dominates.
    """
    c = Fraction(c)
    omega = Fraction(omega)
    types = types or TypeTable(system)
    n = phi.vertex_count
    lo = omega * Fraction(n) ** (system.r - system.q)
    hi = Fraction(n) ** (system.r - system.q) / omega
    box_violations = 0
    for (tag, emb), weight in y.items():
        if not dominates(J, system, phi, tag, emb, types):
            raise ValueError(f"witness indexed by a copy J does not dominate: {emb}")
        if not (lo <= Fraction(weight) <= hi):
            box_violations += 1
    # typed degree sums: a molecule contributes at every member of every
    # orbit it touches, via the basepoint-changed type
    partial: dict = {}
    support = {
        tag: types.nonzero_level_maps(tag) for tag in range(len(system.tags))
    }
    for (tag, emb), weight in y.items():
        for theta, tindex in support[tag]:
            key = (inj_compose(emb, theta), tindex)
            partial[key] = partial.get(key, Fraction(0)) + Fraction(weight)
    # atom coefficients of J at every labelled edge of the support levels
    group = system.group
    dim = system.dim
    coeffs: dict = {}
    seen = set()
    for psi in J:
        if psi in seen:
            continue
        B = inj_domain(psi)
        sigmas = group.onto(B)
        members = [inj_compose(psi, s) for s in sigmas]
        seen.update(members)
        for member in members:
            Bm = inj_domain(member)
            sig_m = system.group.onto(Bm)
            target = []
            for s in sig_m:
                target.extend(J.get(inj_compose(member, s), _zero(dim)))
            nonzero = types.nonzero_classes(Bm)
            gens = [tuple(x for vec in cls.vector for x in vec) for _, cls in nonzero]
            sol = SpanChecker(gens).membership(target)
            if sol is None:
                raise ValueError("J is not atom-decomposable; no witness can verify")
            for (idx, _cls), coef in zip(nonzero, sol):
                coeffs[(member, idx)] = coef
    worst = Fraction(0)
    band_violations = 0
    checked = 0
    keys = set(partial) | set(coeffs)
    for key in keys:
        expected = Fraction(coeffs.get(key, 0))
        got = partial.get(key, Fraction(0))
        checked += 1
        if expected == 0:
            if got != 0:
                band_violations += 1
                worst = max(worst, Fraction(1))
            continue
        dev = abs(got / expected - 1)
        worst = max(worst, dev)
        if dev > c:
            band_violations += 1
    return RegularityReport(
        regular=(box_violations == 0 and band_violations == 0),
        worst_ratio=worst,
        box_violations=box_violations,
        band_violations=band_violations,
        checked=checked,
    )


def search_regularity_witness(
    J: EdgeVector,
    system: WeightSystem,
    phi: LabelledComplex,
    c,
    omega,
    molecule_budget: int = 10000,
):
    """Rational feasibility fallback: find a witness weighting or None.

    Enumerates dominated molecules (bounded by ``molecule_budget``) and
    solves the band/box system exactly.
    """
    from .linprog import solve_feasibility

    c = Fraction(c)
    omega = Fraction(omega)
    types = TypeTable(system)
    n = phi.vertex_count
    lo = omega * Fraction(n) ** (system.r - system.q)
    hi = Fraction(n) ** (system.r - system.q) / omega
    copies = []
    for tag in range(len(system.tags)):
        for emb in sorted(phi.full_level()):
            if dominates(J, system, phi, tag, emb, types):
                copies.append((tag, emb))
                if len(copies) > molecule_budget:
                    raise ValueError("molecule budget exceeded")
    # typed incidence
    rows: dict = {}
    support = {
        tag: types.nonzero_level_maps(tag) for tag in range(len(system.tags))
    }
    for col, (tag, emb) in enumerate(copies):
        for theta, tindex in support[tag]:
            rows.setdefault((inj_compose(emb, theta), tindex), []).append(col)
    # coefficients of J
    dec = atom_decomposition(J, system, phi, types)
    if not dec.ok:
        return None
    group = system.group
    coeffs: dict = {}
    for rep, tindex, coef in dec.terms:
        B = inj_domain(rep)
        cls = types.classes(B)[tindex]
        for s in group.onto(B):
            member = inj_compose(rep, s)
            # coefficient transported along the orbit: resolve per member
            coeffs[(member, tindex)] = None
    for member, tindex in list(coeffs):
        Bm = inj_domain(member)
        sig_m = group.onto(Bm)
        target = []
        for s in sig_m:
            target.extend(J.get(inj_compose(member, s), _zero(system.dim)))
        nonzero = types.nonzero_classes(Bm)
        gens = [tuple(x for vec in cl.vector for x in vec) for _, cl in nonzero]
        sol = SpanChecker(gens).membership(target)
        for (idx, _cl), coef in zip(nonzero, sol):
            coeffs[(member, idx)] = coef
    constraints = []
    keys = sorted(set(rows) | {k for k, v in coeffs.items() if v})
    for key in keys:
        cols = rows.get(key, [])
        coef = Fraction(coeffs.get(key) or 0)
        vec = [Fraction(0)] * len(copies)
        for col in cols:
            vec[col] += 1
        constraints.append((vec, (1 - c) * coef, (1 + c) * coef))
    sol = solve_feasibility(
        len(copies), [(lo, hi)] * len(copies), constraints
    )
    if sol is None:
        return None
    return {copies[i]: sol[i] for i in range(len(copies))}
