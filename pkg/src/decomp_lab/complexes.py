"""Labelled complexes: restriction-closed sets of partial injections.

A complex assigns to every label set B a set of injections B -> V; closure
under restriction makes these the carrier for orbit and lattice
computations.  This module also houses the complex-level diagnostics:
group adaptedness, orbit decomposition, extension counting and the
typicality checks for host structures.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from math import comb

from .core import (
    ColouredMultigraph,
    Hypergraph,
    Inj,
    Partition,
    inj_compose,
    inj_domain,
    inj_extends,
    inj_from_pairs,
    inj_restrict,
)
from .rng import SplitMix64

ADAPT_DEGREE_BOUND = 10


# ---------------------------------------------------------------------------
# permutation groups on the label set

class PermGroup:
    """Permutation group on 0..q-1, materialized as image tuples."""

    def __init__(self, degree: int, elements) -> None:
        self.degree = degree
        elems = {tuple(map(int, s)) for s in elements}
        ident = tuple(range(degree))
        elems.add(ident)
        for s in elems:
            if sorted(s) != list(range(degree)):
                raise ValueError(f"{s} is not a permutation of 0..{degree - 1}")
        # verify closure; small degrees only, so the quadratic check is fine
        for a in elems:
            for b in elems:
                if tuple(a[b[i]] for i in range(degree)) not in elems:
                    raise ValueError("element set is not closed under composition")
        self.elements = tuple(sorted(elems))
        self._index = {s: i for i, s in enumerate(self.elements)}

    @classmethod
    def symmetric(cls, q: int) -> "PermGroup":
        return cls(q, permutations(range(q)))

    @classmethod
    def trivial(cls, q: int) -> "PermGroup":
        return cls(q, [tuple(range(q))])

    @classmethod
    def from_generators(cls, q: int, generators) -> "PermGroup":
        gens = [tuple(map(int, g)) for g in generators]
        ident = tuple(range(q))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = tuple(a[g[i]] for i in range(q))
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return cls(q, seen)

    @classmethod
    def part_stabilizer(cls, partition: Partition) -> "PermGroup":
        """All permutations fixing every part setwise."""
        q = partition.ground_size
        perms_per_part = [permutations(part) for part in partition.parts]
        elems = []
        for chosen in product(*perms_per_part):
            sigma = [0] * q
            for part, image in zip(partition.parts, chosen):
                for src, dst in zip(part, image):
                    sigma[src] = dst
            elems.append(tuple(sigma))
        return cls(q, elems)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, sigma) -> bool:
        return tuple(sigma) in self._index

    def __iter__(self):
        return iter(self.elements)

    def restrictions(self, labels) -> tuple[Inj, ...]:
        """All restrictions of group elements to a fixed domain."""
        labels = tuple(sorted(labels))
        out = {tuple((x, s[x]) for x in labels) for s in self.elements}
        return tuple(sorted(out))

    def onto(self, labels) -> tuple[Inj, ...]:
        """All restrictions of group elements mapping onto a fixed image set."""
        target = frozenset(labels)
        out = set()
        for s in self.elements:
            domain = sorted(x for x in range(self.degree) if s[x] in target)
            out.add(tuple((x, s[x]) for x in domain))
        return tuple(sorted(out))


# ---------------------------------------------------------------------------
# labelled complexes

class LabelledComplex:
    """Levels B -> set of injections B -> V, closed under restriction."""

    def __init__(
        self,
        q: int,
        levels: dict,
        vertex_count: int,
        label_partition: Partition | None = None,
        host_partition: Partition | None = None,
        complete: bool = False,
    ) -> None:
        self.q = q
        self.vertex_count = vertex_count
        self.levels = {frozenset(B): frozenset(s) for B, s in levels.items()}
        self.levels.setdefault(frozenset(), frozenset({()}))
        self.label_partition = label_partition
        self.host_partition = host_partition
        self.complete = complete

    # -- constructors

    @classmethod
    def complete_complex(cls, q: int, n: int) -> "LabelledComplex":
        levels = {}
        verts = range(n)
        for size in range(q + 1):
            for B in combinations(range(q), size):
                injs = set()
                for img in permutations(verts, size):
                    injs.add(tuple(zip(B, img)))
                levels[frozenset(B)] = injs
        return cls(q, levels, n, complete=True)

    @classmethod
    def complete_partite(
        cls, label_partition: Partition, host_partition: Partition
    ) -> "LabelledComplex":
        """Injections sending labels of part j into host part j."""
        if label_partition.t != host_partition.t:
            raise ValueError("pattern and host partitions need equal part counts")
        q = label_partition.ground_size
        n = host_partition.ground_size
        label_part = label_partition.assignment()
        for j in range(label_partition.t):
            if label_partition.parts[j] and not host_partition.parts[j]:
                raise ValueError(f"host part {j} empty but pattern part {j} is not")
        levels = {}
        for size in range(q + 1):
            for B in combinations(range(q), size):
                injs = set()
                pools = [host_partition.parts[label_part[x]] for x in B]
                for img in product(*pools):
                    if len(set(img)) == size:
                        injs.add(tuple(zip(B, img)))
                levels[frozenset(B)] = injs
        return cls(
            q,
            levels,
            n,
            label_partition=label_partition,
            host_partition=host_partition,
            complete=True,
        )

    @classmethod
    def from_maximal(cls, q: int, n: int, maximal_edges) -> "LabelledComplex":
        """Downward closure of the given labelled edges."""
        levels: dict[frozenset, set] = {}
        for psi in maximal_edges:
            psi = inj_from_pairs(psi)
            dom = sorted(inj_domain(psi))
            for size in range(len(dom) + 1):
                for sub in combinations(dom, size):
                    rest = inj_restrict(psi, sub)
                    levels.setdefault(frozenset(sub), set()).add(rest)
        for size in range(q + 1):
            for B in combinations(range(q), size):
                levels.setdefault(frozenset(B), set())
        return cls(q, levels, n)

    # -- queries

    def level(self, labels) -> frozenset:
        return self.levels.get(frozenset(labels), frozenset())

    def at_size(self, size: int) -> list[Inj]:
        out = []
        for B, injs in self.levels.items():
            if len(B) == size:
                out.extend(injs)
        return sorted(out)

    def __contains__(self, psi) -> bool:
        return tuple(psi) in self.level(inj_domain(psi))

    def full_level(self) -> frozenset:
        return self.level(range(self.q))

    def is_restriction_closed(self) -> bool:
        for B, injs in self.levels.items():
            for psi in injs:
                for x in B:
                    sub = inj_restrict(psi, B - {x})
                    if sub not in self.level(B - {x}):
                        return False
        return True

    def vertices(self) -> set[int]:
        out = set()
        for (x,) in combinations(range(self.q), 1):
            for psi in self.level({x}):
                out.add(psi[0][1])
        return out

    # -- group actions

    def is_adapted(self, group: PermGroup) -> bool:
        """Closed under precomposition with restrictions of group elements."""
        if group.degree != self.q:
            raise ValueError("group degree must match the label set")
        for B, injs in self.levels.items():
            if not injs:
                continue
            for sigma in group.elements:
                pre = frozenset(x for x in range(self.q) if sigma[x] in B)
                sig_r = tuple((x, sigma[x]) for x in sorted(pre))
                target = self.level(pre)
                for psi in injs:
                    if inj_compose(psi, sig_r) not in target:
                        return False
        return True

    def exactly_adapted(self, degree_bound: int = ADAPT_DEGREE_BOUND) -> PermGroup | None:
        """The unique group Sigma for which membership of psi o tau is
        equivalent to tau being a restriction of a Sigma element, or None."""
        if self.q > degree_bound:
            raise ValueError(f"label degree {self.q} above configured bound {degree_bound}")
        candidates = []
        for sigma in permutations(range(self.q)):
            ok = True
            for B, injs in self.levels.items():
                if not ok:
                    break
                pre = frozenset(x for x in range(self.q) if sigma[x] in B)
                sig_r = tuple((x, sigma[x]) for x in sorted(pre))
                target = self.level(pre)
                for psi in injs:
                    if inj_compose(psi, sig_r) not in target:
                        ok = False
                        break
            if ok:
                candidates.append(sigma)
        try:
            group = PermGroup(self.q, candidates)
        except ValueError:
            return None
        # exactness: any bijection between label sets acting within the
        # complex must itself be a restriction of a group element
        for B, injs in self.levels.items():
            if not injs:
                continue
            size = len(B)
            for Bp in combinations(range(self.q), size):
                allowed = set(group.onto(B))
                for tau_img in permutations(sorted(B)):
                    tau = tuple(zip(sorted(Bp), tau_img))
                    in_group = tau in allowed
                    for psi in injs:
                        if (inj_compose(psi, tau) in self.level(Bp)) != in_group:
                            return None
        return group

    def orbit(self, psi: Inj, group: PermGroup) -> tuple[Inj, ...]:
        """psi composed with every group restriction onto its domain."""
        B = inj_domain(psi)
        return tuple(sorted(inj_compose(psi, sigma) for sigma in group.onto(B)))

    def orbit_canonical(self, psi: Inj, group: PermGroup) -> Inj:
        return self.orbit(psi, group)[0]

    def orbits_at_size(self, size: int, group: PermGroup) -> list[tuple[Inj, ...]]:
        """Orbit decomposition of the size-level, canonically sorted."""
        seen = set()
        out = []
        for psi in self.at_size(size):
            if psi in seen:
                continue
            orb = self.orbit(psi, group)
            for member in orb:
                if member not in self.levels.get(inj_domain(member), frozenset()):
                    raise ValueError("complex is not adapted to the group")
                seen.add(member)
            out.append(orb)
        return sorted(out)

    # -- embeddings

    def full_embedding_exists(self, partial: Inj) -> bool:
        """Is there a top-level labelled edge extending the partial map?"""
        if self.complete:
            assigned = dict(partial)
            used = set(assigned.values())
            if self.host_partition is None:
                free = self.q - len(assigned)
                return self.vertex_count - len(used) >= free
            label_part = self.label_partition.assignment()
            host_part = self.host_partition.assignment()
            for x, v in assigned.items():
                if host_part.get(v) != label_part[x]:
                    return False
            for j in range(self.label_partition.t):
                need = sum(
                    1
                    for x in self.label_partition.parts[j]
                    if x not in assigned
                )
                have = sum(
                    1
                    for v in self.host_partition.parts[j]
                    if v not in used
                )
                if have < need:
                    return False
            return True
        return any(inj_extends(phi, partial) for phi in self.full_level())

    def to_json_dict(self) -> dict:
        maximal = sorted(self.full_level())
        return {
            "type": "labelled-complex",
            "q": self.q,
            "n": self.vertex_count,
            "maximal": [[list(pair) for pair in psi] for psi in maximal],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "LabelledComplex":
        if doc.get("type") != "labelled-complex":
            raise ValueError("not a labelled-complex document")
        maximal = [tuple(tuple(pair) for pair in psi) for psi in doc["maximal"]]
        return cls.from_maximal(doc["q"], doc["n"], maximal)


# ---------------------------------------------------------------------------
# extensions

@dataclass(frozen=True)
class Extension:
    """Rooted template: new partite vertices plus labelled edges to realize.

    Template vertices are (position, copy) pairs; copy 0 is the root copy,
    identified with the positions themselves.  ``edges`` lists the labelled
    edges of the template that must land in the complex; restrictions pin
    chosen template edges to an allowed set of host labelled edges (an
    absent allowed-set imposes no constraint and is flagged in reports).
    """

    q: int
    new_vertices: tuple  # ((position, copy), ...)
    edges: tuple  # template labelled edges: ((label, (position, copy)), ...)
    root: Inj  # embedding of the root copy: ((position, vertex), ...)
    restrictions: tuple = ()  # ((template_edge, frozenset|None), ...)

    @property
    def rank(self) -> int:
        return max((copy for _, copy in self.new_vertices), default=0)

    @property
    def new_count(self) -> int:
        return len(self.new_vertices)

    def to_json_dict(self) -> dict:
        return {
            "type": "extension-template",
            "q": self.q,
            "new_vertices": [list(v) for v in self.new_vertices],
            "labelled_edges": [
                [[label, list(tv)] for label, tv in edge] for edge in self.edges
            ],
            "root": [list(p) for p in self.root],
            "restriction_classes": [
                {
                    "edge": [[label, list(tv)] for label, tv in edge],
                    "allowed": (
                        None
                        if allowed is None
                        else [[list(p) for p in psi] for psi in sorted(allowed)]
                    ),
                }
                for edge, allowed in self.restrictions
            ],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Extension":
        if doc.get("type") != "extension-template":
            raise ValueError("not an extension-template document")

        def edge_of(raw):
            return tuple((label, tuple(tv)) for label, tv in raw)

        restrictions = tuple(
            (
                edge_of(item["edge"]),
                None
                if item["allowed"] is None
                else frozenset(
                    tuple(tuple(p) for p in psi) for psi in item["allowed"]
                ),
            )
            for item in doc.get("restriction_classes", [])
        )
        return cls(
            q=doc["q"],
            new_vertices=tuple(tuple(v) for v in doc["new_vertices"]),
            edges=tuple(edge_of(e) for e in doc["labelled_edges"]),
            root=tuple(tuple(p) for p in doc["root"]),
            restrictions=restrictions,
        )


def complete_extension(q: int, root: Inj, new_positions) -> Extension:
    """Template whose edge set is every partite injection on root + new vertices."""
    counters: dict[int, int] = {}
    new_vertices = []
    for pos in new_positions:
        counters[pos] = counters.get(pos, 0) + 1
        new_vertices.append((pos, counters[pos]))
    vertices = [(pos, 0) for pos, _ in root] + new_vertices
    by_position: dict[int, list] = {}
    for pos, copy in vertices:
        by_position.setdefault(pos, []).append((pos, copy))
    edges = []
    positions = sorted(by_position)
    for size in range(1, len(positions) + 1):
        for B in combinations(positions, size):
            for choice in product(*(by_position[pos] for pos in B)):
                edges.append(tuple(zip(B, choice)))
    return Extension(
        q=q,
        new_vertices=tuple(new_vertices),
        edges=tuple(sorted(set(edges))),
        root=tuple(root),
    )


@dataclass(frozen=True)
class ExtensionCount:
    value: int | None
    estimate: Fraction | None = None
    stderr: Fraction | None = None
    samples: int = 0
    seed: int | None = None
    unconstrained_restrictions: int = 0

    @property
    def exact(self) -> bool:
        return self.value is not None


def extension_count(
    phi: LabelledComplex,
    ext: Extension,
    exact_limit: int = 4,
    samples: int = 20000,
    seed: int | None = None,
) -> ExtensionCount:
    """Count embeddings of the template extending the root embedding.

    Exact backtracking when the number of new vertices is at most
    ``exact_limit``; otherwise Monte-Carlo with a mandatory seed.
    """
    root_map = dict(ext.root)
    unconstrained = sum(1 for _, allowed in ext.restrictions if allowed is None)
    restriction_map = {
        edge: allowed for edge, allowed in ext.restrictions if allowed is not None
    }
    new = list(ext.new_vertices)
    new_rank = {tv: i for i, tv in enumerate(new)}

    def realize(edge, assignment) -> Inj | None:
        pairs = []
        for label, tvert in edge:
            if tvert[1] == 0:
                v = root_map.get(tvert[0])
            else:
                v = assignment.get(tvert)
            if v is None:
                return None
            pairs.append((label, v))
        return tuple(sorted(pairs))

    # edges become checkable once their latest-placed new vertex is assigned
    ready: list[list] = [[] for _ in range(len(new) + 1)]
    for edge in ext.edges:
        ranks = [new_rank[tv] for _, tv in edge if tv[1] != 0]
        ready[max(ranks) + 1 if ranks else 0].append(edge)

    def edge_ok(edge, assignment) -> bool:
        image = realize(edge, assignment)
        if image is None:
            return True
        if image not in phi:
            return False
        allowed = restriction_map.get(edge)
        return allowed is None or image in allowed

    if not all(edge_ok(edge, {}) for edge in ready[0]):
        return ExtensionCount(value=0, unconstrained_restrictions=unconstrained)

    universe = sorted(phi.vertices())
    if ext.new_count <= exact_limit:
        count = 0
        used = set(root_map.values())
        assignment: dict = {}

        def rec(idx: int) -> None:
            nonlocal count
            if idx == len(new):
                count += 1
                return
            tv = new[idx]
            for v in universe:
                if v in used:
                    continue
                assignment[tv] = v
                if all(edge_ok(edge, assignment) for edge in ready[idx + 1]):
                    used.add(v)
                    rec(idx + 1)
                    used.discard(v)
                del assignment[tv]

        rec(0)
        return ExtensionCount(value=count, unconstrained_restrictions=unconstrained)

    if seed is None:
        raise ValueError("Monte-Carlo extension counting requires an explicit seed")
    rng = SplitMix64(seed)
    n = len(universe)
    root_values = set(root_map.values())
    hits = 0
    for _ in range(samples):
        assignment = {tv: universe[rng.randrange(n)] for tv in new}
        values = list(assignment.values())
        if len(set(values)) != len(values) or root_values & set(values):
            continue
        if all(
            edge_ok(edge, assignment) for level in ready for edge in level
        ):
            hits += 1
    scale = Fraction(n) ** ext.new_count
    p = Fraction(hits, samples)
    estimate = p * scale
    stderr = (p * (1 - p) / samples) ** Fraction(1, 2) * scale if 0 < hits < samples else Fraction(0)
    return ExtensionCount(
        value=None,
        estimate=estimate,
        stderr=stderr,
        samples=samples,
        seed=seed,
        unconstrained_restrictions=unconstrained,
    )


@dataclass
class ExtendabilityReport:
    extendable: bool
    omega: Fraction
    rank: int
    checked: int
    worst: tuple | None  # (count, threshold, template description)
    notes: list[str] = field(default_factory=list)


def default_templates(q: int, rank: int, max_new: int = 3):
    """Template library: every multiset of at most max_new new partite
    vertices with per-position copies bounded by the rank."""
    from itertools import combinations_with_replacement

    out = []
    for k in range(1, max_new + 1):
        for positions in combinations_with_replacement(range(q), k):
            if any(positions.count(p) > rank for p in set(positions)):
                continue
            out.append(positions)
    return out


def is_extendable(
    phi: LabelledComplex,
    omega: Fraction,
    rank: int,
    templates=None,
    extra_templates=(),
    root_limit: int | None = 200,
) -> ExtendabilityReport:
    """Check the template library over every root embedding.

    A zero completion count is never considered dense, so an empty complex
    reports non-extendable for any positive omega.
    """
    omega = Fraction(omega)
    n = phi.vertex_count
    position_lists = templates if templates is not None else default_templates(phi.q, rank)
    roots = sorted(phi.full_level())
    if root_limit is not None and len(roots) > root_limit:
        stride = max(1, len(roots) // root_limit)
        roots = roots[::stride]
    checked = 0
    worst = None
    ok = True
    notes = []
    if not roots:
        notes.append("no root embeddings exist at the top level")
        ok = False
    for positions in position_lists:
        for root in roots:
            ext = complete_extension(phi.q, root, positions)
            res = extension_count(phi, ext)
            threshold = omega * Fraction(n) ** ext.new_count
            checked += 1
            dense = res.value >= threshold and res.value > 0
            if worst is None or Fraction(res.value) - threshold < worst[0] - worst[1]:
                worst = (Fraction(res.value), threshold, positions)
            if not dense:
                ok = False
    for ext in extra_templates:
        res = extension_count(phi, ext)
        threshold = omega * Fraction(n) ** ext.new_count
        checked += 1
        if not (res.value >= threshold and res.value > 0):
            ok = False
        if worst is None or Fraction(res.value) - threshold < worst[0] - worst[1]:
            worst = (Fraction(res.value), threshold, ext.new_vertices)
    return ExtendabilityReport(
        extendable=ok, omega=omega, rank=rank, checked=checked, worst=worst, notes=notes
    )


# ---------------------------------------------------------------------------
# typicality checks

@dataclass
class TypicalityReport:
    typical: bool
    c: Fraction
    s: int
    mode: str
    checked: int
    worst_deviation: Fraction | None  # max |lhs/expected - 1| over nonzero expectations
    witness: tuple | None = None
    exact: bool = True
    notes: list[str] = field(default_factory=list)


def _within(lhs: int, expected: Fraction, slack: Fraction) -> bool:
    return abs(Fraction(lhs) - expected) <= slack * expected


def is_typical_plain(
    g: Hypergraph,
    c,
    s: int,
    budget: int = 200000,
    samples: int = 2000,
    seed: int | None = None,
) -> TypicalityReport:
    """Joint neighbourhoods of up to s many (r-1)-sets have near-expected size."""
    c = Fraction(c)
    n = g.n
    d = g.density()
    fsets = list(combinations(range(n), g.r - 1))
    nbhd = {f: frozenset(v for (v,) in g.neighbourhood(f)) for f in fsets}

    def families():
        total = sum(comb(len(fsets), k) for k in range(1, s + 1))
        if total <= budget:
            for k in range(1, s + 1):
                yield from combinations(fsets, k)
            return None
        if seed is None:
            raise ValueError("sampling typicality requires an explicit seed")
        rng = SplitMix64(seed)
        for _ in range(samples):
            k = 1 + rng.randrange(s)
            yield tuple(rng.sample(fsets, min(k, len(fsets))))

    checked = 0
    worst = Fraction(0)
    witness = None
    ok = True
    for fam in families():
        k = len(fam)
        inter = nbhd[fam[0]]
        for f in fam[1:]:
            inter = inter & nbhd[f]
        lhs = len(inter)
        expected = d**k * n
        checked += 1
        if expected == 0:
            if lhs != 0:
                ok = False
                witness = witness or (fam, lhs, expected)
            continue
        dev = abs(Fraction(lhs) / expected - 1)
        if dev > worst:
            worst = dev
            if dev > k * c:
                witness = (fam, lhs, expected)
        if dev > k * c:
            ok = False
    exact = sum(comb(len(fsets), k) for k in range(1, s + 1)) <= budget
    return TypicalityReport(
        typical=ok, c=c, s=s, mode="plain", checked=checked,
        worst_deviation=worst, witness=witness, exact=exact,
    )


def is_typical_blowup(
    g: Hypergraph,
    host_partition: Partition,
    h: Hypergraph,
    c,
    s: int,
    budget: int = 200000,
) -> TypicalityReport:
    """Blowup typicality: within-class joint neighbourhoods track the class
    densities of the pattern edges involved."""
    c = Fraction(c)
    if host_partition.t != h.n:
        raise ValueError("host partition must have one class per pattern vertex")
    part_of = host_partition.assignment()
    classes = host_partition.parts
    # class density per pattern edge
    dens = {}
    for f in h.edges:
        count = sum(
            1 for e in g.edges if tuple(sorted(part_of[v] for v in e)) == f
        )
        slots = 1
        for x in f:
            slots *= len(classes[x])
        dens[f] = Fraction(count, slots) if slots else Fraction(0)
    # candidate (r-1)-partite sets, grouped by footprint
    fsets = []
    for e in combinations(range(g.n), g.r - 1):
        fp = tuple(sorted(part_of[v] for v in e))
        if len(set(fp)) == len(fp):
            fsets.append((e, fp))
    nbhd = {
        e: frozenset(v for (v,) in g.neighbourhood(e)) for e, _ in fsets
    }
    checked = 0
    worst = Fraction(0)
    witness = None
    ok = True
    total = sum(comb(len(fsets), k) for k in range(1, s + 1))
    if total > budget:
        raise ValueError("exact blowup typicality above budget; reduce s or the host")
    for k in range(1, s + 1):
        for fam in combinations(fsets, k):
            footprints = [set(fp) for _, fp in fam]
            for x in range(h.n):
                if any(x in fp for fp in footprints):
                    continue
                involved = [
                    tuple(sorted(fp | {x})) for fp in (frozenset(f) for _, f in fam)
                ]
                if any(f not in h.edges for f in involved):
                    continue
                inter = set(classes[x])
                for e, _ in fam:
                    inter &= nbhd[e]
                lhs = len(inter)
                expected = Fraction(len(classes[x]))
                for f in involved:
                    expected *= dens[f]
                checked += 1
                if expected == 0:
                    if lhs:
                        ok = False
                        witness = witness or (fam, x, lhs, expected)
                    continue
                dev = abs(Fraction(lhs) / expected - 1)
                if dev > worst:
                    worst = dev
                if dev > k * c:
                    ok = False
                    witness = witness or (fam, x, lhs, expected)
    return TypicalityReport(
        typical=ok, c=c, s=s, mode="blowup", checked=checked,
        worst_deviation=worst, witness=witness,
    )


def is_typical_coloured(
    g: ColouredMultigraph,
    c,
    s: int,
    budget: int = 200000,
    samples: int = 2000,
    seed: int | None = None,
) -> TypicalityReport:
    """Colour-weighted joint degrees track products of colour densities."""
    c = Fraction(c)
    n = g.n
    dens = g.density_vector()
    fsets = list(combinations(range(n), g.r - 1))
    # vertex profiles: for f and colour d, weight of f+v edges in colour d
    weight = {}
    for e, vec in g.mult:
        for f in combinations(e, g.r - 1):
            rest = (set(e) - set(f)).pop()
            weight[(f, rest)] = vec

    def joint(fam, cols) -> int:
        total = 0
        for v in range(n):
            prod_w = 1
            for f, d in zip(fam, cols):
                if v in f:
                    prod_w = 0
                    break
                vec = weight.get((f, v))
                if vec is None or not vec[d]:
                    prod_w = 0
                    break
                prod_w *= vec[d]
            total += prod_w
        return total

    def tuples():
        total = sum(
            (len(fsets) * g.colours) ** k for k in range(1, s + 1)
        )
        if total <= budget:
            for k in range(1, s + 1):
                for fam in product(fsets, repeat=k):
                    for cols in product(range(g.colours), repeat=k):
                        yield fam, cols
            return
        if seed is None:
            raise ValueError("sampling typicality requires an explicit seed")
        rng = SplitMix64(seed)
        for _ in range(samples):
            k = 1 + rng.randrange(s)
            fam = tuple(fsets[rng.randrange(len(fsets))] for _ in range(k))
            cols = tuple(rng.randrange(g.colours) for _ in range(k))
            yield fam, cols

    checked = 0
    worst = Fraction(0)
    witness = None
    ok = True
    for fam, cols in tuples():
        k = len(fam)
        lhs = joint(fam, cols)
        expected = Fraction(n)
        for d in cols:
            expected *= dens[d]
        checked += 1
        if expected == 0:
            if lhs:
                ok = False
                witness = witness or (fam, cols, lhs, expected)
            continue
        dev = abs(Fraction(lhs) / expected - 1)
        if dev > worst:
            worst = dev
        if dev > k * c:
            ok = False
            witness = witness or (fam, cols, lhs, expected)
    exact = sum((len(fsets) * g.colours) ** k for k in range(1, s + 1)) <= budget
    return TypicalityReport(
        typical=ok, c=c, s=s, mode="coloured", checked=checked,
        worst_deviation=worst, witness=witness, exact=exact,
    )


def is_typical_hp(
    g: Hypergraph,
    host_partition: Partition,
    h: Hypergraph,
    pattern_partition: Partition,
    c,
    s: int,
    budget: int = 200000,
) -> TypicalityReport:
    """Index-partite typicality: per-part joint neighbourhoods track the
    densities of the index classes hit, with both sides allowed to vanish
    when an index falls outside the pattern's realized index set."""
    from .core import index_set, partite_density

    c = Fraction(c)
    I = set(index_set(h, pattern_partition))
    dens = {i: partite_density(g, host_partition, i) for i in I}
    fsets = list(combinations(range(g.n), g.r - 1))
    nbhd = {f: frozenset(v for (v,) in g.neighbourhood(f)) for f in fsets}
    checked = 0
    worst = Fraction(0)
    witness = None
    ok = True
    total = sum(comb(len(fsets), k) for k in range(1, s + 1)) * host_partition.t
    if total > budget:
        raise ValueError("exact index-partite typicality above budget")
    basis = [
        tuple(1 if k == j else 0 for k in range(host_partition.t))
        for j in range(host_partition.t)
    ]
    for k in range(1, s + 1):
        for fam in combinations(fsets, k):
            for j in range(host_partition.t):
                idxs = []
                outside = False
                for f in fam:
                    i = tuple(
                        a + b
                        for a, b in zip(host_partition.index_vector(f), basis[j])
                    )
                    if i not in I:
                        outside = True
                        break
                    idxs.append(i)
                part = set(host_partition.parts[j])
                inter = part
                for f in fam:
                    inter = inter & nbhd[f]
                lhs = len(inter)
                checked += 1
                if outside:
                    if lhs:
                        ok = False
                        witness = witness or (fam, j, lhs, Fraction(0))
                    continue
                expected = Fraction(len(part))
                for i in idxs:
                    expected *= dens[i]
                if expected == 0:
                    if lhs:
                        ok = False
                        witness = witness or (fam, j, lhs, expected)
                    continue
                dev = abs(Fraction(lhs) / expected - 1)
                if dev > worst:
                    worst = dev
                if dev > k * c:
                    ok = False
                    witness = witness or (fam, j, lhs, expected)
    return TypicalityReport(
        typical=ok, c=c, s=s, mode="index-partite", checked=checked,
        worst_deviation=worst, witness=witness,
    )
