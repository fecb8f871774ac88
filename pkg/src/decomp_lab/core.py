"""Canonical hypergraph, coloured multigraph, digraph and partition types.

Vertices are 0-based contiguous integers.  Unordered edges are stored as
sorted duplicate-free tuples, arcs as tuples of distinct vertices indexed by
position, and partial injections ("labelled edges") as tuples of
(label, vertex) pairs sorted by label.  All values are immutable after
construction and all operations are pure, so everything here is safe to
share across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from math import comb

# ---------------------------------------------------------------------------
# partial injections

Inj = tuple  # tuple[(label, vertex), ...] sorted by label

EMPTY_INJ: Inj = ()


def inj_from_pairs(pairs) -> Inj:
    items = tuple(sorted((int(a), int(b)) for a, b in pairs))
    labels = [a for a, _ in items]
    values = [b for _, b in items]
    if len(set(labels)) != len(labels):
        raise ValueError("duplicate labels in injection")
    if len(set(values)) != len(values):
        raise ValueError("map is not injective")
    return items


def inj_domain(psi: Inj) -> frozenset:
    return frozenset(a for a, _ in psi)


def inj_image(psi: Inj) -> frozenset:
    return frozenset(b for _, b in psi)


def inj_apply(psi: Inj, label: int) -> int:
    for a, b in psi:
        if a == label:
            return b
    raise KeyError(label)


def inj_restrict(psi: Inj, labels) -> Inj:
    labels = set(labels)
    return tuple((a, b) for a, b in psi if a in labels)


def inj_compose(outer: Inj, inner: Inj) -> Inj:
    """outer o inner, defined on inner's domain; Im(inner) must lie in Dom(outer)."""
    lookup = dict(outer)
    return tuple(sorted((a, lookup[b]) for a, b in inner))


def inj_extends(sup: Inj, sub: Inj) -> bool:
    """True when sup restricted to Dom(sub) equals sub."""
    lookup = dict(sup)
    return all(lookup.get(a) == b for a, b in sub)


def injections(i: int, n: int) -> list[tuple]:
    """All injections [i] -> [n] as value tuples, lexicographically sorted."""
    return sorted(permutations(range(n), i))


# ---------------------------------------------------------------------------
# partitions


@dataclass(frozen=True)
class Partition:
    """Partition of the ground set 0..n-1 into ordered parts."""

    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = set()
        for part in self.parts:
            for v in part:
                if v in seen:
                    raise ValueError(f"vertex {v} assigned to two parts")
                seen.add(v)
        if seen and seen != set(range(max(seen) + 1)):
            raise ValueError("parts must cover a contiguous 0-based ground set")

    @classmethod
    def from_lists(cls, parts) -> "Partition":
        return cls(tuple(tuple(sorted(int(v) for v in part)) for part in parts))

    @classmethod
    def trivial(cls, n: int) -> "Partition":
        return cls((tuple(range(n)),))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(tuple((v,) for v in range(n)))

    @property
    def t(self) -> int:
        return len(self.parts)

    @property
    def ground_size(self) -> int:
        return sum(len(p) for p in self.parts)

    def part_of(self, v: int) -> int:
        for j, part in enumerate(self.parts):
            if v in part:
                return j
        raise KeyError(v)

    def assignment(self) -> dict[int, int]:
        return {v: j for j, part in enumerate(self.parts) for v in part}

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    def index_vector(self, subset) -> tuple[int, ...]:
        """Per-part intersection counts of a vertex set."""
        s = set(subset)
        if not s <= set(self.assignment()):
            raise ValueError("subset outside the partition's ground set")
        return tuple(len(s & set(part)) for part in self.parts)

    def is_ordered_intervals(self) -> bool:
        """Parts are consecutive intervals in increasing order."""
        expected = 0
        for part in self.parts:
            for v in part:
                if v != expected:
                    return False
                expected += 1
        return True

    def to_json_dict(self) -> dict:
        return {"parts": [list(p) for p in self.parts]}

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Partition":
        return cls.from_lists(doc["parts"])


# ---------------------------------------------------------------------------
# plain hypergraphs


@dataclass(frozen=True)
class Hypergraph:
    """r-uniform hypergraph on 0..n-1 with canonically sorted edges."""

    n: int
    r: int
    edges: frozenset

    def __post_init__(self):
        if self.r <= 0:
            raise ValueError("uniformity must be positive")
        for e in self.edges:
            if len(e) != self.r or len(set(e)) != self.r:
                raise ValueError(f"edge {e} is not an {self.r}-set")
            if tuple(sorted(e)) != e:
                raise ValueError(f"edge {e} is not canonically sorted")
            if any(v < 0 or v >= self.n for v in e):
                raise ValueError(f"edge {e} has a vertex out of range")

    @classmethod
    def from_edges(cls, n: int, r: int, edges) -> "Hypergraph":
        return cls(n, r, frozenset(tuple(sorted(map(int, e))) for e in edges))

    @classmethod
    def complete(cls, n: int, r: int) -> "Hypergraph":
        return cls(n, r, frozenset(combinations(range(n), r)))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def density(self) -> Fraction:
        total = comb(self.n, self.r)
        return Fraction(len(self.edges), total) if total else Fraction(0)

    def sorted_edges(self) -> list[tuple]:
        return sorted(self.edges)

    def neighbourhood(self, e) -> set:
        """Sets f disjoint from e with e u f an edge."""
        e = tuple(sorted(set(e)))
        if any(v < 0 or v >= self.n for v in e):
            raise ValueError("vertex id out of range")
        if len(e) > self.r:
            return set()
        es = set(e)
        out = set()
        for edge in self.edges:
            if es <= set(edge):
                out.add(tuple(sorted(set(edge) - es)))
        return out

    def degree(self, e) -> int:
        return len(self.neighbourhood(e))

    def to_json_dict(self) -> dict:
        return {
            "type": "hypergraph",
            "n": self.n,
            "r": self.r,
            "edges": [list(e) for e in self.sorted_edges()],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Hypergraph":
        if doc.get("type") != "hypergraph":
            raise ValueError("not a hypergraph document")
        return cls.from_edges(doc["n"], doc["r"], doc["edges"])


def blowup(h: Hypergraph, sizes) -> tuple[Hypergraph, Partition]:
    """Replace vertex x by a class of sizes[x] vertices; edges become transversals."""
    sizes = [int(s) for s in sizes]
    if len(sizes) != h.n:
        raise ValueError("need one size per pattern vertex")
    if any(s <= 0 for s in sizes):
        raise ValueError("blowup classes must be nonempty")
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    classes = [tuple(range(offsets[x], offsets[x + 1])) for x in range(h.n)]
    edges = []
    for e in h.sorted_edges():
        for choice in product(*(classes[x] for x in e)):
            edges.append(tuple(sorted(choice)))
    return (
        Hypergraph.from_edges(offsets[-1], h.r, edges),
        Partition.from_lists(classes),
    )


# ---------------------------------------------------------------------------
# partite index machinery


def index_set(h: Hypergraph, p: Partition) -> tuple[tuple[int, ...], ...]:
    """Realized edge indices, in descending lexicographic order.

    Descending order puts the all-in-first-part index first, which matches
    the convention used by the worked degree-vector test values.
    """
    return tuple(sorted({p.index_vector(e) for e in h.edges}, reverse=True))


def pattern_degree_vector(h: Hypergraph, p: Partition, f, index) -> tuple[int, ...]:
    """Component i = number of index-i edges of h containing f."""
    f = set(f)
    counts = {i: 0 for i in index}
    for e in h.edges:
        if f <= set(e):
            i = p.index_vector(e)
            if i in counts:
                counts[i] += 1
    return tuple(counts[i] for i in index)


def host_degree_vector(g: Hypergraph, p_host: Partition, e, index) -> tuple[int, ...]:
    """Component i = number of index-i edges of g containing e."""
    return pattern_degree_vector(g, p_host, e, index)


def is_index_blowup(g: Hypergraph, p_host: Partition, index) -> tuple | None:
    """First host edge whose index falls outside the pattern's index set."""
    allowed = set(index)
    for e in sorted(g.edges):
        if p_host.index_vector(e) not in allowed:
            return e
    return None


def partite_density(g: Hypergraph, p_host: Partition, i) -> Fraction:
    """Edges of index i relative to the number of such transversal slots."""
    count = sum(1 for e in g.edges if p_host.index_vector(e) == tuple(i))
    slots = 1
    for j, size in enumerate(p_host.sizes()):
        slots *= comb(size, i[j])
    return Fraction(count, slots) if slots else Fraction(0)


# ---------------------------------------------------------------------------
# coloured multigraphs


@dataclass(frozen=True)
class ColouredMultigraph:
    """r-multigraph with [D]-coloured edges stored as multiplicity vectors."""

    n: int
    r: int
    colours: int
    mult: tuple  # tuple[(edge, tuple[int]*colours), ...] sorted by edge

    def __post_init__(self):
        for e, vec in self.mult:
            if len(e) != self.r or len(set(e)) != self.r or tuple(sorted(e)) != e:
                raise ValueError(f"bad edge {e}")
            if any(v < 0 or v >= self.n for v in e):
                raise ValueError(f"edge {e} out of range")
            if len(vec) != self.colours:
                raise ValueError("multiplicity vector has wrong length")
            if any(m < 0 for m in vec):
                raise ValueError("negative multiplicity")
            if not any(vec):
                raise ValueError("zero multiplicity vectors are not stored")

    @classmethod
    def from_dict(cls, n: int, r: int, colours: int, mult: dict) -> "ColouredMultigraph":
        items = []
        for e, vec in mult.items():
            vec = tuple(int(m) for m in vec)
            if any(vec):
                items.append((tuple(sorted(map(int, e))), vec))
        return cls(n, r, colours, tuple(sorted(items)))

    @classmethod
    def from_colour_classes(cls, n: int, r: int, colours: int, classes) -> "ColouredMultigraph":
        """classes[d] is an iterable of edges of colour d (repeats add up)."""
        mult: dict[tuple, list[int]] = {}
        for d, cl in enumerate(classes):
            for e in cl:
                key = tuple(sorted(map(int, e)))
                mult.setdefault(key, [0] * colours)[d] += 1
        return cls.from_dict(n, r, colours, mult)

    def multiplicity(self, e) -> tuple[int, ...]:
        key = tuple(sorted(map(int, e)))
        for edge, vec in self.mult:
            if edge == key:
                return vec
        return (0,) * self.colours

    def edges(self) -> list[tuple]:
        return [e for e, _ in self.mult]

    def size(self) -> int:
        """Total edge count, multiplicity-weighted."""
        return sum(sum(vec) for _, vec in self.mult)

    def colour_size(self, d: int) -> int:
        return sum(vec[d] for _, vec in self.mult)

    def degree_vector(self, e) -> tuple[int, ...]:
        """Component d = multiplicity-weighted number of colour-d edges over e."""
        es = set(e)
        if len(es) > self.r:
            return (0,) * self.colours
        out = [0] * self.colours
        for edge, vec in self.mult:
            if es <= set(edge):
                for d in range(self.colours):
                    out[d] += vec[d]
        return tuple(out)

    def density_vector(self) -> tuple[Fraction, ...]:
        total = comb(self.n, self.r)
        if not total:
            return (Fraction(0),) * self.colours
        return tuple(Fraction(self.colour_size(d), total) for d in range(self.colours))

    def density(self) -> Fraction:
        total = comb(self.n, self.r)
        return Fraction(self.size(), total) if total else Fraction(0)

    def to_json_dict(self) -> dict:
        return {
            "type": "coloured-multigraph",
            "n": self.n,
            "r": self.r,
            "colours": self.colours,
            "mult": {",".join(map(str, e)): list(vec) for e, vec in self.mult},
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "ColouredMultigraph":
        if doc.get("type") != "coloured-multigraph":
            raise ValueError("not a coloured-multigraph document")
        mult = {
            tuple(int(v) for v in key.split(",")): vec
            for key, vec in doc["mult"].items()
        }
        return cls.from_dict(doc["n"], doc["r"], doc["colours"], mult)


# ---------------------------------------------------------------------------
# digraphs


@dataclass(frozen=True)
class Digraph:
    """r-digraph: a set of arcs, each an injection [r] -> V given by its value tuple."""

    n: int
    r: int
    arcs: frozenset

    def __post_init__(self):
        for a in self.arcs:
            if len(a) != self.r or len(set(a)) != self.r:
                raise ValueError(f"arc {a} is not an injection")
            if any(v < 0 or v >= self.n for v in a):
                raise ValueError(f"arc {a} out of range")

    @classmethod
    def from_arcs(cls, n: int, r: int, arcs) -> "Digraph":
        return cls(n, r, frozenset(tuple(map(int, a)) for a in arcs))

    @classmethod
    def complete(cls, n: int, r: int) -> "Digraph":
        return cls(n, r, frozenset(permutations(range(n), r)))

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    def sorted_arcs(self) -> list[tuple]:
        return sorted(self.arcs)

    def is_simple(self) -> bool:
        """All arc image sets distinct."""
        images = [frozenset(a) for a in self.arcs]
        return len(set(images)) == len(images)

    def neighbourhood_count(self, partial: Inj) -> int:
        """Arcs agreeing with a partial position->vertex assignment."""
        return sum(1 for a in self.arcs if all(a[pos] == v for pos, v in partial))

    def degree_vector(self, psi) -> tuple[int, ...]:
        """Coordinate pi (injections [i]->[r], lex order): arcs with positions
        pi placed on the vertices psi."""
        psi = tuple(psi)
        i = len(psi)
        out = []
        for pi in injections(i, self.r):
            partial = tuple((pi[k], psi[k]) for k in range(i))
            out.append(self.neighbourhood_count(partial))
        return tuple(out)

    def to_json_dict(self) -> dict:
        return {
            "type": "digraph",
            "n": self.n,
            "r": self.r,
            "arcs": [list(a) for a in self.sorted_arcs()],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Digraph":
        if doc.get("type") != "digraph":
            raise ValueError("not a digraph document")
        return cls.from_arcs(doc["n"], doc["r"], doc["arcs"])


@dataclass(frozen=True)
class ColouredMultidigraph:
    """[D]-coloured r-multidigraph: arc -> multiplicity vector."""

    n: int
    r: int
    colours: int
    mult: tuple  # tuple[(arc, tuple[int]*colours), ...] sorted

    def __post_init__(self):
        for a, vec in self.mult:
            if len(a) != self.r or len(set(a)) != self.r:
                raise ValueError(f"bad arc {a}")
            if any(v < 0 or v >= self.n for v in a):
                raise ValueError(f"arc {a} out of range")
            if len(vec) != self.colours or any(m < 0 for m in vec) or not any(vec):
                raise ValueError("bad multiplicity vector")

    @classmethod
    def from_dict(cls, n: int, r: int, colours: int, mult: dict) -> "ColouredMultidigraph":
        items = []
        for a, vec in mult.items():
            vec = tuple(int(m) for m in vec)
            if any(vec):
                items.append((tuple(map(int, a)), vec))
        return cls(n, r, colours, tuple(sorted(items)))

    @classmethod
    def from_colour_classes(cls, n: int, r: int, colours: int, classes) -> "ColouredMultidigraph":
        mult: dict[tuple, list[int]] = {}
        for d, cl in enumerate(classes):
            for a in cl:
                key = tuple(map(int, a))
                mult.setdefault(key, [0] * colours)[d] += 1
        return cls.from_dict(n, r, colours, mult)

    def multiplicity(self, a) -> tuple[int, ...]:
        key = tuple(map(int, a))
        for arc, vec in self.mult:
            if arc == key:
                return vec
        return (0,) * self.colours

    def arcs(self) -> list[tuple]:
        return [a for a, _ in self.mult]

    def colour_size(self, d: int) -> int:
        return sum(vec[d] for _, vec in self.mult)

    def size(self) -> int:
        return sum(sum(vec) for _, vec in self.mult)

    def colour_class(self, d: int) -> list[tuple]:
        return [a for a, vec in self.mult if vec[d]]

    def degree_vector(self, psi) -> tuple[int, ...]:
        """Coordinates (d, pi) with d major, pi in lex order over injections
        [i]->[r]; entry = multiplicity-weighted arcs of colour d through the
        placement pi -> psi."""
        psi = tuple(psi)
        i = len(psi)
        pis = injections(i, self.r)
        out = []
        for d in range(self.colours):
            for pi in pis:
                total = 0
                for a, vec in self.mult:
                    if vec[d] and all(a[pi[k]] == psi[k] for k in range(i)):
                        total += vec[d]
                out.append(total)
        return tuple(out)

    def to_json_dict(self) -> dict:
        return {
            "type": "coloured-multidigraph",
            "n": self.n,
            "r": self.r,
            "colours": self.colours,
            "mult": {",".join(map(str, a)): list(vec) for a, vec in self.mult},
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "ColouredMultidigraph":
        if doc.get("type") != "coloured-multidigraph":
            raise ValueError("not a coloured-multidigraph document")
        mult = {
            tuple(int(v) for v in key.split(",")): vec
            for key, vec in doc["mult"].items()
        }
        return cls.from_dict(doc["n"], doc["r"], doc["colours"], mult)


# ---------------------------------------------------------------------------
# canonical JSON

def dumps_canonical(doc: dict) -> str:
    """Byte-stable serialization: sorted keys, fixed separators."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def loads(text: str) -> dict:
    return json.loads(text)
