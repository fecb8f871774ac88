"""Design equivalences: Latin squares, Sudoku, resolvable triple systems,
large sets, plus pattern constructors (tight cycles, rainbow families,
labelled-edge lifts).

All encoders are bijections on valid inputs and reject invalid ones with
the violated clause; each design kind has an independent verifier that
never trusts solver output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb

from .core import (
    ColouredMultigraph,
    Digraph,
    Hypergraph,
    Partition,
    blowup,
)


# ---------------------------------------------------------------------------
# grids


@dataclass(frozen=True)
class LatinSquare:
    """Order-n grid over symbols 0..n-1, one per row and column."""

    grid: tuple

    @classmethod
    def from_rows(cls, rows) -> "LatinSquare":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @property
    def order(self) -> int:
        return len(self.grid)

    def validate(self) -> None:
        n = self.order
        for i, row in enumerate(self.grid):
            if len(row) != n:
                raise ValueError(f"row {i} has length {len(row)}, expected {n}")
            if sorted(row) != list(range(n)):
                raise ValueError(f"row {i} does not use every symbol once")
        for j in range(n):
            col = [self.grid[i][j] for i in range(n)]
            if sorted(col) != list(range(n)):
                raise ValueError(f"column {j} does not use every symbol once")

    def to_text(self) -> str:
        return "\n".join(" ".join(map(str, row)) for row in self.grid)

    @classmethod
    def from_text(cls, text: str) -> "LatinSquare":
        rows = [line.split() for line in text.strip().splitlines()]
        return cls.from_rows(rows)


@dataclass(frozen=True)
class SudokuGrid:
    """Latin square of order n^2 whose n x n aligned boxes each use every
    symbol once."""

    box_order: int
    grid: tuple

    @classmethod
    def from_rows(cls, box_order: int, rows) -> "SudokuGrid":
        return cls(box_order, tuple(tuple(int(x) for x in row) for row in rows))

    @property
    def order(self) -> int:
        return self.box_order * self.box_order

    def validate(self) -> None:
        n = self.box_order
        LatinSquare(self.grid).validate()
        if len(self.grid) != n * n:
            raise ValueError("grid size does not match the box order")
        for bi in range(n):
            for bj in range(n):
                box = [
                    self.grid[bi * n + i][bj * n + j]
                    for i in range(n)
                    for j in range(n)
                ]
                if sorted(box) != list(range(n * n)):
                    raise ValueError(f"box ({bi},{bj}) does not use every symbol once")

    def to_text(self) -> str:
        return "\n".join(" ".join(map(str, row)) for row in self.grid)

    @classmethod
    def from_text(cls, box_order: int, text: str) -> "SudokuGrid":
        rows = [line.split() for line in text.strip().splitlines()]
        return cls.from_rows(box_order, rows)


# ---------------------------------------------------------------------------
# certificates


@dataclass
class DesignCertificate:
    kind: str
    blocks: list  # vertex tuples
    classes: list | None = None  # grouping of block indices (classes/systems)

    def to_json_dict(self) -> dict:
        doc = {"type": "design-certificate", "kind": self.kind,
               "blocks": [list(b) for b in self.blocks]}
        if self.classes is not None:
            doc["classes"] = [list(c) for c in self.classes]
        return doc

    @classmethod
    def from_json_dict(cls, doc: dict) -> "DesignCertificate":
        if doc.get("type") != "design-certificate":
            raise ValueError("not a design-certificate document")
        return cls(
            kind=doc["kind"],
            blocks=[tuple(b) for b in doc["blocks"]],
            classes=[list(c) for c in doc["classes"]] if "classes" in doc else None,
        )


# ---------------------------------------------------------------------------
# Latin squares <-> partite triangle decompositions


def triangle_pattern() -> tuple[Hypergraph, Partition]:
    return Hypergraph.complete(3, 2), Partition.singletons(3)


def triangle_host(n: int) -> tuple[Hypergraph, Partition]:
    """Complete tripartite graph with parts rows, columns, symbols."""
    return blowup(Hypergraph.complete(3, 2), [n, n, n])


def latin_encode(square: LatinSquare):
    """Cells to partite triangles: cell (i, j) = s becomes {row i, col j, sym s}."""
    square.validate()
    n = square.order
    blocks = []
    for i in range(n):
        for j in range(n):
            s = square.grid[i][j]
            blocks.append(tuple(sorted((i, n + j, 2 * n + s))))
    return DesignCertificate(kind="latin-triangles", blocks=sorted(blocks))


def latin_decode(cert: DesignCertificate, n: int) -> LatinSquare:
    if cert.kind != "latin-triangles":
        raise ValueError("certificate kind mismatch")
    if len(cert.blocks) != n * n:
        raise ValueError(f"expected {n * n} triangles, got {len(cert.blocks)}")
    grid = [[None] * n for _ in range(n)]
    for block in cert.blocks:
        if len(block) != 3:
            raise ValueError(f"block {block} is not a triangle")
        rows = [v for v in block if 0 <= v < n]
        cols = [v - n for v in block if n <= v < 2 * n]
        syms = [v - 2 * n for v in block if 2 * n <= v < 3 * n]
        if len(rows) != 1 or len(cols) != 1 or len(syms) != 1:
            raise ValueError(f"block {block} is not transversal to the parts")
        i, j, s = rows[0], cols[0], syms[0]
        if grid[i][j] is not None:
            raise ValueError(f"cell ({i},{j}) covered twice")
        grid[i][j] = s
    square = LatinSquare.from_rows(grid)
    square.validate()
    return square


def mols_pattern() -> tuple[Hypergraph, Partition]:
    return Hypergraph.complete(4, 2), Partition.singletons(4)


def mols_host(n: int) -> tuple[Hypergraph, Partition]:
    return blowup(Hypergraph.complete(4, 2), [n, n, n, n])


def mols_encode(first: LatinSquare, second: LatinSquare) -> DesignCertificate:
    """Orthogonal pair to partite 4-cliques: cell (i, j) becomes
    {row i, col j, sym1, sym2}; orthogonality means every symbol pair
    appears exactly once."""
    first.validate()
    second.validate()
    n = first.order
    if second.order != n:
        raise ValueError("orders differ")
    seen = set()
    blocks = []
    for i in range(n):
        for j in range(n):
            pair = (first.grid[i][j], second.grid[i][j])
            if pair in seen:
                raise ValueError(f"symbol pair {pair} appears twice; squares not orthogonal")
            seen.add(pair)
            blocks.append(
                tuple(sorted((i, n + j, 2 * n + pair[0], 3 * n + pair[1])))
            )
    return DesignCertificate(kind="mols-cliques", blocks=sorted(blocks))


def mols_decode(cert: DesignCertificate, n: int) -> tuple[LatinSquare, LatinSquare]:
    if cert.kind != "mols-cliques":
        raise ValueError("certificate kind mismatch")
    g1 = [[None] * n for _ in range(n)]
    g2 = [[None] * n for _ in range(n)]
    for block in cert.blocks:
        parts = [[], [], [], []]
        for v in block:
            parts[v // n].append(v % n)
        if any(len(p) != 1 for p in parts):
            raise ValueError(f"block {block} is not transversal to the parts")
        i, j, s1, s2 = (p[0] for p in parts)
        if g1[i][j] is not None:
            raise ValueError(f"cell ({i},{j}) covered twice")
        g1[i][j], g2[i][j] = s1, s2
    first, second = LatinSquare.from_rows(g1), LatinSquare.from_rows(g2)
    mols_encode(first, second)  # revalidates Latin + orthogonality
    return first, second


# ---------------------------------------------------------------------------
# Sudoku <-> 4-graph blowup decompositions


def sudoku_pattern() -> tuple[Hypergraph, Partition]:
    """Six-vertex 4-graph: vertices (x1,x2,y1,y2,z1,z2) = 0..5 and edges
    rows-cols, rows-syms, cols-syms, box-syms."""
    edges = [(0, 1, 2, 3), (0, 1, 4, 5), (2, 3, 4, 5), (0, 2, 4, 5)]
    return Hypergraph.from_edges(6, 4, edges), Partition.singletons(6)


def sudoku_host(n: int) -> tuple[Hypergraph, Partition]:
    h, _ = sudoku_pattern()
    return blowup(h, [n] * 6)


def sudoku_encode(grid: SudokuGrid) -> DesignCertificate:
    """Cells to pattern copies: row (a1,a2), column (b1,b2), symbol (c1,c2),
    box (a1,b1); blocks store the six part-offset images."""
    grid.validate()
    n = grid.box_order
    blocks = []
    for row in range(n * n):
        for col in range(n * n):
            sym = grid.grid[row][col]
            a1, a2 = divmod(row, n)
            b1, b2 = divmod(col, n)
            c1, c2 = divmod(sym, n)
            blocks.append(
                (a1, n + a2, 2 * n + b1, 3 * n + b2, 4 * n + c1, 5 * n + c2)
            )
    return DesignCertificate(kind="sudoku-copies", blocks=sorted(blocks))


def sudoku_decode(cert: DesignCertificate, box_order: int) -> SudokuGrid:
    if cert.kind != "sudoku-copies":
        raise ValueError("certificate kind mismatch")
    n = box_order
    grid = [[None] * (n * n) for _ in range(n * n)]
    for block in cert.blocks:
        if len(block) != 6:
            raise ValueError(f"block {block} is not a six-vertex copy")
        offs = [v // n for v in block]
        vals = [v % n for v in block]
        if offs != [0, 1, 2, 3, 4, 5]:
            raise ValueError(f"block {block} is not transversal to the parts")
        a1, a2, b1, b2, c1, c2 = vals
        row, col, sym = a1 * n + a2, b1 * n + b2, c1 * n + c2
        if grid[row][col] is not None:
            raise ValueError(f"cell ({row},{col}) covered twice")
        grid[row][col] = sym
    out = SudokuGrid.from_rows(n, grid)
    out.validate()
    return out


# ---------------------------------------------------------------------------
# resolvable triple systems and large sets


@dataclass
class PartiteInstance:
    host: Hypergraph
    host_partition: Partition
    pattern: Hypergraph
    pattern_partition: Partition
    kind: str = ""


def resolvable_sts_instance(n: int) -> PartiteInstance:
    """Host whose partite 4-clique decompositions are the resolvable triple
    systems of order n: point part of size n, class part of size (n-1)/2,
    edges all pairs not inside the class part."""
    if n % 6 != 3:
        raise ValueError("resolvable instances need n congruent to 3 mod 6")
    classes = (n - 1) // 2
    total = n + classes
    edges = [e for e in combinations(range(total), 2) if e[0] < n]
    return PartiteInstance(
        host=Hypergraph.from_edges(total, 2, edges),
        host_partition=Partition.from_lists([range(n), range(n, total)]),
        pattern=Hypergraph.complete(4, 2),
        pattern_partition=Partition.from_lists([[0, 1, 2], [3]]),
        kind="resolvable-sts",
    )


def extract_resolvable(embeddings, n: int) -> DesignCertificate:
    """Copies (images of pattern vertices 0..3) to triples grouped into
    parallel classes by the image of vertex 3."""
    blocks = []
    labels = []
    for images in embeddings:
        triple = tuple(sorted(images[:3]))
        blocks.append(triple)
        labels.append(images[3])
    order = sorted(range(len(blocks)), key=lambda k: (labels[k], blocks[k]))
    blocks = [blocks[k] for k in order]
    labels = [labels[k] for k in order]
    classes: dict[int, list[int]] = {}
    for idx, y in enumerate(labels):
        classes.setdefault(y, []).append(idx)
    return DesignCertificate(
        kind="resolvable-sts",
        blocks=blocks,
        classes=[classes[y] for y in sorted(classes)],
    )


def verify_resolvable(cert: DesignCertificate, n: int) -> bool:
    """Blocks form a triple system on 0..n-1 and the classes partition them
    into perfect matchings."""
    if cert.kind != "resolvable-sts" or cert.classes is None:
        return False
    pair_seen = set()
    for block in cert.blocks:
        if len(block) != 3 or len(set(block)) != 3:
            return False
        if not all(0 <= v < n for v in block):
            return False
        for pair in combinations(sorted(block), 2):
            if pair in pair_seen:
                return False
            pair_seen.add(pair)
    if len(pair_seen) != comb(n, 2):
        return False
    covered = sorted(i for cls in cert.classes for i in cls)
    if covered != list(range(len(cert.blocks))):
        return False
    for cls in cert.classes:
        verts = [v for i in cls for v in cert.blocks[i]]
        if sorted(verts) != list(range(n)):
            return False
    return True


def resolvable_to_embeddings(cert: DesignCertificate, n: int) -> list[tuple]:
    """Inverse direction: parallel classes back to partite 4-clique copies."""
    if not verify_resolvable(cert, n):
        raise ValueError("not a valid resolvable triple system certificate")
    out = []
    for label, cls in enumerate(cert.classes):
        y = n + label
        for idx in cls:
            triple = cert.blocks[idx]
            out.append((triple[0], triple[1], triple[2], y))
    return sorted(out)


def large_set_instance(n: int) -> PartiteInstance:
    """Host whose partite complete-4-block decompositions are the partitions
    of all triples on n points into n-2 disjoint triple systems."""
    if n % 6 not in (1, 3):
        raise ValueError("large-set instances need n congruent to 1 or 3 mod 6")
    total = n + (n - 2)
    edges = [
        e
        for e in combinations(range(total), 3)
        if sum(1 for v in e if v < n) >= 2
    ]
    return PartiteInstance(
        host=Hypergraph.from_edges(total, 3, edges),
        host_partition=Partition.from_lists([range(n), range(n, total)]),
        pattern=Hypergraph.complete(4, 3),
        pattern_partition=Partition.from_lists([[0, 1, 2], [3]]),
        kind="large-set",
    )


def extract_large_set(embeddings, n: int) -> DesignCertificate:
    """Copies to triples grouped into systems by the image of vertex 3."""
    blocks = []
    labels = []
    for images in embeddings:
        blocks.append(tuple(sorted(images[:3])))
        labels.append(images[3])
    order = sorted(range(len(blocks)), key=lambda k: (labels[k], blocks[k]))
    blocks = [blocks[k] for k in order]
    labels = [labels[k] for k in order]
    systems: dict[int, list[int]] = {}
    for idx, y in enumerate(labels):
        systems.setdefault(y, []).append(idx)
    return DesignCertificate(
        kind="large-set",
        blocks=blocks,
        classes=[systems[y] for y in sorted(systems)],
    )


def verify_large_set(cert: DesignCertificate, n: int) -> bool:
    """n-2 pairwise block-disjoint triple systems covering every triple."""
    if cert.kind != "large-set" or cert.classes is None:
        return False
    if len(cert.classes) != n - 2:
        return False
    covered = sorted(i for cls in cert.classes for i in cls)
    if covered != list(range(len(cert.blocks))):
        return False
    all_triples = set()
    for block in cert.blocks:
        if len(block) != 3 or not all(0 <= v < n for v in block):
            return False
        key = tuple(sorted(block))
        if key in all_triples:
            return False
        all_triples.add(key)
    if len(all_triples) != comb(n, 3):
        return False
    for cls in cert.classes:
        pair_seen = set()
        for i in cls:
            for pair in combinations(sorted(cert.blocks[i]), 2):
                if pair in pair_seen:
                    return False
                pair_seen.add(pair)
        if len(pair_seen) != comb(n, 2):
            return False
    return True


def large_set_to_embeddings(cert: DesignCertificate, n: int) -> list[tuple]:
    if not verify_large_set(cert, n):
        raise ValueError("not a valid large-set certificate")
    out = []
    for label, cls in enumerate(cert.classes):
        y = n + label
        for idx in cls:
            triple = cert.blocks[idx]
            out.append((triple[0], triple[1], triple[2], y))
    return sorted(out)


# ---------------------------------------------------------------------------
# pattern constructors


def tight_cycle(q: int, r: int) -> Digraph:
    """q arcs on q vertices, arc j reading (j, j+1, ..., j+r-1) mod q;
    simple exactly because q > r."""
    if not q > r >= 2:
        raise ValueError("tight cycles need q > r >= 2")
    arcs = [tuple((i + j) % q for i in range(r)) for j in range(q)]
    return Digraph.from_arcs(q, r, arcs)


def rainbow_family(colours: int) -> list[ColouredMultigraph]:
    """All triangles on three vertices whose edges carry three distinct
    colours; one pattern per labelled colour assignment."""
    if colours < 3:
        raise ValueError("rainbow triangles need at least three colours")
    edges = [(0, 1), (0, 2), (1, 2)]
    out = []
    for assignment in permutations(range(colours), 3):
        classes: list[list] = [[] for _ in range(colours)]
        for e, d in zip(edges, assignment):
            classes[d].append(e)
        out.append(ColouredMultigraph.from_colour_classes(3, 2, colours, classes))
    return out


def lift_edge(e, q: int, mode: str = "unordered") -> list[tuple]:
    """Labelled-edge lifts of one edge or arc.

    unordered: all (q)_r placements of the r-set onto label subsets;
    ordered: the binom(q, r) order-preserving placements of the arc.
    Returns injections as sorted (label, vertex) pair tuples.
    """
    e = tuple(e)
    r = len(e)
    if r > q:
        raise ValueError("edge size exceeds the label count")
    out = []
    if mode == "unordered":
        if len(set(e)) != r:
            raise ValueError("edge vertices must be distinct")
        for labels in combinations(range(q), r):
            for img in permutations(e):
                out.append(tuple(zip(labels, img)))
    elif mode == "ordered":
        for labels in combinations(range(q), r):
            out.append(tuple(zip(labels, e)))
    else:
        raise ValueError("mode must be 'unordered' or 'ordered'")
    return sorted(out)


def lift_host(g, q: int):
    """Disjoint-union lift of a whole host: edge/arc -> its labelled edges."""
    if isinstance(g, Hypergraph):
        return {e: lift_edge(e, q, "unordered") for e in g.sorted_edges()}
    if isinstance(g, Digraph):
        return {a: lift_edge(a, q, "ordered") for a in g.sorted_arcs()}
    raise TypeError("lift_host expects a hypergraph or digraph")
