"""Exact-cover solver: search, counting, verification, integral oracle."""

import random

import pytest

from decomp_lab.core import (
    ColouredMultigraph,
    Digraph,
    Hypergraph,
    Partition,
)
from decomp_lab.encodings import (
    sudoku_host,
    sudoku_pattern,
    tight_cycle,
    triangle_host,
    triangle_pattern,
)
from decomp_lab.solver import (
    BudgetExceeded,
    Certificate,
    count_decompositions,
    enumerate_copies,
    find_decomposition,
    integral_decomposition_exists,
    verify_certificate,
)

TRIANGLE = Hypergraph.complete(3, 2)


def test_enumerate_copies_counts():
    table = enumerate_copies(Hypergraph.complete(7, 2), TRIANGLE)
    assert len(table.footprints) == 35
    assert all(m == 6 for m in table.multiplicities)  # labelled embeddings
    host, hpart = sudoku_host(2)
    sp, spart = sudoku_pattern()
    table2 = enumerate_copies(host, sp, (spart, hpart))
    assert len(table2.footprints) == 64
    kd3 = Digraph.complete(3, 2)
    table3 = enumerate_copies(kd3, tight_cycle(3, 2))
    assert len(table3.footprints) == 2  # the two orientations


def test_enumerate_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_copies(Hypergraph.complete(9, 2), TRIANGLE, budget=10)


def test_find_fano_plane():
    res = find_decomposition(Hypergraph.complete(7, 2), TRIANGLE)
    assert res.found
    assert len(res.certificate.embeddings) == 7
    assert verify_certificate(Hypergraph.complete(7, 2), TRIANGLE, res.certificate).valid


def test_proven_none_is_exhaustive():
    res = find_decomposition(Hypergraph.complete(5, 2), TRIANGLE)
    assert res.status == "none"


def test_determinism():
    a = find_decomposition(Hypergraph.complete(9, 2), TRIANGLE)
    b = find_decomposition(Hypergraph.complete(9, 2), TRIANGLE)
    assert a.certificate.embeddings == b.certificate.embeddings
    assert a.nodes == b.nodes


def test_timeout_and_resume_reproduce_uninterrupted_run():
    host = Hypergraph.complete(13, 2)
    full = find_decomposition(host, TRIANGLE)
    assert full.found
    partial = find_decomposition(host, TRIANGLE, node_budget=10)
    assert partial.status == "timeout"
    assert partial.frontier is not None
    resumed = find_decomposition(host, TRIANGLE, resume=partial.frontier)
    assert resumed.found
    assert resumed.certificate.embeddings == full.certificate.embeddings


def test_count_consistency_with_find():
    for n in (5, 6, 7):
        host = Hypergraph.complete(n, 2)
        count = count_decompositions(host, TRIANGLE)
        found = find_decomposition(host, TRIANGLE).found
        assert (count >= 1) == found


def test_count_worked_values():
    assert count_decompositions(Hypergraph.complete(7, 2), TRIANGLE) == 30
    host, hpart = triangle_host(3)
    tri, tpart = triangle_pattern()
    assert count_decompositions(host, tri, (tpart, hpart)) == 12
    kd3 = Digraph.complete(3, 2)
    res = find_decomposition(kd3, tight_cycle(3, 2))
    assert res.found and len(res.certificate.embeddings) == 2


def test_verify_rejects_missing_and_duplicated_copies():
    host = Hypergraph.complete(7, 2)
    res = find_decomposition(host, TRIANGLE)
    cert = res.certificate
    missing = Certificate(
        footprint_indices=[], embeddings=cert.embeddings[:-1]
    )
    rep = verify_certificate(host, TRIANGLE, missing)
    assert not rep.valid and rep.deficit
    doubled = Certificate(
        footprint_indices=[], embeddings=cert.embeddings + [cert.embeddings[0]]
    )
    rep2 = verify_certificate(host, TRIANGLE, doubled)
    assert not rep2.valid and rep2.surplus


def test_verify_checks_partite_constraint():
    host, hpart = triangle_host(2)
    tri, tpart = triangle_pattern()
    res = find_decomposition(host, tri, (tpart, hpart))
    assert res.found
    # swap two images: breaks the part assignment
    p, images = res.certificate.embeddings[0]
    broken = Certificate(
        footprint_indices=[],
        embeddings=[(p, (images[1], images[0], images[2]))]
        + res.certificate.embeddings[1:],
    )
    rep = verify_certificate(host, tri, broken, (tpart, hpart))
    assert not rep.valid


def test_multiplicity_host_decomposition():
    doubled = ColouredMultigraph.from_dict(
        6, 2, 1, {e: (2,) for e in Hypergraph.complete(6, 2).sorted_edges()}
    )
    ctri = ColouredMultigraph.from_dict(
        3, 2, 1, {e: (1,) for e in TRIANGLE.sorted_edges()}
    )
    res = find_decomposition(doubled, ctri)
    assert res.found
    assert len(res.certificate.embeddings) == 10
    assert verify_certificate(doubled, ctri, res.certificate).valid
    # footprints in a decomposition are distinct triangles
    fps = {tuple(sorted(images)) for _, images in res.certificate.embeddings}
    assert len(fps) == 10


def test_integral_examples():
    ok5, _ = integral_decomposition_exists(Hypergraph.complete(5, 2), TRIANGLE)
    assert not ok5
    ok7, wit7 = integral_decomposition_exists(Hypergraph.complete(7, 2), TRIANGLE)
    assert ok7
    table = enumerate_copies(Hypergraph.complete(7, 2), TRIANGLE)
    cover = [0] * len(table.atoms)
    for idx, w in wit7:
        for c in table.footprints[idx]:
            cover[c] += w
    assert cover == table.capacities
    doubled = ColouredMultigraph.from_dict(
        6, 2, 1, {e: (2,) for e in Hypergraph.complete(6, 2).sorted_edges()}
    )
    ctri = ColouredMultigraph.from_dict(
        3, 2, 1, {e: (1,) for e in TRIANGLE.sorted_edges()}
    )
    ok6, _ = integral_decomposition_exists(doubled, ctri)
    assert ok6


def test_find_implies_integral_on_random_subgraphs():
    rng = random.Random(13)
    edges = Hypergraph.complete(6, 2).sorted_edges()
    for _ in range(30):
        sub = [e for e in edges if rng.random() < 0.6]
        g = Hypergraph.from_edges(6, 2, sub)
        res = find_decomposition(g, TRIANGLE, timeout=10)
        assert res.status in ("found", "none")
        if res.found:
            ok, _ = integral_decomposition_exists(g, TRIANGLE)
            assert ok
            assert verify_certificate(g, TRIANGLE, res.certificate).valid


def test_certificate_json_roundtrip():
    res = find_decomposition(Hypergraph.complete(7, 2), TRIANGLE)
    doc = res.certificate.to_json_dict()
    again = Certificate.from_json_dict(doc)
    assert again.embeddings == res.certificate.embeddings
