"""Smoke tests for the python bindings."""

import json

import pytest

import plumbline as pl


def test_en_bounds():
    assert pl.en_bound(2) == 21
    assert pl.en_bound(5) == 54
    assert pl.en_sphere_count(2) == 22
    with pytest.raises(pl.PlumblineError):
        pl.en_bound(1)


def test_tree_surface():
    tree = "0 1 0\n1 2 1\n"
    colours = pl.bicolour(tree)
    assert len(colours.splitlines()) == 2
    code = pl.canonical_code(tree)
    assert code == pl.canonical_code("5 3 0\n3 9 1\n")  # relabeled copy
    assert pl.lbtree_count(3) == 2
    assert pl.lbtree_count(4) == 5


def test_associated_link():
    pd = pl.associated_link_pd("0 1 0\n1 2 1\n")
    assert pl.component_count(pd) == 4
    svg = pl.associated_link_svg_text("0 1 0\n1 2 1\n")
    assert svg.startswith("<svg")


def test_invariants():
    hopf = pl.associated_link_pd("0\n")
    assert pl.bracket(hopf) == "-1*A^-4 - 1*A^4"
    assert "t^(" in pl.jones(hopf)


def test_certify_and_verify():
    cert_text = pl.certify("big_knot", u=21, manifold="K3")
    cert = json.loads(cert_text)
    assert cert["verdict"]["kind"] == "slice"
    outcome = pl.verify_certificate(cert_text)
    assert outcome["pass"]

    norman = json.loads(pl.certify("k", u=3, manifold="zero-sphere:2"))
    assert norman["verdict"]["kind"] == "genus-bound"
    assert norman["verdict"]["genus"] == 2

    declined = json.loads(pl.certify("far", c4=30, manifold="K3"))
    assert declined["verdict"]["kind"] == "not-certified"


def test_k3_plumbing_shape():
    text = pl.k3_plumbing_text()
    vertices = [line for line in text.splitlines() if line.startswith("vertex")]
    edges = [line for line in text.splitlines() if line.startswith("edge")]
    assert len(vertices) == 22
    assert len(edges) == 21
