import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from grassmann_star import GrassmannElement as G
from grassmann_star.boson import BosonPolynomial as P
from grassmann_star.boson import CutoffMismatch
from grassmann_star.susy import (
    RepresentationMismatch,
    SuperSymbol,
    associativity_residual,
    degeneracy_check,
    from_boson,
    from_grassmann,
    oracle_check,
    oracle_super_star,
    random_super_symbol,
    sl11_check,
    super_anticommutator,
    super_commutator,
    super_involution,
    super_multiply,
    super_star,
    supercharge_symbols,
    susy_report,
    to_json_dict,
)
from grassmann_star.star import StarKind, Product

h, qm, qp = supercharge_symbols()

coeffs = st.builds(complex, st.integers(-2, 2), st.integers(-2, 2))
polys = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), coeffs, max_size=3).map(P)
supers = st.dictionaries(st.sampled_from([0, 1, 2, 3]), polys, max_size=4).map(SuperSymbol)


def test_sl11_relations():
    assert super_anticommutator(qm, qp) == h
    assert super_star(qp, qp) == SuperSymbol()
    assert super_star(qm, qm) == SuperSymbol()
    assert super_commutator(h, qp) == SuperSymbol()
    assert super_commutator(h, qm) == SuperSymbol()


def test_hamiltonian_components():
    assert h.component(0) == P.z() * P.zb()
    assert h.component(3) == P.scalar(1)


def test_involution_pairs_supercharges():
    assert super_involution(qm) == qp
    assert super_involution(h) == h


@pytest.mark.parametrize("cutoff", [4, 12])
def test_sl11_report(cutoff):
    report = sl11_check(cutoff)
    assert report.passed
    assert all(c.residual == 0 for c in report.checks if c.id.startswith("poly/"))
    assert report["printed-labels"].informational


def test_degeneracy():
    assert degeneracy_check().passed


def test_tensor_product_oracle():
    assert oracle_check(8, seed=3).passed


def test_oracle_on_supercharges():
    got = oracle_super_star(qm, qp, 8)
    assert got.valid() < 8
    want = super_star(qm, qp).to_fock(8)
    rows = got.valid()
    for mask in range(4):
        a, b = got.component(mask), want.component(mask)
        assert np.abs((a.c - b.c)[: rows + 1]).max() < 1e-12


@given(supers, supers, supers)
def test_associative(x, y, w):
    assert super_star(super_star(x, y), w) == super_star(x, super_star(y, w))


def test_associative_random(rng):
    assert associativity_residual(rng, samples=10) < 1e-12


def test_fermionic_contraction_scales_with_hbar():
    fx, fy = from_grassmann(G.gen(1, "t1")), from_grassmann(G.gen(1, "tb1"))
    assert super_star(fx, fy, StarKind(Product.COHERENT, 0.0)) == super_multiply(fx, fy)
    assert super_star(fx, fy) == super_multiply(fx, fy) + from_boson(P.scalar(1))


def test_lifts():
    assert from_grassmann(G.monomial(1, "tb1 t1", 2)).component(3) == P.scalar(2)
    assert from_boson(P.z()).component(0) == P.z()
    with pytest.raises(ValueError):
        from_grassmann(G.gen(2, "t2"))


def test_representation_mismatch():
    with pytest.raises(RepresentationMismatch):
        super_star(h, h.to_fock(5))


def test_cutoff_mismatch():
    with pytest.raises(CutoffMismatch):
        super_star(h.to_fock(4), h.to_fock(5))


def test_json(rng):
    x = random_super_symbol(rng)
    data = json.loads(json.dumps(to_json_dict(x)))
    assert {p["mono"] for p in data["parts"]} <= {"", "tb1", "t1", "tb1 t1"}
    json.dumps(to_json_dict(x.to_fock(4)))


def test_susy_report():
    report = susy_report(12, seed=2)
    assert report.passed
    json.dumps(report.to_dict())
