"""The fourteen acceptance criteria, one test each.

Every test records a ``criterion N: PASS|FAIL ...`` line that is printed
in the terminal summary. Criteria 6 and 11 fail: see the README.
"""

import itertools

import numpy as np

from conftest import ACCEPTANCE
from grassmann_star import boson, susy
from grassmann_star import covariance as cov
from grassmann_star.coherent import coherent_overlap_check
from grassmann_star.fock import oracle_star
from grassmann_star.grassmann import multiply, random_element
from grassmann_star.oscillator import ladder_relations_check, su2_star_check
from grassmann_star.star import COHERENT, SYMMETRIC, Product, StarKind, star
from grassmann_star.suites import exhaustive_associativity, intertwining_residual, star_relations

SEED = 20261017


def record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  [{detail}]"
    ACCEPTANCE.append(line)
    print(line)
    assert ok, line


def gaussian_integer_element(n, rng):
    return random_element(n, rng, integer=True)


def test_criterion_01_minimal_relations():
    report = star_relations(3, COHERENT)
    r = report["products"].residual
    record(1, "generator star products at N=3, exact", r == 0, f"residual {r:.1e}")


def test_criterion_02_anticommutators_nilpotency():
    report = star_relations(3, COHERENT)
    a, nil = report["anticommutators"].residual, report["nilpotency"].residual
    record(2, "star anticommutators and nilpotency at N=3, exact", a == 0 and nil == 0,
           f"anticommutators {a:.1e}, nilpotency {nil:.1e}")


def test_criterion_03_oracle_equivalence():
    rng = np.random.default_rng(SEED)
    worst = {}
    for n in (1, 2, 3):
        worst[n] = max((star(a, b) - oracle_star(a, b)).norm()
                       for a, b in ((random_element(n, rng), random_element(n, rng)) for _ in range(500)))
    ok = all(w < 1e-12 for w in worst.values())
    record(3, "star = symbol of operator product, 500 pairs at N=1,2,3, < 1e-12", ok,
           ", ".join(f"N={n}: {w:.1e}" for n, w in worst.items()))


def test_criterion_04_associativity():
    rng = np.random.default_rng(SEED)
    results = {}
    for name, kind in (("coherent", COHERENT), ("symmetric", SYMMETRIC)):
        results[f"{name} N=2 exhaustive"] = exhaustive_associativity(2, kind)
        worst = 0.0
        for _ in range(200):
            a, b, c = (random_element(3, rng) for _ in range(3))
            worst = max(worst, (star(star(a, b, kind), c, kind) - star(a, star(b, c, kind), kind)).norm())
        results[f"{name} N=3 random"] = worst
    results["superstar polynomial"] = susy.associativity_residual(rng, samples=200)
    fock = 0.0
    for _ in range(50):
        x, y, w = (susy.random_super_symbol(rng).to_fock(boson.DEFAULT_CUTOFF) for _ in range(3))
        lhs = susy.super_star(susy.super_star(x, y), w)
        rhs = susy.super_star(x, susy.super_star(y, w))
        fock = max(fock, susy._residual(lhs, rhs) / max(1.0, lhs.norm()))
    results["superstar below cutoff (relative)"] = fock
    ok = all(v < 1e-12 for v in results.values())
    record(4, "associativity of both products and the superstar, < 1e-12", ok,
           ", ".join(f"{k}: {v:.1e}" for k, v in results.items()))


def test_criterion_05_resolution_and_overlap():
    res = {n: coherent_overlap_check(n) for n in (1, 2)}
    ok = all(r.passed and all(c.residual == 0 for c in r.checks) for r in res.values())
    record(5, "resolution of identity and coherent overlap at N=1,2, exact", ok,
           ", ".join(f"N={n}: {max(c.residual for c in r.checks):.1e}" for n, r in res.items()))


def test_criterion_06_covariance():
    rng = np.random.default_rng(SEED)
    worst, worst_sym = {}, {}
    for n in (2, 3):
        alphas = [cov.random_alpha(n, rng) for _ in range(50)]
        worst[n] = max(cov.covariance_residual(a) for a in alphas)
        worst_sym[n] = max(cov.covariance_residual(a, SYMMETRIC) for a in alphas)
    witness = cov.check_covariance(cov.quartic_witness(2), cov.quartic_witness_input(2))
    ok = all(w < 1e-10 for w in worst.values()) and witness > 1e-3
    detail = (", ".join(f"N={n}: {w:.2e}" for n, w in worst.items())
              + f"; witness {witness:.2e}"
              + "; symmetric product for reference " + ", ".join(f"N={n}: {w:.1e}" for n, w in worst_sym.items()))
    record(6, "canonical covariance for 50 random alpha at N=2,3 < 1e-10, quartic witness > 1e-3", ok, detail)


def test_criterion_07_bogoliubov():
    rng = np.random.default_rng(SEED)
    oracle, canonical = 0.0, 0.0
    for n in (1, 2, 3):
        for _ in range(50):
            a = cov.random_alpha(n, rng)
            oracle = max(oracle, cov.bogoliubov_oracle_residual(a))
            canonical = max(canonical, cov.bogoliubov_from_alpha(a).canonical_residual())
    ok = oracle < 1e-10 and canonical < 1e-10
    record(7, "U, V against oracle conjugation and canonical invariants, N<=3, < 1e-10", ok,
           f"oracle {oracle:.1e}, canonical {canonical:.1e}")


def test_criterion_08_derivation_bracket():
    rng = np.random.default_rng(SEED)
    lams = [cov.lambda_from_alpha(cov.random_alpha(2, rng)) for _ in range(10)]
    worst = max(cov.d_lambda_bracket_check(a, b) for a, b in itertools.combinations(lams, 2))
    record(8, "[D1, D2] = D of the star bracket at N=2, < 1e-12", worst < 1e-12, f"residual {worst:.1e}")


def test_criterion_09_equivalence_map():
    r = intertwining_residual(1)
    record(9, "T(a) * T(b) = T(a *sym b) on N=1 basis pairs, exact", r == 0, f"residual {r:.1e}")


def test_criterion_10_fermionic_oscillator():
    report = ladder_relations_check()
    worst = max(c.residual for c in report.checks)
    ok = report.passed and worst == 0
    record(10, "star vacuum, completion and six ladder/eigen relations, exact", ok,
           f"{len(report.checks)} relations, max residual {worst:.1e}")


def test_criterion_11_su2():
    report = su2_star_check()
    brackets = report["bracket-solution/brackets"].residual
    c = report["bracket-solution/casimir"]
    ok = brackets == 0 and c.residual == 0
    record(11, "su(2) brackets close and Casimir = 1/4, exact", ok,
           f"brackets {brackets:.1e}; {c.note}, off by {c.residual}")


def test_criterion_12_bosonic_sector():
    report = boson.ladder_relations_check(12)
    fock = max(c.residual for c in report.checks if c.id.startswith("fock/"))
    rng = np.random.default_rng(SEED)
    rep = max(boson.representation_agreement(boson.random_polynomial(rng, 4), boson.random_polynomial(rng, 4), 12)
              for _ in range(50))
    ok = fock == 0 and rep < 1e-10
    record(12, "boson ladder relations exact below cutoff 12, representations agree < 1e-10", ok,
           f"ladder {fock:.1e}, representations {rep:.1e}")


def test_criterion_13_sl11():
    report = susy.sl11_check(12)
    poly = max(c.residual for c in report.checks if c.id.startswith("poly/"))
    fock = [c for c in report.checks if c.id.startswith("fock/")]
    ok = poly == 0 and all(c.passed for c in fock)
    record(13, "sl(1/1) relations under the superstar, exact below cutoff", ok,
           f"polynomial {poly:.1e}, truncated {max(c.residual for c in fock):.1e} (sqrt rounding)")


def test_criterion_14_classical_limit():
    rng = np.random.default_rng(SEED)
    worst = {}
    for product in Product:
        kind = StarKind(product, 0.0)
        worst[product.value] = 0.0
        for n in (1, 2, 3):
            for _ in range(200):
                a, b = gaussian_integer_element(n, rng), gaussian_integer_element(n, rng)
                worst[product.value] = max(worst[product.value], (star(a, b, kind) - multiply(a, b)).norm())
    record(14, "hbar = 0 star is the pointwise product, 200 pairs at N=1..3, exact",
           all(w == 0 for w in worst.values()), ", ".join(f"{k}: {w:.1e}" for k, w in worst.items()))
