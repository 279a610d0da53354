"""Named check suites driving every report operation; used by the CLI."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import covariance as cov
from .boson import DEFAULT_CUTOFF, boson_report
from .coherent import coherent_overlap_check
from .fock import car_residual, oracle_star
from .grassmann import GrassmannElement, multiply, random_element
from .oscillator import oscillator_report
from .report import Report
from .star import SYMMETRIC, Product, StarKind, star, t_map
from .susy import susy_report

SUITES = ("fermionic", "covariance", "oscillator", "susy", "all")

ORACLE_TOL = 1e-12
BOGOLIUBOV_TOL = 1e-10


@dataclass(frozen=True)
class SuiteOptions:
    n: int = 2
    hbar: float = 1.0
    product: str = "coherent"
    cutoff: int = DEFAULT_CUTOFF
    seed: int = 0
    samples: int = 50

    @property
    def kind(self) -> StarKind:
        return StarKind(Product(self.product), self.hbar)


class UnknownSuite(ValueError):
    pass


def star_relations(n: int, kind: StarKind) -> Report:
    """The generator products, their anticommutators and nilpotency at exact tolerance."""
    report = Report("relations")
    g = lambda tok: GrassmannElement.gen(n, tok)  # noqa: E731
    # coherent: the contraction theta_i -> thetabar_i weighs hbar; symmetric: hbar/2 both ways
    forward = kind.hbar if kind.product is Product.COHERENT else kind.hbar / 2
    backward = 0.0 if kind.product is Product.COHERENT else kind.hbar / 2
    products, anti, nil = 0.0, 0.0, 0.0
    for i, j in itertools.product(range(1, n + 1), repeat=2):
        d = float(i == j)
        t_i, t_j, tb_i, tb_j = g(f"t{i}"), g(f"t{j}"), g(f"tb{i}"), g(f"tb{j}")
        products = max(
            products,
            (star(tb_i, t_j, kind) - multiply(tb_i, t_j) - backward * d).norm(),
            (star(t_i, t_j, kind) - multiply(t_i, t_j)).norm(),
            (star(tb_i, tb_j, kind) - multiply(tb_i, tb_j)).norm(),
            (star(t_i, tb_j, kind) - multiply(t_i, tb_j) - forward * d).norm(),
        )
        anti = max(
            anti,
            (star(t_i, t_j, kind) + star(t_j, t_i, kind)).norm(),
            (star(tb_i, tb_j, kind) + star(tb_j, tb_i, kind)).norm(),
            (star(tb_i, t_j, kind) + star(t_j, tb_i, kind) - kind.hbar * d).norm(),
        )
        if i == j:
            nil = max(nil, star(t_i, t_i, kind).norm(), star(tb_i, tb_i, kind).norm())
    rel = ("tb_i * t_j = tb_i t_j, t_i * t_j = t_i t_j, tb_i * tb_j = tb_i tb_j, t_i * tb_j = t_i tb_j + delta_ij"
           if kind.product is Product.COHERENT else
           "t_i * tb_j = t_i tb_j + delta_ij/2, tb_i * t_j = tb_i t_j + delta_ij/2")
    report.add("products", rel, products)
    report.add("anticommutators", "{t_i,t_j} = {tb_i,tb_j} = 0, {tb_i,t_j} = delta_ij", anti)
    report.add("nilpotency", "t_i * t_i = tb_i * tb_i = 0", nil)
    return report


def oracle_residual(n: int, rng: np.random.Generator, samples: int) -> float:
    worst = 0.0
    for _ in range(samples):
        a, b = random_element(n, rng), random_element(n, rng)
        worst = max(worst, (star(a, b) - oracle_star(a, b)).norm())
    return worst


def associativity_residual(n: int, kind, rng: np.random.Generator, samples: int) -> float:
    worst = 0.0
    for _ in range(samples):
        a, b, c = (random_element(n, rng) for _ in range(3))
        worst = max(worst, (star(star(a, b, kind), c, kind) - star(a, star(b, c, kind), kind)).norm())
    return worst


def exhaustive_associativity(n: int, kind) -> float:
    units = [GrassmannElement(n, {m: 1}) for m in range(4**n)]
    worst = 0.0
    for a, b, c in itertools.product(units, repeat=3):
        worst = max(worst, (star(star(a, b, kind), c, kind) - star(a, star(b, c, kind), kind)).norm())
    return worst


def intertwining_residual(n: int, hbar: float = 1.0) -> float:
    """``T(a) * T(b) - T(a *sym b)`` over all pairs of basis monomials."""
    units = [GrassmannElement(n, {m: 1}) for m in range(4**n)]
    coherent = StarKind(Product.COHERENT, hbar)
    symmetric = StarKind(Product.SYMMETRIC, hbar)
    worst = 0.0
    for a, b in itertools.product(units, repeat=2):
        lhs = star(t_map(a, hbar), t_map(b, hbar), coherent)
        rhs = t_map(star(a, b, symmetric), hbar)
        worst = max(worst, (lhs - rhs).norm())
    return worst


def classical_limit_residual(n: int, product: str, rng: np.random.Generator, samples: int) -> float:
    kind = StarKind(Product(product), 0.0)
    worst = 0.0
    for _ in range(samples):
        a, b = random_element(n, rng, integer=True), random_element(n, rng, integer=True)
        worst = max(worst, (star(a, b, kind) - multiply(a, b)).norm())
    return worst


def fermionic_suite(opts: SuiteOptions) -> Report:
    rng = np.random.default_rng(opts.seed)
    n, kind = opts.n, opts.kind
    report = Report("fermionic")
    report.extend(star_relations(n, kind), "relations/")
    report.add("car", "{f_i, f+_j} = delta_ij, {f_i, f_j} = 0", car_residual(n))
    if kind.product is Product.COHERENT and kind.hbar == 1.0:
        report.add("oracle", "a * b = sym(op(a) op(b))", oracle_residual(n, rng, opts.samples), tol=ORACLE_TOL)
    report.add("associativity", "(a * b) * c = a * (b * c)",
               associativity_residual(n, kind, rng, opts.samples), tol=ORACLE_TOL)
    report.add("intertwining", "T(a) * T(b) = T(a *sym b)", intertwining_residual(min(n, 2), kind.hbar))
    report.add("classical-limit", "a *_0 b = a b", classical_limit_residual(n, opts.product, rng, opts.samples))
    if n <= 2:
        report.extend(coherent_overlap_check(n), "coherent/")
    return report


def covariance_suite(opts: SuiteOptions) -> Report:
    rng = np.random.default_rng(opts.seed)
    n = max(opts.n, 2)
    report = Report("covariance")
    alphas = [cov.random_alpha(n, rng, 0.5) for _ in range(max(1, opts.samples // 5))]
    report.add("bogoliubov-oracle", "exp(-Lambda) f exp(Lambda) = U f- + V f+",
               max(cov.bogoliubov_oracle_residual(a) for a in alphas), tol=BOGOLIUBOV_TOL)
    report.add("bogoliubov-canonical", "U V^T + V U^T = 0, U U^+ + V V^+ = 1",
               max(cov.bogoliubov_from_alpha(a).canonical_residual() for a in alphas), tol=BOGOLIUBOV_TOL)
    lams = [cov.lambda_from_alpha(a) for a in alphas[:3]]
    report.add("conjugation-oracle", "exp(-D) a = sym(exp(-Lambda) A exp(Lambda))",
               max(cov.symbol_conjugation_residual(lam, random_element(n, rng)) for lam in lams),
               tol=BOGOLIUBOV_TOL)
    pairs = list(zip(lams, lams[1:] + lams[:1]))
    report.add("derivation-bracket", "[D1, D2] = D_{[lam1, lam2]}",
               max(cov.d_lambda_bracket_residual(a, b) for a, b in pairs), tol=ORACLE_TOL)
    report.add("derivation-bracket-anticommutator", "[D1, D2] = D_{lam1 * lam2 + lam2 * lam1}",
               max(cov.d_lambda_bracket_residual(a, b, anticommutator=True) for a, b in pairs),
               tol=ORACLE_TOL, informational=True, note="the anticommutator reading of the bracket does not hold")
    closed = 0.0
    for a in alphas[:3]:
        psi, psibar = cov.psi_variables(a)
        A, B, C, D = cov.psi_closed_form(a)
        for i in range(n):
            want = sum(GrassmannElement.gen(n, f"t{j + 1}") * A[i, j] + GrassmannElement.gen(n, f"tb{j + 1}") * B[i, j]
                       for j in range(n))
            wantbar = sum(GrassmannElement.gen(n, f"t{j + 1}") * C[i, j] + GrassmannElement.gen(n, f"tb{j + 1}") * D[i, j]
                          for j in range(n))
            closed = max(closed, (psi[i] - want).norm(), (psibar[i] - wantbar).norm())
    report.add("psi-closed-form", "psi = cos sqrt(a a^+) t + a sinc sqrt(a^+ a) tb", closed, tol=BOGOLIUBOV_TOL)
    report.add("covariance-symmetric", "exp(-D) a = a(psi, psibar), symmetric product",
               max(cov.covariance_residual(a, SYMMETRIC) for a in alphas), tol=BOGOLIUBOV_TOL)
    report.add("covariance-coherent", "exp(-D) a = a(psi, psibar), coherent product",
               max(cov.covariance_residual(a) for a in alphas), tol=BOGOLIUBOV_TOL,
               note="fails whenever V != 0: normal-ordered symbols pick up V V^+ contractions")
    witness = cov.quartic_witness(n)
    w_in = cov.quartic_witness_input(n)
    report.add("quartic-witness", "exp(-D) a != a(psi, psibar) for a quartic generator",
               cov.check_covariance(witness, w_in), tol=1e-3, expect_above=True)
    report.extend(cov.tilde_star_check(alphas[0]), "tilde-star/")
    return report


def oscillator_suite(opts: SuiteOptions) -> Report:
    return oscillator_report()


def susy_suite(opts: SuiteOptions) -> Report:
    report = Report("susy")
    report.extend(boson_report(opts.cutoff, opts.seed), "boson/")
    report.extend(susy_report(opts.cutoff, opts.seed), "super/")
    return report


_RUNNERS = {
    "fermionic": fermionic_suite,
    "covariance": covariance_suite,
    "oscillator": oscillator_suite,
    "susy": susy_suite,
}


def run_suite(name: str, opts: SuiteOptions = SuiteOptions()) -> tuple[int, Report]:
    """Run a named suite; exit code 0 iff every non-informational check passed."""
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if name == "all":
        report = Report("all")
        for sub, runner in _RUNNERS.items():
            report.extend(runner(opts), f"{sub}/")
    else:
        report = _RUNNERS[name](opts)
    return (0 if report.passed else 1), report
