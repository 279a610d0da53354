"""The single fermionic oscillator in star language.

Projector symbols ``P[m,n]`` stand for ``|m><n|`` and are computed from the
coherent-state vectors of :mod:`grassmann_star.coherent`, never from the
star product, so the relations checked below are genuine cross-checks.
"""

from __future__ import annotations

from .coherent import basis_vector, coherent_ket, exp_displacement, inner
from .grassmann import (
    GrassmannElement,
    exp_nilpotent,
    left_derivative,
    multiply,
    theta,
    theta_bar,
)
from .report import Report
from .star import COHERENT, SYMMETRIC, star, star_commutator

ENERGIES = (0, 1)

# alpha and beta of the generating function live on site 2 of an N=2 algebra
ALPHA = theta(2)
BETA = theta_bar(2)


def _check_index(m: int, n: int) -> None:
    if m not in (0, 1) or n not in (0, 1):
        raise ValueError(f"oscillator indices must be 0 or 1, got ({m}, {n})")


def projector_symbol(m: int, n: int) -> GrassmannElement:
    """``<theta|m><n|theta>`` as an N=1 Grassmann element."""
    _check_index(m, n)
    ket = coherent_ket(1)
    return multiply(inner(ket, basis_vector(1, 1, m)), inner(basis_vector(1, 1, n), ket))


def hamiltonian_symbol() -> GrassmannElement:
    return GrassmannElement.monomial(1, "tb1 t1")


def _residual(a: GrassmannElement, b: GrassmannElement) -> float:
    return (a - b).norm()


def ladder_relations_check() -> Report:
    """Vacuum, completion, eigenvalue and ladder relations, all at zero tolerance."""
    report = Report("fermion-oscillator")
    P = {(m, n): projector_symbol(m, n) for m in (0, 1) for n in (0, 1)}
    zero = GrassmannElement.zero(1)
    one = GrassmannElement.scalar(1, 1)
    t, tb, h = GrassmannElement.gen(1, "t1"), GrassmannElement.gen(1, "tb1"), hamiltonian_symbol()

    def proj(m, n):
        return P[(m, n)] if (m, n) in P else zero

    report.add("vacuum-left", "theta * P00 = 0", star(t, P[0, 0]).norm())
    report.add("vacuum-right", "P00 * thetabar = 0", star(P[0, 0], tb).norm())
    report.add("completion", "P00 + P11 = 1", _residual(P[0, 0] + P[1, 1], one))

    rules = {
        "h-left": ("h * P[m,n] = e_m P[m,n]", lambda m, n: (star(h, P[m, n]), ENERGIES[m] * P[m, n])),
        "h-right": ("P[m,n] * h = e_n P[m,n]", lambda m, n: (star(P[m, n], h), ENERGIES[n] * P[m, n])),
        "theta-left": ("theta * P[m,n] = P[m-1,n]", lambda m, n: (star(t, P[m, n]), proj(m - 1, n))),
        "theta-right": ("P[m,n] * theta = P[m,n+1]", lambda m, n: (star(P[m, n], t), proj(m, n + 1))),
        "thetabar-left": ("thetabar * P[m,n] = P[m+1,n]", lambda m, n: (star(tb, P[m, n]), proj(m + 1, n))),
        "thetabar-right": ("P[m,n] * thetabar = P[m,n-1]", lambda m, n: (star(P[m, n], tb), proj(m, n - 1))),
    }
    for name, (relation, rule) in rules.items():
        worst = max(_residual(*rule(m, n)) for m in (0, 1) for n in (0, 1))
        report.add(name, relation, worst)

    worst = 0.0
    for (m, n), a in P.items():
        for (k, l), b in P.items():
            worst = max(worst, _residual(star(a, b), P[m, l] if n == k else zero))
    report.add("projector-algebra", "P[m,n] * P[k,l] = delta_{n,k} P[m,l]", worst)
    return report


def matrix_elements() -> list[list[GrassmannElement]]:
    """``E[n][m] = <n| exp(theta f+ + thetabar f-) |m>`` in the N=2 algebra.

    Entries only involve site 1; :func:`restrict` brings them down to N=1.
    """
    E = [[None, None], [None, None]]
    for m in (0, 1):
        column = exp_displacement(basis_vector(1, 2, m), 1, 0, sign=-1)
        for n in (0, 1):
            E[n][m] = inner(basis_vector(1, 2, n), column)
    return E


def generating_function() -> GrassmannElement:
    """``exp(-1/2 (thetabar theta + alpha theta + beta thetabar + alpha beta))`` as printed."""
    t, tb = theta(1), theta_bar(1)
    g = lambda x: GrassmannElement.gen(2, x)  # noqa: E731
    a, b, T, Tb = g(ALPHA), g(BETA), g(t), g(tb)
    arg = multiply(Tb, T) + multiply(a, T) + multiply(b, Tb) + multiply(a, b)
    return exp_nilpotent(-0.5 * arg)


def generating_function_oracle() -> GrassmannElement:
    """``sum_{n,m} alpha^n beta^m <n|exp(theta f+ + thetabar f-)|m>`` from the Fock vectors."""
    E = matrix_elements()
    a, b = GrassmannElement.gen(2, ALPHA), GrassmannElement.gen(2, BETA)
    one = GrassmannElement.scalar(2, 1)
    total = GrassmannElement.zero(2)
    for n in (0, 1):
        for m in (0, 1):
            weight = multiply(a if n else one, b if m else one)
            total = total + multiply(weight, E[n][m])
    return total


def extract(phi: GrassmannElement, n: int, m: int) -> GrassmannElement:
    """``d^m/dbeta^m d^n/dalpha^n phi`` at ``alpha = beta = 0``, returned in N=1."""
    out = phi
    if n:
        out = left_derivative(ALPHA, out)
    if m:
        out = left_derivative(BETA, out)
    return restrict(out)


def restrict(a: GrassmannElement) -> GrassmannElement:
    """Set alpha = beta = 0 and drop to the N=1 algebra."""
    if a.n != 2:
        raise ValueError(f"restrict expects an element of the N=2 algebra, got N={a.n}")
    terms = {}
    for mask, c in a.terms.items():
        if mask & 0b1010:  # any alpha or beta left over
            continue
        low = (mask & 0b1) | ((mask >> 1) & 0b10)
        terms[low] = c
    return GrassmannElement(1, terms)


def generating_derivative_check() -> Report:
    """Compare the printed generating function with the Fock-space one.

    Only the oracle-side extraction is a pass/fail check; the printed closed
    form and the printed derivative identity are reported as informational.
    """
    report = Report("generating-function")
    E = matrix_elements()
    printed, oracle = generating_function(), generating_function_oracle()
    worst = max(_residual(extract(oracle, n, m), restrict(E[n][m])) for n in (0, 1) for m in (0, 1))
    report.add("extraction", "d_beta^m d_alpha^n Phi|0 = <n|exp(theta f+ + thetabar f-)|m>", worst)
    report.add("vacuum-element", "<0|exp(theta f+ + thetabar f-)|0> = 1 - thetabar theta / 2",
               _residual(restrict(E[0][0]), exp_nilpotent(-0.5 * hamiltonian_symbol())))
    report.add("printed-closed-form", "Phi = exp(-(thetabar theta + alpha theta + beta thetabar + alpha beta)/2)",
               _residual(printed, oracle), informational=True,
               note=f"oracle Phi = {oracle}; printed Phi = {printed}")
    tb = GrassmannElement.gen(1, "tb1")
    worst = max(_residual(extract(oracle, n, m), star(projector_symbol(m, n), tb))
                for n in (0, 1) for m in (0, 1))
    report.add("printed-derivative-identity", "d^n/dalpha^n d^m/dalpha^m Phi|0 = P[m,n] * thetabar",
               worst, informational=True,
               note="the printed identity differentiates twice in alpha; compared here with the beta reading")
    return report


def su2_candidates() -> dict[str, GrassmannElement]:
    h = hamiltonian_symbol()
    return {
        "literal": h,
        "traceless": h - 0.5,
        "bracket-solution": -h,
    }


def casimir(jm, jp, j3) -> GrassmannElement:
    half = 0.5 * (star(jm, jp, SYMMETRIC) + star(jp, jm, SYMMETRIC))
    return half + star(j3, j3, SYMMETRIC)


def su2_star_check() -> Report:
    """su(2) brackets and Casimir under the symmetric product for each j3 candidate.

    The bracket ``[j-, j+] = 2 j3`` fixes ``j3 = -thetabar theta``; the
    printed Casimir value 1/4 is then checked against that candidate and
    the outcome for the other candidates is reported for reference.
    """
    report = Report("su2")
    jp, jm = GrassmannElement.gen(1, "tb1"), GrassmannElement.gen(1, "t1")
    quarter = GrassmannElement.scalar(1, 0.25)
    for name, j3 in su2_candidates().items():
        primary = name == "bracket-solution"
        brackets = max(
            _residual(star_commutator(jm, jp, SYMMETRIC), 2 * j3),
            _residual(star_commutator(jp, j3, SYMMETRIC), jp),
            _residual(star_commutator(jm, j3, SYMMETRIC), -jm),
        )
        c = casimir(jm, jp, j3)
        report.add(f"{name}/brackets", "[j-,j+] = 2 j3, [j+-,j3] = +-j+-", brackets,
                   informational=not primary, note=f"j3 = {j3}")
        report.add(f"{name}/casimir", "C = (j- j+ + j+ j-)/2 + j3 j3 = 1/4",
                   _residual(c, quarter), informational=not primary, note=f"C = {c}")
        report.add(f"{name}/j3-self", "[j3, j3] = 0",
                   star_commutator(j3, j3, SYMMETRIC).norm(), informational=not primary)
    return report


def oscillator_report() -> Report:
    report = Report("oscillator")
    report.extend(ladder_relations_check(), "ladder/")
    report.extend(generating_derivative_check(), "generating/")
    report.extend(su2_star_check(), "su2/")
    return report


__all__ = [
    "ALPHA",
    "BETA",
    "COHERENT",
    "casimir",
    "extract",
    "generating_derivative_check",
    "generating_function",
    "generating_function_oracle",
    "hamiltonian_symbol",
    "ladder_relations_check",
    "matrix_elements",
    "oscillator_report",
    "projector_symbol",
    "restrict",
    "su2_candidates",
    "su2_star_check",
]
