"""Star products on Grassmann, bosonic and super symbols.

>>> from grassmann_star import GrassmannElement, star
>>> t, tb = GrassmannElement.gen(1, "t1"), GrassmannElement.gen(1, "tb1")
>>> print(star(t, tb))
1.0 + -1.0*tb1 t1
"""

from types import ModuleType as _ModuleType

from .boson import (
    BosonPolynomial,
    FockSymbol,
    GaussianSymbol,
    fock_star,
    poly_to_fock,
    star_vacuum_check,
    voros_star,
    voros_star_poly,
)
from .covariance import (
    BogoliubovPair,
    bogoliubov_from_alpha,
    check_covariance,
    d_lambda,
    lambda_from_alpha,
    transform_symbol,
)
from .expr import EvalConfig, EvalError, ParseError, evaluate, evaluate_source, parse, to_source
from .fock import basis_operator, ladder, normal_order_decompose, operator_of, oracle_star, symbol_of
from .grassmann import (
    GrassmannElement,
    Parity,
    berezin_integrate,
    exp_nilpotent,
    involution,
    left_derivative,
    multiply,
    random_element,
    right_derivative,
    theta,
    theta_bar,
)
from .oscillator import (
    generating_derivative_check,
    generating_function,
    hamiltonian_symbol,
    ladder_relations_check,
    projector_symbol,
    su2_star_check,
)
from .report import Check, Report
from .star import (
    COHERENT,
    SYMMETRIC,
    Product,
    StarKind,
    star,
    star_anticommutator,
    star_commutator,
    star_exp,
    t_inverse,
    t_map,
)
from .suites import SuiteOptions, run_suite
from .susy import SuperSymbol, super_star, supercharge_symbols

__version__ = "0.1.0"

__all__ = [k for k, v in dict(globals()).items() if not k.startswith("_") and not isinstance(v, _ModuleType)]
