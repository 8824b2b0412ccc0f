# Copyright (c) 2024, The PyOTFS Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Scalar special functions used by the closed-form outage analysis.

Gaussian tail, regularized incomplete gammas, log-gamma, beta, Pochhammer symbol and the finite confluent
hypergeometric series ₁F₁(m; 1; x) for a positive integer first argument.

    Examples of use:

        q_function(1.6449)          # ~0.05
        reg_gamma_upper(3.0, 3.0)   # ~0.4232
        hyp1f1_int(2, 1.0)          # 2e

All functions are pure; incomplete gammas and log-gamma delegate to `scipy.special`, whose implementations switch
between the power series (x < a + 1) and the continued fraction otherwise.
"""
import dataclasses
import logging
import math

from scipy import special

from pyotfs.exceptions import PyOtfsDomainError, PyOtfsValidationError

LOGGER = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class EvalTolerance:
    """Accuracy contract for series evaluation.

    Args:
        rel_tol: Stop once a term drops below rel_tol times the running sum.
        abs_tol: Absolute floor added to the relative stopping criterion.
        max_terms: Number of terms after which a non-converged series is an error.
    """

    rel_tol: float = 1e-15
    abs_tol: float = 1e-300
    max_terms: int = 200

    def __post_init__(self):
        """Validate tolerance values."""
        if not self.rel_tol > 0:
            raise PyOtfsValidationError(f"rel_tol must be positive, got {self.rel_tol}.")
        if not self.abs_tol > 0:
            raise PyOtfsValidationError(f"abs_tol must be positive, got {self.abs_tol}.")
        if self.max_terms < 1:
            raise PyOtfsValidationError(f"max_terms must be at least 1, got {self.max_terms}.")


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise PyOtfsDomainError(f"`{name}` must be finite, got {value}.")


def q_function(x: float) -> float:
    """Tail distribution function of the standard normal, Pr(Z > x).

    Args:
        x: Finite real argument

    Returns:
        Q(x) in (0, 1) for moderate x; the tail underflows to 0.0 in double precision above x of about 37.7
        and rounds to 1.0 below x of about -8.3

    Raises:
        PyOtfsDomainError: if x is not finite
    """
    _require_finite("x", x)
    return float(special.ndtr(-x))


def reg_gamma_lower(a: float, x: float) -> float:
    """Lower regularized incomplete gamma P(a, x) = γ(a, x) / Γ(a).

    Args:
        a: Shape, a > 0
        x: Argument, x >= 0

    Returns:
        P(a, x) in [0, 1]

    Raises:
        PyOtfsDomainError: if a <= 0 or x < 0
    """
    _check_incomplete_gamma_args(a, x)
    return float(special.gammainc(a, x))


def reg_gamma_upper(a: float, x: float) -> float:
    """Upper regularized incomplete gamma Q(a, x) = Γ(a, x) / Γ(a) = 1 - P(a, x).

    Args:
        a: Shape, a > 0
        x: Argument, x >= 0

    Returns:
        Q(a, x) in [0, 1]

    Raises:
        PyOtfsDomainError: if a <= 0 or x < 0
    """
    _check_incomplete_gamma_args(a, x)
    return float(special.gammaincc(a, x))


def _check_incomplete_gamma_args(a: float, x: float) -> None:
    if math.isnan(a) or a <= 0:
        raise PyOtfsDomainError(f"Incomplete gamma shape must be positive, got a={a}.")
    if math.isnan(x) or x < 0:
        raise PyOtfsDomainError(f"Incomplete gamma argument must be non-negative, got x={x}.")


def log_gamma(x: float) -> float:
    """Natural logarithm of the gamma function for positive arguments."""
    if math.isnan(x) or x <= 0:
        raise PyOtfsDomainError(f"log_gamma is defined here for positive arguments only, got {x}.")
    return float(special.gammaln(x))


def beta_fn(a: float, b: float) -> float:
    """Beta function B(a, b) = Γ(a)Γ(b)/Γ(a+b).

    Args:
        a: Positive real
        b: Positive real

    Returns:
        B(a, b) > 0

    Raises:
        PyOtfsDomainError: if any argument is not positive
    """
    if math.isnan(a) or math.isnan(b) or a <= 0 or b <= 0:
        raise PyOtfsDomainError(f"Beta function arguments must be positive, got ({a}, {b}).")
    return float(special.beta(a, b))


def pochhammer(a: float, k: int) -> float:
    """Rising factorial (a)_k = a(a+1)...(a+k-1).

    A non-positive integer `a` gives an exact zero for every k > -a, which truncates the finite ₁F₁ series.

    Args:
        a: Real base
        k: Non-negative integer order

    Returns:
        (a)_k, with (a)_0 = 1
    """
    if not math.isfinite(k) or k < 0 or int(k) != k:
        raise PyOtfsDomainError(f"Pochhammer order must be a non-negative integer, got {k}.")
    k = int(k)
    if k == 0:
        return 1.0
    if float(a).is_integer() and a <= 0 and k > -a:
        return 0.0
    return float(special.poch(a, k))


def _check_positive_int(name: str, value) -> int:
    if isinstance(value, bool) or not math.isfinite(value) or int(value) != value or value < 1:
        raise PyOtfsDomainError(f"`{name}` must be a positive integer, got {value}.")
    return int(value)


def hyp1f1_int(m: int, x: float) -> float:
    """Confluent hypergeometric ₁F₁(m; 1; x) for integer m through its finite series.

    ₁F₁(m; 1; x) = e^x Σ_{k=0}^{m-1} (-1)^k (1-m)_k x^k / (k!)², a sum of non-negative terms.

    Args:
        m: Positive integer first argument
        x: Non-negative real argument

    Returns:
        ₁F₁(m; 1; x) >= 1

    Raises:
        PyOtfsDomainError: if m is not a positive integer or x is negative or non-finite
    """
    m = _check_positive_int("m", m)
    _require_finite("x", x)
    if x < 0:
        raise PyOtfsDomainError(f"hyp1f1_int argument must be non-negative, got x={x}.")
    terms = [(-1) ** k * pochhammer(1 - m, k) * x**k / math.factorial(k) ** 2 for k in range(m)]
    return math.exp(x) * math.fsum(terms)


def hyp1f1_direct(m: int, x: float, tol: EvalTolerance = EvalTolerance()) -> float:
    """Power series ₁F₁(m; 1; x) = Σ_k (m)_k x^k / (k!)², summed term by term.

    Args:
        m: Positive integer first argument
        x: Non-negative real argument
        tol: Stopping rule and term budget

    Returns:
        ₁F₁(m; 1; x)

    Raises:
        PyOtfsDomainError: if arguments are invalid or the series does not converge within tol.max_terms
    """
    m = _check_positive_int("m", m)
    _require_finite("x", x)
    if x < 0:
        raise PyOtfsDomainError(f"hyp1f1_direct argument must be non-negative, got x={x}.")

    term = 1.0
    terms = [term]
    running = term
    for k in range(tol.max_terms):
        # t_{k+1} / t_k = (m + k) x / (k + 1)^2
        term *= (m + k) * x / (k + 1) ** 2
        terms.append(term)
        running += term
        if term <= tol.rel_tol * running + tol.abs_tol:
            return math.fsum(terms)
    raise PyOtfsDomainError(
        f"Direct 1F1({m};1;{x}) series did not converge within {tol.max_terms} terms (last term {term:.3e})."
    )
