"""Argument-shift families in U(gl_d) and the suites that check them.

Every check is an exact computation: a check passes iff the relevant
commutator or trace bracket is the zero element.
"""

import asyncio
import itertools
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from algebra.classical import (
    SymElement,
    char_poly_generators,
    classical_shift_check,
    is_poisson_central,
    iterate_classical_derive,
    symbol_of_degree,
    symmetrize,
)
from algebra.codec import format_shift_matrix
from algebra.matrix_calc import ShiftMatrix, power_matrix, tau, trace_pairing
from algebra.pbw_core import (
    UEAElement,
    check_index,
    commutator,
    filtration_degree,
    is_central,
    permute_indices,
)
from algebra.quasideriv import Variant, directional_derive, matrix_quasi_derive
from core.config import get_max_workers, get_term_budget
from core.errors import BudgetExceededError, DimensionError, PreconditionError
from core.logger import logger
from verify.reports import CheckResult, VerificationReport

Seed = Tuple[str, UEAElement]
Check = Tuple[str, Callable[[], CheckResult]]


class Pairing(str, Enum):
    HAT_HAT = "hat-hat"
    HAT_BAR = "hat-bar"
    BAR_BAR = "bar-bar"

    @property
    def variants(self) -> Tuple[Variant, Variant]:
        left, right = self.value.split("-")
        return Variant(left), Variant(right)


class SeedSet(str, Enum):
    TAU = "tau"
    TAU_SIGMA = "tau+sigma"


def t_hat(xi: ShiftMatrix, i: int) -> UEAElement:
    """T̂_i(ξ) = Σ_{j≠i} e^j_i e^i_j / (ξ_i - ξ_j)."""
    xi.require_regular_diagonal()
    d = xi.dim
    check_index(i, d)
    diagonal = xi.diagonal()
    words = {}
    for j in range(1, d + 1):
        if j == i:
            continue
        word = ((j - 1) * d + (i - 1), (i - 1) * d + (j - 1))
        words[word] = 1 / (diagonal[i - 1] - diagonal[j - 1])
    return UEAElement(d, words)


def _check_order(p: int) -> None:
    if not isinstance(p, int) or p < 0:
        raise PreconditionError("shift_order", f"shift order must be a non-negative integer, got {p!r}")


def _require_central(f: UEAElement, label: str = "seed") -> None:
    if not is_central(f):
        raise PreconditionError("central_seed", f"{label} is not central")


def iterate_shift(
    xi: ShiftMatrix,
    f: UEAElement,
    p: int,
    variant: Variant = Variant.HAT,
    check_central: bool = True,
) -> UEAElement:
    """Apply the directional quasi-derivation p times to a central element."""
    _check_order(p)
    if xi.dim != f.dim:
        raise DimensionError(f"shift matrix of dimension {xi.dim} against an element of dimension {f.dim}")
    if check_central:
        _require_central(f)
    for _ in range(p):
        f = directional_derive(xi, f, variant)
    return f


class ShiftFamily:
    """The elements ∂_ξ^p f for every seed f and 0 <= p <= max_order."""

    def __init__(
        self,
        xi: ShiftMatrix,
        seeds: Sequence[Seed],
        max_order: int,
        variant: Variant = Variant.HAT,
    ):
        _check_order(max_order)
        self.xi = xi
        self.seeds = list(seeds)
        self.max_order = max_order
        self.variant = Variant(variant)
        self.elements: Dict[Tuple[str, int], UEAElement] = {}

        for label, seed in self.seeds:
            if seed.dim != xi.dim:
                raise DimensionError(f"seed {label} has dimension {seed.dim}, shift matrix {xi.dim}")
            _require_central(seed, label)
            current = seed
            self.elements[(label, 0)] = current
            for p in range(1, max_order + 1):
                current = directional_derive(xi, current, self.variant)
                self.elements[(label, p)] = current
            logger.debug(
                f"{self.variant.value} family for {label}: orders 0..{max_order}, "
                f"term counts {[len(self.elements[(label, p)].terms) for p in range(max_order + 1)]}"
            )

    def element(self, label: str, p: int) -> UEAElement:
        return self.elements[(label, p)]

    def labels(self) -> List[str]:
        return [label for label, _ in self.seeds]

    def __iter__(self):
        return iter(self.elements.items())


def label_seeds(seeds: Sequence[Union[UEAElement, Seed]]) -> List[Seed]:
    labelled = []
    for k, seed in enumerate(seeds, start=1):
        if isinstance(seed, UEAElement):
            labelled.append((f"f{k}", seed))
        else:
            labelled.append((str(seed[0]), seed[1]))
    return labelled


def default_seeds(d: int, seed_set: SeedSet = SeedSet.TAU) -> List[Seed]:
    """τ_1..τ_d, plus σ(I_k) for k >= 2 when requested."""
    seeds = [(f"tau{k}", tau(k, d)) for k in range(1, d + 1)]
    if SeedSet(seed_set) is SeedSet.TAU_SIGMA:
        generators = char_poly_generators(d)
        seeds.extend((f"sigmaI{k}", symmetrize(generators[k - 1])) for k in range(2, d + 1))
    return seeds


def theorem1_pairs(
    labels: Sequence[str], p_max: int, pairing: Pairing
) -> List[Tuple[Tuple[str, int], Tuple[str, int]]]:
    """Unordered distinct pairs for a single variant; ordered pairs for hat-bar."""
    items = [(label, p) for label in labels for p in range(p_max + 1)]
    if Pairing(pairing) is Pairing.HAT_BAR:
        candidates = itertools.product(items, items)
    else:
        candidates = itertools.combinations(items, 2)
    return [(a, b) for a, b in candidates if a[1] + b[1] <= p_max]


def estimate_theorem1_terms(d: int, seed_degrees: Sequence[int], p_max: int, pairing: Pairing) -> int:
    """Pairs to check times the PBW basis size up to the largest seed degree."""
    labels = [str(k) for k in range(len(seed_degrees))]
    top = max(seed_degrees, default=0)
    return len(theorem1_pairs(labels, p_max, pairing)) * comb(d * d + top, top)


async def _gather_checks(checks: Sequence[Check], max_workers: int) -> List[CheckResult]:
    semaphore = asyncio.Semaphore(max_workers)

    async def run(thunk: Callable[[], CheckResult]) -> CheckResult:
        async with semaphore:
            return await asyncio.to_thread(thunk)

    results = await asyncio.gather(*(run(thunk) for _, thunk in checks), return_exceptions=True)
    for result in results:
        if isinstance(result, BaseException):
            raise result
    return list(results)


def run_checks(checks: Sequence[Check], max_workers: Optional[int] = None) -> List[CheckResult]:
    workers = max_workers or get_max_workers()
    return asyncio.run(_gather_checks(checks, workers))


def _pair_id(a: Tuple[str, int], b: Tuple[str, int]) -> str:
    return f"{a[0]}^{a[1]}|{b[0]}^{b[1]}"


def _base_config(suite: str, xi: ShiftMatrix) -> Dict[str, object]:
    return {"suite": suite, "d": xi.dim, "xi": format_shift_matrix(xi)}


def _finish(config: Dict[str, object], checks: List[CheckResult]) -> VerificationReport:
    report = VerificationReport.assemble(config, checks)
    if report.passed:
        logger.info(f"{report.suite}: {report.summary()}")
    else:
        for failure in report.failures:
            logger.warning(f"{report.suite}: check {failure.id} failed")
        logger.info(f"{report.suite}: {report.summary()}")
    return report


def verify_theorem1(
    xi: ShiftMatrix,
    seeds: Sequence[Union[UEAElement, Seed]],
    p_max: int,
    pairing: Pairing = Pairing.HAT_HAT,
    budget: Optional[int] = None,
    max_workers: Optional[int] = None,
) -> VerificationReport:
    """[∂_ξ^p f, ∂_ξ^q g] = 0 for every seed pair and p + q <= p_max."""
    _check_order(p_max)
    pairing = Pairing(pairing)
    labelled = label_seeds(seeds)
    budget = get_term_budget(budget)

    estimate = estimate_theorem1_terms(
        xi.dim, [filtration_degree(seed) for _, seed in labelled], p_max, pairing
    )
    if estimate > budget:
        logger.info(f"theorem1 refused: estimate {estimate} over budget {budget}")
        raise BudgetExceededError(estimate, budget, what=f"theorem1 at p_max={p_max}")

    logger.info(f"theorem1 ({pairing.value}) at d={xi.dim}, p_max={p_max}, {len(labelled)} seeds")
    left_variant, right_variant = pairing.variants
    families = {
        variant: ShiftFamily(xi, labelled, p_max, variant)
        for variant in {left_variant, right_variant}
    }
    left, right = families[left_variant], families[right_variant]

    def pair_check(a, b) -> Callable[[], CheckResult]:
        return lambda: CheckResult.from_value(
            _pair_id(a, b), commutator(left.element(*a), right.element(*b))
        )

    checks = [
        (_pair_id(a, b), pair_check(a, b))
        for a, b in theorem1_pairs([label for label, _ in labelled], p_max, pairing)
    ]
    config = _base_config("theorem1", xi)
    config.update(
        {"pairing": pairing.value, "p_max": p_max, "seeds": [label for label, _ in labelled]}
    )
    return _finish(config, run_checks(checks, max_workers))


def verify_centralizer(xi: ShiftMatrix, x: UEAElement, prefix: str = "") -> VerificationReport:
    """[e^i_i, x] = 0 and [T̂_i(ξ), x] = 0 for every i."""
    xi.require_regular_diagonal()
    d = xi.dim
    if x.dim != d:
        raise DimensionError(f"element of dimension {x.dim} against shift matrix {d}")
    checks = []
    for i in range(1, d + 1):
        checks.append(
            CheckResult.from_value(f"{prefix}diag:{i}", commutator(UEAElement.generator(i, i, d), x))
        )
        checks.append(CheckResult.from_value(f"{prefix}t_hat:{i}", commutator(t_hat(xi, i), x)))
    config = _base_config("centralizer", xi)
    return VerificationReport.assemble(config, checks)


def eq9_expected(xi: ShiftMatrix, i: int) -> Fraction:
    diagonal = xi.diagonal()
    return sum(
        (diagonal[j] / (diagonal[i - 1] - diagonal[j]) for j in range(xi.dim) if j != i - 1),
        Fraction(0),
    )


def verify_eq9(xi: ShiftMatrix, i: int) -> Tuple[UEAElement, Fraction]:
    """The computed ∂̂_ξ T̂_i(ξ) next to the closed-form scalar Σ_{j≠i} ξ_j / (ξ_i - ξ_j)."""
    xi.require_regular_diagonal()
    computed = directional_derive(xi, t_hat(xi, i), Variant.HAT)
    return computed, eq9_expected(xi, i)


def verify_lemma1(xi: ShiftMatrix, i: int, n: int) -> bool:
    xi.require_regular_diagonal()
    _check_order(n)
    d = xi.dim
    bracket = trace_pairing(
        xi, matrix_quasi_derive(t_hat(xi, i), Variant.HAT), power_matrix(n, d).transpose()
    )
    return bracket.is_zero


def _module_bracket(xi: ShiftMatrix, i: int, x: UEAElement) -> UEAElement:
    return trace_pairing(
        xi, matrix_quasi_derive(t_hat(xi, i), Variant.HAT), matrix_quasi_derive(x, Variant.HAT)
    )


def verify_invariant_module(xi: ShiftMatrix, i: int, x: UEAElement) -> bool:
    """Whether ∂̂_ξ x stays in the module {x : tr(ξ[D̂T̂_i(ξ), D̂x]) = 0}."""
    xi.require_regular_diagonal()
    if x.dim != xi.dim:
        raise DimensionError(f"element of dimension {x.dim} against shift matrix {xi.dim}")
    if not _module_bracket(xi, i, x).is_zero:
        raise PreconditionError("module_membership", f"element is not in the module of T̂_{i}")
    return _module_bracket(xi, i, directional_derive(xi, x, Variant.HAT)).is_zero


def verify_classical_limit(xi: ShiftMatrix, F: SymElement, p: int) -> bool:
    """The degree (deg F - p) part of ∂̂_ξ^p σ(F) is ∂_ξ^p F."""
    if not is_poisson_central(F):
        raise PreconditionError("poisson_central", "classical limit needs a Poisson-central element")
    if not F.is_homogeneous():
        raise PreconditionError("homogeneous", "classical limit needs a homogeneous element")
    _check_order(p)
    shifted = iterate_shift(xi, symmetrize(F), p, Variant.HAT, check_central=False)
    expected = iterate_classical_derive(xi, F, p)
    return symbol_of_degree(shifted, F.degree - p) == expected


def verify_equivariance(
    xi: ShiftMatrix, f: UEAElement, perm: Sequence[int], p: int, variant: Variant = Variant.HAT
) -> bool:
    """(∂_ξ^p f)^g = ∂_{ξ^g}^p f^g for the permutation matrix g of ``perm``."""
    lhs = permute_indices(iterate_shift(xi, f, p, variant), perm)
    rhs = iterate_shift(xi.permuted(perm), permute_indices(f, perm), p, variant)
    return lhs == rhs


def run_centralizer_suite(xi: ShiftMatrix, p_max: int) -> VerificationReport:
    """Every element of the hat τ-family passes the centralizer conditions."""
    xi.require_regular_diagonal()
    family = ShiftFamily(xi, default_seeds(xi.dim), p_max, Variant.HAT)
    checks = []
    for (label, p), element in family:
        checks.extend(verify_centralizer(xi, element, prefix=f"{label}^{p}:").checks)
    config = _base_config("centralizer", xi)
    config["p_max"] = p_max
    return _finish(config, checks)


def run_eq9_suite(xi: ShiftMatrix) -> VerificationReport:
    checks = []
    for i in range(1, xi.dim + 1):
        computed, expected = verify_eq9(xi, i)
        checks.append(CheckResult.from_value(f"eq9:i={i}", computed - expected))
    return _finish(_base_config("eq9", xi), checks)


def run_lemma1_suite(xi: ShiftMatrix, n_max: Optional[int] = None) -> VerificationReport:
    d = xi.dim
    n_max = d + 1 if n_max is None else n_max
    checks = [
        CheckResult.from_flag(f"lemma1:i={i}:n={n}", verify_lemma1(xi, i, n))
        for i in range(1, d + 1)
        for n in range(n_max + 1)
    ]
    config = _base_config("lemma1", xi)
    config["n_max"] = n_max
    return _finish(config, checks)


def run_invariant_suite(xi: ShiftMatrix) -> VerificationReport:
    d = xi.dim
    checks = [
        CheckResult.from_flag(f"invariant:tau{k}:i={i}", verify_invariant_module(xi, i, tau(k, d)))
        for k in range(1, d + 1)
        for i in range(1, d + 1)
    ]
    return _finish(_base_config("invariant", xi), checks)


def run_classical_suite(xi: ShiftMatrix, p_max: int) -> VerificationReport:
    """{∂_ξ^p I_k, ∂_ξ^q I_l} = 0 for p + q <= p_max."""
    generators = char_poly_generators(xi.dim)
    items = [(k, p) for k in range(1, xi.dim + 1) for p in range(p_max + 1)]
    checks = []
    for (k, p), (l, q) in itertools.combinations_with_replacement(items, 2):
        if p + q > p_max:
            continue
        ok = classical_shift_check(xi, p, q, generators[k - 1], generators[l - 1])
        checks.append(CheckResult.from_flag(f"I{k}^{p}|I{l}^{q}", ok))
    config = _base_config("classical", xi)
    config["p_max"] = p_max
    return _finish(config, checks)


def run_limit_suite(xi: ShiftMatrix, p_max: int) -> VerificationReport:
    generators = char_poly_generators(xi.dim)
    checks = [
        CheckResult.from_flag(f"limit:I{k}^{p}", verify_classical_limit(xi, generators[k - 1], p))
        for k in range(1, xi.dim + 1)
        for p in range(min(p_max, k) + 1)
    ]
    config = _base_config("limit", xi)
    config["p_max"] = p_max
    return _finish(config, checks)
