"""
Small resolutions: peak flattening, neat orderings of the peaks and the
reduced translation pairs they produce, checked against the KL basis.
"""

import logging
from typing import FrozenSet, List, Optional, Sequence, Tuple

from config import settings
from errors import ConfigurationError, DomainError
from hecke import HeckeElement, PolynomialTable, kl_element_full, kl_longest, star_mul
from models import TranslationPair, VerificationReport
from paths import (
    DOWN,
    UP,
    Path,
    Permutation,
    descent_set,
    enumerate_paths,
    identity_perm,
    longest_element,
    parabolic_labels,
    peaks,
    perm_length,
    perm_mul,
    perm_of_path,
)
from table_service import table_service

logger = logging.getLogger(__name__)


def _flat_bounds(lam: Path, p: int) -> Tuple[int, int]:
    """a: last Down before p (0 if none), b: first Up after p (n+1 if none)."""
    a = max((k for k in range(1, p) if lam.step(k) == DOWN), default=0)
    b = min((k for k in range(p + 1, lam.n + 1) if lam.step(k) == UP), default=lam.n + 1)
    return a, b


def flatten_peak(lam: Path, p: int) -> Path:
    """Reverse the segment a+1..b-1 around the peak p."""
    if p not in peaks(lam):
        raise DomainError(f"position {p} is not a peak of {lam}")
    a, b = _flat_bounds(lam, p)
    steps = lam.steps[:a] + lam.steps[a:b - 1][::-1] + lam.steps[b - 1:]
    return lam.replace_steps(steps)


def _neat_candidates(lam: Path) -> List[int]:
    """Peaks no higher than their nearest peaks on either side."""
    tops = peaks(lam)
    heights = lam.heights
    out = []
    for idx, p in enumerate(tops):
        neighbours = tops[max(idx - 1, 0):idx] + tops[idx + 1:idx + 2]
        if all(heights[p] <= heights[q] for q in neighbours):
            out.append(p)
    return out


def neat_orders(lam: Path, limit: Optional[int] = None) -> List[Tuple[int, ...]]:
    """All neat orderings in lexicographic order, truncated to ``limit`` when given."""
    out: List[Tuple[int, ...]] = []

    def search(current: Path, prefix: Tuple[int, ...]) -> None:
        if not peaks(current):
            out.append(prefix)
            return
        for p in _neat_candidates(current):
            if limit is not None and len(out) >= limit:
                return
            search(flatten_peak(current, p), prefix + (p,))

    search(lam, ())
    return out


def translation_pair(lam: Path, order: Sequence[int]) -> TranslationPair:
    """
    Unwind the small resolution recursion. The first peak of the order gives
    the outermost factor: J_1 = S_lam, I_1 = S_{lam^p} minus {a, b-1},
    J_2 = S_{lam^p} and so on down to the identity, whose pair is (I, I).
    """
    ivec: List[FrozenSet[int]] = [frozenset()]
    jvec: List[FrozenSet[int]] = []
    current = lam
    for p in order:
        if p not in _neat_candidates(current):
            raise ConfigurationError(f"order {tuple(order)} is not neat for {lam}")
        a, b = _flat_bounds(current, p)
        flat = flatten_peak(current, p)
        jvec.append(descent_set(current))
        ivec.append(descent_set(flat) - {a, b - 1})
        current = flat
    if peaks(current):
        raise ConfigurationError(f"order {tuple(order)} does not exhaust the peaks of {lam}")
    base = parabolic_labels(lam.n, lam.i)
    jvec.append(base)
    ivec.append(base)
    pair = TranslationPair(
        n=lam.n,
        I=tuple(tuple(sorted(s)) for s in ivec),
        J=tuple(tuple(sorted(s)) for s in jvec),
        shift=_shift(lam.n, ivec, jvec),
    )
    logger.debug("pair for %s %s: %s", lam, tuple(order), pair.tensor_notation())
    return pair


def _longest_length(n: int, labels) -> int:
    return perm_length(longest_element(n, labels))


def _shift(n: int, ivec, jvec) -> int:
    return sum(_longest_length(n, j) - _longest_length(n, i) for j, i in zip(jvec, ivec[1:]))


def _check_pair(pair: TranslationPair) -> None:
    if pair.ivec[0]:
        raise ConfigurationError("translation pair must start with I_0 empty")
    for labels in pair.ivec + pair.jvec:
        if any(not 1 <= j <= pair.n - 1 for j in labels):
            raise ConfigurationError(f"label set {labels} out of range for n={pair.n}")


def _walk(pair: TranslationPair) -> Tuple[bool, Permutation]:
    n = pair.n
    v = identity_perm(n)
    jsets, isets = pair.j_sets, pair.i_sets
    reduced = True
    for h, (jset, iset) in enumerate(zip(jsets, isets[1:])):
        w_j = longest_element(n, jset)
        moved = perm_mul(v, w_j)
        if h > 0 and perm_length(moved) != perm_length(v) + perm_length(w_j):
            reduced = False
        v = perm_mul(moved, longest_element(n, iset))
    return reduced, v


def is_reduced(pair: TranslationPair) -> bool:
    _check_pair(pair)
    return _walk(pair)[0]


def end_point(pair: TranslationPair) -> Permutation:
    _check_pair(pair)
    return _walk(pair)[1]


def pair_length(pair: TranslationPair) -> int:
    _check_pair(pair)
    return _shift(pair.n, pair.i_sets, pair.j_sets)


def bs_character(pair: TranslationPair) -> HeckeElement:
    """KL(w_J1) *_{I1} KL(w_J2) *_{I2} ... *_{I_{k-1}} KL(w_Jk)."""
    _check_pair(pair)
    jsets, isets = pair.j_sets, pair.i_sets
    result = kl_longest(pair.n, jsets[0])
    for jset, iset in zip(jsets[1:], isets[1:]):
        result = star_mul(result, kl_longest(pair.n, jset), iset)
    return result


def check_pair(lam: Path, order: Sequence[int], h_table: PolynomialTable) -> VerificationReport:
    report = VerificationReport(name="pair", parameters={"lam": lam.steps, "order": list(order)})
    pair = translation_pair(lam, order)
    report.record(is_reduced(pair), f"pair {pair.tensor_notation()} is not reduced")
    report.record(end_point(pair) == perm_of_path(lam), f"end point {end_point(pair)} differs from {lam}")
    report.record(pair_length(pair) == lam.length, f"pair length {pair_length(pair)} != {lam.length}")
    report.record(
        bs_character(pair) == kl_element_full(h_table, lam),
        f"character of {pair.tensor_notation()} differs from the KL element of {lam}",
    )
    return report


def verify_small_resolution(n: int, i: int, cap: Optional[int] = None,
                            h_table: Optional[PolynomialTable] = None) -> VerificationReport:
    cap = cap or settings.neat_order_cap
    h_table = h_table or table_service.h_table(n, i)
    report = VerificationReport(name="small-resolution", parameters={"n": n, "i": i, "cap": cap})
    for lam in enumerate_paths(n, i):
        orders = neat_orders(lam, limit=cap)
        report.record(bool(orders), f"{lam} has no neat order")
        for order in orders:
            report.absorb(check_pair(lam, order, h_table))
    logger.info(report.summary())
    return report
