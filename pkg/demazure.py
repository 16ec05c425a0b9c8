"""
Demazure operators on Q[x_1..x_n].

Polynomials are sparse sympy ``PolyElement`` objects over QQ. A permutation w
acts by x_k -> x_{w(k)}; the root of the transposition (a b), a < b, is
x_a - x_b. Degrees are polynomial degrees (the geometric grading doubles them).
"""

import itertools
import logging
import random
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, PolyRing, ring

from config import settings
from errors import ContractViolationError, DomainError, ParameterError
from models import VerificationReport
from paths import (
    Permutation,
    coset_path,
    enumerate_paths,
    identity_perm,
    is_minimal_coset_rep,
    is_reduced_word,
    parabolic_labels,
    perm_inverse,
    perm_length,
    perm_mul,
    perm_of_path,
    perm_reduced_word,
    right_mul_simple,
    transposition,
    word_to_perm,
)

logger = logging.getLogger(__name__)

MultivariatePolynomial = PolyElement


class ReflectionOperator(NamedTuple):
    """The transposition (a b), a < b"""
    a: int
    b: int

    def perm(self, n: int) -> Permutation:
        return transposition(n, self.a, self.b)

    def root(self, n: int) -> MultivariatePolynomial:
        gens = polynomial_ring(n).gens
        return gens[self.a - 1] - gens[self.b - 1]


@lru_cache(maxsize=None)
def polynomial_ring(n: int) -> PolyRing:
    if n < 1:
        raise ParameterError(f"polynomial ring needs at least one variable, got n={n}")
    names = ",".join(f"x{k}" for k in range(1, n + 1))
    return ring(names, QQ)[0]


def variables(n: int) -> Tuple[MultivariatePolynomial, ...]:
    return tuple(polynomial_ring(n).gens)


def _n_of(f: MultivariatePolynomial) -> int:
    return f.ring.ngens


def simple_root(n: int, j: int) -> MultivariatePolynomial:
    if not 1 <= j <= n - 1:
        raise ParameterError(f"label {j} out of range 1..{n - 1}")
    x = variables(n)
    return x[j - 1] - x[j]


def total_degree(f: MultivariatePolynomial) -> int:
    """Polynomial degree; -1 for zero."""
    if not f:
        return -1
    return max(sum(monom) for monom in f.keys())


def is_homogeneous(f: MultivariatePolynomial, degree: int) -> bool:
    return all(sum(monom) == degree for monom in f.keys())


def constant_value(f: MultivariatePolynomial):
    """Value of a constant polynomial; raises when f has positive degree."""
    if total_degree(f) > 0:
        raise DomainError(f"{f.as_expr()} is not a constant")
    return f.get((0,) * _n_of(f), QQ.zero)


def permute(w: Sequence[int], f: MultivariatePolynomial) -> MultivariatePolynomial:
    n = _n_of(f)
    if len(w) != n:
        raise ParameterError(f"permutation {tuple(w)} does not act on {n} variables")
    out: Dict[Tuple[int, ...], object] = {}
    for monom, coeff in f.items():
        moved = [0] * n
        for k, e in enumerate(monom):
            moved[w[k] - 1] = e
        out[tuple(moved)] = coeff
    return f.ring.from_dict(out)


def _divide(num: MultivariatePolynomial, den: MultivariatePolynomial) -> MultivariatePolynomial:
    try:
        return num.exquo(den)
    except ExactQuotientFailed as exc:
        raise ContractViolationError(f"{num.as_expr()} is not divisible by {den.as_expr()}") from exc


def demazure(j: int, f: MultivariatePolynomial) -> MultivariatePolynomial:
    """(f - s_j f) / (x_j - x_{j+1})."""
    n = _n_of(f)
    alpha = simple_root(n, j)
    return _divide(f - permute(right_mul_simple(identity_perm(n), j), f), alpha)


def demazure_word(word: Sequence[int], f: MultivariatePolynomial) -> MultivariatePolynomial:
    """d_{s1} d_{s2} ... d_{sk} f, the rightmost operator applied first."""
    n = _n_of(f)
    if not is_reduced_word(n, word):
        raise DomainError(f"word {list(word)} is not reduced")
    for j in reversed(word):
        f = demazure(j, f)
    return f


def demazure_perm(w: Sequence[int], f: MultivariatePolynomial) -> MultivariatePolynomial:
    return demazure_word(perm_reduced_word(w), f)


def reflection_demazure(t: ReflectionOperator, f: MultivariatePolynomial) -> MultivariatePolynomial:
    n = _n_of(f)
    return _divide(f - permute(t.perm(n), f), t.root(n))


def conjugating_pair(t: ReflectionOperator, n: int) -> Tuple[Permutation, int]:
    """(w, j) with t = w s_j w^-1 and w s_j > w."""
    # w fixes a and sends a+1 to b
    w = word_to_perm(n, range(t.b - 1, t.a, -1))
    j = t.a
    if perm_mul(perm_mul(w, transposition(n, j, j + 1)), perm_inverse(w)) != t.perm(n):
        raise ContractViolationError(f"failed to conjugate {t} to a simple reflection")
    return w, j


def all_reduced_words(w: Sequence[int]) -> List[Tuple[int, ...]]:
    return sorted(_reduced_words(tuple(w)))


@lru_cache(maxsize=None)
def _reduced_words(w: Tuple[int, ...]) -> frozenset:
    if perm_length(w) == 0:
        return frozenset({()})
    words = set()
    for j in range(1, len(w)):
        if w[j - 1] > w[j]:
            for word in _reduced_words(right_mul_simple(w, j)):
                words.add(word + (j,))
    return frozenset(words)


def covers_below(x: Sequence[int]) -> List[Tuple[Permutation, ReflectionOperator]]:
    """All (y, t) with y t = x and l(y) = l(x) - 1."""
    n = len(x)
    target = perm_length(x) - 1
    out = []
    for a in range(1, n):
        for b in range(a + 1, n + 1):
            y = perm_mul(x, transposition(n, a, b))
            if perm_length(y) == target:
                out.append((y, ReflectionOperator(a, b)))
    return out


def demaformula_rhs(x: Sequence[int], f: MultivariatePolynomial, g: MultivariatePolynomial) -> MultivariatePolynomial:
    total = f.ring.zero
    for y, t in covers_below(x):
        total += reflection_demazure(t, f) * demazure_perm(y, g)
    return total


def random_polynomial(n: int, degree: int, rng: random.Random, spread: int = 3) -> MultivariatePolynomial:
    """Dense random homogeneous polynomial with integer coefficients in [-spread, spread]."""
    R = polynomial_ring(n)
    terms = {}
    for combo in itertools.combinations_with_replacement(range(n), degree):
        monom = [0] * n
        for k in combo:
            monom[k] += 1
        terms[tuple(monom)] = QQ(rng.randint(-spread, spread))
    return R.from_dict(terms)


def check_demaformula(x: Sequence[int], trials: Optional[int] = None, seed: Optional[int] = None) -> bool:
    """d_x(fg) against the sum over covers y -t-> x, for random linear f and g of degree l(x)-1."""
    trials = trials or settings.demaformula_trials
    rng = random.Random(settings.default_seed if seed is None else seed)
    n = len(x)
    length = perm_length(x)
    if length == 0:
        return True
    for _ in range(trials):
        f = random_polynomial(n, 1, rng)
        g = random_polynomial(n, length - 1, rng)
        if demazure_perm(x, f * g) != demaformula_rhs(x, f, g):
            logger.debug("demazure product formula fails for x=%s", x)
            return False
    return True


def grassmannian_weight(n: int, i: int) -> MultivariatePolynomial:
    """x_1 + ... + x_i."""
    x = variables(n)
    return sum(x[:i], polynomial_ring(n).zero)


def check_invariant_weight(rho: MultivariatePolynomial, i: int) -> None:
    n = _n_of(rho)
    if rho and not is_homogeneous(rho, 1):
        raise DomainError(f"{rho.as_expr()} is not homogeneous of degree 2")
    for j in parabolic_labels(n, i):
        if permute(right_mul_simple(identity_perm(n), j), rho) != rho:
            raise DomainError(f"{rho.as_expr()} is not invariant under s_{j}")


def is_ample(rho: MultivariatePolynomial, i: int) -> bool:
    check_invariant_weight(rho, i)
    if not rho:
        return False
    return constant_value(demazure(i, rho)) > 0


def positivity_sweep(n: int, i: int, rho: Optional[MultivariatePolynomial] = None) -> VerificationReport:
    """d_w(rho^l(w)) > 0 for every w in W^I, and partial positivity along a reduced word."""
    rho = rho if rho is not None else grassmannian_weight(n, i)
    report = VerificationReport(name="positivity", parameters={"n": n, "i": i})
    if not is_ample(rho, i):
        raise DomainError(f"{rho.as_expr()} is not ample for i={i}")
    for lam in enumerate_paths(n, i):
        w = perm_of_path(lam)
        word = perm_reduced_word(w)
        value = constant_value(demazure_word(word, rho ** len(word)))
        report.record(value > 0, f"d_w(rho^l) = {value} for w={w}")
        for k in range(len(word)):
            moved = permute(word_to_perm(n, word[k + 1:]), rho)
            partial = constant_value(demazure(word[k], moved))
            report.record(partial > 0, f"partial value {partial} at step {k + 1} of {word}")
    logger.info(report.summary())
    return report


def billey_restriction(v: Sequence[int], w: Sequence[int], word: Optional[Sequence[int]] = None) -> MultivariatePolynomial:
    """
    Restriction of the Schubert class of v to the fixed point w: the sum over
    reduced subwords of a reduced word of w with product v of the products of
    the roots s_b1...s_b(k-1)(alpha_bk).
    """
    n = len(w)
    R = polynomial_ring(n)
    word = list(word) if word is not None else perm_reduced_word(w)
    if word_to_perm(n, word) != tuple(w) or not is_reduced_word(n, word):
        raise DomainError(f"{word} is not a reduced word for {tuple(w)}")
    roots = []
    prefix = identity_perm(n)
    for j in word:
        roots.append(permute(prefix, simple_root(n, j)))
        prefix = right_mul_simple(prefix, j)
    target = tuple(v)
    k = perm_length(target)
    total = R.zero
    for positions in itertools.combinations(range(len(word)), k):
        if word_to_perm(n, [word[p] for p in positions]) != target:
            continue
        term = R.one
        for p in positions:
            term *= roots[p]
        total += term
    return total


def gkm_edges_divisible(v: Sequence[int], n: int, i: int) -> bool:
    """Restrictions at u and t u differ by a multiple of the root of t."""
    points = [perm_of_path(lam) for lam in enumerate_paths(n, i)]
    values = {u: billey_restriction(v, u) for u in points}
    for u in points:
        for a in range(1, n):
            for b in range(a + 1, n + 1):
                tu = perm_mul(transposition(n, a, b), u)
                if not is_minimal_coset_rep(tu, i):
                    continue
                try:
                    _divide(values[u] - values[tu], ReflectionOperator(a, b).root(n))
                except ContractViolationError:
                    return False
    return True


def poly_to_json(f: MultivariatePolynomial) -> List[List]:
    return [[list(monom), int(c.numerator), int(c.denominator)] for monom, c in sorted(f.items())]


def poly_from_json(n: int, data: Iterable[Sequence]) -> MultivariatePolynomial:
    R = polynomial_ring(n)
    return R.from_dict({tuple(monom): QQ(int(num), int(den)) for monom, num, den in data})


def random_perm_of_length(n: int, length: int, rng: random.Random) -> Permutation:
    """Random walk up the weak order; stops early at the longest element."""
    w = identity_perm(n)
    for _ in range(length):
        ascents = [j for j in range(1, n) if w[j - 1] < w[j]]
        if not ascents:
            break
        w = right_mul_simple(w, rng.choice(ascents))
    return w


def random_reduced_word(w: Sequence[int], rng: random.Random) -> Tuple[int, ...]:
    word: List[int] = []
    current = tuple(w)
    while perm_length(current):
        j = rng.choice([j for j in range(1, len(current)) if current[j - 1] > current[j]])
        word.append(j)
        current = right_mul_simple(current, j)
    return tuple(reversed(word))


def _word_values(f: MultivariatePolynomial) -> Callable[[Tuple[int, ...]], MultivariatePolynomial]:
    """d_word f with every suffix evaluated once."""
    values: Dict[Tuple[int, ...], MultivariatePolynomial] = {(): f}

    def value(word: Tuple[int, ...]) -> MultivariatePolynomial:
        if word not in values:
            values[word] = demazure(word[0], value(word[1:]))
        return values[word]

    return value


def braid_sweep(n: int, seed: Optional[int] = None) -> VerificationReport:
    """
    d_w agrees across reduced words of w. Every w in S_n and every reduced
    word up to braid_exhaustive_max_n; above it, braid_samples random w of
    length at most braid_sample_max_length with a few random words each.
    """
    seed = settings.default_seed if seed is None else seed
    rng = random.Random(seed)
    exhaustive = n <= settings.braid_exhaustive_max_n
    report = VerificationReport(name="braid", parameters={"n": n, "exhaustive": exhaustive})
    if exhaustive:
        group = sorted(itertools.permutations(range(1, n + 1)), key=perm_length)
        value = _word_values(random_polynomial(n, perm_length(group[-1]), rng))
        words_checked = 0
        for w in group:
            words = all_reduced_words(w)
            words_checked += len(words)
            first = value(words[0])
            report.record(all(value(word) == first for word in words[1:]),
                          f"braid relations fail for w={w}")
        report.notes.append(f"braid: {len(group)} permutations, {words_checked} reduced words")
    else:
        for _ in range(settings.braid_samples):
            w = random_perm_of_length(n, rng.randint(1, settings.braid_sample_max_length), rng)
            value = _word_values(random_polynomial(n, perm_length(w), rng))
            words = {random_reduced_word(w, rng) for _ in range(5)}
            first = value(next(iter(words)))
            report.record(all(value(word) == first for word in words),
                          f"braid relations fail for w={w}")
    logger.info(report.summary())
    return report


def demaformula_sweep(n: int, trials: Optional[int] = None, seed: Optional[int] = None) -> VerificationReport:
    """The product formula for every x in S_n with 1 <= l(x) <= demaformula_max_length."""
    trials = trials or settings.demaformula_trials
    seed = settings.default_seed if seed is None else seed
    rng = random.Random(seed)
    report = VerificationReport(name="demaformula", parameters={"n": n, "trials": trials})
    elements = [w for w in itertools.permutations(range(1, n + 1))
                if 1 <= perm_length(w) <= settings.demaformula_max_length]
    for x in sorted(elements, key=perm_length):
        report.record(check_demaformula(x, trials=trials, seed=rng.randint(0, 10 ** 6)),
                      f"product formula fails for x={x}")
    report.notes.append(f"demaformula: {len(elements)} elements, {trials} instances each")
    logger.info(report.summary())
    return report


def check_demazure_suite(n: int, i: int, seed: Optional[int] = None,
                         trials: Optional[int] = None) -> VerificationReport:
    seed = settings.default_seed if seed is None else seed
    rng = random.Random(seed)
    report = VerificationReport(name="demazure", parameters={"n": n, "i": i, "seed": seed})
    identity = identity_perm(n)
    for j in range(1, n):
        f = random_polynomial(n, 3, rng)
        g = random_polynomial(n, 2, rng)
        report.record(not demazure(j, demazure(j, f)), f"d_{j}^2 f != 0")
        s = right_mul_simple(identity, j)
        leibniz = demazure(j, f) * g + permute(s, f) * demazure(j, g)
        report.record(demazure(j, f * g) == leibniz, f"twisted Leibniz rule fails for j={j}")

    report.absorb(braid_sweep(n, seed=rng.randint(0, 10 ** 6)))
    report.absorb(demaformula_sweep(n, trials=trials, seed=rng.randint(0, 10 ** 6)))
    report.absorb(positivity_sweep(n, i))
    for lam in enumerate_paths(n, i):
        report.record(gkm_edges_divisible(perm_of_path(lam), n, i),
                      f"GKM edge condition fails for the class of {lam}")
    for lam in enumerate_paths(n, i):
        w = perm_of_path(lam)
        report.record(coset_path(w, n, i) == lam, f"{lam} does not round trip through its coset")
    logger.info(report.summary())
    return report
