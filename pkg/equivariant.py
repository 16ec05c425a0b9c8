"""
Pieri rules for the equivariant cohomology of a Grassmannian Schubert variety
X_mu, in the Schubert basis and in the basis F_P indexed by type 1 partitions,
with a localization model used as an independent oracle.

Coefficients act on the left and degree two invariants h on the right:

    S_lam . h = w_lam(h) S_lam + d_i(h) sum_{C} S_{lam + C}
    F_P . h   = w_nu(h) F_P + d_i(h) sum_{C} F_{C u P}

where C runs over single boxes addable to lam inside mu (resp. removable
from nu, P a partition of A(nu, mu)).
"""

import logging
import random
from typing import Dict, Iterator, List, Optional, Tuple

from sympy import QQ

from config import settings
from demazure import (
    MultivariatePolynomial,
    billey_restriction,
    check_invariant_weight,
    demazure,
    grassmannian_weight,
    is_homogeneous,
    permute,
    polynomial_ring,
    random_polynomial,
)
from dyck import DyckPartition, enumerate_partitions, is_type1, remove_strip, single_box_removals
from errors import OrderError, ParameterError
from models import VerificationReport
from paths import Path, add_box, bruhat_leq, enumerate_paths, perm_of_path, region_boxes, valleys

logger = logging.getLogger(__name__)

FIndex = Tuple[Path, DyckPartition]


def _trimmed(coeffs: Dict) -> Dict:
    return {k: c for k, c in coeffs.items() if c}


def _accumulate(acc: Dict, key, coeff: MultivariatePolynomial) -> None:
    total = acc[key] + coeff if key in acc else coeff
    if total:
        acc[key] = total
    else:
        acc.pop(key, None)


class SchubertModuleElement:
    """Left R-combination of the classes S_lam, lam <= mu"""

    def __init__(self, mu: Path, coeffs: Dict[Path, MultivariatePolynomial] = None):
        self.mu = mu
        self.coeffs = _trimmed(coeffs or {})
        for lam in self.coeffs:
            if not bruhat_leq(lam, mu):
                raise OrderError(f"S_{lam} does not live on X_{mu}")

    def items(self) -> Iterator[Tuple[Path, MultivariatePolynomial]]:
        return iter(sorted(self.coeffs.items(), key=lambda t: t[0].sort_key()))

    def coefficient(self, lam: Path) -> MultivariatePolynomial:
        return self.coeffs.get(lam, polynomial_ring(self.mu.n).zero)

    def __add__(self, other: "SchubertModuleElement") -> "SchubertModuleElement":
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            _accumulate(out, lam, c)
        return SchubertModuleElement(self.mu, out)

    def left_scale(self, c: MultivariatePolynomial) -> "SchubertModuleElement":
        return SchubertModuleElement(self.mu, {lam: c * v for lam, v in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, SchubertModuleElement):
            return NotImplemented
        return self.mu == other.mu and self.coeffs == other.coeffs

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c.as_expr()})S[{lam}]" for lam, c in self.items())


class FModuleElement:
    """Left R-combination of the F_P, P a partition of A(nu, mu) for some nu <= mu"""

    def __init__(self, mu: Path, coeffs: Dict[FIndex, MultivariatePolynomial] = None):
        self.mu = mu
        self.coeffs = _trimmed(coeffs or {})

    def items(self) -> Iterator[Tuple[FIndex, MultivariatePolynomial]]:
        return iter(sorted(self.coeffs.items(), key=lambda t: (t[0][0].sort_key(), t[0][1].sorted_strips())))

    def formal_terms(self) -> List[FIndex]:
        """Indices outside the type 1 basis."""
        return [key for key, _ in self.items() if not is_type1(key[1])]

    def __add__(self, other: "FModuleElement") -> "FModuleElement":
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            _accumulate(out, key, c)
        return FModuleElement(self.mu, out)

    def left_scale(self, c: MultivariatePolynomial) -> "FModuleElement":
        return FModuleElement(self.mu, {key: c * v for key, v in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, FModuleElement):
            return NotImplemented
        return self.mu == other.mu and self.coeffs == other.coeffs

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(
            f"({c.as_expr()})F[{nu};{','.join(str(s) for s in p.sorted_strips())}]" for (nu, p), c in self.items()
        )


def schubert_basis(lam: Path, mu: Path) -> SchubertModuleElement:
    return SchubertModuleElement(mu, {lam: polynomial_ring(mu.n).one})


def f_basis(mu: Path) -> List[FModuleElement]:
    """One element per type 1 partition of A(nu, mu), nu <= mu."""
    one = polynomial_ring(mu.n).one
    basis = []
    for nu in enumerate_paths(mu.n, mu.i):
        if not bruhat_leq(nu, mu):
            continue
        for p in enumerate_partitions(nu, mu):
            if is_type1(p):
                basis.append(FModuleElement(mu, {(nu, p): one}))
    return basis


def _pieri_scalars(h: MultivariatePolynomial, i: int) -> MultivariatePolynomial:
    check_invariant_weight(h, i)
    return demazure(i, h)


def schubert_act(h: MultivariatePolynomial, xi: SchubertModuleElement) -> SchubertModuleElement:
    mu = xi.mu
    coroot = _pieri_scalars(h, mu.i)
    out: Dict[Path, MultivariatePolynomial] = {}
    for lam, c in xi.coeffs.items():
        _accumulate(out, lam, c * permute(perm_of_path(lam), h))
        if not coroot:
            continue
        for j in valleys(lam):
            raised = add_box(lam, j)
            if bruhat_leq(raised, mu):
                _accumulate(out, raised, c * coroot)
    return SchubertModuleElement(mu, out)


def f_act(h: MultivariatePolynomial, xi: FModuleElement) -> FModuleElement:
    mu = xi.mu
    coroot = _pieri_scalars(h, mu.i)
    out: Dict[FIndex, MultivariatePolynomial] = {}
    for (nu, p), c in xi.coeffs.items():
        _accumulate(out, (nu, p), c * permute(perm_of_path(nu), h))
        if not coroot:
            continue
        for strip in single_box_removals(nu):
            lowered = remove_strip(nu, strip)
            merged = DyckPartition(region_boxes(lowered, mu), p.strips | {strip})
            if not is_type1(merged):
                logger.warning("formal term F[%s] outside the type 1 basis of %s", merged.to_json(), mu)
            _accumulate(out, (lowered, merged), c * coroot)
    return FModuleElement(mu, out)


class GKMClass:
    """Tuple of polynomials indexed by the fixed points w <= mu"""

    def __init__(self, mu: Path, values: Dict[Path, MultivariatePolynomial]):
        self.mu = mu
        self.values = values

    def at(self, w: Path) -> MultivariatePolynomial:
        return self.values.get(w, polynomial_ring(self.mu.n).zero)

    def twisted_right(self, h: MultivariatePolynomial) -> "GKMClass":
        """(xi . h)(w) = xi(w) w(h)."""
        return GKMClass(self.mu, {w: v * permute(perm_of_path(w), h) for w, v in self.values.items()})

    def __eq__(self, other):
        if not isinstance(other, GKMClass):
            return NotImplemented
        points = set(self.values) | set(other.values)
        return self.mu == other.mu and all(self.at(w) == other.at(w) for w in points)


def gkm_schubert(lam: Path, mu: Path) -> GKMClass:
    if not bruhat_leq(lam, mu):
        raise OrderError(f"{lam} is not below {mu}")
    v = perm_of_path(lam)
    values = {
        w: billey_restriction(v, perm_of_path(w))
        for w in enumerate_paths(mu.n, mu.i)
        if bruhat_leq(w, mu)
    }
    return GKMClass(mu, values)


def _signed_class(lam: Path, mu: Path) -> GKMClass:
    """The class matching S_lam in the Pieri rule: (-1)^l(lam) times the restriction class."""
    base = gkm_schubert(lam, mu)
    if lam.length % 2 == 0:
        return base
    return GKMClass(mu, {w: -v for w, v in base.values.items()})


def localize(xi: SchubertModuleElement, classes: Optional[Dict[Path, GKMClass]] = None) -> GKMClass:
    mu = xi.mu
    classes = classes if classes is not None else {}
    R = polynomial_ring(mu.n)
    points = [w for w in enumerate_paths(mu.n, mu.i) if bruhat_leq(w, mu)]
    values = {w: R.zero for w in points}
    for lam, c in xi.coeffs.items():
        if lam not in classes:
            classes[lam] = _signed_class(lam, mu)
        for w in points:
            values[w] += c * classes[lam].at(w)
    return GKMClass(mu, values)


def invariant_spanning_set(n: int, i: int) -> List[MultivariatePolynomial]:
    """x_1 + ... + x_i and the central x_1 + ... + x_n."""
    return [grassmannian_weight(n, i), grassmannian_weight(n, n)]


def verify_pieri_gkm(n: int, i: int) -> VerificationReport:
    report = VerificationReport(name="pieri-gkm", parameters={"n": n, "i": i})
    spanning = invariant_spanning_set(n, i)
    for mu in enumerate_paths(n, i):
        classes: Dict[Path, GKMClass] = {}
        for lam in enumerate_paths(n, i):
            if not bruhat_leq(lam, mu):
                continue
            base = localize(schubert_basis(lam, mu), classes)
            for h in spanning:
                lhs = localize(schubert_act(h, schubert_basis(lam, mu)), classes)
                report.record(lhs == base.twisted_right(h),
                              f"Pieri rule disagrees with localization for S_{lam} on X_{mu}, h={h.as_expr()}")
    logger.info(report.summary())
    return report


def random_invariant(n: int, i: int, rng: random.Random) -> MultivariatePolynomial:
    a, b = rng.randint(-3, 3), rng.randint(-3, 3)
    first, center = invariant_spanning_set(n, i)
    return first * QQ(a) + center * QQ(b)


def _random_schubert_element(mu: Path, rng: random.Random) -> SchubertModuleElement:
    lower = [lam for lam in enumerate_paths(mu.n, mu.i) if bruhat_leq(lam, mu)]
    return SchubertModuleElement(mu, {lam: random_polynomial(mu.n, rng.randint(0, 1), rng) for lam in lower})


def _random_f_element(mu: Path, rng: random.Random) -> FModuleElement:
    out = FModuleElement(mu)
    for basis in f_basis(mu):
        out = out + basis.left_scale(random_polynomial(mu.n, rng.randint(0, 1), rng))
    return out


def check_commutativity(n: int, i: int, seed: Optional[int] = None, trials: Optional[int] = None) -> VerificationReport:
    """Both actions commute: (xi . h) . h' = (xi . h') . h."""
    seed = settings.default_seed if seed is None else seed
    trials = trials or settings.commutativity_trials
    if trials < 1:
        raise ParameterError("commutativity check needs at least one trial")
    rng = random.Random(seed)
    paths = enumerate_paths(n, i)
    report = VerificationReport(name="commutativity", parameters={"n": n, "i": i, "seed": seed, "trials": trials})
    for _ in range(trials):
        mu = rng.choice(paths)
        h, h2 = random_invariant(n, i, rng), random_invariant(n, i, rng)
        xi = _random_schubert_element(mu, rng)
        report.record(schubert_act(h2, schubert_act(h, xi)) == schubert_act(h, schubert_act(h2, xi)),
                      f"Schubert action does not commute on X_{mu}")
        eta = _random_f_element(mu, rng)
        report.record(f_act(h2, f_act(h, eta)) == f_act(h, f_act(h2, eta)),
                      f"F action does not commute on X_{mu}")
    logger.info(report.summary())
    return report


def check_grading(mu: Path, h: Optional[MultivariatePolynomial] = None) -> bool:
    """S_lam . h is homogeneous of degree l(lam) + 1; the F action never raises nu."""
    h = h if h is not None else grassmannian_weight(mu.n, mu.i)
    for lam in enumerate_paths(mu.n, mu.i):
        if not bruhat_leq(lam, mu):
            continue
        for kappa, c in schubert_act(h, schubert_basis(lam, mu)).items():
            if not is_homogeneous(c, lam.length + 1 - kappa.length):
                return False
    for basis in f_basis(mu):
        (nu, _), = basis.coeffs.keys()
        if any(not bruhat_leq(target, nu) for (target, _), _ in f_act(h, basis).items()):
            return False
    return True
