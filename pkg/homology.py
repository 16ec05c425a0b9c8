"""
Character level singular Rouquier complexes and graded Hom dimensions
between the indecomposable objects indexed by paths.

Shifts follow cha(B(m)) = v^-m cha(B): the summand B_lam(-k) sits in
homological degree -k exactly when g(lam, mu) = v^k.
"""

import logging
from typing import Dict, List, Optional

from dyck import is_dyck_strip, q1, remove_strip, removable_strips, type1_partitions
from errors import OrderError
from hecke import ParabolicHeckeElement, PolynomialTable, kl_element
from laurent import LaurentPolynomial, ZERO
from models import DiffEdge, DiffSupport, RouquierSummand, RouquierTerms, VerificationReport
from paths import Path, box_set, bruhat_leq, bruhat_less, enumerate_paths
from table_service import table_service

logger = logging.getLogger(__name__)


def _single_strip(lower: Path, upper: Path) -> bool:
    boxes = box_set(lower, upper)
    return bool(boxes) and is_dyck_strip(boxes)


def hom1_dim(lam: Path, mu: Path) -> int:
    if lam == mu:
        raise OrderError("degree one Hom is taken between distinct paths; use the graded rank for lam = mu")
    if bruhat_leq(lam, mu):
        return int(_single_strip(lam, mu))
    if bruhat_leq(mu, lam):
        return int(_single_strip(mu, lam))
    return 0


def hom2_dim(lam: Path, mu: Path, h_table: Optional[PolynomialTable] = None) -> int:
    """Coefficient of v^2 in h(lam, mu) plus the paths nu = lam - T1 with mu = nu + T2."""
    if not bruhat_less(lam, mu):
        raise OrderError(f"degree two Hom needs {lam} < {mu}")
    h_table = h_table or table_service.h_table(lam.n, lam.i)
    below = 0
    for strip in removable_strips(lam):
        nu = remove_strip(lam, strip)
        if _single_strip(nu, mu):
            below += 1
    return h_table.get(lam, mu).coefficient(2) + below


def hom_rank_notless(lam: Path, mu: Path) -> LaurentPolynomial:
    """Graded rank of the morphisms not factoring through paths below lam."""
    if not bruhat_leq(lam, mu):
        return ZERO
    counts: Dict[int, int] = {}
    for partition in type1_partitions(lam, mu):
        counts[partition.size] = counts.get(partition.size, 0) + 1
    return LaurentPolynomial(counts)


def cellular_rank(lam: Path, mu: Path) -> LaurentPolynomial:
    """Sum over nu below both of q1(nu, lam) q1(nu, mu), counted on type 1 partitions."""
    total = ZERO
    for nu in enumerate_paths(lam.n, lam.i):
        if bruhat_leq(nu, lam) and bruhat_leq(nu, mu):
            total = total + q1(nu, lam) * q1(nu, mu)
    return total


def rouquier_terms(mu: Path, g_table: Optional[PolynomialTable] = None) -> RouquierTerms:
    g_table = g_table or table_service.g_table(mu.n, mu.i)
    terms: Dict[int, List[RouquierSummand]] = {}
    for lam in g_table.paths:
        g = g_table.get(lam, mu)
        if g.is_zero():
            continue
        k = g.degree()
        terms.setdefault(-k, []).append(RouquierSummand(path=lam, shift=-k))
    return RouquierTerms(mu=mu, terms=terms)


def euler_check(mu: Path, h_table: Optional[PolynomialTable] = None,
                g_table: Optional[PolynomialTable] = None) -> bool:
    """The alternating character sum of the complex is the standard basis element."""
    h_table = h_table or table_service.h_table(mu.n, mu.i)
    g_table = g_table or table_service.g_table(mu.n, mu.i)
    total = ParabolicHeckeElement(mu.n, mu.i)
    for lam in h_table.paths:
        g = g_table.get(lam, mu)
        if g.is_zero():
            continue
        sign = -1 if (mu.length - lam.length) % 2 else 1
        total = total + kl_element(h_table, lam).scale(g * sign)
    return total == ParabolicHeckeElement.standard(mu)


def diff_support(mu: Path, g_table: Optional[PolynomialTable] = None) -> DiffSupport:
    complex_terms = rouquier_terms(mu, g_table)
    nodes = complex_terms.nodes()
    edges: List[DiffEdge] = []
    for degree, source in nodes:
        for target in complex_terms.terms.get(degree + 1, []):
            lam = target.path
            if bruhat_less(source, lam) and _single_strip(source, lam):
                kind = "guaranteed"
            elif bruhat_less(lam, source) and _single_strip(lam, source):
                kind = "candidate"
            else:
                continue
            edges.append(DiffEdge(source_degree=degree, source=source, target_degree=degree + 1,
                                  target=lam, kind=kind))
    return DiffSupport(mu=mu, nodes=nodes, edges=edges)


def ih_graded_rank(mu: Path, h_table: Optional[PolynomialTable] = None) -> LaurentPolynomial:
    h_table = h_table or table_service.h_table(mu.n, mu.i)
    total = ZERO
    for lam in h_table.paths:
        total = total + h_table.get(lam, mu).shift(-lam.length)
    return total


def check_homology(n: int, i: int) -> VerificationReport:
    h_table = table_service.h_table(n, i)
    g_table = table_service.g_table(n, i)
    report = VerificationReport(name="homology", parameters={"n": n, "i": i})
    paths = enumerate_paths(n, i)
    for mu in paths:
        report.record(euler_check(mu, h_table, g_table), f"Euler sum of the complex of {mu} is wrong")
        complex_terms = rouquier_terms(mu, g_table)
        report.record(complex_terms.paths_in_degree(0) == [mu.steps], f"degree 0 term of {mu} is not {mu}")
        for degree, summands in complex_terms.terms.items():
            for summand in summands:
                g = g_table.get(summand.path, mu)
                report.record(g.is_monomial() and g.degree() == -degree == -summand.shift,
                              f"{summand.path} sits in degree {degree} with g={g}")
        support = diff_support(mu, g_table)
        for degree, node in support.nodes:
            if degree < 0:
                report.record(bool(support.edges_from(degree, node.steps)),
                              f"node ({degree},{node}) of the complex of {mu} has no outgoing edge")
        rank = ih_graded_rank(mu, h_table)
        report.record(rank.is_bar_invariant(), f"graded rank {rank} of {mu} is not palindromic")
        for lam in paths:
            notless = hom_rank_notless(lam, mu)
            report.record(notless == q1(lam, mu) == h_table.get(lam, mu),
                          f"graded ranks disagree at ({lam},{mu})")
            if bruhat_less(lam, mu):
                cellular = cellular_rank(lam, mu)
                report.record(cellular.coefficient(2) == hom2_dim(lam, mu, h_table),
                              f"cellular degree 2 rank differs from Hom2 at ({lam},{mu})")
    logger.info(report.summary())
    return report
