"""
Dyck strips and Dyck partitions of the region between two paths.

A Dyck strip is the set of boxes centred on a Dyck path: consecutive x
coordinates, y moving by one, both endpoints at the maximal height. Type 1
and type 2 partitions count the parabolic Kazhdan-Lusztig polynomials and
their inverses.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from errors import ConfigurationError, OrderError, StripPlacementError
from laurent import LaurentPolynomial, ZERO
from models import VerificationReport
from paths import (
    DOWN,
    UP,
    Box,
    Path,
    Region,
    bruhat_leq,
    enumerate_paths,
    path_from_string,
    region_boxes,
    young_shape,
)

logger = logging.getLogger(__name__)

PARTITION_CACHE_SIZE = 4096

# Smallest region with two type 1 partitions of equal size comparable under >
EQUAL_SIZE_EXAMPLE = ("DDDUUUU", "UUDUDUD")


@dataclass(frozen=True, order=True)
class DyckStrip:
    """Boxes along a Dyck path, sorted by x"""
    boxes: Tuple[Box, ...]

    def __post_init__(self):
        if not _is_strip_sequence(self.boxes):
            raise StripPlacementError(f"{list(self.boxes)} is not a Dyck strip")

    @classmethod
    def from_boxes(cls, boxes: Iterable[Sequence[int]]) -> "DyckStrip":
        return cls(tuple(sorted(Box(*b) for b in boxes)))

    @property
    def height(self) -> int:
        return self.boxes[0].y

    @property
    def length(self) -> int:
        return len(self.boxes)

    @property
    def start(self) -> int:
        return self.boxes[0].x

    @property
    def end(self) -> int:
        return self.boxes[-1].x

    @property
    def box_set(self) -> FrozenSet[Box]:
        return frozenset(self.boxes)

    def to_json(self) -> List[List[int]]:
        return [list(b) for b in self.boxes]

    def __str__(self):
        return "{" + ",".join(f"({b.x},{b.y})" for b in self.boxes) + "}"


@dataclass(frozen=True)
class DyckPartition:
    """A partition of region.boxes into Dyck strips"""
    region: Region
    strips: FrozenSet[DyckStrip]
    _owner: Dict[Box, DyckStrip] = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        owner = {}
        for strip in self.strips:
            for box in strip.boxes:
                if box in owner:
                    raise StripPlacementError(f"box {tuple(box)} lies in two strips")
                owner[box] = strip
        if set(owner) != set(self.region.boxes):
            raise StripPlacementError("strips do not cover the region exactly")
        object.__setattr__(self, "_owner", owner)

    @property
    def size(self) -> int:
        return len(self.strips)

    @property
    def owner(self) -> Dict[Box, DyckStrip]:
        return self._owner

    def sorted_strips(self) -> List[DyckStrip]:
        return sorted(self.strips)

    def to_json(self) -> List[List[List[int]]]:
        return [s.to_json() for s in self.sorted_strips()]


@dataclass(frozen=True)
class StripOrdering:
    """An enumeration of the strips of a partition"""
    partition: DyckPartition
    order: Tuple[DyckStrip, ...]

    def __post_init__(self):
        if len(self.order) != len(self.partition.strips) or set(self.order) != set(self.partition.strips):
            raise ConfigurationError("ordering must enumerate every strip exactly once")

    def index_list(self) -> List[int]:
        """Position of each ordered strip within the sorted strip list."""
        ranked = self.partition.sorted_strips()
        return [ranked.index(s) for s in self.order]


def _is_strip_sequence(boxes: Sequence[Box]) -> bool:
    if not boxes or len(boxes) % 2 == 0:
        return False
    top = boxes[0].y
    if boxes[-1].y != top:
        return False
    for prev, cur in zip(boxes, boxes[1:]):
        if cur.x != prev.x + 1 or abs(cur.y - prev.y) != 1:
            return False
    return all(b.y <= top for b in boxes)


def is_dyck_strip(boxes: Iterable[Sequence[int]]) -> bool:
    ordered = sorted(Box(*b) for b in boxes)
    return _is_strip_sequence(ordered)


# Adding and removing strips

def is_addable(lam: Path, strip: DyckStrip) -> bool:
    x0, x1 = strip.start, strip.end
    if x0 < 1 or x1 > lam.n - 1:
        return False
    if lam.step(x0) != DOWN or lam.step(x1 + 1) != UP:
        return False
    return all(b.y == lam.heights[b.x] + 1 for b in strip.boxes)


def add_strip(lam: Path, strip: DyckStrip) -> Path:
    """lam + D: raise the heights by 2 over the strip."""
    if not is_addable(lam, strip):
        raise StripPlacementError(f"strip {strip} cannot be added to {lam}")
    chars = list(lam.steps)
    chars[strip.start - 1] = UP
    chars[strip.end] = DOWN
    return lam.replace_steps("".join(chars))


def is_removable(mu: Path, strip: DyckStrip) -> bool:
    x0, x1 = strip.start, strip.end
    if x0 < 1 or x1 > mu.n - 1:
        return False
    if mu.step(x0) != UP or mu.step(x1 + 1) != DOWN:
        return False
    return all(b.y == mu.heights[b.x] - 1 for b in strip.boxes)


def remove_strip(mu: Path, strip: DyckStrip) -> Path:
    """mu - D: lower the heights by 2 over the strip."""
    if not is_removable(mu, strip):
        raise StripPlacementError(f"strip {strip} cannot be removed from {mu}")
    chars = list(mu.steps)
    chars[strip.start - 1] = DOWN
    chars[strip.end] = UP
    return mu.replace_steps("".join(chars))


def removable_strips(mu: Path) -> List[DyckStrip]:
    """All D with mu - D a path and A(mu - D, mu) = D."""
    hgt = mu.heights
    strips = []
    for x0 in range(1, mu.n):
        if mu.step(x0) != UP:
            continue
        for x1 in range(x0, mu.n, 2):
            if any(hgt[x] > hgt[x0] for x in range(x0, x1 + 1)):
                break
            if hgt[x1] == hgt[x0] and mu.step(x1 + 1) == DOWN:
                strips.append(DyckStrip(tuple(Box(x, hgt[x] - 1) for x in range(x0, x1 + 1))))
    return sorted(strips, key=lambda s: (s.start, s.length))


def single_box_removals(mu: Path) -> List[DyckStrip]:
    return [s for s in removable_strips(mu) if s.length == 1]


# Enumeration

def _strips_from(start: Box, free: FrozenSet[Box]) -> Iterator[DyckStrip]:
    """Dyck strips with leftmost box ``start`` inside ``free``."""
    top = start.y
    trail = [start]

    def extend():
        last = trail[-1]
        if last.y == top:
            yield DyckStrip(tuple(trail))
        for dy in (-1, 1):
            nxt = Box(last.x + 1, last.y + dy)
            if nxt.y <= top and nxt in free:
                trail.append(nxt)
                yield from extend()
                trail.pop()

    yield from extend()


@lru_cache(maxsize=PARTITION_CACHE_SIZE)
def _partitions_of(boxes: FrozenSet[Box]) -> Tuple[FrozenSet[DyckStrip], ...]:
    found = []

    def search(free: FrozenSet[Box], chosen: Tuple[DyckStrip, ...]):
        if not free:
            found.append(frozenset(chosen))
            return
        start = min(free)
        for strip in _strips_from(start, free):
            search(free - strip.box_set, chosen + (strip,))

    search(boxes, ())
    return tuple(sorted(found, key=lambda strips: sorted(strips)))


def enumerate_partitions(lam: Path, mu: Path) -> List[DyckPartition]:
    """Every partition of A(lam, mu) into Dyck strips, each exactly once."""
    region = region_boxes(lam, mu)
    partitions = [DyckPartition(region, strips) for strips in _partitions_of(region.boxes)]
    logger.debug("%d Dyck partitions between %s and %s", len(partitions), lam, mu)
    return partitions


def singles_partition(lam: Path, mu: Path) -> DyckPartition:
    region = region_boxes(lam, mu)
    return DyckPartition(region, frozenset(DyckStrip((b,)) for b in region.boxes))


def clear_partition_cache() -> None:
    _partitions_of.cache_clear()


def region_height(lam: Path, mu: Path) -> int:
    """
    hgt(lam, mu) read off the paths: the top box of column x sits at
    hgt_x(mu) - 1 whenever mu is above lam there. 0 for an empty region.
    """
    if not bruhat_leq(lam, mu):
        raise OrderError(f"{lam} is not below {mu}")
    return max(
        (mu.heights[x] - 1 for x in range(1, lam.n) if mu.heights[x] > lam.heights[x]),
        default=0,
    )


def check_region_height(lam: Path, mu: Path) -> bool:
    """
    Every partition has region_height as its maximal strip height, and each
    strip through a top box reaches it.
    """
    expected = region_height(lam, mu)
    for p in enumerate_partitions(lam, mu):
        if max((s.height for s in p.strips), default=0) != expected:
            return False
        top = [b for b in p.region.boxes if b.y == expected]
        if any(p.owner[b].height != expected for b in top):
            return False
    return True


# Type 1 and type 2

def _type1(strips: Iterable[DyckStrip], owner: Dict[Box, DyckStrip]) -> bool:
    for strip in strips:
        covering = {owner.get(b.above()) for b in strip.boxes}
        if covering == {None}:
            continue
        if None in covering or len(covering) != 1:
            return False
    return True


def _neighbours_below(strip: DyckStrip) -> FrozenSet[Box]:
    around = set()
    for b in strip.boxes:
        around.update((Box(b.x, b.y - 2), Box(b.x - 1, b.y - 1), Box(b.x + 1, b.y - 1)))
    return frozenset(around - strip.box_set)


def _type2(strips: Iterable[DyckStrip], owner: Dict[Box, DyckStrip]) -> bool:
    for strip in strips:
        around = _neighbours_below(strip)
        others = {owner[b] for b in around if b in owner}
        if not others:
            continue
        if len(others) != 1:
            return False
        other, = others
        if any(owner.get(b) is not other for b in around):
            return False
    return True


def _owner_map(strips: Iterable[DyckStrip]) -> Dict[Box, DyckStrip]:
    return {b: s for s in strips for b in s.boxes}


def is_type1(partition: DyckPartition) -> bool:
    """Whenever a box above D is covered, all boxes above D lie in one strip."""
    return _type1(partition.strips, partition.owner)


def is_type2(partition: DyckPartition) -> bool:
    """Whenever another strip touches D from below, it holds every box below, SW and SE of D."""
    return _type2(partition.strips, partition.owner)


def type1_partitions(lam: Path, mu: Path) -> List[DyckPartition]:
    if not bruhat_leq(lam, mu):
        return []
    return [p for p in enumerate_partitions(lam, mu) if is_type1(p)]


def type2_partitions(lam: Path, mu: Path) -> List[DyckPartition]:
    if not bruhat_leq(lam, mu):
        return []
    return [p for p in enumerate_partitions(lam, mu) if is_type2(p)]


def _size_polynomial(partitions: Iterable[DyckPartition]) -> LaurentPolynomial:
    counts: Dict[int, int] = {}
    for p in partitions:
        counts[p.size] = counts.get(p.size, 0) + 1
    return LaurentPolynomial(counts)


def q1(lam: Path, mu: Path) -> LaurentPolynomial:
    if not bruhat_leq(lam, mu):
        return ZERO
    return _size_polynomial(type1_partitions(lam, mu))


def q2(lam: Path, mu: Path) -> LaurentPolynomial:
    if not bruhat_leq(lam, mu):
        return ZERO
    return _size_polynomial(type2_partitions(lam, mu))


# Orderings

def is_admissible(ordering: StripOrdering, lam: Path) -> bool:
    if ordering.partition.region.lower != lam:
        raise ConfigurationError(f"partition is not based at {lam}")
    current = lam
    for strip in ordering.order:
        if not is_addable(current, strip):
            return False
        current = add_strip(current, strip)
    return True


def admissible_orders(partition: DyckPartition, lam: Path) -> List[StripOrdering]:
    if partition.region.lower != lam:
        raise ConfigurationError(f"partition is not based at {lam}")
    orders = []

    def search(current: Path, remaining: FrozenSet[DyckStrip], prefix: Tuple[DyckStrip, ...]):
        if not remaining:
            orders.append(StripOrdering(partition, prefix))
            return
        for strip in sorted(remaining):
            if is_addable(current, strip):
                search(add_strip(current, strip), remaining - {strip}, prefix + (strip,))

    search(lam, partition.strips, ())
    return orders


def height_sort(ordering: StripOrdering) -> StripOrdering:
    """o_hgt: stable sort by ascending strip height."""
    return StripOrdering(ordering.partition, tuple(sorted(ordering.order, key=lambda s: s.height)))


def strips_by_height(partition: DyckPartition) -> Dict[int, FrozenSet[DyckStrip]]:
    levels: Dict[int, set] = {}
    for strip in partition.strips:
        levels.setdefault(strip.height, set()).add(strip)
    return {h: frozenset(s) for h, s in levels.items()}


def partition_succ(p: DyckPartition, q: DyckPartition) -> bool:
    """P > Q: equal above some height h, and P(h) strictly finer than Q(h)."""
    if p.region.boxes != q.region.boxes:
        raise ConfigurationError("partitions of different regions are not comparable")
    p_levels, q_levels = strips_by_height(p), strips_by_height(q)
    for h in sorted(set(p_levels) | set(q_levels), reverse=True):
        p_h, q_h = p_levels.get(h, frozenset()), q_levels.get(h, frozenset())
        if p_h == q_h:
            continue
        return all(any(s.box_set <= t.box_set for t in q_h) for s in p_h)
    return False


# Pairs of strips

def overlying_rewrite(lower: DyckStrip, upper: DyckStrip) -> Tuple[DyckStrip, DyckStrip]:
    """
    Rewrite a type 2 pair {C, D}, with a box of C just below a box of D, as
    the type 1 pair {C', D'} on the same boxes.
    """
    if lower.box_set & upper.box_set:
        raise ConfigurationError("strips overlap")
    if not any(b.above() in upper.box_set for b in lower.boxes):
        raise ConfigurationError("no box of C lies just below a box of D")
    if lower.height < upper.height:
        raise ConfigurationError(f"no rewrite: hgt(C)={lower.height} < hgt(D)={upper.height}")
    pair = (lower, upper)
    if not _type2(pair, _owner_map(pair)):
        raise ConfigurationError("{C, D} is not of type 2")
    union = lower.box_set | upper.box_set
    below = frozenset(b.below() for b in upper.boxes)
    if not below <= union:
        raise ConfigurationError("boxes below D are not covered by C and D")
    try:
        new_lower = DyckStrip(tuple(sorted(below)))
        new_upper = DyckStrip(tuple(sorted(union - below)))
    except StripPlacementError as exc:
        raise ConfigurationError(f"rewrite does not produce strips: {exc}") from exc
    return new_lower, new_upper


def strips_distant(c: DyckStrip, d: DyckStrip) -> bool:
    if c.box_set & d.box_set:
        raise ConfigurationError("strips overlap")
    return not any(b.above() in c.box_set or b.below() in c.box_set for b in d.boxes)


def pair_is_type1(c: DyckStrip, d: DyckStrip) -> bool:
    pair = (c, d)
    return _type1(pair, _owner_map(pair))


# Suites

def equal_size_succ_pairs(lam: Path, mu: Path) -> List[Tuple[DyckPartition, DyckPartition]]:
    conf = type1_partitions(lam, mu)
    return [(p, q) for p in conf for q in conf if p.size == q.size and partition_succ(p, q)]


def overlying_pairs(partition: DyckPartition) -> List[Tuple[DyckStrip, DyckStrip]]:
    """(C, D) in the partition with a box of C just below D and hgt(C) >= hgt(D)."""
    out = []
    for d in partition.sorted_strips():
        below = {partition.owner.get(b.below()) for b in d.boxes} - {None, d}
        for c in sorted(below):
            if c.height >= d.height:
                out.append((c, d))
    return out


def check_overlying_suite(n: int, i: int) -> VerificationReport:
    """Rewrite every overlying pair of every type 2 partition and check the result."""
    report = VerificationReport(name="overlying", parameters={"n": n, "i": i})
    paths = enumerate_paths(n, i)
    rewrites = 0
    for mu in paths:
        for lam in paths:
            for p in type2_partitions(lam, mu):
                for c, d in overlying_pairs(p):
                    tag = f"{lam}->{mu}: C={c} D={d}"
                    try:
                        new_c, new_d = overlying_rewrite(c, d)
                    except ConfigurationError as exc:
                        report.record(False, f"{tag}: {exc}")
                        continue
                    rewrites += 1
                    report.record(new_c.box_set | new_d.box_set == c.box_set | d.box_set,
                                  f"{tag}: rewrite changes the boxes")
                    report.record(pair_is_type1(new_c, new_d), f"{tag}: rewrite is not of type 1")
                    report.record(new_d.length > d.length, f"{tag}: D' is not longer than D")
                    report.record(new_c.height < new_d.height, f"{tag}: hgt(C') >= hgt(D')")
    report.notes.append(f"overlying: {rewrites} rewrites")
    logger.info(report.summary())
    return report


def check_equal_size_example() -> VerificationReport:
    """The smallest region with an equal-size comparable pair of type 1 partitions."""
    lam, mu = (path_from_string(steps) for steps in EQUAL_SIZE_EXAMPLE)
    report = VerificationReport(name="equal-size", parameters={"lambda": lam.steps, "mu": mu.steps})
    pairs = equal_size_succ_pairs(lam, mu)
    report.record(bool(pairs), f"{lam}->{mu}: no equal-size pair P > Q")
    report.record(not is_two_row_shape(mu), f"{mu} has a two-row shape")
    report.notes.append(f"equal-size: {len(pairs)} pairs in A({lam}, {mu})")
    logger.info(report.summary())
    return report


def check_order_suite(n: int, i: int) -> VerificationReport:
    """Strict partial order, admissibility of height-ascending orderings."""
    report = VerificationReport(name="orders", parameters={"n": n, "i": i})
    paths = enumerate_paths(n, i)
    for mu in paths:
        for lam in paths:
            if not bruhat_leq(lam, mu):
                continue
            report.record(check_region_height(lam, mu), f"{lam}->{mu}: strip heights disagree with hgt")
            conf = type1_partitions(lam, mu)
            for p in conf:
                report.record(not partition_succ(p, p), f"{lam}->{mu}: succ not irreflexive")
                forward = StripOrdering(p, tuple(sorted(p.strips, key=lambda s: (s.height, s))))
                backward = StripOrdering(p, tuple(sorted(p.strips, key=lambda s: (s.height, [-b.x for b in s.boxes]))))
                for ordering in (forward, backward):
                    report.record(is_admissible(ordering, lam), f"{lam}->{mu}: height order not admissible")
            succ = {(a, b) for a, p in enumerate(conf) for b, q in enumerate(conf) if a != b and partition_succ(p, q)}
            for a, b in succ:
                report.record((b, a) not in succ, f"{lam}->{mu}: succ not antisymmetric")
                for c in range(len(conf)):
                    if (b, c) in succ:
                        report.record((a, c) in succ, f"{lam}->{mu}: succ not transitive")
    logger.info(report.summary())
    return report


def is_two_row_shape(mu: Path) -> bool:
    shape = young_shape(mu)
    return len(shape) <= 2 or (shape[0] if shape else 0) <= 2


def check_two_row_lemma(n: int, i: int) -> VerificationReport:
    report = VerificationReport(name="two-row", parameters={"n": n, "i": i})
    paths = enumerate_paths(n, i)
    for mu in paths:
        if not is_two_row_shape(mu):
            continue
        for lam in paths:
            if bruhat_leq(lam, mu):
                pairs = equal_size_succ_pairs(lam, mu)
                report.record(not pairs, f"{lam}->{mu}: {len(pairs)} equal size comparable pairs")
    logger.info(report.summary())
    return report


def find_partition(lam: Path, mu: Path, strips: Iterable[Iterable[Sequence[int]]]) -> Optional[DyckPartition]:
    """Look up the partition of A(lam, mu) with the given strips."""
    wanted = frozenset(DyckStrip.from_boxes(s) for s in strips)
    for p in enumerate_partitions(lam, mu):
        if p.strips == wanted:
            return p
    return None
