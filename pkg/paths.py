"""
The path model of minimal coset representatives W^I for W = S_n and the
maximal parabolic I = {1..n-1} minus {i}.

A path starts at (0, i) and ends at (n, n-i); an Up step goes (x, y) -> (x+1, y+1)
and a Down step (x, y) -> (x+1, y-1). Permutations are tuples in one-line
notation on 1..n and compose right to left.
"""

import itertools
import logging
from collections import deque
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, NewType, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from errors import DomainError, OrderError, ParameterError

logger = logging.getLogger(__name__)

UP = "U"
DOWN = "D"

# a permutation of 1..n in one-line notation
Permutation = NewType("Permutation", Tuple[int, ...])


class Position(str, Enum):
    PEAK = "peak"
    VALLEY = "valley"
    SLOPE_UP = "slope_up"
    SLOPE_DOWN = "slope_down"


class Box(NamedTuple):
    """A box centred at (x, y); its label is x."""
    x: int
    y: int

    @property
    def label(self) -> int:
        return self.x

    def above(self) -> "Box":
        return Box(self.x, self.y + 2)

    def below(self) -> "Box":
        return Box(self.x, self.y - 2)


def validate_parameters(n: int, i: int) -> None:
    if n < 2 or not 1 <= i <= n - 1:
        raise ParameterError(f"invalid parameters n={n}, i={i}: need 1 <= i <= n-1")


class Path(BaseModel):
    """An element of the path set of (n, i)"""
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {"n": 4, "i": 2, "steps": "UDUD"}
        }
    )

    n: int = Field(..., ge=2, description="Number of steps")
    i: int = Field(..., ge=1, description="Number of Down steps")
    steps: str = Field(..., min_length=2, pattern=r"^[UD]+$", description="Step word over {U,D}")

    _heights: Tuple[int, ...] = PrivateAttr(default=())

    @model_validator(mode="after")
    def _check_steps(self) -> "Path":
        validate_parameters(self.n, self.i)
        if len(self.steps) != self.n:
            raise ValueError(f"path {self.steps!r} must have {self.n} steps")
        if self.steps.count(DOWN) != self.i:
            raise ValueError(f"path {self.steps!r} must have exactly {self.i} Down steps")
        return self

    def model_post_init(self, __context) -> None:
        heights = [self.i]
        for step in self.steps:
            heights.append(heights[-1] + (1 if step == UP else -1))
        self._heights = tuple(heights)

    @property
    def heights(self) -> Tuple[int, ...]:
        return self._heights

    @property
    def length(self) -> int:
        return length(self)

    def step(self, k: int) -> str:
        """Step k, 1-based."""
        return self.steps[k - 1]

    def replace_steps(self, steps: str) -> "Path":
        return Path(n=self.n, i=self.i, steps=steps)

    def sort_key(self) -> Tuple[int, str]:
        return (self.length, self.steps)

    def __str__(self):
        return self.steps


def path_from_string(steps: str) -> Path:
    """Build a path from its step word; n and i are read off the word."""
    steps = steps.strip().upper()
    return Path(n=len(steps), i=steps.count(DOWN), steps=steps)


def identity_path(n: int, i: int) -> Path:
    validate_parameters(n, i)
    return Path(n=n, i=i, steps=DOWN * i + UP * (n - i))


def top_path(n: int, i: int) -> Path:
    validate_parameters(n, i)
    return Path(n=n, i=i, steps=UP * (n - i) + DOWN * i)


def enumerate_paths(n: int, i: int) -> List[Path]:
    """All paths of (n, i) sorted by length, then by step word."""
    validate_parameters(n, i)
    paths = []
    for downs in itertools.combinations(range(n), i):
        chars = [UP] * n
        for k in downs:
            chars[k] = DOWN
        paths.append(Path(n=n, i=i, steps="".join(chars)))
    paths.sort(key=Path.sort_key)
    logger.debug("enumerated %d paths for (%d,%d)", len(paths), n, i)
    return paths


def _check_same_space(lam: Path, mu: Path) -> None:
    if (lam.n, lam.i) != (mu.n, mu.i):
        raise OrderError(f"paths {lam} and {mu} live in different path sets")


def height(lam: Path, j: int) -> int:
    if not 0 <= j <= lam.n:
        raise ParameterError(f"height index {j} out of range 0..{lam.n}")
    return lam.heights[j]


def length(lam: Path) -> int:
    """Number of pairs (a < b) with an Up step at a and a Down step at b."""
    ups = 0
    total = 0
    for step in lam.steps:
        if step == UP:
            ups += 1
        else:
            total += ups
    return total


def bruhat_leq(lam: Path, mu: Path) -> bool:
    _check_same_space(lam, mu)
    return all(a <= b for a, b in zip(lam.heights, mu.heights))


def bruhat_less(lam: Path, mu: Path) -> bool:
    return lam != mu and bruhat_leq(lam, mu)


def _check_position(lam: Path, j: int) -> None:
    if not 1 <= j <= lam.n - 1:
        raise ParameterError(f"position {j} out of range 1..{lam.n - 1}")


def classify_position(lam: Path, j: int) -> Position:
    _check_position(lam, j)
    pair = lam.steps[j - 1:j + 1]
    if pair == UP + DOWN:
        return Position.PEAK
    if pair == DOWN + UP:
        return Position.VALLEY
    return Position.SLOPE_UP if pair == UP + UP else Position.SLOPE_DOWN


def peaks(lam: Path) -> List[int]:
    return [j for j in range(1, lam.n) if lam.steps[j - 1:j + 1] == UP + DOWN]


def valleys(lam: Path) -> List[int]:
    return [j for j in range(1, lam.n) if lam.steps[j - 1:j + 1] == DOWN + UP]


def descent_set(lam: Path) -> FrozenSet[int]:
    """Labels j with s_j lam <= lam in W/W_I: peaks and slopes."""
    return frozenset(j for j in range(1, lam.n) if classify_position(lam, j) != Position.VALLEY)


def swap_steps(lam: Path, j: int) -> Path:
    """Left multiplication by s_j: exchange steps j and j+1."""
    _check_position(lam, j)
    chars = list(lam.steps)
    chars[j - 1], chars[j] = chars[j], chars[j - 1]
    return lam.replace_steps("".join(chars))


def add_box(lam: Path, j: int) -> Path:
    """Add the box with label j at the valley j."""
    if classify_position(lam, j) != Position.VALLEY:
        raise DomainError(f"position {j} is not a valley of {lam}")
    return swap_steps(lam, j)


def remove_box(lam: Path, j: int) -> Path:
    """Remove the box with label j at the peak j."""
    if classify_position(lam, j) != Position.PEAK:
        raise DomainError(f"position {j} is not a peak of {lam}")
    return swap_steps(lam, j)


class Region(NamedTuple):
    """The boxes between two comparable paths."""
    lower: Path
    upper: Path
    boxes: FrozenSet[Box]

    def labels(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for box in self.boxes:
            counts[box.label] = counts.get(box.label, 0) + 1
        return counts

    def to_json(self) -> List[List[int]]:
        return [list(box) for box in sorted(self.boxes)]


def box_set(lower: Path, upper: Path) -> FrozenSet[Box]:
    """Boxes with hgt_x(lower) < y < hgt_x(upper) and x+y+i odd, no order check."""
    boxes = set()
    for x in range(1, lower.n):
        for y in range(lower.heights[x] + 1, upper.heights[x]):
            if (x + y + lower.i) % 2 == 1:
                boxes.add(Box(x, y))
    return frozenset(boxes)


def region_boxes(lower: Path, upper: Path) -> Region:
    if not bruhat_leq(lower, upper):
        raise OrderError(f"{lower} is not below {upper}")
    return Region(lower, upper, box_set(lower, upper))


def rex_counts(lam: Path) -> Dict[int, int]:
    """Number of boxes with label j between the identity path and lam."""
    counts = {j: 0 for j in range(1, lam.n)}
    for box in box_set(identity_path(lam.n, lam.i), lam):
        counts[box.label] += 1
    return counts


def reduced_word(lam: Path) -> List[int]:
    """
    Labels of the boxes of lam, removed one at a time at the leftmost peak.

    The word [j1, ..., jk] means perm_of_path(lam) = s_j1 s_j2 ... s_jk.
    """
    word = []
    current = lam
    while True:
        tops = peaks(current)
        if not tops:
            return word
        word.append(tops[0])
        current = swap_steps(current, tops[0])


def young_shape(lam: Path) -> List[int]:
    """Partition inside the i x (n-i) rectangle; one part per Down step."""
    parts = []
    ups = 0
    for step in lam.steps:
        if step == UP:
            ups += 1
        elif ups:
            parts.append(ups)
    return sorted(parts, reverse=True)


# Permutations

def identity_perm(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def check_permutation(w: Sequence[int], n: int) -> Permutation:
    if len(w) != n or sorted(w) != list(range(1, n + 1)):
        raise DomainError(f"{tuple(w)} is not a permutation of 1..{n}")
    return Permutation(tuple(w))


def perm_mul(x: Sequence[int], y: Sequence[int]) -> Permutation:
    """The composition x o y."""
    return Permutation(tuple(x[k - 1] for k in y))


def perm_inverse(w: Sequence[int]) -> Permutation:
    out = [0] * len(w)
    for pos, value in enumerate(w, start=1):
        out[value - 1] = pos
    return Permutation(tuple(out))


def perm_length(w: Sequence[int]) -> int:
    n = len(w)
    return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])


def right_mul_simple(w: Sequence[int], j: int) -> Permutation:
    """w s_j: swap positions j and j+1."""
    out = list(w)
    out[j - 1], out[j] = out[j], out[j - 1]
    return Permutation(tuple(out))


def left_mul_simple(j: int, w: Sequence[int]) -> Permutation:
    """s_j w: swap values j and j+1."""
    return Permutation(tuple(j + 1 if v == j else j if v == j + 1 else v for v in w))


def simple_reflection(n: int, j: int) -> Permutation:
    if not 1 <= j <= n - 1:
        raise ParameterError(f"simple reflection s_{j} does not exist in S_{n}")
    return right_mul_simple(identity_perm(n), j)


def transposition(n: int, a: int, b: int) -> Permutation:
    if not 1 <= a < b <= n:
        raise ParameterError(f"invalid transposition ({a} {b}) in S_{n}")
    out = list(range(1, n + 1))
    out[a - 1], out[b - 1] = b, a
    return Permutation(tuple(out))


def word_to_perm(n: int, word: Iterable[int]) -> Permutation:
    """The product s_w1 s_w2 ... s_wk."""
    w = identity_perm(n)
    for j in word:
        if not 1 <= j <= n - 1:
            raise ParameterError(f"label {j} out of range 1..{n - 1}")
        w = right_mul_simple(w, j)
    return w


def is_reduced_word(n: int, word: Sequence[int]) -> bool:
    return perm_length(word_to_perm(n, word)) == len(word)


def perm_reduced_word(w: Sequence[int]) -> List[int]:
    """A reduced word for w, peeling right descents."""
    word = []
    current = list(w)
    while True:
        for j in range(1, len(current)):
            if current[j - 1] > current[j]:
                current[j - 1], current[j] = current[j], current[j - 1]
                word.append(j)
                break
        else:
            return list(reversed(word))


def parabolic_subgroup(n: int, labels: Iterable[int]) -> List[Permutation]:
    """Elements of W_J sorted by length, generated breadth first."""
    gens = sorted(set(labels))
    for j in gens:
        if not 1 <= j <= n - 1:
            raise ParameterError(f"label {j} out of range 1..{n - 1}")
    start = identity_perm(n)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for j in gens:
            u = right_mul_simple(w, j)
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return sorted(seen, key=lambda w: (perm_length(w), w))


def longest_element(n: int, labels: Iterable[int]) -> Permutation:
    """w_J: reverse every maximal run of consecutive labels."""
    out = list(range(1, n + 1))
    gens = sorted(set(labels))
    for _, run in itertools.groupby(enumerate(gens), key=lambda t: t[1] - t[0]):
        block = [j for _, j in run]
        lo, hi = block[0], block[-1] + 1
        out[lo - 1:hi] = reversed(out[lo - 1:hi])
    return Permutation(tuple(out))


def parabolic_labels(n: int, i: int) -> FrozenSet[int]:
    """I = {1..n-1} minus {i}."""
    validate_parameters(n, i)
    return frozenset(j for j in range(1, n) if j != i)


def is_minimal_coset_rep(w: Sequence[int], i: int) -> bool:
    return all(w[k] < w[k + 1] for k in range(len(w) - 1) if k + 1 != i)


def perm_of_path(lam: Path) -> Permutation:
    downs = [k for k in range(1, lam.n + 1) if lam.steps[k - 1] == DOWN]
    ups = [k for k in range(1, lam.n + 1) if lam.steps[k - 1] == UP]
    return Permutation(tuple(downs + ups))


def coset_path(w: Sequence[int], n: int, i: int) -> Path:
    """Path of the coset w W_I: step k is Down iff w^-1(k) <= i."""
    validate_parameters(n, i)
    w = check_permutation(w, n)
    downs = set(w[:i])
    return Path(n=n, i=i, steps="".join(DOWN if k in downs else UP for k in range(1, n + 1)))


def path_of_perm(w: Sequence[int], n: int, i: int) -> Path:
    w = check_permutation(w, n)
    validate_parameters(n, i)
    if not is_minimal_coset_rep(w, i):
        raise DomainError(f"{w} is not a minimal coset representative for i={i}")
    return coset_path(w, n, i)


class ValleyConfiguration(NamedTuple):
    """Steps a..j are Down and steps j+1..b are Up."""
    j: int
    a: int
    b: int

    @property
    def local_n(self) -> int:
        return self.b - self.a + 1

    @property
    def local_i(self) -> int:
        return self.j - self.a + 1

    @property
    def hat_labels(self) -> FrozenSet[int]:
        return frozenset(k for k in range(self.a, self.b) if k != self.j)


def valley_configurations(lam: Path) -> Iterator[ValleyConfiguration]:
    for j in valleys(lam):
        start = j
        while start > 1 and lam.step(start - 1) == DOWN:
            start -= 1
        end = j + 1
        while end < lam.n and lam.step(end + 1) == UP:
            end += 1
        for a in range(start, j + 1):
            for b in range(j + 1, end + 1):
                yield ValleyConfiguration(j, a, b)


def lift_local_perm(x: Sequence[int], n: int, a: int) -> Permutation:
    """Embed a permutation of 1..m acting on positions a..a+m-1 into S_n."""
    out = list(range(1, n + 1))
    for k, value in enumerate(x):
        out[a - 1 + k] = a - 1 + value
    return Permutation(tuple(out))


def stack_local_path(lam: Path, config: ValleyConfiguration, local: Path) -> Path:
    """Replace steps a..b of lam by the local path."""
    steps = lam.steps[:config.a - 1] + local.steps + lam.steps[config.b:]
    return lam.replace_steps(steps)


def paths_below(mu: Path, paths: Iterable[Path]) -> List[Path]:
    return [lam for lam in paths if bruhat_leq(lam, mu)]