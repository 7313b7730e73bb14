"""Truncation ideals, the gamma sequence, and Specht bases.

The k-th truncation ideal has arity-n component equal to the joint kernel of
all restriction operators onto k-1 of the inputs (zero below arity k).  Its
top component in arity n is also the image of the proper multilinear
polynomials under the word codec, with an explicit basis indexed by products
of left-normed commutators; both constructions are implemented and the test
suite insists they agree.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from .linalg import Subspace
from .operad import (
    OperadElement,
    act,
    full_compose,
    perm_index,
    perm_list,
    specht_element,
    tau_n,
)
from .symmetric import Permutation, c_permutation

DEFAULT_WINDOW = 6
_window = DEFAULT_WINDOW


class WindowExceededError(ValueError):
    """An arity beyond the configured window bound was requested."""


def window() -> int:
    return _window


def set_window(n: int) -> None:
    """Raise or lower the arity window (7 needs the arity-7 feature flag)."""
    global _window
    if n < 2:
        raise ValueError("window must be at least 2")
    _window = n


def check_window(n: int) -> None:
    if n > _window:
        raise WindowExceededError(f"arity {n} exceeds window {_window}")


# ---------------------------------------------------------------------------
# gamma sequence and dimension formulas


@lru_cache(maxsize=None)
def gamma(n: int) -> int:
    """Dimension of the top truncation component in arity n."""
    if n < 0:
        raise ValueError("negative arity")
    return sum((-1) ** (n - s) * math.factorial(s) * math.comb(n, s) for s in range(n + 1))


def truncation_dim(k: int, n: int) -> int:
    """Dimension of the k-th truncation ideal's arity-n component."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < k:
        return 0
    if n == k:
        return gamma(k)
    return sum(math.comb(n, i) * gamma(i) for i in range(k, n + 1))


# ---------------------------------------------------------------------------
# restriction maps in coordinates


@lru_cache(maxsize=None)
def restriction_index_map(n: int, subset: tuple[int, ...]) -> np.ndarray:
    """target_index[source_index] for the restriction onto the subset.

    Restriction of a basis permutation deletes the letters outside the
    subset from its word and renumbers the survivors by rank.
    """
    rank = {x: i + 1 for i, x in enumerate(sorted(subset))}
    keep = set(subset)
    tgt_index = perm_index(len(subset))
    out = np.empty(math.factorial(n), dtype=np.int64)
    for i, seq in enumerate(perm_list(n)):
        word = tuple(rank[x] for x in seq if x in keep)
        out[i] = tgt_index[word]
    return out


def restriction_condition_rows(n: int, size: int) -> np.ndarray:
    """Stacked 0/1 matrix whose kernel is the joint restriction kernel.

    One block of rows per subset of the given size; entry (target, source)
    is 1 when the source permutation restricts to the target one.
    """
    nfact = math.factorial(n)
    blocks = []
    for subset in itertools.combinations(range(1, n + 1), size):
        tmap = restriction_index_map(n, subset)
        block = np.zeros((math.factorial(size), nfact), dtype=np.int64)
        block[tmap, np.arange(nfact)] = 1
        blocks.append(block)
    if not blocks:
        return np.zeros((0, nfact), dtype=np.int64)
    return np.vstack(blocks)


@lru_cache(maxsize=None)
def truncation_kernel(k: int, n: int) -> Subspace:
    """Arity-n component of the k-th truncation ideal, by kernel intersection."""
    if k < 0 or n < 0:
        raise ValueError("negative arguments")
    check_window(n)
    nfact = math.factorial(n)
    if n < k:
        return Subspace.zero(nfact)
    if k == 0:
        return Subspace.full(nfact)
    rows = restriction_condition_rows(n, k - 1)
    return linalg.kernel(rows.tolist(), ambient_dim=nfact)


# ---------------------------------------------------------------------------
# Specht bases


@dataclass(frozen=True)
class SpechtIndex:
    """Index of a commutator-product basis element.

    ``lengths`` is a nondecreasing tuple of block sizes >= 2 summing to n;
    ``sigma`` concatenates the blocks, each headed by its maximum, with
    equal-length blocks ordered by their heads.
    """

    lengths: tuple[int, ...]
    sigma: Permutation

    def __post_init__(self):
        n = sum(self.lengths)
        if self.sigma.arity != n:
            raise ValueError("sigma arity disagrees with block lengths")
        if any(k < 2 for k in self.lengths):
            raise ValueError("block lengths must be >= 2")
        if any(
            self.lengths[i] > self.lengths[i + 1] for i in range(len(self.lengths) - 1)
        ):
            raise ValueError("block lengths must be nondecreasing")
        heads = []
        pos = 0
        for k in self.lengths:
            block = self.sigma.seq[pos : pos + k]
            if block[0] != max(block):
                raise ValueError(f"block {block} not headed by its maximum")
            heads.append(block[0])
            pos += k
        for i in range(len(self.lengths) - 1):
            if self.lengths[i] == self.lengths[i + 1] and heads[i] >= heads[i + 1]:
                raise ValueError("equal-length blocks must have increasing heads")

    def element(self) -> OperadElement:
        return specht_element(self.lengths, self.sigma)


def _compositions(n: int) -> list[tuple[int, ...]]:
    """Nondecreasing compositions of n with parts >= 2, lexicographic."""
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, minpart: int, prefix: tuple[int, ...]):
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(minpart, remaining + 1):
            rec(remaining - part, part, prefix + (part,))

    if n >= 2:
        rec(n, 2, ())
    return sorted(out)


def _block_sequences(n: int, lengths: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All valid concatenated block sequences for the given lengths."""
    results: list[tuple[int, ...]] = []

    def rec(remaining: frozenset[int], j: int, prev_head: int | None, prefix: tuple[int, ...]):
        if j == len(lengths):
            results.append(prefix)
            return
        k = lengths[j]
        same = j > 0 and lengths[j - 1] == k
        for block_set in itertools.combinations(sorted(remaining), k):
            head = max(block_set)
            if same and prev_head is not None and head <= prev_head:
                continue
            rest = [x for x in block_set if x != head]
            for arr in itertools.permutations(rest):
                rec(remaining - set(block_set), j + 1, head, prefix + (head,) + arr)

    rec(frozenset(range(1, n + 1)), 0, None, ())
    return sorted(results)


@lru_cache(maxsize=None)
def specht_indices(n: int) -> tuple[SpechtIndex, ...]:
    """All Specht indices in arity n: by composition, then by sequence."""
    if n < 2:
        return ()
    out = []
    for lengths in _compositions(n):
        for seq in _block_sequences(n, lengths):
            out.append(SpechtIndex(lengths, Permutation(seq)))
    return tuple(out)


@lru_cache(maxsize=None)
def specht_basis(n: int) -> tuple[tuple[SpechtIndex, OperadElement], ...]:
    """The commutator-product basis of the top truncation component."""
    if n < 2:
        raise ValueError("needs n >= 2")
    check_window(n)
    return tuple((ix, ix.element()) for ix in specht_indices(n))


@lru_cache(maxsize=None)
def specht_span(n: int) -> Subspace:
    """Span of the Specht basis (equals the kernel construction)."""
    vectors = [theta.to_vector() for _, theta in specht_basis(n)]
    return linalg.row_space(vectors, math.factorial(n))


@lru_cache(maxsize=None)
def lie_component(n: int) -> Subspace:
    """Span of the left-normed bracketing elements; dimension (n-1)!."""
    if n < 1:
        raise ValueError("n must be positive")
    check_window(n)
    if n == 1:
        return linalg.row_space([OperadElement.unit(1).to_vector()], 1)
    vectors = []
    for rest in itertools.permutations(range(1, n)):
        sigma = Permutation((n,) + rest)
        vectors.append(act(tau_n(n), sigma).to_vector())
    return linalg.row_space(vectors, math.factorial(n))


# ---------------------------------------------------------------------------
# padded bases


def pad_right(theta: OperadElement, extra: int) -> OperadElement:
    """1_2 o (theta, 1_extra): append unit inputs after the element."""
    return full_compose(OperadElement.unit(2), [theta, OperadElement.unit(extra)])


@lru_cache(maxsize=None)
def basis_theorem_sets(k: int, n: int) -> tuple[OperadElement, ...]:
    """The padded family B_k(n) built from the arity-k Specht basis.

    Each element is a right-padded top-component basis vector acted by the
    complement-then-subset permutation of a size n-k subset; there are
    gamma(k) * C(n, k) of them.
    """
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    check_window(n)
    if k == 0:
        thetas = [OperadElement.unit(0)]
    elif k == 1:
        thetas = []
    else:
        thetas = [theta for _, theta in specht_basis(k)]
    out = []
    for theta in thetas:
        padded = pad_right(theta, n - k)
        for subset in itertools.combinations(range(1, n + 1), n - k):
            out.append(act(padded, c_permutation(subset, n)))
    return tuple(out)


@lru_cache(maxsize=None)
def specht_filtration(n: int, t: int) -> Subspace:
    """Span of Specht basis elements whose largest block has size >= t."""
    if not 2 <= t <= n:
        raise ValueError("need 2 <= t <= n")
    check_window(n)
    vectors = [
        theta.to_vector()
        for ix, theta in specht_basis(n)
        if ix.lengths[-1] >= t
    ]
    return linalg.row_space(vectors, math.factorial(n))


