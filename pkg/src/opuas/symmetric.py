"""Symmetric-group substrate: permutations, partitions, classes, characters.

Permutations are stored in sequence form ``(s(1), ..., s(n))`` where the
sequence entry at position ``t`` is the preimage of ``t``; equivalently the
sequence ``(i_1, ..., i_n)`` denotes the permutation mapping ``i_k`` to ``k``.
All group-level conventions downstream (the right regular action, the
composition formula of the operad layer) are phrased against this form.

Character tables are built by the Murnaghan-Nakayama rule with memoization;
the hook length formula is kept as an independent oracle for the identity
column.
"""

from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

#: Largest arity the combinatorial layer will serve by default.  Tables are
#: cached per n; raising the bound is a matter of compute time, not code.
DEFAULT_ARITY_BOUND = 7


class ArityError(ValueError):
    """Raised on arity mismatches or out-of-range arities."""


class Permutation:
    """An element of S_n in sequence form.

    ``seq`` is a rearrangement of 1..n; ``seq[t-1]`` is the preimage of t.
    Instances are immutable and hashable.
    """

    __slots__ = ("seq",)

    def __init__(self, seq: Iterable[int]):
        seq = tuple(seq)
        n = len(seq)
        if sorted(seq) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation sequence: {seq!r}")
        object.__setattr__(self, "seq", seq)

    @property
    def arity(self) -> int:
        return len(self.seq)

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(range(1, n + 1))

    @staticmethod
    def adjacent_transposition(n: int, i: int) -> "Permutation":
        """The transposition swapping i and i+1 inside S_n."""
        if not 1 <= i < n:
            raise ValueError(f"adjacent transposition index {i} out of range for n={n}")
        seq = list(range(1, n + 1))
        seq[i - 1], seq[i] = seq[i], seq[i - 1]
        return Permutation(seq)

    def __call__(self, x: int) -> int:
        """Evaluate the permutation at x."""
        return self.seq.index(x) + 1

    def preimage(self, t: int) -> int:
        return self.seq[t - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return perm_multiply(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.seq)
        for t, s in enumerate(self.seq, start=1):
            inv[s - 1] = t
        return Permutation(inv)

    def sign(self) -> int:
        return -1 if sum(k - 1 for k in self.cycle_type().parts) % 2 else 1

    def cycle_type(self) -> "Partition":
        # cycles of the underlying bijection; the sequence form is its own
        # inverse's one-line form, which has the same cycle type.
        n = len(self.seq)
        seen = [False] * (n + 1)
        lengths = []
        for start in range(1, n + 1):
            if seen[start]:
                continue
            length, x = 0, start
            while not seen[x]:
                seen[x] = True
                x = self.seq[x - 1]
                length += 1
            lengths.append(length)
        return Partition(sorted(lengths, reverse=True))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.seq == other.seq

    def __hash__(self) -> int:
        return hash(self.seq)

    def __repr__(self) -> str:
        return f"Permutation({self.seq})"

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.seq) + ")"

    @staticmethod
    def parse(text: str) -> "Permutation":
        """Parse the serialized form, e.g. ``"(2,1,4,3)"``."""
        m = re.fullmatch(r"\(\s*([0-9,\s]*)\)", text.strip())
        if not m:
            raise ValueError(f"bad permutation literal: {text!r}")
        body = m.group(1).strip()
        if not body:
            return Permutation(())
        return Permutation(int(x) for x in body.split(","))


def perm_multiply(a: Permutation, b: Permutation) -> Permutation:
    """Group product such that acting by a then b equals acting by a*b.

    In sequence form ``(a*b).seq[t] = b.seq[a.seq[t]-1]``.
    """
    if a.arity != b.arity:
        raise ArityError(f"arity mismatch: {a.arity} vs {b.arity}")
    bs = b.seq
    return Permutation(bs[x - 1] for x in a.seq)


class Partition:
    """A weakly decreasing sequence of positive integers (possibly empty)."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int]):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"nonpositive part in {parts!r}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts not weakly decreasing: {parts!r}")
        object.__setattr__(self, "parts", parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return f"Partition({list(self.parts)})"

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self.parts) + "]"

    @staticmethod
    def parse(text: str) -> "Partition":
        """Parse ``"[3,1]"`` and the exponent shorthand ``"[2,1^2]"``."""
        m = re.fullmatch(r"\[\s*([0-9,^\s]*)\]", text.strip())
        if not m:
            raise ValueError(f"bad partition literal: {text!r}")
        body = m.group(1).strip()
        parts: list[int] = []
        if body:
            for tok in body.split(","):
                tok = tok.strip()
                if "^" in tok:
                    base, exp = tok.split("^")
                    parts.extend([int(base)] * int(exp))
                else:
                    parts.append(int(tok))
        return Partition(sorted(parts, reverse=True))


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of n in the canonical class order.

    The fixed order is ascending lexicographic on the part tuples, so
    ``[1^n]`` comes first and ``[n]`` last.  Every class-indexed vector in
    the package uses this order.
    """
    if n < 0:
        raise ValueError("negative weight")

    def gen(remaining: int, maxpart: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, maxpart), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    items = [Partition(p) for p in gen(n, n if n else 1)]
    items.sort(key=lambda lam: lam.parts)
    return tuple(items)


def class_size(lam: Partition) -> int:
    """Number of permutations with cycle type lam."""
    n = lam.weight
    denom = 1
    for length, mult in _multiplicities(lam).items():
        denom *= length**mult * math.factorial(mult)
    return math.factorial(n) // denom


def _multiplicities(lam: Partition) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in lam.parts:
        out[p] = out.get(p, 0) + 1
    return out


def class_representative(lam: Partition) -> Permutation:
    """Canonical representative: cycles occupy consecutive blocks 1..k1, ...."""
    seq: list[int] = [0] * lam.weight
    start = 1
    for k in lam.parts:
        # cycle start -> start+1 -> ... -> start+k-1 -> start
        for j in range(k):
            x = start + j
            image = start + (j + 1) % k
            # seq[t-1] = preimage of t
            seq[image - 1] = x
        start += k
    return Permutation(seq)


def conjugacy_classes(n: int) -> list[tuple[Partition, int, Permutation]]:
    """One (partition, class size, representative) triple per class of S_n."""
    if n < 1:
        raise ValueError("n must be positive")
    return [(lam, class_size(lam), class_representative(lam)) for lam in partitions(n)]


# --- Murnaghan-Nakayama ----------------------------------------------------

def _beta_set(parts: tuple[int, ...]) -> tuple[int, ...]:
    ell = len(parts)
    return tuple(parts[i] + (ell - 1 - i) for i in range(ell))


def _partition_from_beta(beta: Sequence[int]) -> tuple[int, ...]:
    beta = sorted(beta, reverse=True)
    ell = len(beta)
    parts = tuple(b - (ell - 1 - i) for i, b in enumerate(beta))
    return tuple(p for p in parts if p > 0)


@lru_cache(maxsize=None)
def _mn_character(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """Character value chi_lam at cycle type mu, by rim-hook removal."""
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    beta = set(_beta_set(lam))
    total = 0
    for b in beta:
        if b - r < 0 or (b - r) in beta:
            continue
        height = sum(1 for c in beta if b - r < c < b)
        newbeta = (beta - {b}) | {b - r}
        total += (-1) ** height * _mn_character(_partition_from_beta(newbeta), rest)
    return total


class CharacterVector:
    """A class function on S_n, one rational per class in canonical order."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values: Iterable[Fraction]):
        values = tuple(Fraction(v) for v in values)
        if len(values) != len(partitions(n)):
            raise ValueError("wrong number of class values")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "values", values)

    @property
    def dimension(self) -> Fraction:
        """Value at the identity class [1^n]."""
        return self.values[0]

    def __getitem__(self, lam: Partition) -> Fraction:
        return self.values[partitions(self.n).index(lam)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CharacterVector)
            and self.n == other.n
            and self.values == other.values
        )

    def __hash__(self) -> int:
        return hash((self.n, self.values))

    def __add__(self, other: "CharacterVector") -> "CharacterVector":
        if self.n != other.n:
            raise ArityError("weight mismatch")
        return CharacterVector(self.n, (a + b for a, b in zip(self.values, other.values)))

    def __rmul__(self, c) -> "CharacterVector":
        return CharacterVector(self.n, (c * v for v in self.values))

    def inner(self, other: "CharacterVector") -> Fraction:
        """Class-weighted inner product <self, other> / n!."""
        if self.n != other.n:
            raise ArityError("weight mismatch")
        sizes = [class_size(lam) for lam in partitions(self.n)]
        acc = sum(s * a * b for s, a, b in zip(sizes, self.values, other.values))
        return Fraction(acc, math.factorial(self.n))

    def __repr__(self) -> str:
        return f"CharacterVector(n={self.n}, values={self.values})"


@lru_cache(maxsize=None)
def character_table(n: int) -> dict[Partition, CharacterVector]:
    """Irreducible characters of S_n keyed by partition.

    Row lam evaluated at class mu is chi_lam(mu); rows are orthonormal under
    the class-weighted inner product.
    """
    if n < 1:
        raise ValueError("n must be positive")
    classes = partitions(n)
    table = {}
    for lam in classes:
        vals = [Fraction(_mn_character(lam.parts, mu.parts)) for mu in classes]
        table[lam] = CharacterVector(n, vals)
    return table


def irreducible_character(lam: Partition) -> CharacterVector:
    return character_table(lam.weight)[lam]


def hook_dimension(lam: Partition) -> int:
    """Dimension of the irreducible module for lam, via hook lengths."""
    if not lam.parts:
        raise ValueError("empty partition")
    parts = lam.parts
    conj = [0] * parts[0]
    for p in parts:
        for j in range(p):
            conj[j] += 1
    num = math.factorial(lam.weight)
    for i, p in enumerate(parts):
        for j in range(p):
            num //= p - j + conj[j] - i - 1
    return num


def sign_vector(n: int) -> CharacterVector:
    """The sign character as a class function."""
    vals = [Fraction((-1) ** sum(k - 1 for k in lam.parts)) for lam in partitions(n)]
    return CharacterVector(n, vals)


def c_permutation(subset: Iterable[int], n: int) -> Permutation:
    """The permutation listing the complement of I increasingly, then I.

    For I = {i_1 < ... < i_s} inside [n] this is the sequence
    (complement of I ascending, i_1, ..., i_s).
    """
    I = sorted(set(subset))
    if any(not 1 <= x <= n for x in I):
        raise ValueError(f"subset {I} not inside [1..{n}]")
    complement = [x for x in range(1, n + 1) if x not in set(I)]
    return Permutation(complement + I)


def all_permutations(n: int) -> list[Permutation]:
    """All of S_n, ordered lexicographically by sequence."""
    return [Permutation(seq) for seq in itertools.permutations(range(1, n + 1))]


def lcm(values: Iterable[int]) -> int:
    return reduce(math.lcm, values, 1)
