"""Elements of the unital associative algebra operad and their calculus.

The arity-n component is the group algebra of S_n with its right regular
action.  Composition follows the block substitution rule: composing an outer
element with inner elements of arities k_1, ..., k_n relabels the i-th inner
block by the offset k_1 + ... + k_{i-1} and concatenates the blocks in the
order prescribed by the outer sequence.  Arity-0 inners delete their block,
which is what powers the restriction operators.

The multilinear-polynomial codec identifies a permutation with the monomial
word given by its sequence form, so an element of arity n corresponds to a
multilinear polynomial in x_1..x_n and vice versa.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .symmetric import ArityError, Permutation, lcm

Coeff = Fraction


class OperadElement:
    """A finite rational combination of permutations of one arity.

    For arity 0 the single basis element is the 0-ary unit; terms are keyed
    by the empty sequence.  Zero coefficients are never stored.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Mapping[tuple[int, ...], Coeff] | None = None):
        clean: dict[tuple[int, ...], Coeff] = {}
        for seq, c in (terms or {}).items():
            c = Fraction(c)
            if not c:
                continue
            if len(seq) != arity:
                raise ArityError(f"term {seq} has wrong arity for n={arity}")
            clean[tuple(seq)] = c
        for seq in clean:
            Permutation(seq)  # validates
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    # -- constructors

    @staticmethod
    def zero(arity: int) -> "OperadElement":
        return OperadElement(arity, {})

    @staticmethod
    def unit(arity: int) -> "OperadElement":
        """The identity permutation of S_n as an element (the n-th unit)."""
        return OperadElement(arity, {tuple(range(1, arity + 1)): Fraction(1)})

    @staticmethod
    def basis(perm: Permutation, coeff: Coeff = Fraction(1)) -> "OperadElement":
        return OperadElement(perm.arity, {perm.seq: Fraction(coeff)})

    # -- ring-ish structure

    def __add__(self, other: "OperadElement") -> "OperadElement":
        if self.arity != other.arity:
            raise ArityError("arity mismatch in sum")
        out = dict(self.terms)
        for seq, c in other.terms.items():
            out[seq] = out.get(seq, Fraction(0)) + c
        return OperadElement(self.arity, out)

    def __sub__(self, other: "OperadElement") -> "OperadElement":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "OperadElement":
        c = Fraction(scalar)
        return OperadElement(self.arity, {s: c * v for s, v in self.terms.items()})

    def __neg__(self) -> "OperadElement":
        return (-1) * self

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OperadElement)
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.arity, tuple(self.terms.items())))

    def __repr__(self) -> str:
        return f"OperadElement({self.arity}, {format_element(self)!r})"

    # -- coordinates

    def coefficient(self, perm: Permutation) -> Coeff:
        return self.terms.get(perm.seq, Fraction(0))

    def to_vector(self) -> list[Coeff]:
        """Dense coordinates in the lexicographic permutation basis."""
        index = perm_index(self.arity)
        vec = [Fraction(0)] * len(index)
        for seq, c in self.terms.items():
            vec[index[seq]] = c
        return vec

    @staticmethod
    def from_vector(arity: int, vector: Sequence) -> "OperadElement":
        basis = perm_list(arity)
        return OperadElement(
            arity, {basis[i]: Fraction(v) for i, v in enumerate(vector) if Fraction(v)}
        )


# ---------------------------------------------------------------------------
# coordinate tables for the regular module


@lru_cache(maxsize=None)
def perm_list(n: int) -> tuple[tuple[int, ...], ...]:
    """All sequences of S_n in lexicographic order (the coordinate basis)."""
    return tuple(itertools.permutations(range(1, n + 1)))


@lru_cache(maxsize=None)
def perm_index(n: int) -> dict[tuple[int, ...], int]:
    return {seq: i for i, seq in enumerate(perm_list(n))}


@lru_cache(maxsize=None)
def right_action_map(n: int, sigma_seq: tuple[int, ...]) -> np.ndarray:
    """Column map m with (v * sigma) = v[m] in dense coordinates."""
    index = perm_index(n)
    basis = perm_list(n)
    dest = np.empty(len(basis), dtype=np.int64)
    for i, seq in enumerate(basis):
        prod = tuple(sigma_seq[x - 1] for x in seq)  # seq * sigma
        dest[index[prod]] = i
    return dest


@lru_cache(maxsize=None)
def generator_action_maps(n: int) -> tuple[np.ndarray, ...]:
    """Right-action column maps for the adjacent transpositions of S_n."""
    if n < 2:
        return ()
    gens = []
    for i in range(1, n):
        seq = list(range(1, n + 1))
        seq[i - 1], seq[i] = seq[i], seq[i - 1]
        gens.append(right_action_map(n, tuple(seq)))
    return tuple(gens)


# ---------------------------------------------------------------------------
# composition


def _compose_seqs(outer: tuple[int, ...], inners: Sequence[tuple[int, ...]]) -> tuple[int, ...]:
    arities = [len(s) for s in inners]
    offsets = [0] * len(inners)
    acc = 0
    for i, k in enumerate(arities):
        offsets[i] = acc
        acc += k
    out: list[int] = []
    for slot in outer:
        off = offsets[slot - 1]
        out.extend(off + x for x in inners[slot - 1])
    return tuple(out)


def full_compose(outer: OperadElement, inners: Sequence[OperadElement]) -> OperadElement:
    """Operadic composition, bilinear in every argument.

    Inner arities may be zero, in which case the corresponding block of
    inputs is deleted.  The result has arity equal to the sum of the inner
    arities.
    """
    if len(inners) != outer.arity:
        raise ArityError(
            f"outer arity {outer.arity} but {len(inners)} inner elements"
        )
    result_arity = sum(e.arity for e in inners)
    acc: dict[tuple[int, ...], Coeff] = {}
    for oseq, oc in outer.terms.items():
        for combo in itertools.product(*(e.terms.items() for e in inners)):
            seqs = [t[0] for t in combo]
            coeff = oc
            for t in combo:
                coeff *= t[1]
            key = _compose_seqs(oseq, seqs)
            acc[key] = acc.get(key, Fraction(0)) + coeff
    return OperadElement(result_arity, acc)


def partial_compose(mu: OperadElement, slot: int, nu: OperadElement) -> OperadElement:
    """mu with nu substituted in one input slot and units elsewhere."""
    if not 1 <= slot <= mu.arity:
        raise ArityError(f"slot {slot} out of range for arity {mu.arity}")
    inners = [OperadElement.unit(1)] * mu.arity
    inners[slot - 1] = nu
    return full_compose(mu, inners)


def act(theta: OperadElement, sigma: Permutation) -> OperadElement:
    """Right action theta * sigma on the regular module."""
    if theta.arity != sigma.arity:
        raise ArityError("arity mismatch in action")
    ss = sigma.seq
    return OperadElement(
        theta.arity,
        {tuple(ss[x - 1] for x in seq): c for seq, c in theta.terms.items()},
    )


def restrict(theta: OperadElement, subset: Iterable[int]) -> OperadElement:
    """Restriction: substitute the 0-unit outside the subset and compress."""
    I = set(subset)
    if any(not 1 <= x <= theta.arity for x in I):
        raise ArityError(f"subset {sorted(I)} not inside [1..{theta.arity}]")
    inners = [
        OperadElement.unit(1) if i in I else OperadElement.unit(0)
        for i in range(1, theta.arity + 1)
    ]
    return full_compose(theta, inners)


def extend(theta: OperadElement, subset: Iterable[int]) -> OperadElement:
    """Extension: substitute the 2-unit on the subset, identity elsewhere."""
    I = set(subset)
    if any(not 1 <= x <= theta.arity for x in I):
        raise ArityError(f"subset {sorted(I)} not inside [1..{theta.arity}]")
    inners = [
        OperadElement.unit(2) if i in I else OperadElement.unit(1)
        for i in range(1, theta.arity + 1)
    ]
    return full_compose(theta, inners)


def iota(left: int, right: int, theta: OperadElement) -> OperadElement:
    """Pad with left and right strings of unit inputs: 1_3 o (1_l, theta, 1_r)."""
    if left < 0 or right < 0:
        raise ArityError("padding lengths must be nonnegative")
    return full_compose(
        OperadElement.unit(3),
        [OperadElement.unit(left), theta, OperadElement.unit(right)],
    )


# ---------------------------------------------------------------------------
# multilinear polynomial codec


class MultilinearPolynomial:
    """A multilinear polynomial of degree n: sparse map word -> coefficient.

    Words are tuples listing the variable subscripts of a monomial; each of
    x_1..x_n appears exactly once per monomial.
    """

    __slots__ = ("degree", "monomials")

    def __init__(self, degree: int, monomials: Mapping[tuple[int, ...], Coeff] | None = None):
        clean: dict[tuple[int, ...], Coeff] = {}
        for word, c in (monomials or {}).items():
            c = Fraction(c)
            if not c:
                continue
            if sorted(word) != list(range(1, degree + 1)):
                raise ValueError(f"monomial {word} is not multilinear of degree {degree}")
            clean[tuple(word)] = c
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "monomials", dict(sorted(clean.items())))

    def __add__(self, other: "MultilinearPolynomial") -> "MultilinearPolynomial":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        out = dict(self.monomials)
        for w, c in other.monomials.items():
            out[w] = out.get(w, Fraction(0)) + c
        return MultilinearPolynomial(self.degree, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, scalar) -> "MultilinearPolynomial":
        c = Fraction(scalar)
        return MultilinearPolynomial(self.degree, {w: c * v for w, v in self.monomials.items()})

    def act(self, rho: Permutation) -> "MultilinearPolynomial":
        """Variable substitution x_i -> x_{rho^{-1}(i)}."""
        if rho.arity != self.degree:
            raise ArityError("arity mismatch")
        rs = rho.seq
        return MultilinearPolynomial(
            self.degree,
            {tuple(rs[i - 1] for i in w): c for w, c in self.monomials.items()},
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultilinearPolynomial)
            and self.degree == other.degree
            and self.monomials == other.monomials
        )

    def __hash__(self):
        return hash((self.degree, tuple(self.monomials.items())))

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*x{''.join(map(str, w))}" for w, c in self.monomials.items())
        return f"MultilinearPolynomial({self.degree}, {body or '0'})"


def phi(theta: OperadElement) -> MultilinearPolynomial:
    """Encode an element as a multilinear polynomial (word = sequence form)."""
    return MultilinearPolynomial(theta.arity, dict(theta.terms))


def psi(poly: MultilinearPolynomial) -> OperadElement:
    """Decode a multilinear polynomial back to an operad element."""
    return OperadElement(poly.degree, dict(poly.monomials))


# ---------------------------------------------------------------------------
# commutators and proper polynomials


def tau() -> OperadElement:
    """The binary commutator element: identity minus the transposition."""
    return OperadElement(2, {(1, 2): Fraction(1), (2, 1): Fraction(-1)})


@lru_cache(maxsize=None)
def tau_n(n: int) -> OperadElement:
    """Left-normed commutator element of arity n (n >= 1)."""
    if n < 1:
        raise ArityError("tau_n needs n >= 1")
    if n == 1:
        return OperadElement.unit(1)
    if n == 2:
        return tau()
    return partial_compose(tau(), 1, tau_n(n - 1))


@lru_cache(maxsize=None)
def tau_composition(lengths: tuple[int, ...]) -> OperadElement:
    """Product of left-normed commutators in consecutive blocks.

    ``lengths = (k_1, ..., k_m)`` gives the unit of arity m composed with
    the commutator elements of those arities.
    """
    return full_compose(OperadElement.unit(len(lengths)), [tau_n(k) for k in lengths])


def _expand_commutator(word: Sequence[int]) -> dict[tuple[int, ...], Fraction]:
    """Word-level expansion of a left-normed commutator."""
    acc: dict[tuple[int, ...], Fraction] = {(word[0],): Fraction(1)}
    for x in word[1:]:
        nxt: dict[tuple[int, ...], Fraction] = {}
        for w, c in acc.items():
            a = w + (x,)
            b = (x,) + w
            nxt[a] = nxt.get(a, Fraction(0)) + c
            nxt[b] = nxt.get(b, Fraction(0)) - c
        acc = nxt
    return acc


def proper_polynomial(brackets: Sequence[Sequence[int]]) -> OperadElement:
    """Element of a product of left-normed commutators.

    ``brackets`` lists the variable words of the commutators, e.g.
    ``[[2, 1], [4, 3]]`` for [x2, x1][x4, x3].  The words must partition
    1..n with every bracket of length at least 2.
    """
    flat = [x for b in brackets for x in b]
    n = len(flat)
    if sorted(flat) != list(range(1, n + 1)):
        raise ValueError("bracket variables must partition 1..n")
    if any(len(b) < 2 for b in brackets):
        raise ValueError("brackets must have length >= 2")
    # multiply the expanded commutators word by word
    words: dict[tuple[int, ...], Fraction] = {(): Fraction(1)}
    for b in brackets:
        expanded = _expand_commutator(tuple(b))
        nxt: dict[tuple[int, ...], Fraction] = {}
        for w1, c1 in words.items():
            for w2, c2 in expanded.items():
                w = w1 + w2
                nxt[w] = nxt.get(w, Fraction(0)) + c1 * c2
        words = nxt
    return psi(MultilinearPolynomial(n, words))


def specht_element(lengths: Sequence[int], sigma: Permutation) -> OperadElement:
    """The commutator-product element tau_{k_1..k_m} acted by sigma."""
    return act(tau_composition(tuple(lengths)), sigma)


# ---------------------------------------------------------------------------
# parsing and printing


_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?:(?P<coef>\d+(?:/\d+)?)\s*\*?\s*)?\((?P<seq>[0-9,\s]*)\)"
)


def format_element(theta: OperadElement) -> str:
    """Render as signed rational multiples of parenthesized sequences."""
    if theta.is_zero():
        return "0"
    parts = []
    for seq, c in theta.terms.items():
        body = "(" + ",".join(map(str, seq)) + ")"
        mag = abs(c)
        coefstr = "" if mag == 1 else f"{mag}*"
        if not parts:
            sign = "-" if c < 0 else ""
            parts.append(f"{sign}{coefstr}{body}")
        else:
            sign = "-" if c < 0 else "+"
            parts.append(f" {sign} {coefstr}{body}")
    return "".join(parts)


def parse_element(text: str, arity: int | None = None) -> OperadElement:
    """Parse the textual element grammar, e.g. ``"3/2*(2,1,4,3) - (4,3,2,1)"``."""
    text = text.strip()
    if text == "0":
        if arity is None:
            raise ValueError("cannot infer arity of the zero element")
        return OperadElement.zero(arity)
    pos = 0
    terms: dict[tuple[int, ...], Fraction] = {}
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m:
            raise ValueError(f"parse error at offset {pos} in {text!r}")
        sign = m.group("sign")
        if sign is None and not first:
            raise ValueError(f"missing +/- between terms at offset {pos}")
        coeff = Fraction(m.group("coef") or 1)
        if sign == "-":
            coeff = -coeff
        body = m.group("seq").strip()
        seq = tuple(int(x) for x in body.split(",")) if body else ()
        terms[seq] = terms.get(seq, Fraction(0)) + coeff
        pos = m.end()
        first = False
    arities = {len(s) for s in terms}
    if len(arities) > 1:
        raise ValueError("mixed arities in element literal")
    inferred = arities.pop() if arities else arity
    if arity is not None and inferred != arity:
        raise ArityError(f"literal has arity {inferred}, expected {arity}")
    return OperadElement(inferred, terms)


# ---------------------------------------------------------------------------
# named elements from the classification


def sign_sum(n: int) -> OperadElement:
    """The alternating sum of all permutations of arity n."""
    return OperadElement(
        n, {seq: Fraction(Permutation(seq).sign()) for seq in perm_list(n)}
    )


def beta5() -> OperadElement:
    """A cyclic generator of the arity-5 top truncation component."""
    rev = Permutation((5, 4, 3, 2, 1))
    return act(tau_composition((2, 3)), rev) + act(tau_n(5), rev)


def beta6() -> OperadElement:
    """A cyclic generator of the arity-6 top truncation component."""
    return (
        act(tau_composition((2, 2, 2)), Permutation((2, 1, 4, 3, 6, 5)))
        + act(tau_composition((2, 4)), Permutation((6, 5, 4, 3, 2, 1)))
        + act(tau_composition((3, 3)), Permutation((3, 2, 1, 6, 5, 4)))
        + act(tau_n(6), Permutation((6, 5, 4, 3, 2, 1)))
    )


def zeta4() -> OperadElement:
    """A cyclic generator of the arity-4 top truncation component."""
    return act(tau_composition((2, 2)), Permutation((2, 1, 4, 3))) + act(
        tau_n(4), Permutation((4, 3, 2, 1))
    )


def top_generator(n: int) -> OperadElement:
    """A cyclic generator of the arity-n component of the n-th truncation ideal."""
    table = {2: tau(), 3: tau_n(3), 4: zeta4(), 5: beta5(), 6: beta6()}
    if n not in table:
        raise ArityError(f"no catalogued top generator for arity {n}")
    return table[n]
