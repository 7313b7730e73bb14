"""Representation analysis of submodules of the regular module.

Characters of invariant subspaces are read off the canonical RREF basis (a
trace against a permuted pivot set), decomposed against the irreducible
character table, and matched to explicit isotypic projectors.  Multiplicity
spaces are realized as Young-symmetrizer slices, which is what makes the
infinite families of submodules finitely describable: a submodule choice is
a choice of subspace in each multiplicity space.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import linalg
from .linalg import Subspace
from .operad import (
    OperadElement,
    generator_action_maps,
    perm_index,
    perm_list,
    right_action_map,
)
from .symmetric import (
    CharacterVector,
    Partition,
    Permutation,
    character_table,
    class_representative,
    hook_dimension,
    partitions,
    perm_multiply,
)


class NotSubmoduleError(ValueError):
    pass


# ---------------------------------------------------------------------------
# spans under the right action


def module_span(vectors: Iterable[Sequence], n: int) -> Subspace:
    """Smallest right-stable subspace of the regular module containing vectors."""
    return linalg.span_closure(vectors, generator_action_maps(n), math.factorial(n))


def cyclic_span(theta: OperadElement) -> Subspace:
    """Right-module span of a single element."""
    if theta.is_zero():
        raise ValueError("zero vector spans nothing")
    return module_span([theta.to_vector()], theta.arity)


def is_module(space: Subspace, n: int) -> bool:
    """True when the subspace is stable under the right action."""
    if space.dim == 0 or space.dim == space.ambient_dim:
        return True
    K = space.annihilator_matrix()
    for m in generator_action_maps(n):
        if np.asarray(linalg._exact_matmul(K, space.mat[:, m].T)).any():
            return False
    return True


# ---------------------------------------------------------------------------
# characters


def character_of_subspace(space: Subspace, n: int) -> CharacterVector:
    """The class function of right multiplication restricted to the subspace."""
    if space.ambient_dim != math.factorial(n):
        raise ValueError("ambient dimension does not match the arity")
    if not is_module(space, n):
        raise NotSubmoduleError("subspace is not right-stable")
    values = []
    for lam in partitions(n):
        rep = class_representative(lam)
        m = right_action_map(n, rep.seq)
        total = Fraction(0)
        for i, p in enumerate(space.pivots):
            total += Fraction(int(space.mat[i][m[p]]), int(space.mat[i][p]))
        values.append(total)
    return CharacterVector(n, values)


class Decomposition(dict):
    """Multiplicities of irreducibles, keyed by partition."""

    @property
    def total_dimension(self) -> int:
        return sum(mult * hook_dimension(lam) for lam, mult in self.items())

    def character(self, n: int) -> CharacterVector:
        table = character_table(n)
        values = [Fraction(0)] * len(partitions(n))
        out = CharacterVector(n, values)
        for lam, mult in self.items():
            out = out + mult * table[lam]
        return out

    def __str__(self) -> str:
        return " + ".join(
            (f"{m}*chi{lam}" if m != 1 else f"chi{lam}")
            for lam, m in sorted(self.items(), key=lambda kv: kv[0].parts)
            if m
        ) or "0"


def decompose(chi: CharacterVector) -> Decomposition:
    """Irreducible multiplicities of a genuine character."""
    table = character_table(chi.n)
    out = Decomposition()
    for lam, irr in table.items():
        mult = chi.inner(irr)
        if mult.denominator != 1 or mult < 0:
            raise ValueError(f"non-integral multiplicity {mult} at {lam}")
        if mult:
            out[lam] = int(mult)
    if out.total_dimension != chi.dimension:
        raise ValueError("multiplicities do not add up to the dimension")
    return out


def decompose_subspace(space: Subspace, n: int) -> Decomposition:
    return decompose(character_of_subspace(space, n))


# ---------------------------------------------------------------------------
# isotypic projectors


@lru_cache(maxsize=None)
def isotypic_projector(lam: Partition, n: int) -> np.ndarray:
    """Matrix of sum_sigma chi_lam(sigma) * (right multiplication by sigma).

    Acts on row vectors, v -> v @ P; the image of a right submodule is its
    lam-isotypic component.
    """
    if lam.weight != n:
        raise ValueError("partition weight differs from arity")
    chi = character_table(n)[lam]
    lams = partitions(n)
    chi_by_type = {mu.parts: int(chi[mu]) for mu in lams}
    nfact = math.factorial(n)
    P = np.zeros((nfact, nfact), dtype=np.int64)
    cols = np.arange(nfact)
    for seq in perm_list(n):
        sigma = Permutation(seq)
        c = chi_by_type[sigma.cycle_type().parts]
        if c:
            m = right_action_map(n, seq)
            P[m, cols] += c
    return P


def isotypic_component(space: Subspace, lam: Partition, n: int) -> Subspace:
    """Image of the isotypic projector restricted to the subspace."""
    P = isotypic_projector(lam, n)
    if space.dim == 0:
        return space
    image = linalg._exact_matmul(space.mat, P)
    return linalg.row_space([list(r) for r in image.tolist()], space.ambient_dim)


def component_generator(lam: Partition, space: Subspace, n: int) -> OperadElement:
    """A cyclic generator of the lam-isotypic component (multiplicity 1 only)."""
    comp = isotypic_component(space, lam, n)
    d = hook_dimension(lam)
    if comp.dim != d:
        raise ValueError(
            f"isotypic component has dimension {comp.dim}, not multiplicity one ({d})"
        )
    gen = OperadElement.from_vector(n, comp.basis[0])
    assert cyclic_span(gen) == comp
    return gen


# ---------------------------------------------------------------------------
# Young symmetrizer slices


@lru_cache(maxsize=None)
def standard_tableau_rows(lam: Partition) -> tuple[tuple[int, ...], ...]:
    """Row-reading standard tableau: fill 1, 2, ... left to right, top down."""
    rows = []
    nxt = 1
    for part in lam.parts:
        rows.append(tuple(range(nxt, nxt + part)))
        nxt += part
    return tuple(rows)


def _stabilizer_perms(blocks: Sequence[Sequence[int]], n: int):
    """All permutations fixing each block setwise, as sequence tuples."""
    identity = list(range(1, n + 1))
    per_block = []
    for block in blocks:
        per_block.append([dict(zip(block, img)) for img in itertools.permutations(block)])
    for combo in itertools.product(*per_block):
        seq = identity[:]
        for mapping in combo:
            for src, dst in mapping.items():
                # seq is the sequence form: entry at position t is the
                # preimage of t; a block bijection src->dst contributes
                # preimage(dst) = src
                seq[dst - 1] = src
        yield tuple(seq)


@lru_cache(maxsize=None)
def young_symmetrizer(lam: Partition) -> OperadElement:
    """Row sum times signed column sum for the row-reading tableau."""
    n = lam.weight
    rows = standard_tableau_rows(lam)
    cols = []
    for j in range(lam.parts[0]):
        col = tuple(row[j] for row in rows if j < len(row))
        cols.append(col)
    terms: dict[tuple[int, ...], Fraction] = {}
    for pseq in _stabilizer_perms(rows, n):
        p = Permutation(pseq)
        for qseq in _stabilizer_perms(cols, n):
            q = Permutation(qseq)
            prod = perm_multiply(p, q)
            sign = Fraction(q.sign())
            terms[prod.seq] = terms.get(prod.seq, Fraction(0)) + sign
    return OperadElement(n, terms)


@lru_cache(maxsize=None)
def _right_multiplication_matrix(theta: OperadElement) -> np.ndarray:
    """Matrix of v -> v * theta on dense coordinates."""
    n = theta.arity
    nfact = math.factorial(n)
    M = np.zeros((nfact, nfact), dtype=np.int64)
    cols = np.arange(nfact)
    for seq, c in theta.terms.items():
        m = right_action_map(n, seq)
        M[m, cols] += int(c)
    return M


def multiplicity_space(space: Subspace, lam: Partition, n: int) -> Subspace:
    """The Young-symmetrizer slice; its dimension is the multiplicity of lam."""
    if lam.weight != n:
        raise ValueError("partition weight differs from arity")
    if space.dim == 0:
        return space
    M = _right_multiplication_matrix(young_symmetrizer(lam))
    image = linalg._exact_matmul(space.mat, M)
    return linalg.row_space([list(r) for r in image.tolist()], space.ambient_dim)


def submodule_from_multiplicity_subspace(slice_space: Subspace, n: int) -> Subspace:
    """Cyclic span of a subspace of a multiplicity slice."""
    if slice_space.dim == 0:
        return slice_space
    return module_span([list(r) for r in slice_space.mat.tolist()], n)


# ---------------------------------------------------------------------------
# submodule enumeration


@dataclass(frozen=True)
class SubmoduleFamily:
    """All submodules of one isotypic block: subspaces of the slice.

    ``chosen_dim`` selects the stratum; representatives are canonical
    (coordinate axes of the slice, the all-ones combination) plus seeded
    rational samples.
    """

    arity: int
    lam: Partition
    slice_space: Subspace
    chosen_dim: int

    @property
    def multiplicity(self) -> int:
        return self.slice_space.dim

    def realize(self, coefficients: Sequence[Sequence] ) -> Subspace:
        """Submodule from explicit coefficient vectors in the slice basis."""
        if len(coefficients) != self.chosen_dim:
            raise ValueError("need exactly chosen_dim coefficient vectors")
        basis = self.slice_space.basis
        vectors = []
        for coeffs in coefficients:
            if len(coeffs) != self.multiplicity:
                raise ValueError("coefficient length must equal the multiplicity")
            vec = [Fraction(0)] * self.slice_space.ambient_dim
            for c, row in zip(coeffs, basis):
                c = Fraction(c)
                for j, x in enumerate(row):
                    vec[j] += c * x
            vectors.append(vec)
        sub = linalg.row_space(vectors, self.slice_space.ambient_dim)
        if sub.dim != self.chosen_dim:
            raise ValueError("coefficient vectors are linearly dependent")
        return submodule_from_multiplicity_subspace(sub, self.arity)

    def representatives(self) -> list[tuple[str, Subspace]]:
        """Canonical representatives of the stratum."""
        m, d = self.multiplicity, self.chosen_dim
        out = []
        axes = [[Fraction(1 if i == j else 0) for j in range(m)] for i in range(m)]
        for combo in itertools.combinations(range(m), d):
            label = "axes(" + ",".join(map(str, combo)) + ")"
            out.append((label, self.realize([axes[i] for i in combo])))
        if d == 1 and m > 1:
            out.append(("ones", self.realize([[Fraction(1)] * m])))
        return out

    def sample(self, seed: int) -> Subspace:
        """Seeded random member of the stratum."""
        rng = random.Random(f"{seed}|{self.lam}|{self.chosen_dim}")
        while True:
            coeffs = [
                [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(self.multiplicity)]
                for _ in range(self.chosen_dim)
            ]
            try:
                return self.realize(coeffs)
            except ValueError:
                continue


@dataclass(frozen=True)
class SubmoduleEnumeration:
    """Outcome of enumerating submodules of a right module."""

    arity: int
    decomposition: Decomposition
    exact: tuple[Subspace, ...] | None
    families: Mapping[Partition, tuple[SubmoduleFamily, ...]]

    @property
    def is_exhaustive(self) -> bool:
        return self.exact is not None

    def achievable_decompositions(self) -> list[dict[Partition, int]]:
        lams = sorted(self.decomposition, key=lambda l: l.parts)
        ranges = [range(self.decomposition[l] + 1) for l in lams]
        return [dict(zip(lams, choice)) for choice in itertools.product(*ranges)]

    def achievable_dims(self, proper: bool = False) -> list[int]:
        total = self.decomposition.total_dimension
        dims = {
            sum(d * hook_dimension(l) for l, d in choice.items())
            for choice in self.achievable_decompositions()
        }
        if proper:
            dims.discard(total)
        return sorted(dims)


def enumerate_submodules(space: Subspace, n: int) -> SubmoduleEnumeration:
    """Every submodule when multiplicity-free, family descriptors otherwise."""
    dec = decompose_subspace(space, n)
    families = {
        lam: tuple(
            SubmoduleFamily(n, lam, multiplicity_space(space, lam, n), d)
            for d in range(dec[lam] + 1)
        )
        for lam in dec
    }
    exact = None
    if all(m == 1 for m in dec.values()):
        comps = {lam: isotypic_component(space, lam, n) for lam in dec}
        subs = []
        lams = sorted(dec, key=lambda l: l.parts)
        for mask in itertools.product((0, 1), repeat=len(lams)):
            cur = Subspace.zero(space.ambient_dim)
            for pick, lam in zip(mask, lams):
                if pick:
                    cur = linalg.subspace_sum(cur, comps[lam])
            subs.append(cur)
        exact = tuple(subs)
    return SubmoduleEnumeration(n, dec, exact, families)


def assemble_submodule(
    base: Subspace, additions: Iterable[Subspace], n: int
) -> Subspace:
    """Sum of a base submodule and further submodules."""
    out = base
    for extra in additions:
        out = linalg.subspace_sum(out, extra)
    if not is_module(out, n):
        raise NotSubmoduleError("assembled space is not right-stable")
    return out
