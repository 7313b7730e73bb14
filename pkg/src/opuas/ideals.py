"""Operadic ideals of the unital-associative operad, computed on a window.

An ideal presentation lists element generators and submodule generators
(plus an optional certified truncation tail).  The arity-n component of the
generated ideal is the right-module span of all single-occurrence composites
of a generator: pad it on the left and right with unit strings, substitute
unit strings (possibly empty, deleting inputs) into its slots, and close
under the symmetric-group action.  A second, independent construction - a
fixpoint closure under the five elementary moves on a window - guards the
first; the acceptance suite insists they agree.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .linalg import Subspace
from .operad import (
    OperadElement,
    act,
    full_compose,
    generator_action_maps,
    iota,
    perm_index,
    perm_list,
)
from .reps import cyclic_span, is_module, module_span
from .symmetric import Permutation
from .truncation import (
    check_window,
    gamma,
    pad_right,
    restriction_condition_rows,
    restriction_index_map,
    truncation_kernel,
    window,
)


class IdealError(ValueError):
    pass


# ---------------------------------------------------------------------------
# presentations and windows


@dataclass(frozen=True)
class IdealPresentation:
    """Generators of an operadic ideal.

    ``element_generators`` are single elements; ``module_generators`` are
    (arity, subspace) pairs closed under the right action; ``tail`` asserts
    that the truncation ideal of that index is contained in the ideal.
    """

    element_generators: tuple[OperadElement, ...] = ()
    module_generators: tuple[tuple[int, Subspace], ...] = ()
    tail: int | None = None
    label: str = ""

    def __post_init__(self):
        for m, M in self.module_generators:
            if M.ambient_dim != math.factorial(m):
                raise IdealError("module generator ambient does not match arity")

    def __add__(self, other: "IdealPresentation") -> "IdealPresentation":
        tails = [t for t in (self.tail, other.tail) if t is not None]
        label = "+".join(x for x in (self.label, other.label) if x)
        return IdealPresentation(
            self.element_generators + other.element_generators,
            self.module_generators + other.module_generators,
            min(tails) if tails else None,
            label,
        )

    @staticmethod
    def from_element(theta: OperadElement, label: str = "") -> "IdealPresentation":
        return IdealPresentation(element_generators=(theta,), label=label)

    @staticmethod
    def from_module(arity: int, space: Subspace, label: str = "") -> "IdealPresentation":
        return IdealPresentation(module_generators=((arity, space),), label=label)


class IdealWindow:
    """Componentwise view of an ideal up to the window arity."""

    __slots__ = ("components", "tail", "label")

    def __init__(self, components: Sequence[Subspace], tail: int | None, label: str = ""):
        self.components = tuple(components)
        self.tail = tail
        self.label = label

    @property
    def top_arity(self) -> int:
        return len(self.components) - 1

    def component(self, n: int) -> Subspace:
        if n > self.top_arity:
            raise IdealError(f"arity {n} beyond computed window {self.top_arity}")
        return self.components[n]

    def dims(self) -> tuple[int, ...]:
        return tuple(c.dim for c in self.components)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IdealWindow)
            and self.components == other.components
            and self.tail == other.tail
        )

    def __hash__(self):
        return hash((self.components, self.tail))

    def __repr__(self):
        return f"IdealWindow({self.label or 'ideal'}, dims={self.dims()}, tail={self.tail})"


# ---------------------------------------------------------------------------
# cyclic generators of submodules


@lru_cache(maxsize=None)
def cyclic_generator(space: Subspace, arity: int, seed: int = 0) -> OperadElement:
    """A single element whose right-module span is the whole submodule.

    Over a semisimple group algebra a dense set of vectors works; canonical
    candidates are tried first, then seeded random combinations.
    """
    if space.dim == 0:
        raise IdealError("zero module has no cyclic generator")
    mat = np.asarray(space.mat)
    candidates = [mat.sum(axis=0)]
    rng = random.Random(seed)
    for _ in range(20):
        coeffs = np.array([rng.randint(-3, 3) for _ in range(space.dim)])
        candidates.append(coeffs @ mat)
    for vec in candidates:
        if not vec.any():
            continue
        theta = OperadElement.from_vector(arity, [int(x) for x in vec])
        if cyclic_span(theta) == space:
            return theta
    raise IdealError("no cyclic generator found (is the input a submodule?)")


# ---------------------------------------------------------------------------
# ideal components by single-occurrence composites


def _padding_patterns(slots: int, total: int, min_block: int):
    """(left, blocks, right) with left+right+sum(blocks) == total, blocks >= min_block."""
    budget = total - slots * min_block
    if budget < 0:
        return
    for cut in itertools.combinations_with_replacement(range(budget + 1), slots + 1):
        # cut points split budget over slots+2 bins
        bins = []
        prev = 0
        for c in cut:
            bins.append(c - prev)
            prev = c
        bins.append(budget - prev)
        left, right = bins[0], bins[-1]
        blocks = tuple(b + min_block for b in bins[1:-1])
        yield left, blocks, right


def _generator_composites(g: OperadElement, n: int) -> list[list[Fraction]]:
    """Dense vectors of all single-occurrence composites of g in arity n."""
    m = g.arity
    in_top = m <= window() and truncation_kernel(m, m).contains(g.to_vector())
    min_block = 1 if in_top else 0
    out = []
    units = {}

    def unit(k: int) -> OperadElement:
        if k not in units:
            units[k] = OperadElement.unit(k)
        return units[k]

    for left, blocks, right in _padding_patterns(m, n, min_block):
        inner = full_compose(g, [unit(b) for b in blocks])
        v = iota(left, right, inner)
        if not v.is_zero():
            out.append(v.to_vector())
    return out


@lru_cache(maxsize=None)
def ideal_component(pres: IdealPresentation, n: int) -> Subspace:
    """Arity-n component of the ideal the presentation generates."""
    check_window(n)
    nfact = math.factorial(n)
    vectors: list = []
    for g in pres.element_generators:
        vectors.extend(_generator_composites(g, n))
    for m, M in pres.module_generators:
        if M.dim == 0:
            continue
        vectors.extend(_generator_composites(cyclic_generator(M, m), n))
    if pres.tail is not None:
        tk = truncation_kernel(pres.tail, n)
        vectors.extend(list(r) for r in tk.mat.tolist())
    if not vectors:
        return Subspace.zero(nfact)
    return linalg.span_closure(vectors, generator_action_maps(n), nfact)


def ideal_window(pres: IdealPresentation, top: int | None = None) -> IdealWindow:
    top = window() if top is None else top
    comps = [ideal_component(pres, n) for n in range(top + 1)]
    return IdealWindow(comps, pres.tail, pres.label)


@lru_cache(maxsize=None)
def truncation_window(k: int, top: int | None = None) -> IdealWindow:
    """The k-th truncation ideal as a window (components by kernels)."""
    top = window() if top is None else top
    comps = [truncation_kernel(k, n) for n in range(top + 1)]
    return IdealWindow(comps, k, f"U({k})")


def window_sum(a: IdealWindow, b: IdealWindow) -> IdealWindow:
    if a.top_arity != b.top_arity:
        raise IdealError("windows cover different arities")
    comps = [
        linalg.subspace_sum(x, y) for x, y in zip(a.components, b.components)
    ]
    tails = [t for t in (a.tail, b.tail) if t is not None]
    label = "+".join(x for x in (a.label, b.label) if x)
    return IdealWindow(comps, min(tails) if tails else None, label)


# ---------------------------------------------------------------------------
# elementary-move fixpoint oracle


@lru_cache(maxsize=None)
def _down_maps(n: int) -> tuple[np.ndarray, ...]:
    """Index maps of composing the 0-unit into each slot (arity n -> n-1)."""
    out = []
    tgt = perm_index(n - 1)
    for i in range(1, n + 1):
        arr = np.empty(math.factorial(n), dtype=np.int64)
        for j, seq in enumerate(perm_list(n)):
            word = tuple(x - (x > i) for x in seq if x != i)
            arr[j] = tgt[word]
        out.append(arr)
    return tuple(out)


@lru_cache(maxsize=None)
def _up_maps(n: int) -> tuple[np.ndarray, ...]:
    """Index maps of the arity-raising moves (slot widening and unit pads)."""
    out = []
    tgt = perm_index(n + 1)
    unit2 = OperadElement.unit(2)
    basis = [OperadElement.basis(Permutation(seq)) for seq in perm_list(n)]
    for i in range(1, n + 1):
        arr = np.empty(math.factorial(n), dtype=np.int64)
        for j, b in enumerate(basis):
            composed = full_compose(
                b,
                [unit2 if k == i else OperadElement.unit(1) for k in range(1, n + 1)],
            )
            ((seq, _),) = composed.terms.items()
            arr[j] = tgt[seq]
        out.append(arr)
    for pad in ("left", "right"):
        arr = np.empty(math.factorial(n), dtype=np.int64)
        for j, b in enumerate(basis):
            inners = [OperadElement.unit(1), b] if pad == "left" else [b, OperadElement.unit(1)]
            composed = full_compose(unit2, inners)
            ((seq, _),) = composed.terms.items()
            arr[j] = tgt[seq]
        out.append(arr)
    return tuple(out)


def _initial_components(pres: IdealPresentation, top: int) -> list[list[list[int]]]:
    """Integer generator rows per arity (no closure applied yet)."""
    rows: list[list[list[int]]] = [[] for _ in range(top + 1)]
    for g in pres.element_generators:
        if g.arity <= top and not g.is_zero():
            rows[g.arity].extend(linalg._as_int_rows([g.to_vector()], math.factorial(g.arity)))
    for m, M in pres.module_generators:
        if m <= top:
            rows[m].extend(list(r) for r in M.mat.tolist())
    if pres.tail is not None:
        for n in range(pres.tail, top + 1):
            rows[n].extend(list(r) for r in truncation_kernel(pres.tail, n).mat.tolist())
    return rows


def _fixpoint(pres: IdealPresentation, top: int) -> list[Subspace]:
    comps: list[Subspace] = []
    pending = _initial_components(pres, top)
    for n in range(top + 1):
        nfact = math.factorial(n)
        if pending[n]:
            comps.append(linalg.span_closure(pending[n], generator_action_maps(n), nfact))
        else:
            comps.append(Subspace.zero(nfact))
    changed = True
    while changed:
        changed = False
        new_rows: list[list[list[int]]] = [[] for _ in range(top + 1)]
        for n in range(top + 1):
            space = comps[n]
            if space.dim == 0:
                continue
            mat = space.mat
            if n >= 1 and n - 1 >= 0:
                for dm in _down_maps(n):
                    img = np.zeros((mat.shape[0], math.factorial(n - 1)), dtype=mat.dtype)
                    np.add.at(img, (slice(None), dm), mat)
                    new_rows[n - 1].extend(list(r) for r in img.tolist())
            if n + 1 <= top:
                for um in _up_maps(n):
                    img = np.zeros((mat.shape[0], math.factorial(n + 1)), dtype=mat.dtype)
                    img[:, um] = mat
                    new_rows[n + 1].extend(list(r) for r in img.tolist())
        for n in range(top + 1):
            if not new_rows[n]:
                continue
            candidate = [list(r) for r in comps[n].mat.tolist()] + new_rows[n]
            bigger = linalg.span_closure(
                candidate, generator_action_maps(n), math.factorial(n)
            )
            if bigger.dim != comps[n].dim:
                comps[n] = bigger
                changed = True
    return comps


@dataclass(frozen=True)
class OracleReport:
    window: IdealWindow
    headroom: int
    stable: bool | None  # None when headroom is 0 (not checked)


def closure_fixpoint_oracle(
    pres: IdealPresentation, top: int | None = None, headroom: int = 0
) -> OracleReport:
    """Least window family closed under the five elementary moves.

    With positive headroom the fixpoint is recomputed on the enlarged
    window and the report states whether the components up to ``top``
    remained stable; instability is reported, never silently truncated.
    """
    top = window() if top is None else top
    check_window(top + headroom)
    comps = _fixpoint(pres, top + headroom)
    stable: bool | None = None
    if headroom > 0:
        smaller = _fixpoint(pres, top + headroom - 1)
        stable = all(comps[n] == smaller[n] for n in range(top + 1))
    return OracleReport(IdealWindow(comps[: top + 1], pres.tail, pres.label), headroom, stable)


# ---------------------------------------------------------------------------
# numerical invariants


def mdeg(ideal: IdealWindow) -> int:
    """Least arity with a nonzero component."""
    for n, comp in enumerate(ideal.components):
        if comp.dim:
            return n
    raise IdealError("zero ideal in window has no minimal degree")


def gkdim_quotient(ideal: IdealWindow) -> int:
    """GK-dimension of the quotient operad (needs a certified tail)."""
    if ideal.tail is None:
        raise IdealError("gkdim needs a certified truncation tail")
    top = 0
    for k in range(min(ideal.tail, ideal.top_arity + 1)):
        quotient_dim = gamma(k) - linalg.intersect(
            ideal.component(k), truncation_kernel(k, k)
        ).dim
        if quotient_dim:
            top = k + 1
    return top


def certified_generation_bound(ideal: IdealWindow) -> int:
    """Arity by which the ideal is generated: d+1 for odd d, d for even d."""
    d = gkdim_quotient(ideal)
    return d + 1 if d % 2 else max(d, 1)


def gen_degree(ideal: IdealWindow, bound: int | None = None) -> int:
    """Least n with the ideal generated by its arity-n component.

    ``bound`` must be an arity by which the ideal is certainly generated
    (defaults to the GK-dimension bound); the scan compares the generated
    ideal against the given one at that arity, ascending from the minimal
    degree.
    """
    B = certified_generation_bound(ideal) if bound is None else bound
    if B > ideal.top_arity:
        raise IdealError(f"generation bound {B} exceeds window {ideal.top_arity}")
    target = ideal.component(B)
    for n in range(mdeg(ideal), B + 1):
        if n == B:
            return B
        comp = ideal.component(n)
        if comp.dim == 0:
            continue
        generated = ideal_component(IdealPresentation.from_module(n, comp), B)
        if generated == target:
            return n
    raise IdealError("unreachable: generation bound violated")


def single_generator(ideal: IdealWindow, m: int) -> OperadElement:
    """The stitched generator: sum over k of right-padded cyclic generators.

    Each summand is the cyclic generator of the ideal's intersection with
    the top truncation component in arity k, padded up to arity m.  When the
    ideal is generated by its arity-m component this single element
    generates the whole ideal.
    """
    if m > ideal.top_arity:
        raise IdealError("m beyond window")
    total = OperadElement.zero(m)
    for k in range(1, m + 1):
        piece = linalg.intersect(ideal.component(k), truncation_kernel(k, k))
        if piece.dim == 0:
            continue
        zeta = cyclic_generator(piece, k)
        total = total + pad_right(zeta, m - k)
    if total.is_zero():
        raise IdealError("ideal vanishes up to the requested arity")
    return total


def generates(theta: OperadElement, ideal: IdealWindow) -> bool:
    """Componentwise check that a single element generates the ideal."""
    pres = IdealPresentation.from_element(theta, label="<gen>")
    return all(
        ideal_component(pres, n) == ideal.component(n)
        for n in range(ideal.top_arity + 1)
    )


# ---------------------------------------------------------------------------
# containment and maximality


def contains_ideal(big: IdealWindow, small: IdealWindow) -> bool:
    """Componentwise containment over the common window."""
    if big.top_arity != small.top_arity:
        raise IdealError("incomparable windows")
    return all(
        big.component(n).contains(small.component(n))
        for n in range(big.top_arity + 1)
    )


def strictly_contains(big: IdealWindow, small: IdealWindow) -> bool:
    return contains_ideal(big, small) and big.components != small.components


def maximal_wrt_gkdim(ideal: IdealWindow, candidates: Iterable[IdealWindow]) -> bool:
    """No candidate of the same quotient GK-dimension strictly contains it."""
    d = gkdim_quotient(ideal)
    for other in candidates:
        if strictly_contains(other, ideal) and gkdim_quotient(other) == d:
            return False
    return True


# ---------------------------------------------------------------------------
# generalized truncation ideals


def _membership_condition_rows(n: int, m: int, M: Subspace) -> np.ndarray:
    """Rows expressing: every size-m restriction of mu lies in M."""
    K = M.annihilator_matrix()
    blocks = [restriction_condition_rows(n, m - 1)]
    if K.shape[0]:
        for subset in itertools.combinations(range(1, n + 1), m):
            imap = restriction_index_map(n, subset)
            blocks.append(np.asarray(K)[:, imap])
    return np.vstack([b for b in blocks if b.shape[0]])


def gt_type1(m: int, M: Subspace, top: int | None = None) -> IdealWindow:
    """Generalized truncation ideal of a submodule of a top component.

    Computed by both the pointwise restriction condition and as the ideal
    generated by the module plus the next truncation tail; a disagreement
    raises, signalling a bug.
    """
    top = window() if top is None else top
    if not truncation_kernel(m, m).contains(M):
        raise IdealError("module must sit inside the top truncation component")
    if not is_module(M, m):
        raise IdealError("not a submodule")
    pres = IdealPresentation.from_module(m, M, label=f"GT1({m})") + IdealPresentation(
        tail=m + 1, label=""
    )
    generated = ideal_window(pres, top)
    comps = []
    for n in range(top + 1):
        if n < m:
            comps.append(Subspace.zero(math.factorial(n)))
        elif n == m:
            comps.append(M)
        else:
            rows = _membership_condition_rows(n, m, M)
            comps.append(linalg.kernel(rows.tolist(), ambient_dim=math.factorial(n)))
    pointwise = IdealWindow(comps, m + 1, f"GT1({m})")
    if pointwise.components != generated.components:
        raise IdealError("pointwise and generated constructions disagree")
    return pointwise


@dataclass(frozen=True)
class AdmissibleSequence:
    """Modules (M_{m-s}, ..., M_m), each inside its top truncation component."""

    entries: tuple[tuple[int, Subspace], ...]

    def __post_init__(self):
        arities = [a for a, _ in self.entries]
        if not arities or arities != list(range(arities[0], arities[0] + len(arities))):
            raise IdealError("entries must cover consecutive arities")

    @property
    def m(self) -> int:
        return self.entries[-1][0]

    @property
    def depth(self) -> int:
        return len(self.entries) - 1

    def module(self, j: int) -> Subspace:
        for a, M in self.entries:
            if a == j:
                return M
        raise KeyError(j)


def admissible_check(seq: AdmissibleSequence) -> tuple[bool, str]:
    """Verify the admissibility conditions; reports the first failure."""
    first_arity, first_module = seq.entries[0]
    m = seq.m
    if first_module.dim == 0:
        return False, f"wrong start: module at arity {first_arity} is zero"
    if seq.module(m) == truncation_kernel(m, m):
        return False, f"module at arity {m} must be proper"
    for j, M in seq.entries:
        if not truncation_kernel(j, j).contains(M):
            return False, f"module at arity {j} leaves the top truncation component"
        if not is_module(M, j):
            return False, f"subspace at arity {j} is not right-stable"
    for j, Mj in seq.entries[1:]:
        lower = Subspace.zero(math.factorial(j))
        for i, Mi in seq.entries:
            if i >= j:
                break
            pres = IdealPresentation.from_module(i, Mi)
            lower = linalg.subspace_sum(lower, ideal_component(pres, j))
        meet = linalg.intersect(lower, truncation_kernel(j, j))
        if not Mj.contains(meet):
            return False, f"containment fails at arity {j}"
    return True, "admissible"


def gt_general(seq: AdmissibleSequence, top: int | None = None) -> IdealWindow:
    """Generalized truncation ideal of an admissible sequence."""
    top = window() if top is None else top
    ok, why = admissible_check(seq)
    if not ok:
        raise IdealError(f"inadmissible sequence: {why}")
    pres = IdealPresentation(tail=seq.m + 1, label=f"GT2({seq.m})")
    for j, Mj in seq.entries:
        pres = pres + IdealPresentation.from_module(j, Mj)
    result = ideal_window(pres, top)
    for j, Mj in seq.entries:
        recovered = linalg.intersect(result.component(j), truncation_kernel(j, j))
        if recovered != Mj:
            raise IdealError(f"module recovery fails at arity {j}")
    return result


def _all_rows_inside(rows: np.ndarray, space: Subspace) -> bool:
    if rows.shape[0] == 0:
        return True
    if space.dim == space.ambient_dim:
        return True
    prod = linalg._exact_matmul(space.annihilator_matrix(), rows.T)
    return not np.asarray(prod).any()


def validate_window(ideal: IdealWindow) -> bool:
    """Invariant check: components stable under the five elementary moves."""
    top = ideal.top_arity
    for n in range(top + 1):
        comp = ideal.component(n)
        if comp.dim == 0:
            continue
        if not is_module(comp, n):
            return False
        mat = comp.mat
        if n >= 1:
            low = ideal.component(n - 1)
            for dm in _down_maps(n):
                img = np.zeros((mat.shape[0], math.factorial(n - 1)), dtype=mat.dtype)
                np.add.at(img, (slice(None), dm), mat)
                if not _all_rows_inside(img, low):
                    return False
        if n + 1 <= top:
            up = ideal.component(n + 1)
            for um in _up_maps(n):
                img = np.zeros((mat.shape[0], math.factorial(n + 1)), dtype=mat.dtype)
                img[:, um] = mat
                if not _all_rows_inside(img, up):
                    return False
    return True
