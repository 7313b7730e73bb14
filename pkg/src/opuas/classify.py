"""Classification of quotient operads of GK-dimension at most 6.

GK-dimension 5: the sixteen ideals are the generalized truncation ideals of
the fifteen proper submodules of the arity-4 top component (which is
multiplicity free) plus the single type-II ideal of the unique 4-admissible
pair.  GK-dimension 6: type-I ideals over the proper submodules of the
arity-5 top component, plus type-II ideals of 5-admissible pairs, which are
enumerated here by multiplicity strata with representatives (canonical and
seeded) wherever a stratum is an infinite family.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from .ideals import (
    AdmissibleSequence,
    IdealPresentation,
    IdealWindow,
    admissible_check,
    gen_degree,
    gkdim_quotient,
    gt_general,
    gt_type1,
    ideal_component,
    ideal_window,
    maximal_wrt_gkdim,
    truncation_window,
    window_sum,
)
from .linalg import Subspace
from .operad import OperadElement, beta5, beta6, tau_n
from .reps import (
    decompose_subspace,
    isotypic_component,
    module_span,
    multiplicity_space,
    submodule_from_multiplicity_subspace,
)
from .series import GammaSeries, gamma_series_of_quotient, normalized
from .symmetric import Partition, hook_dimension
from .truncation import pad_right, specht_basis, truncation_kernel, window

P = Partition

#: The four irreducible constituents of the arity-4 top component, in the
#: display order used by the classification tables.
TOP4_PARTS: tuple[Partition, ...] = (
    P([1, 1, 1, 1]),
    P([2, 2]),
    P([3, 1]),
    P([2, 1, 1]),
)


def subset_label(parts: frozenset[Partition]) -> str:
    if not parts:
        return "0"
    ordered = [lam for lam in TOP4_PARTS if lam in parts]
    ordered += sorted((l for l in parts if l not in TOP4_PARTS), key=lambda l: l.parts)
    return "+".join(f"V{lam}" for lam in ordered)


@lru_cache(maxsize=None)
def top4_component(lam: Partition) -> Subspace:
    return isotypic_component(truncation_kernel(4, 4), lam, 4)


@lru_cache(maxsize=None)
def top4_submodule(parts: frozenset[Partition]) -> Subspace:
    space = Subspace.zero(24)
    for lam in parts:
        space = linalg.subspace_sum(space, top4_component(lam))
    return space


#: Row order of the GK-dimension-5 tables (generator table variant).
M4_ROWS_GENERATOR_TABLE: tuple[tuple[Partition, ...], ...] = (
    (P([1, 1, 1, 1]), P([3, 1]), P([2, 1, 1])),
    (P([1, 1, 1, 1]), P([2, 2]), P([3, 1])),
    (P([1, 1, 1, 1]), P([3, 1])),
    (P([1, 1, 1, 1]), P([2, 2]), P([2, 1, 1])),
    (P([1, 1, 1, 1]), P([2, 1, 1])),
    (P([1, 1, 1, 1]), P([2, 2])),
    (P([1, 1, 1, 1]),),
    (P([2, 2]), P([3, 1]), P([2, 1, 1])),
    (P([2, 2]), P([2, 1, 1])),
    (P([3, 1]), P([2, 1, 1])),
    (P([2, 2]), P([3, 1])),
    (P([3, 1]),),
    (P([2, 1, 1]),),
    (P([2, 2]),),
    (),
)

#: Row order of the GK-dimension-5 tables (identity/codimension variant).
M4_ROWS_CODIM_TABLE: tuple[tuple[Partition, ...], ...] = (
    M4_ROWS_GENERATOR_TABLE[0],
    M4_ROWS_GENERATOR_TABLE[1],
    M4_ROWS_GENERATOR_TABLE[2],
    M4_ROWS_GENERATOR_TABLE[3],
    M4_ROWS_GENERATOR_TABLE[4],
    M4_ROWS_GENERATOR_TABLE[5],
    M4_ROWS_GENERATOR_TABLE[6],
    M4_ROWS_GENERATOR_TABLE[7],
    M4_ROWS_GENERATOR_TABLE[9],
    M4_ROWS_GENERATOR_TABLE[8],
    M4_ROWS_GENERATOR_TABLE[10],
    M4_ROWS_GENERATOR_TABLE[11],
    M4_ROWS_GENERATOR_TABLE[12],
    M4_ROWS_GENERATOR_TABLE[13],
    M4_ROWS_GENERATOR_TABLE[14],
)


# ---------------------------------------------------------------------------
# catalogued component generators of the arity-4 top component


@lru_cache(maxsize=None)
def catalogued_component_generators() -> dict[Partition, OperadElement]:
    """The explicit generators of the four irreducible components.

    Coefficients are in the catalogued basis theta_1..theta_9 of the arity-4
    top component (three double commutators, six length-4 ones).
    """
    thetas = [theta for _, theta in specht_basis(4)]
    coeffs = {
        P([1, 1, 1, 1]): (2, -2, 2, -1, 1, 1, -1, -1, 1),
        P([2, 2]): (2, 4, 2, -1, 1, -2, 2, -1, 1),
        P([3, 1]): (0, 0, 0, 1, 3, -2, 2, -3, -1),
        P([2, 1, 1]): (0, 0, 0, 1, -1, -1, 1, 1, -1),
    }
    out = {}
    for lam, row in coeffs.items():
        total = OperadElement.zero(4)
        for c, theta in zip(row, thetas):
            total = total + Fraction(c) * theta
        out[lam] = total
    return out


def catalogued_type1_generator(parts: frozenset[Partition], gd: int) -> OperadElement:
    """The single generator for a type-I ideal, stitched by generating degree."""
    zetas = catalogued_component_generators()
    zeta = OperadElement.zero(4)
    for lam in TOP4_PARTS:
        if lam in parts:
            zeta = zeta + zetas[lam]
    if gd == 4:
        return zeta
    if gd == 5:
        return pad_right(zeta, 1) + beta5()
    if gd == 6:
        base = beta6() if zeta.is_zero() else pad_right(zeta, 2) + pad_right(beta5(), 1) + beta6()
        return base
    raise ValueError(f"unsupported generating degree {gd}")


# ---------------------------------------------------------------------------
# GK-dimension 5


@dataclass(frozen=True)
class Gkdim5Entry:
    label: str
    kind: str  # "type1" | "type2"
    parts: frozenset[Partition] | None
    window: IdealWindow
    u: int
    gd: int
    series: GammaSeries


@lru_cache(maxsize=None)
def unique_4_admissible_pair() -> AdmissibleSequence:
    M3 = truncation_kernel(3, 3)
    M4 = linalg.intersect(
        ideal_component(IdealPresentation.from_module(3, M3), 4),
        truncation_kernel(4, 4),
    )
    return AdmissibleSequence(((3, M3), (4, M4)))


@lru_cache(maxsize=None)
def type2_gkdim5_window() -> IdealWindow:
    return gt_general(unique_4_admissible_pair())


@lru_cache(maxsize=None)
def classified_gkdim5() -> tuple[Gkdim5Entry, ...]:
    """All sixteen ideals with quotient of GK-dimension 5."""
    entries = []
    for parts_tuple in M4_ROWS_GENERATOR_TABLE:
        parts = frozenset(parts_tuple)
        M = top4_submodule(parts)
        w = gt_type1(4, M)
        entries.append(
            Gkdim5Entry(
                label=subset_label(parts),
                kind="type1",
                parts=parts,
                window=w,
                u=9 - M.dim,
                gd=gen_degree(w),
                series=gamma_series_of_quotient(w),
            )
        )
    w2 = type2_gkdim5_window()
    entries.append(
        Gkdim5Entry(
            label="T(3)+U(5)",
            kind="type2",
            parts=None,
            window=w2,
            u=1,
            gd=gen_degree(w2),
            series=gamma_series_of_quotient(w2),
        )
    )
    return tuple(entries)


def maximal_gkdim5_labels() -> list[str]:
    entries = classified_gkdim5()
    windows = [e.window for e in entries]
    return [e.label for e in entries if maximal_wrt_gkdim(e.window, windows)]


# ---------------------------------------------------------------------------
# 5-admissible pairs (GK-dimension 6, type II)


@lru_cache(maxsize=None)
def generated_meet_with_top5(parts: frozenset[Partition]) -> Subspace:
    """The arity-5 piece forced by a nonzero M4: <M4>(5) meet the top component."""
    M4 = top4_submodule(parts)
    comp5 = ideal_component(IdealPresentation.from_module(4, M4), 5)
    return linalg.intersect(comp5, truncation_kernel(5, 5))


@dataclass(frozen=True)
class PairStratum:
    """One multiplicity type of admissible M5 over a fixed M4."""

    m4_parts: frozenset[Partition]
    m5_multiplicities: tuple[tuple[Partition, int], ...]
    m5_dim: int
    singleton: bool

    @property
    def m5_decomposition(self) -> dict[Partition, int]:
        return dict(self.m5_multiplicities)

    def label(self) -> str:
        body = "+".join(
            (f"{m}x{lam}" if m > 1 else f"{lam}")
            for lam, m in self.m5_multiplicities
            if m
        )
        return f"(M4={subset_label(self.m4_parts)}; M5={body})"


@dataclass(frozen=True)
class PairTableRow:
    m4_parts: frozenset[Partition]
    gd_type1: int
    forced_decomposition: tuple[tuple[Partition, int], ...]
    strata: tuple[PairStratum, ...]

    @property
    def count(self) -> int | None:
        """Number of admissible M5 (None for infinitely many)."""
        if all(s.singleton for s in self.strata):
            return len(self.strata)
        return None


@lru_cache(maxsize=None)
def five_admissible_pair_table() -> tuple[PairTableRow, ...]:
    """Strata of admissible (M4, M5) per nonzero proper M4."""
    top5 = truncation_kernel(5, 5)
    dec_top5 = decompose_subspace(top5, 5)
    rows = []
    for parts_tuple in M4_ROWS_GENERATOR_TABLE[:-1]:  # skip the zero module
        parts = frozenset(parts_tuple)
        N5 = generated_meet_with_top5(parts)
        dec_N5 = decompose_subspace(N5, 5) if N5.dim else {}
        gd_t1 = next(e.gd for e in classified_gkdim5() if e.parts == parts)
        strata = []
        if N5 != top5:
            lams = sorted(dec_top5, key=lambda l: l.parts)
            ranges = [range(dec_N5.get(l, 0), dec_top5[l] + 1) for l in lams]
            for choice in itertools.product(*ranges):
                dec = dict(zip(lams, choice))
                dim5 = sum(d * hook_dimension(l) for l, d in dec.items())
                if dim5 == top5.dim:
                    continue  # not proper
                singleton = all(
                    dec[l] in (dec_N5.get(l, 0), dec_top5[l]) for l in lams
                )
                strata.append(
                    PairStratum(
                        parts,
                        tuple((l, dec[l]) for l in lams if dec[l]),
                        dim5,
                        singleton,
                    )
                )
        rows.append(
            PairTableRow(
                parts,
                gd_t1,
                tuple(sorted(dec_N5.items(), key=lambda kv: kv[0].parts)),
                tuple(strata),
            )
        )
    return tuple(rows)


def _extend_inside(base: Subspace, full: Subspace, extra: int, seed: int | None) -> Subspace:
    """A subspace between base and full with the given extra dimension."""
    if extra == 0:
        return base
    rows = [list(r) for r in base.mat.tolist()]
    amb = full.ambient_dim
    if seed is None:
        for cand in full.mat.tolist():
            trial = linalg.row_space(rows + [list(cand)], amb)
            if trial.dim > len(rows):
                rows.append(list(cand))
                if trial.dim - base.dim >= extra:
                    return trial
        raise ValueError("could not extend inside the slice")
    rng = random.Random(f"extend|{seed}|{extra}")
    fmat = np.asarray(full.mat)
    while True:
        extra_rows = [
            list(np.array([rng.randint(-4, 4) for _ in range(full.dim)]) @ fmat)
            for _ in range(extra)
        ]
        trial = linalg.row_space(rows + [[int(x) for x in r] for r in extra_rows], amb)
        if trial.dim == base.dim + extra:
            return trial


def realize_pair(stratum: PairStratum, seed: int | None = None) -> AdmissibleSequence:
    """An explicit admissible pair in the stratum (seeded when a family)."""
    top5 = truncation_kernel(5, 5)
    N5 = generated_meet_with_top5(stratum.m4_parts)
    dec_N5 = decompose_subspace(N5, 5) if N5.dim else {}
    M5 = N5
    for lam, d in stratum.m5_multiplicities:
        have = dec_N5.get(lam, 0)
        if d == have:
            continue
        full_slice = multiplicity_space(top5, lam, 5)
        base_slice = multiplicity_space(N5, lam, 5) if N5.dim else Subspace.zero(120)
        chosen = _extend_inside(base_slice, full_slice, d - have, seed)
        M5 = linalg.subspace_sum(M5, submodule_from_multiplicity_subspace(chosen, 5))
    if M5.dim != stratum.m5_dim:
        raise ValueError("realized module has wrong dimension")
    seq = AdmissibleSequence(((4, top4_submodule(stratum.m4_parts)), (5, M5)))
    ok, why = admissible_check(seq)
    if not ok:
        raise ValueError(f"realized pair is not admissible: {why}")
    return seq


def pair_gd(seq: AdmissibleSequence) -> int:
    return gen_degree(gt_general(seq))


# ---------------------------------------------------------------------------
# GK-dimension 6 series (grade 5)


@lru_cache(maxsize=None)
def classified_gkdim6_series() -> tuple[GammaSeries, ...]:
    """The complete set of codimension series with quotient GK-dimension 6."""
    series: set[GammaSeries] = set()
    # type I over proper submodules of the arity-5 top component
    from .reps import enumerate_submodules

    enum = enumerate_submodules(truncation_kernel(5, 5), 5)
    for d in enum.achievable_dims(proper=True):
        series.add(normalized((1, 0, 1, 2, 9, 44 - d)))
    # type II over admissible pair strata
    for row in five_admissible_pair_table():
        u4 = 9 - top4_submodule(row.m4_parts).dim
        for stratum in row.strata:
            series.add(normalized((1, 0, 1, 2, u4, 44 - stratum.m5_dim)))
    return tuple(sorted(series, key=lambda s: s.coefficients))


def gkdim6_series_breakdown() -> dict[str, list[int]]:
    """Leading-coefficient sets per branch of the grade-5 classification."""
    from .reps import enumerate_submodules

    enum = enumerate_submodules(truncation_kernel(5, 5), 5)
    u_set = sorted(44 - d for d in enum.achievable_dims(proper=True))
    by_u4: dict[int, set[int]] = {}
    for row in five_admissible_pair_table():
        u4 = 9 - top4_submodule(row.m4_parts).dim
        for stratum in row.strata:
            by_u4.setdefault(u4, set()).add(44 - stratum.m5_dim)
    return {
        "type1_u": u_set,
        "x_at_u4_8": sorted(by_u4.get(8, ())),
        "y_at_u4_7": sorted(by_u4.get(7, ())),
        "z_with_top_4": sorted(
            u4 for u4, tops in by_u4.items() if u4 not in (7, 8) and 4 in tops
        ),
    }


# ---------------------------------------------------------------------------
# convenience views used by the verify suites


def truncation_ideal_window(k: int) -> IdealWindow:
    return truncation_window(k)


def t3_window(top: int | None = None) -> IdealWindow:
    pres = IdealPresentation.from_element(tau_n(3), label="T(3)")
    return ideal_window(pres, window() if top is None else top)


def t3_plus_u5_window() -> IdealWindow:
    return window_sum(t3_window(), truncation_window(5))
