"""Deterministic exact rational linear algebra on spaces up to dimension 7!.

Subspaces are stored as canonical reduced row echelon bases, so equality of
subspaces is equality of representations.  Internally rows are kept as
primitive integer vectors (each row is its rational RREF row scaled by the
lcm of denominators), which keeps memory flat and makes every verification
step an integer computation.

Two computation paths exist:

* an exact fraction-free (Bareiss) elimination, used for small problems and
  as the unconditional fallback;
* a modular fast path: row reduction mod one or more word-sized primes with
  rational reconstruction.  Any result it produces is certified before being
  returned: candidate bases are re-verified over the integers (membership
  products must vanish exactly) and the dimension is pinned by the mod-p
  rank bound.  On any failure more primes are added, and ultimately the
  exact elimination takes over.

The modular primes are chosen so that a full-length dot product of reduced
residues stays below 2**53; matrix products can then run through float64
BLAS while remaining exact integer arithmetic.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .symmetric import lcm

Rational = Fraction

_MAX_PRIMES = 8
_EXACT_CELL_LIMIT = 20_000  # rows*cols below which Bareiss is used directly


class LinalgError(ValueError):
    pass


class NotInvariantError(LinalgError):
    """A map claimed to preserve a subspace sent a basis vector outside it."""


# ---------------------------------------------------------------------------
# primes


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


from functools import lru_cache


@lru_cache(maxsize=64)
def _primes_for(ambient: int, count: int) -> tuple[int, ...]:
    """Descending primes p with p*p*ambient < 2**53 (float64-exact matmul)."""
    limit = math.isqrt((2**53 - 1) // max(ambient, 2))
    out: list[int] = []
    n = limit
    while len(out) < count and n > 2:
        if _is_prime(n):
            out.append(n)
        n -= 1
    return tuple(out)


# ---------------------------------------------------------------------------
# integer row utilities


def _as_int_rows(rows: Iterable[Sequence], width: int | None = None) -> list[list[int]]:
    """Scale rational rows to primitive integer rows (zero rows dropped)."""
    out = []
    for row in rows:
        row = list(row)
        if width is not None and len(row) != width:
            raise LinalgError(f"row width {len(row)} != ambient {width}")
        if all(type(x) is int for x in row):
            ints = row
        else:
            den = lcm(Fraction(x).denominator for x in row)
            ints = [int(Fraction(x) * den) for x in row]
        g = math.gcd(*ints) if any(ints) else 0
        if g == 0:
            continue
        out.append([x // g for x in ints])
    return out


def _np_int_matrix(rows: list[list[int]], width: int) -> np.ndarray:
    """int64 matrix when entries fit, else object dtype."""
    if not rows:
        return np.zeros((0, width), dtype=np.int64)
    big = max(max(abs(x) for x in row) for row in rows)
    dtype = np.int64 if big < 2**62 else object
    return np.array(rows, dtype=dtype)


def _exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Integer matrix product, falling back to python ints on overflow risk."""
    if a.size == 0 or b.size == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if a.dtype == np.int64 and b.dtype == np.int64:
        ma = int(np.abs(a).max(initial=0))
        mb = int(np.abs(b).max(initial=0))
        if ma and mb and ma * mb * a.shape[1] < 2**62:
            return a @ b
    return np.array(
        [[sum(int(x) * int(y) for x, y in zip(ra, cb)) for cb in zip(*b.tolist())] for ra in a.tolist()],
        dtype=object,
    )


# ---------------------------------------------------------------------------
# exact fraction-free elimination (Bareiss forward pass + exact back pass)


def _bareiss_rref(introws: list[list[int]], width: int) -> tuple[list[list[int]], list[int]]:
    """Canonical RREF of the row space, as primitive integer rows + pivots."""
    m = [row[:] for row in introws]
    pivots: list[int] = []
    rpos = 0
    prev = 1
    for col in range(width):
        pr = next((r for r in range(rpos, len(m)) if m[r][col]), None)
        if pr is None:
            continue
        m[rpos], m[pr] = m[pr], m[rpos]
        pv = m[rpos][col]
        for r in range(rpos + 1, len(m)):
            f = m[r][col]
            m[r] = [(pv * m[r][c] - f * m[rpos][c]) // prev for c in range(width)]
        prev = pv
        pivots.append(col)
        rpos += 1
    m = m[:rpos]
    # exact back elimination, keeping rows integral via cross-multiplication
    for i in range(rpos - 1, -1, -1):
        ci = pivots[i]
        for j in range(i):
            f = m[j][ci]
            if f:
                pj = m[i][ci]
                m[j] = [x * pj - f * y for x, y in zip(m[j], m[i])]
                g = math.gcd(*m[j])
                if g > 1:
                    m[j] = [x // g for x in m[j]]
    out = []
    for i, row in enumerate(m):
        g = math.gcd(*row)
        row = [x // g for x in row]
        if row[pivots[i]] < 0:
            row = [-x for x in row]
        out.append(row)
    return out, pivots


# ---------------------------------------------------------------------------
# modular engine


class _PrimeSpan:
    """Reduced row echelon accumulator over F_p with float64 BLAS products."""

    def __init__(self, ambient: int, p: int):
        self.amb = ambient
        self.p = p
        self.rows = np.zeros((0, ambient))
        self.pivs: list[int] = []  # insertion order

    def _reduce_block(self, V: np.ndarray) -> np.ndarray:
        if self.pivs:
            C = V[:, self.pivs]
            if C.any():
                V = np.mod(V - np.mod(C @ self.rows, self.p), self.p)
        return V

    def add_batch(self, V: np.ndarray) -> np.ndarray:
        """Insert what is new in V; returns the newly inserted reduced rows."""
        p = self.p
        V = self._reduce_block(np.mod(V, p))
        V = V[V.any(axis=1)]
        if V.shape[0] == 0:
            return np.zeros((0, self.amb))
        capacity = min(V.shape[0], self.amb - len(self.pivs))
        buf = np.zeros((capacity, self.amb))
        k = 0
        newpivs: list[int] = []
        for v in V:
            if k:
                c = v[newpivs]
                if c.any():
                    v = np.mod(v - np.mod(c @ buf[:k], p), p)
            nz = np.nonzero(v)[0]
            if nz.size == 0:
                continue
            p0 = int(nz[0])
            v = np.mod(v * float(pow(int(v[p0]), p - 2, p)), p)
            if k:
                col = buf[:k, p0].copy()
                if col.any():
                    buf[:k] = np.mod(buf[:k] - np.outer(col, v), p)
            buf[k] = v
            newpivs.append(p0)
            k += 1
            if len(self.pivs) + k >= self.amb:
                break
        if k == 0:
            return np.zeros((0, self.amb))
        block = buf[:k]
        if self.pivs:
            cols = self.rows[:, newpivs]
            if cols.any():
                self.rows = np.mod(self.rows - np.mod(cols @ block, p), p)
        self.rows = np.vstack([self.rows, block])
        self.pivs.extend(newpivs)
        return block

    def canonical(self) -> tuple[np.ndarray, tuple[int, ...]]:
        order = np.argsort(self.pivs, kind="stable")
        return self.rows[order], tuple(sorted(self.pivs))


def _modp_span(
    intmat: np.ndarray, p: int, maps: Sequence[np.ndarray] = ()
) -> tuple[np.ndarray, tuple[int, ...]]:
    """RREF mod p of the row space, optionally closed under column maps."""
    amb = intmat.shape[1]
    span = _PrimeSpan(amb, p)
    if intmat.dtype == object:
        first = np.array([[int(x) % p for x in row] for row in intmat.tolist()], dtype=np.float64)
    else:
        first = np.mod(intmat.astype(np.float64), p)
    pend = [first]
    while pend:
        V = np.vstack(pend)
        pend = []
        fresh = span.add_batch(V)
        if len(span.pivs) >= amb:
            break
        if fresh.shape[0] and maps:
            pend = [fresh[:, m] for m in maps]
    return span.canonical()


def _rational_reconstruct(a: int, m: int) -> tuple[int, int] | None:
    """num/den with |num|, den <= sqrt(m/2) congruent to a mod m, or None."""
    bound = math.isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    return (r1, s1) if s1 > 0 else (-r1, -s1)


def _reconstruct_rows(rows_mod: list[list[int]], modulus: int) -> list[list[int]] | None:
    """Per-row rational reconstruction to primitive integer rows."""
    out = []
    for row in rows_mod:
        den = 1
        nums = [0] * len(row)
        for j, a in enumerate(row):
            if a == 0:
                continue
            x = a * den % modulus
            rec = _rational_reconstruct(x, modulus)
            if rec is None:
                return None
            n_j, q = rec
            if q == 1:
                nums[j] = n_j
            else:
                nums = [v * q for v in nums]
                nums[j] = n_j
                den *= q
        if any(nums):
            g = math.gcd(*nums)
            nums = [n // g for n in nums]
        out.append(nums)
    return out


def _crt_pair(a: int, m: int, b: int, p: int) -> int:
    # assumes gcd(m, p) == 1
    return (a + (b - a) * pow(m, -1, p) % p * m) % (m * p)


class _ModularResult:
    __slots__ = ("int_rows", "pivots", "rank")

    def __init__(self, int_rows, pivots, rank):
        self.int_rows = int_rows
        self.pivots = pivots
        self.rank = rank


def _combine_candidates(
    results: list[tuple[int, np.ndarray, tuple[int, ...]]],
    ambient: int,
    prefer_small_rank: bool,
) -> "_ModularResult | None":
    """CRT-combine the per-prime RREFs agreeing on the preferred pivot set."""
    ranks = [len(pv) for _, _, pv in results]
    best = min(ranks) if prefer_small_rank else max(ranks)
    group = [(p, r, pv) for p, r, pv in results if len(pv) == best]
    pivots = group[0][2]
    group = [g for g in group if g[2] == pivots]
    modulus = 1
    combined = [[0] * ambient for _ in range(best)]
    for p, rows_p, _ in group:
        ints = rows_p.astype(np.int64).tolist()
        for i in range(best):
            ci = combined[i]
            ri = ints[i]
            if modulus == 1:
                combined[i] = [x % p for x in ri]
            else:
                combined[i] = [_crt_pair(a, modulus, b, p) for a, b in zip(ci, ri)]
        modulus *= p
    rec = _reconstruct_rows(combined, modulus)
    if rec is None:
        return None
    return _ModularResult(rec, pivots, best)


def _modular_candidates(
    per_prime: Callable[[int], tuple[np.ndarray, tuple[int, ...]]],
    ambient: int,
    prefer_small_rank: bool = False,
):
    """Yield candidate exact RREFs over an escalating prime set."""
    primes = _primes_for(ambient, _MAX_PRIMES)
    results: list[tuple[int, np.ndarray, tuple[int, ...]]] = []
    for p in primes:
        rows_p, pivs_p = per_prime(p)
        results.append((p, rows_p, pivs_p))
        cand = _combine_candidates(results, ambient, prefer_small_rank)
        if cand is not None:
            yield cand




# ---------------------------------------------------------------------------
# Subspace


class Subspace:
    """A linear subspace of Q^ambient in canonical reduced row echelon form.

    ``int_rows`` holds each RREF row scaled to a primitive integer vector
    with positive pivot entry; the rational basis row i is
    ``int_rows[i] / int_rows[i][pivots[i]]``.
    """

    __slots__ = ("ambient_dim", "mat", "pivots", "_hash", "_ann")

    def __init__(self, ambient_dim: int, int_rows: list[list[int]], pivots: Sequence[int]):
        pivots = tuple(pivots)
        if len(int_rows) != len(pivots):
            raise LinalgError("pivot/row count mismatch")
        if any(pivots[i] >= pivots[i + 1] for i in range(len(pivots) - 1)):
            raise LinalgError("pivots not strictly increasing")
        mat = _np_int_matrix(int_rows, ambient_dim)
        if pivots:
            sub = mat[:, list(pivots)]
            diag = np.diagonal(np.asarray(sub, dtype=object) if sub.dtype == object else sub)
            offdiag_zero = not np.asarray(sub - np.diag(diag)).any()
            if not offdiag_zero or any(int(d) <= 0 for d in diag):
                raise LinalgError("matrix not in reduced echelon form")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "pivots", pivots)
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_ann", None)

    # -- construction helpers

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, [], ())

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        rows = np.eye(ambient_dim, dtype=np.int64).tolist()
        return Subspace(ambient_dim, rows, tuple(range(ambient_dim)))

    # -- basic queries

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def is_zero(self) -> bool:
        return self.dim == 0

    @property
    def basis(self) -> tuple[tuple[Fraction, ...], ...]:
        """The rational RREF rows (unit leading coefficients)."""
        out = []
        for i in range(self.dim):
            d = int(self.mat[i][self.pivots[i]])
            out.append(tuple(Fraction(int(x), d) for x in self.mat[i]))
        return tuple(out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and self.mat.shape == other.mat.shape
            and bool((np.asarray(self.mat == other.mat)).all())
        )

    def __hash__(self) -> int:
        if self._hash is None:
            payload = (self.ambient_dim, self.pivots, tuple(tuple(int(x) for x in r) for r in self.mat.tolist()))
            object.__setattr__(self, "_hash", hash(payload))
        return self._hash

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    # -- annihilator (the structural membership certificate)

    def annihilator_matrix(self) -> np.ndarray:
        """Integer rows spanning the orthogonal complement of the row space.

        Built symbolically from the RREF structure, so membership testing
        ``K @ v == 0`` is exact whatever arithmetic produced the basis.
        """
        if self._ann is not None:
            return self._ann
        free = [j for j in range(self.ambient_dim) if j not in set(self.pivots)]
        ints = self.mat.tolist()
        dens = [int(ints[i][self.pivots[i]]) for i in range(self.dim)]
        rows = []
        for j in free:
            L = lcm(dens[i] for i in range(self.dim) if ints[i][j]) if self.dim else 1
            row = [0] * self.ambient_dim
            row[j] = L
            for i in range(self.dim):
                if ints[i][j]:
                    row[self.pivots[i]] = -ints[i][j] * (L // dens[i])
            g = math.gcd(*row)
            rows.append([x // g for x in row])
        K = _np_int_matrix(rows, self.ambient_dim)
        object.__setattr__(self, "_ann", K)
        return K

    # -- membership

    def contains_vector(self, vector: Sequence) -> bool:
        ints = _as_int_rows([vector], self.ambient_dim)
        if not ints:
            return True
        v = _np_int_matrix(ints, self.ambient_dim)
        return not np.asarray(_exact_matmul(self.annihilator_matrix(), v.T)).any()

    def contains_subspace(self, other: "Subspace") -> bool:
        if self.ambient_dim != other.ambient_dim:
            raise LinalgError("ambient mismatch")
        if other.dim == 0:
            return True
        prod = _exact_matmul(self.annihilator_matrix(), other.mat.T)
        return not np.asarray(prod).any()

    def contains(self, item) -> bool:
        """Exact membership of a vector or a whole subspace."""
        if isinstance(item, Subspace):
            return self.contains_subspace(item)
        return self.contains_vector(item)

    def coordinates(self, vector: Sequence) -> tuple[Fraction, ...]:
        """Coefficients of ``vector`` in the RREF basis (must be a member)."""
        vec = [Fraction(x) for x in vector]
        if not self.contains_vector(vec):
            raise LinalgError("vector not in subspace")
        return tuple(vec[p] for p in self.pivots)

    # -- serialization

    def to_json(self) -> str:
        return json.dumps(
            {
                "ambient": self.ambient_dim,
                "rows": [[_frac_str(x) for x in row] for row in self.basis],
            }
        )

    @staticmethod
    def from_json(text: str) -> "Subspace":
        data = json.loads(text)
        rows = [[_parse_frac(s) for s in row] for row in data["rows"]]
        space, _ = rref(rows, ambient_dim=data["ambient"])
        return space


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_frac(s: str) -> Fraction:
    return Fraction(s)


# ---------------------------------------------------------------------------
# public operations


def _certify_rowspace(intmat: np.ndarray, cand: Subspace, rank_lb: int) -> bool:
    """True iff rowspace(intmat) == cand, given rank(intmat) >= rank_lb mod p."""
    if cand.dim != rank_lb:
        return False
    if intmat.shape[0] and np.asarray(_exact_matmul(cand.annihilator_matrix(), intmat.T)).any():
        return False
    return True


def rref(matrix: Iterable[Sequence], ambient_dim: int | None = None) -> tuple[Subspace, int]:
    """Canonical RREF of the row space; returns (subspace, rank)."""
    rows = [list(r) for r in matrix]
    if ambient_dim is None:
        if not rows:
            raise LinalgError("cannot infer ambient dimension of empty input")
        ambient_dim = len(rows[0])
    introws = _as_int_rows(rows, ambient_dim)
    space = _row_space_of_int_rows(introws, ambient_dim)
    return space, space.dim


def _row_space_of_int_rows(introws: list[list[int]], ambient: int) -> Subspace:
    if not introws:
        return Subspace.zero(ambient)
    if len(introws) * ambient <= _EXACT_CELL_LIMIT:
        rows, pivots = _bareiss_rref(introws, ambient)
        return Subspace(ambient, rows, pivots)
    intmat = _np_int_matrix(introws, ambient)
    for cand in _modular_candidates(lambda p: _modp_span(intmat, p), ambient):
        space = _try_subspace(ambient, cand)
        if space is not None and _certify_rowspace(intmat, space, cand.rank):
            return space
    rows, pivots = _bareiss_rref(introws, ambient)
    return Subspace(ambient, rows, pivots)


def _try_subspace(ambient: int, cand: _ModularResult) -> Subspace | None:
    try:
        return Subspace(ambient, cand.int_rows, cand.pivots)
    except LinalgError:
        return None


def row_space(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    return rref(vectors, ambient_dim)[0]


def _natural_kernel_rows(rref_rows: list[list[int]], pivots: Sequence[int], width: int) -> list[list[int]]:
    """Kernel basis of an RREF matrix in the standard free-column form."""
    pivset = set(pivots)
    dens = [row[p] for row, p in zip(rref_rows, pivots)]
    out = []
    for j in range(width):
        if j in pivset:
            continue
        L = lcm(dens[i] for i in range(len(rref_rows)) if rref_rows[i][j]) if rref_rows else 1
        vec = [0] * width
        vec[j] = L
        for i, p in enumerate(pivots):
            if rref_rows[i][j]:
                vec[p] = -rref_rows[i][j] * (L // dens[i])
        g = math.gcd(*vec)
        out.append([x // g for x in vec])
    return out


def kernel(matrix: Iterable[Sequence], ambient_dim: int | None = None) -> Subspace:
    """Null space {x : M x = 0} of the matrix, as a canonical subspace."""
    rows = [list(r) for r in matrix]
    if ambient_dim is None:
        if not rows:
            raise LinalgError("cannot infer ambient dimension of empty input")
        ambient_dim = len(rows[0])
    introws = _as_int_rows(rows, ambient_dim)
    if not introws:
        return Subspace.full(ambient_dim)
    if len(introws) * ambient_dim <= _EXACT_CELL_LIMIT:
        rrows, pivots = _bareiss_rref(introws, ambient_dim)
        nat = _natural_kernel_rows(rrows, pivots, ambient_dim)
        return _row_space_of_int_rows(nat, ambient_dim)
    intmat = _np_int_matrix(introws, ambient_dim)

    def per_prime(p: int) -> tuple[np.ndarray, tuple[int, ...]]:
        rows_p, pivs_p = _modp_span(intmat, p)
        nat = _natural_kernel_rows(
            [[int(x) for x in r] for r in rows_p.tolist()], list(pivs_p), ambient_dim
        )
        nat_p = np.mod(_np_int_matrix(nat, ambient_dim).astype(np.float64), p)
        span = _PrimeSpan(ambient_dim, p)
        span.add_batch(nat_p)
        return span.canonical()

    # a kernel computed at a bad prime is too large, so prefer small rank
    for cand in _modular_candidates(per_prime, ambient_dim, prefer_small_rank=True):
        space = _try_subspace(ambient_dim, cand)
        if space is not None and not np.asarray(_exact_matmul(intmat, space.mat.T)).any():
            return space
    rrows, pivots = _bareiss_rref(introws, ambient_dim)
    nat = _natural_kernel_rows(rrows, pivots, ambient_dim)
    return _row_space_of_int_rows(nat, ambient_dim)


def span_closure(
    vectors: Iterable[Sequence],
    column_maps: Sequence[Sequence[int]],
    ambient_dim: int,
) -> Subspace:
    """Least subspace containing the vectors and closed under the maps.

    Each column map sends a vector v to v[map]; closure is certified exactly:
    the candidate annihilator must kill every input vector and every mapped
    basis row, and the modular rank bounds the dimension from below.
    """
    introws = _as_int_rows(vectors, ambient_dim)
    maps = [np.asarray(m, dtype=np.int64) for m in column_maps]
    if not introws:
        return Subspace.zero(ambient_dim)
    intmat = _np_int_matrix(introws, ambient_dim)
    for cand in _modular_candidates(lambda p: _modp_span(intmat, p, maps), ambient_dim):
        space = _try_subspace(ambient_dim, cand)
        if space is not None and _certify_closure(intmat, space, maps, cand.rank):
            return space
    return _exact_closure(introws, maps, ambient_dim)


def _certify_closure(
    intmat: np.ndarray, cand: Subspace, maps: Sequence[np.ndarray], rank_lb: int
) -> bool:
    if cand.dim != rank_lb:
        return False
    K = cand.annihilator_matrix()
    if np.asarray(_exact_matmul(K, intmat.T)).any():
        return False
    for m in maps:
        mapped = cand.mat[:, m]
        if np.asarray(_exact_matmul(K, mapped.T)).any():
            return False
    return True


def _exact_closure(introws: list[list[int]], maps: Sequence[np.ndarray], ambient: int) -> Subspace:
    """Unconditional closure by exact elimination (slow; fallback path)."""
    current = _row_space_of_int_rows(introws, ambient)
    while True:
        stacked = [list(r) for r in current.mat.tolist()]
        for m in maps:
            order = np.asarray(m)
            for row in current.mat.tolist():
                stacked.append([row[j] for j in order])
        bigger = _row_space_of_int_rows(_as_int_rows(stacked, ambient), ambient)
        if bigger.dim == current.dim:
            return bigger
        current = bigger


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise LinalgError("ambient mismatch")
    rows = [list(r) for r in a.mat.tolist()] + [list(r) for r in b.mat.tolist()]
    return _row_space_of_int_rows(_as_int_rows(rows, a.ambient_dim), a.ambient_dim)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Largest subspace inside both, via stacked annihilators."""
    if a.ambient_dim != b.ambient_dim:
        raise LinalgError("ambient mismatch")
    if a.dim == a.ambient_dim:
        return b
    if b.dim == b.ambient_dim:
        return a
    Ka = a.annihilator_matrix().tolist()
    Kb = b.annihilator_matrix().tolist()
    return kernel([list(r) for r in Ka] + [list(r) for r in Kb], a.ambient_dim)


def trace_on_invariant_subspace(space: Subspace, operator: Sequence[Sequence]) -> Fraction:
    """Trace of the operator restricted to the subspace.

    The operator acts on row vectors, v -> v @ L.  Raises NotInvariantError
    when some basis image leaves the subspace.
    """
    amb = space.ambient_dim
    L = [list(r) for r in operator]
    if len(L) != amb or any(len(r) != amb for r in L):
        raise LinalgError("operator shape mismatch")
    den = lcm(Fraction(x).denominator for r in L for x in r)
    Lint = _np_int_matrix([[int(Fraction(x) * den) for x in r] for r in L], amb)
    if space.dim == 0:
        return Fraction(0)
    U = _exact_matmul(space.mat, Lint)
    if space.dim < amb:
        if np.asarray(_exact_matmul(space.annihilator_matrix(), U.T)).any():
            raise NotInvariantError("operator does not preserve the subspace")
    total = Fraction(0)
    for i, p in enumerate(space.pivots):
        total += Fraction(int(U[i][p]), int(space.mat[i][p]) * den)
    return total
