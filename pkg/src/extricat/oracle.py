"""Linear-algebra oracle: quiver representations and complexes.

Everything combinatorial elsewhere in the package is validated against this
module.  It knows nothing about meshes, markers, or cotorsion pairs — only
about finite line quivers with monomial relations, their representations,
bounded complexes of representations, and chain maps modulo homotopy.

Computations are exact (``fractions.Fraction`` throughout) and deterministic:
bases come out of first-pivot elimination, so repeated runs produce identical
objects.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from ._linalg import Mat, SubspaceReducer, minimal_polynomial

Q = Fraction

Interval = tuple[int, int]


class OracleError(RuntimeError):
    """An internal invariant of the oracle failed."""


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinePresentation:
    """Path algebra of the line quiver ``lo → lo+1 → … → hi`` modulo monomial
    relations.

    A relation ``(s, l)`` kills the length-``l`` path starting at vertex
    ``s``.  Arrows point from ``v`` to ``v+1``.
    """

    lo: int
    hi: int
    relations: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError("empty vertex range")
        for s, l in self.relations:
            if l < 2:
                raise ValueError("relations must have length >= 2")
            if s < self.lo or s + l > self.hi:
                raise ValueError(f"relation ({s},{l}) does not fit in [{self.lo},{self.hi}]")
        object.__setattr__(self, "relations", tuple(sorted(set(self.relations))))

    # -- vertices and paths -------------------------------------------

    @property
    def vertices(self) -> range:
        return range(self.lo, self.hi + 1)

    def vindex(self, v: int) -> int:
        if not self.lo <= v <= self.hi:
            raise ValueError(f"vertex {v} outside [{self.lo},{self.hi}]")
        return v - self.lo

    def path_is_zero(self, a: int, b: int) -> bool:
        """Is the path ``a → b`` zero in the algebra?  (Requires a <= b.)"""
        if a > b:
            raise ValueError("path must go forward")
        return any(a <= s and s + l <= b for s, l in self.relations)

    def reach(self, v: int) -> int:
        """Largest ``b`` with the path ``v → b`` nonzero (top of P_v)."""
        best = self.hi
        for s, l in self.relations:
            if s >= v:
                best = min(best, s + l - 1)
        return best

    def coreach(self, v: int) -> int:
        """Smallest ``a`` with the path ``a → v`` nonzero (bottom of I_v)."""
        best = self.lo
        for s, l in self.relations:
            if s + l <= v:
                best = max(best, s + 1)
        return best

    def interval_is_valid(self, a: int, b: int) -> bool:
        """Does ``[a, b]`` support an interval module (no internal relation)?"""
        return self.lo <= a <= b <= self.hi and not self.path_is_zero(a, b)

    # -- standard constructions ---------------------------------------

    @staticmethod
    def a_n(n: int) -> "LinePresentation":
        """Hereditary line algebra on vertices 1..n (no relations)."""
        return LinePresentation(1, n, ())

    @staticmethod
    def pattern_4k(lo: int, hi: int) -> "LinePresentation":
        """Line algebra with the period-4 monomial pattern: the length-3 path
        from every vertex not divisible by 4 and the length-2 path from every
        vertex divisible by 4 vanish (as far as they fit in the window)."""
        rels = []
        for s in range(lo, hi + 1):
            l = 2 if s % 4 == 0 else 3
            if s + l <= hi:
                rels.append((s, l))
        return LinePresentation(lo, hi, tuple(rels))

    def opposite(self) -> "LinePresentation":
        """Opposite algebra, presented on the mirrored line ``-hi … -lo``."""
        rels = tuple(sorted((-(s + l), l) for s, l in self.relations))
        return LinePresentation(-self.hi, -self.lo, rels)


# ---------------------------------------------------------------------------
# representations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rep:
    """Finite-dimensional representation of a :class:`LinePresentation`.

    ``dims[i]`` is the dimension at vertex ``lo + i``; ``maps[i]`` is the
    matrix of the arrow ``lo+i → lo+i+1`` (rows = target dim).  When the
    representation was built as an explicit direct sum of interval modules,
    ``summands`` records them in basis order; otherwise it is ``None``.
    """

    alg: LinePresentation
    dims: tuple[int, ...]
    maps: tuple[Mat, ...]
    summands: tuple[Interval, ...] | None = None

    def __post_init__(self) -> None:
        nv = self.alg.hi - self.alg.lo + 1
        if len(self.dims) != nv or len(self.maps) != nv - 1:
            raise ValueError("dims/maps length mismatch")
        for i, m in enumerate(self.maps):
            if (m.rows, m.cols) != (self.dims[i + 1], self.dims[i]):
                raise ValueError(f"arrow matrix {i} has wrong shape")

    def dim_at(self, v: int) -> int:
        return self.dims[self.alg.vindex(v)]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_map(self, a: int, b: int) -> Mat:
        """Matrix of the composite path ``a → b`` acting on this module."""
        ia, ib = self.alg.vindex(a), self.alg.vindex(b)
        if ia > ib:
            raise ValueError("path must go forward")
        m = Mat.identity(self.dims[ia])
        for i in range(ia, ib):
            m = self.maps[i] @ m
        return m

    def check_relations(self) -> bool:
        return all(self.path_map(s, s + l).is_zero() for s, l in self.alg.relations)

    def support(self) -> tuple[int, ...]:
        return tuple(self.alg.lo + i for i, d in enumerate(self.dims) if d > 0)


def zero_rep(alg: LinePresentation) -> Rep:
    nv = alg.hi - alg.lo + 1
    dims = (0,) * nv
    maps = tuple(Mat.zeros(0, 0) for _ in range(nv - 1))
    return Rep(alg, dims, maps, summands=())


def interval_sum_rep(alg: LinePresentation, intervals: Sequence[Interval]) -> Rep:
    """Direct sum of interval modules, with canonical basis order.

    At each vertex, basis vectors are indexed by the intervals containing it,
    in the order the intervals were given.
    """
    for a, b in intervals:
        if not alg.interval_is_valid(a, b):
            raise ValueError(f"interval [{a},{b}] is not a module over this algebra")
    nv = alg.hi - alg.lo + 1
    dims = [0] * nv
    carriers: list[list[int]] = [[] for _ in range(nv)]  # summand indices per vertex
    for k, (a, b) in enumerate(intervals):
        for v in range(a, b + 1):
            i = alg.vindex(v)
            carriers[i].append(k)
            dims[i] += 1
    maps = []
    for i in range(nv - 1):
        m = [[Q(0)] * dims[i] for _ in range(dims[i + 1])]
        for col, k in enumerate(carriers[i]):
            if k in carriers[i + 1]:
                m[carriers[i + 1].index(k)][col] = Q(1)
        maps.append(Mat.from_rows(m, cols=dims[i]))
    return Rep(alg, tuple(dims), tuple(maps), summands=tuple(intervals))


def interval_rep(alg: LinePresentation, a: int, b: int) -> Rep:
    return interval_sum_rep(alg, [(a, b)])


def direct_sum_rep(reps: Sequence[Rep]) -> Rep:
    if not reps:
        raise ValueError("need the algebra; use zero_rep for the empty sum")
    alg = reps[0].alg
    if any(r.alg != alg for r in reps):
        raise ValueError("mixed algebras")
    nv = alg.hi - alg.lo + 1
    dims = tuple(sum(r.dims[i] for r in reps) for i in range(nv))
    maps = tuple(Mat.block_diag([r.maps[i] for r in reps]) for i in range(nv - 1))
    summands: tuple[Interval, ...] | None
    if all(r.summands is not None for r in reps):
        summands = tuple(s for r in reps for s in r.summands)  # type: ignore[union-attr]
    else:
        summands = None
    return Rep(alg, dims, maps, summands=summands)


# ---------------------------------------------------------------------------
# representation morphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RepMor:
    src: Rep
    dst: Rep
    mats: tuple[Mat, ...]

    def __post_init__(self) -> None:
        nv = len(self.src.dims)
        if len(self.mats) != nv:
            raise ValueError("component count mismatch")
        for i, m in enumerate(self.mats):
            if (m.rows, m.cols) != (self.dst.dims[i], self.src.dims[i]):
                raise ValueError(f"component {i} has wrong shape")

    def is_valid(self) -> bool:
        """Check the intertwining condition against all arrows."""
        for i in range(len(self.mats) - 1):
            if self.dst.maps[i] @ self.mats[i] != self.mats[i + 1] @ self.src.maps[i]:
                return False
        return True

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats)

    def is_mono(self) -> bool:
        return all(m.rank() == m.cols for m in self.mats)

    def is_epi(self) -> bool:
        return all(m.rank() == m.rows for m in self.mats)

    def is_iso(self) -> bool:
        return all(m.rows == m.cols and m.rank() == m.rows for m in self.mats)

    def compose(self, first: "RepMor") -> "RepMor":
        """Return ``self ∘ first`` (first applied first)."""
        if first.dst.dims != self.src.dims:
            raise ValueError("composition mismatch")
        return RepMor(first.src, self.dst, tuple(a @ b for a, b in zip(self.mats, first.mats)))

    def __add__(self, other: "RepMor") -> "RepMor":
        return RepMor(self.src, self.dst, tuple(a + b for a, b in zip(self.mats, other.mats)))

    def __sub__(self, other: "RepMor") -> "RepMor":
        return RepMor(self.src, self.dst, tuple(a - b for a, b in zip(self.mats, other.mats)))

    def scale(self, c) -> "RepMor":
        return RepMor(self.src, self.dst, tuple(m.scale(c) for m in self.mats))

    def flatten(self) -> tuple[Fraction, ...]:
        return tuple(x for m in self.mats for x in m.flatten())


def zero_mor(src: Rep, dst: Rep) -> RepMor:
    return RepMor(src, dst, tuple(Mat.zeros(d, s) for d, s in zip(dst.dims, src.dims)))


def identity_mor(rep: Rep) -> RepMor:
    return RepMor(rep, rep, tuple(Mat.identity(d) for d in rep.dims))


def mor_from_flat(src: Rep, dst: Rep, flat: Sequence) -> RepMor:
    mats = []
    pos = 0
    for d, s in zip(dst.dims, src.dims):
        n = d * s
        mats.append(Mat.unflatten(d, s, flat[pos : pos + n]))
        pos += n
    return RepMor(src, dst, tuple(mats))


def hom_basis(src: Rep, dst: Rep) -> list[RepMor]:
    """Deterministic basis of the space of representation morphisms."""
    nv = len(src.dims)
    sizes = [dst.dims[i] * src.dims[i] for i in range(nv)]
    total = sum(sizes)
    if total == 0:
        return []
    offsets = [0] * nv
    for i in range(1, nv):
        offsets[i] = offsets[i - 1] + sizes[i - 1]

    rows: list[list[Fraction]] = []
    # intertwining: dst.maps[i] @ f_i  ==  f_{i+1} @ src.maps[i]
    for i in range(nv - 1):
        a = dst.maps[i]  # dims: dst[i+1] x dst[i]
        b = src.maps[i]  # dims: src[i+1] x src[i]
        for r in range(dst.dims[i + 1]):
            for c in range(src.dims[i]):
                row = [Q(0)] * total
                # (a @ f_i)[r][c] = sum_k a[r][k] * f_i[k][c]
                for k in range(dst.dims[i]):
                    if a.data[r][k] != 0:
                        row[offsets[i] + k * src.dims[i] + c] += a.data[r][k]
                # (f_{i+1} @ b)[r][c] = sum_k f_{i+1}[r][k] * b[k][c]
                for k in range(src.dims[i + 1]):
                    if b.data[k][c] != 0:
                        row[offsets[i + 1] + r * src.dims[i + 1] + k] -= b.data[k][c]
                if any(x != 0 for x in row):
                    rows.append(row)
    if rows:
        ns = Mat.from_rows(rows, cols=total).nullspace()
    else:
        ns = Mat.identity(total)
    out = []
    for j in range(ns.cols):
        out.append(mor_from_flat(src, dst, ns.col_tuple(j)))
    return out


def hom_coords(basis: Sequence[RepMor], f: RepMor) -> tuple[Fraction, ...] | None:
    """Coordinates of ``f`` in a hom basis, or None if it is not in the span."""
    if not basis:
        return () if f.is_zero() else None
    A = Mat.hstack([Mat.column(b.flatten()) for b in basis])
    sol = A.solve(Mat.column(f.flatten()))
    if sol is None:
        return None
    return sol.col_tuple(0)


def kernel(f: RepMor) -> tuple[Rep, RepMor]:
    """Kernel subrepresentation with its inclusion."""
    alg = f.src.alg
    incl_mats = [m.nullspace() for m in f.mats]
    dims = tuple(m.cols for m in incl_mats)
    maps = []
    for i in range(len(dims) - 1):
        # solve incl_{i+1} @ k = src.maps[i] @ incl_i
        rhs = f.src.maps[i] @ incl_mats[i]
        k = incl_mats[i + 1].solve(rhs)
        if k is None:
            raise OracleError("kernel is not closed under arrows")
        maps.append(k)
    ker = Rep(alg, dims, tuple(maps))
    incl = RepMor(ker, f.src, tuple(incl_mats))
    if not incl.is_valid():
        raise OracleError("kernel inclusion fails to intertwine")
    return ker, incl


def cokernel(f: RepMor) -> tuple[Rep, RepMor]:
    """Cokernel representation with its projection."""
    alg = f.dst.alg
    reducers = []
    for i, m in enumerate(f.mats):
        span = [m.col_tuple(j) for j in range(m.cols)]
        reducers.append(SubspaceReducer(f.dst.dims[i], span))
    proj_mats = []
    for i, red in enumerate(reducers):
        d = f.dst.dims[i]
        rows = []
        for q in range(red.quotient_dim):
            rows.append([Q(0)] * d)
        # column j of proj = quotient coords of e_j
        for j in range(d):
            e = [Q(0)] * d
            e[j] = Q(1)
            qc = red.quotient_coords(e)
            for q in range(red.quotient_dim):
                rows[q][j] = qc[q]
        proj_mats.append(Mat.from_rows(rows, cols=d))
    dims = tuple(red.quotient_dim for red in reducers)
    maps = []
    for i in range(len(dims) - 1):
        # induced map on quotients via the canonical section (standard basis
        # vectors at free positions reduce to themselves)
        free = reducers[i].free_positions
        d = f.dst.dims[i]
        section = Mat.from_rows(
            [[Q(1) if j == free[k] else Q(0) for k in range(len(free))] for j in range(d)],
            cols=len(free),
        )
        maps.append(proj_mats[i + 1] @ f.dst.maps[i] @ section)
    cok = Rep(alg, dims, tuple(maps))
    proj = RepMor(f.dst, cok, tuple(proj_mats))
    if not proj.is_valid():
        raise OracleError("cokernel projection fails to intertwine")
    return cok, proj


# ---------------------------------------------------------------------------
# projective covers, resolutions, injective envelopes
# ---------------------------------------------------------------------------


def projective_interval(alg: LinePresentation, v: int) -> Interval:
    return (v, alg.reach(v))


def injective_interval(alg: LinePresentation, v: int) -> Interval:
    return (alg.coreach(v), v)


def _complement_section(image_cols: list[tuple[Fraction, ...]], dim: int) -> list[tuple[Fraction, ...]]:
    """Standard-basis vectors spanning a canonical complement of a subspace."""
    red = SubspaceReducer(dim, image_cols)
    out = []
    for f in red.free_positions:
        e = [Q(0)] * dim
        e[f] = Q(1)
        out.append(tuple(e))
    return out


def projective_cover(m: Rep) -> tuple[Rep, RepMor]:
    """Projective cover ``P → M`` (an epi from a sum of interval projectives
    inducing an iso on tops)."""
    alg = m.alg
    gens: list[tuple[int, tuple[Fraction, ...]]] = []  # (vertex, lifted top vector)
    for v in alg.vertices:
        i = alg.vindex(v)
        if m.dims[i] == 0:
            continue
        if v == alg.lo:
            incoming: list[tuple[Fraction, ...]] = []
        else:
            prev = m.maps[i - 1]
            incoming = [prev.col_tuple(j) for j in range(prev.cols)]
        for vec in _complement_section(incoming, m.dims[i]):
            gens.append((v, vec))
    intervals = [projective_interval(alg, v) for v, _ in gens]
    if not intervals:
        p = zero_rep(alg)
        return p, zero_mor(p, m)
    p = interval_sum_rep(alg, intervals)
    # build the map: generator k sits at vertex gens[k][0]; at vertex u in its
    # interval the basis vector goes to path(v→u) applied to the lifted vector
    mats = [ [ [Q(0)] * p.dims[i] for _ in range(m.dims[i]) ] for i in range(len(m.dims)) ]
    for k, (v, vec) in enumerate(gens):
        a, b = intervals[k]
        for u in range(a, b + 1):
            iu = alg.vindex(u)
            img = m.path_map(v, u) @ Mat.column(vec)
            # column index of summand k at vertex u
            col = [kk for kk, (aa, bb) in enumerate(p.summands) if aa <= u <= bb].index(k)  # type: ignore[union-attr]
            for r in range(m.dims[iu]):
                mats[iu][r][col] = img.data[r][0]
    f = RepMor(p, m, tuple(Mat.from_rows(rows, cols=p.dims[i]) for i, rows in enumerate(mats)))
    if not f.is_valid():
        raise OracleError("projective cover fails to intertwine")
    if not f.is_epi():
        raise OracleError("projective cover is not epi")
    return p, f


def injective_envelope(m: Rep) -> tuple[Rep, RepMor]:
    """Injective envelope ``M → I`` computed via the opposite algebra."""
    md = dual_rep(m)
    p, f = projective_cover(md)
    env, fd = dual_rep(p), dual_mor(f)
    if not fd.is_mono():
        raise OracleError("injective envelope is not mono")
    return env, fd


def dual_rep(m: Rep) -> Rep:
    alg = m.alg.opposite()
    dims = tuple(reversed(m.dims))
    maps = tuple(x.transpose() for x in reversed(m.maps))
    summands: tuple[Interval, ...] | None = None
    if m.summands is not None:
        summands = tuple((-b, -a) for a, b in m.summands)
    return Rep(alg, dims, maps, summands=summands)


def dual_mor(f: RepMor) -> RepMor:
    return RepMor(dual_rep(f.dst), dual_rep(f.src), tuple(x.transpose() for x in reversed(f.mats)))


# ---------------------------------------------------------------------------
# complexes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Complex:
    """Bounded cochain complex of representations.

    ``terms[i]`` lives in degree ``lo_deg + i``; ``diffs[i]`` is the
    differential out of it.  The last differential is a zero map to the zero
    representation and is stored implicitly.
    """

    alg: LinePresentation
    lo_deg: int
    terms: tuple[Rep, ...]
    diffs: tuple[RepMor, ...]

    def __post_init__(self) -> None:
        if len(self.terms) and len(self.diffs) != len(self.terms) - 1:
            raise ValueError("need exactly len(terms)-1 differentials")

    @property
    def hi_deg(self) -> int:
        return self.lo_deg + len(self.terms) - 1

    def degrees(self) -> range:
        return range(self.lo_deg, self.lo_deg + len(self.terms))

    def term(self, d: int) -> Rep:
        if self.lo_deg <= d <= self.hi_deg:
            return self.terms[d - self.lo_deg]
        return zero_rep(self.alg)

    def diff(self, d: int) -> RepMor:
        """Differential out of degree ``d``."""
        i = d - self.lo_deg
        if 0 <= i < len(self.diffs):
            return self.diffs[i]
        return zero_mor(self.term(d), self.term(d + 1))

    @property
    def total_dim(self) -> int:
        return sum(t.total_dim for t in self.terms)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def validate(self) -> None:
        for d in self.degrees():
            if not self.diff(d).is_valid():
                raise OracleError(f"differential out of degree {d} not a morphism")
            if not self.diff(d + 1).compose(self.diff(d)).is_zero():
                raise OracleError(f"d² != 0 at degree {d}")

    def shift(self, s: int) -> "Complex":
        """``C[s]`` with ``C[s]^i = C^{i+s}`` and differential ``(-1)^s d``."""
        if s == 0:
            return self
        sign = Q(-1) if s % 2 else Q(1)
        return Complex(
            self.alg,
            self.lo_deg - s,
            self.terms,
            tuple(d.scale(sign) for d in self.diffs),
        )

    def trim(self) -> "Complex":
        """Drop zero terms at both ends."""
        terms = list(self.terms)
        diffs = list(self.diffs)
        lo = self.lo_deg
        while terms and terms[0].is_zero():
            terms.pop(0)
            if diffs:
                diffs.pop(0)
            lo += 1
        while terms and terms[-1].is_zero():
            terms.pop()
            if diffs:
                diffs.pop()
        if not terms:
            return Complex(self.alg, 0, (), ())
        return Complex(self.alg, lo, tuple(terms), tuple(diffs))


def stalk_complex(m: Rep, degree: int = 0) -> Complex:
    if m.is_zero():
        return Complex(m.alg, 0, (), ())
    return Complex(m.alg, degree, (m,), ())


def direct_sum_complex(cs: Sequence[Complex], alg: LinePresentation) -> Complex:
    cs = [c for c in cs if not c.is_zero()]
    if not cs:
        return Complex(alg, 0, (), ())
    lo = min(c.lo_deg for c in cs)
    hi = max(c.hi_deg for c in cs)
    terms = []
    diffs = []
    for d in range(lo, hi + 1):
        parts = [c.term(d) for c in cs]
        terms.append(direct_sum_rep(parts) if parts else zero_rep(alg))
    for d in range(lo, hi):
        src = terms[d - lo]
        dst = terms[d - lo + 1]
        diffs.append(RepMor(src, dst, tuple(
            Mat.block_diag([c.diff(d).mats[i] for c in cs])
            for i in range(len(alg.vertices))
        )))
    return Complex(alg, lo, tuple(terms), tuple(diffs))


@dataclass(frozen=True)
class ChainMor:
    """Degree-0 chain map between complexes (use ``dst.shift(s)`` for shifts)."""

    src: Complex
    dst: Complex
    comps: tuple[tuple[int, RepMor], ...]  # sparse: (degree, component)

    def comp(self, d: int) -> RepMor:
        for dd, f in self.comps:
            if dd == d:
                return f
        return zero_mor(self.src.term(d), self.dst.term(d))

    def is_chain_map(self) -> bool:
        lo = min(self.src.lo_deg, self.dst.lo_deg)
        hi = max(self.src.hi_deg, self.dst.hi_deg)
        for d in range(lo, hi + 1):
            lhs = self.dst.diff(d).compose(self.comp(d))
            rhs = self.comp(d + 1).compose(self.src.diff(d))
            if not (lhs - rhs).is_zero():
                return False
        return True

    def is_zero(self) -> bool:
        return all(f.is_zero() for _, f in self.comps)

    def compose(self, first: "ChainMor") -> "ChainMor":
        comps = []
        for d in range(first.src.lo_deg, first.src.hi_deg + 1):
            f = self.comp(d).compose(first.comp(d))
            if not f.is_zero():
                comps.append((d, f))
        return ChainMor(first.src, self.dst, tuple(comps))

    def scale(self, c) -> "ChainMor":
        return ChainMor(self.src, self.dst, tuple((d, f.scale(c)) for d, f in self.comps))

    def __add__(self, other: "ChainMor") -> "ChainMor":
        degs = sorted({d for d, _ in self.comps} | {d for d, _ in other.comps})
        comps = []
        for d in degs:
            f = self.comp(d) + other.comp(d)
            if not f.is_zero():
                comps.append((d, f))
        return ChainMor(self.src, self.dst, tuple(comps))

    def shift(self, s: int) -> "ChainMor":
        """The induced map ``src[s] → dst[s]``."""
        return ChainMor(
            self.src.shift(s),
            self.dst.shift(s),
            tuple((d - s, f) for d, f in self.comps),
        )


def zero_chain_mor(src: Complex, dst: Complex) -> ChainMor:
    return ChainMor(src, dst, ())


def identity_chain_mor(c: Complex) -> ChainMor:
    return ChainMor(c, c, tuple((d, identity_mor(c.term(d))) for d in c.degrees() if not c.term(d).is_zero()))


def cone(f: ChainMor) -> tuple[Complex, ChainMor, ChainMor]:
    """Mapping cone with the canonical triangle maps.

    Returns ``(cone, incl, proj)`` for the triangle
    ``src →f→ dst →incl→ cone →proj→ src[1]``.
    """
    a, b = f.src, f.dst
    alg = a.alg
    a1 = a.shift(1)
    lo = min(b.lo_deg, a1.lo_deg) if (a.terms or b.terms) else 0
    hi = max(b.hi_deg, a1.hi_deg) if (a.terms or b.terms) else -1
    terms = []
    for d in range(lo, hi + 1):
        terms.append(direct_sum_rep([b.term(d), a1.term(d)]))
    diffs = []
    for d in range(lo, hi):
        src_t, dst_t = terms[d - lo], terms[d - lo + 1]
        db = b.diff(d)
        da1 = a1.diff(d)  # already carries the sign
        fd = f.comp(d + 1)  # component src^{d+1} → dst^{d+1}
        mats = []
        for i in range(len(alg.vertices)):
            top = Mat.hstack([db.mats[i], fd.mats[i]])
            bot = Mat.hstack([Mat.zeros(da1.dst.dims[i], db.src.dims[i]), da1.mats[i]])
            mats.append(Mat.vstack([top, bot]))
        diffs.append(RepMor(src_t, dst_t, tuple(mats)))
    cn = Complex(alg, lo, tuple(terms), tuple(diffs))
    incl_comps = []
    proj_comps = []
    for d in range(lo, hi + 1):
        t = cn.terms[d - lo]
        bt, at = b.term(d), a1.term(d)
        incl_f = RepMor(bt, t, tuple(
            Mat.vstack([Mat.identity(bt.dims[i]), Mat.zeros(at.dims[i], bt.dims[i])])
            for i in range(len(alg.vertices))
        ))
        proj_f = RepMor(t, at, tuple(
            Mat.hstack([Mat.zeros(at.dims[i], bt.dims[i]), Mat.identity(at.dims[i])])
            for i in range(len(alg.vertices))
        ))
        if not incl_f.is_zero():
            incl_comps.append((d, incl_f))
        if not proj_f.is_zero():
            proj_comps.append((d, proj_f))
    incl = ChainMor(b, cn, tuple(incl_comps))
    proj = ChainMor(cn, a1, tuple(proj_comps))
    return cn, incl, proj


# ---------------------------------------------------------------------------
# chain maps modulo homotopy
# ---------------------------------------------------------------------------


class HomSpace:
    """The space of chain maps ``src → dst`` with its homotopy quotient.

    ``chain_basis`` is a deterministic basis of honest chain maps; the
    homotopy image is modelled by a :class:`SubspaceReducer` in those
    coordinates, computed as a single cokernel.  ``stable_dim`` is the
    dimension of chain maps modulo homotopy.
    """

    def __init__(self, src: Complex, dst: Complex):
        self.src = src
        self.dst = dst
        degs = sorted(set(src.degrees()) | set(dst.degrees()))
        # per-degree rep-hom bases
        self._deg_basis: dict[int, list[RepMor]] = {}
        offsets: dict[int, int] = {}
        total = 0
        for d in degs:
            bas = hom_basis(src.term(d), dst.term(d))
            if bas:
                self._deg_basis[d] = bas
                offsets[d] = total
                total += len(bas)
        self._offsets = offsets
        self._total = total

        # chain-map condition rows, expressed through composition coordinates
        rows: list[list[Fraction]] = []
        for d in degs:
            # condition in Hom(src^d, dst^{d+1}):  d_dst ∘ f_d  −  f_{d+1} ∘ d_src
            tgt_basis = hom_basis(src.term(d), dst.term(d + 1))
            if not tgt_basis:
                # the condition space is zero: every intertwiner there vanishes
                continue
            cols: dict[int, list[tuple[Fraction, ...]]] = {}
            for key, post in ((d, True), (d + 1, False)):
                if key not in self._deg_basis:
                    continue
                vecs = []
                for b in self._deg_basis[key]:
                    comp = dst.diff(d).compose(b) if post else b.compose(src.diff(d))
                    coords = hom_coords(tgt_basis, comp)
                    if coords is None:
                        raise OracleError("composite escapes hom basis")
                    vecs.append(coords)
                cols[key] = vecs
            for r in range(len(tgt_basis)):
                row = [Q(0)] * total
                touched = False
                if d in cols:
                    for j, coords in enumerate(cols[d]):
                        if coords[r] != 0:
                            row[offsets[d] + j] += coords[r]
                            touched = True
                if d + 1 in cols:
                    for j, coords in enumerate(cols[d + 1]):
                        if coords[r] != 0:
                            row[offsets[d + 1] + j] -= coords[r]
                            touched = True
                if touched:
                    rows.append(row)
        if total == 0:
            z = Mat.zeros(0, 0)
        elif rows:
            z = Mat.from_rows(rows, cols=total).nullspace()
        else:
            z = Mat.identity(total)
        self._z = z  # columns: chain-map coordinate vectors

        # homotopy image: h lives in Hom(src^d, dst^{d-1})
        boundary_vecs: list[tuple[Fraction, ...]] = []
        for d in degs:
            hb = hom_basis(src.term(d), dst.term(d - 1))
            for h in hb:
                g_parts: dict[int, RepMor] = {}
                a = dst.diff(d - 1).compose(h)  # degree d component
                if not a.is_zero():
                    g_parts[d] = a
                b2 = h.compose(src.diff(d - 1))
                if not b2.is_zero():
                    g_parts[d - 1] = b2
                if not g_parts:
                    continue
                vec = self._coords_of_parts(g_parts)
                if vec is None:
                    raise OracleError("homotopy boundary escapes hom spaces")
                zc = self._z_coords(vec)
                if zc is None:
                    raise OracleError("homotopy boundary is not a chain map")
                boundary_vecs.append(zc)
        self.reducer = SubspaceReducer(self._z.cols, boundary_vecs)

    # -- coordinates ---------------------------------------------------

    def _coords_of_parts(self, parts: dict[int, RepMor]) -> tuple[Fraction, ...] | None:
        vec = [Q(0)] * self._total
        for d, f in parts.items():
            if f.is_zero():
                continue
            if d not in self._deg_basis:
                return None
            coords = hom_coords(self._deg_basis[d], f)
            if coords is None:
                return None
            for j, c in enumerate(coords):
                vec[self._offsets[d] + j] = c
        return tuple(vec)

    def _z_coords(self, vec: Sequence[Fraction]) -> tuple[Fraction, ...] | None:
        if self._z.cols == 0:
            return () if all(x == 0 for x in vec) else None
        sol = self._z.solve(Mat.column(vec))
        if sol is None:
            return None
        return sol.col_tuple(0)

    @property
    def chain_dim(self) -> int:
        return self._z.cols

    @property
    def stable_dim(self) -> int:
        return self.reducer.quotient_dim

    def chain_basis(self) -> list[ChainMor]:
        return [self._from_z_coords([Q(1) if i == j else Q(0) for i in range(self._z.cols)]) for j in range(self._z.cols)]

    def _from_z_coords(self, zc: Sequence[Fraction]) -> ChainMor:
        vec = [Q(0)] * self._total
        for j, c in enumerate(zc):
            if c != 0:
                col = self._z.col_tuple(j)
                for i in range(self._total):
                    vec[i] += c * col[i]
        comps = []
        for d, bas in self._deg_basis.items():
            f = zero_mor(self.src.term(d), self.dst.term(d))
            for j, b in enumerate(bas):
                c = vec[self._offsets[d] + j]
                if c != 0:
                    f = f + b.scale(c)
            if not f.is_zero():
                comps.append((d, f))
        return ChainMor(self.src, self.dst, tuple(sorted(comps)))

    def coords_of(self, f: ChainMor) -> tuple[Fraction, ...]:
        parts = {d: comp for d, comp in f.comps}
        vec = self._coords_of_parts(parts)
        if vec is None:
            raise OracleError("chain map has components outside hom spaces")
        zc = self._z_coords(vec)
        if zc is None:
            raise OracleError("map does not satisfy the chain condition")
        return zc

    def stable_coords_of(self, f: ChainMor) -> tuple[Fraction, ...]:
        return self.reducer.quotient_coords(self.coords_of(f))

    def stable_basis(self) -> list[ChainMor]:
        out = []
        for fp in self.reducer.free_positions:
            zc = [Q(0)] * self._z.cols
            zc[fp] = Q(1)
            out.append(self._from_z_coords(zc))
        return out

    def is_nullhomotopic(self, f: ChainMor) -> bool:
        return all(x == 0 for x in self.stable_coords_of(f))


def chain_hom(src: Complex, dst: Complex, shift: int = 0) -> HomSpace:
    """Chain maps ``src → dst[shift]`` with homotopy quotient."""
    return HomSpace(src, dst.shift(shift))


# ---------------------------------------------------------------------------
# resolutions
# ---------------------------------------------------------------------------


def resolution_complex(m: Rep, length: int) -> tuple[Complex, RepMor]:
    """Truncated projective resolution ``P^{-length} → … → P^0`` with the
    augmentation ``P^0 → M``.

    Exact at degrees ``-length+1 … 0`` by construction (each step is a
    kernel); correctness of truncation is the caller's responsibility (window
    margins).
    """
    if m.is_zero():
        c = Complex(m.alg, 0, (), ())
        return c, zero_mor(zero_rep(m.alg), m)
    covers: list[tuple[Rep, RepMor]] = []
    cur = m
    incls: list[RepMor] = []
    for _ in range(length + 1):
        p, f = projective_cover(cur)
        covers.append((p, f))
        if p.is_zero():
            break
        ker, incl = kernel(f)
        incls.append(incl)
        cur = ker
        if ker.is_zero():
            break
    terms = [p for p, _ in covers]
    diffs: list[RepMor] = []
    for i in range(1, len(terms)):
        # differential P^{-i} → P^{-i+1} = incl_{i-1} ∘ cover_i
        diffs.append(incls[i - 1].compose(covers[i][1]))
    terms_rev = tuple(reversed(terms))
    diffs_rev = tuple(reversed(diffs))
    cx = Complex(m.alg, -len(terms) + 1, terms_rev, diffs_rev)
    cx.validate()
    return cx, covers[0][1]


def two_term_complex(alg: LinePresentation, m_interval: Interval, shift: int = 0) -> Complex:
    """Minimal projective presentation of an interval module as a complex in
    degrees ``[-1, 0]``, then shifted.

    Only valid when the syzygy of the interval is itself projective (true for
    hereditary line algebras, where this is the full resolution).
    """
    rep = interval_rep(alg, *m_interval)
    cx, _ = resolution_complex(rep, 2)
    if cx.lo_deg < -1:
        raise OracleError("interval is not 2-term resolvable")
    return cx.shift(shift)


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------


def decompose_rep(m: Rep, method: str = "auto") -> dict[Interval, int]:
    """Multiset of interval summands of a module.

    ``fingerprint`` uses the rank inclusion–exclusion
    ``mult[a,b] = r(a,b) − r(a−1,b) − r(a,b+1) + r(a−1,b+1)``
    (ranks of composite path maps, zero outside the window), then certifies
    the answer by dimension count.  ``idempotent`` splits recursively through
    idempotent endomorphisms.  ``auto`` tries the fingerprint and falls back.
    """
    if not m.check_relations():
        raise ValueError("not a module: relations are violated")
    if method not in ("auto", "fingerprint", "idempotent"):
        raise ValueError(f"unknown method {method!r}")
    if method in ("auto", "fingerprint"):
        result = _fingerprint_decompose(m)
        if result is not None:
            return result
        if method == "fingerprint":
            raise OracleError("fingerprint decomposition failed certification")
    return _idempotent_decompose(m)


def _fingerprint_decompose(m: Rep) -> dict[Interval, int] | None:
    alg = m.alg
    lo, hi = alg.lo, alg.hi

    @lru_cache(maxsize=None)
    def r(x: int, y: int) -> int:
        if x < lo or y > hi or x > y:
            return 0
        return m.path_map(x, y).rank()

    out: dict[Interval, int] = {}
    for a in alg.vertices:
        if m.dims[alg.vindex(a)] == 0:
            continue
        for b in range(a, hi + 1):
            mult = r(a, b) - r(a - 1, b) - r(a, b + 1) + r(a - 1, b + 1)
            if mult < 0:
                return None
            if mult > 0:
                if not alg.interval_is_valid(a, b):
                    return None
                out[(a, b)] = mult
    # certification: dimensions must add up at every vertex
    for v in alg.vertices:
        total = sum(mult for (a, b), mult in out.items() if a <= v <= b)
        if total != m.dims[alg.vindex(v)]:
            return None
    return out


def _idempotent_decompose(m: Rep) -> dict[Interval, int]:
    if m.is_zero():
        return {}
    piece = _as_interval(m)
    if piece is not None:
        return {piece: 1}
    split = _split_once(m)
    if split is None:
        raise OracleError("indecomposable representation is not an interval module")
    m1, m2 = split
    out = _idempotent_decompose(m1)
    for k, v in _idempotent_decompose(m2).items():
        out[k] = out.get(k, 0) + v
    return dict(sorted(out.items()))


def _as_interval(m: Rep) -> Interval | None:
    supp = m.support()
    if not supp:
        return None
    a, b = supp[0], supp[-1]
    if tuple(range(a, b + 1)) != supp:
        return None
    if any(m.dim_at(v) != 1 for v in supp):
        return None
    # all internal arrows must be isos for an interval module
    for v in range(a, b):
        if m.maps[m.alg.vindex(v)].rank() != 1:
            return None
    return (a, b) if m.alg.interval_is_valid(a, b) else None


def _split_once(m: Rep) -> tuple[Rep, Rep] | None:
    """Find a nontrivial direct sum decomposition via an idempotent, or None."""
    import sympy

    end = hom_basis(m, m)
    if len(end) <= 1:
        return None
    t_sym = sympy.Symbol("t")
    for t in range(1, 8):
        c = zero_mor(m, m)
        for i, e in enumerate(end):
            c = c + e.scale(Q(t) ** i)
        big = Mat.block_diag(list(c.mats))
        coeffs = minimal_polynomial(big)
        poly = sympy.Poly(
            [sympy.Rational(x.numerator, x.denominator) for x in reversed(coeffs)], t_sym
        )
        factors = sympy.factor_list(poly)[1]
        if len(factors) < 2:
            continue  # primary minimal polynomial: this element cannot split m
        f1 = factors[0][0] ** factors[0][1]
        f2 = sympy.prod([f ** mu for f, mu in factors[1:]])
        u, _v, g = sympy.gcdex(sympy.Poly(f1, t_sym), sympy.Poly(f2, t_sym))
        if not g.is_one:
            continue
        # e = u*f1 evaluated at c is the projection onto the f2-primary part
        e_poly = (sympy.Poly(u, t_sym) * sympy.Poly(f1, t_sym)).rem(poly)
        e_mor = _eval_poly_at(e_poly.all_coeffs(), c, m)
        if _is_idempotent(e_mor) and not e_mor.is_zero() and not (identity_mor(m) - e_mor).is_zero():
            return _image_rep(e_mor), _image_rep(identity_mor(m) - e_mor)
    return None


def _eval_poly_at(coeffs_high_first: list, c: RepMor, m: Rep) -> RepMor:
    out = zero_mor(m, m)
    for coeff in coeffs_high_first:
        q = Q(coeff.p, coeff.q) if hasattr(coeff, "p") else Q(int(coeff))
        out = out.compose(c) + identity_mor(m).scale(q)
    return out


def _is_idempotent(e: RepMor) -> bool:
    return (e.compose(e) - e).is_zero()


def _image_rep(e: RepMor) -> Rep:
    """Image of an idempotent endomorphism, as a representation."""
    alg = e.src.alg
    incl_mats = []
    for i, mat in enumerate(e.mats):
        cols = [mat.col_tuple(j) for j in range(mat.cols)]
        red = SubspaceReducer(mat.rows, cols)
        # image basis: rref pivot rows transposed back into column vectors
        basis = [tuple(row) for row in red._rows]
        if basis:
            incl_mats.append(Mat.from_rows(basis).transpose())
        else:
            incl_mats.append(Mat.zeros(mat.rows, 0))
    dims = tuple(m.cols for m in incl_mats)
    maps = []
    for i in range(len(dims) - 1):
        rhs = e.src.maps[i] @ incl_mats[i]
        k = incl_mats[i + 1].solve(rhs)
        if k is None:
            raise OracleError("idempotent image not arrow-closed")
        maps.append(k)
    return Rep(alg, dims, tuple(maps))


class CohomologyAt:
    """Cohomology of a complex at one degree, with induced-map support.

    Coordinates on ``h`` are the canonical quotient coordinates of the kernel
    modulo the image, so two instances built from equal complexes agree.
    """

    def __init__(self, c: Complex, degree: int):
        self.complex = c
        self.degree = degree
        d_out = c.diff(degree)
        d_in = c.diff(degree - 1)
        self.ker, self.incl = kernel(d_out)
        mats = []
        for i in range(len(self.ker.dims)):
            sol = self.incl.mats[i].solve(d_in.mats[i])
            if sol is None:
                raise OracleError("image does not land in kernel")
            mats.append(sol)
        self.into_ker = RepMor(d_in.src, self.ker, tuple(mats))
        self.h, self.proj = cokernel(self.into_ker)

    def induced(self, f: ChainMor, other: "CohomologyAt") -> RepMor:
        """``H(f)`` from this cohomology to ``other``'s (same degree)."""
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        comp = f.comp(self.degree)
        mats = []
        for i in range(len(self.ker.dims)):
            y = other.incl.mats[i].solve(comp.mats[i] @ self.incl.mats[i])
            if y is None:
                raise OracleError("induced map does not preserve kernels")
            mats.append(other.proj.mats[i] @ y @ _proj_section(self.proj.mats[i]))
        return RepMor(self.h, other.h, tuple(mats))


def _proj_section(proj: Mat) -> Mat:
    """Right inverse of a canonical quotient projection.

    The projection produced by :func:`cokernel` sends the standard basis
    vector at each free position to the matching quotient coordinate vector,
    so the section just places those vectors back.
    """
    cols = []
    for q in range(proj.rows):
        # find the column that maps to the q-th standard quotient vector
        target = tuple(Q(1) if r == q else Q(0) for r in range(proj.rows))
        for j in range(proj.cols):
            if proj.col_tuple(j) == target:
                col = [Q(0)] * proj.cols
                col[j] = Q(1)
                cols.append(tuple(col))
                break
        else:
            raise OracleError("projection has no canonical section")
    if not cols:
        return Mat.zeros(proj.cols, 0)
    return Mat.hstack([Mat.column(c) for c in cols])


def cohomology(c: Complex, degree: int) -> Rep:
    """Cohomology representation at one degree."""
    return CohomologyAt(c, degree).h


def cohomology_mor(f: ChainMor, degree: int) -> RepMor:
    return CohomologyAt(f.src, degree).induced(f, CohomologyAt(f.dst, degree))


def is_quasi_iso(f: ChainMor) -> bool:
    degs = set(f.src.degrees()) | set(f.dst.degrees())
    for d in degs:
        if not cohomology_mor(f, d).is_iso():
            return False
    return True


# ---------------------------------------------------------------------------
# factorization solvers and comparison lifts
# ---------------------------------------------------------------------------


def solve_factor(post: RepMor, rhs: RepMor) -> RepMor | None:
    """Find a representation map ``x`` with ``post ∘ x = rhs``, or None."""
    if rhs.dst.dims != post.dst.dims:
        raise ValueError("codomain mismatch")
    basis = hom_basis(rhs.src, post.src)
    target_basis = hom_basis(rhs.src, post.dst)
    rhs_coords = hom_coords(target_basis, rhs)
    if rhs_coords is None:
        return None
    if not basis:
        return zero_mor(rhs.src, post.src) if rhs.is_zero() else None
    cols = []
    for b in basis:
        c = hom_coords(target_basis, post.compose(b))
        if c is None:
            raise OracleError("composite escapes hom basis")
        cols.append(Mat.column(c))
    sol = Mat.hstack(cols).solve(Mat.column(rhs_coords))
    if sol is None:
        return None
    x = zero_mor(rhs.src, post.src)
    for j, b in enumerate(basis):
        if sol.data[j][0] != 0:
            x = x + b.scale(sol.data[j][0])
    return x


def solve_cofactor(pre: RepMor, rhs: RepMor) -> RepMor | None:
    """Find a representation map ``x`` with ``x ∘ pre = rhs``, or None."""
    if rhs.src.dims != pre.src.dims:
        raise ValueError("domain mismatch")
    basis = hom_basis(pre.dst, rhs.dst)
    target_basis = hom_basis(pre.src, rhs.dst)
    rhs_coords = hom_coords(target_basis, rhs)
    if rhs_coords is None:
        return None
    if not basis:
        return zero_mor(pre.dst, rhs.dst) if rhs.is_zero() else None
    cols = []
    for b in basis:
        c = hom_coords(target_basis, b.compose(pre))
        if c is None:
            raise OracleError("composite escapes hom basis")
        cols.append(Mat.column(c))
    sol = Mat.hstack(cols).solve(Mat.column(rhs_coords))
    if sol is None:
        return None
    x = zero_mor(pre.dst, rhs.dst)
    for j, b in enumerate(basis):
        if sol.data[j][0] != 0:
            x = x + b.scale(sol.data[j][0])
    return x


def resolution_lift(
    src: Complex, f_top: RepMor, res_dst: Complex, aug: RepMor, s: int
) -> ChainMor:
    """Lift a chain map ``src → stalk(N)[s]`` through the resolution of N.

    ``f_top`` is the single component ``src^{-s} → N``; the result is a chain
    map ``src → res_dst.shift(s)`` whose top component composed with the
    augmentation recovers ``f_top``.  Needs ``src`` to consist of projectives
    and ``res_dst`` to be exact as far down as ``src`` reaches; raises
    :class:`OracleError` when the truncation is too short for the lift.
    """
    if not f_top.compose(src.diff(-s - 1)).is_zero():
        raise ValueError("input is not a chain map to the stalk")
    dst_sh = res_dst.shift(s)
    comps: dict[int, RepMor] = {}
    top = solve_factor(aug, f_top)
    if top is None:
        raise OracleError("cannot lift through augmentation")
    if not top.is_zero():
        comps[-s] = top
    for d in range(-s - 1, src.lo_deg - 1, -1):
        prev = comps.get(d + 1, zero_mor(src.term(d + 1), dst_sh.term(d + 1)))
        rhs = prev.compose(src.diff(d))
        g = solve_factor(dst_sh.diff(d), rhs)
        if g is None:
            raise OracleError("resolution truncation too short for lift")
        if not g.is_zero():
            comps[d] = g
    out = ChainMor(src, dst_sh, tuple(sorted(comps.items())))
    if not out.is_chain_map():
        raise OracleError("lift failed to be a chain map")
    return out


def lift_module_map(g: RepMor, res_src: Complex, aug_src: RepMor, res_dst: Complex, aug_dst: RepMor) -> ChainMor:
    """Lift a module map to a chain map between truncated resolutions."""
    return resolution_lift(res_src, g.compose(aug_src), res_dst, aug_dst, 0)


def decompose_complex(c: Complex) -> dict[tuple[Interval, int], int]:
    """Decompose a complex (over a hereditary algebra) into interval stalks.

    Returns multiplicities keyed by ``((a, b), degree)``; the complex is
    isomorphic in the derived category to the sum of interval stalks placed in
    those degrees.
    """
    out: dict[tuple[Interval, int], int] = {}
    for d in range(c.lo_deg, c.hi_deg + 1):
        h = cohomology(c, d)
        if h.is_zero():
            continue
        for interval, mult in decompose_rep(h).items():
            out[(interval, d)] = out.get((interval, d), 0) + mult
    return dict(sorted(out.items()))
