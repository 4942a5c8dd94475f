"""Module windows over line quivers with monomial relations.

Objects are the valid intervals of a :class:`LinePresentation` restricted to
a finite vertex range; conclusions are only claimed for intervals inside the
core range, with the margin absorbing boundary effects of the truncation.

Degree-zero morphisms are honest representation maps; higher extensions are
stable chain maps from a truncated projective resolution into a shifted
stalk, so every scalar in the window is certified by the same linear algebra
that the tests trust.
"""
from __future__ import annotations

import random
from fractions import Fraction

from ._linalg import Mat
from .model import ConfigError, Coord, ExtClass, Mor, Obj, Triangle, Window, obj_of
from .oracle import (
    ChainMor,
    Complex,
    LinePresentation,
    OracleError,
    Rep,
    RepMor,
    chain_hom,
    cokernel,
    decompose_rep,
    direct_sum_rep,
    hom_basis,
    hom_coords,
    injective_interval,
    interval_rep,
    kernel,
    lift_module_map,
    projective_interval,
    resolution_complex,
    resolution_lift,
    solve_factor,
    stalk_complex,
    zero_mor,
    zero_rep,
)

Q = Fraction

RESOLUTION_STEPS = 3  # long enough to certify extensions in degrees one and two


def valid_intervals(alg: LinePresentation) -> list[Coord]:
    out = []
    for a in alg.vertices:
        for b in range(a, alg.hi + 1):
            if alg.interval_is_valid(a, b):
                out.append((a, b))
    return sorted(out)


class ModuleWindow(Window):
    """Window of a module category of a line quiver with monomial relations."""

    kind = "module"

    def __init__(self, alg: LinePresentation, core_range: tuple[int, int]):
        self.alg = alg
        clo, chi = core_range
        if not (alg.lo <= clo <= chi <= alg.hi):
            raise ValueError("core range must sit inside the algebra's line")
        coords = valid_intervals(alg)
        core = [(a, b) for (a, b) in coords if clo <= a and b <= chi]
        super().__init__(coords, core)
        self.core_range = (clo, chi)
        self._reps: dict[int, Rep] = {}
        self._res: dict[int, tuple[Complex, RepMor]] = {}
        self._homs: dict[tuple[int, int], list[RepMor]] = {}
        self._exts: dict[tuple[int, int, int], object] = {}
        self._lifts: dict[tuple[int, int], ChainMor] = {}
        self._ext_lifts: dict[tuple[int, int], ChainMor] = {}

    # -- canonical data ------------------------------------------------

    def rep_of(self, i: int) -> Rep:
        if i not in self._reps:
            self._reps[i] = interval_rep(self.alg, *self.coords[i])
        return self._reps[i]

    def res_of(self, i: int) -> tuple[Complex, RepMor]:
        if i not in self._res:
            self._res[i] = resolution_complex(self.rep_of(i), RESOLUTION_STEPS)
        return self._res[i]

    def hom_basis_of(self, i: int, j: int) -> list[RepMor]:
        key = (i, j)
        if key not in self._homs:
            self._homs[key] = hom_basis(self.rep_of(i), self.rep_of(j))
        return self._homs[key]

    def _ehs(self, i: int, j: int, s: int):
        key = (i, j, s)
        if key not in self._exts:
            res, _ = self.res_of(i)
            self._exts[key] = chain_hom(res, stalk_complex(self.rep_of(j)), s)
        return self._exts[key]

    def gen_hom(self, i: int, j: int) -> RepMor:
        basis = self.hom_basis_of(i, j)
        if len(basis) != 1:
            raise ValueError("no canonical generator: dimension is not one")
        return basis[0]

    def gen_ext(self, i: int, j: int, s: int) -> ChainMor:
        hs = self._ehs(i, j, s)
        if hs.stable_dim != 1:
            raise ValueError("no canonical generator: dimension is not one")
        return hs.stable_basis()[0]

    def _hom_scalar(self, i: int, j: int, f: RepMor) -> Fraction:
        basis = self.hom_basis_of(i, j)
        if not basis:
            if not f.is_zero():
                raise OracleError("nonzero map in a zero hom space")
            return Q(0)
        coords = hom_coords(basis, f)
        if coords is None:
            raise OracleError("map escapes the hom space")
        return coords[0]

    def _ext_scalar(self, i: int, j: int, s: int, m: ChainMor) -> Fraction:
        sc = self._ehs(i, j, s).stable_coords_of(m)
        return sc[0] if sc else Q(0)

    # -- comparison lifts ----------------------------------------------

    def _lift(self, i: int, j: int) -> ChainMor:
        """The generator Hom(i, j) lifted to a chain map between resolutions."""
        key = (i, j)
        if key not in self._lifts:
            res_i, aug_i = self.res_of(i)
            res_j, aug_j = self.res_of(j)
            self._lifts[key] = lift_module_map(
                self.gen_hom(i, j), res_i, aug_i, res_j, aug_j
            )
        return self._lifts[key]

    def _ext_lift(self, i: int, j: int) -> ChainMor:
        """The generator of E(i, j) lifted through the resolution of j."""
        key = (i, j)
        if key not in self._ext_lifts:
            res_i, _ = self.res_of(i)
            res_j, aug_j = self.res_of(j)
            g = self.gen_ext(i, j, 1)
            self._ext_lifts[key] = resolution_lift(
                res_i, g.comp(-1), res_j, aug_j, 1
            )
        return self._ext_lifts[key]

    # -- raw layer -----------------------------------------------------

    def _dim_pair(self, i: int, j: int, s: int) -> int:
        if s == 0:
            return len(self.hom_basis_of(i, j))
        return self._ehs(i, j, s).stable_dim

    def _comp_scalar(self, i: int, j: int, k: int) -> Fraction:
        comp = self.gen_hom(j, k).compose(self.gen_hom(i, j))
        return self._hom_scalar(i, k, comp)

    def _push_scalar(self, c: int, a: int, a2: int, s: int) -> Fraction:
        g = self.gen_hom(a, a2)
        stalk_map = ChainMor(
            stalk_complex(self.rep_of(a)).shift(s),
            stalk_complex(self.rep_of(a2)).shift(s),
            ((-s, g),),
        )
        comp = stalk_map.compose(self.gen_ext(c, a, s))
        return self._ext_scalar(c, a2, s, comp)

    def _pull_scalar(self, c2: int, c: int, a: int, s: int) -> Fraction:
        comp = self.gen_ext(c, a, s).compose(self._lift(c2, c))
        return self._ext_scalar(c2, a, s, comp)

    def _yoneda_scalar(self, c: int, b: int, a: int) -> Fraction:
        comp = self.gen_ext(b, a, 1).shift(1).compose(self._ext_lift(c, b))
        return self._ext_scalar(c, a, 2, comp)

    # -- sums ----------------------------------------------------------

    def sum_rep(self, x: Obj) -> Rep:
        if x.is_zero():
            return zero_rep(self.alg)
        return direct_sum_rep([self.rep_of(p) for p in x.parts])

    def _rep_offsets(self, x: Obj) -> list[tuple[int, ...]]:
        nv = len(self.alg.vertices)
        offs, acc = [], [0] * nv
        for p in x.parts:
            offs.append(tuple(acc))
            r = self.rep_of(p)
            acc = [acc[v] + r.dims[v] for v in range(nv)]
        return offs

    def rep_inclusion(self, x: Obj, pos: int) -> RepMor:
        total, part = self.sum_rep(x), self.rep_of(x.parts[pos])
        offs = self._rep_offsets(x)[pos]
        mats = []
        for v in range(len(self.alg.vertices)):
            rows = [[Q(0)] * part.dims[v] for _ in range(total.dims[v])]
            for q in range(part.dims[v]):
                rows[offs[v] + q][q] = Q(1)
            mats.append(Mat.from_rows(rows, cols=part.dims[v]))
        return RepMor(part, total, tuple(mats))

    def rep_projection(self, x: Obj, pos: int) -> RepMor:
        total, part = self.sum_rep(x), self.rep_of(x.parts[pos])
        offs = self._rep_offsets(x)[pos]
        mats = []
        for v in range(len(self.alg.vertices)):
            rows = [[Q(0)] * total.dims[v] for _ in range(part.dims[v])]
            for q in range(part.dims[v]):
                rows[q][offs[v] + q] = Q(1)
            mats.append(Mat.from_rows(rows, cols=total.dims[v]))
        return RepMor(total, part, tuple(mats))

    def assemble_rep_mor(self, f: Mor) -> RepMor:
        src, dst = self.sum_rep(f.src), self.sum_rep(f.dst)
        out = zero_mor(src, dst)
        for r in range(f.dst.n):
            for c in range(f.src.n):
                v = f.mat.data[r][c]
                if v == 0:
                    continue
                g = self.gen_hom(f.src.parts[c], f.dst.parts[r]).scale(v)
                piece = self.rep_inclusion(f.dst, r).compose(
                    g.compose(self.rep_projection(f.src, c))
                )
                out = out + piece
        return out

    def rep_blocks_to_mor(self, m: RepMor, x: Obj, y: Obj) -> Mor:
        rows = []
        for r in range(y.n):
            row = []
            for c in range(x.n):
                comp = self.rep_projection(y, r).compose(m).compose(self.rep_inclusion(x, c))
                row.append(self._hom_scalar(x.parts[c], y.parts[r], comp))
            rows.append(row)
        return Mor(x, y, Mat.from_rows(rows, cols=x.n))

    def sum_resolution(self, x: Obj) -> tuple[Complex, RepMor]:
        """Blockwise resolution of a sum with its augmentation."""
        from .oracle import direct_sum_complex

        if x.is_zero():
            c = Complex(self.alg, 0, (), ())
            return c, zero_mor(zero_rep(self.alg), zero_rep(self.alg))
        pieces = [self.res_of(p) for p in x.parts]
        total = direct_sum_complex([res for res, _ in pieces], self.alg)
        nv = len(self.alg.vertices)
        aug_mats = tuple(
            Mat.block_diag([aug.mats[v] for _, aug in pieces]) for v in range(nv)
        )
        return total, RepMor(total.term(0), self.sum_rep(x), aug_mats)

    def res_inclusion(self, x: Obj, pos: int) -> ChainMor:
        """Inclusion of one part's resolution into the blockwise sum."""
        total, _ = self.sum_resolution(x)
        part, _ = self.res_of(x.parts[pos])
        nv = len(self.alg.vertices)
        comps = []
        for d in part.degrees():
            pt, tt = part.term(d), total.term(d)
            if pt.is_zero():
                continue
            offs = [0] * nv
            for q in range(pos):
                prev = self.res_of(x.parts[q])[0].term(d)
                offs = [offs[v] + prev.dims[v] for v in range(nv)]
            mats = []
            for v in range(nv):
                rows = [[Q(0)] * pt.dims[v] for _ in range(tt.dims[v])]
                for q in range(pt.dims[v]):
                    rows[offs[v] + q][q] = Q(1)
                mats.append(Mat.from_rows(rows, cols=pt.dims[v]))
            comps.append((d, RepMor(pt, tt, tuple(mats))))
        return ChainMor(part, total, tuple(comps))

    # -- identification ------------------------------------------------

    def identify_rep(self, m: Rep) -> tuple[Obj, RepMor, RepMor]:
        """Window object isomorphic to a module, with the isomorphism and its
        inverse: returns (obj, phi: m → sum(obj), phi_inv)."""
        parts = []
        for interval, mult in decompose_rep(m).items():
            if interval not in self.index:
                raise OracleError(f"object {interval} falls outside the window")
            parts.extend([self.index[interval]] * mult)
        obj = obj_of(parts)
        target = self.sum_rep(obj)
        phi = _find_rep_iso(m, target)
        inv_mats = tuple(mm.inverse() for mm in phi.mats)
        if any(mm is None for mm in inv_mats):
            raise OracleError("isomorphism certificate failed to invert")
        phi_inv = RepMor(target, m, inv_mats)
        return obj, phi, phi_inv

    # -- extension classes of short exact sequences --------------------

    def _ses_class(self, f_rep: RepMor, g_rep: RepMor, a_obj: Obj, c_obj: Obj) -> ExtClass:
        """Connecting class of 0 → sum(a) → B → sum(c) → 0."""
        res_c, aug_c = self.sum_resolution(c_obj)
        lift = solve_factor(g_rep, aug_c)
        if lift is None:
            raise OracleError("augmentation does not lift through the quotient")
        back = lift.compose(res_c.diff(-1))
        x = solve_factor(f_rep, back)
        if x is None:
            raise OracleError("syzygy image does not factor through the kernel")
        rows = []
        for r in range(a_obj.n):
            row = []
            pr = self.rep_projection(a_obj, r)
            for c in range(c_obj.n):
                part_res, _ = self.res_of(c_obj.parts[c])
                inc = self.res_inclusion(c_obj, c)
                comp = pr.compose(x).compose(inc.comp(-1))
                m = ChainMor(
                    part_res,
                    stalk_complex(self.rep_of(a_obj.parts[r])).shift(1),
                    ((-1, comp),) if not comp.is_zero() else (),
                )
                row.append(self._ext_scalar(c_obj.parts[c], a_obj.parts[r], 1, m))
            rows.append(row)
        return ExtClass(c_obj, a_obj, Mat.from_rows(rows, cols=c_obj.n), 1)

    # -- triangles -----------------------------------------------------

    def realize(self, delta: ExtClass) -> Triangle:
        if delta.degree != 1:
            raise ValueError("can only realize degree-1 classes")
        if delta.fiber.is_zero():
            ident = self.identity(delta.base)
            return Triangle(
                delta.fiber,
                delta.base,
                delta.base,
                self.zero_mor(delta.fiber, delta.base),
                ident,
                delta,
            )
        a_rep = self.sum_rep(delta.fiber)
        res_c, aug_c = self.sum_resolution(delta.base)
        p1, p0 = res_c.term(-1), res_c.term(0)
        nv = len(self.alg.vertices)

        # the class as a single map P^{-1} → A, assembled blockwise
        dmats = [Mat.zeros(a_rep.dims[v], p1.dims[v]) for v in range(nv)]
        for r in range(delta.fiber.n):
            for c in range(delta.base.n):
                v = delta.mat.data[r][c]
                if v == 0:
                    continue
                g = self.gen_ext(delta.base.parts[c], delta.fiber.parts[r], 1)
                comp = (
                    self.rep_inclusion(delta.fiber, r)
                    .compose(g.comp(-1).scale(v))
                    .compose(self.res_inclusion(delta.base, c).comp(-1))
                )
                dmats = [dmats[u] + comp.mats[u] for u in range(nv)]
        dhat = RepMor(p1, a_rep, tuple(dmats))

        mid = direct_sum_rep([a_rep, p0])
        combined = RepMor(
            p1,
            mid,
            tuple(
                Mat.vstack([dhat.mats[v], res_c.diff(-1).mats[v].scale(Q(-1))])
                for v in range(nv)
            ),
        )
        b_rep, proj = cokernel(combined)
        incl_a = RepMor(
            a_rep,
            mid,
            tuple(
                Mat.vstack([Mat.identity(a_rep.dims[v]), Mat.zeros(p0.dims[v], a_rep.dims[v])])
                for v in range(nv)
            ),
        )
        f_rep = proj.compose(incl_a)
        onto_c = RepMor(
            mid,
            self.sum_rep(delta.base),
            tuple(Mat.hstack([Mat.zeros(aug_c.mats[v].rows, a_rep.dims[v]), aug_c.mats[v]]) for v in range(nv)),
        )
        g_rep = _cofactor_through_epi(proj, onto_c)

        b_obj, phi, phi_inv = self.identify_rep(b_rep)
        f = self.rep_blocks_to_mor(phi.compose(f_rep), delta.fiber, b_obj)
        g = self.rep_blocks_to_mor(g_rep.compose(phi_inv), b_obj, delta.base)
        return Triangle(delta.fiber, b_obj, delta.base, f, g, delta)

    def is_inflation(self, f: Mor) -> bool:
        return self.assemble_rep_mor(f).is_mono()

    def is_deflation(self, f: Mor) -> bool:
        return self.assemble_rep_mor(f).is_epi()

    def cone_of(self, f: Mor) -> Triangle:
        fh = self.assemble_rep_mor(f)
        if not fh.is_mono():
            raise ValueError("cone asked of a non-inflation")
        c_rep, proj = cokernel(fh)
        c_obj, psi, _psi_inv = self.identify_rep(c_rep)
        g_rep = psi.compose(proj)
        g = self.rep_blocks_to_mor(g_rep, f.dst, c_obj)
        delta = self._ses_class(fh, g_rep, f.src, c_obj)
        return Triangle(f.src, f.dst, c_obj, f, g, delta)

    def cocone_of(self, g: Mor) -> Triangle:
        gh = self.assemble_rep_mor(g)
        if not gh.is_epi():
            raise ValueError("cocone asked of a non-deflation")
        a_rep, incl = kernel(gh)
        a_obj, _phi, phi_inv = self.identify_rep(a_rep)
        f_rep = incl.compose(phi_inv)
        f = self.rep_blocks_to_mor(f_rep, a_obj, g.src)
        delta = self._ses_class(f_rep, gh, a_obj, g.dst)
        return Triangle(a_obj, g.src, g.dst, f, g, delta)

    def mor_is_iso(self, f: Mor) -> bool:
        if sorted(f.src.parts) != sorted(f.dst.parts):
            return False
        if f.src.is_zero():
            return True
        return self.assemble_rep_mor(f).is_iso()

    # -- window-algebra structure --------------------------------------

    def projective_coords(self) -> set[Coord]:
        return {projective_interval(self.alg, v) for v in self.alg.vertices}

    def injective_coords(self) -> set[Coord]:
        return {injective_interval(self.alg, v) for v in self.alg.vertices}


def _cofactor_through_epi(pre: RepMor, rhs: RepMor) -> RepMor:
    """Solve x ∘ pre = rhs for an epi ``pre`` (unique when it exists)."""
    from .oracle import solve_cofactor

    x = solve_cofactor(pre, rhs)
    if x is None:
        raise OracleError("map does not descend along the projection")
    return x


def _find_rep_iso(src: Rep, dst: Rep) -> RepMor:
    """Deterministic search for an isomorphism src → dst."""
    if src.is_zero() and dst.is_zero():
        return zero_mor(src, dst)
    basis = hom_basis(src, dst)
    if not basis:
        raise OracleError("no maps at all between purportedly equal modules")
    for t in range(1, 41):
        cand, power = basis[0], t
        for b in basis[1:]:
            cand = cand + b.scale(Q(power))
            power *= t
        if cand.is_iso():
            return cand
    rng = random.Random(0x5EED)
    for _ in range(200):
        cand = zero_mor(src, dst)
        for b in basis:
            cand = cand + b.scale(Q(rng.randint(-5, 5)))
        if cand.is_iso():
            return cand
    raise OracleError("no isomorphism found within search bounds")
