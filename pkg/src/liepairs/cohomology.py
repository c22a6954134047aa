"""Cohomology of the small complexes by exact linear algebra, and the
structures it inherits.

A small complex is handed over as a finite ordered list of basis keys,
a differential acting on Vecs over those keys, and a degree function.
Kernels and images are computed degree by degree over the rationals;
representatives are kernel vectors reduced modulo the image, kept in
echelon form so that projection to cohomology coordinates is plain
back-substitution.  The binary bracket and the product descend to
cohomology, and two pipelines can be compared there after transporting
representatives.
"""

from fractions import Fraction
import itertools

from .core import Vec, mi_upto, rref
from .liepair import a_form_algebra, d_a_bott


class Cohomology:

    def __init__(self, keys, diff, deg, square_check_max=None):
        self.keys = list(keys)
        self.diff = diff
        self.deg = deg
        self.square_check_max = square_check_max
        self.by_deg = {}
        for key in self.keys:
            self.by_deg.setdefault(deg(key), []).append(key)
        self.degrees = sorted(self.by_deg)
        self._index = {n: {k: i for i, k in enumerate(ks)}
                       for n, ks in self.by_deg.items()}
        # differential d_n as rows indexed by the degree-n basis
        self._rows = {}
        for n in self.degrees:
            rows = []
            for key in self.by_deg[n]:
                img = diff(Vec({key: 1}))
                rows.append(self._coords(img, n + 1))
            self._rows[n] = rows
        self._check_square_zero()
        # image echelon rows sitting in each degree, from one below
        self._image = {}
        for n in self.degrees:
            rows = self._rows.get(n - 1, [])
            red, piv = rref([r for r in rows if any(r)] or
                            [[Fraction(0)] * len(self.by_deg[n])])
            self._image[n] = ([red[i] for i in range(len(piv))], piv)
        # kernel of d_n, then representatives modulo the image
        self.reps = {}
        for n in self.degrees:
            ker = self._kernel(n)
            im_rows, im_piv = self._image[n]
            reduced = []
            for v in ker:
                w = self._reduce(v, im_rows, im_piv)
                if any(w):
                    reduced.append(w)
            red, piv = rref(reduced or [[Fraction(0)] *
                                        len(self.by_deg[n])])
            self.reps[n] = ([red[i] for i in range(len(piv))], piv)

    # -- coordinate plumbing ----------------------------------------------------

    def _coords(self, x, n):
        idx = self._index.get(n, {})
        out = [Fraction(0)] * len(self.by_deg.get(n, []))
        for k, c in x.items():
            if k not in idx:
                raise ValueError("element leaves the complex window")
            out[idx[k]] = Fraction(c)
        return out

    def _to_vec(self, coords, n):
        return Vec({k: c for k, c in zip(self.by_deg[n], coords) if c})

    def _check_square_zero(self):
        for n in self.degrees:
            if (self.square_check_max is not None
                    and n > self.square_check_max):
                continue
            for key in self.by_deg[n]:
                dd = self.diff(self.diff(Vec({key: 1})))
                if not dd.is_zero():
                    raise ValueError("differential does not square to zero")

    def _kernel(self, n):
        rows = self._rows[n]
        dim = len(self.by_deg[n])
        if not rows:
            return []
        cols = [[rows[i][j] for i in range(dim)]
                for j in range(len(rows[0]))]
        red, piv = rref(cols or [[Fraction(0)] * dim])
        out = []
        for j in range(dim):
            if j in piv:
                continue
            v = [Fraction(0)] * dim
            v[j] = Fraction(1)
            for i, p in enumerate(piv):
                v[p] = -red[i][j]
            out.append(v)
        return out

    @staticmethod
    def _reduce(v, rows, piv):
        v = list(v)
        for row, p in zip(rows, piv):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    # -- the public face ----------------------------------------------------------

    def dims(self):
        return {n: len(self.reps[n][0]) for n in self.degrees}

    def rep(self, n, i):
        return self._to_vec(self.reps[n][0][i], n)

    def is_coboundary(self, x, n):
        v = self._coords(x, n)
        rows, piv = self._image[n]
        return not any(self._reduce(v, rows, piv))

    def project(self, x, n):
        """Cohomology coordinates of a cocycle of degree n."""
        v = self._reduce(self._coords(x, n), *self._image[n])
        rows, piv = self.reps[n]
        out = []
        for row, p in zip(rows, piv):
            c = v[p]
            out.append(c)
            v = [a - c * b for a, b in zip(v, row)]
        if any(v):
            raise ValueError("not a cocycle modulo the image")
        return out


def t_complex_keys(sp):
    fa = a_form_algebra(sp.pair)
    out = []
    for fw in fa.words(max_weight=0):
        for q in range(sp.r + 1):
            for xs in itertools.combinations(range(sp.r), q):
                out.append((fw, xs))
    return out


def t_cohomology(sp):
    """Cohomology of the polyvector small complex (finite), graded by
    the shifted total degree."""
    keys = t_complex_keys(sp)

    def deg(key):
        fw, xs = key
        return len(fw[0]) + len(xs) - 1

    return Cohomology(keys, lambda x: d_a_bott(sp, x), deg)


def d_complex_keys(sp, max_weight, max_arity):
    fa = a_form_algebra(sp.pair)
    out = []
    for fw in fa.words(max_weight=0):
        for arity in range(1, max_arity + 1):
            for cls in itertools.product(list(mi_upto(sp.r, max_weight)),
                                         repeat=arity):
                if sum(sum(J) for J in cls) <= max_weight:
                    out.append((fw, cls))
    return out


def d_cohomology(sp, d_small, max_weight=2, max_arity=None):
    """Cohomology of the polydifferential small complex restricted to
    the finite window of bounded class weight and arity.  The weight
    bound cuts out a genuine subcomplex (the differential never raises
    the total class weight); the arity cap does not, so the differential
    is clamped to the window and only the degrees listed in
    `valid_degrees` (where the clamp is inactive) are meaningful."""
    if max_arity is None:
        max_arity = sp.m + 3
    keys = d_complex_keys(sp, max_weight, max_arity)
    keyset = set(keys)

    def deg(key):
        fw, cls = key
        return len(fw[0]) + len(cls) - 1

    def clamped(x):
        return Vec(((k, c) for k, c in d_small(x).items() if k in keyset))

    coh = Cohomology(keys, clamped, deg,
                     square_check_max=max_arity - 3)
    coh.valid_degrees = [n for n in coh.degrees if n <= max_arity - 2]
    return coh


def t_cup(T, pt):
    """Chain-level product on the polyvector small complex, transferred
    from the big wedge through the perturbed contraction; raises the
    shifted degree by one."""
    def cup(x, y):
        return pt.sigma(T.alg.mul(pt.tau(x), pt.tau(y)))
    return cup


def induced_table(coh, op, n1, n2, n_out):
    """Tables of a chain-level binary operation on cohomology: entry
    (i, j) is the projected value on the chosen representatives."""
    out = {}
    for i in range(len(coh.reps[n1][0])):
        for j in range(len(coh.reps[n2][0])):
            val = op(coh.rep(n1, i), coh.rep(n2, j))
            out[(i, j)] = coh.project(val, n_out)
    return out


def compare_on_cohomology(coh1, op1, coh2, op2, transport, n1, n2, n_out):
    """Transport the first representatives, project both operation
    values in the second cohomology, and collect disagreements."""
    witnesses = []
    for i in range(len(coh1.reps[n1][0])):
        for j in range(len(coh1.reps[n2][0])):
            r1 = coh1.rep(n1, i)
            r2 = coh1.rep(n2, j)
            lhs = coh2.project(transport(op1(r1, r2)), n_out)
            rhs = coh2.project(op2(transport(r1), transport(r2)), n_out)
            if lhs != rhs:
                witnesses.append(((n1, i), (n2, j), lhs, rhs))
    return witnesses
