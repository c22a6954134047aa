"""Operators on the resolution algebra: forms on L with formal
power-series coefficients in the B-duals.

The algebra has odd generators alpha_s (duals of the A-part of the
adapted basis, colour 0) and chi_k-forms (duals of the j(B)-part,
colour 1), plus even generators chi_k tracking the symmetric part.
The four operators delta/h/sigma/tau contract this onto the forms on A,
and the flat structure is completed by solving for the vertical
correction term X so that Q = -delta + d + X squares to zero.
"""

from fractions import Fraction

from .core import EVEN, Vec, WordAlgebra, mi_unit, mi_weight, mi_zero


class Weyl:

    def __init__(self, splitting, conn, trunc=5):
        self.sp = splitting
        self.conn = conn
        self.N = trunc
        m, r, dim = splitting.m, splitting.r, splitting.pair.dim
        self.m, self.r, self.dim = m, r, dim
        self.alg = WordAlgebra((m, r), r, trunc)

        # delta: chi_k (even) -> chi_k-form, a derivation of degree +1
        self._delta_images = {
            (EVEN, k): Vec({self.alg.odd_word(1, k): Fraction(1)})
            for k in range(r)}

        # covariant differential: structure-constant part on the form
        # generators, dual-connection part on the even generators
        self._d_images = {}
        for w in range(dim):
            img = Vec()
            for u in range(dim):
                for v in range(u + 1, dim):
                    c = splitting.struct_const(u, v).get(w)
                    if c:
                        word = self.alg.mul_words(self._form_word(u),
                                                  self._form_word(v))
                        sign, ww = word
                        img.iadd_term(ww, -c * sign)
            if img:
                self._d_images[self._form_gen(w)] = img
        for k in range(r):
            img = Vec()
            for l in range(dim):
                for b in range(r):
                    g = conn.gamma[l][b][k]
                    if g == 0:
                        continue
                    word = self.alg.mul_words(
                        self._form_word(l),
                        self.alg.even_word(mi_unit(r, b)))
                    sign, ww = word
                    img.iadd_term(ww, -g * sign)
            if img:
                self._d_images[(EVEN, k)] = img

        self.x_vert = None  # set by solve(): dict k -> Vec (coefficient of d_k)

    def _form_gen(self, l):
        return (0, l) if l < self.m else (1, l - self.m)

    def _form_word(self, l):
        return self.alg.odd_word(*self._form_gen(l))

    # -- basic operators -----------------------------------------------------

    def delta(self, x):
        return self.alg.derive(self._delta_images, 1, x)

    def d_l_nabla(self, x):
        return self.alg.derive(self._d_images, 1, x)

    def h(self, x):
        out = Vec(truncated=x.truncated)
        for w, c in x.items():
            v = len(w[1])
            if v == 0:
                continue
            J = w[-1]
            if mi_weight(J) + 1 > self.N:
                out.truncated = True
                continue
            f = Fraction(1, v + mi_weight(J))
            for k in range(self.r):
                contracted = self.alg.contract_odd(1, k, Vec({w: c * f}))
                if not contracted:
                    continue
                bump = Vec({self.alg.even_word(mi_unit(self.r, k)): Fraction(1)})
                out += self.alg.mul(contracted, bump)
        return out

    def sigma(self, x):
        out = Vec(truncated=x.truncated)
        for w, c in x.items():
            if not w[1] and mi_weight(w[-1]) == 0:
                out.iadd_term(w, c)
        return out

    def tau(self, x):
        """Inclusion of A-forms; in the adapted frame the pullback of an
        A-dual generator is the corresponding form generator, so on
        elements already written in this algebra tau is sigma's section."""
        return self.sigma(x)

    def project_a(self, x):
        """sigma followed by rewriting into bare A-form words."""
        out = Vec(truncated=x.truncated)
        for w, c in x.items():
            if not w[1] and mi_weight(w[-1]) == 0:
                out.iadd_term((w[0], ()), c)
        return out

    def include_a(self, x):
        """Bare A-form words into this algebra."""
        zero = mi_zero(self.r)
        return Vec({(w[0], (), zero): c for w, c in x.items()},
                   truncated=x.truncated)

    # -- vertical derivations --------------------------------------------------

    def vertical(self, coeffs, x, parity=1):
        """Derivation sum_k coeffs[k] d_k acting through the even generators."""
        images = {(EVEN, k): c for k, c in coeffs.items() if c}
        return self.alg.derive(images, parity, x)

    def restrict_weight(self, x, wmax):
        return Vec(((w, c) for w, c in x.items()
                    if mi_weight(w[-1]) <= wmax), truncated=x.truncated)

    # -- the correction term and the total differential -------------------------

    def solve(self):
        """Weight-graded fixed point for the vertical one-form X with
        h(X) = 0 making (-delta + d + X)^2 = 0; converges because each
        pass determines one more symmetric weight."""
        r = self.r
        X = {k: Vec() for k in range(r)}
        for _ in range(self.N + 2):
            newX = {}
            for k in range(r):
                gen = Vec({self.alg.even_word(mi_unit(r, k)): Fraction(1)})
                dgen = self.d_l_nabla(gen)
                rhs = self.d_l_nabla(dgen)
                rhs += self.d_l_nabla(X[k])
                rhs += self.vertical(X, dgen)
                rhs += self.vertical(X, X[k])
                newX[k] = self.h(rhs)
            if all(newX[k] == X[k] for k in range(r)):
                self.x_vert = newX
                return newX
            X = newX
        raise RuntimeError("correction-term iteration failed to stabilize; "
                           "weight grading should force convergence")

    def apply_x(self, x):
        if self.x_vert is None:
            self.solve()
        return self.vertical(self.x_vert, x)

    def rho(self, x):
        """The filtration-raising part of the total differential: d + X."""
        return self.d_l_nabla(x) + self.apply_x(x)

    def q_op(self, x):
        return -1 * self.delta(x) + self.rho(x)
