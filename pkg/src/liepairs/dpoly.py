"""Vertical polydifferential operators on the resolution algebra.

An element of arity v is keyed by a pair (word, slots): the word is a
coefficient in the scalar resolution algebra and slots is a tuple of
v+1 multi-indices, the t-th slot acting on the t-th argument as the
constant-coefficient operator d^(slots[t]).  All coefficients are kept
pushed into the word; composing a slot past a coefficient uses the
higher Leibniz rule.

The graded structure: the Hochschild-type operator built from the
comultiplication, the insertion product, the Gerstenhaber bracket, and
the lift of the flat structure differential acting on slots through the
commutator with the vertical directions.
"""

from fractions import Fraction
import itertools

from .core import (
    EVEN, Vec, mi_add, mi_fact, mi_sub, mi_unit, mi_weight, mi_zero,
    sym_comul,
)
from .pbw import Pbw
from .weyl import Weyl


def multi_splits(J, parts):
    """All ways to write J as an ordered sum of `parts` multi-indices,
    with the multinomial coefficient J!/(M_0! ... )."""
    if parts == 1:
        return [((J,), 1)]
    out = []
    for K, M, c in sym_comul(J):
        for rest, c2 in multi_splits(M, parts - 1):
            out.append(((K,) + rest, c * c2))
    return out


class DPoly:

    def __init__(self, splitting, conn, trunc=5):
        self.sp = splitting
        self.conn = conn
        self.N = trunc
        m, r = splitting.m, splitting.r
        self.m, self.r = m, r
        self.W = Weyl(splitting, conn, trunc)
        self.W.solve()
        self.P = Pbw(splitting, conn, trunc)
        self.alg = self.W.alg
        # commutator of the flat differential with the vertical directions:
        # [rho, d_k] = sum_l c[k][l] d_l
        rho_chi = [self.W.rho(Vec({self.alg.even_word(mi_unit(r, l)):
                                   Fraction(1)})) for l in range(r)]
        self.c_vert = [[-1 * self._dchi(rho_chi[l], k) for l in range(r)]
                       for k in range(r)]
        self._q_slot_cache = {}

    def _dchi(self, x, k):
        return self.alg.derive({(EVEN, k): self.alg.one()}, 0, x)

    def deg(self, key):
        w, slots = key
        return self.alg.form_deg(w) + len(slots) - 1

    def unit_element(self):
        return Vec({(self.alg.unit_word(), (mi_zero(self.r),)):
                    Fraction(1)})

    def mult_element(self):
        z = mi_zero(self.r)
        return Vec({(self.alg.unit_word(), (z, z)): Fraction(1)})

    # -- coefficients sliding past a slot ---------------------------------------

    def _apply_partial(self, P, w):
        """The operator d^P applied to the coefficient word w: returns
        (falling-factorial coefficient, lowered word) or None."""
        I = w[-1]
        low = mi_sub(I, P)
        if low is None:
            return None
        c = 1
        for a, b in zip(I, P):
            for t in range(b):
                c *= a - t
        return Fraction(c), w[:-1] + (low,)

    def _slot_into(self, M, w2, K):
        """d^M composed with the coefficient-carrying slot (w2, d^K):
        Vec over (word, slot) pairs via the higher Leibniz rule."""
        out = []
        for Ptup, rest, cc in sym_comul(M):
            hit = self._apply_partial(Ptup, w2)
            if hit is None:
                continue
            c, w = hit
            if c == 0:
                continue
            out.append((w, mi_add(rest, K), cc * c))
        return out

    # -- word-wise operators from the scalar resolution ---------------------------

    def _wordwise(self, op, x):
        out = Vec(truncated=x.truncated)
        for (w, slots), c in x.items():
            img = op(Vec({w: c}))
            out.truncated = out.truncated or img.truncated
            for w2, c2 in img.items():
                out.iadd_term((w2, slots), c2)
        return out

    def delta(self, x):
        return self._wordwise(self.W.delta, x)

    def h(self, x):
        return self._wordwise(self.W.h, x)

    def restrict_weight(self, x, wmax):
        return Vec(((k, c) for k, c in x.items()
                    if mi_weight(k[0][-1]) <= wmax), truncated=x.truncated)

    # -- the lifted flat differential ---------------------------------------------

    def _q_slot(self, J):
        """Action of the flat differential on a slot monomial inside the
        enveloping algebra: coefficients produced by the commutator are
        commuted to the front past the remaining letters, which costs
        higher Leibniz terms.  Returns a Vec over (word, slot) pairs."""
        if J in self._q_slot_cache:
            return self._q_slot_cache[J]
        out = Vec()
        k0 = next((k for k, e in enumerate(J) if e), None)
        if k0 is not None:
            Jm = mi_sub(J, mi_unit(self.r, k0))
            for l in range(self.r):
                cv = self.c_vert[k0][l]
                for w, c in cv.items():
                    out.iadd_term((w, mi_add(Jm, mi_unit(self.r, l))), c)
            for (w, M), c in self._q_slot(Jm).items():
                dw = self._dchi(Vec({w: c}), k0)
                for w2, c2 in dw.items():
                    out.iadd_term((w2, M), c2)
                out.iadd_term((w, mi_add(M, mi_unit(self.r, k0))), c)
        self._q_slot_cache[J] = out
        return out

    def rho(self, x):
        out = Vec(truncated=x.truncated)
        for (w, slots), c in x.items():
            img = self.W.rho(Vec({w: c}))
            out.truncated = out.truncated or img.truncated
            for w2, c2 in img.items():
                out.iadd_term((w2, slots), c2)
            base = -1 if self.alg.form_deg(w) % 2 else 1
            for t, J in enumerate(slots):
                for (cw, newJ), c2 in self._q_slot(J).items():
                    coef = self.alg.mul(Vec({w: c * base}),
                                        Vec({cw: c2}))
                    out.truncated = out.truncated or coef.truncated
                    for w3, c3 in coef.items():
                        out.iadd_term(
                            (w3, slots[:t] + (newJ,) + slots[t + 1:]), c3)
        return out

    def q_op(self, x):
        return -1 * self.delta(x) + self.rho(x)

    # -- the Hochschild-type operator ----------------------------------------------

    def d_h(self, x):
        """Insertion coboundary on the slots, with the alternating sign
        of the coefficient form degree in front."""
        zero = mi_zero(self.r)
        out = Vec(truncated=x.truncated)
        for (w, slots), c in x.items():
            pref = -1 if self.alg.form_deg(w) % 2 else 1
            k = len(slots)
            out.iadd_term((w, (zero,) + slots), c * pref)
            for i in range(1, k + 1):
                s = -pref if i % 2 else pref
                for K, M, mult in sym_comul(slots[i - 1]):
                    out.iadd_term(
                        (w, slots[:i - 1] + (K, M) + slots[i:]),
                        c * s * mult)
            s = -pref if (k + 1) % 2 else pref
            out.iadd_term((w, slots + (zero,)), c * s)
        return out

    # -- insertion product and Gerstenhaber bracket ----------------------------------

    def star(self, x, y):
        out = Vec(truncated=x.truncated or y.truncated)
        for (w1, S1), c1 in x.items():
            u = len(S1) - 1
            for (w2, S2), c2 in y.items():
                v = len(S2) - 1
                g2 = self.alg.form_deg(w2)
                for k in range(u + 1):
                    sgn = -1 if (k * v + g2 * u + u * v) % 2 else 1
                    for parts, mult in multi_splits(S1[k], v + 1):
                        for w2b, J0, c0 in self._slot_into(parts[0], w2,
                                                           S2[0]):
                            word = self.alg.mul(Vec({w1: Fraction(1)}),
                                                Vec({w2b: Fraction(1)}))
                            out.truncated = out.truncated or word.truncated
                            mid = (J0,) + tuple(
                                mi_add(parts[i], S2[i])
                                for i in range(1, v + 1))
                            slots = S1[:k] + mid + S1[k + 1:]
                            for w3, c3 in word.items():
                                out.iadd_term(
                                    (w3, slots),
                                    c1 * c2 * c0 * mult * c3 * sgn)
        return out

    def gerst(self, x, y):
        out = self.star(x, y)
        for (w1, S1), c1 in x.items():
            n1 = self.deg((w1, S1))
            for (w2, S2), c2 in y.items():
                n2 = self.deg((w2, S2))
                s = -1 if (n1 * n2) % 2 else 1
                out -= s * self.star(Vec({(w2, S2): c2}),
                                     Vec({(w1, S1): c1}))
        return out

    # -- evaluation as an operator ----------------------------------------------------

    def evaluate(self, x, args):
        """Apply an element of arity v to v+1 power-series arguments
        (each a Vec over multi-indices); the value is a Vec of words."""
        out = Vec(truncated=x.truncated)
        for (w, slots), c in x.items():
            if len(slots) != len(args):
                continue
            acc = Vec({w: c})
            for J, arg in zip(slots, args):
                val = Vec(truncated=arg.truncated)
                for K, ck in arg.items():
                    low = mi_sub(K, J)
                    if low is None:
                        continue
                    f = 1
                    for a, b in zip(K, J):
                        for t in range(b):
                            f *= a - t
                    val.iadd_term(low, ck * f)
                acc = self.alg.mul(acc, Vec(
                    {self.alg.even_word(K): ck for K, ck in val.items()},
                    truncated=val.truncated))
            out += acc
        return out

    # -- projection to the small complex -----------------------------------------------

    def project_small(self, x):
        """Coefficient words with no chi content survive; each slot is
        symmetrized into a class of the enveloping-algebra quotient."""
        out = Vec(truncated=x.truncated)
        for (w, slots), c in x.items():
            if w[1] or mi_weight(w[-1]) != 0:
                continue
            acc = Vec({(): c})
            for J in slots:
                img = self.P.pbw(Vec({J: Fraction(1)}))
                nxt = Vec()
                for pre, cp in acc.items():
                    for K, ck in img.items():
                        nxt.iadd_term(pre + (K,), cp * ck)
                acc = nxt
            for cls, cc in acc.items():
                out.iadd_term(((w[0], ()), cls), cc)
        return out

    def include_small(self, x):
        zero = mi_zero(self.r)
        out = Vec(truncated=x.truncated)
        for (fw, cls), c in x.items():
            acc = Vec({(): c})
            for K in cls:
                img = self.P.pbw_inv(Vec({K: Fraction(1)}))
                nxt = Vec()
                for pre, cp in acc.items():
                    for J, cj in img.items():
                        nxt.iadd_term(pre + (J,), cp * cj)
                acc = nxt
            for slots, cc in acc.items():
                out.iadd_term(((fw[0], (), zero), slots), cc)
        return out

    def dh_small(self, x):
        """The same insertion coboundary on the small complex, where the
        comultiplication of a class is the shuffle comultiplication."""
        zero = mi_zero(self.r)
        out = Vec(truncated=x.truncated)
        for (fw, cls), c in x.items():
            pref = -1 if len(fw[0]) % 2 else 1
            k = len(cls)
            out.iadd_term((fw, (zero,) + cls), c * pref)
            for i in range(1, k + 1):
                s = -pref if i % 2 else pref
                for K, M, mult in sym_comul(cls[i - 1]):
                    out.iadd_term((fw, cls[:i - 1] + (K, M) + cls[i:]),
                                  c * s * mult)
            s = -pref if (k + 1) % 2 else pref
            out.iadd_term((fw, cls + (zero,)), c * s)
        return out
