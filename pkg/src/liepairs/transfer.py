"""Homotopy transfer of the big-side brackets to the small complexes.

Both big complexes are differential graded Lie algebras for a shifted
degree (one less than the count of odd letters on the polyvector side;
form degree plus arity on the polydifferential side).  Transferring
along a perturbed contraction produces graded-symmetric higher brackets
on the small complex, built from rooted binary trees: the inclusion at
the leaves, the homotopy on internal edges, the projection at the root,
and the suspended bracket at the nodes.  The recursion over trees is
the usual one grouped by the partition of the leaf set at the top node.

Internal edges carry minus the homotopy of the contraction record: the
structure identities pair the unary bracket with the higher ones only
when the homotopy convention is dh + hd = incl proj - id, so the sign
is absorbed here once instead of flipping the contraction's homotopy.
With the homotopy as-is the binary bracket still satisfies the Leibniz
and Jacobi identities, but the mixed identities coupling the unary and
ternary brackets fail whenever the small differential is nonzero.
"""

import itertools

from .core import Vec


def koszul_sign(degs, left, right):
    """Sign for reordering positions 0..n-1 into left + right, with the
    given degrees; a transposition of entries of degrees p, q costs
    (-1)^(p q)."""
    e = 0
    for a in right:
        for b in left:
            if a < b:
                e += degs[a] * degs[b]
    return -1 if e % 2 else 1


class Transfer:
    """L-infinity brackets on a small complex.

    sigma, tau, h, d_small come from a perturbed contraction; bracket is
    the big-side binary bracket; big_sdeg and small_sdeg give the shifted
    degree of a big or small basis key.
    """

    def __init__(self, sigma, tau, h, d_small, bracket, big_sdeg,
                 small_sdeg):
        self.sigma = sigma
        self.tau = tau
        self.h = h
        self.d_small = d_small
        self.bracket = bracket
        self.big_sdeg = big_sdeg
        self.small_sdeg = small_sdeg
        self._f_cache = {}
        self._b_cache = {}
        self._lam_cache = {}

    def _bracket_susp(self, u, v):
        """The bracket pulled through the suspension: an extra sign from
        the shifted degree of the first argument makes it symmetric for
        the once-more-shifted degrees."""
        out = Vec(truncated=u.truncated or v.truncated)
        for par in (0, 1):
            part = Vec(((k, c) for k, c in u.items()
                        if self.big_sdeg(k) % 2 == par),
                       truncated=u.truncated)
            if part.is_zero() and not part.truncated:
                continue
            img = self.bracket(part, v)
            if par:
                img = -1 * img
            out += img
        return out

    def _F(self, keys):
        if keys in self._f_cache:
            return self._f_cache[keys]
        if len(keys) == 1:
            out = self.tau(Vec({keys[0]: 1}))
        else:
            out = -1 * self.h(self._B(keys))
        self._f_cache[keys] = out
        return out

    def _B(self, keys):
        if keys in self._b_cache:
            return self._b_cache[keys]
        n = len(keys)
        degs = [self.small_sdeg(k) + 1 for k in keys]
        out = Vec()
        for ssize in range(0, n - 1):
            for s_rest in itertools.combinations(range(1, n), ssize):
                left = (0,) + s_rest
                right = tuple(i for i in range(1, n) if i not in s_rest)
                eps = koszul_sign(degs, left, right)
                u = self._F(tuple(keys[i] for i in left))
                v = self._F(tuple(keys[i] for i in right))
                out += eps * self._bracket_susp(u, v)
        self._b_cache[keys] = out
        return out

    def lam_keys(self, keys):
        """Bracket value on a tuple of small basis keys."""
        if keys in self._lam_cache:
            return self._lam_cache[keys]
        if len(keys) == 1:
            out = self.d_small(Vec({keys[0]: 1}))
        else:
            out = self.sigma(self._B(keys))
        self._lam_cache[keys] = out
        return out

    def lam(self, args):
        """Multilinear extension of lam_keys to a tuple of Vecs."""
        out = Vec()
        for combo in itertools.product(*[list(a.items()) for a in args]):
            keys = tuple(k for k, _ in combo)
            c = 1
            for _, ci in combo:
                c *= ci
            out += c * self.lam_keys(keys)
        return out

    def jacobi_defect(self, keys):
        """The arity-n structure identity evaluated on small basis keys:
        the sum over all splittings of the inputs of the (n-p+1)-bracket
        applied to a p-bracket, with unshuffle Koszul signs.  Zero for a
        genuine structure."""
        n = len(keys)
        degs = [self.small_sdeg(k) + 1 for k in keys]
        out = Vec()
        for p in range(1, n + 1):
            for left in itertools.combinations(range(n), p):
                right = tuple(i for i in range(n) if i not in left)
                eps = koszul_sign(degs, left, right)
                inner = self.lam_keys(tuple(keys[i] for i in left))
                for k2, c2 in inner.items():
                    rest = tuple(keys[i] for i in right)
                    out += (eps * c2) * self.lam_keys((k2,) + rest)
        return out


def t_transfer(T, pt):
    """Transfer record for the polyvector side."""
    def big_sdeg(w):
        return len(w[0]) + len(w[1]) + len(w[2]) - 1

    def small_sdeg(key):
        fw, xs = key
        return len(fw[0]) + len(xs) - 1

    return Transfer(pt.sigma, pt.tau, pt.h, pt.d_small, T.schouten,
                    big_sdeg, small_sdeg)


def d_transfer(D, pd):
    """Transfer record for the polydifferential side."""
    def small_sdeg(key):
        fw, cls = key
        return len(fw[0]) + len(cls) - 1

    return Transfer(pd.sigma, pd.tau, pd.h, pd.d_small, D.gerst,
                    D.deg, small_sdeg)
