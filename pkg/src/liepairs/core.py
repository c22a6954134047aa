"""Sparse exact-rational multilinear algebra over graded words.

A *word* is a basis monomial of a graded-commutative algebra generated by
a few families ("colours") of odd degree-1 generators together with one
family of even generators whose powers are tracked by a multi-index.
Words are kept in canonical form: odd indices strictly increasing inside
each colour, colours in a fixed order, even exponents last.  Every sign
is computed from the parity of the sorting permutation, so equality of
elements is plain dict equality.

Scalars are fractions.Fraction throughout; no floats anywhere.
"""

from fractions import Fraction
from math import factorial, comb
import itertools


# ---------------------------------------------------------------------------
# multi-indices (exponent vectors J in N^r)

def mi_zero(r):
    return (0,) * r


def mi_unit(r, k):
    return tuple(1 if i == k else 0 for i in range(r))


def mi_add(J, K):
    return tuple(a + b for a, b in zip(J, K))


def mi_sub(J, K):
    """Componentwise difference, or None if any entry would go negative."""
    out = tuple(a - b for a, b in zip(J, K))
    if any(a < 0 for a in out):
        return None
    return out


def mi_weight(J):
    return sum(J)


def mi_fact(J):
    out = 1
    for a in J:
        out *= factorial(a)
    return out


def mi_le(J, K):
    return all(a <= b for a, b in zip(J, K))


def mi_binom(J, K):
    """Product of componentwise binomials C(J_i, K_i)."""
    out = 1
    for a, b in zip(J, K):
        out *= comb(a, b)
    return out


def mi_all(r, weight):
    """All multi-indices of length r with |J| = weight."""
    if r == 0:
        if weight == 0:
            yield ()
        return
    if r == 1:
        yield (weight,)
        return
    for first in range(weight + 1):
        for rest in mi_all(r - 1, weight - first):
            yield (first,) + rest


def mi_upto(r, max_weight):
    for w in range(max_weight + 1):
        yield from mi_all(r, w)


def mi_below(J):
    """All K with K <= J componentwise."""
    return itertools.product(*[range(a + 1) for a in J])


def sym_comul(J):
    """All splittings J = K + M with multiplicity J!/(K! M!).

    Returns a list of (K, M, coefficient) triples; coefficient is an int.
    """
    out = []
    for K in mi_below(J):
        K = tuple(K)
        out.append((K, mi_sub(J, K), mi_binom(J, K)))
    return out


def pair_dual(K, J):
    """Dual pairing of the monomial chi^K against the operator d^J: K! if K=J."""
    return Fraction(mi_fact(K)) if K == J else Fraction(0)


def sort_sign(seq):
    """Parity of the permutation sorting seq; (0, None) on repeated entries."""
    lst = list(seq)
    sign = 1
    for i in range(len(lst)):
        for j in range(i + 1, len(lst)):
            if lst[i] == lst[j]:
                return 0, None
            if lst[i] > lst[j]:
                sign = -sign
    return sign, tuple(sorted(lst))


# ---------------------------------------------------------------------------
# sparse vectors

class Vec(dict):
    """Dictionary key -> Fraction with zero values automatically removed.

    The `truncated` flag records that some term was dropped for exceeding
    the weight cap, so callers can refuse to assert identities whose two
    sides did not both survive truncation.
    """

    def __init__(self, data=(), truncated=False):
        super().__init__()
        self.truncated = truncated
        self.__iadd__(data)

    def __getitem__(self, key):
        return self.get(key, Fraction(0))

    def iadd_term(self, key, coef):
        if coef == 0:
            return self
        new = self.get(key, 0) + coef
        if new == 0:
            del self[key]
        else:
            self[key] = Fraction(new)
        return self

    def __iadd__(self, other):
        if isinstance(other, Vec):
            self.truncated = self.truncated or other.truncated
        if isinstance(other, dict):
            other = other.items()
        for k, c in other:
            self.iadd_term(k, Fraction(c))
        return self

    def __add__(self, other):
        out = Vec(self, truncated=self.truncated)
        out += other
        return out

    def __isub__(self, other):
        if isinstance(other, Vec):
            self.truncated = self.truncated or other.truncated
        for k, c in other.items():
            self.iadd_term(k, -c)
        return self

    def __sub__(self, other):
        out = Vec(self, truncated=self.truncated)
        out -= other
        return out

    def __neg__(self):
        return self * -1

    def __mul__(self, n):
        if n == 0:
            return Vec(truncated=self.truncated)
        return Vec(((k, c * n) for k, c in self.items()),
                   truncated=self.truncated)

    __rmul__ = __mul__

    def iadd_scaled(self, coef, other):
        self.truncated = self.truncated or other.truncated
        if coef == 0:
            return self
        for k, c in other.items():
            self.iadd_term(k, c * coef)
        return self

    def is_zero(self):
        return not self


# ---------------------------------------------------------------------------
# the word algebra

EVEN = 'even'


class WordAlgebra:
    """Graded-commutative algebra of words with truncated even part.

    odd_counts -- number of odd generators in each colour, in colour order
    n_even     -- number of even generators (multi-index exponents)
    trunc      -- cap on the even weight; higher terms are dropped/flagged
    """

    def __init__(self, odd_counts, n_even, trunc):
        self.odd_counts = tuple(odd_counts)
        self.n_colours = len(self.odd_counts)
        self.n_even = n_even
        self.trunc = trunc

    # -- words ------------------------------------------------------------

    def unit_word(self):
        return tuple(() for _ in self.odd_counts) + (mi_zero(self.n_even),)

    def one(self, coef=1):
        return Vec({self.unit_word(): Fraction(coef)})

    def odd_word(self, colour, idx):
        parts = [()] * self.n_colours
        parts[colour] = (idx,)
        return tuple(parts) + (mi_zero(self.n_even),)

    def even_word(self, J):
        return tuple(() for _ in self.odd_counts) + (tuple(J),)

    def make_word(self, odd_parts, J):
        return tuple(tuple(p) for p in odd_parts) + (tuple(J),)

    def odd_seq(self, w):
        """The word's odd generators as a sorted list of (colour, index)."""
        return [(c, i) for c in range(self.n_colours) for i in w[c]]

    def word_from_seq(self, gens, J):
        parts = [[] for _ in self.odd_counts]
        for c, i in gens:
            parts[c].append(i)
        return tuple(tuple(p) for p in parts) + (tuple(J),)

    def form_deg(self, w):
        return sum(len(w[c]) for c in range(self.n_colours))

    def weight(self, w):
        return mi_weight(w[-1])

    def words(self, max_weight=None, colour_caps=None):
        """Enumerate all basis words with even weight <= max_weight."""
        mw = self.trunc if max_weight is None else max_weight
        ranges = []
        for c, n in enumerate(self.odd_counts):
            cap = n if colour_caps is None else min(n, colour_caps[c])
            subs = [t for k in range(cap + 1)
                    for t in itertools.combinations(range(n), k)]
            ranges.append(subs)
        for parts in itertools.product(*ranges):
            for J in mi_upto(self.n_even, mw):
                yield parts + (J,)

    # -- multiplication ----------------------------------------------------

    def mul_words(self, w1, w2):
        """(sign, product word) or None when an odd generator repeats
        or the even weight exceeds the cap ('overflow' sentinel)."""
        J = mi_add(w1[-1], w2[-1])
        if self.trunc is not None and mi_weight(J) > self.trunc:
            return 'overflow'
        sign, merged = sort_sign(self.odd_seq(w1) + self.odd_seq(w2))
        if sign == 0:
            return None
        return sign, self.word_from_seq(merged, J)

    def mul(self, x, y):
        out = Vec(truncated=x.truncated or y.truncated)
        for w1, c1 in x.items():
            for w2, c2 in y.items():
                r = self.mul_words(w1, w2)
                if r is None:
                    continue
                if r == 'overflow':
                    out.truncated = True
                    continue
                sign, w = r
                out.iadd_term(w, c1 * c2 * sign)
        return out

    def mul_many(self, *xs):
        out = self.one()
        for x in xs:
            out = self.mul(out, x)
        return out

    def power(self, x, n):
        out = self.one()
        for _ in range(n):
            out = self.mul(out, x)
        return out

    # -- derivations and morphisms ------------------------------------------

    def derive(self, images, parity, x):
        """Extend generator images to a derivation of the stated parity.

        images maps (colour, index) or (EVEN, index) to a Vec; missing
        generators map to zero.  For odd `parity` the Leibniz rule picks up
        a sign per odd generator jumped over.
        """
        out = Vec(truncated=x.truncated)
        for w, coef in x.items():
            gens = self.odd_seq(w)
            J = w[-1]
            for t, g in enumerate(gens):
                img = images.get(g)
                if img is None or not img:
                    continue
                sgn = -1 if parity % 2 and t % 2 else 1
                pre = self.word_from_seq(gens[:t], mi_zero(self.n_even))
                suf = self.word_from_seq(gens[t + 1:], J)
                term = self.mul(self.mul(Vec({pre: coef * sgn}), img),
                                Vec({suf: Fraction(1)}))
                out += term
            base = -1 if parity % 2 and len(gens) % 2 else 1
            for k in range(self.n_even):
                if J[k] == 0:
                    continue
                img = images.get((EVEN, k))
                if img is None or not img:
                    continue
                front = self.word_from_seq(gens, mi_zero(self.n_even))
                rest = self.even_word(mi_sub(J, mi_unit(self.n_even, k)))
                term = self.mul(self.mul(Vec({front: coef * base * J[k]}), img),
                                Vec({rest: Fraction(1)}))
                out += term
        return out

    def substitute(self, images, x):
        """Extend generator images to an algebra endomorphism.

        Generators absent from images are sent to themselves.  Images must
        have the same parity as the generator they replace.
        """
        out = Vec(truncated=x.truncated)
        for w, coef in x.items():
            acc = self.one(coef)
            for g in self.odd_seq(w):
                img = images.get(g)
                if img is None:
                    img = Vec({self.odd_word(*g): Fraction(1)})
                acc = self.mul(acc, img)
            J = w[-1]
            for k in range(self.n_even):
                for _ in range(J[k]):
                    img = images.get((EVEN, k))
                    if img is None:
                        img = Vec({self.even_word(mi_unit(self.n_even, k)): Fraction(1)})
                    acc = self.mul(acc, img)
            out += acc
        return out

    def contract_odd(self, colour, idx, x):
        """Interior product with the dual of one odd generator."""
        return self.derive({(colour, idx): self.one()}, 1, x)


# ---------------------------------------------------------------------------
# exact dense linear algebra (small matrices of Fractions)

def rref(rows):
    """Reduced row echelon form; returns (new_rows, pivot_columns)."""
    rows = [list(map(Fraction, r)) for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = Fraction(1) / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    return rows, pivots


def mat_rank(rows):
    return len(rref(rows)[1])


def kernel_basis(rows, ncols):
    """Basis of the right kernel of the matrix given by `rows`."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)]
                for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve_coords(basis_rows, vector):
    """Coordinates of `vector` in the span of basis_rows, or None."""
    if not basis_rows:
        return [] if all(v == 0 for v in vector) else None
    n = len(vector)
    aug = [[Fraction(basis_rows[i][c]) for i in range(len(basis_rows))] +
           [Fraction(vector[c])] for c in range(n)]
    red, pivots = rref(aug)
    k = len(basis_rows)
    if k in pivots:
        return None
    coords = [Fraction(0)] * k
    for r, pc in enumerate(pivots):
        coords[pc] = red[r][k]
    return coords


def mat_mul(a, b):
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0))
             for col in zip(*b)] for row in a]


def mat_vec(a, v):
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def mat_inv(a):
    n = len(a)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix not invertible")
    return [row[n:] for row in red]


def identity_matrix(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
