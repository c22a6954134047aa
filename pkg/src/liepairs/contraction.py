"""Contractions and homological perturbation.

A contraction packages a projection, an inclusion, a homotopy and the
two differentials.  Perturbing the big differential by a
filtration-raising operator yields new data by the usual geometric
series, which terminates here because the homotopy raises the
power-series weight by one at every pass.
"""


class Contraction:

    def __init__(self, sigma, tau, h, d_big, d_small, kmax):
        self.sigma = sigma
        self.tau = tau
        self.h = h
        self.d_big = d_big
        self.d_small = d_small
        self.kmax = kmax

    def perturb(self, rho):
        """New contraction for the perturbed differential d_big + rho."""
        kmax = self.kmax

        def tau_new(x):
            acc = self.tau(x)
            term = acc
            for _ in range(kmax):
                term = -1 * self.h(rho(term))
                if term.is_zero():
                    break
                acc = acc + term
            return acc

        def h_new(x):
            acc = self.h(x)
            term = acc
            for _ in range(kmax):
                term = -1 * self.h(rho(term))
                if term.is_zero():
                    break
                acc = acc + term
            return acc

        def d_small_new(x):
            return self.d_small(x) + self.sigma(rho(tau_new(x)))

        def d_big_new(x):
            return self.d_big(x) + rho(x)

        return Contraction(self.sigma, tau_new, h_new, d_big_new,
                           d_small_new, kmax)

    # -- identity checks, each returning the defect --------------------------

    def defect_projection(self, x):
        """sigma tau - id on a small element."""
        return self.sigma(self.tau(x)) - x

    def defect_homotopy(self, x):
        """id - tau sigma - (h d + d h) on a big element."""
        return (x - self.tau(self.sigma(x))
                - self.h(self.d_big(x)) - self.d_big(self.h(x)))

    def defect_side_sh(self, x):
        return self.sigma(self.h(x))

    def defect_side_ht(self, x):
        return self.h(self.tau(x))

    def defect_side_hh(self, x):
        return self.h(self.h(x))

    def defect_chain_sigma(self, x):
        """sigma d_big - d_small sigma on a big element."""
        return self.sigma(self.d_big(x)) - self.d_small(self.sigma(x))

    def defect_chain_tau(self, x):
        """d_big tau - tau d_small on a small element."""
        return self.d_big(self.tau(x)) - self.tau(self.d_small(x))


def t_contraction(T):
    """Unperturbed polyvector-side contraction; the perturbation is the
    lifted flat part of the differential.  The big differential is minus
    the letter-lowering map, so the homotopy carries a matching sign."""
    def d_small(x):
        return x * 0

    return Contraction(T.project_small, T.include_small,
                       lambda x: -1 * T.h(x),
                       lambda x: -1 * T.delta(x), d_small, T.N + 2)


def d_contraction(D):
    """Unperturbed polydifferential-side contraction; the perturbation is
    the lifted flat part plus the insertion coboundary."""

    def d_small(x):
        return x * 0

    return Contraction(D.project_small, D.include_small,
                       lambda x: -1 * D.h(x),
                       lambda x: -1 * D.delta(x), d_small, D.N + 2)


def t_perturbation(T):
    return T.rho


def d_perturbation(D):
    def rho(x):
        return D.rho(x) + D.d_h(x)
    return rho
