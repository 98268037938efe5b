"""Dense integer oracles for the operator identities, built directly from the
index formulas with exact rational arithmetic. Running the script checks the
values frozen in the C++ unit tests."""

from fractions import Fraction

import numpy as np


def difference(m):
    d = np.zeros((m, m), dtype=object)
    for i in range(m):
        d[i, i] = 1
        if i:
            d[i, i - 1] = -1
    return d


def difference_inverse(m):
    return np.tril(np.ones((m, m), dtype=object))


def s_rho(m, rho):
    s = np.zeros((m, m), dtype=object)
    for l in range(1, m + 1):
        if l >= rho:
            for c in range(l - rho + 1, l + 1):
                s[l - 1, c - 1] = Fraction(1, rho)
        else:
            for c in range(l + 1, m - rho + l + 1):
                s[l - 1, c - 1] = Fraction(-1, rho)
    return s


def delta_bar(m, rho):
    d = np.zeros((m, m), dtype=object)
    for l in range(1, m + 1):
        d[l - 1, l - 1] = 1
        j = (l - rho) % m
        if j != 0:
            d[l - 1, j - 1] -= 1
    return d


def subsample(m, rho):
    eta = m // rho
    d = np.zeros((eta, m), dtype=object)
    for l in range(1, eta + 1):
        d[l - 1, rho * l - 1] = 1
    return d


def nonzero(a):
    return [(i + 1, j + 1, a[i, j]) for i in range(a.shape[0]) for j in range(a.shape[1]) if a[i, j] != 0]


def entries(a):
    return [(i, j, int(v)) for i, j, v in nonzero(a)]


def commutator(m, rho):
    bar = delta_bar(m, rho)
    assert (s_rho(m, rho) * rho == bar.dot(difference_inverse(m))).all()
    return difference_inverse(m).dot(bar).dot(difference(m)) - bar


def defect(m, rho, r):
    d, s, dd = subsample(m, rho), s_rho(m, rho), difference(m)
    de = difference(m // rho)
    lhs, rhs = rho**r * d, d
    for _ in range(r):
        lhs = lhs.dot(s)
        rhs = de.dot(rhs)
    for _ in range(r):
        lhs = lhs.dot(dd)
    return lhs - rhs


def main():
    expected_commutator = [(1, 4, 1)] + [p for l in range(2, 7) for p in ((l, 4, 1), (l, 5, -1))]
    assert entries(commutator(6, 2)) == expected_commutator
    assert entries(commutator(5, 1)) == []
    assert entries(defect(12, 3, 2)) == [(1, 9, 1), (1, 11, -1)]
    assert entries(defect(6, 6, 2)) == [(1, 5, -1)]
    assert entries(defect(20, 4, 3)) == [(1, 12, -1), (1, 16, 3), (1, 18, -2), (2, 16, -1), (2, 18, 3), (2, 19, -2)]
    assert entries(defect(12, 2, 3)) == [(1, 8, -1), (1, 10, 3), (1, 11, -2)]
    for m in range(1, 13):
        for rho in range(1, m + 1):
            if m % rho == 0:
                assert entries(defect(m, rho, 1)) == []
    print("identity oracles match")


if __name__ == "__main__":
    main()
