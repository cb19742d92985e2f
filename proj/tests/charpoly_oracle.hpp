// Test-only eigenvalue oracle, independent of the QR path in endex_core:
// expand the characteristic polynomial by the Faddeev-LeVerrier recursion
// and root it with the Durand-Kerner simultaneous iteration.

#ifndef ENDEX_TESTS_CHARPOLY_ORACLE_HPP
#define ENDEX_TESTS_CHARPOLY_ORACLE_HPP

#include <complex>
#include <vector>

#include "endex/numerics.hpp"

namespace endex_test {

// Coefficients of det(lambda I - A) = lambda^n + c[0] lambda^(n-1) + ... + c[n-1].
inline std::vector<double> characteristic_polynomial(const endex::Mat& A) {
    const int n = A.rows();
    std::vector<double> c(n);
    endex::Mat M(n, n);  // M_1 = A
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = A(i, j);

    for (int k = 1; k <= n; ++k) {
        double tr = 0.0;
        for (int i = 0; i < n; ++i) tr += M(i, i);
        c[k - 1] = -tr / k;
        if (k == n) break;
        endex::Mat next(n, n);  // M_{k+1} = A (M_k + c_k I)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int l = 0; l < n; ++l)
                    s += A(i, l) * (M(l, j) + (l == j ? c[k - 1] : 0.0));
                next(i, j) = s;
            }
        M = next;
    }
    return c;
}

inline std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& c) {
    using C = std::complex<double>;
    const int n = static_cast<int>(c.size());
    auto eval = [&](C z) {
        C p(1.0, 0.0);
        for (int k = 0; k < n; ++k) p = p * z + c[k];
        return p;
    };

    double scale = 1.0;
    for (int k = 0; k < n; ++k)
        scale = std::max(scale, std::pow(std::abs(c[k]), 1.0 / (k + 1)));

    std::vector<C> z(n);
    const C seed(0.4, 0.9);
    C zk(1.0, 0.0);
    for (int k = 0; k < n; ++k) {
        zk *= seed;
        z[k] = scale * zk;
    }

    for (int iter = 0; iter < 500; ++iter) {
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
            C denom(1.0, 0.0);
            for (int j = 0; j < n; ++j)
                if (j != k) denom *= (z[k] - z[j]);
            const C delta = eval(z[k]) / denom;
            z[k] -= delta;
            worst = std::max(worst, std::abs(delta));
        }
        if (worst < 1e-14 * std::max(1.0, scale)) break;
    }
    return z;
}

inline std::vector<std::complex<double>> eigenvalue_oracle(const endex::Mat& A) {
    return polynomial_roots(characteristic_polynomial(A));
}

}  // namespace endex_test

#endif  // ENDEX_TESTS_CHARPOLY_ORACLE_HPP
