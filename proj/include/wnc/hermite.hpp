#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace wnc {

inline constexpr std::size_t kHermiteMaxOrder = 512;

/// Probabilists' Hermite polynomial h_n(x):
/// h_0 = 1, h_1 = x, h_{n+1} = x h_n - n h_{n-1}.
inline double hermite_poly(std::size_t n, double x) {
    if (n > kHermiteMaxOrder)
        throw std::invalid_argument("hermite_poly: order beyond configured maximum");
    if (n == 0) return 1.0;
    double prev = 1.0, cur = x;
    for (std::size_t m = 1; m < n; ++m) {
        double next = x * cur - double(m) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// h_0..h_n at x in one recurrence pass.
inline void hermite_poly_all(std::size_t n, double x, std::vector<double>& out) {
    out.resize(n + 1);
    out[0] = 1.0;
    if (n == 0) return;
    out[1] = x;
    for (std::size_t m = 1; m < n; ++m) out[m + 1] = x * out[m] - double(m) * out[m - 1];
}

/// Hermite functions e_1..e_K at x, by the normalized three-term recurrence
/// on the functions themselves (no factorials, bounded values):
///   e_1 = pi^{-1/4} e^{-x^2/2},  e_2 = sqrt(2) x e_1,
///   e_{k+1} = x sqrt(2/k) e_k - sqrt((k-1)/k) e_{k-1}.
/// Orthonormal in L^2(R).
inline void hermite_function_all(std::size_t K, double x, std::vector<double>& out) {
    out.resize(K);
    if (K == 0) return;
    double e1 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    out[0] = e1;
    if (K == 1) return;
    out[1] = std::sqrt(2.0) * x * e1;
    for (std::size_t k = 2; k < K; ++k)
        out[k] = x * std::sqrt(2.0 / double(k)) * out[k - 1] -
                 std::sqrt(double(k - 1) / double(k)) * out[k - 2];
}

/// e_k(x), 1-based k.
inline double hermite_function(std::size_t k, double x) {
    if (k == 0) throw std::invalid_argument("hermite_function: k is 1-based");
    std::vector<double> v;
    hermite_function_all(k, x, v);
    return v[k - 1];
}

}  // namespace wnc
