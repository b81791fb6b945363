#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace wnc {

/// Weights of a composite rule on n+1 uniform nodes with spacing h, spanning
/// [0, n*h]. Closed Newton-Cotes up to 7 nodes, Gregory order 6 (trapezoid
/// with Bernoulli end corrections) from 8 nodes on. n = 0 yields {0}.
inline std::vector<double> uniform_rule_weights(std::size_t n, double h) {
    std::vector<double> w(n + 1, 0.0);
    if (n == 0) return w;
    switch (n) {
        case 1: w = {0.5, 0.5}; break;
        case 2: w = {1.0 / 3, 4.0 / 3, 1.0 / 3}; break;
        case 3: w = {3.0 / 8, 9.0 / 8, 9.0 / 8, 3.0 / 8}; break;
        case 4: w = {14.0 / 45, 64.0 / 45, 24.0 / 45, 64.0 / 45, 14.0 / 45}; break;
        case 5: w = {95.0 / 288, 375.0 / 288, 250.0 / 288, 250.0 / 288, 375.0 / 288, 95.0 / 288}; break;
        case 6: w = {41.0 / 140, 216.0 / 140, 27.0 / 140, 272.0 / 140, 27.0 / 140, 216.0 / 140, 41.0 / 140}; break;
        case 7: w = {5257.0 / 17280, 25039.0 / 17280, 9261.0 / 17280, 20923.0 / 17280,
                     20923.0 / 17280, 9261.0 / 17280, 25039.0 / 17280, 5257.0 / 17280}; break;
        default: {
            // Trapezoid with order-h^6 Euler-Maclaurin end corrections
            // (Gregory rule); offsets solve sum_i c_i i^m = EM moments.
            static const double c[6] = {
                -11153.0 / 60480, 23719.0 / 60480, -11371.0 / 30240,
                7381.0 / 30240, -5449.0 / 60480, 863.0 / 60480};
            w.assign(n + 1, 1.0);
            w[0] = w[n] = 0.5;
            for (std::size_t j = 0; j < 6; ++j) {
                w[j] += c[j];
                w[n - j] += c[j];
            }
            break;
        }
    }
    for (auto& x : w) x *= h;
    return w;
}

/// Composite quadrature context for a uniform grid of M+1 points.
/// Precomputes prefix-rule weights so that masked/cumulative integrals share
/// one scheme: integral over [t_0, t_l] uses the span-l rule.
class UniformQuadrature {
public:
    UniformQuadrature() = default;

    UniformQuadrature(std::size_t segments, double h) : h_(h) {
        prefix_.resize(segments + 1);
        for (std::size_t l = 0; l <= segments; ++l)
            prefix_[l] = uniform_rule_weights(l, h);
    }

    std::size_t segments() const { return prefix_.empty() ? 0 : prefix_.size() - 1; }
    double spacing() const { return h_; }

    /// Weights for integrating over the first l segments (l+1 nodes).
    const std::vector<double>& prefix_weights(std::size_t l) const {
        return prefix_.at(l);
    }

    /// Full-span weights.
    const std::vector<double>& weights() const { return prefix_.back(); }

    /// Integral of grid samples f over [t_0, t_l].
    template <class V>
    double integrate_prefix(const V& f, std::size_t l) const {
        const auto& w = prefix_.at(l);
        double s = 0.0;
        for (std::size_t i = 0; i <= l; ++i) s += w[i] * f[i];
        return s;
    }

    template <class V>
    double integrate(const V& f) const {
        return integrate_prefix(f, segments());
    }

    /// Integral of a product of two sample vectors over [t_0, t_l].
    template <class U, class V>
    double integrate_product_prefix(const U& f, const V& g, std::size_t l) const {
        const auto& w = prefix_.at(l);
        double s = 0.0;
        for (std::size_t i = 0; i <= l; ++i) s += w[i] * f[i] * g[i];
        return s;
    }

    /// Cumulative integral: out[l] = integral over [t_0, t_l] for all l.
    template <class V>
    std::vector<double> cumulative(const V& f) const {
        std::vector<double> out(prefix_.size(), 0.0);
        for (std::size_t l = 1; l < prefix_.size(); ++l)
            out[l] = integrate_prefix(f, l);
        return out;
    }

    /// Integral over [t_a, t_b] (suffix spans reuse the same rule family).
    template <class V>
    double integrate_between(const V& f, std::size_t a, std::size_t b) const {
        if (b < a) throw std::invalid_argument("integrate_between: b < a");
        const auto& w = prefix_.at(b - a);
        double s = 0.0;
        for (std::size_t i = a; i <= b; ++i) s += w[i - a] * f[i];
        return s;
    }

private:
    double h_ = 0.0;
    std::vector<std::vector<double>> prefix_;  // prefix_[l]: l+1 weights
};

/// Gauss-Hermite rule recast for plain dx-integrals on the real line:
/// integral f(x) dx ~= sum what_i f(x_i), exact when f = (poly deg <= 2n-1) * e^{-x^2}.
/// Nodes via Golub-Welsch; modified weights what_i = 1 / sum_{k<n} p_k(x_i)^2
/// evaluated through the normalized Hermite-function recurrence (no overflow).
struct HermiteQuadrature {
    std::vector<double> nodes;
    std::vector<double> weights;  // modified weights what_i
};

inline HermiteQuadrature gauss_hermite_line(std::size_t n) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(Eigen::Index(n), Eigen::Index(n));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double b = std::sqrt(double(i + 1) / 2.0);
        J(Eigen::Index(i), Eigen::Index(i + 1)) = b;
        J(Eigen::Index(i + 1), Eigen::Index(i)) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    HermiteQuadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x = es.eigenvalues()(Eigen::Index(i));
        q.nodes[i] = x;
        // sum_{k=1..n} e_k(x)^2 with e_k the orthonormal Hermite functions.
        double s = 0.0;
        double prev = 0.0;
        double cur = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
        s += cur * cur;
        for (std::size_t k = 1; k < n; ++k) {
            double next = x * std::sqrt(2.0 / double(k)) * cur -
                          std::sqrt(double(k - 1) / double(k)) * prev;
            prev = cur;
            cur = next;
            s += cur * cur;
        }
        q.weights[i] = 1.0 / s;
    }
    return q;
}

}  // namespace wnc
