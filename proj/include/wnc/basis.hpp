#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wnc/hermite.hpp"
#include "wnc/quadrature.hpp"
#include "wnc/time_grid.hpp"

namespace wnc {

/// Hermite-function basis tabulated on a time grid.
///
/// Carries e_k(t_i), the cumulative integrals E_k(t_i) = int_0^{t_i} e_k, and
/// a whole-line quadrature for L^2(R) inner products. Time integrals use
/// end-corrected composite rules on the grid; E and all pairings against
/// indicator-supported data share one prefix-rule family, so Brownian
/// coefficients and kernel projections agree exactly.
class HermiteBasis {
public:
    HermiteBasis(std::size_t K, TimeGrid grid)
        : K_(K), grid_(grid), quad_(grid.segments, grid.dt()) {
        if (K == 0) throw std::invalid_argument("HermiteBasis: K must be positive");
        const std::size_t P = grid.points();
        values_.assign(K, std::vector<double>(P, 0.0));
        cumulative_.assign(K, std::vector<double>(P, 0.0));
        std::vector<double> col;
        for (std::size_t i = 0; i < P; ++i) {
            hermite_function_all(K, grid.time(i), col);
            for (std::size_t k = 0; k < K; ++k) values_[k][i] = col[k];
        }
        for (std::size_t k = 0; k < K; ++k)
            cumulative_[k] = quad_.cumulative(values_[k]);
        line_ = gauss_hermite_line(K + 8);
    }

    std::size_t size() const { return K_; }
    const TimeGrid& grid() const { return grid_; }
    const UniformQuadrature& quadrature() const { return quad_; }

    /// e_k on the grid, 1-based k.
    const std::vector<double>& values(std::size_t k) const { return values_.at(k - 1); }
    /// E_k on the grid, 1-based k.
    const std::vector<double>& cumulative(std::size_t k) const { return cumulative_.at(k - 1); }

    double value(std::size_t k, std::size_t i) const { return values_.at(k - 1)[i]; }
    double cumulative_at(std::size_t k, std::size_t i) const { return cumulative_.at(k - 1)[i]; }

    /// e_k at an arbitrary time (recurrence evaluation, off-grid allowed).
    double value_at_time(std::size_t k, double t) const { return hermite_function(k, t); }

    /// (f, e_k) over [0, t_l] for grid samples f.
    double pair_prefix(const std::vector<double>& f, std::size_t k, std::size_t l) const {
        return quad_.integrate_product_prefix(f, values_.at(k - 1), l);
    }

    /// (f, e_k) over [0, T].
    double pair(const std::vector<double>& f, std::size_t k) const {
        return pair_prefix(f, k, grid_.segments);
    }

    /// L^2(R) inner product (e_j, e_k) by the whole-line rule; exact up to
    /// roundoff, used for the orthonormality contract.
    double line_inner(std::size_t j, std::size_t k) const {
        double s = 0.0;
        std::vector<double> col;
        for (std::size_t i = 0; i < line_.nodes.size(); ++i) {
            hermite_function_all(std::max(j, k), line_.nodes[i], col);
            s += line_.weights[i] * col[j - 1] * col[k - 1];
        }
        return s;
    }

    /// max_{j,k <= J} |(e_j,e_k) - delta_jk| over the whole line.
    double orthonormality_defect(std::size_t J) const {
        J = std::min(J, K_);
        const std::size_t n = line_.nodes.size();
        std::vector<std::vector<double>> cols(n);
        std::vector<double> col;
        for (std::size_t i = 0; i < n; ++i) {
            hermite_function_all(J, line_.nodes[i], col);
            cols[i] = col;
        }
        double worst = 0.0;
        for (std::size_t j = 0; j < J; ++j)
            for (std::size_t k = j; k < J; ++k) {
                double s = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    s += line_.weights[i] * cols[i][j] * cols[i][k];
                worst = std::max(worst, std::abs(s - (j == k ? 1.0 : 0.0)));
            }
        return worst;
    }

    /// Sum_k E_k(t)^2, the truncated Parseval mass of chi_[0,t].
    double indicator_mass(std::size_t i) const {
        double s = 0.0;
        for (std::size_t k = 1; k <= K_; ++k) {
            double e = cumulative_at(k, i);
            s += e * e;
        }
        return s;
    }

    std::string quadrature_scheme() const {
        return "gregory6-composite(time grid), gauss-hermite(" +
               std::to_string(line_.nodes.size()) + " nodes, whole line)";
    }

private:
    std::size_t K_;
    TimeGrid grid_;
    UniformQuadrature quad_;
    std::vector<std::vector<double>> values_;      // [k-1][i]
    std::vector<std::vector<double>> cumulative_;  // [k-1][i]
    HermiteQuadrature line_;
};

/// Minimum eigenvalue of the matrix g(phi_j - phi_l), g(phi) = exp(-||phi||^2/2),
/// with ||.|| the grid-rule L^2([0,T]) norm. Positive-definiteness probe for
/// the Gaussian characteristic functional.
inline double gaussian_psd_check(const std::vector<std::vector<double>>& phis,
                                 const UniformQuadrature& quad) {
    const std::size_t n = phis.size();
    if (n == 0) throw std::invalid_argument("gaussian_psd_check: need at least one function");
    Eigen::MatrixXd M(n, n);
    std::vector<double> diff(phis[0].size());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b <= a; ++b) {
            for (std::size_t i = 0; i < diff.size(); ++i)
                diff[i] = phis[a][i] - phis[b][i];
            double nn = quad.integrate_product_prefix(diff, diff, quad.segments());
            M(Eigen::Index(a), Eigen::Index(b)) = M(Eigen::Index(b), Eigen::Index(a)) =
                std::exp(-0.5 * nn);
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    return es.eigenvalues().minCoeff();
}

}  // namespace wnc
