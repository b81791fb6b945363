#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wnc/basis.hpp"
#include "wnc/multi_index.hpp"

namespace wnc {

/// Random variable as a finite Hermite-basis expansion F = sum c_alpha H_alpha.
class HermiteChaos {
public:
    using Map = std::map<MultiIndex, double>;

    HermiteChaos() = default;
    explicit HermiteChaos(Truncation tr) : truncation_(tr) {}

    static HermiteChaos constant(double c, Truncation tr = {}) {
        HermiteChaos F(tr);
        if (c != 0.0) F.coefficients_[MultiIndex{}] = c;
        return F;
    }

    const Truncation& truncation() const { return truncation_; }
    const Map& coefficients() const { return coefficients_; }
    bool empty() const { return coefficients_.empty(); }
    std::size_t terms() const { return coefficients_.size(); }

    double coefficient(const MultiIndex& a) const {
        auto it = coefficients_.find(a);
        return it == coefficients_.end() ? 0.0 : it->second;
    }

    /// Sets a coefficient; throws if alpha violates the truncation.
    void set(const MultiIndex& a, double c) {
        if (!truncation_.admits(a))
            throw std::out_of_range("HermiteChaos::set: index outside truncation");
        if (c == 0.0)
            coefficients_.erase(a);
        else
            coefficients_[a] = c;
    }

    void add(const MultiIndex& a, double c) { set(a, coefficient(a) + c); }

    HermiteChaos& operator+=(const HermiteChaos& o) {
        truncation_ = Truncation::hull(truncation_, o.truncation_);
        for (const auto& [a, c] : o.coefficients_) add(a, c);
        return *this;
    }

    HermiteChaos& operator-=(const HermiteChaos& o) {
        truncation_ = Truncation::hull(truncation_, o.truncation_);
        for (const auto& [a, c] : o.coefficients_) add(a, -c);
        return *this;
    }

    HermiteChaos& operator*=(double s) {
        if (s == 0.0) {
            coefficients_.clear();
        } else {
            for (auto& [a, c] : coefficients_) c *= s;
        }
        return *this;
    }

    friend HermiteChaos operator+(HermiteChaos x, const HermiteChaos& y) { return x += y; }
    friend HermiteChaos operator-(HermiteChaos x, const HermiteChaos& y) { return x -= y; }
    friend HermiteChaos operator*(HermiteChaos x, double s) { return x *= s; }
    friend HermiteChaos operator*(double s, HermiteChaos x) { return x *= s; }

    /// Drops coefficients with |c| below tol; returns the alpha!-weighted
    /// squared mass removed.
    double prune(double tol) {
        double dropped = 0.0;
        for (auto it = coefficients_.begin(); it != coefficients_.end();) {
            if (std::abs(it->second) < tol) {
                dropped += mi_factorial_d(it->first) * it->second * it->second;
                it = coefficients_.erase(it);
            } else {
                ++it;
            }
        }
        return dropped;
    }

    /// Highest |alpha| present.
    std::uint64_t max_order() const {
        std::uint64_t n = 0;
        for (const auto& [a, c] : coefficients_) n = std::max(n, a.order());
        return n;
    }

private:
    Truncation truncation_;
    Map coefficients_;
};

/// Generalized expectation E[F] = c_0.
inline double expectation(const HermiteChaos& F) {
    return F.coefficient(MultiIndex{});
}

/// Hida norm: sqrt( sum alpha! c_alpha^2 (2N)^{k alpha} ).
/// k = 0 is the L^2(P) norm; k < 0 the (S)_{-q} norm with q = -k.
inline double hida_norm(const HermiteChaos& F, double k) {
    double s = 0.0;
    for (const auto& [a, c] : F.coefficients())
        s += mi_factorial_d(a) * c * c * two_n_pow(a, k);
    return std::sqrt(s);
}

/// Dual pairing <F, f> = sum alpha! a_alpha b_alpha.
inline double dual_action(const HermiteChaos& F, const HermiteChaos& f) {
    const auto& big = F.terms() <= f.terms() ? F : f;
    const auto& other = F.terms() <= f.terms() ? f : F;
    double s = 0.0;
    for (const auto& [a, c] : big.coefficients()) {
        double d = other.coefficient(a);
        if (d != 0.0) s += mi_factorial_d(a) * c * d;
    }
    return s;
}

/// Wiener integral of a deterministic grid function: coefficients (f, e_k).
inline HermiteChaos wiener_integral_chaos(const std::vector<double>& f_grid,
                                          const HermiteBasis& basis,
                                          std::uint64_t max_order = 6) {
    if (f_grid.size() != basis.grid().points())
        throw std::invalid_argument("wiener_integral_chaos: sample count mismatch");
    HermiteChaos F({basis.size(), max_order});
    for (std::size_t k = 1; k <= basis.size(); ++k) {
        double c = basis.pair(f_grid, k);
        if (c != 0.0) F.set(MultiIndex::unit(k), c);
    }
    return F;
}

/// Wiener integral from exact basis coefficients (f = sum c_k e_k).
inline HermiteChaos wiener_integral_chaos(const std::vector<double>& coeffs,
                                          std::size_t K, std::uint64_t max_order = 6) {
    if (coeffs.size() > K)
        throw std::invalid_argument("wiener_integral_chaos: more coefficients than variables");
    HermiteChaos F({K, max_order});
    for (std::size_t k = 1; k <= coeffs.size(); ++k)
        if (coeffs[k - 1] != 0.0) F.set(MultiIndex::unit(k), coeffs[k - 1]);
    return F;
}

/// Chaos expansion of B(t) at a grid point: coefficients E_k(t) on epsilon^(k).
inline HermiteChaos brownian_chaos(std::size_t grid_index, const HermiteBasis& basis,
                                   std::uint64_t max_order = 6) {
    HermiteChaos F({basis.size(), max_order});
    for (std::size_t k = 1; k <= basis.size(); ++k) {
        double c = basis.cumulative_at(k, grid_index);
        if (c != 0.0) F.set(MultiIndex::unit(k), c);
    }
    return F;
}

inline HermiteChaos brownian_chaos(double t, const HermiteBasis& basis,
                                   std::uint64_t max_order = 6) {
    return brownian_chaos(basis.grid().index(t), basis, max_order);
}

/// Singular white noise at time t: coefficients e_k(t) on epsilon^(k).
inline HermiteChaos singular_white_noise(double t, const HermiteBasis& basis,
                                         std::uint64_t max_order = 6) {
    HermiteChaos F({basis.size(), max_order});
    for (std::size_t k = 1; k <= basis.size(); ++k) {
        double c = basis.value_at_time(k, t);
        if (c != 0.0) F.set(MultiIndex::unit(k), c);
    }
    return F;
}

/// Partial sum of sum_alpha (2N)^{-q alpha} over the truncation box,
/// enumerated by recursion over variables.
inline double summability_probe(double q, const Truncation& cutoff) {
    if (!(q > 0.0)) throw std::invalid_argument("summability_probe: q must be positive");
    // product over variables of the order-resolved geometric layers, summed
    // with total order <= N: dynamic program over (variable, remaining order).
    const std::size_t K = cutoff.max_variable;
    const std::size_t N = (std::size_t)cutoff.max_order;
    std::vector<double> acc(N + 1, 0.0);
    acc[0] = 1.0;
    for (std::size_t j = 1; j <= K; ++j) {
        const double w = std::pow(2.0 * double(j), -q);
        std::vector<double> next(N + 1, 0.0);
        for (std::size_t n = 0; n <= N; ++n) {
            if (acc[n] == 0.0) continue;
            double pw = 1.0;
            for (std::size_t m = 0; n + m <= N; ++m) {
                next[n + m] += acc[n] * pw;
                pw *= w;
            }
        }
        acc = std::move(next);
    }
    double s = 0.0;
    for (double x : acc) s += x;
    return s;
}

/// Time-indexed chaos expansion: coefficient paths a_alpha(t_i) on the grid.
class ChaosProcess {
public:
    using Map = std::map<MultiIndex, std::vector<double>>;

    ChaosProcess() = default;
    ChaosProcess(Truncation tr, TimeGrid grid) : truncation_(tr), grid_(grid) {}

    const Truncation& truncation() const { return truncation_; }
    const TimeGrid& grid() const { return grid_; }
    const Map& coefficients() const { return coefficients_; }

    std::vector<double>& path(const MultiIndex& a) {
        if (!truncation_.admits(a))
            throw std::out_of_range("ChaosProcess::path: index outside truncation");
        auto it = coefficients_.find(a);
        if (it == coefficients_.end())
            it = coefficients_.emplace(a, std::vector<double>(grid_.points(), 0.0)).first;
        return it->second;
    }

    const std::vector<double>* find(const MultiIndex& a) const {
        auto it = coefficients_.find(a);
        return it == coefficients_.end() ? nullptr : &it->second;
    }

    /// Value at a grid index as a HermiteChaos.
    HermiteChaos at(std::size_t i) const {
        HermiteChaos F(truncation_);
        for (const auto& [a, v] : coefficients_)
            if (v[i] != 0.0) F.set(a, v[i]);
        return F;
    }

    /// Assembles a process from per-grid-point chaos values.
    static ChaosProcess from_slices(const std::vector<HermiteChaos>& slices,
                                    Truncation tr, TimeGrid grid) {
        if (slices.size() != grid.points())
            throw std::invalid_argument("ChaosProcess::from_slices: size mismatch");
        ChaosProcess P(tr, grid);
        for (std::size_t i = 0; i < slices.size(); ++i)
            for (const auto& [a, c] : slices[i].coefficients())
                P.path(a)[i] = c;
        return P;
    }

private:
    Truncation truncation_;
    TimeGrid grid_;
    Map coefficients_;
};

}  // namespace wnc
