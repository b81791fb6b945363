#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wnc/basis.hpp"
#include "wnc/chaos.hpp"
#include "wnc/multi_index.hpp"

namespace wnc {

namespace detail {

/// Ranking of non-decreasing index tuples over {0..P-1} (colex on the
/// shifted strictly-increasing combination).
class TupleIndexer {
public:
    TupleIndexer() = default;
    TupleIndexer(std::size_t P, std::size_t n) : P_(P), n_(n) {
        binom_.assign(P + n + 1, std::vector<double>(n + 2, 0.0));
        for (std::size_t x = 0; x <= P + n; ++x) {
            binom_[x][0] = 1.0;
            for (std::size_t k = 1; k <= std::min(x, n + 1); ++k)
                binom_[x][k] = (x == 0) ? 0.0 : binom_[x - 1][k - 1] + binom_[x - 1][k];
        }
    }

    std::size_t count() const { return (std::size_t)binom_[P_ + n_ - 1][n_]; }

    /// Rank of a sorted tuple (ascending).
    std::size_t rank(const std::vector<std::size_t>& s) const {
        double r = 0.0;
        for (std::size_t j = 0; j < n_; ++j) r += binom_[s[j] + j][j + 1];
        return (std::size_t)r;
    }

    /// Number of distinct permutations of a sorted tuple.
    static double multiplicity(const std::vector<std::size_t>& s) {
        double m = 1.0, runfac = 1.0;
        std::size_t run = 1;
        for (std::size_t j = 1; j <= s.size(); ++j) {
            m *= double(j);
            if (j < s.size() && s[j] == s[j - 1]) {
                run += 1;
                runfac *= double(run);
            } else {
                m /= runfac;
                run = 1;
                runfac = 1.0;
            }
        }
        return m;
    }

    /// Visits every sorted tuple in rank order.
    template <class F>
    void for_each(F&& f) const {
        std::vector<std::size_t> s(n_, 0);
        while (true) {
            f(const_cast<const std::vector<std::size_t>&>(s));
            std::size_t j = n_;
            while (j > 0 && s[j - 1] == P_ - 1) --j;
            if (j == 0) break;
            ++s[j - 1];
            for (std::size_t i = j; i < n_; ++i) s[i] = s[j - 1];
        }
    }

private:
    std::size_t P_ = 0, n_ = 0;
    std::vector<std::vector<double>> binom_;
};

}  // namespace detail

/// One symmetric kernel f_n on grid^n, stored on sorted tuples, with a
/// support mask: indices beyond s_max are zero and integrals use the
/// prefix rule of span s_max.
struct SymmetricKernel {
    std::size_t order = 1;
    std::size_t points = 0;
    std::size_t s_max = 0;  // support bound as grid index
    detail::TupleIndexer indexer;
    std::vector<double> values;  // by tuple rank

    SymmetricKernel() = default;
    SymmetricKernel(std::size_t n, std::size_t P)
        : order(n), points(P), s_max(P - 1), indexer(P, n),
          values(indexer.count(), 0.0) {}

    double at(std::vector<std::size_t> idx) const {
        std::sort(idx.begin(), idx.end());
        return values[indexer.rank(idx)];
    }

    void set(std::vector<std::size_t> idx, double v) {
        std::sort(idx.begin(), idx.end());
        values[indexer.rank(idx)] = v;
    }

    /// Restrict support to indices <= l (multiplication by the cube
    /// indicator). Idempotent; a no-op when l >= s_max.
    void mask(std::size_t l) {
        if (l >= s_max) return;
        indexer.for_each([&](const std::vector<std::size_t>& s) {
            if (s.back() > l) values[indexer.rank(s)] = 0.0;
        });
        s_max = l;
    }

    /// Largest |f| at tuples with any index beyond l.
    double sup_beyond(std::size_t l) const {
        double m = 0.0;
        indexer.for_each([&](const std::vector<std::size_t>& s) {
            if (s.back() > l) m = std::max(m, std::abs(values[indexer.rank(s)]));
        });
        return m;
    }

    /// ||f_n||^2 over [0,T]^n with mask-aware weights.
    double norm2(const UniformQuadrature& quad) const {
        const auto& wp = quad.prefix_weights(s_max);
        auto w = [&](std::size_t i) { return i < wp.size() ? wp[i] : 0.0; };
        double s2 = 0.0;
        indexer.for_each([&](const std::vector<std::size_t>& s) {
            double v = values[indexer.rank(s)];
            if (v == 0.0) return;
            double ww = detail::TupleIndexer::multiplicity(s);
            for (auto i : s) ww *= w(i);
            s2 += ww * v * v;
        });
        return s2;
    }

    /// Slice in the last argument at grid index l, as an (n-1)-kernel
    /// scaled by `scale` (or a scalar when n = 1, returned via out_scalar).
    SymmetricKernel slice(std::size_t l, double scale) const {
        if (order < 2) throw std::logic_error("SymmetricKernel::slice: order < 2");
        SymmetricKernel g(order - 1, points);
        g.s_max = s_max;
        g.indexer.for_each([&](const std::vector<std::size_t>& s) {
            std::vector<std::size_t> full = s;
            full.push_back(l);
            g.values[g.indexer.rank(s)] = scale * at(full);
        });
        return g;
    }
};

/// Random variable as iterated-integral kernels: F = f_0 + sum_n I_n(f_n).
/// Kernels produced by hermite_to_kernel carry their exact span coefficients
/// so the conversion round-trip is exact; grid-born kernels are identified by
/// plain projection onto the Hermite tensor span.
class KernelChaos {
public:
    KernelChaos() = default;
    KernelChaos(TimeGrid grid, std::size_t max_order) : grid_(grid) {
        levels_.reserve(max_order);
        for (std::size_t n = 1; n <= max_order; ++n)
            levels_.emplace_back(n, grid.points());
    }

    const TimeGrid& grid() const { return grid_; }
    std::size_t max_order() const { return levels_.size(); }

    double& f0() { return f0_; }
    double f0() const { return f0_; }

    SymmetricKernel& level(std::size_t n) { span_.reset(); return levels_.at(n - 1); }
    const SymmetricKernel& level(std::size_t n) const { return levels_.at(n - 1); }

    void mask(std::size_t l) {
        bool shrunk = false;
        for (auto& lev : levels_)
            if (l < lev.s_max) {
                lev.mask(l);
                shrunk = true;
            }
        if (shrunk) span_.reset();
    }

    /// ||F||^2 = f0^2 + sum_n n! ||f_n||^2.
    double norm2(const UniformQuadrature& quad) const {
        double s = f0_ * f0_, fac = 1.0;
        for (std::size_t n = 1; n <= levels_.size(); ++n) {
            fac *= double(n);
            s += fac * levels_[n - 1].norm2(quad);
        }
        return s;
    }

    bool has_span_payload() const { return span_.has_value(); }
    const std::map<MultiIndex, double>& span_payload() const { return *span_; }
    void set_span_payload(std::map<MultiIndex, double> c) { span_ = std::move(c); }

private:
    TimeGrid grid_;
    double f0_ = 0.0;
    std::vector<SymmetricKernel> levels_;
    std::optional<std::map<MultiIndex, double>> span_;
};

struct BasisInsufficiencyError : std::runtime_error {
    double residual;
    BasisInsufficiencyError(double r, std::size_t n)
        : std::runtime_error("kernel_to_hermite: projection residual " +
                             std::to_string(r) + " at order " + std::to_string(n) +
                             " exceeds tolerance"),
          residual(r) {}
};

struct KernelConversionResult {
    HermiteChaos chaos;
    std::vector<double> residuals;  // L^2 projection residual per order (1-based at [n-1])
};

namespace detail {

/// Contract a symmetric dense tensor over P^n with per-axis matrices
/// M (P x K): out[k1..kn] = sum_i f[i1..in] prod M[i_j][k_j].
/// n is small (<= 4); plain loops.
inline std::vector<double> contract_all_axes(const std::vector<double>& dense,
                                             std::size_t P, std::size_t n,
                                             const std::vector<std::vector<double>>& M,
                                             std::size_t K) {
    std::vector<double> cur = dense;
    std::size_t lead = 1;  // product of already-contracted axis sizes (K^done)
    for (std::size_t ax = 0; ax < n; ++ax) {
        // cur shape: [lead (K^ax)] x [P^{n-ax}] ; contract the first P axis.
        std::size_t rest = 1;
        for (std::size_t a = ax + 1; a < n; ++a) rest *= P;
        std::vector<double> next(lead * rest * K, 0.0);
        for (std::size_t b = 0; b < lead; ++b)
            for (std::size_t i = 0; i < P; ++i) {
                const double* src = cur.data() + (b * P + i) * rest;
                for (std::size_t k = 0; k < K; ++k) {
                    double m = M[i][k];
                    if (m == 0.0) continue;
                    double* dst = next.data() + (b * K + k) * rest;
                    for (std::size_t r = 0; r < rest; ++r) dst[r] += m * src[r];
                }
            }
        // next shape: [lead*K] x [P^{n-ax-1}] with the new K axis appended to lead.
        cur = std::move(next);
        lead *= K;
    }
    return cur;  // size K^n, index (k1,...,kn) row-major
}

}  // namespace detail

/// Projection of a KernelChaos onto the Hermite chaos basis:
/// c_alpha = (n!/alpha!) <f_n, e^{tensor alpha}> over [0,T]^n (mask-aware).
/// Kernels carrying a span payload convert exactly through it.
inline KernelConversionResult kernel_to_hermite_full(const KernelChaos& F,
                                                     const HermiteBasis& basis,
                                                     double max_residual,
                                                     std::uint64_t chaos_order_cap = 0) {
    const std::size_t K = basis.size();
    const std::size_t P = F.grid().points();
    if (!(F.grid() == basis.grid()))
        throw std::invalid_argument("kernel_to_hermite: grid mismatch");
    const std::uint64_t cap = chaos_order_cap ? chaos_order_cap
                                              : std::max<std::uint64_t>(F.max_order(), 6);
    KernelConversionResult out;
    out.chaos = HermiteChaos({K, cap});
    out.chaos.set(MultiIndex{}, F.f0());
    out.residuals.assign(F.max_order(), 0.0);

    if (F.has_span_payload()) {
        for (const auto& [a, c] : F.span_payload()) out.chaos.add(a, c);
        return out;
    }

    for (std::size_t n = 1; n <= F.max_order(); ++n) {
        const SymmetricKernel& lev = F.level(n);
        bool any = false;
        for (double v : lev.values)
            if (v != 0.0) { any = true; break; }
        if (!any) continue;

        // dense expansion
        std::vector<double> dense(std::size_t(std::pow(double(P), double(n))), 0.0);
        std::vector<std::size_t> idx(n);
        lev.indexer.for_each([&](const std::vector<std::size_t>& s) {
            double v = lev.values[lev.indexer.rank(s)];
            if (v == 0.0) return;
            idx = s;
            std::sort(idx.begin(), idx.end());
            do {
                std::size_t flat = 0;
                for (auto i : idx) flat = flat * P + i;
                dense[flat] = v;
            } while (std::next_permutation(idx.begin(), idx.end()));
        });

        // weighted value matrix for this level's mask
        const auto& wp = basis.quadrature().prefix_weights(lev.s_max);
        std::vector<std::vector<double>> M(P, std::vector<double>(K, 0.0));
        for (std::size_t i = 0; i < P; ++i) {
            double w = i < wp.size() ? wp[i] : 0.0;
            if (w == 0.0) continue;
            for (std::size_t k = 0; k < K; ++k) M[i][k] = w * basis.value(k + 1, i);
        }
        std::vector<double> C = detail::contract_all_axes(dense, P, n, M, K);

        // collect by multi-index type
        detail::TupleIndexer kidx(K, n);
        double fac_n = 1.0;
        for (std::size_t m = 2; m <= n; ++m) fac_n *= double(m);
        double proj_mass = 0.0;
        kidx.for_each([&](const std::vector<std::size_t>& t) {
            std::size_t flat = 0;
            for (auto k : t) flat = flat * K + k;
            double Ct = C[flat];
            // multi-index of this tuple type (variables are 1-based)
            std::vector<std::uint32_t> e(t.back() + 1, 0);
            for (auto k : t) e[k] += 1;
            MultiIndex a(std::move(e));
            double afac = mi_factorial_d(a);
            double c = (fac_n / afac) * Ct;
            if (c != 0.0 && a.order() <= cap) out.chaos.add(a, c);
            proj_mass += (afac / fac_n) * c * c;
        });
        double r2 = lev.norm2(basis.quadrature()) - proj_mass;
        out.residuals[n - 1] = std::sqrt(std::max(0.0, r2));
        if (out.residuals[n - 1] > max_residual)
            throw BasisInsufficiencyError(out.residuals[n - 1], n);
    }
    return out;
}

inline HermiteChaos kernel_to_hermite(const KernelChaos& F, const HermiteBasis& basis,
                                      double max_residual =
                                          std::numeric_limits<double>::infinity()) {
    return kernel_to_hermite_full(F, basis, max_residual).chaos;
}

/// Synthesis of grid kernels from a chaos expansion: f_n = sum c_alpha
/// sym(e^{tensor alpha}) sampled on grid^n; keeps the exact coefficients as
/// the span payload so the round-trip is the identity.
inline KernelChaos hermite_to_kernel(const HermiteChaos& F, const HermiteBasis& basis,
                                     std::size_t max_order = 3) {
    const std::size_t K = basis.size();
    const std::size_t P = basis.grid().points();
    for (const auto& [a, c] : F.coefficients())
        if (a.order() > max_order) {
            std::string s = "hermite_to_kernel: order overflow at alpha = (";
            for (std::size_t j = 0; j < a.entries().size(); ++j)
                s += (j ? "," : "") + std::to_string(a.entries()[j]);
            throw std::out_of_range(s + ")");
        }
    KernelChaos out(basis.grid(), max_order);
    out.f0() = expectation(F);

    for (std::size_t n = 1; n <= max_order; ++n) {
        // dense K^n coefficient tensor A[t] = c_alpha(type t) * alpha!/n!
        bool any = false;
        std::vector<double> A(std::size_t(std::pow(double(K), double(n))), 0.0);
        double fac_n = 1.0;
        for (std::size_t m = 2; m <= n; ++m) fac_n *= double(m);
        for (const auto& [a, c] : F.coefficients()) {
            if (a.order() != n || c == 0.0) continue;
            if (a.length() > K)
                throw std::out_of_range("hermite_to_kernel: variable beyond basis size");
            any = true;
            std::vector<std::size_t> t;
            const auto& e = a.entries();
            for (std::size_t j = 0; j < e.size(); ++j)
                for (std::uint32_t m = 0; m < e[j]; ++m) t.push_back(j);
            double v = c * mi_factorial_d(a) / fac_n;
            std::sort(t.begin(), t.end());
            do {
                std::size_t flat = 0;
                for (auto k : t) flat = flat * K + k;
                A[flat] = v;
            } while (std::next_permutation(t.begin(), t.end()));
        }
        if (!any) continue;
        std::vector<std::vector<double>> V(K, std::vector<double>(P));
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t i = 0; i < P; ++i) V[k][i] = basis.value(k + 1, i);
        std::vector<double> dense = detail::contract_all_axes(A, K, n, V, P);
        SymmetricKernel& lev = out.level(n);
        lev.indexer.for_each([&](const std::vector<std::size_t>& s) {
            std::size_t flat = 0;
            for (auto i : s) flat = flat * P + i;
            lev.values[lev.indexer.rank(s)] = dense[flat];
        });
    }
    std::map<MultiIndex, double> payload;
    for (const auto& [a, c] : F.coefficients())
        if (!a.is_zero()) payload[a] = c;
    out.set_span_payload(std::move(payload));
    return out;
}

/// E[F | F_t]: multiply each kernel by the indicator of [0,t]^n.
/// Idempotent; t = T is the identity; t = 0 leaves the constant f_0.
inline KernelChaos conditional_expectation(const KernelChaos& F, double t) {
    KernelChaos out = F;
    out.mask(F.grid().index(t));
    return out;
}

}  // namespace wnc
