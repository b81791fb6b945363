#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <vector>

namespace wnc {

/// Canonical finite multi-index alpha: non-negative entries, no trailing zeros.
/// The empty sequence is alpha = 0. Entry j (0-based) is the Hermite order
/// attached to the Gaussian coordinate theta_{j+1}.
class MultiIndex {
public:
    MultiIndex() = default;

    MultiIndex(std::initializer_list<std::uint32_t> entries)
        : entries_(entries) {
        trim();
    }

    explicit MultiIndex(std::vector<std::uint32_t> entries)
        : entries_(std::move(entries)) {
        trim();
    }

    /// Unit index epsilon^(k), 1-based variable k.
    static MultiIndex unit(std::size_t k) {
        if (k == 0) throw std::invalid_argument("MultiIndex::unit: k is 1-based");
        std::vector<std::uint32_t> e(k, 0);
        e[k - 1] = 1;
        return MultiIndex(std::move(e));
    }

    std::size_t length() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }

    /// Entry for 1-based variable k (0 beyond the stored length).
    std::uint32_t operator[](std::size_t k) const {
        return (k >= 1 && k <= entries_.size()) ? entries_[k - 1] : 0;
    }

    const std::vector<std::uint32_t>& entries() const { return entries_; }

    /// |alpha| = sum of entries.
    std::uint64_t order() const {
        std::uint64_t s = 0;
        for (auto a : entries_) s += a;
        return s;
    }

    MultiIndex plus(const MultiIndex& o) const {
        std::vector<std::uint32_t> e(std::max(entries_.size(), o.entries_.size()), 0);
        for (std::size_t i = 0; i < entries_.size(); ++i) e[i] += entries_[i];
        for (std::size_t i = 0; i < o.entries_.size(); ++i) e[i] += o.entries_[i];
        return MultiIndex(std::move(e));
    }

    /// alpha + epsilon^(k), 1-based k.
    MultiIndex bump(std::size_t k) const {
        std::vector<std::uint32_t> e = entries_;
        if (e.size() < k) e.resize(k, 0);
        e[k - 1] += 1;
        return MultiIndex(std::move(e));
    }

    /// alpha - epsilon^(k); requires alpha_k >= 1.
    MultiIndex drop(std::size_t k) const {
        if ((*this)[k] == 0)
            throw std::invalid_argument("MultiIndex::drop: entry is zero");
        std::vector<std::uint32_t> e = entries_;
        e[k - 1] -= 1;
        return MultiIndex(std::move(e));
    }

    bool operator==(const MultiIndex& o) const { return entries_ == o.entries_; }
    bool operator!=(const MultiIndex& o) const { return !(*this == o); }

    /// Graded order: by |alpha|, then length, then entries. Any strict weak
    /// order works as a map key; graded keeps serialized output readable.
    bool operator<(const MultiIndex& o) const {
        auto a = order(), b = o.order();
        if (a != b) return a < b;
        if (entries_.size() != o.entries_.size())
            return entries_.size() < o.entries_.size();
        return entries_ < o.entries_;
    }

private:
    void trim() {
        while (!entries_.empty() && entries_.back() == 0) entries_.pop_back();
    }

    std::vector<std::uint32_t> entries_;
};

/// alpha! = prod alpha_j!, exact in 64 bits; throws on overflow.
inline std::uint64_t mi_factorial(const MultiIndex& a) {
    std::uint64_t r = 1;
    for (auto aj : a.entries()) {
        for (std::uint32_t m = 2; m <= aj; ++m) {
            if (r > std::numeric_limits<std::uint64_t>::max() / m)
                throw std::overflow_error("mi_factorial: product exceeds 64-bit range");
            r *= m;
        }
    }
    return r;
}

/// log(alpha!) for use where products would overflow.
inline double mi_log_factorial(const MultiIndex& a) {
    double s = 0.0;
    for (auto aj : a.entries())
        for (std::uint32_t m = 2; m <= aj; ++m) s += std::log(double(m));
    return s;
}

/// alpha! as a double (via log-space when large).
inline double mi_factorial_d(const MultiIndex& a) {
    double r = 1.0;
    bool big = false;
    for (auto aj : a.entries()) {
        for (std::uint32_t m = 2; m <= aj; ++m) {
            r *= double(m);
            if (r > 1e300) { big = true; break; }
        }
        if (big) break;
    }
    return big ? std::exp(mi_log_factorial(a)) : r;
}

/// (2N)^{q*alpha} = prod_j (2j)^{q*alpha_j}, j 1-based.
inline double two_n_pow(const MultiIndex& a, double q) {
    double r = 1.0;
    const auto& e = a.entries();
    for (std::size_t j = 0; j < e.size(); ++j)
        if (e[j] != 0) r *= std::pow(2.0 * double(j + 1), q * double(e[j]));
    return r;
}

/// Truncation box: variables 1..K, total order <= N.
struct Truncation {
    std::size_t max_variable = 30;  // K
    std::uint64_t max_order = 6;    // N

    bool admits(const MultiIndex& a) const {
        return a.length() <= max_variable && a.order() <= max_order;
    }

    static Truncation hull(const Truncation& x, const Truncation& y) {
        return {std::max(x.max_variable, y.max_variable),
                std::max(x.max_order, y.max_order)};
    }
};

}  // namespace wnc
