#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "wnc/chaos.hpp"

namespace wnc {

struct TruncationError : std::runtime_error {
    double dropped_mass;
    TruncationError(const std::string& what, double mass)
        : std::runtime_error(what + " (dropped alpha!-weighted mass " +
                             std::to_string(mass) + ")"),
          dropped_mass(mass) {}
};

struct WickPolicy {
    std::uint64_t order_cap = 24;  // N_cap for products
    bool strict = true;            // throw when mass is dropped
    double prune_tol = 0.0;        // drop |c| below this after combining
};

/// Wick product: coefficient at gamma is sum_{alpha+beta=gamma} a_alpha b_beta.
/// Output order is capped at min(N_X + N_Y, policy cap); in strict mode any
/// dropped coefficient raises TruncationError with the dropped mass.
inline HermiteChaos wick_product(const HermiteChaos& X, const HermiteChaos& Y,
                                 WickPolicy policy = {}) {
    const std::uint64_t cap =
        std::min<std::uint64_t>(X.truncation().max_order + Y.truncation().max_order,
                                policy.order_cap);
    Truncation tr{std::max(X.truncation().max_variable, Y.truncation().max_variable), cap};
    HermiteChaos Z(tr);
    double dropped = 0.0;
    for (const auto& [a, ca] : X.coefficients()) {
        for (const auto& [b, cb] : Y.coefficients()) {
            MultiIndex g = a.plus(b);
            double c = ca * cb;
            if (g.order() > cap) {
                dropped += mi_factorial_d(g) * c * c;
                continue;
            }
            Z.add(g, c);
        }
    }
    if (policy.prune_tol > 0.0) Z.prune(policy.prune_tol);
    if (dropped > 0.0 && policy.strict)
        throw TruncationError("wick_product: order overflow beyond cap", dropped);
    return Z;
}

/// X^{<>n}; X^{<>0} = 1.
inline HermiteChaos wick_power(const HermiteChaos& X, std::uint64_t n,
                               WickPolicy policy = {}) {
    if (n == 0) return HermiteChaos::constant(1.0, X.truncation());
    if (policy.strict && n * X.max_order() > policy.order_cap)
        throw TruncationError("wick_power: n*order exceeds cap", 0.0);
    HermiteChaos R = X;
    for (std::uint64_t m = 1; m < n; ++m) R = wick_product(R, X, policy);
    return R;
}

/// Partial sum sum_{n<=terms} X^{<>n} / n!. A constant part of X exponentiates
/// exactly and is factored out first.
inline HermiteChaos wick_exp(const HermiteChaos& X, std::uint64_t terms = 12,
                             WickPolicy policy = {}) {
    const double c0 = expectation(X);
    HermiteChaos X0 = X;
    X0.set(MultiIndex{}, 0.0);
    policy.order_cap = std::max<std::uint64_t>(policy.order_cap,
                                               terms * std::max<std::uint64_t>(X0.max_order(), 1));
    Truncation tr{X.truncation().max_variable, policy.order_cap};
    HermiteChaos R = HermiteChaos::constant(1.0, tr);
    HermiteChaos P = HermiteChaos::constant(1.0, tr);
    double invfact = 1.0;
    for (std::uint64_t n = 1; n <= terms; ++n) {
        P = wick_product(P, X0, policy);
        invfact /= double(n);
        R += P * invfact;
    }
    return R * std::exp(c0);
}

/// Tail bound ||X||_0^n / n! for the first omitted Wick-exponential term.
inline double wick_exp_tail_bound(const HermiteChaos& X, std::uint64_t terms) {
    double nrm = hida_norm(X, 0.0);
    double b = 1.0;
    for (std::uint64_t n = 1; n <= terms + 1; ++n) b *= nrm / double(n);
    return b;
}

}  // namespace wnc
