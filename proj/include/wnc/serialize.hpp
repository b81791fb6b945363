#pragma once

#include <nlohmann/json.hpp>

#include "wnc/basis.hpp"
#include "wnc/chaos.hpp"

namespace wnc {

using json = nlohmann::json;

/// {"truncation": {"K":.., "N":..}, "coefficients": [{"alpha":[..], "c":..}, ..]}
inline json to_json(const HermiteChaos& F) {
    json coeffs = json::array();
    for (const auto& [a, c] : F.coefficients())
        coeffs.push_back({{"alpha", a.entries()}, {"c", c}});
    return json{{"truncation",
                 {{"K", F.truncation().max_variable}, {"N", F.truncation().max_order}}},
                {"coefficients", coeffs}};
}

inline HermiteChaos chaos_from_json(const json& j) {
    Truncation tr{j.at("truncation").at("K").get<std::size_t>(),
                  j.at("truncation").at("N").get<std::uint64_t>()};
    HermiteChaos F(tr);
    for (const auto& e : j.at("coefficients"))
        F.set(MultiIndex(e.at("alpha").get<std::vector<std::uint32_t>>()),
              e.at("c").get<double>());
    return F;
}

/// Basis metadata: K, grid, quadrature scheme, whole-line orthonormality bound.
inline json basis_metadata(const HermiteBasis& basis) {
    return json{{"K", basis.size()},
                {"grid", {{"T", basis.grid().horizon}, {"M", basis.grid().segments}}},
                {"quadrature", basis.quadrature_scheme()},
                {"orthonormality_defect", basis.orthonormality_defect(basis.size())}};
}

}  // namespace wnc
