#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpsq/errors.hpp"
#include "fpsq/rational.hpp"
#include "fpsq/series.hpp"
#include "fpsq/verify.hpp"

namespace fpsq {

// {"truncation": N, "coeffs": ["p/q", ...]} with exactly N+1 strings.
inline nlohmann::json to_json(const series& f) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : f.coeffs())
        coeffs.push_back(c.str());
    return nlohmann::json{{"truncation", f.truncation()}, {"coeffs", std::move(coeffs)}};
}

inline series series_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("truncation") || !j.contains("coeffs") ||
        !j["coeffs"].is_array())
        throw precondition_violated("series JSON needs {\"truncation\", \"coeffs\"}");
    const auto truncation = j["truncation"].get<std::size_t>();
    const auto& arr = j["coeffs"];
    if (arr.size() != truncation + 1)
        throw precondition_violated("series JSON needs truncation + 1 coefficients");
    std::vector<rational> c;
    c.reserve(arr.size());
    for (const auto& item : arr)
        c.push_back(rational::parse(item.get<std::string>()));
    return series(std::move(c));
}

// {"check": name, "passed": bool, "mismatch": {...} | null, "seed": u64}
inline nlohmann::json to_json(const verify_report& report) {
    nlohmann::json mismatch;
    if (report.first_mismatch) {
        mismatch = nlohmann::json{{"index", report.first_mismatch->index},
                                  {"lhs", report.first_mismatch->lhs.str()},
                                  {"rhs", report.first_mismatch->rhs.str()}};
    }
    return nlohmann::json{{"check", report.check},
                          {"passed", report.passed},
                          {"mismatch", std::move(mismatch)},
                          {"seed", report.seed}};
}

} // namespace fpsq
