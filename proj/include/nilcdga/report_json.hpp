#pragma once

// JSON rendering for reports. Scalars become strings ("-4/3", "1/2 + 1/3*sqrt3")
// so nothing is rounded; keys come out sorted because nlohmann::json uses std::map.

#include <nilcdga/acceptance_suite.hpp>
#include <nilcdga/check.hpp>
#include <nilcdga/cohomology.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace nilcdga {

using Json = nlohmann::json;

inline Json to_json(const ExactScalar& s) { return s.str(); }

inline Json to_json(const std::vector<ExactScalar>& v) {
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(x.str());
    return out;
}

inline Json to_json(const Check& c) { return {{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}}; }

inline Json to_json(const std::vector<Check>& checks) {
    Json out = Json::array();
    for (const auto& c : checks)
        out.push_back(to_json(c));
    return out;
}

inline Json to_json(const CohomologyClass& x) {
    return {{"degree", x.degree()}, {"coordinates", to_json(x.coordinates())}, {"representative", x.representative().str()}};
}

inline Json to_json(const IntMatrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j).get_si());
        out.push_back(row);
    }
    return out;
}

inline Json to_json(const Criterion& c) {
    return {{"number", c.number}, {"name", c.name}, {"pass", c.pass()}, {"witness", c.witness()},
            {"checks", to_json(c.checks)}};
}

inline Json make_report(const std::string& subcommand, const std::string& input, Json result,
                        const std::vector<Check>& checks = {}) {
    return {{"subcommand", subcommand}, {"input", input}, {"result", std::move(result)}, {"checks", to_json(checks)}};
}

} // namespace nilcdga
