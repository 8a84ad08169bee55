// Result record for empirical estimate runs: headline values, named
// constants, a labelled trend series, and enough metadata to reproduce.
#pragma once

#include "dkg/grid.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace dkg {

struct EstimateReport {
    std::string operation;
    nlohmann::json parameters = nlohmann::json::object();
    std::uint64_t seed = 0;
    std::size_t count = 0;
    nlohmann::json grid = nlohmann::json::object();
    double epsilon = 0.0;

    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;

    std::map<std::string, double> constants;
    std::vector<std::pair<std::string, double>> trend;
    std::size_t skipped = 0;
    std::vector<std::string> warnings;

    void set_headline(double l, double r) {
        lhs = l;
        rhs = r;
        ratio = r > 0.0 ? l / r : 0.0;
    }

    nlohmann::json to_json() const {
        nlohmann::json c;
        for (const auto& [k, v] : constants) c[k] = v;
        nlohmann::json t = nlohmann::json::array();
        for (const auto& [k, v] : trend) t.push_back({{"label", k}, {"value", v}});
        c["trend"] = t;
        return nlohmann::json{{"operation", operation}, {"parameters", parameters},
                              {"seed", seed},           {"count", count},
                              {"grid", grid},           {"epsilon", epsilon},
                              {"lhs", lhs},             {"rhs", rhs},
                              {"ratio", ratio},         {"constants", c},
                              {"skipped", skipped},     {"warnings", warnings}};
    }

    // Plot-ready companion: one row per trend entry.
    void write_csv(std::ostream& os) const {
        os << "label,value\n";
        for (const auto& [k, v] : trend) os << k << "," << nlohmann::json(v).dump() << "\n";
    }
};

inline nlohmann::json grid_json(const GridSpec& g) {
    return {{"n_x", g.n_x}, {"period_L", g.period_L}, {"n_t", g.n_t}, {"window_T", g.window_T}};
}

} // namespace dkg
