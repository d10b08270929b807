#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace avgeo {

struct CheckResult {
    std::string id;
    bool pass = false;
    std::optional<std::string> witness; // counterexample on failure, value on computations
    long long ms = 0;
};

struct Report {
    std::string suite;
    std::vector<CheckResult> results;

    bool all_pass() const {
        for (const auto& r : results)
            if (!r.pass) return false;
        return true;
    }

    void add(std::string id, bool pass, std::optional<std::string> witness = std::nullopt) {
        results.push_back({std::move(id), pass, std::move(witness), 0});
    }

    void merge(const Report& other) {
        for (const auto& r : other.results) results.push_back(r);
    }
};

/// Stable text rendering: no timings, one line per result.
inline std::string render_text(const Report& r) {
    std::ostringstream os;
    os << "suite: " << r.suite << "\n";
    for (const auto& c : r.results) {
        os << (c.pass ? "[PASS] " : "[FAIL] ") << c.id;
        if (c.witness) os << " :: " << *c.witness;
        os << "\n";
    }
    os << (r.all_pass() ? "result: ok" : "result: failing") << "\n";
    return os.str();
}

inline nlohmann::json render_json(const Report& r) {
    nlohmann::json j;
    j["suite"] = r.suite;
    j["results"] = nlohmann::json::array();
    for (const auto& c : r.results) {
        nlohmann::json e;
        e["id"] = c.id;
        e["status"] = c.pass ? "pass" : "fail";
        if (c.witness) e["witness"] = *c.witness;
        e["ms"] = c.ms;
        j["results"].push_back(e);
    }
    return j;
}

} // namespace avgeo
