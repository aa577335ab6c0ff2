#pragma once

#include <chrono>
#include <cstdio>
#include <ctime>
#include <string>
#include <vector>

#include "json.hpp"

#include "betatest/experiment.hpp"
#include "betatest/pillai.hpp"
#include "betatest/version.hpp"

namespace betatest {

/// Full echo of a CLI invocation: rerunning the stored args reproduces the
/// report bit-identically (timestamps aside).
struct RunManifest {
    std::string command;
    std::vector<std::string> args;
    std::string tool_version = kVersion;
    std::string created;  ///< ISO-8601 UTC
};

inline std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

inline nlohmann::json to_json(const RunManifest& m) {
    return {{"command", m.command},
            {"args", m.args},
            {"tool_version", m.tool_version},
            {"created", m.created}};
}

inline nlohmann::json to_json(const TwoSampleDesign& d) {
    return {{"n1", d.n1},         {"n2", d.n2},       {"p", d.p},
            {"y1n", d.y1n},       {"y2n", d.y2n},     {"hn", d.hn},
            {"c1", d.c1},         {"c2", d.c2},       {"alpha_n", d.alpha_n},
            {"y1_eff", d.y1_eff}, {"y2_eff", d.y2_eff}, {"h_eff", d.h_eff},
            {"c1_eff", d.c1_eff}, {"c2_eff", d.c2_eff}, {"alpha_eff", d.alpha_eff}};
}

inline nlohmann::json to_json(const KurtosisPair& k) {
    return {{"delta1", k.delta1}, {"delta2", k.delta2}, {"source", to_string(k.source)}};
}

inline nlohmann::json to_json(const TestReport& r) {
    nlohmann::json spectrum = {{"k0", r.spectrum.k0}, {"k1", r.spectrum.k1}};
    if (std::isfinite(r.spectrum.min_retained)) {
        spectrum["min_retained"] = r.spectrum.min_retained;
        spectrum["max_retained"] = r.spectrum.max_retained;
    } else {
        spectrum["min_retained"] = nullptr;
        spectrum["max_retained"] = nullptr;
    }
    spectrum["eigenvalues"] = std::vector<double>(
        r.spectrum.all_eigenvalues.data(),
        r.spectrum.all_eigenvalues.data() + r.spectrum.all_eigenvalues.size());
    return {{"statistic", to_string(r.statistic)},
            {"raw_value", r.raw_value},
            {"limit_term", r.limit_term},
            {"mean_term", r.mean_term},
            {"sd_term", r.sd_term},
            {"standardized", r.standardized},
            {"p_value", r.p_value},
            {"design", to_json(r.design)},
            {"kurtosis", to_json(r.kurtosis)},
            {"spectrum", spectrum},
            {"warnings", r.warnings}};
}

/// Report document for the two-sample test command.
inline nlohmann::json test_report_document(const RunManifest& manifest,
                                           const std::vector<TestReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return {{"schema_version", 1},
            {"tool", "betatest"},
            {"manifest", to_json(manifest)},
            {"reports", arr}};
}

}  // namespace betatest
