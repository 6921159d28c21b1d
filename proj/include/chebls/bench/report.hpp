#pragma once

/// \file report.hpp
/// Benchmark run reports and their CSV/JSON forms.

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chebls::bench {

/// Correct digits -log10|t* - t~*|. +inf when the two agree exactly.
[[nodiscard]] inline double cd_n(double t_star, double t_approx) {
    const double err = std::abs(t_star - t_approx);
    if (err == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return -std::log10(err);
}

struct CaseResult {
    std::string name;
    std::string solver;
    std::vector<double> result;  ///< t~* (one entry) or x~*
    double fval = 0.0;
    /// cd_n for scalar runs, error norm for vector runs; NaN when there is no reference.
    double accuracy = std::numeric_limits<double>::quiet_NaN();
    bool accuracy_is_cd = true;
    int iterations = 0;
    double time_ms = 0.0;
    std::string status;
    bool passed = true;

    bool operator==(const CaseResult&) const = default;
};

struct RunReport {
    std::string suite;
    std::vector<CaseResult> cases;

    [[nodiscard]] bool all_passed() const {
        for (const auto& c : cases) {
            if (!c.passed) {
                return false;
            }
        }
        return true;
    }
};

inline constexpr const char* csv_header = "case,solver,result,fval,cd_n/EN,iterations,time_ms,status";

namespace detail {

inline std::string fmt17(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline double parse17(const std::string& s) {
    if (s == "nan" || s.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (s == "inf" || s == "exact") {
        return std::numeric_limits<double>::infinity();
    }
    if (s == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    return std::stod(s);
}

inline std::string accuracy_cell(const CaseResult& c) {
    if (c.accuracy_is_cd && std::isinf(c.accuracy) && c.accuracy > 0) {
        return "exact";
    }
    if (c.accuracy_is_cd && c.accuracy > 16.0) {
        return "16";
    }
    return fmt17(c.accuracy);
}

inline std::string result_cell(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) {
            s += ';';
        }
        s += fmt17(v[i]);
    }
    return s;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline nlohmann::json number_json(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return fmt17(v);
}

inline double json_number(const nlohmann::json& j) {
    if (j.is_string()) {
        return parse17(j.get<std::string>());
    }
    return j.get<double>();
}

}  // namespace detail

/// One header line plus one row per case. cd_n is shown as "exact" for a zero
/// error and capped at 16 otherwise.
[[nodiscard]] inline std::string to_csv(const RunReport& r) {
    std::ostringstream os;
    os << csv_header << '\n';
    for (const auto& c : r.cases) {
        os << c.name << ',' << c.solver << ',' << detail::result_cell(c.result) << ',' << detail::fmt17(c.fval)
           << ',' << detail::accuracy_cell(c) << ',' << c.iterations << ',' << detail::fmt17(c.time_ms) << ','
           << c.status << '\n';
    }
    return os.str();
}

[[nodiscard]] inline nlohmann::json to_json(const RunReport& r) {
    nlohmann::json cases = nlohmann::json::array();
    for (const auto& c : r.cases) {
        nlohmann::json res = nlohmann::json::array();
        for (double v : c.result) {
            res.push_back(detail::number_json(v));
        }
        cases.push_back({
            {"case", c.name},
            {"solver", c.solver},
            {"result", res},
            {"fval", detail::number_json(c.fval)},
            {c.accuracy_is_cd ? "cd_n" : "EN", detail::number_json(c.accuracy)},
            {"iterations", c.iterations},
            {"time_ms", detail::number_json(c.time_ms)},
            {"status", c.status},
            {"passed", c.passed},
        });
    }
    return {{"suite", r.suite}, {"all_passed", r.all_passed()}, {"cases", cases}};
}

/// Inverse of to_json.
[[nodiscard]] inline RunReport from_json(const nlohmann::json& j) {
    RunReport r;
    r.suite = j.at("suite").get<std::string>();
    for (const auto& c : j.at("cases")) {
        CaseResult cr;
        cr.name = c.at("case").get<std::string>();
        cr.solver = c.at("solver").get<std::string>();
        for (const auto& v : c.at("result")) {
            cr.result.push_back(detail::json_number(v));
        }
        cr.fval = detail::json_number(c.at("fval"));
        cr.accuracy_is_cd = c.contains("cd_n");
        cr.accuracy = detail::json_number(cr.accuracy_is_cd ? c.at("cd_n") : c.at("EN"));
        cr.iterations = c.at("iterations").get<int>();
        cr.time_ms = detail::json_number(c.at("time_ms"));
        cr.status = c.at("status").get<std::string>();
        cr.passed = c.at("passed").get<bool>();
        r.cases.push_back(std::move(cr));
    }
    return r;
}

/// Parses to_csv output. The pass flag is not part of the CSV and comes back
/// true; the accuracy column comes back with its display cap applied.
[[nodiscard]] inline RunReport from_csv(const std::string& text, bool scalar_suite = true) {
    RunReport r;
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != csv_header) {
        throw std::runtime_error("from_csv: missing or unexpected header");
    }
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        const auto f = detail::split(line, ',');
        if (f.size() != 8) {
            throw std::runtime_error("from_csv: expected 8 columns, got " + std::to_string(f.size()));
        }
        CaseResult c;
        c.name = f[0];
        c.solver = f[1];
        if (!f[2].empty()) {
            for (const auto& v : detail::split(f[2], ';')) {
                c.result.push_back(detail::parse17(v));
            }
        }
        c.fval = detail::parse17(f[3]);
        c.accuracy_is_cd = scalar_suite;
        c.accuracy = detail::parse17(f[4]);
        c.iterations = std::stoi(f[5]);
        c.time_ms = detail::parse17(f[6]);
        c.status = f[7];
        r.cases.push_back(std::move(c));
    }
    return r;
}

enum class ReportFormat { csv, json };

[[nodiscard]] inline std::string render(const RunReport& r, ReportFormat fmt) {
    return fmt == ReportFormat::csv ? to_csv(r) : to_json(r).dump(2) + "\n";
}

inline void emit_report(const RunReport& r, ReportFormat fmt, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("emit_report: cannot open '" + path + "' for writing");
    }
    out << render(r, fmt);
    if (!out) {
        throw std::runtime_error("emit_report: write to '" + path + "' failed");
    }
}

}  // namespace chebls::bench
