#pragma once

#include "wallislab/borwein.hpp"
#include "wallislab/decimal.hpp"
#include "wallislab/inequalities.hpp"
#include "wallislab/sequences.hpp"
#include "wallislab/version.hpp"

#include <json.hpp>

#include <ctime>
#include <map>
#include <string>
#include <vector>

namespace wallislab {

/// Self-describing report: every emission echoes its command and inputs,
/// carries a UTC timestamp and the artifact version, and keeps the payload
/// under a "kind"-tagged results object. JSON layout is pinned by
/// docs/report-schema.json.
struct ReportEnvelope {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::string generated_at;  // RFC 3339 UTC
    std::string artifact_version = WALLISLAB_VERSION;
    nlohmann::json results;
};

inline std::string rfc3339_utc_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline nlohmann::json to_json(const ReportEnvelope& r) {
    nlohmann::json j;
    j["command"] = r.command;
    j["parameters"] = r.parameters;
    j["generated_at"] = r.generated_at;
    j["artifact_version"] = r.artifact_version;
    j["results"] = r.results;
    return j;
}

inline ReportEnvelope envelope_from_json(const nlohmann::json& j) {
    ReportEnvelope r;
    r.command = j.at("command").get<std::string>();
    r.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
    r.generated_at = j.at("generated_at").get<std::string>();
    r.artifact_version = j.at("artifact_version").get<std::string>();
    r.results = j.at("results");
    return r;
}

// ---------------------------------------------------------------------------
// Result payload builders.
// ---------------------------------------------------------------------------

/// Exit-code contract for verification runs: 1 on any FAILS, 3 on
/// UNDECIDED-only failures, 0 otherwise.
inline int verify_exit_code(std::size_t fails, std::size_t undecided) {
    if (fails > 0) return 1;
    if (undecided > 0) return 3;
    return 0;
}

inline nlohmann::json results_json(const SeqTable& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
        rows.push_back({{"n", row.n},
                        {"exact", row.exact},
                        {"decimal", row.decimal},
                        {"target", row.target},
                        {"abs_error", row.abs_error}});
    }
    return {{"kind", "seq_table"}, {"name", t.name}, {"rows", rows}};
}

inline nlohmann::json enclosure_json(const Enclosure& e, unsigned digits) {
    return {{"target", to_string(e.target)},
            {"n", e.n},
            {"lo_exact", e.lo.to_string()},
            {"hi_exact", e.hi.to_string()},
            {"lo_decimal", to_decimal_string(e.lo, digits)},
            {"hi_decimal", to_decimal_string(e.hi, digits)},
            {"width_decimal", to_decimal_string(e.width(), digits)}};
}

inline nlohmann::json results_json(const std::vector<Enclosure>& list, unsigned digits) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& e : list) items.push_back(enclosure_json(e, digits));
    return {{"kind", "enclosures"}, {"items", items}};
}

inline nlohmann::json results_json(const std::vector<CheckOutcome>& outcomes) {
    nlohmann::json items = nlohmann::json::array();
    std::size_t holds = 0, fails = 0, undecided = 0;
    for (const auto& o : outcomes) {
        switch (o.verdict) {
            case Verdict::Holds: ++holds; break;
            case Verdict::Fails: ++fails; break;
            case Verdict::Undecided: ++undecided; break;
        }
        items.push_back({{"name", o.name},
                         {"n", o.n},
                         {"grade", to_string(o.grade)},
                         {"verdict", to_string(o.verdict)},
                         {"witness", o.witness},
                         {"digits_used", o.digits_used}});
    }
    return {{"kind", "check_outcomes"},
            {"summary", {{"holds", holds}, {"fails", fails}, {"undecided", undecided}}},
            {"items", items}};
}

inline nlohmann::json quad_json(const QuadResult& q) {
    return {{"value", q.value.str(30)},
            {"discretization_error", q.discretization_error.str(6)},
            {"tail_bound", q.tail_bound.str(6)},
            {"uncertainty", q.total_uncertainty().str(6)},
            {"evaluations", q.evaluations},
            {"tolerance_met", q.tolerance_met}};
}

inline nlohmann::json results_json(const std::vector<ConservationReport>& reports) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& r : reports) {
        items.push_back({{"t", r.t.str(15)},
                         {"F", quad_json(r.F)},
                         {"G", quad_json(r.G)},
                         {"sum_deviation", r.sum_deviation.str(6)},
                         {"allowed_deviation", r.allowed_deviation.str(6)},
                         {"pi_quarter_ref", r.pi_quarter_ref},
                         {"within_tolerance", r.within_tolerance},
                         {"decay_bound_ok", r.decay_bound_ok}});
    }
    return {{"kind", "conservation"}, {"items", items}};
}

inline nlohmann::json integral_results_json(const QuadResult& q, const std::string& method) {
    nlohmann::json j = quad_json(q);
    j["kind"] = "integral";
    j["method"] = method;
    return j;
}

inline nlohmann::json point_estimate_json(const BigRational& exact, unsigned digits,
                                          const std::string& note) {
    return {{"kind", "point_estimate"},
            {"exact", exact.to_string()},
            {"decimal", to_decimal_string(exact, digits)},
            {"note", note}};
}

// ---------------------------------------------------------------------------
// CSV emission. The envelope rides along as '#' comment lines so CSV
// reports stay self-describing; decimal fields reuse the exact same
// strings as the JSON path.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

}  // namespace detail

inline std::string to_csv(const ReportEnvelope& r) {
    std::string out;
    out += "# command: " + r.command + "\n";
    for (const auto& [k, v] : r.parameters) out += "# " + k + ": " + v + "\n";
    out += "# generated_at: " + r.generated_at + "\n";
    out += "# artifact_version: " + r.artifact_version + "\n";
    const nlohmann::json& res = r.results;
    const std::string kind = res.at("kind").get<std::string>();
    auto field = [](const nlohmann::json& j, const char* key) {
        const auto& v = j.at(key);
        if (v.is_string()) return detail::csv_escape(v.get<std::string>());
        return v.dump();
    };
    if (kind == "seq_table") {
        out += "n,exact,decimal,target,abs_error\n";
        for (const auto& row : res.at("rows")) {
            out += field(row, "n") + "," + field(row, "exact") + "," + field(row, "decimal") + "," +
                   field(row, "target") + "," + field(row, "abs_error") + "\n";
        }
    } else if (kind == "enclosures") {
        out += "target,n,lo_exact,hi_exact,lo_decimal,hi_decimal,width_decimal\n";
        for (const auto& e : res.at("items")) {
            out += field(e, "target") + "," + field(e, "n") + "," + field(e, "lo_exact") + "," +
                   field(e, "hi_exact") + "," + field(e, "lo_decimal") + "," +
                   field(e, "hi_decimal") + "," + field(e, "width_decimal") + "\n";
        }
    } else if (kind == "check_outcomes") {
        out += "name,n,grade,verdict,digits_used,witness\n";
        for (const auto& o : res.at("items")) {
            out += field(o, "name") + "," + field(o, "n") + "," + field(o, "grade") + "," +
                   field(o, "verdict") + "," + field(o, "digits_used") + "," +
                   field(o, "witness") + "\n";
        }
    } else if (kind == "conservation") {
        out += "t,F_value,G_value,sum_deviation,allowed_deviation,within_tolerance,decay_bound_ok\n";
        for (const auto& c : res.at("items")) {
            out += field(c, "t") + "," + field(c.at("F"), "value") + "," +
                   field(c.at("G"), "value") + "," + field(c, "sum_deviation") + "," +
                   field(c, "allowed_deviation") + "," + field(c, "within_tolerance") + "," +
                   field(c, "decay_bound_ok") + "\n";
        }
    } else if (kind == "integral") {
        out += "value,uncertainty,evaluations,tolerance_met\n";
        out += field(res, "value") + "," + field(res, "uncertainty") + "," +
               field(res, "evaluations") + "," + field(res, "tolerance_met") + "\n";
    } else if (kind == "point_estimate") {
        out += "exact,decimal,note\n";
        out += field(res, "exact") + "," + field(res, "decimal") + "," + field(res, "note") + "\n";
    } else {
        throw std::invalid_argument("to_csv: unknown results kind " + kind);
    }
    return out;
}

}  // namespace wallislab
