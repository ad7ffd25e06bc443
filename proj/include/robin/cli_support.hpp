#pragma once

#include <robin/height_bounds.hpp>
#include <robin/padic_equilibrium.hpp>
#include <robin/real_equilibrium.hpp>

#include <json.hpp>

#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// Output formatting and config parsing for the command-line front end.
// JSON is emitted through dump_canonical: stable key order and %.12g floats,
// which makes parse -> re-serialize byte-identical.

namespace robin::cli {

using ordered_json = nlohmann::ordered_json;

/// 12 significant digits; idempotent across print -> parse -> print.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace detail {

inline void escape_into(const std::string& s, std::string& out) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

inline void dump_into(const ordered_json& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    const std::string pad2(static_cast<std::size_t>(indent + 2), ' ');
    switch (j.type()) {
        case ordered_json::value_t::object: {
            if (j.empty()) { out += "{}"; return; }
            out += "{\n";
            std::size_t i = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++i) {
                out += pad2;
                escape_into(it.key(), out);
                out += ": ";
                dump_into(it.value(), out, indent + 2);
                if (i + 1 < j.size()) out += ',';
                out += '\n';
            }
            out += pad + "}";
            return;
        }
        case ordered_json::value_t::array: {
            if (j.empty()) { out += "[]"; return; }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                out += pad2;
                dump_into(j[i], out, indent + 2);
                if (i + 1 < j.size()) out += ',';
                out += '\n';
            }
            out += pad + "]";
            return;
        }
        case ordered_json::value_t::string: escape_into(j.get<std::string>(), out); return;
        case ordered_json::value_t::number_float: out += format_double(j.get<double>()); return;
        case ordered_json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; return;
        case ordered_json::value_t::null: out += "null"; return;
        default: out += j.dump(); return;  // integers
    }
}

}  // namespace detail

inline std::string dump_canonical(const ordered_json& j) {
    std::string out;
    detail::dump_into(j, out, 0);
    out += '\n';
    return out;
}

// ---------------------------------------------------------------------------
// place-list config: one place per line,
//   real r=<float> [weight=<frac>]
//   padic p=<int> [e=<int>] [f=<int>] n=<int> [weight=<frac>]
// '#' starts a comment; blank lines are skipped.

struct ConfigParseError : std::runtime_error {
    int line;
    ConfigParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

inline std::vector<PlaceSpec> parse_place_config(std::istream& in) {
    std::vector<PlaceSpec> places;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream tokens(line);
        std::string kind;
        if (!(tokens >> kind)) continue;

        std::map<std::string, std::string> kv;
        std::string tok;
        while (tokens >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos || eq == 0)
                throw ConfigParseError(line_no, "expected key=value, got '" + tok + "'");
            if (!kv.emplace(tok.substr(0, eq), tok.substr(eq + 1)).second)
                throw ConfigParseError(line_no, "duplicate key '" + tok.substr(0, eq) + "'");
        }
        auto take = [&](const char* key) -> std::optional<std::string> {
            auto it = kv.find(key);
            if (it == kv.end()) return std::nullopt;
            std::string v = it->second;
            kv.erase(it);
            return v;
        };
        auto parse_long = [&](const std::string& v, const char* what) -> long {
            try {
                std::size_t used = 0;
                long x = std::stol(v, &used);
                if (used != v.size()) throw std::invalid_argument(v);
                return x;
            } catch (const std::exception&) {
                throw ConfigParseError(line_no, std::string("bad ") + what + " '" + v + "'");
            }
        };

        try {
            Rat weight(1);
            if (auto w = take("weight")) {
                try {
                    weight = rat_from_string(*w);
                } catch (const std::invalid_argument&) {
                    throw ConfigParseError(line_no, "bad weight '" + *w + "' (use a fraction like 1/2)");
                }
                if (!(weight > 0) || weight > 1)
                    throw ConfigParseError(line_no, "weight must lie in (0, 1]");
            }
            if (kind == "real") {
                auto rstr = take("r");
                if (!rstr) throw ConfigParseError(line_no, "real place needs r=<float>");
                double r = 0;
                try {
                    std::size_t used = 0;
                    r = std::stod(*rstr, &used);
                    if (used != rstr->size()) throw std::invalid_argument(*rstr);
                } catch (const std::exception&) {
                    throw ConfigParseError(line_no, "bad r '" + *rstr + "'");
                }
                places.push_back(PlaceSpec::archimedean(RealIntervalSpec(r), weight));
            } else if (kind == "padic") {
                auto pstr = take("p");
                auto nstr = take("n");
                if (!pstr || !nstr)
                    throw ConfigParseError(line_no, "padic place needs p=<prime> and n=<int>");
                long p = parse_long(*pstr, "p");
                long n = parse_long(*nstr, "n");
                long e = 1, f = 1;
                if (auto es = take("e")) e = parse_long(*es, "e");
                if (auto fs = take("f")) f = parse_long(*fs, "f");
                places.push_back(PlaceSpec::padic(
                    LocalFieldSpec(p, static_cast<int>(e), static_cast<int>(f)),
                    static_cast<int>(n), weight));
            } else {
                throw ConfigParseError(line_no, "unknown place kind '" + kind + "'");
            }
            if (!kv.empty())
                throw ConfigParseError(line_no, "unknown key '" + kv.begin()->first + "'");
        } catch (const ConfigParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigParseError(line_no, e.what());
        }
    }
    return places;
}

// ---------------------------------------------------------------------------
// serializers

inline ordered_json scaled_log_to_json(const ScaledLog& v) {
    ordered_json j = ordered_json::object();
    j["coeff"] = rat_to_string(v.coeff);
    j["prime"] = v.prime;
    return j;
}

inline ordered_json report_to_json(const std::vector<PlaceSpec>& places,
                                   const BoundReport& report) {
    ordered_json j = ordered_json::object();
    j["schema_version"] = "1";
    j["places"] = ordered_json::array();
    for (std::size_t i = 0; i < report.per_place.size(); ++i) {
        const PlaceReport& pr = report.per_place[i];
        ordered_json pj = ordered_json::object();
        ordered_json params = ordered_json::object();
        if (pr.archimedean) {
            pj["kind"] = "real";
            params["r"] = places[i].real->r;
        } else {
            pj["kind"] = "padic";
            params["p"] = places[i].nonarch->field.p;
            params["e"] = places[i].nonarch->field.e;
            params["f"] = places[i].nonarch->field.f;
            params["n"] = places[i].nonarch->n;
        }
        pj["parameters"] = params;
        if (pr.v_delta_exact) pj["v_delta_exact"] = scaled_log_to_json(*pr.v_delta_exact);
        pj["v_delta_float"] = pr.v_delta;
        pj["weight"] = rat_to_string(pr.weight);
        pj["contribution"] = pr.contribution;
        j["places"].push_back(pj);
    }
    j["total"] = report.total;
    ordered_json refs = ordered_json::object();
    for (const auto& [name, value] : report.references) refs[name] = value;
    j["references"] = refs;
    if (!report.advisory.empty()) j["advisory"] = report.advisory;
    return j;
}

inline std::string report_to_csv(const BoundReport& report) {
    std::string out = "row,description,v_delta,weight,contribution\n";
    for (const PlaceReport& pr : report.per_place)
        out += "place," + pr.description + "," + format_double(pr.v_delta) + "," +
               rat_to_string(pr.weight) + "," + format_double(pr.contribution) + "\n";
    out += "total,,,," + format_double(report.total) + "\n";
    for (const auto& [name, value] : report.references)
        out += "reference," + name + ",,," + format_double(value) + "\n";
    return out;
}

inline std::string report_to_human(const BoundReport& report) {
    std::string out;
    for (const PlaceReport& pr : report.per_place) {
        out += pr.description + ": V_delta = ";
        if (pr.v_delta_exact) out += pr.v_delta_exact->str() + " = ";
        out += format_double(pr.v_delta) + "  (weight " + rat_to_string(pr.weight) +
               ", contributes " + format_double(pr.contribution) + ")\n";
    }
    out += "height lower bound: " + format_double(report.total) + "\n";
    for (const auto& [name, value] : report.references)
        out += "reference " + name + ": " + format_double(value) + "\n";
    if (!report.advisory.empty()) out += report.advisory + "\n";
    return out;
}

}  // namespace robin::cli
