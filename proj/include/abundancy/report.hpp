#pragma once

#include "abundancy/arith.hpp"
#include "abundancy/harmonic.hpp"
#include "abundancy/outlaw.hpp"
#include "abundancy/robin.hpp"
#include "abundancy/superabundant.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace abundancy {

using Json = nlohmann::ordered_json;

// Integers that may exceed 64 bits travel as decimal strings.

inline Json to_json(const RobinReport& r)
{
    return Json{{"n", r.n.get_str()},
                {"sigma", r.sigma.get_str()},
                {"index_num", r.index.numerator().get_str()},
                {"index_den", r.index.denominator().get_str()},
                {"bound_lo", r.bound.lo_decimal()},
                {"bound_hi", r.bound.hi_decimal()},
                {"verdict", std::string(to_string(r.verdict))},
                {"precision", r.precision_digits}};
}

inline Json to_json(const LagariasReport& r)
{
    const ExactRatio index(r.sigma, to_mpz(r.n));
    return Json{{"n", std::to_string(r.n)},
                {"sigma", r.sigma.get_str()},
                {"index_num", index.numerator().get_str()},
                {"index_den", index.denominator().get_str()},
                {"bound_lo", r.bound.lo_decimal()},
                {"bound_hi", r.bound.hi_decimal()},
                {"verdict", std::string(to_string(r.verdict))},
                {"precision", r.precision_digits}};
}

inline const std::vector<std::string>& report_fields()
{
    static const std::vector<std::string> fields{"n", "sigma", "index_num", "index_den", "bound_lo", "bound_hi", "verdict", "precision"};
    return fields;
}

inline Json to_json(const SuperabundantRecord& r)
{
    return Json{{"n", r.n.get_str()},
                {"factorization", r.factorization.to_string()},
                {"index_num", r.index.numerator().get_str()},
                {"index_den", r.index.denominator().get_str()}};
}

inline Json to_json(const ExactRatio& q, const OutlawVerdict& v)
{
    Json j{{"q_num", q.numerator().get_str()}, {"q_den", q.denominator().get_str()}, {"status", std::string(to_string(v.status()))}};
    j["witness"] = v.witness() ? Json(std::to_string(*v.witness())) : Json(nullptr);
    j["rule"] = v.rule() ? Json(std::string(to_string(*v.rule()))) : Json(nullptr);
    j["search_bound"] = v.search_bound() ? Json(std::to_string(*v.search_bound())) : Json(nullptr);
    j["detail"] = describe(v);
    return j;
}

inline std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

inline std::string csv_cell(const Json& v)
{
    if (v.is_null()) return "";
    if (v.is_string()) return csv_escape(v.get<std::string>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return csv_escape(v.dump());
}

inline void write_csv_header(std::ostream& out, const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i];
    out << '\n';
}

inline void write_csv_row(std::ostream& out, const std::vector<std::string>& fields, const Json& row)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        out << (i ? "," : "");
        if (row.contains(fields[i])) out << csv_cell(row.at(fields[i]));
    }
    out << '\n';
}

} // namespace abundancy
