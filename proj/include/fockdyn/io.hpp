#pragma once

// JSON reading and writing for symbols, functions and reports.
//
// Symbol:   {"dimension": d, "A": [[{"re":x,"im":y}, ...], ...], "b": [...],
//            "tol": t, "exact": {...}}
// Function: {"coefficients": [{"alpha": [..], "value": {"re":x,"im":y}}, ...]}
// Complex values may also be given as plain numbers.

#include "approx.hpp"
#include "classify.hpp"
#include "core.hpp"
#include "exact.hpp"
#include "polynomial.hpp"
#include "spectral.hpp"
#include "symbol.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace fockdyn {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline std::int64_t as_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw InvalidInput(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

inline double as_double(const Json& j, const char* what) {
    if (!j.is_number()) throw InvalidInput(std::string(what) + " must be a number");
    return j.get<double>();
}

inline Rational parse_rational(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    return Rational(as_int(require(j, "num"), "num"), j.contains("den") ? as_int(j.at("den"), "den") : 1);
}

inline std::optional<TagTerm> parse_tag(const Json& j) {
    if (!j.contains("generic")) return std::nullopt;
    if (!j.at("generic").is_string()) throw InvalidInput("generic tag must be a string");
    TagTerm t{j.at("generic").get<std::string>(), 1};
    if (j.contains("coeff")) t.coeff = as_int(j.at("coeff"), "coeff");
    return t;
}

}  // namespace detail

inline Complex parse_complex(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_object()) throw InvalidInput("complex value must be a number or {\"re\",\"im\"}");
    const double re = j.contains("re") ? detail::as_double(j.at("re"), "re") : 0.0;
    const double im = j.contains("im") ? detail::as_double(j.at("im"), "im") : 0.0;
    return {re, im};
}

inline Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

inline Json to_json(const MultiIndex& a) { return Json(a.entries()); }

// ---------------------------------------------------------------------------

inline ExactPolarSpec parse_exact(const Json& j) {
    ExactPolarSpec spec;
    const Json& evs = detail::require(j, "eigenvalues");
    if (!evs.is_array()) throw InvalidInput("exact.eigenvalues must be an array");
    for (const auto& e : evs) {
        ExactEigenvalue ev;
        if (e.contains("modulus")) {
            const Json& m = e.at("modulus");
            if (m.contains("num")) ev.modulus.rational = detail::parse_rational(m);
            ev.modulus.log_tag = detail::parse_tag(m);
        }
        if (e.contains("arg")) {
            const Json& a = e.at("arg");
            if (a.contains("pi_rational")) ev.arg.pi_multiple = detail::parse_rational(a.at("pi_rational"));
            ev.arg.tag = detail::parse_tag(a);
        }
        spec.eigenvalues.push_back(ev);
    }
    if (j.contains("tag_values")) {
        for (const auto& [k, v] : j.at("tag_values").items()) spec.tag_values[k] = detail::as_double(v, "tag value");
    }
    spec.validate();
    return spec;
}

inline AffineSymbol parse_symbol(const Json& j) {
    const Json& ja = detail::require(j, "A");
    const Json& jb = detail::require(j, "b");
    if (!ja.is_array() || ja.empty()) throw InvalidInput("A must be a non-empty array of rows");
    const auto d = static_cast<Eigen::Index>(ja.size());
    if (j.contains("dimension") && detail::as_int(j.at("dimension"), "dimension") != d)
        throw InvalidInput("dimension does not match the number of rows of A");
    AffineSymbol s;
    s.a.resize(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        const Json& row = ja.at(static_cast<std::size_t>(r));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) throw InvalidInput("A must be square");
        for (Eigen::Index c = 0; c < d; ++c) s.a(r, c) = parse_complex(row.at(static_cast<std::size_t>(c)));
    }
    if (!jb.is_array() || static_cast<Eigen::Index>(jb.size()) != d) throw InvalidInput("b must have length d");
    s.b.resize(d);
    for (Eigen::Index i = 0; i < d; ++i) s.b(i) = parse_complex(jb.at(static_cast<std::size_t>(i)));
    if (j.contains("tol")) s.tol = detail::as_double(j.at("tol"), "tol");
    if (j.contains("exact")) s.exact = parse_exact(j.at("exact"));
    s.validate();
    return s;
}

inline Json to_json(const AffineSymbol& s) {
    Json ja = Json::array();
    for (Eigen::Index r = 0; r < s.a.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < s.a.cols(); ++c) row.push_back(to_json(s.a(r, c)));
        ja.push_back(row);
    }
    Json jb = Json::array();
    for (Eigen::Index i = 0; i < s.b.size(); ++i) jb.push_back(to_json(s.b(i)));
    return Json{{"dimension", s.a.rows()}, {"A", ja}, {"b", jb}, {"tol", s.tol}};
}

inline Polynomial parse_polynomial(const Json& j, std::size_t d) {
    const Json& cs = detail::require(j, "coefficients");
    if (!cs.is_array()) throw InvalidInput("coefficients must be an array");
    Polynomial f(d);
    for (const auto& t : cs) {
        const Json& ja = detail::require(t, "alpha");
        if (!ja.is_array() || ja.size() != d) throw InvalidInput("alpha must have length d");
        std::vector<int> e;
        for (const auto& x : ja) e.push_back(static_cast<int>(detail::as_int(x, "alpha entry")));
        f.add(MultiIndex(std::move(e)), parse_complex(detail::require(t, "value")));
    }
    return f;
}

inline Json to_json(const Polynomial& f) {
    Json cs = Json::array();
    for (const auto& [a, c] : f.terms()) cs.push_back(Json{{"alpha", to_json(a)}, {"value", to_json(c)}});
    return Json{{"coefficients", cs}};
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput("malformed JSON in '" + path + "': " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Reports.

inline Json to_json(const BoundednessReport& r) {
    Json j{{"bounded", r.bounded},
           {"compact", r.compact},
           {"operator_norm_of_A", r.operator_norm_of_A},
           {"isometric_subspace_dim", r.isometric_subspace_dim}};
    if (r.violation_witness) {
        Json w = Json::array();
        for (Eigen::Index i = 0; i < r.violation_witness->size(); ++i) w.push_back(to_json((*r.violation_witness)(i)));
        j["violation_witness"] = w;
    }
    return j;
}

inline Json to_json(const SpectralData& s) {
    Json evs = Json::array();
    for (const auto& e : s.eigenvalues)
        evs.push_back(Json{{"value", to_json(e.value)},
                           {"algebraic_multiplicity", e.algebraic_mult},
                           {"geometric_multiplicity", e.geometric_mult},
                           {"block_sizes", e.block_sizes}});
    return Json{{"eigenvalues", evs},
                {"diagonalizable", s.diagonalizable},
                {"cluster_radius", s.cluster_radius},
                {"rank_tol", s.rank_tol},
                {"ill_conditioned", s.ill_conditioned}};
}

inline Json to_json(const CyclicityVerdict& v) {
    Json reasons = Json::array();
    for (const auto& r : v.reasons) {
        Json jr{{"code", r.code}};
        if (r.alpha) jr["alpha"] = *r.alpha;
        jr["text"] = r.text;
        reasons.push_back(jr);
    }
    Json j{{"status", to_string(v.status)}, {"reasons", reasons}};
    if (v.search_height) j["search_height"] = *v.search_height;
    if (v.relation_residual) j["relation_residual"] = *v.relation_residual;
    j["mode"] = v.exact_mode ? "exact" : "numeric";
    return j;
}

inline Json to_json(const ApproxReport& r) {
    Json terms = Json::array();
    for (std::size_t i = 0; i < r.values.size(); ++i)
        terms.push_back(Json{{"alpha", to_json(r.indices[i])}, {"value", r.values[i]}});
    Json j{{"prefactor", r.prefactor}, {"singular_values_of_A", r.lambdas}, {"terms", terms},
           {"closed_form_sum", r.closed_form_sum}};
    if (r.oracle_values)
        j["oracle"] = Json{{"degree", r.oracle_degree.value_or(0)},
                           {"values", *r.oracle_values},
                           {"max_rel_delta", r.max_rel_delta.value_or(0.0)}};
    return j;
}

inline Json to_json(const CyclicVectorReport& r) {
    Json fails = Json::array();
    for (const auto& a : r.failing_indices) fails.push_back(to_json(a));
    return Json{{"verdict", r.verdict},
                {"failing_indices", fails},
                {"basis_order_note", r.basis_order_note},
                {"permutation", r.permutation},
                {"degree_checked", r.degree_checked}};
}

/// Indented plain-text rendering of a JSON report.
inline void render_text(const Json& j, std::ostream& os, int indent = 0) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    auto scalar = [](const Json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_object() && v.size() == 2 && v.contains("re") && v.contains("im")) {
            std::ostringstream s;
            s.precision(12);
            const double im = v.at("im").get<double>();
            s << v.at("re").get<double>() << (im < 0 ? " - " : " + ") << std::abs(im) << "i";
            return s.str();
        }
        return v.dump();
    };
    auto is_leaf = [&](const Json& v) {
        if (!v.is_structured()) return true;
        if (v.is_object() && v.size() == 2 && v.contains("re") && v.contains("im")) return true;
        if (v.is_array()) {
            for (const auto& x : v)
                if (x.is_structured()) return false;
            return true;
        }
        return false;
    };
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (is_leaf(v)) {
                os << pad << k << ": " << scalar(v) << "\n";
            } else {
                os << pad << k << ":\n";
                render_text(v, os, indent + 2);
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (is_leaf(v)) {
                os << pad << "- " << scalar(v) << "\n";
            } else {
                os << pad << "-\n";
                render_text(v, os, indent + 2);
            }
        }
    } else {
        os << pad << scalar(j) << "\n";
    }
}

}  // namespace fockdyn
