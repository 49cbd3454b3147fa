#pragma once

// Command dispatch shared by the command-line tool and its tests.

#include "approx.hpp"
#include "classify.hpp"
#include "combinatorics.hpp"
#include "core.hpp"
#include "io.hpp"
#include "orbit.hpp"
#include "projection.hpp"
#include "spectral.hpp"
#include "symbol.hpp"
#include "truncation.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>

namespace fockdyn {

inline constexpr const char* kToolName = "fockdyn";
inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInvalid = 2, kExitBudget = 3, kExitInternal = 4 };

struct RunConfig {
    std::string command;
    std::string input_path;
    std::string function_path;
    std::optional<int> degree;
    std::optional<int> top;
    std::optional<int> height;
    std::optional<double> tol;
    std::uint64_t seed = 0;
    std::optional<int> steps;
    std::string projector = "homogeneous";
    std::string mode = "recentering";
    std::string output;         // empty: stdout
    std::string format = "json";
};

struct RunOutcome {
    int exit_code = kExitOk;
    Json report;
};

inline const std::set<std::string>& known_commands() {
    static const std::set<std::string> cmds{"analyze", "spectrum", "approx", "orbit-rank",
                                            "cyclic-vector", "project", "demo-kronecker"};
    return cmds;
}

/// Polynomial with every coefficient of degree <= n drawn from a seeded
/// complex normal distribution.
inline Polynomial random_polynomial(std::size_t d, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Polynomial f(d);
    for (const auto& a : indices_up_to(d, n)) {
        const double re = g(rng), im = g(rng);
        f.add(a, Complex(re, im));
    }
    return f;
}

namespace detail {

inline void validate_config(const RunConfig& c) {
    if (!known_commands().count(c.command)) throw std::invalid_argument("unknown command '" + c.command + "'");
    if (c.input_path.empty()) throw std::invalid_argument("--input is required");
    if (c.format != "json" && c.format != "text") throw std::invalid_argument("--format must be json or text");
    if ((c.command == "cyclic-vector" || c.command == "project") && c.function_path.empty())
        throw std::invalid_argument("--function is required for " + c.command);
    if (c.command == "project" && !c.degree) throw std::invalid_argument("--degree is required for project");
    if (c.command == "orbit-rank" && !c.degree) throw std::invalid_argument("--degree is required for orbit-rank");
    if (c.command == "orbit-rank" && c.projector != "homogeneous" && c.projector != "none")
        throw std::invalid_argument("--projector must be homogeneous or none");
    if (c.degree && *c.degree < 0) throw std::invalid_argument("--degree must be nonnegative");
    if (c.top && *c.top <= 0) throw std::invalid_argument("--top must be positive");
    if (c.height && *c.height <= 0) throw std::invalid_argument("--height must be positive");
    if (c.steps && *c.steps <= 0) throw std::invalid_argument("--steps must be positive");
    if (c.tol && !(*c.tol > 0)) throw std::invalid_argument("--tol must be positive");
}

inline AffineSymbol load_symbol(const RunConfig& c) {
    AffineSymbol s = parse_symbol(load_json_file(c.input_path));
    if (c.tol) s.tol = *c.tol;
    s.validate();
    return s;
}

inline Json run_analyze(const RunConfig& c, const AffineSymbol& s, int& exit_code) {
    Json r;
    const auto rep = check_boundedness(s);
    r["boundedness"] = to_json(rep);
    r["spectral"] = to_json(eigen_decompose(s.a, 1e-7, s.tol));
    if (!rep.bounded) {
        r["verdict"] = Json{{"status", "refused"}, {"text", "C_phi is unbounded; cyclicity is not defined"}};
        exit_code = kExitInvalid;
        return r;
    }
    Json xi = Json::array();
    const ComplexVector fp = fixed_point(s);
    for (Eigen::Index i = 0; i < fp.size(); ++i) xi.push_back(to_json(fp(i)));
    r["fixed_point"] = xi;
    ClassifyOptions opt;
    if (c.height) opt.height = *c.height;
    r["verdict"] = to_json(classify_cyclicity(s, opt));
    return r;
}

inline Json run_spectrum(const RunConfig& c, const AffineSymbol& s) {
    Json r;
    r["spectral"] = to_json(eigen_decompose(s.a, 1e-7, s.tol));
    const auto rep = check_boundedness(s);
    r["boundedness"] = to_json(rep);
    if (rep.bounded) {
        const auto sbf = schur_block_form(s);
        r["schur_split_index"] = sbf.split_index;
        if (c.degree) {
            const auto op = assemble_truncated(s, *c.degree);
            Json ev = Json::array();
            for (const auto& z : truncated_spectrum(op)) ev.push_back(to_json(z));
            r["truncated_spectrum"] = Json{{"degree", *c.degree}, {"basis_size", op.basis.size()}, {"eigenvalues", ev}};
        }
    }
    return r;
}

inline Json run_approx(const RunConfig& c, const AffineSymbol& s) {
    const auto k = static_cast<std::size_t>(c.top.value_or(10));
    return to_json(approx_numbers_with_oracle(s, k));
}

inline Json run_orbit_rank(const RunConfig& c, const AffineSymbol& s) {
    const int n = *c.degree;
    const int steps = c.steps.value_or(static_cast<int>(count_up_to(static_cast<std::size_t>(s.dimension()), n)));
    const Polynomial f = c.function_path.empty()
                             ? random_polynomial(static_cast<std::size_t>(s.dimension()), n, c.seed)
                             : parse_polynomial(load_json_file(c.function_path), static_cast<std::size_t>(s.dimension()));
    const OrbitProjector proj = c.projector == "none" ? OrbitProjector::none() : OrbitProjector::homogeneous(n);
    const auto res = orbit_krylov_rank(s, f, n, steps, proj);
    const std::size_t target = c.projector == "none"
                                   ? count_up_to(static_cast<std::size_t>(s.dimension()), n)
                                   : homogeneous_indices(static_cast<std::size_t>(s.dimension()), n).size();
    return Json{{"rank", res.rank},
                {"threshold", res.threshold},
                {"relative_threshold", 1e-8},
                {"steps", steps},
                {"degree", n},
                {"projector", c.projector},
                {"target_dimension", target},
                {"function", c.function_path.empty() ? "random" : "file"}};
}

inline Json run_cyclic_vector(const RunConfig& c, const AffineSymbol& s) {
    const Polynomial f = parse_polynomial(load_json_file(c.function_path), static_cast<std::size_t>(s.dimension()));
    ClassifyOptions opt;
    if (c.height) opt.height = *c.height;
    return to_json(cyclic_vector_test(s, f, c.degree.value_or(std::max(f.degree(), 0)), opt));
}

inline Json run_project(const RunConfig& c, const AffineSymbol& s) {
    const Polynomial f = parse_polynomial(load_json_file(c.function_path), static_cast<std::size_t>(s.dimension()));
    const ComplexVector xi = fixed_point(s);
    const Polynomial p = project_homogeneous(f, xi, *c.degree, parse_projection_mode(c.mode));
    Json jxi = Json::array();
    for (Eigen::Index i = 0; i < xi.size(); ++i) jxi.push_back(to_json(xi(i)));
    return Json{{"center", jxi}, {"degree", *c.degree}, {"mode", c.mode}, {"projection", to_json(p)}};
}

inline Json run_kronecker(const RunConfig& c) {
    const Json j = load_json_file(c.input_path);
    std::vector<double> thetas;
    for (const auto& t : require(j, "thetas")) thetas.push_back(as_double(t, "theta"));
    std::vector<Complex> target;
    for (const auto& t : require(j, "target")) target.push_back(parse_complex(t));
    const long long n_max = as_int(require(j, "n_max"), "n_max");
    const auto r = kronecker_density_demo(thetas, target, n_max);
    return Json{{"best_n", r.best_n}, {"best_error", r.best_error}, {"n_max", n_max}};
}

}  // namespace detail

/// Runs one command. Usage errors surface as std::invalid_argument; all
/// library errors are mapped to exit codes with an error report.
inline RunOutcome run(const RunConfig& c) {
    detail::validate_config(c);
    RunOutcome out;
    Json prov{{"tool", kToolName}, {"version", kToolVersion}, {"command", c.command}};
    try {
        Json result;
        if (c.command == "demo-kronecker") {
            prov["tol"] = nullptr;
            result = detail::run_kronecker(c);
        } else {
            const AffineSymbol s = detail::load_symbol(c);
            prov["tol"] = s.tol;
            if (c.command == "analyze") result = detail::run_analyze(c, s, out.exit_code);
            else if (c.command == "spectrum") result = detail::run_spectrum(c, s);
            else if (c.command == "approx") result = detail::run_approx(c, s);
            else if (c.command == "orbit-rank") result = detail::run_orbit_rank(c, s);
            else if (c.command == "cyclic-vector") result = detail::run_cyclic_vector(c, s);
            else if (c.command == "project") result = detail::run_project(c, s);
        }
        prov["height"] = c.height.value_or(ClassifyOptions{}.height);
        prov["seed"] = c.seed;
        prov["result"] = result;
        out.report = prov;
        return out;
    } catch (const BudgetExceeded& e) {
        out.exit_code = kExitBudget;
        prov["error"] = Json{{"kind", "budget"}, {"message", e.what()}};
    } catch (const InvalidInput& e) {
        out.exit_code = kExitInvalid;
        prov["error"] = Json{{"kind", "invalid_input"}, {"message", e.what()}};
    } catch (const Refused& e) {
        out.exit_code = kExitInvalid;
        prov["error"] = Json{{"kind", "refused"}, {"message", e.what()}};
    } catch (const NoFixedPoint& e) {
        out.exit_code = kExitInvalid;
        prov["error"] = Json{{"kind", "no_fixed_point"}, {"message", e.what()}};
    } catch (const Unsupported& e) {
        out.exit_code = kExitInvalid;
        prov["error"] = Json{{"kind", "unsupported"}, {"message", e.what()}};
    } catch (const Error& e) {
        out.exit_code = kExitInternal;
        prov["error"] = Json{{"kind", "numerical_failure"}, {"message", e.what()}};
    }
    prov["height"] = c.height.value_or(ClassifyOptions{}.height);
    prov["seed"] = c.seed;
    out.report = prov;
    return out;
}

}  // namespace fockdyn
