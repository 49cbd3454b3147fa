// fockdyn: command-line front end.

#include "fockdyn/app.hpp"
#include "fockdyn_suite/criteria.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

int emit(const fockdyn::Json& report, const std::string& format, const std::string& output) {
    std::ofstream file;
    if (!output.empty()) {
        file.open(output);
        if (!file) {
            std::cerr << "fockdyn: cannot write '" << output << "'\n";
            return fockdyn::kExitInvalid;
        }
    }
    std::ostream& os = output.empty() ? std::cout : file;
    if (format == "text") fockdyn::render_text(report, os);
    else os << report.dump(2) << "\n";
    return fockdyn::kExitOk;
}

int run_suite_command(const fockdyn::suite::SuiteOptions& opt, const std::string& format, const std::string& output) {
    const auto results = fockdyn::suite::run_suite(opt);
    bool all = true;
    fockdyn::Json rows = fockdyn::Json::array();
    for (const auto& r : results) {
        all = all && r.passed;
        rows.push_back(fockdyn::Json{{"id", r.id}, {"name", r.name}, {"group", r.group}, {"passed", r.passed},
                                     {"detail", r.detail}});
    }
    if (format == "json") {
        fockdyn::Json report{{"tool", fockdyn::kToolName}, {"version", fockdyn::kToolVersion}, {"command", "suite"},
                             {"seed", opt.seed}, {"result", fockdyn::Json{{"passed", all}, {"criteria", rows}}}};
        if (const int rc = emit(report, "json", output)) return rc;
    } else {
        for (const auto& r : results) std::cout << fockdyn::suite::format_line(r) << "\n";
    }
    return all ? fockdyn::kExitOk : fockdyn::kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cyclicity and spectral analysis of affine composition operators on the Fock space"};
    app.set_version_flag("--version", std::string(fockdyn::kToolName) + " " + fockdyn::kToolVersion);
    app.require_subcommand(1);

    fockdyn::RunConfig cfg;
    std::optional<int> degree, top, height, steps;
    std::optional<double> tol;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input_path, "symbol JSON file")->required();
        sub->add_option("--tol", tol, "numerical tolerance");
        sub->add_option("--height", height, "relation search height");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--output", cfg.output, "write the report to this file");
        sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    };

    auto* analyze = app.add_subcommand("analyze", "boundedness, spectrum, fixed point and cyclicity verdict");
    add_common(analyze);
    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of A and optionally of a truncation of C_phi");
    add_common(spectrum);
    spectrum->add_option("--degree", degree, "truncation degree");
    auto* approx = app.add_subcommand("approx", "approximation numbers of a compact C_phi");
    add_common(approx);
    approx->add_option("--top", top, "number of values (default 10)");
    auto* orbit = app.add_subcommand("orbit-rank", "numerical rank of the projected orbit of a function");
    add_common(orbit);
    orbit->add_option("--degree", degree, "polynomial degree")->required();
    orbit->add_option("--steps", steps, "number of iterates");
    orbit->add_option("--function", cfg.function_path, "function JSON file (default: seeded random)");
    orbit->add_option("--projector", cfg.projector, "homogeneous or none");
    auto* cyclic = app.add_subcommand("cyclic-vector", "coefficient test for cyclic polynomials");
    add_common(cyclic);
    cyclic->add_option("--function", cfg.function_path, "function JSON file")->required();
    cyclic->add_option("--degree", degree, "highest degree checked");
    auto* project = app.add_subcommand("project", "homogeneous projection about the fixed point");
    add_common(project);
    project->add_option("--function", cfg.function_path, "function JSON file")->required();
    project->add_option("--degree", degree, "homogeneous degree")->required();
    project->add_option("--mode", cfg.mode, "recentering or quadrature")->check(CLI::IsMember({"recentering", "quadrature"}));
    auto* kron = app.add_subcommand("demo-kronecker", "search for e^{i n theta} close to a target point on the torus");
    kron->add_option("--input", cfg.input_path, "JSON with thetas, target and n_max")->required();
    kron->add_option("--output", cfg.output, "write the report to this file");
    kron->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));

    fockdyn::suite::SuiteOptions sopt;
    auto* suite = app.add_subcommand("suite", "run the acceptance criteria");
    suite->add_option("--only", sopt.only, "criterion number or group name");
    suite->add_flag("--corrupt-norms", sopt.corrupt_norms, "perturb the norm table in the spectrum check");
    suite->add_option("--seed", sopt.seed, "random seed");
    suite->add_option("--output", cfg.output, "write the JSON report to this file");
    suite->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? fockdyn::kExitOk : fockdyn::kExitUsage;
    }

    CLI::App* chosen = app.get_subcommands().front();
    try {
        if (chosen == suite) return run_suite_command(sopt, cfg.format, cfg.output);
        cfg.command = chosen->get_name();
        cfg.degree = degree;
        cfg.top = top;
        cfg.height = height;
        cfg.steps = steps;
        cfg.tol = tol;
        const auto out = fockdyn::run(cfg);
        if (const int rc = emit(out.report, cfg.format, cfg.output)) return rc;
        if (out.report.contains("error"))
            std::cerr << "fockdyn: " << out.report["error"]["message"].get<std::string>() << "\n";
        return out.exit_code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "fockdyn: " << e.what() << "\n";
        return fockdyn::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "fockdyn: internal error: " << e.what() << "\n";
        return fockdyn::kExitInternal;
    }
}
