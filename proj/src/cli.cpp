#include "slantsub/cli.hpp"

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "slantsub/suites.hpp"

namespace slantsub {

namespace {

ReportDocument dispatch(const std::string& command, const Scenario& sc, const RunOptions& opt) {
    if (command == "check-structure") return run_check_structure(sc, opt);
    if (command == "check-submersion") return run_check_submersion(sc, opt);
    if (command == "slant-angle") return run_slant_angle(sc, opt);
    if (command == "verify-identities") return run_verify_identities(sc, opt);
    if (command == "verify-inequality") return run_verify_inequality(sc, opt);
    if (command == "tension") return run_tension(sc, opt);
    if (command == "anti-invariant") return run_anti_invariant(sc, opt);
    fail("UsageError", "unknown subcommand '" + command + "'");
}

bool is_usage_code(const std::string& code) {
    return code == "UsageError" || code == "SyntaxError" || code == "ShapeMismatch";
}

} // namespace

CliResult run_command(const std::vector<std::string>& args) {
    CLI::App app{"numerical verifier for slant Riemannian submersions from cosymplectic "
                 "manifolds",
                 "slantsub"};
    app.require_subcommand(1);

    std::string scenario_arg;
    std::string format = "text";
    std::string out_path;
    RunOptions opt;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"check-structure", "almost contact / cosymplectic structure checks"},
        {"check-submersion", "submersion axioms and projector invariants"},
        {"slant-angle", "slant angle estimate and constancy verdict"},
        {"verify-identities", "curvature, fundamental tensor and slant identities"},
        {"verify-inequality", "mean curvature vs fibre scalar curvature bound"},
        {"tension", "tension field of the map"},
        {"anti-invariant", "anti-invariant specialization checks"},
    };
    for (const auto& [name, desc] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("scenario", scenario_arg, "builtin scenario or path to a scenario file")
            ->required();
        sub->add_option("--samples", opt.samples, "sample points per check")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", opt.seed, "sampling seed");
        sub->add_option("--tolerance-scale", opt.tolerance_scale,
                        "multiplies every default tolerance")
            ->check(CLI::PositiveNumber);
        sub->add_option("--format", format, "report format")
            ->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--out", out_path, "write the report to a file instead of stdout");
        if (name == "verify-inequality")
            sub->add_option("--case", opt.inequality_case, "which characteristic-field case")
                ->required()
                ->check(CLI::IsMember({"vertical", "horizontal"}));
    }

    // CLI11 consumes the argument vector in reverse order.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends.
            std::ostringstream os;
            os << app.help();
            return {0, os.str(), ""};
        }
        return {2, "", std::string("usage error: ") + e.what() + "\n"};
    }

    const std::string command = app.get_subcommands().front()->get_name();

    ReportDocument doc;
    int exit_code = 0;
    try {
        Scenario sc = load_scenario(scenario_arg);
        doc = dispatch(command, sc, opt);
        exit_code = doc.pass() ? 0 : 1;
    } catch (const StructureInvalidError& e) {
        doc.scenario = scenario_arg;
        doc.command = command;
        doc.seed = opt.seed;
        doc.samples = opt.samples;
        doc.checks = e.report().checks;
        doc.add_note(e.what());
        exit_code = 1;
    } catch (const Error& e) {
        if (is_usage_code(e.code())) return {2, "", std::string(e.what()) + "\n"};
        doc.scenario = scenario_arg;
        doc.command = command;
        doc.seed = opt.seed;
        doc.samples = opt.samples;
        doc.checks.push_back(CheckRecord{e.code(), 1.0, 0.0, false});
        doc.add_note(e.what());
        exit_code = 1;
    }

    std::string rendered = format == "json" ? to_json(doc) + "\n" : to_text(doc);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) return {2, "", "usage error: cannot open '" + out_path + "' for writing\n"};
        out << rendered;
        return {exit_code, "", ""};
    }
    return {exit_code, rendered, ""};
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const CliResult r = run_command(args);
    if (!r.output.empty()) std::cout << r.output;
    if (!r.error.empty()) std::cerr << r.error;
    return r.exit_code;
}

} // namespace slantsub
