// fpell: command-line front end over the command layer.
//
// Exit codes: 0 success, 1 unknown because data is missing (or a certificate
// needs a larger truncation), 2 input error or a failed check.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fpell/fpell.hpp"

namespace {

int default_truncation() {
    if (const char* env = std::getenv("FPELL_TRUNCATE")) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        std::cerr << "fpell: ignoring FPELL_TRUNCATE='" << env << "' (not an integer)\n";
    }
    return 24;
}

int emit(const fpell::Report& r, bool json) {
    std::cout << (json ? fpell::emit_json(r) : fpell::emit_text(r));
    return fpell::exit_code(r.status);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with graded algebras over prime fields and closed-geodesic verdicts", "fpell"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "Emit the structured report instead of text");

    std::string file;
    int max_degree = 20;
    auto* series = app.add_subcommand("series", "Poincare series, dimensions and growth of a presentation");
    series->add_option("file", file, "Presentation file")->required();
    series->add_option("--max-degree", max_degree, "Last degree to expand")->capture_default_str();
    series->add_flag("--json", json, "Emit the structured report");

    auto* depth = app.add_subcommand("depth", "Ext table, depth and Gorenstein property");
    depth->add_option("file", file, "Presentation file")->required();
    depth->add_flag("--json", json, "Emit the structured report");

    auto* elliptic = app.add_subcommand("elliptic", "Ellipticity of a Hopf algebra and the four equivalent conditions");
    elliptic->add_option("file", file, "Presentation file with hopf: true")->required();
    elliptic->add_flag("--json", json, "Emit the structured report");

    std::string loop_file, diff_file;
    fpell::SsOptions ss_opt;
    ss_opt.truncation = default_truncation();
    unsigned ss_prime = 0;
    bool not_simply_connected = false;
    auto* ss = app.add_subcommand("ss", "Run the string-topology spectral sequence model and certify central powers");
    ss->add_option("cohomology", file, "Presentation of H^*(M;F_p)")->required();
    ss->add_option("loop", loop_file, "Presentation of H_*(Omega M;F_p)")->required();
    ss->add_option("--dim", ss_opt.dimension, "Manifold dimension n")->required();
    ss->add_option("--prime", ss_prime, "Expected prime; checked against both files");
    ss->add_option("--truncate", ss_opt.truncation, "Fibre-degree truncation T (default from FPELL_TRUNCATE, else 24)")
        ->capture_default_str();
    ss->add_option("--differentials", diff_file, "Differential fixture file");
    ss->add_flag("--not-simply-connected", not_simply_connected, "Skip the simply-connected checks on H^*");
    ss->add_flag("--json", json, "Emit the structured report");

    std::string target;
    unsigned prime_bound = 0;
    auto* verdict = app.add_subcommand("verdict", "Closed-geodesics verdict with its justification chain");
    verdict->add_option("space", target, "Catalog name (e.g. 'V2(R^5)') or path to a record file")->required();
    verdict->add_option("--prime-bound", prime_bound, "Only use mod-p data for p <= B");
    verdict->add_flag("--json", json, "Emit the structured report");

    int bound = 10;
    auto* catalog = app.add_subcommand("catalog", "Verdicts for every built-in record");
    catalog->add_option("--bound", bound, "Largest family parameter n")->capture_default_str()->check(CLI::Range(2, 64));
    catalog->add_option("--prime-bound", prime_bound, "Only use mod-p data for p <= B");
    catalog->add_flag("--json", json, "Emit the structured report");

    unsigned long long seed = 1;
    int count = 100;
    auto* check = app.add_subcommand("check", "Seeded randomized property checks");
    check->add_option("--seed", seed, "Random seed")->capture_default_str();
    check->add_option("--count", count, "Number of random cases")->capture_default_str();
    check->add_flag("--json", json, "Emit the structured report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    std::vector<std::string> echoed;
    bool skipped = false;
    for (int i = 1; i < argc; ++i) {
        if (!skipped && argv[i] == command) {
            skipped = true;
            continue;
        }
        echoed.emplace_back(argv[i]);
    }
    const std::optional<unsigned> pb = prime_bound ? std::optional<unsigned>(prime_bound) : std::nullopt;
    try {
        if (*series) return emit(fpell::cmd_series(fpell::read_source(file), max_degree, echoed), json);
        if (*depth) return emit(fpell::cmd_depth(fpell::read_source(file), echoed), json);
        if (*elliptic) return emit(fpell::cmd_elliptic(fpell::read_source(file), echoed), json);
        if (*ss) {
            if (ss_prime) ss_opt.prime = ss_prime;
            ss_opt.simply_connected = !not_simply_connected;
            std::optional<fpell::Source> diffs;
            if (!diff_file.empty()) diffs = fpell::read_source(diff_file);
            return emit(fpell::cmd_ss(fpell::read_source(file), fpell::read_source(loop_file), ss_opt, diffs, echoed), json);
        }
        if (*verdict) {
            // catalog names may contain '/', so an existing path wins
            if (std::filesystem::is_regular_file(target)) return emit(fpell::cmd_verdict_record(fpell::read_source(target), pb, echoed), json);
            return emit(fpell::cmd_verdict_name(target, pb, echoed), json);
        }
        if (*catalog) return emit(fpell::cmd_catalog(bound, pb, echoed), json);
        if (*check) return emit(fpell::cmd_check(seed, count, echoed), json);
    } catch (const fpell::ParseError& e) {
        std::cerr << "fpell: " << e.what() << "\n";
        return emit(fpell::error_report(command, echoed, e), json);
    } catch (const fpell::InvalidInput& e) {
        std::cerr << "fpell: " << e.what() << "\n";
        return emit(fpell::error_report(command, echoed, e), json);
    }
    return 2;
}
