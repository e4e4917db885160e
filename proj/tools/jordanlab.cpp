#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include <jordanlab/harness.hpp>

int main(int argc, char** argv) {
    using namespace jordanlab;
    CLI::App app{"Jordan-type statistics of random strictly upper-triangular matrices over F_q"};
    app.require_subcommand(1);
    const std::vector<std::pair<std::string, std::string>> commands{
        {"compare", "shifted leading columns at size n against the limit law"},
        {"tables", "probability tables from one or more methods, with cross-method deltas"},
        {"sample-figure", "Jordan partition and row/column profile of one random matrix"},
        {"simulate", "empirical law of the leading columns"},
        {"exact-dp", "exact law of the Jordan type for small n"}};
    for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

    // Flag values are kept as text and routed through set_field, the same
    // path the config file takes; flags given on the command line win.
    const std::vector<std::pair<std::string, std::string>> flags{
        {"n", "matrix size"},
        {"q", "field size (prime power)"},
        {"k", "number of leading columns"},
        {"samples", "Monte Carlo sample count"},
        {"seed", "64-bit root seed"},
        {"tol", "requested accuracy"},
        {"method", "comma-separated methods"},
        {"chi", "limit-law parameter chi (tables)"},
        {"tau", "Poissonization time"},
        {"v", "pole index for residue tables"},
        {"radius", "torus radius for finite-n integrals"},
        {"max-nodes", "node cap per circle"},
        {"cap", "size cap for the exact partition law"},
        {"lo", "lowest key entry of the table window"},
        {"hi", "highest key entry of the table window"},
        {"max-dinf", "fail compare when D_inf exceeds this"},
        {"out", "output path (stdout if absent)"},
        {"format", "json or csv"},
        {"threads", "worker threads"}};
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    for (const auto& [name, help] : flags) options[name] = app.add_option("--" + name, values[name], help);
    std::string config_path;
    app.add_option("--config", config_path, "flat key = value file; flags override it");
    bool no_timing = false;
    app.add_flag("--no-timing", no_timing, "write runtime_ms as null so reruns are byte-identical");

    CLI11_PARSE(app, argc, argv);

    ExperimentConfig cfg;
    Report report;
    try {
        if (!config_path.empty()) apply_config_file(cfg, config_path);
        cfg.command = app.get_subcommands().front()->get_name();
        for (const auto& [name, opt] : options)
            if (opt->count() > 0) set_field(cfg, name, values[name]);
        if (no_timing) cfg.timing = false;
        const auto start = std::chrono::steady_clock::now();
        report = run(cfg);
        if (cfg.timing)
            report.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    } catch (const std::exception& e) {
        std::cerr << "jordanlab: " << e.what() << '\n';
        return 1;
    }

    const std::string text = render(report);
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.out);
        if (!(out << text)) {
            std::cerr << "jordanlab: cannot write " << cfg.out << '\n';
            return 1;
        }
    }
    for (const auto& f : report.failures) std::cerr << "tolerance not met: " << f.what << " (" << f.value << " > " << f.tolerance << ")\n";
    return report.ok() ? 0 : 2;
}
