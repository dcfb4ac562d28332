#include "curvegap/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using curvegap::ConfigMap;

struct Flags {
    std::string config;
    ConfigMap values;
    std::vector<std::string> h, a, b;
};

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
    return out;
}

void add_common(CLI::App* cmd, Flags& flags, bool sweep) {
    cmd->set_help_flag("--help", "print help");
    cmd->add_option("--config", flags.config, "key = value file; flags override it");
    auto value = [&](const std::string& name, const std::string& help) {
        cmd->add_option_function<std::string>(
            "--" + name, [&flags, name](const std::string& v) { flags.values[name] = v; }, help);
    };
    if (sweep) {
        value("pmin", "smallest prime target");
        value("pmax", "largest prime target");
        value("count", "number of primes");
    } else {
        value("p", "odd prime modulus");
    }
    value("f", "coefficients, low degree first");
    value("i", "interval lo:hi for the canonical root");
    value("j", "interval lo:hi for g");
    value("g", "rational map expression or builtin name");
    value("t", "window length for P_k(t)");
    value("lambdas", "comma-separated lambda grid");
    value("kmax", "largest k reported");
    value("seed", "random seed");
    value("threads", "worker threads");
    value("format", "csv or json");
    value("tolerance", "absolute tolerance for mu rows");
    cmd->add_option("--h", flags.h, "shift (repeatable)");
    cmd->add_option("--a", flags.a, "shift in A (repeatable)");
    cmd->add_option("--b", flags.b, "shift in B (repeatable)");
}

curvegap::ExperimentConfig resolve(const Flags& flags) {
    ConfigMap merged = flags.config.empty() ? ConfigMap{} : curvegap::load_config_file(flags.config);
    for (const auto& [k, v] : flags.values) merged[k] = v;
    if (!flags.h.empty()) merged["h"] = join(flags.h);
    if (!flags.a.empty()) merged["a"] = join(flags.a);
    if (!flags.b.empty()) merged["b"] = join(flags.b);
    return curvegap::make_config(merged);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Point sets and gap statistics of hyperelliptic curves over F_p"};
    app.set_help_flag("-h,--help", "print help");
    app.require_subcommand(1);

    Flags count_flags, gaps_flags, poisson_flags, sweep_flags;
    auto* count = app.add_subcommand("count", "point counts, N(H) and N(A,B) with predictions");
    add_common(count, count_flags, false);
    auto* gaps = app.add_subcommand("gaps", "gap proportions mu(lambda)");
    add_common(gaps, gaps_flags, false);
    auto* poisson = app.add_subcommand("poisson", "window counts P_k(t) against binomial and Poisson models");
    add_common(poisson, poisson_flags, false);
    auto* sweep = app.add_subcommand("sweep", "gaps and poisson over a range of primes");
    add_common(sweep, sweep_flags, true);

    std::string suite;
    std::string verify_seed = "1", verify_threads = "1", verify_format = "csv";
    auto* verify = app.add_subcommand("verify", "pinned oracle suites");
    verify->add_option("--suite", suite, "identities, bounds, weil or ranks")->required();
    verify->add_option("--seed", verify_seed, "random seed");
    verify->add_option("--threads", verify_threads, "worker threads");
    verify->add_option("--format", verify_format, "csv or json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) {
            auto cfg = curvegap::make_config({{"seed", verify_seed}, {"threads", verify_threads}, {"format", verify_format}});
            auto report = curvegap::cmd_verify(suite, cfg.seed, cfg.threads);
            curvegap::write_rows(std::cout, report.rows, cfg.format);
            std::cerr << "verify " << suite << ": " << (report.passed ? "pass" : "FAIL") << '\n';
            return report.passed ? 0 : 1;
        }
        std::vector<curvegap::ResultRow> rows;
        curvegap::ExperimentConfig cfg;
        if (count->parsed()) rows = curvegap::cmd_count(cfg = resolve(count_flags));
        else if (gaps->parsed()) rows = curvegap::cmd_gaps(cfg = resolve(gaps_flags));
        else if (poisson->parsed()) rows = curvegap::cmd_poisson(cfg = resolve(poisson_flags));
        else rows = curvegap::cmd_sweep(cfg = resolve(sweep_flags));
        curvegap::write_rows(std::cout, rows, cfg.format);
        return 0;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
