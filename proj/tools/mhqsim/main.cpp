// mhqsim: figure series, parameter sweeps and self-test for the driven qutrit.

#include <fmt/format.h>

#include <cstdio>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "mhq/app/commands.hpp"
#include "mhq/app/config.hpp"
#include "mhq/app/selftest.hpp"
#include "mhq/errors.hpp"
#include "mhq/parallel.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kSelftestFailed = 2;

struct Overrides {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> shots;
    std::optional<std::size_t> steps;
};

void add_common(CLI::App *cmd, Overrides &o) {
    cmd->add_option("--config", o.config, "YAML run configuration (defaults to the built-in experiment)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out, "output directory (overrides `output`)");
    cmd->add_option("--seed", o.seed, "random seed (overrides `seed`)");
    cmd->add_option("--shots", o.shots, "repetitions per measured distribution, 0 for noiseless");
    cmd->add_option("--steps", o.steps, "stepped-propagator steps for the startup check");
}

mhq::app::RunConfig resolve(const Overrides &o) {
    mhq::app::RunConfig cfg = o.config.empty() ? mhq::app::default_config() : mhq::app::load_config(o.config);
    if (!o.out.empty()) cfg.output = o.out;
    if (o.seed) cfg.seed = *o.seed;
    if (o.shots) cfg.shots = *o.shots > 0 ? o.shots : std::nullopt;
    if (o.steps) cfg.steps = *o.steps;
    cfg.validate();
    return cfg;
}

int run_figure(mhq::app::Figure fig, const Overrides &o) {
    const auto cfg = resolve(o);
    const auto bundle = mhq::app::reproduce(fig, cfg, mhq::thread_count());
    mhq::app::write_bundle(bundle, cfg.output);
    fmt::print("{}: {} rows written to {}\n", mhq::app::figure_name(fig), bundle.rows.size(), cfg.output.string());
    return kOk;
}

int run_sweep(const Overrides &o) {
    const auto cfg = resolve(o);
    const auto result = mhq::app::run_sweep(cfg, mhq::thread_count());
    mhq::app::write_sweep(result, cfg.output);
    const auto &s = result.summary;
    fmt::print("sweep: {} sets ({} skipped), max aleph {:.6f} ({}), median min<W> original {:.4f} twins {:.4f}\n",
               s.n_sets, s.n_skipped, s.global_max_aleph, mhq::point_kind_name(s.global_max_kind),
               s.median_min_w_original, s.median_min_w_twins);
    return kOk;
}

int run_selftest(bool inject_fault) {
    mhq::app::SelftestOptions opts;
    opts.threads = mhq::thread_count();
    if (inject_fault) opts.coefficients.half += 1e-3;
    const auto report = mhq::app::run_selftest(opts);
    double total = 0.0;
    for (const auto &c : report.checks) {
        fmt::print("{} {:<32} {:7.2f}s{}\n", c.ok ? "PASS" : "FAIL", c.name, c.seconds,
                   c.ok ? "" : "  " + c.detail);
        total += c.seconds;
    }
    fmt::print("selftest {} in {:.2f}s\n", report.ok() ? "passed" : "FAILED", total);
    return report.ok() ? kOk : kSelftestFailed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Margenau-Hill work quasiprobabilities for a driven qutrit"};
    app.require_subcommand(1);

    Overrides fig2_o, fig3_o, fig4_o, sweep_o;
    auto *fig2 = app.add_subcommand("reproduce-fig2", "END, p(f|i) and p(f|i-bar) series plus initial tomography");
    auto *fig3 = app.add_subcommand("reproduce-fig3", "work quasiprobabilities z_if and negativity");
    auto *fig4 = app.add_subcommand("reproduce-fig4", "average work from MHQ and TPM");
    auto *sweep = app.add_subcommand("sweep", "random drive and state study with equal-phase twins");
    auto *selftest = app.add_subcommand("selftest", "invariant checks of all modules");
    add_common(fig2, fig2_o);
    add_common(fig3, fig3_o);
    add_common(fig4, fig4_o);
    add_common(sweep, sweep_o);
    bool inject_fault = false;
    selftest->add_flag("--inject-fault", inject_fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (*fig2) return run_figure(mhq::app::Figure::Fig2, fig2_o);
        if (*fig3) return run_figure(mhq::app::Figure::Fig3, fig3_o);
        if (*fig4) return run_figure(mhq::app::Figure::Fig4, fig4_o);
        if (*sweep) return run_sweep(sweep_o);
        if (*selftest) return run_selftest(inject_fault);
    } catch (const mhq::app::ConfigError &e) {
        std::cerr << e.what() << '\n';
        return kConfigError;
    } catch (const mhq::app::StartupCheckFailed &e) {
        std::cerr << "startup check failed: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
    return kConfigError;
}
