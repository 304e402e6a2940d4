#include "muwave/cli/commands.hpp"

#include "muwave/blowup.hpp"
#include "muwave/cli/output.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <thread>

namespace muwave::cli {
namespace {

using nlohmann::json;

const char* const criterion_ids[] = {"ch_small_mean", "ch_steep_slope", "ch_energy_sign", "dp_energy_sign",
                                     "dp_small_mean"};

int termination_code(Termination t)
{
    switch (t) {
    case Termination::reached_tmax:
        return exit_code::ok;
    case Termination::slope_stop_hit:
    case Termination::dt_collapse:
        return exit_code::blowup;
    case Termination::corruption:
        return exit_code::corruption;
    }
    return exit_code::internal_error;
}

std::string optional_text(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

struct CaseOutcome {
    BlowupReport report;
    int code = exit_code::ok;
};

/// Evolves (or only evaluates) the configured datum and writes its files.
CaseOutcome run_case(const RunConfig& cfg, bool evolve_datum)
{
    const auto u0 = build_initial(cfg);
    CaseOutcome out;
    if (!evolve_datum) {
        out.report = evaluate_all(u0, cfg.lambda);
        write_text(cfg.out_dir / (cfg.prefix + "_criteria.json"), dump_json(report_json(cfg, out.report, nullptr)));
        return out;
    }
    const auto params = ModelParams::from_initial(u0, cfg.lambda);
    const auto run = evolve(u0, params, cfg.solver);
    try {
        out.report = evaluate_all(u0, cfg.lambda, run, cfg.w_gate);
    } catch (const CorruptionError& e) {
        // Invariants of the datum overflow; the run itself still gets written.
        out.report.lambda = cfg.lambda;
        out.report.params = params;
        out.report.evolved = true;
        out.report.termination = run.termination;
        out.report.final_time = run.final_time;
        out.report.notes.push_back(std::string("criteria not evaluated: ") + e.what());
    }
    out.code = termination_code(run.termination);
    write_text(cfg.out_dir / (cfg.prefix + "_timeseries.csv"), timeseries_csv(run));
    write_text(cfg.out_dir / (cfg.prefix + "_summary.json"), dump_json(report_json(cfg, out.report, &run)));
    return out;
}

void print_criteria(const BlowupReport& report, std::ostream& out)
{
    for (const auto& c : report.criteria) {
        if (!c.applicable)
            continue;
        out << "  " << c.id << ": " << (c.holds ? "holds" : "does not hold");
        if (c.t_bound)
            out << ", t_bound " << format_double(*c.t_bound);
        out << '\n';
    }
}

struct SweepCase {
    int id = 0;
    RunConfig config;
    std::optional<double> mean;
    double amplitude = 1.0;
};

std::vector<SweepCase> expand_sweep(const RunConfig& base)
{
    const SweepSpec& sw = *base.sweep;
    auto or_base = [](const auto& list, auto value) {
        using T = std::decay_t<decltype(value)>;
        return list.empty() ? std::vector<T>{value} : std::vector<T>(list.begin(), list.end());
    };
    const bool fourier = std::holds_alternative<FourierInit>(base.init);
    const double base_mean = fourier ? std::get<FourierInit>(base.init).mean : 0.0;

    std::vector<SweepCase> cases;
    for (double lambda : or_base(sw.lambda, base.lambda)) {
        for (int n : or_base(sw.n, base.n)) {
            for (double mean : or_base(sw.mean, base_mean)) {
                for (double amp : or_base(sw.amplitude, 1.0)) {
                    SweepCase c;
                    c.id = static_cast<int>(cases.size());
                    c.config = base;
                    c.config.sweep.reset();
                    c.config.lambda = lambda;
                    c.config.n = n;
                    c.amplitude = amp;
                    if (fourier) {
                        auto& f = std::get<FourierInit>(c.config.init);
                        f.mean = mean;
                        for (auto& m : f.modes) {
                            m.cos_amp *= amp;
                            m.sin_amp *= amp;
                        }
                        c.mean = mean;
                    }
                    char dir[32];
                    std::snprintf(dir, sizeof dir, "case_%04d", c.id);
                    c.config.out_dir = base.out_dir / dir;
                    c.config.validate();
                    cases.push_back(std::move(c));
                }
            }
        }
    }
    return cases;
}

std::string sweep_row(const SweepCase& c, const std::optional<CaseOutcome>& outcome, int code)
{
    std::vector<std::string> cols{std::to_string(c.id), format_double(c.config.lambda), std::to_string(c.config.n),
                                  optional_text(c.mean), format_double(c.amplitude)};
    if (outcome) {
        const auto& r = outcome->report;
        cols.push_back(format_double(r.params.mu0));
        cols.push_back(format_double(r.params.mu1));
        cols.push_back(format_double(r.params.mu2));
        for (const char* id : criterion_ids) {
            const auto it = std::find_if(r.criteria.begin(), r.criteria.end(), [&](const auto& x) { return x.id == id; });
            if (it == r.criteria.end() || !it->applicable) {
                cols.emplace_back("na");
                cols.emplace_back();
            } else {
                cols.emplace_back(it->holds ? "true" : "false");
                cols.push_back(optional_text(it->t_bound));
            }
        }
        cols.emplace_back(r.termination ? to_string(*r.termination) : "not_evolved");
        cols.push_back(optional_text(r.observed.t_star));
        cols.push_back(optional_text(r.observed.rate_sigma));
    } else {
        cols.resize(sweep_columns().size() - 1);
        cols[cols.size() - 3] = "error";
    }
    cols.push_back(std::to_string(code));
    std::string line;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i)
            line += ',';
        line += cols[i];
    }
    return line + '\n';
}

}  // namespace

std::vector<std::string> sweep_columns()
{
    std::vector<std::string> cols{"case_id", "lambda", "n", "mean", "amplitude", "mu0", "mu1", "mu2"};
    for (const char* id : criterion_ids) {
        cols.emplace_back(id);
        cols.emplace_back(std::string(id) + "_t_bound");
    }
    for (const char* c : {"termination", "t_star", "rate_sigma", "exit_code"})
        cols.emplace_back(c);
    return cols;
}

int cmd_simulate(const RunConfig& config, const CommandContext& ctx)
{
    const auto outcome = run_case(config, true);
    const auto& r = outcome.report;
    if (!ctx.quiet) {
        ctx.out << "termination " << (r.termination ? to_string(*r.termination) : "none") << " at t = "
                << format_double(r.final_time) << '\n';
        if (r.observed.t_star)
            ctx.out << "t_star " << format_double(*r.observed.t_star) << ", rate_sigma "
                    << (r.observed.rate_sigma ? format_double(*r.observed.rate_sigma) : "none") << '\n';
        print_criteria(r, ctx.out);
        if (!r.consistency)
            ctx.out << "observed breakdown is inconsistent with a bound\n";
    }
    return outcome.code;
}

int cmd_criteria(const RunConfig& config, const CommandContext& ctx)
{
    const auto outcome = run_case(config, false);
    if (!ctx.quiet) {
        const auto& p = outcome.report.params;
        ctx.out << "mu0 " << format_double(p.mu0) << ", mu1 " << format_double(p.mu1) << ", mu2 "
                << format_double(p.mu2) << '\n';
        print_criteria(outcome.report, ctx.out);
        for (const auto& note : outcome.report.notes)
            ctx.out << "  note: " << note << '\n';
    }
    return exit_code::ok;
}

int cmd_verify(const RunConfig& config, Suite suite, const CommandContext& ctx)
{
    const VerifyResult result = run_suite(suite, config);
    json checks = json::array();
    for (const auto& c : result.checks) {
        checks.push_back({{"id", c.id},
                          {"value", c.value},
                          {"limit", c.limit},
                          {"relation", c.upper ? "<=" : ">="},
                          {"pass", c.pass}});
        if (!ctx.quiet)
            ctx.out << (c.pass ? "PASS " : "FAIL ") << c.id << ": " << format_double(c.value)
                    << (c.upper ? " <= " : " >= ") << format_double(c.limit) << '\n';
    }
    const json j{{"suite", to_string(suite)}, {"n", result.n}, {"seed", config.verify.seed},
                 {"pass", result.pass()}, {"checks", checks}};
    write_text(config.out_dir / (config.prefix + "_verify_" + to_string(suite) + ".json"), dump_json(j));
    return result.pass() ? exit_code::ok : exit_code::verify_failed;
}

int cmd_sweep(const RunConfig& config, unsigned jobs, const CommandContext& ctx)
{
    if (!config.sweep)
        throw ConfigError("sweep needs a [sweep] section");
    const std::vector<SweepCase> cases = expand_sweep(config);
    const bool evolve_datum = config.sweep->evolve;

    std::vector<std::optional<CaseOutcome>> outcomes(cases.size());
    std::vector<int> codes(cases.size(), exit_code::ok);
    std::vector<std::string> errors(cases.size());
    std::atomic<std::size_t> next{0};
    std::mutex print_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < cases.size(); i = next++) {
            try {
                outcomes[i] = run_case(cases[i].config, evolve_datum);
                codes[i] = outcomes[i]->code;
            } catch (const IoError& e) {
                codes[i] = exit_code::io_error;
                errors[i] = e.what();
            } catch (const CorruptionError& e) {
                codes[i] = exit_code::corruption;
                errors[i] = e.what();
            } catch (const std::exception& e) {
                codes[i] = exit_code::internal_error;
                errors[i] = e.what();
            }
            if (!ctx.quiet) {
                std::lock_guard lock(print_mutex);
                ctx.out << "case " << cases[i].id << " done, exit " << codes[i] << '\n';
            }
        }
    };

    const unsigned available = std::max(1u, std::thread::hardware_concurrency());
    const auto workers = std::min<std::size_t>(jobs == 0 ? available : jobs, cases.size());
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }

    std::string table;
    const auto cols = sweep_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        table += (i ? "," : "") + cols[i];
    table += '\n';
    int result = exit_code::ok;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        table += sweep_row(cases[i], outcomes[i], codes[i]);
        if (!errors[i].empty()) {
            ctx.err << "case " << cases[i].id << ": " << errors[i] << '\n';
            if (result == exit_code::ok)
                result = codes[i];
        } else if (codes[i] == exit_code::corruption && result == exit_code::ok) {
            result = exit_code::corruption;
        }
    }
    write_text(config.out_dir / (config.prefix + "_sweep.csv"), table);
    if (!ctx.quiet)
        ctx.out << cases.size() << " cases written to " << (config.out_dir / (config.prefix + "_sweep.csv")).string()
                << '\n';
    return result;
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Spectral solver and wave-breaking checks for the mu-family of periodic wave equations"};
    app.name("muwave");
    app.require_subcommand(1);

    std::string config_path, out_dir, suite_name;
    int n_override = 0;
    unsigned jobs = 0;
    bool quiet = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "INI or JSON run configuration")->required();
        sub->add_option("--out", out_dir, "Output directory (overrides [outputs] dir)");
        sub->add_option("--n", n_override, "Grid size (overrides [grid] n)");
        sub->add_flag("--quiet", quiet, "Suppress progress output");
    };
    auto* simulate = app.add_subcommand("simulate", "Evolve the configured datum and report breakdown");
    auto* criteria = app.add_subcommand("criteria", "Evaluate wave-breaking predicates and bounds only");
    auto* verify = app.add_subcommand("verify", "Run a property suite");
    auto* sweep = app.add_subcommand("sweep", "Run a parameter grid concurrently");
    for (auto* sub : {simulate, criteria, verify, sweep})
        add_common(sub);
    verify->add_option("--suite", suite_name, "operators | peakon | geometry | inequalities")
        ->required()
        ->check(CLI::IsMember({"operators", "peakon", "geometry", "inequalities"}));
    sweep->add_option("--jobs", jobs, "Worker threads (0 = available parallelism)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? exit_code::ok : exit_code::config_error;
    }

    RunConfig config;
    try {
        config = load_config(config_path);
        if (!out_dir.empty())
            config.out_dir = out_dir;
        if (n_override != 0)
            config.n = n_override;
        config.validate();
        if (sweep->parsed())
            (void)expand_sweep(config);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::config_error;
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::config_error;
    }

    const CommandContext ctx{out, err, quiet};
    try {
        if (simulate->parsed())
            return cmd_simulate(config, ctx);
        if (criteria->parsed())
            return cmd_criteria(config, ctx);
        if (verify->parsed())
            return cmd_verify(config, *parse_suite(suite_name), ctx);
        return cmd_sweep(config, jobs, ctx);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::config_error;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return exit_code::io_error;
    } catch (const CorruptionError& e) {
        err << "corruption: " << e.what() << '\n';
        return exit_code::corruption;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::internal_error;
    }
}

}  // namespace muwave::cli
