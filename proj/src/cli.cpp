#include "asaw/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <map>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "asaw/anderson.hpp"
#include "asaw/fmm.hpp"
#include "asaw/graph.hpp"
#include "asaw/localization.hpp"
#include "asaw/parallel.hpp"
#include "asaw/rng.hpp"
#include "asaw/saw.hpp"
#include "asaw/spectral.hpp"

using nlohmann::json;

namespace asaw::cli {

namespace {

struct CheckFailure : std::exception {
    std::string message;
    explicit CheckFailure(std::string m) : message(std::move(m)) {}
    const char* what() const noexcept override { return message.c_str(); }
};

// Ties CLI11 options to a JSON config file: flag values win, config fills the
// rest. Keys are the long option names without leading dashes.
class ConfigBinder {
public:
    template <typename T>
    CLI::Option* bind(CLI::App* app, const std::string& flag, T& var,
                      const std::string& desc) {
        auto* opt = app->add_option(flag, var, desc);
        std::string key = flag.substr(flag.find_first_not_of('-'));
        appliers_.emplace_back([opt, &var, key](const json& cfg) {
            if (opt->count() == 0 && cfg.contains(key)) var = cfg.at(key).get<T>();
        });
        echoers_.emplace_back([&var, key](json& cfg) { cfg[key] = var; });
        return opt;
    }

    void apply(const json& cfg) const {
        for (const auto& f : appliers_) f(cfg);
    }

    /// Resolved values of every bound option, for the report's config echo.
    json echo() const {
        json cfg = json::object();
        for (const auto& f : echoers_) f(cfg);
        return cfg;
    }

private:
    std::vector<std::function<void(const json&)>> appliers_;
    std::vector<std::function<void(json&)>> echoers_;
};

struct CommonOptions {
    std::string graph_spec;
    std::string graph_file;
    std::string config_path;
    std::string json_path;
    std::uint64_t seed = 1;
    unsigned workers = 0; // 0 = available parallelism
};

Graph resolve_graph(const CommonOptions& common) {
    if (!common.graph_spec.empty() && !common.graph_file.empty())
        throw std::invalid_argument("give either --graph or --graph-file, not both");
    if (!common.graph_spec.empty()) return parse_graph_spec(common.graph_spec);
    if (!common.graph_file.empty()) return load_edge_list(common.graph_file);
    throw std::invalid_argument("a graph is required (--graph or --graph-file)");
}

void emit_report(const json& report, const std::string& json_path) {
    if (json_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(json_path);
        if (!out) throw std::runtime_error("cannot open for writing: " + json_path);
        out << report.dump(2) << "\n";
        std::cout << "report written to " << json_path << "\n";
    }
}

json graph_echo(const CommonOptions& common) {
    json g = json::object();
    if (!common.graph_spec.empty()) g["graph"] = common.graph_spec;
    if (!common.graph_file.empty()) g["graph_file"] = common.graph_file;
    return g;
}

struct Context {
    CommonOptions common;
    std::map<const CLI::App*, ConfigBinder> binders;
    const CLI::App* active = nullptr;
    std::string subcommand;

    template <typename T>
    CLI::Option* bind(CLI::App* app, const std::string& flag, T& var,
                      const std::string& desc) {
        return binders[app].bind(app, flag, var, desc);
    }

    void apply_config(const json& cfg) {
        if (active) binders.at(active).apply(cfg);
    }

    json config_echo() const {
        json cfg = active ? binders.at(active).echo() : json::object();
        cfg.update(graph_echo(common));
        cfg["subcommand"] = subcommand;
        return cfg;
    }
};

// deepest parsed subcommand
const CLI::App* find_active(const CLI::App& app) {
    for (const auto* sub : app.get_subcommands()) {
        const CLI::App* deeper = find_active(*sub);
        return deeper ? deeper : sub;
    }
    return nullptr;
}

// Per-draw sampling energies for verify: deterministic in (seed, draw).
double draw_energy(std::uint64_t seed, std::uint64_t draw) {
    return -2.0 + 4.0 * rng::u01(seed, rng::kStreamEnergy, draw, 0);
}

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"numerical laboratory for walk-resolvent analysis of the Anderson model"};
    app.require_subcommand(1);
    app.fallthrough(false);

    auto ctx = std::make_shared<Context>();
    auto& common = ctx->common;

    // shared flags registered per leaf subcommand
    auto add_common = [&](CLI::App* sub, bool needs_graph = true) {
        if (needs_graph) {
            ctx->bind(sub, "--graph", common.graph_spec,
                             "inline graph spec family:p1,p2[@seed]");
            ctx->bind(sub, "--graph-file", common.graph_file,
                             "edge-list file (header 'n <count>', lines 'u v')");
        }
        sub->add_option("--config", common.config_path, "JSON config file; flags win");
        ctx->bind(sub, "--json", common.json_path, "write the JSON report here");
        ctx->bind(sub, "--seed", common.seed, "global RNG seed")
            ->envname("ANDERSON_SAW_SEED");
        ctx->bind(sub, "--workers", common.workers,
                         "worker threads (0 = available parallelism)");
    };

    int exit_code = 0;
    std::function<void()> action;

    // ---------------------------------------------------------------- graph
    auto* graph_cmd = app.add_subcommand("graph", "build and inspect graphs");
    graph_cmd->require_subcommand(1);
    {
        auto* build = graph_cmd->add_subcommand("build", "build a family graph, write an edge list");
        add_common(build);
        auto out_path = std::make_shared<std::string>();
        ctx->bind(build, "--out", *out_path, "edge-list output path");
        build->callback([ctx, out_path, &action] {
            ctx->subcommand = "graph build";
            action = [ctx, out_path] {
                auto g = resolve_graph(ctx->common);
                if (out_path->empty())
                    throw std::invalid_argument("graph build: --out is required");
                save_edge_list(g, *out_path);
                json report;
                report["config"] = ctx->config_echo();
                report["result"] = {{"vertex_count", g.vertex_count()},
                                    {"edge_count", g.edge_count()},
                                    {"degree_bound", g.degree_bound()},
                                    {"out", *out_path}};
                emit_report(report, ctx->common.json_path);
            };
        });

        auto* info = graph_cmd->add_subcommand("info", "metric summary of a graph");
        add_common(info);
        info->callback([ctx, &action] {
            ctx->subcommand = "graph info";
            action = [ctx] {
                auto g = resolve_graph(ctx->common);
                json report;
                report["config"] = ctx->config_echo();
                report["result"] = {{"vertex_count", g.vertex_count()},
                                    {"edge_count", g.edge_count()},
                                    {"degree_bound", g.degree_bound()},
                                    {"diameter", diameter(g)},
                                    {"sup_log_sphere_growth", sup_log_sphere_growth(g)}};
                emit_report(report, ctx->common.json_path);
            };
        });
    }

    // ------------------------------------------------------------------ saw
    auto* saw_cmd = app.add_subcommand("saw", "self-avoiding-walk counts and censuses");
    saw_cmd->require_subcommand(1);
    {
        auto* count = saw_cmd->add_subcommand("count", "classify walks for one pair");
        add_common(count);
        auto source = std::make_shared<int>(0);
        auto target = std::make_shared<int>(1);
        ctx->bind(count, "--source", *source, "source vertex");
        ctx->bind(count, "--target", *target, "target vertex");
        count->callback([ctx, source, target, &action] {
            ctx->subcommand = "saw count";
            action = [ctx, source, target] {
                auto g = resolve_graph(ctx->common);
                auto counts = classify_walks(g, *source, *target);
                json report;
                report["config"] = ctx->config_echo();
                report["result"] = {{"y", counts.y_count},
                                    {"x", counts.x_count},
                                    {"xbar", counts.xbar_count},
                                    {"w_prime", counts.w_prime_count()},
                                    {"d", counts.dist}};
                emit_report(report, ctx->common.json_path);
            };
        });

        auto* table = saw_cmd->add_subcommand("table", "walk census CSV per distance");
        add_common(table);
        auto csv_path = std::make_shared<std::string>();
        auto max_depth = std::make_shared<int>(-1);
        ctx->bind(table, "--csv", *csv_path, "census CSV output path");
        ctx->bind(table, "--max-depth", *max_depth, "truncate at this distance (-1: diameter)");
        table->callback([ctx, csv_path, max_depth, &action] {
            ctx->subcommand = "saw table";
            action = [ctx, csv_path, max_depth] {
                auto g = resolve_graph(ctx->common);
                auto census = build_census(g, *max_depth);
                if (!csv_path->empty()) {
                    std::ofstream out(*csv_path);
                    if (!out) throw std::runtime_error("cannot open for writing: " + *csv_path);
                    write_census_csv(census, out);
                }
                json rows = json::array();
                for (const auto& row : census.rows)
                    rows.push_back({{"d", row.d},
                                    {"script_W", row.script_w},
                                    {"script_S", row.script_s}});
                json report;
                report["config"] = ctx->config_echo();
                report["result"] = {{"rows", rows},
                                    {"complete", census.complete},
                                    {"degree_bound", census.degree_bound}};
                emit_report(report, ctx->common.json_path);
            };
        });
    }

    // --------------------------------------------------------------- verify
    auto* verify_cmd = app.add_subcommand("verify", "exact-identity checks");
    verify_cmd->require_subcommand(1);
    {
        auto* saw_rep = verify_cmd->add_subcommand(
            "saw-rep", "walk-sum vs direct resolvent over random draws and all pairs");
        add_common(saw_rep);
        auto trials = std::make_shared<long long>(100);
        auto eta = std::make_shared<double>(0.1);
        auto lambda = std::make_shared<double>(1.0);
        auto tol = std::make_shared<double>(1e-9);
        ctx->bind(saw_rep, "--trials", *trials, "disorder draws");
        ctx->bind(saw_rep, "--eta", *eta, "imaginary part of the energy");
        ctx->bind(saw_rep, "--lambda", *lambda, "disorder coupling");
        ctx->bind(saw_rep, "--tol", *tol, "relative tolerance");
        saw_rep->callback([ctx, trials, eta, lambda, tol, &action] {
            ctx->subcommand = "verify saw-rep";
            action = [ctx, trials, eta, lambda, tol] {
                auto g = resolve_graph(ctx->common);
                auto model = DisorderModel::uniform_unit(*lambda);
                int n = g.vertex_count();
                std::vector<double> worst(*trials, 0.0);
                parallel_for(static_cast<std::size_t>(*trials),
                             ctx->common.workers, [&](std::size_t t) {
                    AndersonOperator op(g, sample_disorder(model, g, ctx->common.seed, t),
                                        *lambda);
                    ComplexEnergy z(draw_energy(ctx->common.seed, t), *eta);
                    double bad = 0.0;
                    // ordered pairs: the walk sum from x and from y are
                    // different computations, both must match the solve
                    for (int x = 0; x < n; ++x)
                        for (int y = 0; y < n; ++y) {
                            if (x == y) continue;
                            auto direct = greens_function(op, x, y, z);
                            auto walked = saw_representation(op, x, y, z);
                            bad = std::max(bad,
                                           std::abs(walked - direct) / std::abs(direct));
                        }
                    worst[t] = bad;
                });
                double max_err = 0.0;
                for (double v : worst) max_err = std::max(max_err, v);
                bool pass = max_err <= *tol;
                json report;
                report["config"] = ctx->config_echo();
                report["result"] = {{"max_relative_error", max_err},
                                    {"tolerance", *tol},
                                    {"pairs", n * (n - 1)},
                                    {"trials", *trials},
                                    {"pass", pass}};
                emit_report(report, ctx->common.json_path);
                if (!pass)
                    throw CheckFailure("saw-rep mismatch: max relative error " +
                                       std::to_string(max_err));
            };
        });
    }

    // ------------------------------------------------------------------ fmm
    auto* fmm_cmd = app.add_subcommand("fmm", "fractional-moment estimates and bounds");
    fmm_cmd->require_subcommand(1);
    {
        auto x = std::make_shared<int>(0);
        auto y = std::make_shared<int>(1);
        auto lambda = std::make_shared<double>(10.0);
        auto s = std::make_shared<double>(0.5);
        auto e_real = std::make_shared<double>(0.0);
        auto eta = std::make_shared<double>(1e-2);
        auto trials = std::make_shared<long long>(10000);
        auto rho_sup = std::make_shared<double>(1.0);

        auto* estimate = fmm_cmd->add_subcommand("estimate", "Monte Carlo E|G(x,y;z)|^s with bound");
        add_common(estimate);
        ctx->bind(estimate, "--x", *x, "first vertex");
        ctx->bind(estimate, "--y", *y, "second vertex");
        ctx->bind(estimate, "--lambda", *lambda, "disorder coupling");
        ctx->bind(estimate, "--s", *s, "fractional exponent in (0,1)");
        ctx->bind(estimate, "--e-real", *e_real, "real part of the energy");
        ctx->bind(estimate, "--eta", *eta, "imaginary part of the energy");
        ctx->bind(estimate, "--trials", *trials, "Monte Carlo trials");
        estimate->callback([=, &action] {
            ctx->subcommand = "fmm estimate";
            action = [=] {
                auto g = resolve_graph(ctx->common);
                auto model = DisorderModel::uniform_unit(*lambda);
                FractionalExponent fs(*s);
                ComplexEnergy z(*e_real, *eta);
                auto est = estimate_fractional_moment(g, model, *x, *y, z, fs, *trials,
                                                      ctx->common.seed, ctx->common.workers);
                auto constants = apriori_constants(fs, model.density_sup_norm);
                double bound;
                json bound_info;
                if (*x == *y) {
                    bound = constants.c1 * std::pow(*lambda, -fs.s);
                    bound_info = {{"kind", "diagonal_apriori"}};
                } else {
                    auto counts = classify_walks(g, *x, *y);
                    bound = fractional_moment_bound(counts, fs, *lambda, constants);
                    bound_info = {{"kind", "walk_count"},
                                  {"w_prime", counts.w_prime_count()},
                                  {"d", counts.dist}};
                }
                json report;
                report["config"] = ctx->config_echo();
                report["result"] = {{"mean", est.mean},
                                    {"std_error", est.std_error},
                                    {"samples", est.samples},
                                    {"bound", bound},
                                    {"bound_info", bound_info},
                                    {"satisfied", est.mean <= bound + 3.0 * est.std_error}};
                emit_report(report, ctx->common.json_path);
            };
        });

        auto* bound_cmd = fmm_cmd->add_subcommand("bound", "walk-count moment bound, no sampling");
        add_common(bound_cmd);
        ctx->bind(bound_cmd, "--x", *x, "source vertex");
        ctx->bind(bound_cmd, "--y", *y, "target vertex");
        ctx->bind(bound_cmd, "--lambda", *lambda, "disorder coupling");
        ctx->bind(bound_cmd, "--s", *s, "fractional exponent in (0,1)");
        ctx->bind(bound_cmd, "--rho-sup", *rho_sup, "density sup norm");
        bound_cmd->callback([=, &action] {
            ctx->subcommand = "fmm bound";
            action = [=] {
                auto g = resolve_graph(ctx->common);
                FractionalExponent fs(*s);
                auto constants = apriori_constants(fs, *rho_sup);
                auto counts = classify_walks(g, *x, *y);
                json report;
                report["config"] = ctx->config_echo();
                report["result"] = {
                    {"y", counts.y_count},
                    {"x", counts.x_count},
                    {"xbar", counts.xbar_count},
                    {"w_prime", counts.w_prime_count()},
                    {"d", counts.dist},
                    {"c1", constants.c1},
                    {"c2", constants.c2},
                    {"bound", fractional_moment_bound(counts, fs, *lambda, constants)}};
                emit_report(report, ctx->common.json_path);
            };
        });

        auto* probe = fmm_cmd->add_subcommand(
            "graf-probe", "second-moment vs fractional-moment ratio witness");
        add_common(probe);
        ctx->bind(probe, "--x", *x, "first vertex");
        ctx->bind(probe, "--y", *y, "second vertex");
        ctx->bind(probe, "--lambda", *lambda, "disorder coupling");
        ctx->bind(probe, "--s", *s, "fractional exponent in (0,1)");
        ctx->bind(probe, "--e-real", *e_real, "real part of the energy");
        ctx->bind(probe, "--eta", *eta, "imaginary part of the energy");
        ctx->bind(probe, "--trials", *trials, "Monte Carlo trials");
        probe->callback([=, &action] {
            ctx->subcommand = "fmm graf-probe";
            action = [=] {
                auto g = resolve_graph(ctx->common);
                auto model = DisorderModel::uniform_unit(*lambda);
                auto result = second_moment_ratio_probe(g, model, *x, *y,
                                                        ComplexEnergy(*e_real, *eta),
                                                        FractionalExponent(*s), *trials,
                                                        ctx->common.seed, ctx->common.workers);
                json report;
                report["config"] = ctx->config_echo();
                report["result"] = {{"ratio", result.ratio},
                                    {"second_moment_mean", result.second_moment_mean},
                                    {"fractional_moment_mean", result.fractional_moment_mean},
                                    {"ratio_std_error", result.ratio_std_error},
                                    {"samples", result.samples},
                                    {"note", "observed witness, not a certified constant"}};
                emit_report(report, ctx->common.json_path);
            };
        });
    }

    // ------------------------------------------------------------- localize
    auto* loc_cmd = app.add_subcommand("localize", "localization criterion and probes");
    loc_cmd->require_subcommand(1);
    {
        auto lambda = std::make_shared<double>(100.0);
        auto s = std::make_shared<double>(0.5);
        auto eps = std::make_shared<double>(0.25);
        auto x = std::make_shared<int>(0);
        auto a = std::make_shared<double>(0.0);
        auto b = std::make_shared<double>(0.0);
        auto trials = std::make_shared<int>(100);
        auto tolerance = std::make_shared<double>(1e-6);
        auto csv_path = std::make_shared<std::string>();

        auto* criterion = loc_cmd->add_subcommand("criterion", "evaluate the disorder criterion");
        add_common(criterion);
        auto census_path = std::make_shared<std::string>();
        auto max_depth = std::make_shared<int>(-1);
        auto tail_mode = std::make_shared<std::string>("none");
        ctx->bind(criterion, "--lambda", *lambda, "disorder coupling");
        ctx->bind(criterion, "--s", *s, "fractional exponent in (0,1)");
        ctx->bind(criterion, "--epsilon", *eps, "splitting parameter in (0,1/2)");
        ctx->bind(criterion, "--census", *census_path, "census CSV (else computed)");
        ctx->bind(criterion, "--max-depth", *max_depth, "series truncation (-1: census depth)");
        ctx->bind(criterion, "--tail", *tail_mode, "tail mode: none | analytic");
        criterion->callback([=, &action] {
            ctx->subcommand = "localize criterion";
            action = [=] {
                auto g = resolve_graph(ctx->common);
                WalkCensus census;
                if (census_path->empty()) {
                    census = build_census(g, *max_depth);
                } else {
                    census = load_census_csv(*census_path);
                    census.degree_bound = g.degree_bound();
                    census.complete = static_cast<int>(census.rows.size()) > diameter(g);
                }
                TailMode tail;
                if (*tail_mode == "none") tail = TailMode::none;
                else if (*tail_mode == "analytic") tail = TailMode::analytic;
                else throw std::invalid_argument("--tail must be none or analytic");
                CriterionInput input{*s, *eps, *lambda,
                                     apriori_constants(FractionalExponent(*s), 1.0), census,
                                     sup_log_sphere_growth(g)};
                int depth = *max_depth < 0 ? static_cast<int>(census.rows.size()) - 1
                                           : *max_depth;
                auto report = criterion_evaluate(input, depth, tail);
                json result = {{"decay_rate_mu", report.decay_rate_mu},
                               {"series_value", report.series_value},
                               {"truncation_depth", report.truncation_depth},
                               {"satisfied", report.satisfied},
                               {"prefactor_scale", report.prefactor_scale},
                               {"sphere_growth", input.sphere_growth},
                               {"c2", input.constants.c2}};
                result["analytic_tail"] =
                    report.analytic_tail ? json(*report.analytic_tail) : json(nullptr);
                json out;
                out["config"] = ctx->config_echo();
                out["result"] = result;
                emit_report(out, ctx->common.json_path);
            };
        });

        auto* crit_lambda = loc_cmd->add_subcommand("critical-lambda",
                                                    "smallest disorder satisfying the criterion");
        add_common(crit_lambda);
        ctx->bind(crit_lambda, "--s", *s, "fractional exponent in (0,1)");
        ctx->bind(crit_lambda, "--epsilon", *eps, "splitting parameter in (0,1/2)");
        ctx->bind(crit_lambda, "--tolerance", *tolerance, "relative bisection tolerance");
        crit_lambda->callback([=, &action] {
            ctx->subcommand = "localize critical-lambda";
            action = [=] {
                auto g = resolve_graph(ctx->common);
                double star = critical_lambda(build_census(g), sup_log_sphere_growth(g),
                                              FractionalExponent(*s), *eps, 1.0, *tolerance);
                json report;
                report["config"] = ctx->config_echo();
                report["result"] = {{"lambda_star", star}};
                emit_report(report, ctx->common.json_path);
            };
        });

        auto* probe = loc_cmd->add_subcommand("probe", "spectral-measure decay probe");
        add_common(probe);
        ctx->bind(probe, "--x", *x, "origin vertex");
        ctx->bind(probe, "--lambda", *lambda, "disorder coupling");
        ctx->bind(probe, "--a", *a, "interval lower edge (0 0: default interval)");
        ctx->bind(probe, "--b", *b, "interval upper edge");
        ctx->bind(probe, "--trials", *trials, "disorder draws");
        ctx->bind(probe, "--csv", *csv_path, "per-distance CSV output path");
        probe->callback([=, &action] {
            ctx->subcommand = "localize probe";
            action = [=] {
                auto g = resolve_graph(ctx->common);
                auto model = DisorderModel::uniform_unit(*lambda);
                double lo = *a, hi = *b;
                if (lo == 0.0 && hi == 0.0) std::tie(lo, hi) = default_interval(g, model);
                auto result = decay_probe(g, model, *x, lo, hi, *trials, ctx->common.seed,
                                          ctx->common.workers);
                if (!csv_path->empty()) {
                    std::ofstream out(*csv_path);
                    if (!out) throw std::runtime_error("cannot open for writing: " + *csv_path);
                    out << "d,sum_expectation,bound_C_exp_minus_mu_d\n";
                    for (auto [d, value] : result.per_distance)
                        out << d << "," << value << ",\n";
                }
                json distances = json::array();
                for (auto [d, value] : result.per_distance)
                    distances.push_back({{"d", d}, {"sum_expectation", value}});
                json report;
                report["config"] = ctx->config_echo();
                report["result"] = {{"interval", {lo, hi}},
                                    {"per_distance", distances},
                                    {"fitted_rate", result.fitted_rate},
                                    {"fitted_prefactor", result.fitted_prefactor},
                                    {"degenerate", result.degenerate},
                                    {"fit_points", result.fit_points}};
                emit_report(report, ctx->common.json_path);
            };
        });

        auto* consistency = loc_cmd->add_subcommand(
            "consistency", "measured decay against the criterion bound");
        add_common(consistency);
        ctx->bind(consistency, "--x", *x, "origin vertex");
        ctx->bind(consistency, "--lambda", *lambda, "disorder coupling");
        ctx->bind(consistency, "--s", *s, "fractional exponent in (0,1)");
        ctx->bind(consistency, "--epsilon", *eps, "splitting parameter in (0,1/2)");
        ctx->bind(consistency, "--a", *a, "interval lower edge (0 0: default interval)");
        ctx->bind(consistency, "--b", *b, "interval upper edge");
        ctx->bind(consistency, "--trials", *trials, "disorder draws");
        ctx->bind(consistency, "--csv", *csv_path, "per-distance CSV output path");
        consistency->callback([=, &action] {
            ctx->subcommand = "localize consistency";
            action = [=] {
                auto g = resolve_graph(ctx->common);
                auto model = DisorderModel::uniform_unit(*lambda);
                double lo = *a, hi = *b;
                if (lo == 0.0 && hi == 0.0) std::tie(lo, hi) = default_interval(g, model);
                auto result = localization_consistency(g, model, *x, lo, hi,
                                                       FractionalExponent(*s), *eps, *trials,
                                                       ctx->common.seed, ctx->common.workers);
                if (!csv_path->empty()) {
                    std::ofstream out(*csv_path);
                    if (!out) throw std::runtime_error("cannot open for writing: " + *csv_path);
                    out << "d,sum_expectation,bound_C_exp_minus_mu_d\n";
                    for (const auto& check : result.checks)
                        out << check.d << "," << check.value << "," << check.bound << "\n";
                }
                json checks = json::array();
                for (const auto& check : result.checks)
                    checks.push_back({{"d", check.d},
                                      {"value", check.value},
                                      {"bound", check.bound},
                                      {"pass", check.pass}});
                json report;
                report["config"] = ctx->config_echo();
                report["result"] = {
                    {"criterion_satisfied", result.criterion_satisfied},
                    {"decay_rate_mu", result.criterion.decay_rate_mu},
                    {"series_value", result.criterion.series_value},
                    {"c_prime_witness", result.c_prime_witness},
                    {"c_prime_note", "empirical witness, not a certified constant"},
                    {"prefactor_c", result.prefactor_c},
                    {"interval", {lo, hi}},
                    {"fitted_rate", result.probe.fitted_rate},
                    {"checks", checks},
                    {"all_pass", result.all_pass}};
                emit_report(report, ctx->common.json_path);
            };
        });
    }

    // -------------------------------------------------------------- spectra
    auto* spectra_cmd = app.add_subcommand("spectra", "finite-volume level statistics");
    spectra_cmd->require_subcommand(1);
    {
        auto lambda = std::make_shared<double>(1.0);
        auto draws = std::make_shared<int>(40);
        auto window = std::make_shared<double>(0.5);
        auto csv_path = std::make_shared<std::string>();
        auto sweep = std::make_shared<std::string>();

        auto* ensemble = spectra_cmd->add_subcommand("ensemble", "sorted spectra per draw");
        add_common(ensemble);
        ctx->bind(ensemble, "--lambda", *lambda, "disorder coupling");
        ctx->bind(ensemble, "--draws", *draws, "disorder draws");
        ctx->bind(ensemble, "--csv", *csv_path, "eigenvalue CSV output path");
        ensemble->callback([=, &action] {
            ctx->subcommand = "spectra ensemble";
            action = [=] {
                auto g = resolve_graph(ctx->common);
                auto spectra = eigen_ensemble(g, DisorderModel::uniform_unit(*lambda), *draws,
                                              ctx->common.seed, ctx->common.workers);
                if (!csv_path->empty()) {
                    std::ofstream out(*csv_path);
                    if (!out) throw std::runtime_error("cannot open for writing: " + *csv_path);
                    out << "draw,index,eigenvalue\n";
                    out.precision(17);
                    for (std::size_t t = 0; t < spectra.size(); ++t)
                        for (std::size_t k = 0; k < spectra[t].size(); ++k)
                            out << t << "," << k << "," << spectra[t][k] << "\n";
                }
                double lo = spectra.front().front(), hi = spectra.front().back();
                for (const auto& sp : spectra) {
                    lo = std::min(lo, sp.front());
                    hi = std::max(hi, sp.back());
                }
                json report;
                report["config"] = ctx->config_echo();
                report["result"] = {{"draws", *draws},
                                    {"matrix_dim", g.vertex_count()},
                                    {"min_eigenvalue", lo},
                                    {"max_eigenvalue", hi}};
                emit_report(report, ctx->common.json_path);
            };
        });

        auto* spacing = spectra_cmd->add_subcommand("spacing", "unfolded spacing statistics");
        add_common(spacing);
        ctx->bind(spacing, "--lambda", *lambda, "disorder coupling");
        ctx->bind(spacing, "--draws", *draws, "disorder draws");
        ctx->bind(spacing, "--window", *window, "central spectrum fraction kept");
        ctx->bind(spacing, "--csv", *csv_path, "pooled spacings, one per line");
        ctx->bind(spacing, "--lambda-sweep", *sweep,
                         "comma-separated couplings; emits an array of reports");
        spacing->callback([=, &action] {
            ctx->subcommand = "spectra spacing";
            action = [=] {
                auto g = resolve_graph(ctx->common);
                std::vector<double> lambdas;
                if (sweep->empty()) {
                    lambdas.push_back(*lambda);
                } else {
                    std::stringstream ss(*sweep);
                    std::string item;
                    while (std::getline(ss, item, ',')) lambdas.push_back(std::stod(item));
                    if (lambdas.empty())
                        throw std::invalid_argument("--lambda-sweep: no values");
                    if (!csv_path->empty())
                        throw std::invalid_argument("--csv is only valid without a sweep");
                }
                json reports = json::array();
                for (double lam : lambdas) {
                    auto spectra = eigen_ensemble(g, DisorderModel::uniform_unit(lam),
                                                  *draws, ctx->common.seed,
                                                  ctx->common.workers);
                    auto pooled = unfold_and_space(spectra, *window);
                    auto dist = baseline_distances(pooled);
                    if (!csv_path->empty()) {
                        std::ofstream out(*csv_path);
                        if (!out)
                            throw std::runtime_error("cannot open for writing: " + *csv_path);
                        out.precision(17);
                        for (double sp : pooled.unfolded_spacings) out << sp << "\n";
                    }
                    double mean = 0.0;
                    for (double sp : pooled.unfolded_spacings) mean += sp;
                    mean /= static_cast<double>(pooled.unfolded_spacings.size());
                    reports.push_back({{"lambda", lam},
                                       {"ks_poisson", dist.ks_poisson},
                                       {"ks_goe", dist.ks_goe},
                                       {"verdict", to_string(dist.verdict)},
                                       {"spacings", pooled.unfolded_spacings.size()},
                                       {"mean_spacing", mean},
                                       {"degenerate_dropped", pooled.degenerate_dropped}});
                }
                json report;
                report["config"] = ctx->config_echo();
                report["result"] = sweep->empty() ? reports[0] : json{{"sweep", reports}};
                emit_report(report, ctx->common.json_path);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    ctx->active = find_active(app);

    try {
        if (!common.config_path.empty()) {
            std::ifstream in(common.config_path);
            if (!in) throw std::invalid_argument("cannot open config: " + common.config_path);
            json cfg = json::parse(in);
            ctx->apply_config(cfg);
        }
        action();
    } catch (const CheckFailure& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 3;
    }
    return exit_code;
}

} // namespace

int run(int argc, const char* const* argv) { return dispatch(argc, argv); }

} // namespace asaw::cli
