// betatest — two-sample covariance equality testing from the command line.
//
// Subcommands:
//   test      run T1/T2 on two CSV samples, emit a JSON report
//   simulate  Monte Carlo size/power tables over a delta list
//   gof       goodness of fit of the null statistic against N(0,1)
//   esd       limiting spectral density grid + closed-form/quadrature limits

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "betatest/betatest.hpp"

namespace {

using namespace betatest;

// Fixed default seed: reruns without --seed are reproducible by design.
constexpr std::uint64_t kDefaultSeed = 24301;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write to " + path);
    out << text;
}

RunManifest make_manifest(const std::string& command, std::vector<std::string> args) {
    RunManifest m;
    m.command = command;
    m.args = std::move(args);
    m.created = iso8601_now();
    return m;
}

WhichTests parse_stats(const std::string& s) {
    if (s == "t1" || s == "T1") return WhichTests::T1;
    if (s == "t2" || s == "T2") return WhichTests::T2;
    if (s == "both") return WhichTests::Both;
    throw CLI::ValidationError("--stat", "expected t1, t2 or both");
}

// "normal", "estimate", "population" (harness default), or "d1,d2" fixed pair.
std::optional<KurtosisPolicy> parse_kurtosis(const std::string& s, bool allow_population) {
    if (s == "normal") return KurtosisPolicy::assumed_normal();
    if (s == "estimate") return KurtosisPolicy::estimate();
    if (s == "population") {
        if (!allow_population)
            throw CLI::ValidationError("--kurtosis",
                                       "'population' needs a simulated distribution; use "
                                       "normal, estimate or d1,d2");
        return std::nullopt;
    }
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--kurtosis", "expected normal, estimate or a d1,d2 pair");
    try {
        const double d1 = std::stod(s.substr(0, comma));
        const double d2 = std::stod(s.substr(comma + 1));
        return KurtosisPolicy::fixed(d1, d2);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--kurtosis", "could not parse the d1,d2 pair '" + s + "'");
    }
}

Population parse_dist(const std::string& s) {
    if (s == "normal") return Population::Normal;
    if (s == "uniform") return Population::Uniform;
    throw CLI::ValidationError("--dist", "expected normal or uniform");
}

// ---------------------------------------------------------------------------
// test

struct TestArgs {
    std::string sample1, sample2;
    std::string stat = "both";
    std::string kurtosis = "normal";
    double alpha = 0.05;
    bool transpose = false;
    std::string out;
};

int cmd_test(const TestArgs& a) {
    const auto m1 = read_csv_file(a.sample1, a.transpose);
    const auto m2 = read_csv_file(a.sample2, a.transpose);
    const auto policy = parse_kurtosis(a.kurtosis, false);
    const auto reports = run_test(m1.values, m2.values, parse_stats(a.stat), *policy);

    std::vector<std::string> args{"--sample1", a.sample1, "--sample2",  a.sample2,
                                  "--stat",    a.stat,    "--kurtosis", a.kurtosis,
                                  "--alpha",   fmt(a.alpha)};
    if (a.transpose) args.push_back("--transpose");
    const auto doc = test_report_document(make_manifest("test", args), reports);
    write_text(a.out, doc.dump(2) + "\n");

    for (const auto& r : reports)
        if (r.p_value < a.alpha) return 2;
    return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
    int model = 1;
    std::string dist = "normal";
    int n1 = 0, n2 = 0, p = 0;
    std::vector<double> deltas{0.0};
    int reps = 1000;
    double alpha = 0.05;
    std::uint64_t seed = kDefaultSeed;
    std::string stats = "both";
    std::string kurtosis = "population";
    int threads = 0;
    std::string out;
    std::string curves;
};

ExperimentConfig build_config(int model, Population dist, int n1, int n2, int p, double delta,
                              int reps, double alpha, std::uint64_t seed, WhichTests which,
                              const std::optional<KurtosisPolicy>& kurt, int threads) {
    ExperimentConfig config;
    config.model = {model, p, seed};
    config.dist = dist;
    config.n1 = n1;
    config.n2 = n2;
    config.p = p;
    config.delta = delta;
    config.reps = reps;
    config.alpha_level = alpha;
    config.seed = seed;
    config.run_t1 = which != WhichTests::T2;
    config.run_t2 = which != WhichTests::T1;
    config.kurt_policy = kurt;
    config.threads = threads;
    return config;
}

std::vector<std::string> simulate_manifest_args(const SimulateArgs& a) {
    std::vector<std::string> args{"--model",   std::to_string(a.model),
                                  "--dist",    a.dist,
                                  "--n1",      std::to_string(a.n1),
                                  "--n2",      std::to_string(a.n2),
                                  "--p",       std::to_string(a.p),
                                  "--reps",    std::to_string(a.reps),
                                  "--alpha",   fmt(a.alpha),
                                  "--seed",    std::to_string(a.seed),
                                  "--stats",   a.stats,
                                  "--kurtosis", a.kurtosis};
    args.push_back("--delta-list");
    std::string list;
    for (std::size_t i = 0; i < a.deltas.size(); ++i) {
        if (i) list += ',';
        list += fmt(a.deltas[i]);
    }
    args.push_back(list);
    return args;
}

int cmd_simulate(const SimulateArgs& a) {
    if (a.reps < 1) throw CLI::ValidationError("--reps", "needs at least 1 replicate");
    const Population dist = parse_dist(a.dist);
    const WhichTests which = parse_stats(a.stats);
    const auto kurt = parse_kurtosis(a.kurtosis, true);

    std::string table = "delta,stat,rejection_rate,reps_used,wall_time\n";
    std::string curves = "model,dist,n1,n2,p,reps,seed,alpha,delta,stat,rejection_rate,reps_used\n";
    for (double delta : a.deltas) {
        const auto config = build_config(a.model, dist, a.n1, a.n2, a.p, delta, a.reps, a.alpha,
                                         a.seed, which, kurt, a.threads);
        const PowerRow row = run_experiment(config);
        for (const auto& w : row.warnings) std::cerr << "warning: " << w << "\n";
        auto emit = [&](const char* stat, double rate) {
            table += fmt(delta) + "," + stat + "," + fmt(rate) + "," + std::to_string(row.reps_used) +
                     "," + fmt(row.wall_seconds) + "\n";
            curves += std::to_string(a.model) + "," + a.dist + "," + std::to_string(a.n1) + "," +
                      std::to_string(a.n2) + "," + std::to_string(a.p) + "," + std::to_string(a.reps) +
                      "," + std::to_string(a.seed) + "," + fmt(a.alpha) + "," + fmt(delta) + "," +
                      stat + "," + fmt(rate) + "," + std::to_string(row.reps_used) + "\n";
        };
        if (config.run_t1) emit("T1", row.rate_t1);
        if (config.run_t2) emit("T2", row.rate_t2);
    }
    write_text(a.out, table);
    if (!a.curves.empty()) write_text(a.curves, curves);

    const auto manifest = make_manifest("simulate", simulate_manifest_args(a));
    if (!a.out.empty())
        write_text(a.out + ".manifest.json", nlohmann::json{{"schema_version", 1},
                                                            {"tool", "betatest"},
                                                            {"manifest", to_json(manifest)}}
                                                 .dump(2) +
                                                 "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// gof

struct GofArgs {
    std::string stat = "t1";
    int model = 1;
    std::string dist = "normal";
    int n1 = 0, n2 = 0, p = 0;
    int reps = 1000;
    std::uint64_t seed = kDefaultSeed;
    std::string kurtosis = "population";
    int threads = 0;
    std::string out;
    std::string samples_out;
};

int cmd_gof(const GofArgs& a) {
    if (a.reps < 1) throw CLI::ValidationError("--reps", "needs at least 1 replicate");
    const Statistic stat = parse_stats(a.stat) == WhichTests::T2 ? Statistic::T2 : Statistic::T1;
    if (parse_stats(a.stat) == WhichTests::Both)
        throw CLI::ValidationError("--stat", "pick one statistic for a goodness-of-fit run");
    const auto kurt = parse_kurtosis(a.kurtosis, true);

    const auto config = build_config(a.model, parse_dist(a.dist), a.n1, a.n2, a.p, 0.0, a.reps, 0.05,
                                     a.seed, WhichTests::Both, kurt, a.threads);
    std::vector<std::string> warnings;
    const auto samples = null_statistics(config, stat, &warnings);
    if (samples.empty()) throw DegenerateSampleError("no replicate produced a statistic value");

    nlohmann::json doc{{"schema_version", 1}, {"tool", "betatest"}};
    std::vector<std::string> args{"--stat", a.stat,
                                  "--model", std::to_string(a.model),
                                  "--dist", a.dist,
                                  "--n1", std::to_string(a.n1),
                                  "--n2", std::to_string(a.n2),
                                  "--p", std::to_string(a.p),
                                  "--reps", std::to_string(a.reps),
                                  "--seed", std::to_string(a.seed),
                                  "--kurtosis", a.kurtosis};
    doc["manifest"] = to_json(make_manifest("gof", args));
    doc["reps_used"] = samples.size();
    doc["warnings"] = warnings;

    const auto ks = ks_statistic(samples, [](double x) { return normal_cdf(x); });
    doc["ks"] = {{"statistic", ks.statistic}, {"p_value", ks.p_value}};
    if (samples.size() >= 8) {
        const auto jb = jb_statistic(samples);
        doc["jb"] = {{"statistic", jb.statistic}, {"p_value", jb.p_value}};
    } else {
        doc["jb"] = nullptr;
        std::cerr << "warning: Jarque-Bera needs at least 8 samples; skipped\n";
    }
    doc["samples"] = samples;
    write_text(a.out, doc.dump(2) + "\n");

    if (!a.samples_out.empty()) {
        std::string csv = "value\n";
        for (double v : samples) csv += fmt(v) + "\n";
        write_text(a.samples_out, csv);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// esd

struct EsdArgs {
    double y1 = 0.0, y2 = 0.0;
    int grid = 256;
    int nodes = 512;
    std::string out;
    std::string meta;
};

int cmd_esd(const EsdArgs& a) {
    if (a.grid < 2) throw CLI::ValidationError("--grid", "needs at least 2 points");
    const auto params = EsdParams::make(a.y1, a.y2);

    std::string csv = "x,density\n";
    for (int i = 0; i < a.grid; ++i) {
        const double x = params.x_l + (params.x_r - params.x_l) * i / (a.grid - 1.0);
        csv += fmt(x) + "," + fmt(esd_density(x, params)) + "\n";
    }
    write_text(a.out, csv);

    const double l_closed = limit_l(a.y1, a.y2);
    const double l_quad = integrate_esd([](double x) { return x; }, params, a.nodes);
    const double lt_closed = limit_l_tilde(a.y1, a.y2);
    const double lt_quad = integrate_esd(
        [&](double x) { return quadratic_limit_integrand(x, a.y1, a.y2); }, params, a.nodes);

    std::vector<std::string> args{"--y1",   fmt(a.y1),           "--y2",    fmt(a.y2),
                                  "--grid", std::to_string(a.grid), "--nodes", std::to_string(a.nodes)};
    nlohmann::json meta{{"schema_version", 1},
                        {"tool", "betatest"},
                        {"manifest", to_json(make_manifest("esd", args))},
                        {"y1", a.y1},
                        {"y2", a.y2},
                        {"x_l", params.x_l},
                        {"x_r", params.x_r},
                        {"mass0", params.mass0},
                        {"mass1", params.mass1},
                        {"l_n", {{"closed_form", l_closed}, {"quadrature", l_quad}}},
                        {"l_tilde_n", {{"closed_form", lt_closed}, {"quadrature", lt_quad}}}};
    std::string meta_path = a.meta;
    if (meta_path.empty() && !a.out.empty()) meta_path = a.out + ".meta.json";
    write_text(meta_path, meta.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-sample covariance equality tests (modified Pillai trace statistics)"};
    app.set_version_flag("--version", std::string("betatest ") + kVersion);
    app.require_subcommand(1);

    TestArgs ta;
    auto* test = app.add_subcommand("test", "Test two CSV samples for equal covariance matrices");
    test->add_option("--sample1", ta.sample1, "CSV file, rows = observations")->required();
    test->add_option("--sample2", ta.sample2, "CSV file, rows = observations")->required();
    test->add_option("--stat", ta.stat, "t1, t2 or both (default both)");
    test->add_option("--kurtosis", ta.kurtosis, "normal, estimate or d1,d2 (default normal)");
    test->add_option("--alpha", ta.alpha, "level for the exit-code convention (default 0.05)");
    test->add_flag("--transpose", ta.transpose, "input files are variables x observations");
    test->add_option("--out", ta.out, "JSON report path (default stdout)");

    SimulateArgs sa;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo size/power table");
    simulate->add_option("--model", sa.model, "covariance model 1..4 (default 1)")
        ->check(CLI::Range(1, 4));
    simulate->add_option("--dist", sa.dist, "normal or uniform (default normal)");
    simulate->add_option("--n1", sa.n1, "sample 1 size")->required();
    simulate->add_option("--n2", sa.n2, "sample 2 size")->required();
    simulate->add_option("--p", sa.p, "dimension")->required();
    simulate->add_option("--delta-list", sa.deltas, "comma-separated deltas (default 0)")
        ->delimiter(',');
    simulate->add_option("--reps", sa.reps, "replicates per delta (default 1000)");
    simulate->add_option("--alpha", sa.alpha, "nominal level (default 0.05)");
    simulate->add_option("--seed", sa.seed, "RNG seed (default 24301)");
    simulate->add_option("--stats", sa.stats, "t1, t2 or both (default both)");
    simulate->add_option("--kurtosis", sa.kurtosis,
                         "population, normal, estimate or d1,d2 (default population)");
    simulate->add_option("--threads", sa.threads, "worker threads (default: BETATEST_THREADS or all)");
    simulate->add_option("--out", sa.out, "CSV table path (default stdout)");
    simulate->add_option("--curves", sa.curves, "optional plot-ready long-format CSV path");

    GofArgs ga;
    auto* gof = app.add_subcommand("gof", "Goodness of fit of the null statistic vs N(0,1)");
    gof->add_option("--stat", ga.stat, "t1 or t2 (default t1)");
    gof->add_option("--model", ga.model, "covariance model 1..4 (default 1)")->check(CLI::Range(1, 4));
    gof->add_option("--dist", ga.dist, "normal or uniform (default normal)");
    gof->add_option("--n1", ga.n1, "sample 1 size")->required();
    gof->add_option("--n2", ga.n2, "sample 2 size")->required();
    gof->add_option("--p", ga.p, "dimension")->required();
    gof->add_option("--reps", ga.reps, "replicates (default 1000)");
    gof->add_option("--seed", ga.seed, "RNG seed (default 24301)");
    gof->add_option("--kurtosis", ga.kurtosis,
                    "population, normal, estimate or d1,d2 (default population)");
    gof->add_option("--threads", ga.threads, "worker threads");
    gof->add_option("--out", ga.out, "JSON report path (default stdout)");
    gof->add_option("--samples-out", ga.samples_out, "optional CSV of the raw statistic values");

    EsdArgs ea;
    auto* esd = app.add_subcommand("esd", "Limiting spectral density grid");
    esd->add_option("--y1", ea.y1, "dimension ratio p/n1")->required();
    esd->add_option("--y2", ea.y2, "dimension ratio p/n2")->required();
    esd->add_option("--grid", ea.grid, "grid points across the support (default 256)");
    esd->add_option("--nodes", ea.nodes, "quadrature nodes (default 512)");
    esd->add_option("--out", ea.out, "CSV grid path (default stdout)");
    esd->add_option("--meta", ea.meta, "JSON metadata path (default <out>.meta.json)");

    try {
        app.parse(argc, argv);
        if (test->parsed()) return cmd_test(ta);
        if (simulate->parsed()) return cmd_simulate(sa);
        if (gof->parsed()) return cmd_gof(ga);
        if (esd->parsed()) return cmd_esd(ea);
        return 1;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
