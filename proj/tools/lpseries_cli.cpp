// Copyright 2026 The lpseries Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment runner.  Every subcommand writes into a fresh --out directory:
// its data files plus manifest.json (config echo, version, master seed).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpseries/analysis.hpp"
#include "lpseries/basis.hpp"
#include "lpseries/io.hpp"
#include "lpseries/parallel.hpp"
#include "lpseries/quad.hpp"
#include "lpseries/series.hpp"
#include "lpseries/specfun.hpp"
#include "lpseries/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lpseries;

namespace {

struct Config
{
    std::string command;
    int dim = 2;
    std::size_t nmax = 0;  // 0: command default
    std::vector<double> p;
    std::string p_range = "2:20:0.25";
    std::string seq = "powerlaw:1:1";
    std::string family = "radial";
    std::vector<std::size_t> ladder = default_ladder();
    std::size_t seeds = 0;  // 0: command default
    std::uint64_t master_seed = 20260417;
    std::size_t budget = 4;
    std::vector<double> eps = {0.001, 0.01, 0.1};
    std::size_t bins = 50;
    std::vector<std::string> only;
    std::string out;
    std::size_t workers = 0;
};

json config_json(const Config& c)
{
    return {{"command", c.command}, {"dim", c.dim},
            {"nmax", c.nmax},       {"p", c.p},
            {"p_range", c.p_range}, {"seq", c.seq},
            {"family", c.family},   {"ladder", c.ladder},
            {"seeds", c.seeds},     {"master_seed", c.master_seed},
            {"budget", c.budget},   {"eps", c.eps},
            {"bins", c.bins},       {"only", c.only},
            {"workers", c.workers}};
}

std::size_t or_default(std::size_t value, std::size_t fallback)
{
    return value == 0 ? fallback : value;
}

std::vector<double> exponents_or(const Config& c, std::vector<double> fallback)
{
    return c.p.empty() ? fallback : c.p;
}

BasisFamily family_of(const Config& c)
{
    if (c.family == "radial")
        return BasisFamily::radial(c.dim);
    if (c.family == "constant")
        return BasisFamily::constant_modulus();
    throw std::invalid_argument("--family must be 'radial' or 'constant', got '" +
                                c.family + "'");
}

BracketOptions parse_range(const std::string& text)
{
    BracketOptions options;
    std::vector<double> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t colon = std::min(text.find(':', start), text.size());
        const std::string piece = text.substr(start, colon - start);
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(piece, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (piece.empty() || used != piece.size())
            throw std::invalid_argument("--p-range expects MIN:MAX[:TOL], got '" +
                                        text + "'");
        parts.push_back(value);
        start = colon + 1;
    }
    if (parts.size() < 2 || parts.size() > 3)
        throw std::invalid_argument("--p-range expects MIN:MAX[:TOL], got '" + text + "'");
    options.p_min = parts[0];
    options.p_max = parts[1];
    if (parts.size() == 3)
        options.tol = parts[2];
    return options;
}

json optional_json(const std::optional<double>& value)
{
    return value ? json(*value) : json();
}

json estimate_json(const MonteCarloEstimate& e)
{
    return {{"mean", e.mean}, {"standard_error", e.standard_error},
            {"samples", e.samples}};
}

json verdict_json(const DivergenceVerdict& v)
{
    json ladder = json::array();
    for (const auto& [n, m] : v.ladder)
        ladder.push_back({{"N", n}, {"M_N", m}});
    return {{"p", v.p},
            {"verdict", std::string(to_string(v.verdict))},
            {"fitted_growth_exponent", v.fitted_growth_exponent},
            {"level_slope", v.level_slope},
            {"ladder", std::move(ladder)},
            {"diagnostic", v.diagnostic}};
}

class RunDirectory
{
  public:
    explicit RunDirectory(const Config& config) : config_(config), dir_(config.out)
    {
        if (dir_.empty())
            throw std::invalid_argument("--out is required");
        if (fs::exists(dir_ / "manifest.json"))
            throw std::runtime_error("output directory '" + dir_.string() +
                                     "' already holds a run; outputs are write-once");
    }

    std::ofstream open(const std::string& name) const
    {
        return open_output_file(dir_ / name);
    }

    void write_json(const std::string& name, const json& value) const
    {
        auto out = open(name);
        out << value.dump(2) << '\n';
        if (!out)
            throw std::runtime_error("write failed for '" + (dir_ / name).string() + "'");
    }

    void write_manifest(const std::vector<std::string>& files) const
    {
        write_json("manifest.json", {{"version", std::string(library_version)},
                                     {"master_seed", config_.master_seed},
                                     {"config", config_json(config_)},
                                     {"files", files}});
    }

    const fs::path& path() const { return dir_; }

  private:
    const Config& config_;
    fs::path dir_;
};

struct RadialSetup
{
    QuadratureGrid grid;
    RadialBasis basis;
};

// Grid resolving mode n and the first n modes built on it.
RadialSetup radial_setup(int d, std::size_t n)
{
    const ZeroTable zeros = bessel_zeros(BesselOrder::from_dimension(d), n);
    QuadratureGrid grid = build_grid(d, zeros.zero(n));
    RadialBasis basis = build_radial_basis(d, n, grid);
    return {std::move(grid), std::move(basis)};
}

//---------------------------------------------------------------------------//

int cmd_basis(const Config& c)
{
    const RunDirectory run(c);
    const std::size_t n = or_default(c.nmax, 30);
    const std::vector<double> exponents = exponents_or(c, {2.0, 4.0, 6.0});
    const RadialSetup setup = radial_setup(c.dim, n);
    const QuadratureGrid& grid = setup.grid;
    const RadialBasis& basis = setup.basis;
    {
        auto out = run.open("basis.csv");
        write_basis_csv(basis, grid, exponents, out);
    }
    run.write_manifest({"basis.csv"});
    std::cout << "basis: d=" << c.dim << " n_max=" << n << " -> "
              << (run.path() / "basis.csv").string() << '\n';
    return 0;
}

int cmd_norms(const Config& c)
{
    const RunDirectory run(c);
    const std::size_t n_max = or_default(c.nmax, 1000);
    const std::vector<double> exponents = exponents_or(c, {4.0, 6.0});
    ModeNormSweep sweep(c.dim, exponents);
    auto out = run.open("norms.csv");
    out << "n,z_n,beta_n,sup_norm";
    for (double p : exponents)
        out << ",lp_norm@" << format_double(p) << ",delta_bound@" << format_double(p);
    out << '\n';
    for (std::size_t n = 1; n <= n_max; ++n) {
        sweep.advance();
        out << n << ',' << format_double(sweep.zero()) << ','
            << format_double(sweep.normalizer()) << ','
            << format_double(sweep.sup_norm());
        for (std::size_t k = 0; k < exponents.size(); ++k)
            out << ',' << format_double(sweep.lp_norm(k)) << ','
                << format_double(delta_bound(n, exponents[k], c.dim));
        out << '\n';
    }
    out.close();
    run.write_manifest({"norms.csv"});
    std::cout << "norms: d=" << c.dim << " n_max=" << n_max << '\n';
    return 0;
}

int cmd_sample(const Config& c)
{
    const RunDirectory run(c);
    const std::size_t n = or_default(c.nmax, 64);
    const std::size_t seeds = or_default(c.seeds, 4);
    const std::vector<double> exponents = exponents_or(c, {2.0, 4.0});
    const CoefficientSequence seq = CoefficientSequence::parse(c.seq);
    const RadialSetup setup = radial_setup(c.dim, n);
    const QuadratureGrid& grid = setup.grid;
    const RadialBasis& basis = setup.basis;
    const SeriesSampler sampler(seq, basis, n, grid);
    std::vector<std::string> files;
    auto norms = run.open("lp_norms.csv");
    write_csv_row(norms, {"stream", "p", "lp_norm_pth_power"});
    for (std::size_t s = 0; s < seeds; ++s) {
        const SeriesDraw draw = sampler.draw(RandomStream(c.master_seed, s));
        const std::string name = "field_" + std::to_string(s) + ".csv";
        auto out = run.open(name);
        write_field_csv(draw, grid, out);
        files.push_back(name);
        for (double p : exponents)
            write_csv_row(norms, {std::to_string(s), format_double(p),
                                  format_double(field_power_integral(draw, grid, p))});
    }
    norms.close();
    files.push_back("lp_norms.csv");
    run.write_manifest(files);
    std::cout << "sample: " << seeds << " draws of N=" << n << '\n';
    return 0;
}

int cmd_expected_norm(const Config& c)
{
    const RunDirectory run(c);
    const std::size_t n = or_default(c.nmax, 50);
    const std::vector<double> exponents = exponents_or(c, {4.0});
    const CoefficientSequence seq = CoefficientSequence::parse(c.seq);
    json rows = json::array();
    if (c.family == "constant") {
        const ConstantModulusBasis basis;
        for (double p : exponents)
            rows.push_back({{"p", p}, {"M_N", expected_lp_pth_power(seq, basis, n, p)}});
    } else {
        const RadialSetup setup = radial_setup(c.dim, n);
        const QuadratureGrid& grid = setup.grid;
        const RadialBasis& basis = setup.basis;
        const SeriesSampler sampler(seq, basis, n, grid);
        for (double p : exponents) {
            const double m = expected_lp_pth_power(seq, basis, n, p, grid);
            json row = {{"p", p}, {"M_N", m}};
            if (c.seeds > 0) {
                const MonteCarloEstimate mc = summarize(
                    sampler.power_integrals(grid, c.master_seed, 0, c.seeds, p));
                row["monte_carlo"] = estimate_json(mc);
                row["z_score"] = std::abs(mc.mean - m) / mc.standard_error;
            }
            rows.push_back(std::move(row));
        }
    }
    run.write_json("expected_norm.json", {{"seq", seq.describe()},
                                          {"family", c.family},
                                          {"d", c.dim},
                                          {"N", n},
                                          {"values", rows}});
    run.write_manifest({"expected_norm.json"});
    for (const auto& row : rows)
        std::cout << "p=" << row["p"] << " M_N=" << row["M_N"] << '\n';
    return 0;
}

int cmd_classify(const Config& c)
{
    const RunDirectory run(c);
    const std::vector<double> exponents = exponents_or(c, {4.0, 8.0});
    const CoefficientSequence seq = CoefficientSequence::parse(c.seq);
    const LadderProfile profile(seq, family_of(c), c.ladder);
    json verdicts = json::array();
    auto table = run.open("ladder.csv");
    write_csv_row(table, {"p", "N", "M_N"});
    for (double p : exponents) {
        const DivergenceVerdict v = classify_divergence(profile, p);
        for (const auto& [n, m] : v.ladder)
            write_csv_row(table, {format_double(p), std::to_string(n), format_double(m)});
        std::cout << "p=" << format_double(p) << ": " << to_string(v.verdict)
                  << " (exponent " << format_double(v.fitted_growth_exponent) << ")\n";
        verdicts.push_back(verdict_json(v));
    }
    table.close();
    run.write_json("classify.json",
                   {{"seq", seq.describe()}, {"family", c.family}, {"d", c.dim},
                    {"verdicts", verdicts}});
    run.write_manifest({"ladder.csv", "classify.json"});
    return 0;
}

int cmd_pcr(const Config& c)
{
    const RunDirectory run(c);
    const CoefficientSequence seq = CoefficientSequence::parse(c.seq);
    const BracketOptions options = parse_range(c.p_range);
    const LadderProfile profile(seq, family_of(c), c.ladder);
    const PcrBracket bracket = bracket_pcr(profile, seq, options);
    json probes = json::array();
    auto table = run.open("ladder.csv");
    write_csv_row(table, {"p", "N", "M_N", "verdict"});
    for (const auto& v : bracket.probes) {
        for (const auto& [n, m] : v.ladder)
            write_csv_row(table, {format_double(v.p), std::to_string(n),
                                  format_double(m), to_string(v.verdict)});
        probes.push_back(verdict_json(v));
    }
    table.close();
    const TheoremBracket& tb = bracket.theorem_bracket;
    run.write_json("pcr.json",
                   {{"seq", seq.describe()},
                    {"family", c.family},
                    {"d", c.dim},
                    {"p_min", options.p_min},
                    {"p_max", options.p_max},
                    {"tol", options.tol},
                    {"p_lower", bracket.lower},
                    {"p_lower_found", bracket.lower_found},
                    {"p_upper", optional_json(bracket.upper)},
                    {"p_upper_infinite", !bracket.upper.has_value()},
                    {"theorem_p_lower", tb.lower},
                    {"theorem_p_upper", optional_json(tb.upper)},
                    {"theorem_p_upper_infinite", !tb.upper.has_value()},
                    {"probes", probes}});
    run.write_manifest({"ladder.csv", "pcr.json"});
    std::cout << "bracket [" << format_double(bracket.lower) << ", "
              << (bracket.upper ? format_double(*bracket.upper) : "inf") << "]\n";
    return 0;
}

int cmd_alpha_star(const Config& c)
{
    const RunDirectory run(c);
    const CoefficientSequence seq = CoefficientSequence::parse(c.seq);
    const double a = alpha_star(seq, c.dim, c.ladder);
    const double bound = divergence_exponent_bound(a, c.dim);
    run.write_json("alpha_star.json",
                   {{"seq", seq.describe()},
                    {"d", c.dim},
                    {"ladder", c.ladder},
                    {"alpha_star", a},
                    {"two_d_over_alpha_star", std::isfinite(bound) ? json(bound) : json()},
                    {"two_d_over_alpha_star_infinite", !std::isfinite(bound)}});
    run.write_manifest({"alpha_star.json"});
    std::cout << "alpha_star=" << format_double(a) << " 2d/alpha_star="
              << format_double(bound) << '\n';
    return 0;
}

int cmd_adversarial(const Config& c)
{
    const RunDirectory run(c);
    const double p = c.p.empty() ? 6.0 : c.p.front();
    const std::size_t cap = or_default(c.nmax, 2'000'000);
    json report = {{"family", c.family}, {"d", c.dim}, {"p", p},
                   {"K", c.budget},      {"mode_cap", cap}};
    std::vector<std::string> files = {"adversarial.json"};
    try {
        const AdversarialSequence seq =
            construct_diverging_sequence(family_of(c), p, c.budget, cap);
        json picks = json::array();
        auto out = run.open("sequence.txt");
        out << "# index value; usable as sparse:FILE\n";
        for (std::size_t k = 0; k < seq.indices.size(); ++k) {
            picks.push_back({{"k", k + 1}, {"n_k", seq.indices[k]},
                             {"c_n", seq.sequence(seq.indices[k])},
                             {"lp_norm", seq.norms[k]}});
            out << seq.indices[k] << ' ' << format_double(seq.sequence(seq.indices[k]))
                << '\n';
        }
        files.push_back("sequence.txt");
        report["no_such_sequence"] = false;
        report["picks"] = std::move(picks);
        std::cout << "found " << seq.indices.size() << " indices\n";
    } catch (const NoSuchSequence& e) {
        report["no_such_sequence"] = true;
        report["reason"] = e.what();
        std::cout << "no such sequence: " << e.what() << '\n';
    }
    run.write_json("adversarial.json", report);
    run.write_manifest(files);
    return 0;
}

int cmd_fernique(const Config& c)
{
    const RunDirectory run(c);
    const std::size_t n = or_default(c.nmax, 50);
    const std::size_t seeds = or_default(c.seeds, 1000);
    const double p = c.p.empty() ? 4.0 : c.p.front();
    const CoefficientSequence seq = CoefficientSequence::parse(c.seq);
    const RadialSetup setup = radial_setup(c.dim, n);
    const QuadratureGrid& grid = setup.grid;
    const RadialBasis& basis = setup.basis;
    const auto points =
        fernique_probe(seq, basis, p, n, c.eps, grid, seeds, c.master_seed);
    auto out = run.open("fernique.csv");
    write_csv_row(out, {"eps", "mean", "standard_error", "samples"});
    for (const auto& pt : points)
        write_csv_row(out, {format_double(pt.eps), format_double(pt.estimate.mean),
                            format_double(pt.estimate.standard_error),
                            std::to_string(pt.estimate.samples)});
    out.close();
    run.write_manifest({"fernique.csv"});
    std::cout << "fernique: " << points.size() << " eps values\n";
    return 0;
}

int cmd_gibbs(const Config& c)
{
    const RunDirectory run(c);
    const std::size_t n = or_default(c.nmax, 128);
    const std::size_t seeds = or_default(c.seeds, 10'000);
    const GibbsSample small = sample_gibbs_weights(n, seeds, c.master_seed);
    const GibbsSample large = sample_gibbs_weights(2 * n, seeds, c.master_seed);

    auto weights = run.open("weights.csv");
    write_csv_row(weights, {"stream", "weight_N", "log_weight_N", "weight_2N",
                            "log_weight_2N"});
    for (std::size_t s = 0; s < seeds; ++s)
        write_csv_row(weights, {std::to_string(s), format_double(small.weights[s]),
                                format_double(small.log_weights[s]),
                                format_double(large.weights[s]),
                                format_double(large.log_weights[s])});
    weights.close();

    const std::size_t bins = std::max<std::size_t>(c.bins, 1);
    auto histogram = run.open("histogram.csv");
    write_csv_row(histogram, {"bin_lower", "bin_upper", "count_N", "count_2N"});
    std::vector<std::size_t> count_small(bins, 0);
    std::vector<std::size_t> count_large(bins, 0);
    auto bin_of = [&](double w) {
        return std::min(bins - 1, static_cast<std::size_t>(w * static_cast<double>(bins)));
    };
    for (double w : small.weights)
        ++count_small[bin_of(w)];
    for (double w : large.weights)
        ++count_large[bin_of(w)];
    for (std::size_t b = 0; b < bins; ++b)
        write_csv_row(histogram,
                      {format_double(static_cast<double>(b) / bins),
                       format_double(static_cast<double>(b + 1) / bins),
                       std::to_string(count_small[b]), std::to_string(count_large[b])});
    histogram.close();

    const double diff = large.estimate.mean - small.estimate.mean;
    const double se =
        std::hypot(small.estimate.standard_error, large.estimate.standard_error);
    const bool stable = std::abs(diff) <= 3.0 * se;
    run.write_json("gibbs.json", {{"N", n},
                                  {"seeds", seeds},
                                  {"mean_weight_N", estimate_json(small.estimate)},
                                  {"mean_weight_2N", estimate_json(large.estimate)},
                                  {"difference", diff},
                                  {"combined_standard_error", se},
                                  {"stable_within_3_se", stable}});
    run.write_manifest({"weights.csv", "histogram.csv", "gibbs.json"});
    std::cout << "mean weight N=" << n << ": " << format_double(small.estimate.mean)
              << ", N=" << 2 * n << ": " << format_double(large.estimate.mean)
              << (stable ? " (stable)" : " (NOT stable)") << '\n';
    return 0;
}

int cmd_verify(const Config& c)
{
    const RunDirectory run(c);
    VerifyOptions options;
    options.master_seed = c.master_seed;
    options.only = c.only;
    const std::vector<CheckResult> results = run_acceptance(options);
    bool all = true;
    for (const auto& r : results) {
        char seconds[32];
        std::snprintf(seconds, sizeof seconds, "%.3f", r.seconds);
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.number << ' ' << r.id << " ("
                  << seconds << " s)";
        if (!r.passed)
            std::cout << ": " << r.failure;
        std::cout << '\n';
        all = all && r.passed;
    }
    run.write_json("report.json", acceptance_report(results, options));
    run.write_json("timings.json", timing_report(results));
    run.write_manifest({"report.json", "timings.json"});
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Gaussian random series on radial eigenbases: experiment runner"};
    app.set_version_flag("--version", std::string(library_version));
    app.set_config("--config", "", "key=value file; command-line flags win");
    app.require_subcommand(1);
    app.fallthrough();

    Config config;
    app.add_option("--dim", config.dim, "Ambient dimension d")->capture_default_str();
    app.add_option("--nmax", config.nmax,
                   "Mode count, truncation N, or mode cap, by command");
    app.add_option("--p", config.p, "Exponent(s), comma separated")->delimiter(',');
    app.add_option("--p-range", config.p_range, "MIN:MAX[:TOL] for pcr")
        ->capture_default_str();
    app.add_option("--seq", config.seq,
                   "powerlaw:a:alpha | invzero[:d:scale] | sparse:FILE | explicit:FILE")
        ->capture_default_str();
    app.add_option("--family", config.family, "radial or constant")
        ->capture_default_str();
    app.add_option("--ladder", config.ladder, "Truncation ladder, comma separated")
        ->delimiter(',');
    app.add_option("--seeds", config.seeds, "Monte Carlo sample count");
    app.add_option("--master-seed", config.master_seed, "Master seed")
        ->capture_default_str();
    app.add_option("--budget", config.budget, "K for the adversarial construction")
        ->capture_default_str();
    app.add_option("--eps", config.eps, "Fernique exponents, comma separated")
        ->delimiter(',');
    app.add_option("--bins", config.bins, "Gibbs histogram bins")->capture_default_str();
    app.add_option("--only", config.only, "verify: run only these check ids")
        ->delimiter(',');
    app.add_option("--out", config.out, "Output directory (must not hold a run)");
    app.add_option("--workers", config.workers, "Worker threads (default: all cores)");

    struct Command
    {
        const char* name;
        const char* help;
        int (*run)(const Config&);
    };
    const Command commands[] = {
        {"basis", "Tabulate z_n, beta_n and mode norms", cmd_basis},
        {"norms", "Mode L^p norms far out via the lobe sweep", cmd_norms},
        {"sample", "Draw truncated random series on the grid", cmd_sample},
        {"expected-norm", "Deterministic E||F^N||_p^p, optional Monte Carlo check",
         cmd_expected_norm},
        {"classify", "Convergent/Divergent verdicts along a ladder", cmd_classify},
        {"pcr", "Bracket the critical exponent", cmd_pcr},
        {"alpha-star", "Weighted growth exponent and 2d/alpha_star", cmd_alpha_star},
        {"adversarial", "Sparse sequence with diverging L^p norm", cmd_adversarial},
        {"fernique", "Exponential square moments", cmd_fernique},
        {"gibbs", "Gibbs weights at N and 2N", cmd_gibbs},
        {"verify", "Run the acceptance checks", cmd_verify},
    };
    const Command* chosen = nullptr;
    for (const auto& cmd : commands) {
        auto* sub = app.add_subcommand(cmd.name, cmd.help);
        sub->callback([&chosen, &cmd] { chosen = &cmd; });
    }

    CLI11_PARSE(app, argc, argv);
    if (chosen == nullptr)
        return 2;
    config.command = chosen->name;
    try {
        if (config.workers > 0)
            set_worker_count(config.workers);
        return chosen->run(config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
