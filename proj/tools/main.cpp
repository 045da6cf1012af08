// cqexp: auxiliary-function and random-coding exponent toolkit for
// classical-quantum channels.
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cqexp/channel.hpp"
#include "cqexp/coding.hpp"
#include "cqexp/config.hpp"
#include "cqexp/errors.hpp"
#include "cqexp/exponent.hpp"
#include "cqexp/inequality.hpp"
#include "cqexp/rate.hpp"
#include "cqexp/render.hpp"
#include "cqexp/rng.hpp"

namespace {

using nlohmann::json;
using namespace cqexp;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInputError = 2;
constexpr int kExitExploratory = 3;

struct CommonArgs {
    std::string channel_path;
    std::vector<double> prior_override;
    bool bits = false;
    bool json_output = false;
    std::string output_path;
};

ChannelDocument load_with_override(const CommonArgs& args) {
    ChannelDocument doc = load_channel_file(args.channel_path);
    if (!args.prior_override.empty()) {
        if (args.prior_override.size() != doc.channel.alphabet_size())
            throw ValidationError("--prior length does not match the channel");
        doc.prior = Prior(args.prior_override);
    }
    return doc;
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path);
    if (!out) throw ValidationError("cannot open output file: " + output_path);
    out << text;
}

int run_eq(const CommonArgs& args, std::optional<double> s_point,
           double s_min, double s_max, int s_steps) {
    ChannelDocument doc = load_with_override(args);
    std::vector<double> grid;
    if (s_point) {
        grid.push_back(*s_point);
    } else {
        for (int k = 0; k < s_steps; ++k)
            grid.push_back(s_min + (s_max - s_min) * k / std::max(1, s_steps - 1));
    }

    std::vector<double> values;
    values.reserve(grid.size());
    for (double s : grid) values.push_back(eq_aux(doc.channel, doc.prior, s));

    std::ostringstream os;
    if (args.json_output) {
        json rows = json::array();
        for (std::size_t k = 0; k < grid.size(); ++k)
            rows.push_back({{"s", grid[k]}, {"eq", display_value(values[k], args.bits)}});
        os << rows.dump(2) << "\n";
    } else if (grid.size() == 1) {
        os << fmt_g12(display_value(values[0], args.bits)) << "\n";
    } else {
        os << "s,eq\n";
        for (std::size_t k = 0; k < grid.size(); ++k)
            os << fmt_g12(grid[k]) << "," << fmt_g12(display_value(values[k], args.bits)) << "\n";
    }
    emit(os.str(), args.output_path);
    return kExitOk;
}

int run_curve(const CommonArgs& args, double r_min, double r_max, int r_steps,
              std::uint64_t seed) {
    ChannelDocument doc = load_with_override(args);
    std::vector<double> grid;
    for (int k = 0; k < r_steps; ++k)
        grid.push_back(r_min + (r_max - r_min) * k / std::max(1, r_steps - 1));
    const auto points = curve(doc.channel, grid, seed);
    emit(curve_csv(points, args.bits), args.output_path);
    return kExitOk;
}

int run_capacity(const CommonArgs& args, std::uint64_t seed) {
    ChannelDocument doc = load_with_override(args);
    const double c = capacity_estimate(doc.channel, seed);
    std::ostringstream os;
    if (args.json_output)
        os << json{{"capacity", display_value(c, args.bits)},
                   {"unit", args.bits ? "bits" : "nats"}}
                  .dump(2)
           << "\n";
    else
        os << fmt_g12(display_value(c, args.bits)) << "\n";
    emit(os.str(), args.output_path);
    return kExitOk;
}

struct VerifyLine {
    std::string name;
    double worst;
    double tolerance;
    bool pass;
};

int run_verify(const CommonArgs& args, int instances, std::uint64_t seed,
               const std::string& witness_path) {
    if (!witness_path.empty()) {
        std::ifstream in(witness_path);
        if (!in) throw ValidationError("cannot open witness file: " + witness_path);
        json w;
        try {
            in >> w;
        } catch (const json::exception& e) {
            throw ValidationError(std::string("malformed witness JSON: ") + e.what());
        }
        const ReplayResult replay = replay_witness(w);
        std::ostringstream os;
        if (args.json_output) {
            json j = report_to_json(replay.report);
            j["replay_exact"] = replay.exact_match;
            os << j.dump(2) << "\n";
        } else {
            os << report_line("replayed " + replay.report.inequality_id, replay.report) << "\n"
               << "replay " << (replay.exact_match ? "reproduced lhs/rhs bit-for-bit" : "DID NOT reproduce lhs/rhs")
               << "\n";
        }
        emit(os.str(), args.output_path);
        return replay.exact_match ? kExitOk : kExitViolation;
    }

    ChannelDocument doc = load_with_override(args);
    const Channel& ch = doc.channel;
    const double tau = Config::get().gap_tolerance;

    std::vector<VerifyLine> lines;

    // properties of s -> E_q(pi, s) on [0, 1] with the document prior
    const double at_zero = eq_aux(ch, doc.prior, 0.0);
    lines.push_back({"property-a E_q(pi,0)", std::abs(at_zero), 1e-12,
                     std::abs(at_zero) <= 1e-12});

    const double slope = eq_derivative(ch, doc.prior, 0.0);
    const double chi = holevo_quantity(ch, doc.prior);
    lines.push_back({"property-b dE_q/ds|0 vs Holevo", std::abs(slope - chi), 1e-5,
                     std::abs(slope - chi) <= 1e-5});

    std::vector<double> grid;
    for (int k = 0; k < 21; ++k) grid.push_back(k / 20.0);
    const ConcavityReport scan = concavity_scan(ch, doc.prior, grid);
    double min_positive = std::numeric_limits<double>::infinity();
    double eq_scale = 0.0;
    for (std::size_t k = 0; k < scan.values.size(); ++k) {
        eq_scale = std::max(eq_scale, std::abs(scan.values[k]));
        if (scan.s_grid[k] > 0.0) min_positive = std::min(min_positive, scan.values[k]);
    }
    lines.push_back({"property-c E_q > 0 on (0,1]", min_positive, -1e-10,
                     min_positive > -1e-10});
    lines.push_back({"property-d forward differences", scan.monotone_violation, 1e-8,
                     scan.monotone_violation <= 1e-8});
    const double concavity_tol = 1e-8 * (1.0 + eq_scale);
    lines.push_back({"property-e second differences", scan.max_second_difference,
                     concavity_tol, scan.max_second_difference <= concavity_tol});

    // inequality suite on random (prior, s) draws against this channel
    const std::vector<std::string> ids{"theorem", "eq3", "jensen", "chain-mid", "pair-final"};
    std::map<std::string, double> min_gap;
    std::map<std::string, int> errors;
    std::map<std::string, int> violations;
    double max_delta = 0.0, max_imag = 0.0;
    for (const auto& id : ids) {
        min_gap[id] = std::numeric_limits<double>::infinity();
        errors[id] = 0;
        violations[id] = 0;
    }
    const auto& registry = evaluator_registry();
    for (int i = 0; i < instances; ++i) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
        Prior prior(rng.dirichlet(ch.alphabet_size()));
        const double s = rng.uniform(0.0, 1.0);
        const FuzzInstance inst{ch, prior, s, seed, static_cast<std::uint64_t>(i)};
        for (const auto& id : ids) {
            try {
                const InequalityReport rep = registry.at(id)(inst);
                min_gap[id] = std::min(min_gap[id], rep.gap);
                if (rep.gap < -tau * rep.scale) ++violations[id];
                if (rep.formulation_delta) max_delta = std::max(max_delta, *rep.formulation_delta);
                max_imag = std::max(max_imag, rep.imag_residue / rep.scale);
            } catch (const Error&) {
                ++errors[id];
            }
        }
    }
    for (const auto& id : ids) {
        std::ostringstream name;
        name << id << " min gap (" << (instances - errors[id]) << " instances";
        if (errors[id] > 0) name << ", " << errors[id] << " skipped";
        name << ")";
        lines.push_back({name.str(), min_gap[id], tau, violations[id] == 0});
    }
    lines.push_back({"formulation agreement", max_delta, 1e-10, max_delta <= 1e-10});
    lines.push_back({"imaginary residue / scale", max_imag, 1e-10, max_imag <= 1e-10});

    bool all_pass = true;
    std::ostringstream os;
    if (args.json_output) {
        json rows = json::array();
        for (const auto& l : lines) {
            rows.push_back({{"check", l.name},
                            {"worst", l.worst},
                            {"tolerance", l.tolerance},
                            {"pass", l.pass}});
            all_pass = all_pass && l.pass;
        }
        os << json{{"channel", args.channel_path},
                   {"instances", instances},
                   {"seed", seed},
                   {"checks", rows}}
                  .dump(2)
           << "\n";
    } else {
        for (const auto& l : lines) {
            os << (l.pass ? "PASS" : "FAIL") << "  " << l.name << ": worst "
               << fmt_g12(l.worst) << " (tolerance " << fmt_g12(l.tolerance) << ")\n";
            all_pass = all_pass && l.pass;
        }
    }
    emit(os.str(), args.output_path);
    return all_pass ? kExitOk : kExitViolation;
}

int run_fuzz(const CommonArgs& args, const std::string& ineq, FuzzConfig cfg,
             const std::string& ensemble_name, const std::string& witness_out) {
    cfg.ensemble = ensemble_from_string(ensemble_name);
    const FuzzSummary summary = fuzz(ineq, cfg);

    std::ostringstream os;
    if (args.json_output)
        os << summary_to_json(summary).dump(2) << "\n";
    else
        os << summary_text(summary);
    emit(os.str(), args.output_path);

    if (!witness_out.empty()) {
        std::ofstream out(witness_out);
        if (!out) throw ValidationError("cannot open witness output file: " + witness_out);
        out << summary.worst.witness.dump(2) << "\n";
    }
    if (summary.exploratory) return kExitExploratory;
    return summary.violations == 0 ? kExitOk : kExitViolation;
}

int run_simulate(const CommonArgs& args, const std::vector<int>& block_lengths,
                 int words, int trials, std::uint64_t seed) {
    ChannelDocument doc = load_with_override(args);
    std::vector<TrialResult> results;
    results.reserve(block_lengths.size());
    for (int n : block_lengths)
        results.push_back(random_code_trial(doc.channel, doc.prior, n, words, trials, seed));
    emit(trial_csv(results), args.output_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"auxiliary function, random-coding exponent and trace-inequality "
                 "toolkit for classical-quantum channels"};
    app.require_subcommand(1);

    CommonArgs common;
    std::string unit = "nats";

    auto add_common = [&](CLI::App* sub, bool needs_channel = true) {
        if (needs_channel)
            sub->add_option("--channel", common.channel_path, "channel JSON file")->required();
        sub->add_option("--prior", common.prior_override, "override the document prior");
        sub->add_option("--unit", unit, "nats|bits (display only)")
            ->check(CLI::IsMember({"nats", "bits"}));
        sub->add_flag("--json", common.json_output, "machine-readable output");
        sub->add_option("--output", common.output_path, "write output to a file");
    };

    // eq
    auto* eq_cmd = app.add_subcommand("eq", "evaluate E_q(pi, s) at one s or on a grid");
    std::optional<double> s_point;
    double s_min = 0.0, s_max = 1.0;
    int s_steps = 21;
    add_common(eq_cmd);
    auto* s_opt = eq_cmd->add_option("--s", s_point, "evaluation point in (-1, 1]");
    eq_cmd->add_option("--s-min", s_min, "grid start")->excludes(s_opt);
    eq_cmd->add_option("--s-max", s_max, "grid end");
    eq_cmd->add_option("--s-steps", s_steps, "grid size")->check(CLI::PositiveNumber);

    // curve
    auto* curve_cmd = app.add_subcommand("curve", "rate-exponent curve as CSV");
    double r_min = 0.0, r_max = 1.0;
    int r_steps = 11;
    std::uint64_t seed = 0;
    add_common(curve_cmd);
    curve_cmd->add_option("--r-min", r_min, "first rate (nats)");
    curve_cmd->add_option("--r-max", r_max, "last rate (nats)");
    curve_cmd->add_option("--r-steps", r_steps, "grid size")->check(CLI::PositiveNumber);
    curve_cmd->add_option("--seed", seed, "optimizer seed");

    // capacity
    auto* cap_cmd = app.add_subcommand("capacity", "Holevo capacity estimate");
    add_common(cap_cmd);
    cap_cmd->add_option("--seed", seed, "optimizer seed");

    // verify
    auto* verify_cmd = app.add_subcommand(
        "verify", "property and inequality suite for a channel, or witness replay");
    int instances = 1000;
    std::string witness_path;
    verify_cmd->add_option("--channel", common.channel_path, "channel JSON file");
    verify_cmd->add_option("--prior", common.prior_override, "override the document prior");
    verify_cmd->add_flag("--json", common.json_output, "machine-readable output");
    verify_cmd->add_option("--output", common.output_path, "write output to a file");
    verify_cmd->add_option("--instances", instances, "random (prior, s) draws")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", seed, "instance seed");
    verify_cmd->add_option("--witness", witness_path, "replay a serialized witness");

    // fuzz
    auto* fuzz_cmd = app.add_subcommand("fuzz", "randomized inequality campaigns");
    FuzzConfig fuzz_cfg;
    std::string ineq = "theorem";
    std::string ensemble = "mixed";
    std::string witness_out;
    fuzz_cmd->add_option("--ineq", ineq, "theorem|eq3|jensen|chain-mid|pair-final");
    fuzz_cmd->add_option("--instances", fuzz_cfg.instance_count, "instance count")
        ->check(CLI::PositiveNumber);
    fuzz_cmd->add_option("--seed", fuzz_cfg.seed, "campaign seed");
    fuzz_cmd->add_option("--a-min", fuzz_cfg.a_min, "alphabet size minimum");
    fuzz_cmd->add_option("--a-max", fuzz_cfg.a_max, "alphabet size maximum");
    fuzz_cmd->add_option("--d-min", fuzz_cfg.d_min, "dimension minimum");
    fuzz_cmd->add_option("--d-max", fuzz_cfg.d_max, "dimension maximum");
    fuzz_cmd->add_option("--s-min", fuzz_cfg.s_min, "s interval start (< 0 is exploratory)");
    fuzz_cmd->add_option("--s-max", fuzz_cfg.s_max, "s interval end");
    fuzz_cmd->add_option("--s-grid", fuzz_cfg.s_grid, "draw s from a k-point grid instead");
    fuzz_cmd->add_option("--ensemble", ensemble,
                         "mixed|rank-deficient|diagonal|near-identical");
    fuzz_cmd->add_flag("--json", common.json_output, "machine-readable output");
    fuzz_cmd->add_option("--output", common.output_path, "write output to a file");
    fuzz_cmd->add_option("--witness-out", witness_out, "write the worst witness JSON here");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "finite-blocklength random-coding trials");
    std::vector<int> block_lengths{1};
    int words = 2, trials = 100;
    add_common(sim_cmd);
    sim_cmd->add_option("--n", block_lengths, "block length(s)")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--words", words, "codebook size M")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--trials", trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", seed, "trial seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitInputError;
    }

    common.bits = (unit == "bits");

    try {
        if (eq_cmd->parsed())
            return run_eq(common, s_point, s_min, s_max, s_steps);
        if (curve_cmd->parsed())
            return run_curve(common, r_min, r_max, r_steps, seed);
        if (cap_cmd->parsed())
            return run_capacity(common, seed);
        if (verify_cmd->parsed()) {
            if (common.channel_path.empty() && witness_path.empty())
                throw ValidationError("verify needs --channel or --witness");
            return run_verify(common, instances, seed, witness_path);
        }
        if (fuzz_cmd->parsed())
            return run_fuzz(common, ineq, fuzz_cfg, ensemble, witness_out);
        if (sim_cmd->parsed())
            return run_simulate(common, block_lengths, words, trials, seed);
    } catch (const ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitInputError;
}
