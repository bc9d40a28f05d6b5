// Command-line front end: sampling, distinguished-object statistics,
// arm events, shielded detours, experiments, and enumeration oracles.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "perc/arms.hpp"
#include "perc/config.hpp"
#include "perc/crossings.hpp"
#include "perc/detours.hpp"
#include "perc/harness.hpp"
#include "perc/stats.hpp"

using namespace perc;
using nlohmann::json;

namespace {

struct OutputSink {
    std::string path;    // empty = stdout
    std::string format;  // "csv" or "json"

    void write_records(const std::vector<EstimateRecord>& records,
                       const std::vector<std::string>& extra_json_lines = {}) const {
        std::ostringstream body;
        if (format == "csv") {
            body << kCsvHeader << "\n";
            for (const EstimateRecord& r : records) body << csv_row(r) << "\n";
        } else {
            for (const EstimateRecord& r : records) {
                json j;
                j["statistic"] = r.statistic;
                j["n"] = r.n;
                if (r.m >= 0) j["m"] = r.m;
                j["samples"] = r.samples;
                j["estimate"] = r.estimate;
                j["ci_low"] = r.ci_low;
                j["ci_high"] = r.ci_high;
                j["seed"] = r.master_seed;
                body << j.dump() << "\n";
            }
            for (const std::string& line : extra_json_lines) body << line << "\n";
        }
        if (path.empty()) {
            std::cout << body.str();
        } else {
            std::ofstream out(path, std::ios::binary);
            if (!out) throw std::domain_error("cannot open output file: " + path);
            out << body.str();
        }
    }
};

EstimateRecord fit_record(const std::string& name, const FitResult& fit, uint64_t seed) {
    EstimateRecord rec;
    rec.statistic = name + "_slope";
    rec.n = 0;
    rec.samples = 0;
    rec.estimate = fit.slope;
    rec.ci_low = fit.slope_ci.low;
    rec.ci_high = fit.slope_ci.high;
    rec.master_seed = seed;
    return rec;
}

int run(int argc, char** argv) {
    CLI::App app{"critical bond percolation: distinguished objects and experiments"};
    app.require_subcommand(1);

    std::string out_path, format = "csv";
    int n = 8;
    double p = 0.5;
    uint64_t seed = 0;
    int64_t samples = 1000;
    double epsilon = 0.5;
    int threads = 1;

    auto add_common = [&](CLI::App* cmd, bool with_samples = true) {
        cmd->add_option("--out", out_path, "output file (default stdout)");
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--n", n, "region size");
        cmd->add_option("--p", p, "open-edge probability")->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--seed", seed, "master seed");
        if (with_samples) cmd->add_option("--samples", samples, "sample count");
        cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    };

    // sample: emit one configuration snapshot
    auto* c_sample = app.add_subcommand("sample", "sample a configuration and write a snapshot");
    std::string region_kind = "box";
    uint64_t sample_id = 0;
    c_sample->add_option("--region", region_kind, "region kind")
        ->check(CLI::IsMember({"box", "annulus"}));
    c_sample->add_option("--sample-id", sample_id, "sample id within the seed stream");
    add_common(c_sample, false);

    // crossing: Monte Carlo box-crossing statistics
    auto* c_crossing = app.add_subcommand("crossing", "box crossing statistics");
    add_common(c_crossing);

    // circuit: Monte Carlo annulus-circuit statistics
    auto* c_circuit = app.add_subcommand("circuit", "annulus circuit statistics");
    add_common(c_circuit);

    // arms: arm-event probability
    auto* c_arms = app.add_subcommand("arms", "arm event probability");
    std::string pattern = "pi3";
    int inner_m = 0, defects = 0;
    c_arms->add_option("--pattern", pattern, "arm pattern")
        ->check(CLI::IsMember({"pi3", "pi3_annulus", "pi5", "pi3_halfplane", "pi6"}));
    c_arms->add_option("--m", inner_m, "inner radius (annulus patterns)");
    c_arms->add_option("--defects", defects, "defect budget (pi6)");
    add_common(c_arms);

    // detour: shielded-detour statistics and validators on annulus(n)
    auto* c_detour = app.add_subcommand("detour", "shielded detour statistics");
    c_detour->add_option("--epsilon", epsilon, "detour length fraction")
        ->check(CLI::Range(0.0, 1.0));
    add_common(c_detour);

    // experiment: structured config file
    auto* c_exp = app.add_subcommand("experiment", "run an experiment config file");
    std::string config_path;
    c_exp->add_option("config", config_path, "key = value config file")->required();
    c_exp->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    c_exp->add_option("--out", out_path, "output file (overrides config)");
    c_exp->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));

    // oracle: exact enumeration
    auto* c_oracle = app.add_subcommand("oracle", "exact small-region enumeration");
    std::string statistic = "P_crossing";
    c_oracle->add_option("--statistic", statistic, "oracle statistic")
        ->check(CLI::IsMember({"E_lowest_len", "E_shortest_len", "P_crossing",
                               "E_innermost_len", "E_shortest_circuit_len"}));
    std::string oracle_region = "box";
    c_oracle->add_option("--region", oracle_region, "region kind")
        ->check(CLI::IsMember({"box", "annulus"}));
    add_common(c_oracle, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    OutputSink sink{out_path, format};

    if (c_sample->parsed()) {
        Region region = region_kind == "box" ? Region::box(n) : Region::annulus(n);
        Configuration config = sample_config(region, p, seed, sample_id);
        if (out_path.empty()) throw std::domain_error("sample requires --out");
        write_snapshot_file(out_path, config);
        return 0;
    }

    if (c_crossing->parsed()) {
        ExperimentSpec spec;
        spec.experiment = ExperimentKind::Ratio;
        spec.sizes = {n};
        spec.samples_per_size = samples;
        spec.p = p;
        spec.master_seed = seed;
        spec.threads = threads;
        ExperimentResult res = run_experiment(spec);
        sink.write_records(res.records);
        return 0;
    }

    if (c_circuit->parsed()) {
        Region region = Region::annulus(n);
        int64_t circuits = 0;
        std::vector<double> inner_len, short_len;
        for (int64_t id = 0; id < samples; ++id) {
            Configuration config = sample_config(region, p, seed, static_cast<uint64_t>(id));
            CircuitResult inner = innermost_circuit(config);
            if (!inner.exists) continue;
            ++circuits;
            inner_len.push_back(static_cast<double>(inner.length));
            short_len.push_back(
                static_cast<double>(shortest_enclosing_circuit(config).length));
        }
        std::vector<EstimateRecord> records;
        EstimateRecord rate;
        rate.statistic = "circuit_rate";
        rate.n = n;
        rate.samples = samples;
        rate.estimate = static_cast<double>(circuits) / static_cast<double>(samples);
        Interval w = wilson_interval(circuits, samples);
        rate.ci_low = w.low;
        rate.ci_high = w.high;
        rate.master_seed = seed;
        records.push_back(rate);
        auto mean_rec = [&](const std::string& name, const std::vector<double>& v) {
            EstimateRecord r;
            r.statistic = name;
            r.n = n;
            r.samples = static_cast<int64_t>(v.size());
            double sum = 0;
            for (double x : v) sum += x;
            r.estimate = v.empty() ? std::nan("") : sum / static_cast<double>(v.size());
            r.ci_low = r.estimate;
            r.ci_high = r.estimate;
            r.master_seed = seed;
            return r;
        };
        records.push_back(mean_rec("E_innermost_len_cond", inner_len));
        records.push_back(mean_rec("E_shortest_circuit_len_cond", short_len));
        sink.write_records(records);
        return 0;
    }

    if (c_arms->parsed()) {
        ArmSpec arm;
        if (pattern == "pi3") {
            arm.pattern = ArmPattern::A3_edge;
            arm.n = n;
        } else if (pattern == "pi3_annulus") {
            arm.pattern = ArmPattern::A3_annulus;
            arm.m = inner_m;
            arm.n = n;
        } else if (pattern == "pi5") {
            arm.pattern = ArmPattern::A5_point;
            arm.n = n;
        } else if (pattern == "pi3_halfplane") {
            arm.pattern = ArmPattern::A3_halfplane;
            arm.n = n;
        } else {
            arm.pattern = ArmPattern::A6_annulus;
            arm.m = inner_m;
            arm.n = n;
            arm.defect_budget = defects;
        }
        EstimateRecord rec = arm_probability(arm, samples, seed, p, threads);
        sink.write_records({rec});
        return 0;
    }

    if (c_detour->parsed()) {
        ExperimentSpec spec;
        spec.experiment = ExperimentKind::DetourStats;
        spec.sizes = {n};
        spec.samples_per_size = samples;
        spec.p = p;
        spec.epsilon = epsilon;
        spec.master_seed = seed;
        spec.threads = threads;
        ExperimentResult res = run_experiment(spec);
        sink.write_records(res.records);
        return res.validator_failures > 0 ? 3 : 0;
    }

    if (c_exp->parsed()) {
        std::ifstream in(config_path);
        if (!in) throw std::domain_error("cannot open config file: " + config_path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        ExperimentSpec spec = parse_experiment_spec(buffer.str());
        if (threads > 1) spec.threads = threads;
        ExperimentResult res = run_experiment(spec);
        std::vector<EstimateRecord> records = res.records;
        for (const auto& [name, fit] : res.fits)
            records.push_back(fit_record(name, fit, spec.master_seed));
        OutputSink exp_sink{!out_path.empty() ? out_path : spec.output_path, format};
        exp_sink.write_records(records);
        return res.validator_failures > 0 ? 3 : 0;
    }

    if (c_oracle->parsed()) {
        Region region = oracle_region == "box" ? Region::box(n) : Region::annulus(n);
        OracleStatistic st = oracle_statistic_from_name(statistic);
        boost::multiprecision::cpp_rational value = enumerate_oracle(region, st, p);
        std::printf("%s %s %d p=%.17g = %s = %.12g\n", statistic.c_str(),
                    oracle_region.c_str(), n, p, value.str().c_str(),
                    static_cast<double>(value));
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
