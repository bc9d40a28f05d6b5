#include "perc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "perc/arms.hpp"
#include "perc/crossings.hpp"
#include "perc/detours.hpp"
#include "perc/rng.hpp"

namespace perc {

namespace {

constexpr double kZ = 1.959963984540054;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Independent deterministic seed stream for sub-experiment `tag` at
// size `n`.
uint64_t sub_seed(uint64_t master, uint64_t tag, uint64_t n) {
    return mix64(master ^ mix64(tag * 0x100000001b3ull + n));
}

// Runs fn(sample_id) for ids [0, count); each call writes only to its
// own preallocated slot, so the reduction order is fixed afterwards.
template <typename F>
void parallel_samples(int64_t count, int threads, F&& fn) {
    if (threads <= 1) {
        for (int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    constexpr int64_t kChunk = 64;
    std::atomic<int64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            int64_t begin = next.fetch_add(kChunk);
            if (begin >= count) return;
            int64_t end = std::min(begin + kChunk, count);
            for (int64_t i = begin; i < end; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

struct MeanResult {
    int64_t count = 0;
    double mean = kNaN;
    double se = kNaN;
};

MeanResult mean_and_se(const std::vector<double>& values) {
    MeanResult r;
    r.count = static_cast<int64_t>(values.size());
    if (r.count == 0) return r;
    double sum = 0.0;
    for (double v : values) sum += v;
    r.mean = sum / static_cast<double>(r.count);
    if (r.count == 1) {
        r.se = 0.0;
        return r;
    }
    double ss = 0.0;
    for (double v : values) ss += (v - r.mean) * (v - r.mean);
    r.se = std::sqrt(ss / (static_cast<double>(r.count) * (static_cast<double>(r.count) - 1)));
    return r;
}

EstimateRecord mean_record(const std::string& statistic, int n, int m,
                           const std::vector<double>& values, uint64_t seed) {
    MeanResult mr = mean_and_se(values);
    EstimateRecord rec;
    rec.statistic = statistic;
    rec.n = n;
    rec.m = m;
    rec.samples = mr.count;
    rec.estimate = mr.mean;
    rec.ci_low = mr.mean - kZ * mr.se;
    rec.ci_high = mr.mean + kZ * mr.se;
    rec.master_seed = seed;
    return rec;
}

EstimateRecord rate_record(const std::string& statistic, int n, int m, int64_t successes,
                           int64_t samples, uint64_t seed) {
    EstimateRecord rec;
    rec.statistic = statistic;
    rec.n = n;
    rec.m = m;
    rec.samples = samples;
    rec.estimate = samples > 0 ? static_cast<double>(successes) / static_cast<double>(samples)
                               : kNaN;
    Interval w = wilson_interval(successes, samples);
    rec.ci_low = w.low;
    rec.ci_high = w.high;
    rec.master_seed = seed;
    return rec;
}

// Lowest-crossing and shortest-crossing lengths on box(n), or absent
// when there is no open left-right crossing.
struct CrossingLengths {
    bool crossed = false;
    int64_t lowest = 0;
    int64_t shortest = 0;
};

std::vector<CrossingLengths> sample_crossing_lengths(int n, int64_t samples, double p,
                                                     uint64_t seed, int threads) {
    Region region = Region::box(n);
    std::vector<CrossingLengths> out(samples);
    parallel_samples(samples, threads, [&](int64_t id) {
        Configuration config = sample_config(region, p, seed, static_cast<uint64_t>(id));
        if (!horizontal_crossing_exists(config)) return;
        CrossingLengths& s = out[id];
        s.crossed = true;
        s.lowest = extremal_crossing(config, Extremal::Lowest).length;
        s.shortest = shortest_crossing(config).length;
    });
    return out;
}

// Frozen pre-pass estimate of pi3(n) from an independent seed stream.
EstimateRecord pi3_prepass(int n, int64_t samples, uint64_t master, int threads) {
    ArmSpec spec;
    spec.pattern = ArmPattern::A3_edge;
    spec.n = n;
    EstimateRecord rec =
        arm_probability(spec, samples, sub_seed(master, 0x9e3779b9u, n), 0.5, threads);
    rec.statistic = "pi3_prepass";
    return rec;
}

void run_ratio(const ExperimentSpec& spec, ExperimentResult& out) {
    for (int n : spec.sizes) {
        uint64_t seed = sub_seed(spec.master_seed, 1, n);
        auto lengths =
            sample_crossing_lengths(n, spec.samples_per_size, spec.p, seed, spec.threads);
        std::vector<double> ratios;
        int64_t crossed = 0;
        for (const CrossingLengths& s : lengths) {
            if (!s.crossed) continue;
            ++crossed;
            ratios.push_back(static_cast<double>(s.shortest) / static_cast<double>(s.lowest));
        }
        out.records.push_back(
            rate_record("crossing_rate", n, -1, crossed, spec.samples_per_size, seed));
        out.records.push_back(mean_record("S_over_L", n, -1, ratios, seed));
    }
}

void run_mz_scaling(const ExperimentSpec& spec, ExperimentResult& out) {
    for (int n : spec.sizes) {
        EstimateRecord pi3 = pi3_prepass(n, spec.samples_per_size, spec.master_seed, spec.threads);
        out.records.push_back(pi3);
        uint64_t seed = sub_seed(spec.master_seed, 2, n);
        auto lengths =
            sample_crossing_lengths(n, spec.samples_per_size, spec.p, seed, spec.threads);
        std::vector<double> lowest;
        for (const CrossingLengths& s : lengths)
            if (s.crossed) lowest.push_back(static_cast<double>(s.lowest));
        out.records.push_back(
            rate_record("crossing_rate", n, -1, static_cast<int64_t>(lowest.size()),
                        spec.samples_per_size, seed));
        EstimateRecord el = mean_record("EL_cond", n, -1, lowest, seed);
        out.records.push_back(el);
        double denom = static_cast<double>(n) * static_cast<double>(n) * pi3.estimate;
        EstimateRecord ratio = el;
        ratio.statistic = "EL_over_n2pi3";
        ratio.estimate = el.estimate / denom;
        ratio.ci_low = el.ci_low / denom;
        ratio.ci_high = el.ci_high / denom;
        out.records.push_back(ratio);
    }
}

void run_five_arm(const ExperimentSpec& spec, ExperimentResult& out) {
    std::vector<FitPoint> points;
    for (int n : spec.sizes) {
        ArmSpec arm;
        arm.pattern = ArmPattern::A5_point;
        arm.n = n;
        EstimateRecord rec = arm_probability(arm, spec.samples_per_size,
                                             sub_seed(spec.master_seed, 3, n), spec.p,
                                             spec.threads);
        out.records.push_back(rec);
        FitPoint pt;
        pt.n = n;
        pt.samples = rec.samples;
        pt.successes = std::llround(rec.estimate * static_cast<double>(rec.samples));
        points.push_back(std::move(pt));
    }
    out.fits.emplace_back("pi5", fit_exponent(points, sub_seed(spec.master_seed, 4, 0)));
}

void run_dmin(const ExperimentSpec& spec, ExperimentResult& out) {
    std::vector<FitPoint> s_points, l_points;
    for (int n : spec.sizes) {
        uint64_t seed = sub_seed(spec.master_seed, 5, n);
        auto lengths =
            sample_crossing_lengths(n, spec.samples_per_size, spec.p, seed, spec.threads);
        std::vector<double> shortest, lowest;
        for (const CrossingLengths& s : lengths) {
            if (!s.crossed) continue;
            shortest.push_back(static_cast<double>(s.shortest));
            lowest.push_back(static_cast<double>(s.lowest));
        }
        out.records.push_back(
            rate_record("crossing_rate", n, -1, static_cast<int64_t>(shortest.size()),
                        spec.samples_per_size, seed));
        out.records.push_back(mean_record("ES_cond", n, -1, shortest, seed));
        out.records.push_back(mean_record("EL_cond", n, -1, lowest, seed));
        FitPoint sp, lp;
        sp.n = n;
        sp.values = std::move(shortest);
        lp.n = n;
        lp.values = std::move(lowest);
        s_points.push_back(std::move(sp));
        l_points.push_back(std::move(lp));
    }
    out.fits.emplace_back("ES", fit_exponent(s_points, sub_seed(spec.master_seed, 6, 0)));
    out.fits.emplace_back("EL", fit_exponent(l_points, sub_seed(spec.master_seed, 6, 1)));
}

void run_lower_tail(const ExperimentSpec& spec, ExperimentResult& out) {
    for (int n : spec.sizes) {
        EstimateRecord pi3 = pi3_prepass(n, spec.samples_per_size, spec.master_seed, spec.threads);
        out.records.push_back(pi3);
        double threshold =
            spec.epsilon * static_cast<double>(n) * static_cast<double>(n) * pi3.estimate;
        uint64_t seed = sub_seed(spec.master_seed, 7, n);
        auto lengths =
            sample_crossing_lengths(n, spec.samples_per_size, spec.p, seed, spec.threads);
        int64_t crossed = 0, below = 0;
        for (const CrossingLengths& s : lengths) {
            if (!s.crossed) continue;
            ++crossed;
            if (static_cast<double>(s.lowest) < threshold) ++below;
        }
        out.records.push_back(
            rate_record("crossing_rate", n, -1, crossed, spec.samples_per_size, seed));
        out.records.push_back(rate_record("lower_tail_prob", n, -1, below, crossed, seed));
    }
}

void run_quasimult(const ExperimentSpec& spec, ExperimentResult& out) {
    for (size_t i = 0; i < spec.sizes.size(); ++i) {
        for (size_t j = i + 1; j < spec.sizes.size(); ++j) {
            int m = spec.sizes[i], n = spec.sizes[j];
            uint64_t seed = sub_seed(spec.master_seed, 8, static_cast<uint64_t>(m) << 32 | n);
            RatioRecord rr =
                quasimultiplicativity_check(m, n, spec.samples_per_size, seed, spec.threads);
            EstimateRecord rec;
            rec.statistic = "quasimult_ratio";
            rec.n = n;
            rec.m = m;
            rec.samples = rr.samples;
            rec.estimate = rr.ratio;
            rec.ci_low = rr.ci_low;
            rec.ci_high = rr.ci_high;
            rec.master_seed = seed;
            out.records.push_back(rec);
        }
    }
}

void run_detour_stats(const ExperimentSpec& spec, ExperimentResult& out) {
    struct Slot {
        bool circuit = false;
        int64_t detours = 0;
        int64_t gamma_len = 0;
        int64_t sigma_len = 0;
        int64_t detour_len = 0;  // ell(Pi) of the selected family
        int64_t failures = 0;
    };
    for (int n : spec.sizes) {
        Region region = Region::annulus(n);
        uint64_t seed = sub_seed(spec.master_seed, 9, n);
        std::vector<Slot> slots(spec.samples_per_size);
        parallel_samples(spec.samples_per_size, spec.threads, [&](int64_t id) {
            Configuration config = sample_config(region, spec.p, seed, static_cast<uint64_t>(id));
            CircuitResult gamma = innermost_circuit(config);
            if (!gamma.exists) return;
            Slot& s = slots[id];
            s.circuit = true;
            s.gamma_len = gamma.length;
            auto detours = find_all_shielded_detours(config, *gamma.circuit, spec.epsilon);
            s.detours = static_cast<int64_t>(detours.size());
            DetourFamily family = select_maximal_family(detours);
            s.detour_len = family.total_detour_length;
            LatticeCircuit sigma = build_shortcut_circuit(*gamma.circuit, family);
            s.sigma_len = sigma.length();
            ValidationReport report =
                validate_detour_lemmas(config, *gamma.circuit, detours, family, sigma);
            s.failures = static_cast<int64_t>(report.failures.size());
        });
        int64_t circuits = 0, failures = 0;
        std::vector<double> detours, sigma_ratio, coverage;
        for (const Slot& s : slots) {
            if (!s.circuit) continue;
            ++circuits;
            failures += s.failures;
            detours.push_back(static_cast<double>(s.detours));
            sigma_ratio.push_back(static_cast<double>(s.sigma_len) /
                                  static_cast<double>(s.gamma_len));
            coverage.push_back(static_cast<double>(s.detour_len) /
                               static_cast<double>(s.gamma_len));
        }
        out.records.push_back(
            rate_record("circuit_rate", n, -1, circuits, spec.samples_per_size, seed));
        out.records.push_back(mean_record("detours_per_circuit", n, -1, detours, seed));
        out.records.push_back(mean_record("sigma_over_gamma", n, -1, sigma_ratio, seed));
        out.records.push_back(mean_record("detour_coverage", n, -1, coverage, seed));
        EstimateRecord fr;
        fr.statistic = "validator_failures";
        fr.n = n;
        fr.samples = circuits;
        fr.estimate = static_cast<double>(failures);
        fr.master_seed = seed;
        out.records.push_back(fr);
        out.validator_failures += failures;
    }
}

}  // namespace

ExperimentKind experiment_kind_from_name(const std::string& name) {
    if (name == "ratio") return ExperimentKind::Ratio;
    if (name == "mz_scaling") return ExperimentKind::MzScaling;
    if (name == "five_arm_exponent") return ExperimentKind::FiveArmExponent;
    if (name == "dmin") return ExperimentKind::Dmin;
    if (name == "lower_tail") return ExperimentKind::LowerTail;
    if (name == "quasimult") return ExperimentKind::Quasimult;
    if (name == "detour_stats") return ExperimentKind::DetourStats;
    throw std::domain_error("unknown experiment: " + name);
}

std::string experiment_kind_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Ratio: return "ratio";
        case ExperimentKind::MzScaling: return "mz_scaling";
        case ExperimentKind::FiveArmExponent: return "five_arm_exponent";
        case ExperimentKind::Dmin: return "dmin";
        case ExperimentKind::LowerTail: return "lower_tail";
        case ExperimentKind::Quasimult: return "quasimult";
        case ExperimentKind::DetourStats: return "detour_stats";
    }
    throw std::domain_error("unknown experiment kind");
}

void ExperimentSpec::validate() const {
    if (sizes.empty()) throw std::domain_error("sizes must be nonempty");
    for (size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] <= 0) throw std::domain_error("sizes must be positive");
        if (i > 0 && sizes[i] <= sizes[i - 1])
            throw std::domain_error("sizes must be strictly increasing");
    }
    if (samples_per_size < 1) throw std::domain_error("samples_per_size must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("p must lie in [0, 1]");
    // lower_tail allows the eps = 1 sanity threshold; detour searches
    // require a genuine contraction factor
    if (experiment == ExperimentKind::LowerTail && !(epsilon > 0.0 && epsilon <= 1.0))
        throw std::domain_error("epsilon must lie in (0, 1]");
    if (experiment == ExperimentKind::DetourStats && !(epsilon > 0.0 && epsilon < 1.0))
        throw std::domain_error("epsilon must lie in (0, 1)");
    if (threads < 1) throw std::domain_error("threads must be >= 1");
}

ExperimentSpec parse_experiment_spec(const std::string& text) {
    ExperimentSpec spec;
    std::istringstream in(text);
    std::string line;
    auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t\r");
        size_t b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::domain_error("malformed config line: " + line);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "experiment") {
            spec.experiment = experiment_kind_from_name(value);
        } else if (key == "sizes") {
            spec.sizes.clear();
            std::istringstream vs(value);
            std::string item;
            while (std::getline(vs, item, ',')) spec.sizes.push_back(std::stoi(trim(item)));
        } else if (key == "samples_per_size") {
            spec.samples_per_size = std::stoll(value);
        } else if (key == "p") {
            spec.p = std::stod(value);
        } else if (key == "epsilon") {
            spec.epsilon = std::stod(value);
        } else if (key == "master_seed") {
            spec.master_seed = std::stoull(value);
        } else if (key == "output_path") {
            spec.output_path = value;
        } else if (key == "threads") {
            spec.threads = std::stoi(value);
        } else {
            throw std::domain_error("unknown config key: " + key);
        }
    }
    spec.validate();
    return spec;
}

double FitPoint::estimate() const {
    if (successes >= 0)
        return samples > 0 ? static_cast<double>(successes) / static_cast<double>(samples)
                           : kNaN;
    MeanResult mr = mean_and_se(values);
    return mr.mean;
}

namespace {

// OLS of y on x; returns false when fewer than two points.
bool ols(const std::vector<double>& x, const std::vector<double>& y, double* slope,
         double* intercept, double* r_squared) {
    size_t k = x.size();
    if (k < 2) return false;
    double mx = 0, my = 0;
    for (size_t i = 0; i < k; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(k);
    my /= static_cast<double>(k);
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < k; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) return false;
    *slope = sxy / sxx;
    *intercept = my - *slope * mx;
    *r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return true;
}

}  // namespace

FitResult fit_exponent(const std::vector<FitPoint>& points, uint64_t seed, int bootstrap) {
    FitResult fit;
    std::vector<double> xs, ys;
    std::vector<const FitPoint*> used;
    for (const FitPoint& pt : points) {
        double est = pt.estimate();
        if (!(est > 0.0)) {
            fit.excluded_sizes.push_back(pt.n);
            continue;
        }
        xs.push_back(std::log(static_cast<double>(pt.n)));
        ys.push_back(std::log(est));
        used.push_back(&pt);
    }
    if (!ols(xs, ys, &fit.slope, &fit.intercept, &fit.r_squared))
        throw std::domain_error("fit_exponent needs at least two sizes with positive estimates");

    std::mt19937_64 rng(mix64(seed ^ 0x5851f42d4c957f2dull));
    std::vector<double> slopes;
    slopes.reserve(bootstrap);
    for (int b = 0; b < bootstrap; ++b) {
        std::vector<double> bx, by;
        for (const FitPoint* pt : used) {
            double est;
            if (pt->successes >= 0) {
                double phat =
                    static_cast<double>(pt->successes) / static_cast<double>(pt->samples);
                std::binomial_distribution<int64_t> bin(pt->samples, phat);
                est = static_cast<double>(bin(rng)) / static_cast<double>(pt->samples);
            } else {
                size_t k = pt->values.size();
                std::uniform_int_distribution<size_t> pick(0, k - 1);
                double sum = 0.0;
                for (size_t i = 0; i < k; ++i) sum += pt->values[pick(rng)];
                est = sum / static_cast<double>(k);
            }
            if (!(est > 0.0)) continue;
            bx.push_back(std::log(static_cast<double>(pt->n)));
            by.push_back(std::log(est));
        }
        double s, c, r2;
        if (ols(bx, by, &s, &c, &r2)) slopes.push_back(s);
    }
    if (slopes.empty()) {
        fit.slope_ci = {fit.slope, fit.slope};
        fit.slope_se = 0.0;
        return fit;
    }
    std::sort(slopes.begin(), slopes.end());
    auto pct = [&](double q) {
        double idx = q * static_cast<double>(slopes.size() - 1);
        size_t lo = static_cast<size_t>(idx);
        size_t hi = std::min(lo + 1, slopes.size() - 1);
        double frac = idx - static_cast<double>(lo);
        return slopes[lo] * (1.0 - frac) + slopes[hi] * frac;
    };
    fit.slope_ci = {pct(0.025), pct(0.975)};
    if (fit.slope < fit.slope_ci.low) fit.slope_ci.low = fit.slope;
    if (fit.slope > fit.slope_ci.high) fit.slope_ci.high = fit.slope;
    double m = 0.0;
    for (double s : slopes) m += s;
    m /= static_cast<double>(slopes.size());
    double ss = 0.0;
    for (double s : slopes) ss += (s - m) * (s - m);
    fit.slope_se = std::sqrt(ss / static_cast<double>(slopes.size()));
    return fit;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentResult out;
    switch (spec.experiment) {
        case ExperimentKind::Ratio: run_ratio(spec, out); break;
        case ExperimentKind::MzScaling: run_mz_scaling(spec, out); break;
        case ExperimentKind::FiveArmExponent: run_five_arm(spec, out); break;
        case ExperimentKind::Dmin: run_dmin(spec, out); break;
        case ExperimentKind::LowerTail: run_lower_tail(spec, out); break;
        case ExperimentKind::Quasimult: run_quasimult(spec, out); break;
        case ExperimentKind::DetourStats: run_detour_stats(spec, out); break;
    }
    return out;
}

OracleStatistic oracle_statistic_from_name(const std::string& name) {
    if (name == "E_lowest_len") return OracleStatistic::ELowestLen;
    if (name == "E_shortest_len") return OracleStatistic::EShortestLen;
    if (name == "P_crossing") return OracleStatistic::PCrossing;
    if (name == "E_innermost_len") return OracleStatistic::EInnermostLen;
    if (name == "E_shortest_circuit_len") return OracleStatistic::EShortestCircuitLen;
    throw std::domain_error("unknown oracle statistic: " + name);
}

std::string oracle_statistic_name(OracleStatistic s) {
    switch (s) {
        case OracleStatistic::ELowestLen: return "E_lowest_len";
        case OracleStatistic::EShortestLen: return "E_shortest_len";
        case OracleStatistic::PCrossing: return "P_crossing";
        case OracleStatistic::EInnermostLen: return "E_innermost_len";
        case OracleStatistic::EShortestCircuitLen: return "E_shortest_circuit_len";
    }
    throw std::domain_error("unknown oracle statistic");
}

boost::multiprecision::cpp_rational enumerate_oracle(const Region& region,
                                                     OracleStatistic statistic, double p) {
    using boost::multiprecision::cpp_rational;
    int64_t edges = region.edge_count();
    if (edges > 24) throw std::domain_error("enumerate_oracle: more than 24 edges");
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("p must lie in [0, 1]");
    bool needs_box = statistic == OracleStatistic::ELowestLen ||
                     statistic == OracleStatistic::EShortestLen ||
                     statistic == OracleStatistic::PCrossing;
    if (needs_box != region.is_box())
        throw std::domain_error("oracle statistic does not match region kind");

    cpp_rational rp(p);  // exact: doubles are dyadic rationals
    cpp_rational rq = 1 - rp;
    std::vector<cpp_rational> pw(edges + 1), qw(edges + 1);
    pw[0] = 1;
    qw[0] = 1;
    for (int64_t i = 1; i <= edges; ++i) {
        pw[i] = pw[i - 1] * rp;
        qw[i] = qw[i - 1] * rq;
    }

    cpp_rational sum = 0;
    uint64_t total = 1ull << edges;
    for (uint64_t mask = 0; mask < total; ++mask) {
        Configuration config = config_from_mask(region, mask);
        int64_t value = 0;
        switch (statistic) {
            case OracleStatistic::ELowestLen:
                value = extremal_crossing(config, Extremal::Lowest).length;
                break;
            case OracleStatistic::EShortestLen:
                value = shortest_crossing(config).length;
                break;
            case OracleStatistic::PCrossing:
                value = horizontal_crossing_exists(config) ? 1 : 0;
                break;
            case OracleStatistic::EInnermostLen:
                value = innermost_circuit(config).length;
                break;
            case OracleStatistic::EShortestCircuitLen:
                value = shortest_enclosing_circuit(config).length;
                break;
        }
        if (value == 0) continue;
        int open = __builtin_popcountll(mask);
        sum += value * pw[open] * qw[edges - open];
    }
    return sum;
}

}  // namespace perc
