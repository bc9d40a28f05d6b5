#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "perc/config.hpp"
#include "perc/crossings.hpp"
#include "perc/harness.hpp"
#include "perc/stats.hpp"

using namespace perc;
using boost::multiprecision::cpp_rational;

namespace {

std::vector<std::string> csv_rows(const ExperimentResult& r) {
    std::vector<std::string> out;
    for (const auto& rec : r.records) out.push_back(csv_row(rec));
    return out;
}

const EstimateRecord* find_record(const ExperimentResult& r, const std::string& stat, int n) {
    for (const auto& rec : r.records)
        if (rec.statistic == stat && rec.n == n) return &rec;
    return nullptr;
}

}  // namespace

TEST_CASE("experiment spec parsing and validation") {
    ExperimentSpec spec = parse_experiment_spec(
        "# comment line\n"
        "experiment = mz_scaling\n"
        "sizes = 8, 16, 32\n"
        "samples_per_size = 500\n"
        "p = 0.5\n"
        "epsilon = 0.4   # trailing comment\n"
        "master_seed = 99\n"
        "threads = 2\n"
        "output_path = out.csv\n");
    CHECK(spec.experiment == ExperimentKind::MzScaling);
    CHECK(spec.sizes == std::vector<int>{8, 16, 32});
    CHECK(spec.samples_per_size == 500);
    CHECK(spec.p == 0.5);
    CHECK(spec.epsilon == 0.4);
    CHECK(spec.master_seed == 99);
    CHECK(spec.threads == 2);
    CHECK(spec.output_path == "out.csv");
    spec.validate();

    CHECK_THROWS_AS(parse_experiment_spec("experiment = nonsense\nsizes = 2\n"),
                    std::domain_error);
    ExperimentSpec bad = spec;
    bad.sizes = {8, 8};
    CHECK_THROWS_AS(bad.validate(), std::domain_error);  // not strictly increasing
    bad.sizes = {8, 16};
    bad.samples_per_size = 0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    bad.samples_per_size = 10;
    bad.p = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("experiment and oracle name round trips") {
    for (const char* name : {"ratio", "mz_scaling", "five_arm_exponent", "dmin", "lower_tail",
                             "quasimult", "detour_stats"})
        CHECK(experiment_kind_name(experiment_kind_from_name(name)) == name);
    for (const char* name : {"E_lowest_len", "E_shortest_len", "P_crossing", "E_innermost_len",
                             "E_shortest_circuit_len"})
        CHECK(oracle_statistic_name(oracle_statistic_from_name(name)) == name);
    CHECK_THROWS_AS(experiment_kind_from_name("bogus"), std::domain_error);
    CHECK_THROWS_AS(oracle_statistic_from_name("bogus"), std::domain_error);
}

TEST_CASE("fit_exponent: exact synthetic power laws") {
    auto make_points = [](double c, double expo) {
        std::vector<FitPoint> pts;
        for (int n : {4, 8, 16, 32}) {
            FitPoint pt;
            pt.n = n;
            pt.values = {c * std::pow((double)n, expo)};
            pt.samples = 1;
            pts.push_back(pt);
        }
        return pts;
    };
    FitResult inv2 = fit_exponent(make_points(7.0, -2.0));
    CHECK(inv2.slope == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(inv2.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(inv2.intercept == doctest::Approx(std::log(7.0)).epsilon(1e-9));
    CHECK(inv2.slope_ci.low <= inv2.slope);
    CHECK(inv2.slope <= inv2.slope_ci.high);
    CHECK(inv2.excluded_sizes.empty());

    FitResult fourthirds = fit_exponent(make_points(0.3, 4.0 / 3.0));
    CHECK(fourthirds.slope == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(fourthirds.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fit_exponent: nonpositive sizes are excluded and noted") {
    std::vector<FitPoint> pts;
    for (int n : {4, 8, 16}) {
        FitPoint pt;
        pt.n = n;
        pt.values = {n == 8 ? 0.0 : 16.0 / ((double)n * n)};
        pt.samples = 1;
        pts.push_back(pt);
    }
    FitResult r = fit_exponent(pts);
    CHECK(r.excluded_sizes == std::vector<int>{8});
    CHECK(r.slope == doctest::Approx(-2.0).epsilon(1e-12));
    // with fewer than two usable sizes there is nothing to fit
    pts[0].values = {0.0};
    pts[2].values = {0.0};
    CHECK_THROWS_AS(fit_exponent(pts), std::domain_error);
}

TEST_CASE("fit_exponent: bootstrap on indicator data brackets the truth") {
    std::vector<FitPoint> pts;
    for (int n : {4, 8, 16, 32}) {
        FitPoint pt;
        pt.n = n;
        pt.samples = 200000;
        // successes drawn as the rounded mean of an n^{-1} law
        pt.successes = (int64_t)std::llround(0.8 / n * (double)pt.samples);
        pts.push_back(pt);
    }
    FitResult r = fit_exponent(pts, 17);
    CHECK(r.slope == doctest::Approx(-1.0).epsilon(1e-2));
    CHECK(r.slope_ci.low <= r.slope);
    CHECK(r.slope <= r.slope_ci.high);
    CHECK(r.slope_se > 0.0);
    CHECK(r.slope_se < 0.05);
}

TEST_CASE("enumerate_oracle: golden constants for box(1)") {
    // Golden values first computed by this very enumeration and frozen;
    // regenerate with:  perc_cli oracle --statistic <name> --region box --n 1 --p 0.5
    Region b1 = Region::box(1);
    CHECK(enumerate_oracle(b1, OracleStatistic::PCrossing, 0.5) == cpp_rational(43, 64));
    CHECK(enumerate_oracle(b1, OracleStatistic::ELowestLen, 0.5) == cpp_rational(1029, 512));
    CHECK(enumerate_oracle(b1, OracleStatistic::EShortestLen, 0.5) == cpp_rational(185, 128));
    CHECK(enumerate_oracle(b1, OracleStatistic::PCrossing, 1.0) == 1);
    CHECK(enumerate_oracle(b1, OracleStatistic::PCrossing, 0.0) == 0);
    CHECK(enumerate_oracle(b1, OracleStatistic::ELowestLen, 1.0) == 2);
    // shortest never exceeds lowest, in expectation too
    CHECK(enumerate_oracle(b1, OracleStatistic::EShortestLen, 0.5) <=
          enumerate_oracle(b1, OracleStatistic::ELowestLen, 0.5));
}

TEST_CASE("enumerate_oracle: independent check against direct summation") {
    // Same expectation, recomputed here with double arithmetic straight
    // from the definition.
    Region b1 = Region::box(1);
    double pc = 0, el = 0;
    for (uint64_t mask = 0; mask < 4096; ++mask) {
        Configuration c = config_from_mask(b1, mask);
        double w = 1.0 / 4096.0;
        auto low = extremal_crossing(c, Extremal::Lowest);
        pc += w * (low.exists ? 1 : 0);
        el += w * (double)low.length;
    }
    CHECK((double)enumerate_oracle(b1, OracleStatistic::PCrossing, 0.5) ==
          doctest::Approx(pc).epsilon(1e-12));
    CHECK((double)enumerate_oracle(b1, OracleStatistic::ELowestLen, 0.5) ==
          doctest::Approx(el).epsilon(1e-12));
    // non-dyadic-looking p exercises the exact rational weights
    cpp_rational atq = enumerate_oracle(b1, OracleStatistic::PCrossing, 0.25);
    CHECK(atq > 0);
    CHECK(atq < cpp_rational(43, 64));
}

TEST_CASE("enumerate_oracle: preconditions") {
    CHECK_THROWS_AS(enumerate_oracle(Region::box(2), OracleStatistic::PCrossing, 0.5),
                    std::domain_error);  // 24 < 40 edges
    CHECK_THROWS_AS(enumerate_oracle(Region::annulus(1), OracleStatistic::PCrossing, 0.5),
                    std::domain_error);  // crossing statistic needs a box
    CHECK_THROWS_AS(enumerate_oracle(Region::box(1), OracleStatistic::EInnermostLen, 0.5),
                    std::domain_error);  // circuit statistic needs an annulus
}

TEST_CASE("Monte Carlo matches the exact oracle within 3 sigma") {
    Region b1 = Region::box(1);
    const int64_t N = 100000;
    double sum = 0, sumsq = 0;
    int64_t crossings = 0;
    for (int64_t id = 0; id < N; ++id) {
        Configuration c = sample_config(b1, 0.5, 31415, (uint64_t)id);
        auto low = extremal_crossing(c, Extremal::Lowest);
        crossings += low.exists;
        double v = (double)low.length;
        sum += v;
        sumsq += v * v;
    }
    double exact_p = (double)enumerate_oracle(b1, OracleStatistic::PCrossing, 0.5);
    double exact_el = (double)enumerate_oracle(b1, OracleStatistic::ELowestLen, 0.5);
    double sd_p = std::sqrt(exact_p * (1 - exact_p) / (double)N);
    CHECK(std::abs((double)crossings / (double)N - exact_p) <= 3 * sd_p);
    double mean = sum / (double)N;
    double se = std::sqrt((sumsq / (double)N - mean * mean) / (double)N);
    CHECK(std::abs(mean - exact_el) <= 3 * se);
}

TEST_CASE("ratio experiment at p = 1 is identically 1") {
    ExperimentSpec spec;
    spec.experiment = ExperimentKind::Ratio;
    spec.sizes = {4, 8, 16};
    spec.samples_per_size = 25;
    spec.p = 1.0;
    spec.master_seed = 7;
    ExperimentResult r = run_experiment(spec);
    for (int n : spec.sizes) {
        const EstimateRecord* rec = find_record(r, "S_over_L", n);
        REQUIRE(rec != nullptr);
        CHECK(rec->estimate == 1.0);
        const EstimateRecord* rate = find_record(r, "crossing_rate", n);
        REQUIRE(rate != nullptr);
        CHECK(rate->estimate == 1.0);
    }
}

TEST_CASE("mz_scaling emits the normalized expectation per size") {
    ExperimentSpec spec;
    spec.experiment = ExperimentKind::MzScaling;
    spec.sizes = {4, 8};
    spec.samples_per_size = 3000;
    spec.master_seed = 21;
    spec.threads = 2;
    ExperimentResult r = run_experiment(spec);
    for (int n : spec.sizes) {
        const EstimateRecord* pi3 = find_record(r, "pi3_prepass", n);
        const EstimateRecord* el = find_record(r, "EL_cond", n);
        const EstimateRecord* ratio = find_record(r, "EL_over_n2pi3", n);
        REQUIRE(pi3 != nullptr);
        REQUIRE(el != nullptr);
        REQUIRE(ratio != nullptr);
        CHECK(pi3->estimate > 0.0);
        CHECK(el->estimate > 0.0);
        CHECK(ratio->estimate ==
              doctest::Approx(el->estimate / ((double)n * n * pi3->estimate)).epsilon(1e-9));
    }
}

TEST_CASE("lower_tail mechanics at eps = 1") {
    // At these sizes the threshold n^2 pi3(n) sits below the minimum
    // crossing length 2n, so the event 0 < L < eps n^2 pi3 is empty and
    // the estimate must be exactly 0 — a sharp sanity value. The estimate
    // must also be monotone in eps.
    ExperimentSpec spec;
    spec.experiment = ExperimentKind::LowerTail;
    spec.sizes = {8};
    spec.samples_per_size = 3000;
    spec.epsilon = 1.0;
    spec.master_seed = 23;
    ExperimentResult r = run_experiment(spec);
    const EstimateRecord* rec = find_record(r, "lower_tail_prob", 8);
    REQUIRE(rec != nullptr);
    CHECK(rec->estimate == 0.0);
    CHECK(rec->samples > 0);
    CHECK(rec->ci_low < 1e-12);
    CHECK(rec->ci_high < 1.0);

    spec.epsilon = 0.5;
    ExperimentResult r2 = run_experiment(spec);
    const EstimateRecord* rec2 = find_record(r2, "lower_tail_prob", 8);
    REQUIRE(rec2 != nullptr);
    CHECK(rec2->estimate <= rec->estimate);
}

TEST_CASE("five_arm_exponent experiment attaches a pi5 fit") {
    ExperimentSpec spec;
    spec.experiment = ExperimentKind::FiveArmExponent;
    spec.sizes = {2, 4, 8};
    spec.samples_per_size = 60000;
    spec.master_seed = 29;
    spec.threads = 2;
    ExperimentResult r = run_experiment(spec);
    REQUIRE(r.fits.size() == 1);
    CHECK(r.fits[0].first == "pi5");
    const FitResult& f = r.fits[0].second;
    CHECK(f.slope < -1.0);  // steep decay already at tiny sizes
    CHECK(f.slope_ci.low <= f.slope);
    CHECK(f.slope <= f.slope_ci.high);
    for (int n : spec.sizes) CHECK(find_record(r, "pi5", n) != nullptr);
}

TEST_CASE("dmin experiment fits both chemical-length exponents") {
    ExperimentSpec spec;
    spec.experiment = ExperimentKind::Dmin;
    spec.sizes = {4, 8, 16};
    spec.samples_per_size = 800;
    spec.master_seed = 31;
    spec.threads = 2;
    ExperimentResult r = run_experiment(spec);
    REQUIRE(r.fits.size() == 2);
    CHECK(r.fits[0].first == "ES");
    CHECK(r.fits[1].first == "EL");
    CHECK(r.fits[0].second.slope > 0.5);  // lengths grow with n
    CHECK(r.fits[1].second.slope > r.fits[0].second.slope);
    for (int n : spec.sizes) {
        CHECK(find_record(r, "ES_cond", n) != nullptr);
        CHECK(find_record(r, "EL_cond", n) != nullptr);
    }
}

TEST_CASE("quasimult experiment emits one ratio row per size pair") {
    ExperimentSpec spec;
    spec.experiment = ExperimentKind::Quasimult;
    spec.sizes = {2, 4, 8};
    spec.samples_per_size = 20000;
    spec.master_seed = 37;
    spec.threads = 2;
    ExperimentResult r = run_experiment(spec);
    int pairs = 0;
    for (const auto& rec : r.records)
        if (rec.statistic == "quasimult_ratio") {
            ++pairs;
            CHECK(rec.m >= 2);
            CHECK(rec.n > rec.m);
            CHECK(rec.estimate > 0.0);
        }
    CHECK(pairs == 3);  // (2,4), (2,8), (4,8)
}

TEST_CASE("detour_stats experiment reports validator outcome") {
    ExperimentSpec spec;
    spec.experiment = ExperimentKind::DetourStats;
    spec.sizes = {4};
    spec.samples_per_size = 40;
    spec.epsilon = 0.5;
    spec.master_seed = 41;
    ExperimentResult r = run_experiment(spec);
    CHECK(r.validator_failures == 0);
    const EstimateRecord* rate = find_record(r, "circuit_rate", 4);
    REQUIRE(rate != nullptr);
    CHECK(rate->estimate >= 0.0);
    CHECK(rate->estimate <= 1.0);
    CHECK(find_record(r, "validator_failures", 4) != nullptr);
}

TEST_CASE("determinism: identical rows for 1 and 4 worker threads") {
    for (ExperimentKind kind : {ExperimentKind::Ratio, ExperimentKind::MzScaling,
                                ExperimentKind::FiveArmExponent, ExperimentKind::LowerTail}) {
        ExperimentSpec spec;
        spec.experiment = kind;
        spec.sizes = {4, 8};
        spec.samples_per_size = 2000;
        spec.master_seed = 43;
        spec.threads = 1;
        ExperimentResult a = run_experiment(spec);
        spec.threads = 4;
        ExperimentResult b = run_experiment(spec);
        CHECK(csv_rows(a) == csv_rows(b));
    }
}

TEST_CASE("csv formatting matches the frozen header and row layout") {
    CHECK(std::string(kCsvHeader) == "statistic,n,m,samples,estimate,ci_low,ci_high,seed");
    EstimateRecord rec;
    rec.statistic = "pi3";
    rec.n = 8;
    rec.m = -1;
    rec.samples = 1000;
    rec.estimate = 0.25;
    rec.ci_low = 0.2;
    rec.ci_high = 0.3;
    rec.master_seed = 99;
    CHECK(csv_row(rec) == "pi3,8,,1000,0.25,0.2,0.3,99");
    rec.m = 4;
    CHECK(csv_row(rec) == "pi3,8,4,1000,0.25,0.2,0.3,99");
}

TEST_CASE("wilson interval basics") {
    Interval i = wilson_interval(0, 100);
    // the exact lower bound is 0; allow the rounding residue of the sqrt
    CHECK(i.low >= 0.0);
    CHECK(i.low < 1e-12);
    CHECK(i.high > 0.0);
    CHECK(i.high < 0.1);
    Interval half = wilson_interval(500, 1000);
    CHECK(half.low < 0.5);
    CHECK(half.high > 0.5);
    Interval empty = wilson_interval(0, 0);
    CHECK(empty.low == 0.0);
    CHECK(empty.high == 1.0);
}
