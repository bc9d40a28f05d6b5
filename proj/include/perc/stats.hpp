#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

namespace perc {

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

// 95% Wilson score interval for a binomial proportion.
inline Interval wilson_interval(int64_t successes, int64_t samples) {
    if (samples <= 0) return {0.0, 1.0};
    const double z = 1.959963984540054;  // 97.5% normal quantile
    double nd = static_cast<double>(samples);
    double phat = static_cast<double>(successes) / nd;
    double z2 = z * z;
    double denom = 1.0 + z2 / nd;
    double center = (phat + z2 / (2.0 * nd)) / denom;
    double half = (z / denom) * std::sqrt(phat * (1.0 - phat) / nd + z2 / (4.0 * nd * nd));
    double lo = center - half, hi = center + half;
    if (lo < 0.0) lo = 0.0;
    if (hi > 1.0) hi = 1.0;
    return {lo, hi};
}

// One Monte Carlo estimate, as emitted in CSV output.
struct EstimateRecord {
    std::string statistic;
    int n = 0;
    int m = -1;  // inner size; -1 = not applicable
    int64_t samples = 0;
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    uint64_t master_seed = 0;
};

inline constexpr const char* kCsvHeader = "statistic,n,m,samples,estimate,ci_low,ci_high,seed";

inline std::string csv_row(const EstimateRecord& r) {
    char buf[256];
    char mbuf[32] = "";
    if (r.m >= 0) std::snprintf(mbuf, sizeof(mbuf), "%d", r.m);
    std::snprintf(buf, sizeof(buf), "%s,%d,%s,%lld,%.12g,%.12g,%.12g,%llu", r.statistic.c_str(),
                  r.n, mbuf, static_cast<long long>(r.samples), r.estimate, r.ci_low, r.ci_high,
                  static_cast<unsigned long long>(r.master_seed));
    return buf;
}

}  // namespace perc
