#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace vhawkes {

inline double mean(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("mean: empty sample");
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

// Sample variance with the n-1 denominator.
inline double sample_variance(std::span<const double> x) {
    if (x.size() < 2) throw std::invalid_argument("sample_variance: need n >= 2");
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size() - 1);
}

inline double sample_stddev(std::span<const double> x) {
    return std::sqrt(sample_variance(x));
}

inline double standard_error(std::span<const double> x) {
    return sample_stddev(x) / std::sqrt(static_cast<double>(x.size()));
}

// Two-sample Kolmogorov-Smirnov distance: sup |F1 - F2| over the pooled
// sample. Handles ties (both ECDFs advance before the gap is taken).
inline double ks_distance(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_distance: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na -
                                 static_cast<double>(j) / nb));
    }
    return d;
}

// Asymptotic two-sample KS critical value at significance alpha.
inline double ks_critical_value(double alpha, std::size_t n, std::size_t m) {
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    return c * std::sqrt(static_cast<double>(n + m) /
                         (static_cast<double>(n) * static_cast<double>(m)));
}

// Linear-interpolation empirical quantile of a sorted sample, p in [0, 1].
inline double empirical_quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile: empty sample");
    if (p <= 0.0) return sorted.front();
    if (p >= 1.0) return sorted.back();
    const double h = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

struct Histogram {
    std::vector<double> edges;   // size bins + 1
    std::vector<std::size_t> counts;
};

inline Histogram make_histogram(std::span<const double> x, std::size_t bins) {
    if (x.empty() || bins == 0)
        throw std::invalid_argument("make_histogram: empty sample or zero bins");
    double lo = x[0], hi = x[0];
    for (double v : x) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi == lo) hi = lo + 1.0;
    Histogram h;
    h.edges.resize(bins + 1);
    h.counts.assign(bins, 0);
    const double w = (hi - lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i <= bins; ++i)
        h.edges[i] = lo + w * static_cast<double>(i);
    for (double v : x) {
        auto k = static_cast<std::size_t>((v - lo) / w);
        if (k >= bins) k = bins - 1;
        ++h.counts[k];
    }
    return h;
}

}  // namespace vhawkes
