#ifndef PRSA_TESTS_SUPPORT_HPP
#define PRSA_TESTS_SUPPORT_HPP

// Independent oracles for the test suites. Everything here is deliberately
// naive (brute force, series summation) and shares no code with the library
// paths it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace oracle {

// Midpoint rule with `panels` equal panels.
inline double midpoint_rule(const std::function<double(double)>& f, double a, double b,
                            std::int64_t panels) {
    const double h = (b - a) / static_cast<double>(panels);
    double acc = 0.0;
    for (std::int64_t k = 0; k < panels; ++k) acc += f(a + (k + 0.5) * h);
    return acc * h;
}

// erf by its Taylor series, summed until terms vanish at machine precision.
inline double erf_series(double x) {
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int k = 1; k < 400; ++k) {
        term *= -x2 / k;
        const double contribution = term / (2 * k + 1);
        sum += contribution;
        if (std::abs(contribution) < 1e-18 * std::abs(sum)) break;
    }
    return 2.0 / std::sqrt(M_PI) * sum;
}

// Gaussian tail from the series oracle.
inline double gaussian_tail_series(double x) {
    return 0.5 * (1.0 - erf_series(x / std::sqrt(2.0)));
}

// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const std::size_t n = a.size(), m = b.size();
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < n && j < m) {
        const double x = std::min(a[i], b[j]);
        while (i < n && a[i] <= x) ++i;
        while (j < m && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    return d;
}

// Critical value of the two-sample KS test; c(0.01) = 1.628.
inline double ks_threshold(std::size_t n, std::size_t m, double c_alpha = 1.628) {
    return c_alpha * std::sqrt((static_cast<double>(n) + m) / (static_cast<double>(n) * m));
}

// FNV-1a 64-bit over a byte string; used to pin golden files.
inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        hash ^= ch;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

inline double mean(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

inline double variance(const std::vector<double>& v) {
    const double m = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return acc / static_cast<double>(v.size() - 1);
}

}  // namespace oracle

#endif
