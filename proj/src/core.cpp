#include "prsa/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace prsa {

HingeSet detect_hinges(const TimeSeries& series, double c) {
    series.validate();
    HingeSet hinges;
    hinges.c = c;
    hinges.series_len = series.size();
    for (Index i = 1; i < series.size(); ++i)
        if (series.values[i] - series.values[i - 1] > c) hinges.indices.push_back(i);
    return hinges;
}

Index hinge_count(const HingeSet& hinges, std::int64_t a, std::int64_t b) {
    if (a > b) throw ModelError("hinge_count needs a <= b");
    const auto lo = std::upper_bound(hinges.indices.begin(), hinges.indices.end(), a);
    const auto hi = std::upper_bound(hinges.indices.begin(), hinges.indices.end(), b);
    return hi - lo;
}

PrsaResult compute_prsa(const TimeSeries& series, double c, int L, EdgePolicy policy) {
    series.validate();
    if (L < 1) throw ModelError("compute_prsa needs L >= 1");
    const Index n = series.size();
    if (n < 2 * static_cast<Index>(L) + 2)
        throw ModelError("series too short: need length >= 2L+2, got " + std::to_string(n));

    const HingeSet hinges = detect_hinges(series, c);

    std::vector<Index> used;
    if (policy == EdgePolicy::truncate) {
        const Index lo = std::max<Index>(1, L);
        const Index hi = n - 1 - L;
        for (Index i : hinges.indices)
            if (i >= lo && i <= hi) used.push_back(i);
    } else {
        for (Index i : hinges.indices) {
            if (i - L < 0 || i + L > n - 1)
                throw OverhangError("hinge window overhangs the series at index " +
                                    std::to_string(i) + "; use edge policy truncate");
            used.push_back(i);
        }
    }
    if (used.empty())
        throw NoHingeError("no admissible hinge for c=" + std::to_string(c) +
                           " in index range [" + std::to_string(std::max<Index>(1, L)) + ", " +
                           std::to_string(n - 1 - L) + "]");

    PrsaResult result;
    result.c = c;
    result.window = L;
    result.hinge_count_used = static_cast<Index>(used.size());
    result.z = Vector::Zero(2 * L + 1);
    for (Index i : used)
        result.z += series.values.segment(i - L, 2 * L + 1);
    result.z /= static_cast<double>(used.size());
    return result;
}

double haar_index(const PrsaResult& result) {
    const int L = result.window;
    if (L < 1) throw ModelError("haar_index needs L >= 1");
    const int half = L / 2;
    const int terms = L - half + 1;
    double right = 0.0, left = 0.0;
    for (int j = half; j <= L; ++j) right += result.at(j);
    for (int j = -L; j <= -half; ++j) left += result.at(j);
    return right / terms - left / terms;
}

namespace {

struct CenteredFrame {
    Index center;  // storage index of m = 0
    Index n;       // hinge range is m = -n..n
};

CenteredFrame centered_frame(const TimeSeries& series, int L) {
    const Index len = series.size();
    if (len % 2 == 0)
        throw OverhangError("centered increment form needs an odd series length (got " +
                            std::to_string(len) + "); pad the series");
    const Index half = (len - 1) / 2;
    const Index n = half - L;
    if (n < 1)
        throw OverhangError("window reads leave the series: need length >= 2L+3; "
                            "pad the series or shrink L");
    return {half, n};
}

}  // namespace

PrsaResult prsa_centered_average(const TimeSeries& series, double c, int L) {
    series.validate();
    if (L < 1) throw ModelError("prsa_centered_average needs L >= 1");
    const auto [center, n] = centered_frame(series, L);
    const auto x = [&](std::int64_t m) { return series.values[center + m]; };

    std::vector<std::int64_t> hinges;
    for (std::int64_t m = -n; m <= n; ++m)
        if (x(m) - x(m - 1) > c) hinges.push_back(m);
    if (hinges.empty())
        throw NoHingeError("no hinge in the centered frame for c=" + std::to_string(c));

    PrsaResult result;
    result.c = c;
    result.window = L;
    result.hinge_count_used = static_cast<Index>(hinges.size());
    result.z = Vector::Zero(2 * L + 1);
    for (int ell = -L; ell <= L; ++ell) {
        double acc = 0.0;
        for (std::int64_t m : hinges) acc += x(m + ell);
        result.z[ell + L] = acc / static_cast<double>(hinges.size());
    }
    return result;
}

PrsaResult prsa_via_increments(const TimeSeries& series, double c, int L) {
    series.validate();
    if (L < 1) throw ModelError("prsa_via_increments needs L >= 1");
    const auto [center, n] = centered_frame(series, L);
    const auto x = [&](std::int64_t m) { return series.values[center + m]; };
    const auto w = [&](std::int64_t m) { return x(m) - x(m - 1); };

    HingeSet hinges;
    hinges.c = c;
    hinges.series_len = series.size();
    for (std::int64_t m = -n; m <= n; ++m)
        if (w(m) > c) hinges.indices.push_back(m);
    if (hinges.indices.empty())
        throw NoHingeError("no hinge in the centered frame for c=" + std::to_string(c));

    const double denom = static_cast<double>(hinge_count(hinges, -n - 1, n));
    PrsaResult result;
    result.c = c;
    result.window = L;
    result.hinge_count_used = static_cast<Index>(hinges.indices.size());
    result.z = Vector::Zero(2 * L + 1);
    for (int ell = -L; ell <= L; ++ell) {
        double value = x(0);
        for (std::int64_t p = 1; p <= n + ell; ++p)
            value += w(p) * (hinge_count(hinges, p - ell - 1, n) / denom);
        for (std::int64_t p = -n + ell + 1; p <= 0; ++p)
            value -= w(p) * (hinge_count(hinges, -n - 1, p - ell - 1) / denom);
        result.z[ell + L] = value;
    }
    return result;
}

}  // namespace prsa
