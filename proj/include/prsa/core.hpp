#ifndef PRSA_CORE_HPP
#define PRSA_CORE_HPP

#include <cstdint>
#include <vector>

#include "prsa/types.hpp"

namespace prsa {

/// Window admissibility at the series edges: `truncate` keeps only hinges
/// whose full window fits; `all` averages over every hinge and errors if any
/// window overhangs. The two differ by O(L/n) boundary terms.
enum class EdgePolicy { truncate, all };

/// Positions i (0-based, i >= 1) with x_i - x_{i-1} > c, strictly increasing.
struct HingeSet {
    std::vector<Index> indices;
    double c = 0.0;
    Index series_len = 0;
};

/// The averaged cycle z(l) for l = -L..L, stored at z[l + window].
struct PrsaResult {
    Vector z;
    Index hinge_count_used = 0;
    double c = 0.0;
    int window = 0;  // L

    double at(int ell) const { return z[ell + window]; }
};

HingeSet detect_hinges(const TimeSeries& series, double c);

/// Counts hinges with index in the half-open interval (a, b].
Index hinge_count(const HingeSet& hinges, std::int64_t a, std::int64_t b);

/// Averages windows x_{i-L}..x_{i+L} over admissible hinges i.
/// Throws NoHingeError when no hinge is admissible, OverhangError when policy
/// `all` meets a hinge whose window leaves the series.
PrsaResult compute_prsa(const TimeSeries& series, double c, int L,
                        EdgePolicy policy = EdgePolicy::truncate);

/// Haar-like summary index: mean of z over j = floor(L/2)..L minus mean of z
/// over j = -L..-floor(L/2).
double haar_index(const PrsaResult& result);

/// The averaged cycle computed through the increment decomposition
///   z(l) = x_0 + sum_p w_p H(p-l-1, n)/H(-n-1, n) - sum_p w_p H(-n-1, p-l-1)/H(-n-1, n)
/// over the centered frame m = -n..n with n = (len-1)/2 - L, so every window
/// read stays inside the stored series. Requires an odd length >= 2L+3;
/// otherwise throws OverhangError (pad the series or shrink L).
PrsaResult prsa_via_increments(const TimeSeries& series, double c, int L);

/// The plain ratio-form average over the same centered frame as
/// prsa_via_increments; the two agree identically up to roundoff.
PrsaResult prsa_centered_average(const TimeSeries& series, double c, int L);

}  // namespace prsa

#endif
