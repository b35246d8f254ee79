#ifndef PRSA_IO_HPP
#define PRSA_IO_HPP

#include <json.hpp>
#include <string>
#include <utility>

#include "prsa/core.hpp"
#include "prsa/types.hpp"

namespace prsa {

using Json = nlohmann::json;

// TimeSeries CSV: header "index,value", absolute (origin-aware) indices.
void write_timeseries_csv(const std::string& path, const TimeSeries& series);
TimeSeries read_timeseries_csv(const std::string& path);

// Averaged-cycle CSV: header "ell,z", rows l = -L..L (z[l+L] layout).
void write_curve_csv(const std::string& path, const Vector& z, int L);
std::pair<Vector, int> read_curve_csv(const std::string& path);

// Covariance CSV: header "lag,value", lags 0..k_max.
void write_covariance_csv(const std::string& path, const CovarianceFunction& cov);
CovarianceFunction read_covariance_csv(const std::string& path);

// Recovered covariance differences: header "ell,cdiff".
void write_cdiff_csv(const std::string& path, const Vector& diffs, int L);

void write_json(const std::string& path, const Json& payload);

}  // namespace prsa

#endif
