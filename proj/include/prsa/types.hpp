#ifndef PRSA_TYPES_HPP
#define PRSA_TYPES_HPP

#include <Eigen/Core>
#include <cstdint>
#include <utility>

#include "prsa/errors.hpp"

namespace prsa {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Finite real-valued sequence. origin_index is the absolute index of
/// values[0] on the integer time axis, so imported series keep their frame.
struct TimeSeries {
    Vector values;
    std::int64_t origin_index = 0;

    TimeSeries() = default;
    TimeSeries(Vector v, std::int64_t origin) : values(std::move(v)), origin_index(origin) {}

    Index size() const { return values.size(); }

    void validate() const {
        if (values.size() < 2) throw ModelError("time series needs at least 2 samples");
        if (!values.allFinite()) throw ModelError("time series contains non-finite values");
    }
};

/// Autocovariance table C(0..k_max) of a stationary process. Negative lags use
/// the even extension C(-k) = C(k); lags beyond the horizon read as zero (the
/// table is a truncation).
class CovarianceFunction {
public:
    CovarianceFunction() = default;

    explicit CovarianceFunction(Vector values) : values_(std::move(values)) { validate(); }

    Index k_max() const { return values_.size() - 1; }

    double operator()(std::int64_t k) const {
        const std::int64_t a = k < 0 ? -k : k;
        return a < values_.size() ? values_[a] : 0.0;
    }

    const Vector& values() const { return values_; }

private:
    void validate() const {
        if (values_.size() < 1) throw ModelError("covariance table is empty");
        if (!values_.allFinite()) throw ModelError("covariance table contains non-finite values");
        if (values_[0] <= 0.0) throw ModelError("covariance table needs C(0) > 0");
        // Cauchy-Schwarz: |C(k)| <= C(0)
        if (values_.cwiseAbs().maxCoeff() > values_[0] * (1.0 + 1e-12))
            throw ModelError("covariance table violates |C(k)| <= C(0)");
    }

    Vector values_;
};

}  // namespace prsa

#endif
