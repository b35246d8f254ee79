#include "prsa/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace prsa {

namespace {

// %.17g round-trips doubles exactly and keeps files byte-stable.
std::string fmt(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open for reading: " + path);
    return in;
}

struct CsvRows {
    std::vector<double> first;
    std::vector<double> second;
};

CsvRows read_two_columns(const std::string& path, const std::string& expected_header) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw Error("empty CSV: " + path);
    if (line != expected_header)
        throw Error("unexpected CSV header in " + path + ": got '" + line + "', want '" +
                    expected_header + "'");
    CsvRows rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw Error("malformed CSV row in " + path);
        rows.first.push_back(std::stod(line.substr(0, comma)));
        rows.second.push_back(std::stod(line.substr(comma + 1)));
    }
    return rows;
}

}  // namespace

void write_timeseries_csv(const std::string& path, const TimeSeries& series) {
    std::ofstream out = open_out(path);
    out << "index,value\n";
    for (Index j = 0; j < series.size(); ++j)
        out << (series.origin_index + j) << ',' << fmt(series.values[j]) << '\n';
}

TimeSeries read_timeseries_csv(const std::string& path) {
    const CsvRows rows = read_two_columns(path, "index,value");
    const Index n = static_cast<Index>(rows.first.size());
    if (n < 2) throw ModelError("time series CSV needs at least 2 rows: " + path);
    Vector values(n);
    const std::int64_t origin = static_cast<std::int64_t>(rows.first.front());
    for (Index j = 0; j < n; ++j) {
        if (static_cast<std::int64_t>(rows.first[j]) != origin + j)
            throw ModelError("time series CSV indices must be consecutive: " + path);
        values[j] = rows.second[j];
    }
    TimeSeries series(std::move(values), origin);
    series.validate();
    return series;
}

void write_curve_csv(const std::string& path, const Vector& z, int L) {
    if (z.size() != 2 * static_cast<Index>(L) + 1)
        throw ModelError("curve length does not match L");
    std::ofstream out = open_out(path);
    out << "ell,z\n";
    for (int ell = -L; ell <= L; ++ell) out << ell << ',' << fmt(z[ell + L]) << '\n';
}

std::pair<Vector, int> read_curve_csv(const std::string& path) {
    const CsvRows rows = read_two_columns(path, "ell,z");
    const Index n = static_cast<Index>(rows.first.size());
    if (n < 3 || n % 2 == 0) throw ModelError("curve CSV needs 2L+1 rows: " + path);
    const int L = static_cast<int>((n - 1) / 2);
    Vector z(n);
    for (Index j = 0; j < n; ++j) {
        if (static_cast<int>(rows.first[j]) != static_cast<int>(j) - L)
            throw ModelError("curve CSV rows must run ell = -L..L: " + path);
        z[j] = rows.second[j];
    }
    return {z, L};
}

void write_covariance_csv(const std::string& path, const CovarianceFunction& cov) {
    std::ofstream out = open_out(path);
    out << "lag,value\n";
    for (Index k = 0; k <= cov.k_max(); ++k) out << k << ',' << fmt(cov(k)) << '\n';
}

CovarianceFunction read_covariance_csv(const std::string& path) {
    const CsvRows rows = read_two_columns(path, "lag,value");
    const Index n = static_cast<Index>(rows.first.size());
    if (n < 1) throw ModelError("covariance CSV is empty: " + path);
    Vector values(n);
    for (Index j = 0; j < n; ++j) {
        if (static_cast<Index>(rows.first[j]) != j)
            throw ModelError("covariance CSV lags must run 0..k_max: " + path);
        values[j] = rows.second[j];
    }
    return CovarianceFunction(std::move(values));
}

void write_cdiff_csv(const std::string& path, const Vector& diffs, int L) {
    if (diffs.size() != 2 * static_cast<Index>(L) + 1)
        throw ModelError("cdiff length does not match L");
    std::ofstream out = open_out(path);
    out << "ell,cdiff\n";
    for (int ell = -L; ell <= L; ++ell) out << ell << ',' << fmt(diffs[ell + L]) << '\n';
}

void write_json(const std::string& path, const Json& payload) {
    std::ofstream out = open_out(path);
    out << payload.dump(2) << '\n';
}

}  // namespace prsa
