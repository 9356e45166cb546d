#include "ivest/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace ivest {

std::string format_real(double value)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    if (ec != std::errc()) {
        throw std::runtime_error("format_real: conversion failed");
    }
    return std::string(buf, ptr);
}

namespace {

void append_indexed(std::vector<std::string>& header, const std::string& prefix, Eigen::Index n)
{
    for (Eigen::Index i = 1; i <= n; ++i) {
        header.push_back(prefix + std::to_string(i));
    }
}

void write_line(std::ostream& out, const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            out << ',';
        }
        out << fields[i];
    }
    out << '\n';
}

void append_vector(std::vector<std::string>& fields, const Vector& v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        fields.push_back(format_real(v[i]));
    }
}

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) {
            field.pop_back();
        }
        while (!field.empty() && field.front() == ' ') {
            field.erase(field.begin());
        }
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

double parse_real(const std::string& text, const std::string& column, std::size_t row)
{
    double value = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc() || ptr != last) {
        throw CsvError("row " + std::to_string(row) + ", column '" + column + "': cannot parse '" + text +
                       "' as a number");
    }
    return value;
}

class ColumnIndex {
public:
    explicit ColumnIndex(const std::vector<std::string>& header)
    {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (!index_.emplace(header[i], i).second) {
                throw CsvError("duplicate column '" + header[i] + "'");
            }
        }
    }

    bool has(const std::string& name) const { return index_.count(name) > 0; }

    std::size_t require(const std::string& name) const
    {
        const auto it = index_.find(name);
        if (it == index_.end()) {
            throw CsvError("missing required column '" + name + "'");
        }
        return it->second;
    }

    // Either all of prefix1..prefixn are present (true), or none is (false).
    bool group(const std::string& prefix, Eigen::Index n) const
    {
        const bool first = has(prefix + "1");
        for (Eigen::Index i = 1; i <= n; ++i) {
            if (has(prefix + std::to_string(i)) != first) {
                throw CsvError("missing required column '" + prefix + std::to_string(i) + "'");
            }
        }
        return first;
    }

private:
    std::map<std::string, std::size_t> index_;
};

} // namespace

void write_dataset_csv(std::ostream& out, const Dataset& data)
{
    std::vector<std::string> header{"t", "y"};
    append_indexed(header, "x_", data.n);
    header.insert(header.end(), {"v_lo", "v_hi"});
    if (data.has_v_true) {
        header.push_back("v_true");
    }
    if (data.has_theta_true) {
        append_indexed(header, "theta_true_", data.n);
    }
    if (data.has_drift) {
        append_indexed(header, "delta_lo_", data.n);
        append_indexed(header, "delta_hi_", data.n);
    }
    write_line(out, header);

    std::vector<std::string> fields;
    for (const auto& r : data.records) {
        fields.clear();
        fields.push_back(std::to_string(r.t));
        fields.push_back(format_real(r.y));
        append_vector(fields, r.x);
        fields.push_back(format_real(r.v_lo));
        fields.push_back(format_real(r.v_hi));
        if (data.has_v_true) {
            fields.push_back(format_real(r.v_true));
        }
        if (data.has_theta_true) {
            append_vector(fields, r.theta_true);
        }
        if (data.has_drift) {
            append_vector(fields, r.delta_lo);
            append_vector(fields, r.delta_hi);
        }
        write_line(out, fields);
    }
}

Dataset read_dataset_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) {
        throw CsvError("empty input: header row is mandatory");
    }
    const auto header = split_fields(line);
    const ColumnIndex cols(header);

    const auto col_t = cols.require("t");
    const auto col_y = cols.require("y");
    Eigen::Index n = 0;
    while (cols.has("x_" + std::to_string(n + 1))) {
        ++n;
    }
    if (n == 0) {
        throw CsvError("missing required column 'x_1'");
    }
    const auto col_vlo = cols.require("v_lo");
    const auto col_vhi = cols.require("v_hi");

    Dataset data;
    data.n = n;
    data.has_v_true = cols.has("v_true");
    data.has_theta_true = cols.group("theta_true_", n);
    const bool has_dlo = cols.group("delta_lo_", n);
    const bool has_dhi = cols.group("delta_hi_", n);
    if (has_dlo != has_dhi) {
        throw CsvError(std::string("missing required column '") + (has_dlo ? "delta_hi_1" : "delta_lo_1") + "'");
    }
    data.has_drift = has_dlo;

    auto read_group = [&](const std::vector<std::string>& f, const std::string& prefix, std::size_t row) {
        Vector v(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const std::string name = prefix + std::to_string(i + 1);
            v[i] = parse_real(f[cols.require(name)], name, row);
        }
        return v;
    };

    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") {
            continue;
        }
        ++row;
        const auto f = split_fields(line);
        if (f.size() != header.size()) {
            throw CsvError("row " + std::to_string(row) + ": expected " + std::to_string(header.size()) +
                           " fields, found " + std::to_string(f.size()));
        }
        DataRecord r;
        const double t = parse_real(f[col_t], "t", row);
        if (!(t >= 0.0) || t != std::floor(t)) {
            throw CsvError("row " + std::to_string(row) + ", column 't': not a nonnegative integer");
        }
        r.t = static_cast<std::size_t>(t);
        r.y = parse_real(f[col_y], "y", row);
        r.x = read_group(f, "x_", row);
        r.v_lo = parse_real(f[col_vlo], "v_lo", row);
        r.v_hi = parse_real(f[col_vhi], "v_hi", row);
        if (!(r.v_lo <= r.v_hi)) {
            throw CsvError("row " + std::to_string(row) + ": v_lo > v_hi");
        }
        if (data.has_v_true) {
            r.v_true = parse_real(f[cols.require("v_true")], "v_true", row);
        }
        if (data.has_theta_true) {
            r.theta_true = read_group(f, "theta_true_", row);
        }
        if (data.has_drift) {
            r.delta_lo = read_group(f, "delta_lo_", row);
            r.delta_hi = read_group(f, "delta_hi_", row);
            if ((r.delta_lo.array() > r.delta_hi.array()).any()) {
                throw CsvError("row " + std::to_string(row) + ": delta_lo > delta_hi");
            }
        }
        data.records.push_back(std::move(r));
    }
    return data;
}

EstimateRow EstimateRow::from(const IntervalEstimate& est)
{
    EstimateRow row;
    row.t = est.t;
    row.theta_hat = est.point;
    row.center = est.raw.center();
    row.radius = est.raw.radius();
    row.lo = est.raw.lower();
    row.hi = est.raw.upper();
    if (est.refined) {
        row.mono_lo = est.refined->lower();
        row.mono_hi = est.refined->upper();
    }
    row.inconsistent = est.inconsistent ? 1 : 0;
    return row;
}

void write_estimates_csv(std::ostream& out, const std::vector<EstimateRow>& rows)
{
    if (rows.empty()) {
        return;
    }
    const auto n = rows.front().theta_hat.size();
    const bool mono = rows.front().mono_lo.size() > 0;

    std::vector<std::string> header{"t"};
    append_indexed(header, "theta_hat_", n);
    append_indexed(header, "c_", n);
    append_indexed(header, "r_", n);
    append_indexed(header, "lo_", n);
    append_indexed(header, "hi_", n);
    if (mono) {
        append_indexed(header, "mono_lo_", n);
        append_indexed(header, "mono_hi_", n);
    }
    header.push_back("inconsistent");
    write_line(out, header);

    std::vector<std::string> fields;
    for (const auto& r : rows) {
        fields.clear();
        fields.push_back(std::to_string(r.t));
        append_vector(fields, r.theta_hat);
        append_vector(fields, r.center);
        append_vector(fields, r.radius);
        append_vector(fields, r.lo);
        append_vector(fields, r.hi);
        if (mono) {
            append_vector(fields, r.mono_lo);
            append_vector(fields, r.mono_hi);
        }
        fields.push_back(std::to_string(r.inconsistent));
        write_line(out, fields);
    }
}

} // namespace ivest
