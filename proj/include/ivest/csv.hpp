#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ivest/dataset.hpp"
#include "ivest/estimator_lti.hpp"

namespace ivest {

// Decimal with 17 significant digits, same text as printf("%.17g").
std::string format_real(double value);

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Columns: t, y, x_1..x_n, v_lo, v_hi, [v_true], [theta_true_1..n],
// [delta_lo_1..n, delta_hi_1..n].
void write_dataset_csv(std::ostream& out, const Dataset& data);

// Optional column groups are detected from the header. Throws CsvError naming
// the missing column or the offending row (1-based, header excluded).
Dataset read_dataset_csv(std::istream& in);

// One output line of the estimate stream.
struct EstimateRow {
    std::size_t t{0};
    Vector theta_hat;
    Vector center;
    Vector radius;
    Vector lo;
    Vector hi;
    Vector mono_lo; // empty when the monotonic operator is off
    Vector mono_hi;
    int inconsistent{0};

    static EstimateRow from(const IntervalEstimate& est);
};

// Columns: t, theta_hat_1..n, c_1..n, r_1..n, lo_1..n, hi_1..n,
// [mono_lo_1..n, mono_hi_1..n], inconsistent.
void write_estimates_csv(std::ostream& out, const std::vector<EstimateRow>& rows);

} // namespace ivest
