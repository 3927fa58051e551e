#pragma once

#include <string>
#include <vector>

namespace flatgerm {

// One grid point of a bound verification: ratio = |quantity| / bound,
// computed in log space so extreme magnitudes stay meaningful.
struct BoundRow {
    double param1 = 0;       // e.g. derivative order k, or level index
    double param2 = 0;       // e.g. grid point t
    double log_ratio = 0;    // ln(|value| / bound); pass iff <= 0 pointwise
    double log_bound = 0;    // ln bound
    double value_logmag = 0; // ln |value|
};

struct BoundReport {
    std::vector<BoundRow> rows;
    double max_ratio = 0;          // max over rows of exp(log_ratio)
    double max_log_ratio = 0;
    bool pass = false;             // max ratio <= 1
    bool hypothesis_ok = true;     // false when a lemma's hypothesis failed, not its bound
    std::string note;

    void finalize(double threshold_log_ratio = 0.0);

    // CSV columns: param1,param2,ratio,bound,value_logmag
    std::string to_csv() const;
    // {"max_ratio":..,"pass":..}
    std::string summary_json() const;
};

std::string format_double(double v);  // fixed 17-significant-digit form

}  // namespace flatgerm
