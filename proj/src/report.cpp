#include "flatgerm/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace flatgerm {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void BoundReport::finalize(double threshold_log_ratio) {
    max_log_ratio = -std::numeric_limits<double>::infinity();
    for (const auto& r : rows) max_log_ratio = std::max(max_log_ratio, r.log_ratio);
    max_ratio = std::exp(max_log_ratio);
    pass = hypothesis_ok && max_log_ratio <= threshold_log_ratio;
}

std::string BoundReport::to_csv() const {
    std::ostringstream out;
    out << "param1,param2,ratio,bound,value_logmag\n";
    for (const auto& r : rows) {
        out << format_double(r.param1) << "," << format_double(r.param2) << ","
            << format_double(std::exp(r.log_ratio)) << "," << format_double(r.log_bound) << ","
            << format_double(r.value_logmag) << "\n";
    }
    return out.str();
}

std::string BoundReport::summary_json() const {
    std::ostringstream out;
    out << "{\"max_ratio\":" << format_double(max_ratio) << ",\"pass\":" << (pass ? "true" : "false")
        << ",\"hypothesis_ok\":" << (hypothesis_ok ? "true" : "false");
    if (!note.empty()) out << ",\"note\":\"" << note << "\"";
    out << "}";
    return out.str();
}

}  // namespace flatgerm
