#pragma once

#include <string>
#include <string_view>

#include "rmtlaw/simulator.hpp"

namespace rmtlaw::io {

// Shortest text that round-trips the value rounded to 12 significant digits.
std::string format_number(double value);
double round12(double value);

struct ReportFormat {
    bool include_runtime = true;
    int indent = 2;
};

// {config:{...}, moments:[{k, predicted_limit, predicted_finite,
// empirical_mean, empirical_stderr}], runtime_seconds}
std::string report_to_json(const sim::MomentReport& report, const ReportFormat& format = {});

// Reads a report written by report_to_json. The model is re-parsed from its
// text form; numbers come back rounded to 12 digits.
sim::MomentReport report_from_json(std::string_view text);

// Header "bin_lo,bin_hi,count,density".
std::string histogram_to_csv(const sim::Histogram& histogram);

}  // namespace rmtlaw::io
