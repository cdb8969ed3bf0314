#include "rmtlaw/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <json.hpp>

#include "rmtlaw/error.hpp"

namespace rmtlaw::io {

using nlohmann::json;

std::string format_number(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

double round12(double value)
{
    if (!std::isfinite(value)) {
        return value;
    }
    return std::strtod(format_number(value).c_str(), nullptr);
}

namespace {

json number(double value)
{
    if (!std::isfinite(value)) {
        return nullptr;
    }
    return round12(value);
}

double read_number(const json& j)
{
    if (j.is_null()) {
        return std::nan("");
    }
    return j.get<double>();
}

}  // namespace

std::string report_to_json(const sim::MomentReport& report, const ReportFormat& format)
{
    const auto& c = report.config;
    json config = {
        {"model", models::to_string(c.model)},
        {"m", c.m},
        {"n", c.n},
        {"y", number(static_cast<double>(c.m) / static_cast<double>(c.n))},
        {"replicates", c.replicates},
        {"k_max", c.k_max},
        {"seed", c.seed},
        {"mode", sim::to_string(c.mode)},
    };
    json rows = json::array();
    for (const auto& row : report.moments) {
        rows.push_back({
            {"k", row.k},
            {"predicted_limit", row.predicted_limit ? number(*row.predicted_limit) : json(nullptr)},
            {"predicted_finite", number(row.predicted_finite)},
            {"empirical_mean", number(row.empirical_mean)},
            {"empirical_stderr", number(row.empirical_stderr)},
        });
    }
    json out = {{"config", config}, {"moments", rows}};
    if (format.include_runtime) {
        out["runtime_seconds"] = number(report.runtime_seconds);
    }
    return out.dump(format.indent) + "\n";
}

sim::MomentReport report_from_json(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("report is not valid JSON: ") + e.what());
    }
    try {
        sim::MomentReport report;
        const auto& c = doc.at("config");
        report.config.model = models::parse_model(c.at("model").get<std::string>());
        report.config.m = c.at("m").get<std::size_t>();
        report.config.n = c.at("n").get<std::size_t>();
        report.config.replicates = c.at("replicates").get<std::size_t>();
        report.config.k_max = c.at("k_max").get<unsigned>();
        report.config.seed = c.at("seed").get<std::uint64_t>();
        report.config.mode = sim::parse_mode(c.at("mode").get<std::string>());
        for (const auto& r : doc.at("moments")) {
            sim::MomentRow row;
            row.k = r.at("k").get<unsigned>();
            if (!r.at("predicted_limit").is_null()) {
                row.predicted_limit = r.at("predicted_limit").get<double>();
            }
            row.predicted_finite = read_number(r.at("predicted_finite"));
            row.empirical_mean = read_number(r.at("empirical_mean"));
            row.empirical_stderr = read_number(r.at("empirical_stderr"));
            report.moments.push_back(row);
        }
        if (doc.contains("runtime_seconds") && !doc["runtime_seconds"].is_null()) {
            report.runtime_seconds = doc["runtime_seconds"].get<double>();
        }
        return report;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what());
    }
}

std::string histogram_to_csv(const sim::Histogram& histogram)
{
    std::string out = "bin_lo,bin_hi,count,density\n";
    for (const auto& bin : histogram.bins) {
        out += format_number(bin.lo) + "," + format_number(bin.hi) + "," +
               std::to_string(bin.count) + "," + format_number(bin.density) + "\n";
    }
    return out;
}

}  // namespace rmtlaw::io
