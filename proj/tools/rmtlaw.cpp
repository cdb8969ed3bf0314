// rmtlaw: limiting spectral moments of sample covariance matrices with
// dependent column entries, plus simulation and partition tools.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rmtlaw/consistent_graph.hpp"
#include "rmtlaw/counting.hpp"
#include "rmtlaw/error.hpp"
#include "rmtlaw/models.hpp"
#include "rmtlaw/moments.hpp"
#include "rmtlaw/partition.hpp"
#include "rmtlaw/report_io.hpp"
#include "rmtlaw/simulator.hpp"

using nlohmann::json;
using rmtlaw::io::format_number;
using rmtlaw::io::round12;

namespace {

enum class Format { text, json, csv };

const std::map<std::string, Format> format_names{
    {"text", Format::text}, {"json", Format::json}, {"csv", Format::csv}};

struct Common {
    Format format = Format::text;
    std::string out;
    bool quiet = false;
};

struct SimFlags {
    std::string model;
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t reps = 100;
    unsigned kmax = 4;
    std::uint64_t seed = 0;
    std::string mode = "direct";
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    bool force = false;
};

Common common;

void log(const std::string& message)
{
    if (!common.quiet) {
        std::cerr << "rmtlaw: " << message << "\n";
    }
}

void emit(const std::string& text)
{
    if (common.out.empty() || common.out == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream file(common.out, std::ios::binary);
    if (!file) {
        throw rmtlaw::ParseError("cannot open output file " + common.out);
    }
    file << text;
    if (!file) {
        throw rmtlaw::ParseError("failed writing " + common.out);
    }
}

json num(double value)
{
    if (!std::isfinite(value)) {
        return nullptr;
    }
    return round12(value);
}

std::vector<double> parse_list(const std::string& text, const char* what)
{
    std::vector<double> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        char* end = nullptr;
        double v = std::strtod(item.c_str(), &end);
        if (item.empty() || *end != '\0' || !std::isfinite(v)) {
            throw rmtlaw::ParseError(std::string("bad number '") + item + "' in " + what);
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw rmtlaw::ParseError(std::string(what) + " is empty");
    }
    return out;
}

std::pair<double, double> parse_range(const std::string& text)
{
    auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw rmtlaw::ParseError("--range expects lo:hi");
    }
    auto lo = parse_list(text.substr(0, colon), "--range");
    auto hi = parse_list(text.substr(colon + 1), "--range");
    if (lo.size() != 1 || hi.size() != 1) {
        throw rmtlaw::ParseError("--range expects lo:hi");
    }
    return {lo[0], hi[0]};
}

std::uint64_t budget_from_env()
{
    const char* env = std::getenv("RMTLAW_BUDGET");
    if (env == nullptr || *env == '\0') {
        return rmtlaw::sim::default_budget;
    }
    char* end = nullptr;
    errno = 0;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || errno != 0 || env[0] == '-') {
        throw rmtlaw::ParseError(std::string("RMTLAW_BUDGET is not an integer: ") + env);
    }
    return v;
}

rmtlaw::sim::SimConfig make_config(const SimFlags& f)
{
    if (f.model.empty()) {
        throw rmtlaw::ParseError("--model is required");
    }
    if (f.m == 0 || f.n == 0) {
        throw rmtlaw::ParseError("--m and --n are required");
    }
    rmtlaw::sim::SimConfig c;
    c.model = rmtlaw::models::parse_model(f.model);
    c.m = f.m;
    c.n = f.n;
    c.replicates = f.reps;
    c.k_max = f.kmax;
    c.seed = f.seed;
    c.mode = rmtlaw::sim::parse_mode(f.mode);
    c.budget = budget_from_env();
    c.force = f.force;
    rmtlaw::sim::validate(c);
    return c;
}

void add_sim_flags(CLI::App* app, SimFlags& f, bool with_kmax)
{
    app->add_option("--model", f.model, "column model, e.g. ar1:p=0.5")->required();
    app->add_option("--m", f.m, "rows")->required();
    app->add_option("--n", f.n, "columns")->required();
    app->add_option("--reps", f.reps, "replicates")->capture_default_str();
    if (with_kmax) {
        app->add_option("--kmax", f.kmax, "highest moment")->capture_default_str();
    }
    app->add_option("--seed", f.seed, "64-bit seed")->capture_default_str();
    app->add_option("--mode", f.mode, "sampling mode")
        ->check(CLI::IsMember({"direct", "remark1"}))
        ->capture_default_str();
    app->add_option("--workers", f.workers, "worker threads")->check(CLI::PositiveNumber);
    app->add_flag("--force", f.force, "skip the desk-scale and budget guard");
}

std::string table(const std::vector<std::string>& header,
                  const std::vector<std::vector<std::string>>& rows, char sep)
{
    std::vector<std::size_t> width(header.size());
    if (sep == ' ') {
        for (std::size_t c = 0; c < header.size(); ++c) {
            width[c] = header[c].size();
            for (const auto& r : rows) {
                width[c] = std::max(width[c], r[c].size());
            }
        }
    }
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c > 0) {
                s += sep == ' ' ? std::string("  ") : std::string(1, sep);
            }
            s += cells[c];
            if (sep == ' ' && c + 1 < cells.size()) {
                s.append(width[c] - cells[c].size(), ' ');
            }
        }
        return s + "\n";
    };
    std::string out = line(header);
    for (const auto& r : rows) {
        out += line(r);
    }
    return out;
}

// predict

struct PredictFlags {
    std::string model;
    std::string h;
    std::string htilde;
    double y = 0.0;
    unsigned kmax = 4;
    std::size_t m = 0;
};

void cmd_predict(const PredictFlags& f, bool kmax_given)
{
    using namespace rmtlaw;
    if (f.model.empty() == f.h.empty()) {
        throw ParseError("give exactly one of --model and --h");
    }
    moments::AspectRatio y(f.y);
    moments::HSequence h;
    unsigned kmax = f.kmax;
    std::string source;
    if (!f.h.empty()) {
        h.values = parse_list(f.h, "--h");
        h.origin = moments::SequenceOrigin::user;
        if (!kmax_given) {
            kmax = static_cast<unsigned>(h.size());
        }
        source = "user";
    } else {
        auto model = models::parse_model(f.model);
        if (f.m > 0) {
            h = models::h_finite(model, f.m, kmax);
        } else if (auto limit = models::h_limit(model, kmax)) {
            h = *limit;
        } else {
            throw UnsupportedError("no limiting H for this model; pass --m to use T_m");
        }
        source = moments::to_string(h.origin);
    }
    if (h.size() < kmax) {
        throw DomainError("H has " + std::to_string(h.size()) + " values but --kmax is " +
                          std::to_string(kmax));
    }
    std::optional<moments::QSequence> q;
    if (!f.htilde.empty()) {
        q.emplace();
        q->values = parse_list(f.htilde, "--htilde");
    }

    std::vector<std::string> header{"k", "h"};
    if (q) {
        header.push_back("htilde");
    }
    header.push_back("moment");
    std::vector<std::vector<std::string>> rows;
    json jrows = json::array();
    for (unsigned k = 1; k <= kmax; ++k) {
        double value = q ? moments::qform_moment(k, y, h, *q) : moments::limiting_moment(k, y, h);
        std::vector<std::string> row{std::to_string(k), format_number(h[k])};
        json jrow = {{"k", k}, {"h", num(h[k])}};
        if (q) {
            row.push_back(format_number((*q)[k]));
            jrow["htilde"] = num((*q)[k]);
        }
        row.push_back(format_number(value));
        jrow["moment"] = num(value);
        rows.push_back(row);
        jrows.push_back(jrow);
    }
    switch (common.format) {
    case Format::json: {
        json doc = {{"y", num(y.value())}, {"h_source", source}, {"moments", jrows}};
        if (!f.model.empty()) {
            doc["model"] = f.model;
        }
        if (q) {
            doc["quadratic_form"] = true;
        }
        emit(doc.dump(2) + "\n");
        break;
    }
    case Format::csv:
        emit(table(header, rows, ','));
        break;
    case Format::text:
        emit(table(header, rows, ' '));
        break;
    }
}

// simulate

rmtlaw::sim::MomentReport simulate(const SimFlags& f)
{
    auto config = make_config(f);
    log("simulating " + rmtlaw::models::to_string(config.model) + " m=" +
        std::to_string(config.m) + " n=" + std::to_string(config.n) + " reps=" +
        std::to_string(config.replicates) + " workers=" + std::to_string(f.workers));
    auto report = rmtlaw::sim::run_monte_carlo(config, {f.workers});
    log("done in " + format_number(report.runtime_seconds) + " s");
    return report;
}

std::string report_table(const rmtlaw::sim::MomentReport& report, char sep)
{
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : report.moments) {
        rows.push_back({std::to_string(r.k),
                        r.predicted_limit ? format_number(*r.predicted_limit) : "",
                        format_number(r.predicted_finite), format_number(r.empirical_mean),
                        format_number(r.empirical_stderr)});
    }
    return table({"k", "predicted_limit", "predicted_finite", "empirical_mean", "empirical_stderr"},
                 rows, sep);
}

void cmd_simulate(const SimFlags& f, bool timing)
{
    auto report = simulate(f);
    switch (common.format) {
    case Format::csv:
        emit(report_table(report, ','));
        break;
    case Format::text:
    case Format::json:
        emit(rmtlaw::io::report_to_json(report, {timing, 2}));
        break;
    }
}

// compare

struct CompareFlags {
    std::vector<std::string> reports;
    double y = 0.0;
    std::string against = "finite";
    SimFlags sim;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw rmtlaw::ParseError("cannot read " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Verdict {
    unsigned k;
    double observed;
    double expected;
    double stderr_;
    double z;
    double rel;
    bool pass;
};

Verdict judge(unsigned k, double observed, double expected, double se)
{
    double diff = observed - expected;
    double z = se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff));
    double rel = expected != 0.0 ? std::abs(diff) / std::abs(expected) : std::abs(diff);
    bool pass = std::abs(z) <= 3.0 || rel <= 0.02;
    return {k, observed, expected, se, z, rel, pass};
}

bool same_shape(const rmtlaw::sim::SimConfig& a, const rmtlaw::sim::SimConfig& b)
{
    return a.m == b.m && a.n == b.n && a.k_max == b.k_max;
}

int cmd_compare(const CompareFlags& f, bool y_given, bool inline_run)
{
    using namespace rmtlaw;
    std::vector<sim::MomentReport> reports;
    for (const auto& path : f.reports) {
        reports.push_back(io::report_from_json(read_file(path)));
    }
    if (inline_run) {
        reports.push_back(simulate(f.sim));
    }
    if (reports.empty() || reports.size() > 2) {
        throw ParseError("compare takes one or two reports, or an inline --model config");
    }
    if (reports.size() == 2 && !same_shape(reports[0].config, reports[1].config)) {
        throw DomainError("reports differ in m, n or k_max");
    }
    const auto& base = reports.front();

    std::vector<Verdict> verdicts;
    for (std::size_t i = 0; i < base.moments.size(); ++i) {
        const auto& row = base.moments[i];
        if (reports.size() == 2) {
            const auto& other = reports[1].moments[i];
            double se = std::hypot(row.empirical_stderr, other.empirical_stderr);
            verdicts.push_back(judge(row.k, row.empirical_mean, other.empirical_mean, se));
            continue;
        }
        double expected = row.predicted_finite;
        if (y_given) {
            auto h = models::h_finite(base.config.model, base.config.m, base.config.k_max);
            expected = moments::limiting_moment(row.k, moments::AspectRatio(f.y), h);
        } else if (f.against == "limit") {
            if (!row.predicted_limit) {
                throw UnsupportedError("report has no limiting prediction");
            }
            expected = *row.predicted_limit;
        }
        verdicts.push_back(judge(row.k, row.empirical_mean, expected, row.empirical_stderr));
    }

    bool all_pass = true;
    std::vector<std::vector<std::string>> rows;
    json jrows = json::array();
    for (const auto& v : verdicts) {
        all_pass = all_pass && v.pass;
        rows.push_back({std::to_string(v.k), format_number(v.observed), format_number(v.expected),
                        format_number(v.stderr_), format_number(v.z), format_number(v.rel),
                        v.pass ? "PASS" : "FAIL"});
        jrows.push_back({{"k", v.k},
                         {"observed", num(v.observed)},
                         {"expected", num(v.expected)},
                         {"stderr", num(v.stderr_)},
                         {"z", num(v.z)},
                         {"relative_error", num(v.rel)},
                         {"verdict", v.pass ? "PASS" : "FAIL"}});
    }
    std::vector<std::string> header{"k", "observed", "expected", "stderr", "z", "rel_error", "verdict"};
    switch (common.format) {
    case Format::json:
        emit(json({{"rows", jrows}, {"pass", all_pass}}).dump(2) + "\n");
        break;
    case Format::csv:
        emit(table(header, rows, ','));
        break;
    case Format::text:
        emit(table(header, rows, ' '));
        break;
    }
    return all_pass ? 0 : 1;
}

// spectrum

struct SpectrumFlags {
    SimFlags sim;
    std::size_t bins = 50;
    std::string range;
};

void cmd_spectrum(const SpectrumFlags& f)
{
    auto config = make_config(f.sim);
    std::optional<std::pair<double, double>> range;
    if (!f.range.empty()) {
        range = parse_range(f.range);
    }
    log("pooling eigenvalues over " + std::to_string(config.replicates) + " replicates");
    auto hist = rmtlaw::sim::eigenvalue_histogram(config, f.bins, range, {f.sim.workers});
    if (hist.out_of_range > 0) {
        log(std::to_string(hist.out_of_range) + " of " + std::to_string(hist.total) +
            " eigenvalues fell outside the range");
    }
    if (common.format == Format::json) {
        json bins = json::array();
        for (const auto& b : hist.bins) {
            bins.push_back({{"bin_lo", num(b.lo)},
                            {"bin_hi", num(b.hi)},
                            {"count", b.count},
                            {"density", num(b.density)}});
        }
        emit(json({{"lo", num(hist.lo)},
                   {"hi", num(hist.hi)},
                   {"total", hist.total},
                   {"out_of_range", hist.out_of_range},
                   {"bins", bins}})
                 .dump(2) +
             "\n");
        return;
    }
    emit(rmtlaw::io::histogram_to_csv(hist));
}

// nc

std::map<unsigned, unsigned> parse_sizes(const std::string& text)
{
    std::map<unsigned, unsigned> counts;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        unsigned size = 0;
        unsigned count = 0;
        char extra = 0;
        if (std::sscanf(item.c_str(), "%u:%u%c", &size, &count, &extra) != 2 || size == 0) {
            throw rmtlaw::ParseError("--sizes expects size:count pairs, got '" + item + "'");
        }
        counts[size] += count;
    }
    if (counts.empty()) {
        throw rmtlaw::ParseError("--sizes is empty");
    }
    return counts;
}

void cmd_nc_enumerate(unsigned k, bool all)
{
    auto parts = all ? rmtlaw::nc::enumerate_partitions(k) : rmtlaw::nc::enumerate_noncrossing(k);
    if (common.format == Format::json) {
        json list = json::array();
        for (const auto& p : parts) {
            list.push_back(p.to_string());
        }
        emit(json({{"k", k}, {"count", parts.size()}, {"partitions", list}}).dump(2) + "\n");
        return;
    }
    std::string out;
    for (const auto& p : parts) {
        out += p.to_string() + "\n";
    }
    emit(out);
}

void cmd_nc_complement(const std::string& blocks)
{
    auto p = rmtlaw::nc::Partition::parse(blocks);
    auto kp = rmtlaw::nc::kreweras_complement(p);
    if (common.format == Format::json) {
        emit(json({{"partition", p.to_string()}, {"complement", kp.to_string()}}).dump(2) + "\n");
        return;
    }
    emit(kp.to_string() + "\n");
}

void cmd_nc_count(unsigned k, const std::string& sizes, std::optional<unsigned> blocks)
{
    std::string value;
    if (!sizes.empty()) {
        value = rmtlaw::nc::to_string(rmtlaw::nc::count_nc_by_block_sizes(k, parse_sizes(sizes)));
    } else if (blocks) {
        if (*blocks == 0) {
            throw rmtlaw::DomainError("--nblocks must be positive");
        }
        value = rmtlaw::nc::to_string(rmtlaw::nc::narayana(k, *blocks - 1));
    } else {
        throw rmtlaw::ParseError("nc count needs --sizes or --nblocks");
    }
    if (common.format == Format::json) {
        // Exact counts may exceed 64 bits, so they travel as strings.
        emit(json({{"k", k}, {"count", value}}).dump(2) + "\n");
        return;
    }
    emit(value + "\n");
}

void cmd_nc_graphs(const std::string& blocks)
{
    auto p = rmtlaw::nc::Partition::parse(blocks);
    auto all = rmtlaw::nc::enumerate_consistent_graphs(p);
    auto best = rmtlaw::nc::max_component_graphs(p);
    std::optional<std::string> components;
    if (best.size() == 1) {
        components = best.front().component_partition().to_string();
    }
    if (common.format == Format::json) {
        json doc = {{"partition", p.to_string()},
                    {"noncrossing", rmtlaw::nc::is_noncrossing(p)},
                    {"consistent_graphs", all.size()},
                    {"max_components", p.size() - p.block_count() + 1},
                    {"max_component_graphs", best.size()},
                    {"component_partition", components ? json(*components) : json(nullptr)}};
        emit(doc.dump(2) + "\n");
        return;
    }
    std::string out = std::to_string(best.size()) + "\n";
    if (components) {
        out += *components + "\n";
    }
    emit(out);
}

int exit_code_for(const rmtlaw::Error& e)
{
    if (dynamic_cast<const rmtlaw::NumericError*>(&e) != nullptr ||
        dynamic_cast<const rmtlaw::RangeError*>(&e) != nullptr) {
        return 1;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Limiting spectral moments of sample covariance matrices with dependent entries"};
    // "--h" is the H sequence, so help is long-form only.
    app.set_help_flag("--help", "print this help message and exit");
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "show help for every subcommand");

    std::string format_flag;
    auto add_io = [&](CLI::App* sub) {
        sub->add_option("--format", format_flag, "json, csv or text")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--out", common.out, "output file (default stdout)");
        sub->add_flag("--quiet", common.quiet, "suppress log messages");
    };

    PredictFlags predict;
    auto* predict_cmd = app.add_subcommand("predict", "limiting moments from a model or H sequence");
    predict_cmd->add_option("--model", predict.model, "column model");
    predict_cmd->add_option("--h", predict.h, "H_1,...,H_K");
    predict_cmd->add_option("--htilde", predict.htilde, "quadratic-form traces H~_1,...,H~_K");
    predict_cmd->add_option("--y", predict.y, "aspect ratio m/n")->required();
    auto* predict_kmax = predict_cmd->add_option("--kmax", predict.kmax, "highest moment");
    predict_cmd->add_option("--m", predict.m, "use H from T_m at this m instead of the limit");
    add_io(predict_cmd);

    SimFlags simulate_flags;
    bool no_timing = false;
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo spectral moments");
    add_sim_flags(simulate_cmd, simulate_flags, true);
    simulate_cmd->add_flag("--no-timing", no_timing, "omit runtime_seconds from the report");
    add_io(simulate_cmd);

    CompareFlags compare;
    auto* compare_cmd = app.add_subcommand("compare", "z-scores of empirical against predicted moments");
    compare_cmd->add_option("reports", compare.reports, "report files written by simulate");
    auto* compare_y = compare_cmd->add_option("--y", compare.y, "recompute predictions with this y");
    compare_cmd->add_option("--against", compare.against, "prediction column")
        ->check(CLI::IsMember({"finite", "limit"}));
    auto* compare_model = compare_cmd->add_option("--model", compare.sim.model, "run inline");
    compare_cmd->add_option("--m", compare.sim.m);
    compare_cmd->add_option("--n", compare.sim.n);
    compare_cmd->add_option("--reps", compare.sim.reps);
    compare_cmd->add_option("--kmax", compare.sim.kmax);
    compare_cmd->add_option("--seed", compare.sim.seed);
    compare_cmd->add_option("--mode", compare.sim.mode)->check(CLI::IsMember({"direct", "remark1"}));
    compare_cmd->add_option("--workers", compare.sim.workers)->check(CLI::PositiveNumber);
    compare_cmd->add_flag("--force", compare.sim.force);
    add_io(compare_cmd);

    SpectrumFlags spectrum;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "pooled eigenvalue histogram");
    add_sim_flags(spectrum_cmd, spectrum.sim, false);
    spectrum_cmd->add_option("--bins", spectrum.bins, "bin count")->capture_default_str();
    spectrum_cmd->add_option("--range", spectrum.range, "lo:hi");
    add_io(spectrum_cmd);

    auto* nc_cmd = app.add_subcommand("nc", "partition combinatorics");
    nc_cmd->require_subcommand(1);
    unsigned nc_k = 0;
    bool nc_all = false;
    std::string nc_blocks;
    std::string nc_sizes;
    unsigned nc_nblocks = 0;
    auto* enumerate_cmd = nc_cmd->add_subcommand("enumerate", "list NC(k)");
    enumerate_cmd->add_option("--k", nc_k)->required();
    enumerate_cmd->add_flag("--all", nc_all, "list every set partition, crossing or not");
    add_io(enumerate_cmd);
    auto* complement_cmd = nc_cmd->add_subcommand("complement", "Kreweras complement");
    complement_cmd->add_option("--blocks", nc_blocks, "partition such as 1,2,4|3|5")->required();
    add_io(complement_cmd);
    auto* count_cmd = nc_cmd->add_subcommand("count", "count NC(k) by block type");
    count_cmd->add_option("--k", nc_k)->required();
    count_cmd->add_option("--sizes", nc_sizes, "size:count,... block type");
    auto* nblocks_opt = count_cmd->add_option("--nblocks", nc_nblocks, "total block count");
    add_io(count_cmd);
    auto* graphs_cmd = nc_cmd->add_subcommand("graphs", "maximal consistent graphs");
    graphs_cmd->add_option("--blocks", nc_blocks, "partition such as 1,3|2,4")->required();
    add_io(graphs_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    common.format = format_names.at(format_flag.empty() ? "text" : format_flag);

    try {
        if (predict_cmd->parsed()) {
            cmd_predict(predict, predict_kmax->count() > 0);
        } else if (simulate_cmd->parsed()) {
            if (format_flag.empty()) {
                common.format = Format::json;
            }
            cmd_simulate(simulate_flags, !no_timing);
        } else if (compare_cmd->parsed()) {
            return cmd_compare(compare, compare_y->count() > 0, compare_model->count() > 0);
        } else if (spectrum_cmd->parsed()) {
            if (format_flag.empty()) {
                common.format = Format::csv;
            }
            cmd_spectrum(spectrum);
        } else if (enumerate_cmd->parsed()) {
            cmd_nc_enumerate(nc_k, nc_all);
        } else if (complement_cmd->parsed()) {
            cmd_nc_complement(nc_blocks);
        } else if (count_cmd->parsed()) {
            std::optional<unsigned> nb;
            if (nblocks_opt->count() > 0) {
                nb = nc_nblocks;
            }
            cmd_nc_count(nc_k, nc_sizes, nb);
        } else if (graphs_cmd->parsed()) {
            cmd_nc_graphs(nc_blocks);
        }
    } catch (const rmtlaw::Error& e) {
        std::cerr << "rmtlaw: error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "rmtlaw: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
