#include "glancing/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "glancing/ddp.hpp"
#include "glancing/errors.hpp"
#include "glancing/znt.hpp"

namespace glancing::harness {
namespace {

constexpr std::array<std::string_view, 4> kMethodNames = {"numeric", "ddp", "znt-double",
                                                          "znt-tunnel"};

std::string trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r\n");
    return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view text, char separator) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto end = text.find(separator, start);
        parts.emplace_back(text.substr(start, end - start));
        if (end == std::string_view::npos) {
            break;
        }
        start = end + 1;
    }
    return parts;
}

std::string format_double(double value) {
    if (std::isnan(value)) {
        return "NaN";
    }
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

double parse_double(const std::string& cell, std::size_t line) {
    if (cell == "NaN" || cell == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double value = 0.0;
    const auto* end = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw IoError("read_csv: line " + std::to_string(line) + ": bad number '" + cell + "'");
    }
    return value;
}

void append_status(SweepRow& row, Method method, std::string_view failure) {
    std::string entry = std::string(method_name(method)) + ":" + std::string(failure);
    row.status = row.status == "ok" ? entry : row.status + ";" + entry;
}

double evaluate_method(Method method, int N, double alpha, const PropagatorSettings& settings) {
    switch (method) {
    case Method::Numeric:
        return propagate(DiabaticModel(Superparabolic{N, alpha}), settings).probability;
    case Method::Ddp:
        return ddp::ddp_probability(N, alpha);
    case Method::ZntDouble:
        return znt::superparabolic_double_crossing(N, alpha);
    case Method::ZntTunnel:
        return znt::superparabolic_tunneling(N, alpha);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> nearest_relative_shifts(const std::vector<double>& nodes,
                                            const std::vector<double>& reference) {
    std::vector<double> shifts;
    if (reference.empty()) {
        return shifts;
    }
    for (double node : nodes) {
        const auto nearest = std::min_element(
            reference.begin(), reference.end(),
            [node](double a, double b) { return std::abs(a - node) < std::abs(b - node); });
        shifts.push_back(std::abs(node - *nearest) / *nearest);
    }
    return shifts;
}

nlohmann::json method_json(const MethodComparison& m) {
    return {
        {"method", method_name(m.method)},
        {"samples", m.samples},
        {"failures", m.failures},
        {"max_abs_deviation", m.max_abs_deviation},
        {"max_deviation_alpha", m.max_deviation_alpha},
        {"peaks", m.peaks},
        {"peak_count", m.peaks.size()},
        {"nodes", m.nodes},
        {"node_shifts", m.node_shifts},
        {"max_node_shift", m.max_node_shift},
        {"frequency_ratio", m.frequency_ratio},
    };
}

} // namespace

std::string_view method_name(Method method) {
    return kMethodNames[static_cast<std::size_t>(method)];
}

Method parse_method(std::string_view token) {
    const std::string cleaned = trim(token);
    for (Method m : kAllMethods) {
        if (method_name(m) == cleaned) {
            return m;
        }
    }
    throw DomainError("unknown method '" + cleaned +
                      "' (expected numeric, ddp, znt-double or znt-tunnel)");
}

std::vector<Method> parse_methods(std::string_view list) {
    std::vector<Method> methods;
    for (const std::string& token : split(list, ',')) {
        if (trim(token).empty()) {
            continue;
        }
        const Method m = parse_method(token);
        if (std::find(methods.begin(), methods.end(), m) == methods.end()) {
            methods.push_back(m);
        }
    }
    return methods;
}

Spacing parse_spacing(std::string_view token) {
    const std::string cleaned = trim(token);
    if (cleaned == "log") {
        return Spacing::Log;
    }
    if (cleaned == "linear" || cleaned == "lin") {
        return Spacing::Linear;
    }
    throw DomainError("unknown spacing '" + cleaned + "' (expected linear or log)");
}

void validate(const SweepConfig& config) {
    if (config.N_values.empty()) {
        throw DomainError("sweep: at least one N is required");
    }
    for (int n : config.N_values) {
        if (n < 2 || n % 2 != 0) {
            throw DomainError("sweep: N must be even and >= 2, got " + std::to_string(n));
        }
    }
    if (!(config.alpha_min > 0.0) || !(config.alpha_max >= config.alpha_min)) {
        throw DomainError("sweep: need 0 < alpha_min <= alpha_max");
    }
    if (config.points < 2) {
        throw DomainError("sweep: point count must be at least 2");
    }
    if (config.methods.empty()) {
        throw DomainError("sweep: method set is empty");
    }
}

std::vector<double> alpha_grid(const SweepConfig& config) {
    validate(config);
    std::vector<double> grid(config.points);
    const double last = static_cast<double>(config.points - 1);
    for (std::size_t i = 0; i < config.points; ++i) {
        const double u = static_cast<double>(i) / last;
        grid[i] = config.spacing == Spacing::Linear
                      ? config.alpha_min + u * (config.alpha_max - config.alpha_min)
                      : std::exp(std::log(config.alpha_min) +
                                 u * (std::log(config.alpha_max) - std::log(config.alpha_min)));
    }
    grid.front() = config.alpha_min;
    grid.back() = config.alpha_max;
    return grid;
}

bool same_row(const SweepRow& lhs, const SweepRow& rhs) {
    if (lhs.N != rhs.N || std::bit_cast<std::uint64_t>(lhs.alpha) !=
                              std::bit_cast<std::uint64_t>(rhs.alpha) ||
        lhs.status != rhs.status) {
        return false;
    }
    for (std::size_t i = 0; i < lhs.probability.size(); ++i) {
        const auto& a = lhs.probability[i];
        const auto& b = rhs.probability[i];
        if (a.has_value() != b.has_value()) {
            return false;
        }
        if (a && !(std::isnan(*a) && std::isnan(*b)) &&
            std::bit_cast<std::uint64_t>(*a) != std::bit_cast<std::uint64_t>(*b)) {
            return false;
        }
    }
    return true;
}

SweepRow evaluate_point(int N, double alpha, const std::vector<Method>& methods,
                        const PropagatorSettings& settings) {
    SweepRow row;
    row.N = N;
    row.alpha = alpha;
    for (Method method : methods) {
        double value = std::numeric_limits<double>::quiet_NaN();
        try {
            value = evaluate_method(method, N, alpha, settings);
            if (!(value >= 0.0 && value <= 1.0)) {
                append_status(row, method, "OutOfRange(" + format_double(value) + ")");
                value = std::numeric_limits<double>::quiet_NaN();
            }
        } catch (const BranchFailure&) {
            append_status(row, method, "BranchFailure");
        } catch (const NonConvergence&) {
            append_status(row, method, "NonConvergence");
        } catch (const ToleranceFailure&) {
            append_status(row, method, "ToleranceFailure");
        } catch (const DomainError&) {
            append_status(row, method, "DomainError");
        }
        row[method] = value;
    }
    return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    const std::vector<double> grid = alpha_grid(config);
    const std::size_t per_n = grid.size();
    const std::size_t total = per_n * config.N_values.size();
    std::vector<SweepRow> rows(total);

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t index = next++; index < total; index = next++) {
            const int n = config.N_values[index / per_n];
            rows[index] = evaluate_point(n, grid[index % per_n], config.methods, config.propagator);
        }
    };
    unsigned threads = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
    threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(std::min<std::size_t>(
                                                    total, 256)));
    {
        std::vector<std::jthread> pool;
        for (unsigned i = 1; i < threads; ++i) {
            pool.emplace_back(worker);
        }
        worker();
    }
    if (config.output) {
        write_csv_file(*config.output, rows);
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "N,alpha";
    for (Method m : kAllMethods) {
        out << ',' << method_name(m);
    }
    out << ",status\n";
    for (const SweepRow& row : rows) {
        out << row.N << ',' << format_double(row.alpha);
        for (const auto& value : row.probability) {
            out << ',';
            if (value) {
                out << format_double(*value);
            }
        }
        out << ',' << row.status << '\n';
    }
}

std::vector<SweepRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError("read_csv: empty input");
    }
    const std::vector<std::string> header = split(trim(line), ',');
    std::map<std::string, std::size_t> column;
    for (std::size_t i = 0; i < header.size(); ++i) {
        column[trim(header[i])] = i;
    }
    if (!column.contains("N") || !column.contains("alpha")) {
        throw IoError("read_csv: header must contain N and alpha");
    }

    std::vector<SweepRow> rows;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) {
            continue;
        }
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const std::vector<std::string> cells = split(line, ',');
        if (cells.size() != header.size()) {
            throw IoError("read_csv: line " + std::to_string(line_number) + " has " +
                          std::to_string(cells.size()) + " cells, expected " +
                          std::to_string(header.size()));
        }
        SweepRow row;
        row.N = static_cast<int>(parse_double(cells[column["N"]], line_number));
        row.alpha = parse_double(cells[column["alpha"]], line_number);
        for (Method m : kAllMethods) {
            const auto it = column.find(std::string(method_name(m)));
            if (it != column.end() && !cells[it->second].empty()) {
                row[m] = parse_double(cells[it->second], line_number);
            }
        }
        if (const auto it = column.find("status"); it != column.end()) {
            row.status = cells[it->second];
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_csv_file(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    write_csv(out, rows);
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

std::vector<SweepRow> read_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    return read_csv(in);
}

std::vector<double> find_oscillation_peaks(Series series, double threshold) {
    std::sort(series.begin(), series.end());
    std::vector<double> peaks;
    for (std::size_t i = 1; i + 1 < series.size(); ++i) {
        const double p = series[i].second;
        if (p > threshold && p > series[i - 1].second && p > series[i + 1].second) {
            peaks.push_back(series[i].first);
        }
    }
    return peaks;
}

std::vector<double> find_oscillation_nodes(Series series) {
    std::sort(series.begin(), series.end());
    std::vector<double> nodes;
    for (std::size_t i = 1; i + 1 < series.size(); ++i) {
        const double p = series[i].second;
        if (p < series[i - 1].second && p < series[i + 1].second) {
            nodes.push_back(series[i].first);
        }
    }
    return nodes;
}

Series column_series(const std::vector<SweepRow>& rows, Method method) {
    Series series;
    for (const SweepRow& row : rows) {
        const auto& value = row[method];
        if (value && std::isfinite(*value)) {
            series.emplace_back(row.alpha, *value);
        }
    }
    std::sort(series.begin(), series.end());
    return series;
}

const MethodComparison* ComparisonReport::find(Method m) const {
    for (const MethodComparison& c : methods) {
        if (c.method == m) {
            return &c;
        }
    }
    return nullptr;
}

ComparisonReport compare_methods(std::vector<SweepRow> rows, double threshold) {
    if (rows.empty()) {
        throw MissingColumn("compare_methods: no rows");
    }
    std::sort(rows.begin(), rows.end(),
              [](const SweepRow& a, const SweepRow& b) { return a.alpha < b.alpha; });
    const int n = rows.front().N;
    for (const SweepRow& row : rows) {
        if (row.N != n) {
            throw DomainError("compare_methods: rows mix several N; use compare_by_N");
        }
    }
    const bool has_numeric = std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) {
        return r[Method::Numeric].has_value();
    });
    if (!has_numeric) {
        throw MissingColumn("compare_methods: numeric column absent");
    }

    ComparisonReport report;
    report.N = n;
    report.threshold = threshold;
    const Series numeric = column_series(rows, Method::Numeric);
    report.numeric_peaks = find_oscillation_peaks(numeric, threshold);
    report.numeric_nodes = find_oscillation_nodes(numeric);

    for (Method method : kAllMethods) {
        if (method == Method::Numeric) {
            continue;
        }
        MethodComparison cmp;
        cmp.method = method;
        bool present = false;
        for (const SweepRow& row : rows) {
            const auto& value = row[method];
            if (!value) {
                continue;
            }
            present = true;
            if (!std::isfinite(*value)) {
                ++cmp.failures;
                continue;
            }
            ++cmp.samples;
            const auto& reference = row[Method::Numeric];
            if (reference && std::isfinite(*reference)) {
                const double deviation = std::abs(*value - *reference);
                if (deviation > cmp.max_abs_deviation) {
                    cmp.max_abs_deviation = deviation;
                    cmp.max_deviation_alpha = row.alpha;
                }
            }
        }
        if (!present) {
            continue;
        }
        const Series series = column_series(rows, method);
        cmp.peaks = find_oscillation_peaks(series, threshold);
        cmp.nodes = find_oscillation_nodes(series);
        cmp.node_shifts = nearest_relative_shifts(cmp.nodes, report.numeric_nodes);
        cmp.max_node_shift = cmp.node_shifts.empty()
                                 ? 0.0
                                 : *std::max_element(cmp.node_shifts.begin(), cmp.node_shifts.end());
        cmp.frequency_ratio = report.numeric_nodes.empty()
                                  ? 0.0
                                  : static_cast<double>(cmp.nodes.size()) /
                                        static_cast<double>(report.numeric_nodes.size());
        report.methods.push_back(std::move(cmp));
    }
    return report;
}

std::vector<ComparisonReport> compare_by_N(const std::vector<SweepRow>& rows, double threshold) {
    std::map<int, std::vector<SweepRow>> groups;
    for (const SweepRow& row : rows) {
        groups[row.N].push_back(row);
    }
    std::vector<ComparisonReport> reports;
    for (auto& [n, group] : groups) {
        reports.push_back(compare_methods(std::move(group), threshold));
    }
    return reports;
}

std::string report_to_json(const std::vector<ComparisonReport>& reports) {
    nlohmann::json root = nlohmann::json::array();
    for (const ComparisonReport& report : reports) {
        nlohmann::json methods = nlohmann::json::array();
        for (const MethodComparison& m : report.methods) {
            methods.push_back(method_json(m));
        }
        root.push_back({
            {"N", report.N},
            {"threshold", report.threshold},
            {"numeric_peaks", report.numeric_peaks},
            {"numeric_peak_count", report.numeric_peaks.size()},
            {"numeric_nodes", report.numeric_nodes},
            {"methods", methods},
        });
    }
    return root.dump(2);
}

} // namespace glancing::harness
