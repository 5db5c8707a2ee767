#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "glancing/propagator.hpp"

// Parameter sweeps over alpha for the glancing family, CSV exchange and
// method-comparison metrics.

namespace glancing::harness {

enum class Method { Numeric = 0, Ddp, ZntDouble, ZntTunnel };
inline constexpr std::array<Method, 4> kAllMethods = {Method::Numeric, Method::Ddp,
                                                      Method::ZntDouble, Method::ZntTunnel};

/// CLI/CSV token: numeric, ddp, znt-double, znt-tunnel.
std::string_view method_name(Method method);
/// Throws DomainError on an unknown token.
Method parse_method(std::string_view token);
/// Comma-separated list of tokens.
std::vector<Method> parse_methods(std::string_view list);

enum class Spacing { Linear, Log };
Spacing parse_spacing(std::string_view token);

struct SweepConfig {
    std::vector<int> N_values{2};
    double alpha_min = 0.1;
    double alpha_max = 3.0;
    std::size_t points = 300;
    Spacing spacing = Spacing::Log;
    std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
    PropagatorSettings propagator{};
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;
    std::optional<std::filesystem::path> output;
};

/// Throws DomainError when the config violates its invariants.
void validate(const SweepConfig& config);

/// Grid of alpha values in ascending order, endpoints exact.
std::vector<double> alpha_grid(const SweepConfig& config);

struct SweepRow {
    int N = 0;
    double alpha = 0.0;
    /// Indexed by Method. Empty: not requested. NaN: the method failed and
    /// `status` names the failure.
    std::array<std::optional<double>, 4> probability{};
    /// "ok", or ';'-separated "method:Failure" entries.
    std::string status = "ok";

    [[nodiscard]] const std::optional<double>& operator[](Method m) const {
        return probability[static_cast<std::size_t>(m)];
    }
    std::optional<double>& operator[](Method m) { return probability[static_cast<std::size_t>(m)]; }
};

/// Bitwise equality (NaN equals NaN), used for determinism and round trips.
bool same_row(const SweepRow& lhs, const SweepRow& rhs);

/// Evaluates one grid point; failures are recorded in the row, not thrown.
SweepRow evaluate_point(int N, double alpha, const std::vector<Method>& methods,
                        const PropagatorSettings& settings);

/// Rows ordered by N (config order) then ascending alpha. Grid points run on
/// a worker pool; results do not depend on the thread count. Writes the CSV
/// when config.output is set (throws IoError on failure).
std::vector<SweepRow> run_sweep(const SweepConfig& config);

/// Header "N,alpha,numeric,ddp,znt-double,znt-tunnel,status", 17 significant
/// digits, empty cells for absent methods and NaN for failures.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_csv(std::istream& in);
void write_csv_file(const std::filesystem::path& path, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_csv_file(const std::filesystem::path& path);

using Series = std::vector<std::pair<double, double>>;

/// Strict interior local maxima with P > threshold, ascending in alpha.
std::vector<double> find_oscillation_peaks(Series series, double threshold);

/// Strict interior local minima, ascending in alpha.
std::vector<double> find_oscillation_nodes(Series series);

/// (alpha, P) of one method for one N, finite values only, sorted.
Series column_series(const std::vector<SweepRow>& rows, Method method);

struct MethodComparison {
    Method method = Method::Numeric;
    std::size_t samples = 0;
    std::size_t failures = 0;
    double max_abs_deviation = 0.0;
    double max_deviation_alpha = 0.0;
    std::vector<double> peaks;
    std::vector<double> nodes;
    /// |alpha_node - nearest numeric node| / nearest numeric node, per node.
    std::vector<double> node_shifts;
    double max_node_shift = 0.0;
    /// Node count of the method over node count of the numeric column.
    double frequency_ratio = 0.0;
};

struct ComparisonReport {
    int N = 0;
    double threshold = 0.0;
    std::vector<double> numeric_peaks;
    std::vector<double> numeric_nodes;
    std::vector<MethodComparison> methods;

    [[nodiscard]] const MethodComparison* find(Method m) const;
};

/// Compares every non-numeric column against the numeric one. All rows must
/// share one N (DomainError otherwise); throws MissingColumn when the numeric
/// column is absent. Row order does not matter.
ComparisonReport compare_methods(std::vector<SweepRow> rows, double threshold = 0.05);

/// One report per N found in the rows, ascending in N.
std::vector<ComparisonReport> compare_by_N(const std::vector<SweepRow>& rows,
                                           double threshold = 0.05);

std::string report_to_json(const std::vector<ComparisonReport>& reports);

} // namespace glancing::harness
