#ifndef WQED_SCAN_HPP
#define WQED_SCAN_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wqed/core_model.hpp"

namespace wqed {

enum class ScanQuantity { EtaT, EtaR, EtaPair, ChiAbs2, Q, Epsilon, TBar, RBar };
enum class OutputFormat { Csv, Json };

std::optional<ScanQuantity> parse_quantity(const std::string& name);

struct AxisSpec {
    std::string name;  // gamma | kappa | u | delta1 | delta_a | x | xc | omega
    double min = 0.0;
    double max = 1.0;
    int steps = 2;
    bool log = false;
};

struct ScanSpec {
    ScanQuantity quantity = ScanQuantity::EtaT;
    std::vector<AxisSpec> axes;  // 1 or 2 swept parameters
    SystemParams params;
    TwoPhotonInput input;
    CoordinatePair coords;
    // Unit scales applied to axis values on assignment (kappa-units support).
    double freq_unit = 1.0;
    double length_unit = 1.0;

    void validate() const;  // throws std::invalid_argument
};

/// Column-oriented scan result in deterministic row-major order (first
/// axis outermost). Unset cells are undefined quantities (NA).
struct ScanTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
};

/// Evaluates the grid; cells are computed concurrently (WQED_THREADS caps
/// the worker count) and emitted in deterministic order.
ScanTable run_scan(const ScanSpec& spec);

/// CSV: snake_case header, 9 significant digits, NA for undefined,
/// newline-terminated. JSON: {"columns": [...], "rows": [[...]]} with null
/// for undefined.
void write_table(const ScanTable& table, OutputFormat format, std::ostream& os);

/// Figure presets fig2a..fig5b; empty optional for unknown names.
std::optional<ScanSpec> preset_scan(const std::string& name);
std::vector<std::string> preset_names();

/// Full single-point report (channel amplitudes, eta, Fano diagnostics)
/// serialized as a JSON object with stable key names. Appends warnings for
/// undefined channels to `warnings` if given.
std::string point_report(const SystemParams& params, const TwoPhotonInput& input,
                         const CoordinatePair& coords, std::ostream* warnings = nullptr);

}  // namespace wqed

#endif
