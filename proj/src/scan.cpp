#include "wqed/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "wqed/fano.hpp"
#include "wqed/two_photon.hpp"

namespace wqed {

namespace {

using ordered_json = nlohmann::ordered_json;

bool is_length_axis(const std::string& name) { return name == "x" || name == "xc"; }

const std::vector<std::string> kAxisNames = {"gamma", "kappa",  "u", "delta1",
                                             "delta_a", "x", "xc", "omega"};

struct Cell {
    SystemParams params;
    TwoPhotonInput input;
    CoordinatePair coords;
};

void apply_axis(Cell& cell, const ScanSpec& spec, const std::string& name, double value) {
    const double freq = value * spec.freq_unit;
    if (name == "gamma") {
        cell.params.gamma = freq;
    } else if (name == "kappa") {
        cell.params.kappa = value;  // kappa is the unit itself; never rescaled
    } else if (name == "u") {
        cell.params.u = freq;
    } else if (name == "delta1") {
        cell.input.delta1 = freq;
    } else if (name == "delta_a") {
        cell.input.delta_a = freq;
    } else if (name == "omega") {
        cell.input.omega = freq;
    } else if (name == "x") {
        const double xc = cell.coords.center();
        const double x = value * spec.length_unit;
        cell.coords = {xc - 0.5 * x, xc + 0.5 * x};
    } else if (name == "xc") {
        const double x = cell.coords.relative();
        const double xc = value * spec.length_unit;
        cell.coords = {xc - 0.5 * x, xc + 0.5 * x};
    } else {
        throw std::invalid_argument("unknown axis parameter: " + name);
    }
}

std::vector<std::string> quantity_columns(ScanQuantity q) {
    switch (q) {
        case ScanQuantity::EtaT: return {"eta_t"};
        case ScanQuantity::EtaR: return {"eta_r"};
        case ScanQuantity::EtaPair: return {"eta_t", "eta_r"};
        case ScanQuantity::ChiAbs2: return {"chi_abs2"};
        case ScanQuantity::Q: return {"q"};
        case ScanQuantity::Epsilon: return {"epsilon"};
        case ScanQuantity::TBar: return {"t_bar_re", "t_bar_im"};
        case ScanQuantity::RBar: return {"r_bar_re", "r_bar_im"};
    }
    return {};
}

std::vector<std::optional<double>> evaluate_cell(const Cell& cell, ScanQuantity q) {
    using opt = std::optional<double>;
    try {
        switch (q) {
            case ScanQuantity::EtaT: {
                const auto eta = correlation_eta(cell.input, cell.coords, cell.params);
                return {eta.eta_t};
            }
            case ScanQuantity::EtaR: {
                const auto eta = correlation_eta(cell.input, cell.coords, cell.params);
                return {eta.eta_r};
            }
            case ScanQuantity::EtaPair: {
                const auto eta = correlation_eta(cell.input, cell.coords, cell.params);
                return {eta.eta_t, eta.eta_r};
            }
            case ScanQuantity::ChiAbs2:
                return {opt(std::norm(chi(cell.input.delta_a, cell.params)))};
            case ScanQuantity::Q:
                return {opt(fano_parameters(cell.input.delta_a, cell.params).q)};
            case ScanQuantity::Epsilon:
                return {opt(fano_parameters(cell.input.delta_a, cell.params).epsilon)};
            case ScanQuantity::TBar: {
                const auto sp = single_photon_amplitudes(cell.input.delta1 - cell.input.delta_a,
                                                         cell.params);
                return {opt(sp.t_bar.real()), opt(sp.t_bar.imag())};
            }
            case ScanQuantity::RBar: {
                const auto sp = single_photon_amplitudes(cell.input.delta1 - cell.input.delta_a,
                                                         cell.params);
                return {opt(sp.r_bar.real()), opt(sp.r_bar.imag())};
            }
        }
    } catch (const PoleError&) {
    } catch (const FanoPoleError&) {
    }
    return std::vector<std::optional<double>>(quantity_columns(q).size(), std::nullopt);
}

double axis_value(const AxisSpec& axis, int i) {
    const double t = static_cast<double>(i) / (axis.steps - 1);
    if (axis.log) {
        return axis.min * std::pow(axis.max / axis.min, t);
    }
    return axis.min + (axis.max - axis.min) * t;
}

int worker_count() {
    if (const char* env = std::getenv("WQED_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

std::optional<ScanQuantity> parse_quantity(const std::string& name) {
    if (name == "eta_t") return ScanQuantity::EtaT;
    if (name == "eta_r") return ScanQuantity::EtaR;
    if (name == "eta_pair") return ScanQuantity::EtaPair;
    if (name == "chi_abs2") return ScanQuantity::ChiAbs2;
    if (name == "q") return ScanQuantity::Q;
    if (name == "epsilon") return ScanQuantity::Epsilon;
    if (name == "t_bar") return ScanQuantity::TBar;
    if (name == "r_bar") return ScanQuantity::RBar;
    return std::nullopt;
}

void ScanSpec::validate() const {
    if (axes.empty() || axes.size() > 2) {
        throw std::invalid_argument("ScanSpec: need 1 or 2 axes");
    }
    for (const auto& axis : axes) {
        if (std::find(kAxisNames.begin(), kAxisNames.end(), axis.name) == kAxisNames.end()) {
            throw std::invalid_argument("ScanSpec: unknown axis parameter '" + axis.name + "'");
        }
        if (axis.steps < 2) throw std::invalid_argument("ScanSpec: axis steps must be >= 2");
        if (!(axis.min < axis.max)) throw std::invalid_argument("ScanSpec: axis needs min < max");
        if (axis.log && !(axis.min > 0.0)) {
            throw std::invalid_argument("ScanSpec: log axis needs min > 0");
        }
    }
    params.validate();
}

ScanTable run_scan(const ScanSpec& spec) {
    spec.validate();

    ScanTable table;
    for (const auto& axis : spec.axes) table.columns.push_back(axis.name);
    for (const auto& col : quantity_columns(spec.quantity)) table.columns.push_back(col);

    const int n0 = spec.axes[0].steps;
    const int n1 = spec.axes.size() == 2 ? spec.axes[1].steps : 1;
    const std::size_t total = static_cast<std::size_t>(n0) * n1;
    table.rows.resize(total);

    auto compute_row = [&](std::size_t r) {
        const int i0 = static_cast<int>(r) / n1;
        const int i1 = static_cast<int>(r) % n1;
        Cell cell{spec.params, spec.input, spec.coords};
        std::vector<std::optional<double>> row;
        const double v0 = axis_value(spec.axes[0], i0);
        apply_axis(cell, spec, spec.axes[0].name, v0);
        row.push_back(v0);
        if (spec.axes.size() == 2) {
            const double v1 = axis_value(spec.axes[1], i1);
            apply_axis(cell, spec, spec.axes[1].name, v1);
            row.push_back(v1);
        }
        for (auto& v : evaluate_cell(cell, spec.quantity)) row.push_back(std::move(v));
        table.rows[r] = std::move(row);
    };

    const int workers = std::min<int>(worker_count(), static_cast<int>(total));
    if (workers <= 1) {
        for (std::size_t r = 0; r < total; ++r) compute_row(r);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t r = w; r < total; r += workers) compute_row(r);
            });
        }
        for (auto& t : pool) t.join();
    }
    return table;
}

void write_table(const ScanTable& table, OutputFormat format, std::ostream& os) {
    if (format == OutputFormat::Csv) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            os << (c == 0 ? "" : ",") << table.columns[c];
        }
        os << "\n";
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c > 0) os << ",";
                os << (row[c] ? format_value(*row[c]) : "NA");
            }
            os << "\n";
        }
        return;
    }
    ordered_json j;
    j["columns"] = table.columns;
    auto rows = ordered_json::array();
    for (const auto& row : table.rows) {
        auto jr = ordered_json::array();
        for (const auto& v : row) {
            if (v) {
                jr.push_back(ordered_json::parse(format_value(*v)));
            } else {
                jr.push_back(nullptr);
            }
        }
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    os << j.dump(1) << "\n";
}

std::vector<std::string> preset_names() {
    return {"fig2a", "fig2b", "fig2c", "fig2d", "fig3a",
            "fig3b", "fig4a", "fig4b", "fig5a", "fig5b"};
}

std::optional<ScanSpec> preset_scan(const std::string& name) {
    ScanSpec spec;
    spec.params = {1.0, 1.0, 10.0, 0.0, 1.0};  // gamma, kappa, u, omega_a, v_c
    spec.input = {0.0, 0.0, 0.0};
    spec.coords = {0.0, 0.0};

    if (name == "fig2a") {
        spec.quantity = ScanQuantity::EtaT;
        spec.axes = {{"gamma", 0.2, 1.0, 3}, {"x", -10.0, 10.0, 201}};
    } else if (name == "fig2b") {
        spec.quantity = ScanQuantity::EtaT;
        spec.axes = {{"gamma", 2.0, 10.0, 3}, {"x", -10.0, 10.0, 201}};
    } else if (name == "fig2c") {
        spec.quantity = ScanQuantity::EtaT;
        spec.axes = {{"gamma", 0.1, 20.0, 200}};
    } else if (name == "fig2d") {
        spec.quantity = ScanQuantity::EtaR;
        spec.axes = {{"gamma", 1.0, 10.0, 4}, {"x", -10.0, 10.0, 201}};
    } else if (name == "fig3a" || name == "fig3b") {
        spec.quantity = name == "fig3a" ? ScanQuantity::EtaT : ScanQuantity::EtaR;
        spec.params.u = 0.0;
        spec.axes = {{"gamma", 0.5, 5.0, 4}, {"u", 0.0, 20.0, 201}};
    } else if (name == "fig4a") {
        spec.quantity = ScanQuantity::EtaPair;
        spec.params.gamma = 100.0;
        spec.params.u = 0.01;
        spec.axes = {{"delta_a", -2.0, 2.0, 401}};
    } else if (name == "fig4b") {
        spec.quantity = ScanQuantity::EtaT;
        spec.params.gamma = 100.0;
        spec.params.u = 0.01;
        spec.input.delta_a = 0.5;
        spec.axes = {{"x", -0.1, 0.1, 401}};
    } else if (name == "fig5a") {
        spec.quantity = ScanQuantity::EtaT;
        spec.input.delta_a = 0.5;
        spec.axes = {{"gamma", 1.0, 1000.0, 61, true}, {"u", 1e-4, 1.0, 81, true}};
    } else if (name == "fig5b") {
        spec.quantity = ScanQuantity::EtaT;
        spec.input.delta_a = 0.5;
        spec.axes = {{"gamma", 10.0, 1000.0, 3, true}, {"u", 1e-5, 0.1, 200, true}};
    } else {
        return std::nullopt;
    }
    return spec;
}

std::string point_report(const SystemParams& params, const TwoPhotonInput& input,
                         const CoordinatePair& coords, std::ostream* warnings) {
    const auto ch = channel_amplitudes(input, coords, params);
    const auto eta = correlation_eta(input, coords, params);

    ordered_json j;
    j["params"] = {{"gamma", params.gamma}, {"kappa", params.kappa}, {"u", params.u},
                   {"omega_a", params.omega_a}, {"v_c", params.v_c}};
    j["input"] = {{"delta1", input.delta1}, {"delta2", input.delta2()},
                  {"delta_a", input.delta_a}, {"omega", input.omega}};
    j["coords"] = {{"x1", coords.x1}, {"x2", coords.x2},
                   {"x", coords.relative()}, {"xc", coords.center()}};

    auto triple = [](const AmplitudeTriple& t) {
        return ordered_json{{"plane_re", t.plane.real()}, {"plane_im", t.plane.imag()},
                            {"bound_re", t.bound.real()}, {"bound_im", t.bound.imag()},
                            {"total_re", t.total.real()}, {"total_im", t.total.imag()}};
    };
    j["channels"] = {{"tt", triple(ch.tt)}, {"rr", triple(ch.rr)}, {"rt", triple(ch.rt)}};

    if (eta.eta_t) {
        j["eta_t"] = *eta.eta_t;
    } else {
        j["eta_t"] = nullptr;
        if (warnings) *warnings << "warning: eta_t undefined (plane-wave tt part vanishes)\n";
    }
    if (eta.eta_r) {
        j["eta_r"] = *eta.eta_r;
    } else {
        j["eta_r"] = nullptr;
        if (warnings) *warnings << "warning: eta_r undefined (plane-wave rr part vanishes)\n";
    }

    const complex chi_val = chi(input.delta_a, params);
    j["chi_re"] = chi_val.real();
    j["chi_im"] = chi_val.imag();
    j["chi_abs2"] = std::norm(chi_val);
    try {
        const auto shape = fano_parameters(input.delta_a, params);
        j["q"] = shape.q;
        j["epsilon"] = shape.epsilon;
        j["eta_fano_approx"] = fano_eta_approx(shape);
    } catch (const FanoPoleError&) {
        j["q"] = nullptr;
        j["epsilon"] = nullptr;
        j["eta_fano_approx"] = nullptr;
    }
    return j.dump(1);
}

}  // namespace wqed
