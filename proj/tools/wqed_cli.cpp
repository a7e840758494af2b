#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wqed/config.hpp"
#include "wqed/fano.hpp"
#include "wqed/scan.hpp"
#include "wqed/validate.hpp"

namespace {

using wqed::complex;

struct CommonOpts {
    double gamma = 1.0;
    double kappa = 1.0;
    double u = 0.0;
    double delta1 = 0.0;
    double delta_a = 0.0;
    double x = 0.0;
    double xc = 0.0;
    double omega = 0.0;
    bool absolute_units = false;
    std::string config_path;
};

void add_common(CLI::App* app, CommonOpts& o) {
    app->add_option("--gamma", o.gamma, "waveguide-cavity decay rate Gamma");
    app->add_option("--kappa", o.kappa, "intrinsic cavity dissipation kappa");
    app->add_option("--u", o.u, "Kerr interaction strength U");
    app->add_option("--delta1", o.delta1, "photon detuning Delta_1 (Delta_2 = -Delta_1)");
    app->add_option("--delta-a", o.delta_a, "cavity detuning Delta_a");
    app->add_option("--x", o.x, "relative detector coordinate x = x2 - x1");
    app->add_option("--xc", o.xc, "center-of-mass detector coordinate");
    app->add_option("--omega", o.omega, "total two-photon energy (phase only)");
    app->add_flag("--absolute-units", o.absolute_units,
                  "interpret frequencies as absolute instead of units of kappa");
    app->add_option("--config", o.config_path, "flat key = value config file");
}

// Precedence: command line > config file > defaults.
void merge_config(const CLI::App* app, CommonOpts& o) {
    if (o.config_path.empty()) return;
    const auto cfg = wqed::load_config(o.config_path);
    auto pick = [&](const char* flag, const char* key, double& slot) {
        if (app->count(flag) == 0) {
            if (const auto v = wqed::config_double(cfg, key)) slot = *v;
        }
    };
    pick("--gamma", "gamma", o.gamma);
    pick("--kappa", "kappa", o.kappa);
    pick("--u", "u", o.u);
    pick("--delta1", "delta1", o.delta1);
    pick("--delta-a", "delta_a", o.delta_a);
    pick("--x", "x", o.x);
    pick("--xc", "xc", o.xc);
    pick("--omega", "omega", o.omega);
    if (app->count("--absolute-units") == 0 && cfg.count("absolute_units")) {
        o.absolute_units = cfg.at("absolute_units") == "true" || cfg.at("absolute_units") == "1";
    }
}

struct ResolvedPoint {
    wqed::SystemParams params;
    wqed::TwoPhotonInput input;
    wqed::CoordinatePair coords;
    double freq_unit = 1.0;
    double length_unit = 1.0;
};

ResolvedPoint resolve(const CommonOpts& o) {
    ResolvedPoint r;
    r.params.kappa = o.kappa;
    r.params.v_c = 1.0;
    r.freq_unit = o.absolute_units ? 1.0 : o.kappa;
    r.length_unit = o.absolute_units ? 1.0 : r.params.v_c / o.kappa;
    r.params.gamma = o.gamma * r.freq_unit;
    r.params.u = o.u * r.freq_unit;
    r.input.delta1 = o.delta1 * r.freq_unit;
    r.input.delta_a = o.delta_a * r.freq_unit;
    r.input.omega = o.omega * r.freq_unit;
    const double x = o.x * r.length_unit;
    const double xc = o.xc * r.length_unit;
    r.coords = {xc - 0.5 * x, xc + 0.5 * x};
    return r;
}

std::optional<wqed::AxisSpec> parse_axis(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() < 4 || parts.size() > 5) return std::nullopt;
    wqed::AxisSpec axis;
    axis.name = parts[0];
    try {
        axis.min = std::stod(parts[1]);
        axis.max = std::stod(parts[2]);
        axis.steps = std::stoi(parts[3]);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (parts.size() == 5) {
        if (parts[4] != "log" && parts[4] != "linear") return std::nullopt;
        axis.log = parts[4] == "log";
    }
    return axis;
}

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot open output file: " << out_path << "\n";
        return 2;
    }
    out << text;
    return 0;
}

int run_point(const CommonOpts& opts, const std::string& out_path) {
    const auto r = resolve(opts);
    try {
        const std::string report = wqed::point_report(r.params, r.input, r.coords, &std::cerr);
        return emit(report + "\n", out_path);
    } catch (const wqed::PoleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_scan_cmd(const CommonOpts& opts, const std::string& preset, const std::string& quantity,
                 const std::vector<std::string>& axis_texts, const std::string& out_path,
                 const std::string& format_name) {
    wqed::OutputFormat format = wqed::OutputFormat::Csv;
    if (format_name == "json") {
        format = wqed::OutputFormat::Json;
    } else if (format_name != "csv") {
        std::cerr << "error: unknown format '" << format_name << "'\n";
        return 2;
    }

    wqed::ScanSpec spec;
    if (!preset.empty()) {
        const auto p = wqed::preset_scan(preset);
        if (!p) {
            std::cerr << "error: unknown preset '" << preset << "'\n";
            return 2;
        }
        spec = *p;
    } else {
        const auto q = wqed::parse_quantity(quantity);
        if (!q) {
            std::cerr << "error: unknown or missing quantity '" << quantity << "'\n";
            return 2;
        }
        spec.quantity = *q;
        for (const auto& text : axis_texts) {
            const auto axis = parse_axis(text);
            if (!axis) {
                std::cerr << "error: bad axis spec '" << text
                          << "' (expected name:min:max:steps[:log])\n";
                return 2;
            }
            spec.axes.push_back(*axis);
        }
        const auto r = resolve(opts);
        spec.params = r.params;
        spec.input = r.input;
        spec.coords = r.coords;
        spec.freq_unit = r.freq_unit;
        spec.length_unit = r.length_unit;
    }

    try {
        const auto table = wqed::run_scan(spec);
        std::ostringstream os;
        wqed::write_table(table, format, os);
        return emit(os.str(), out_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_validate(const std::string& mode, const std::string& config_path) {
    std::map<std::string, std::string> cfg;
    try {
        if (!config_path.empty()) cfg = wqed::load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::vector<wqed::CheckResult> results;
    try {
        if (mode == "residuals") {
            wqed::ResidualCheckConfig rc;
            if (const auto v = wqed::config_double(cfg, "n_param_sets")) rc.n_param_sets = static_cast<int>(*v);
            if (const auto v = wqed::config_double(cfg, "n_sample_points")) rc.n_sample_points = static_cast<int>(*v);
            if (const auto v = wqed::config_double(cfg, "tolerance")) rc.tolerance = *v;
            if (const auto v = wqed::config_double(cfg, "seed")) rc.seed = static_cast<unsigned>(*v);
            results = wqed::validate_residuals(rc);
        } else if (mode == "fano") {
            wqed::FanoCheckConfig fc;
            if (const auto v = wqed::config_double(cfg, "n_param_sets")) fc.n_param_sets = static_cast<int>(*v);
            if (const auto v = wqed::config_double(cfg, "seed")) fc.seed = static_cast<unsigned>(*v);
            results = wqed::validate_fano(fc);
        } else if (mode == "oracle") {
            wqed::LatticeModel model;
            if (const auto v = wqed::config_double(cfg, "n_sites")) model.n_sites = static_cast<int>(*v);
            if (const auto v = wqed::config_double(cfg, "coupling")) model.coupling = *v;
            if (const auto v = wqed::config_double(cfg, "kappa")) model.kappa = *v;
            if (const auto v = wqed::config_double(cfg, "packet_width")) model.packet_width = *v;
            if (const auto v = wqed::config_double(cfg, "packet_offset")) model.packet_offset = *v;
            if (const auto v = wqed::config_double(cfg, "dt")) model.dt = *v;
            if (const auto v = wqed::config_double(cfg, "t_max")) model.t_max = *v;
            model.validate(&std::cerr);
            results = wqed::validate_oracle(model);
        } else {
            std::cerr << "error: unknown validate mode '" << mode
                      << "' (expected residuals|oracle|fano)\n";
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    bool all_pass = true;
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " measured=" << r.measured
                  << (r.direction == '<' ? " threshold<" : " threshold>") << r.threshold << "\n";
    }
    return all_pass ? 0 : 1;
}

int run_optimal(const CommonOpts& opts, const std::string& out_path) {
    const auto r = resolve(opts);
    try {
        const auto closed = wqed::optimal_conditions(r.params);
        wqed::SystemParams at_optimum = r.params;
        at_optimum.u = closed.u_star;

        nlohmann::ordered_json j;
        j["delta_a_star"] = closed.delta_a_star;
        j["u_star"] = closed.u_star;
        j["eta_min_estimate"] = wqed::eta_min_estimate(at_optimum);

        const double k = r.params.kappa;
        const auto numeric = wqed::numeric_optimum_search(
            r.params, {0.05 * k, 1.5 * k}, {0.1 * closed.u_star, 10.0 * closed.u_star}, 1e-9 * k);
        j["numeric"] = {{"delta_a", numeric.delta_a}, {"u", numeric.u}, {"eta", numeric.eta}};
        return emit(j.dump(1) + "\n", out_path);
    } catch (const wqed::NoMinimumInRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-photon transport through a lossy Kerr cavity side-coupled to a 1D waveguide"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string out_path;
    std::string format_name = "csv";
    std::string preset;
    std::string quantity;
    std::vector<std::string> axis_texts;
    std::string validate_mode;

    auto* point = app.add_subcommand("point", "evaluate one configuration, JSON report");
    add_common(point, opts);
    point->add_option("--out", out_path, "output path (default stdout)");

    auto* scan = app.add_subcommand("scan", "parameter sweep, CSV/JSON rows");
    add_common(scan, opts);
    scan->add_option("--preset", preset, "figure preset (fig2a..fig5b)");
    scan->add_option("--quantity", quantity,
                     "eta_t|eta_r|eta_pair|chi_abs2|q|epsilon|t_bar|r_bar");
    scan->add_option("--axis", axis_texts, "swept axis, name:min:max:steps[:log] (repeatable)")
        ->expected(-1);
    scan->add_option("--out", out_path, "output path (default stdout)");
    scan->add_option("--format", format_name, "csv|json");

    auto* validate = app.add_subcommand("validate", "run verification suites");
    validate->add_option("mode", validate_mode, "residuals|oracle|fano")->required();
    validate->add_option("--config", opts.config_path, "flat key = value config file");

    auto* optimal = app.add_subcommand("optimal", "optimal weak-nonlinearity conditions");
    add_common(optimal, opts);
    optimal->add_option("--out", out_path, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (point->parsed()) {
            merge_config(point, opts);
            return run_point(opts, out_path);
        }
        if (scan->parsed()) {
            merge_config(scan, opts);
            return run_scan_cmd(opts, preset, quantity, axis_texts, out_path, format_name);
        }
        if (validate->parsed()) {
            return run_validate(validate_mode, opts.config_path);
        }
        if (optimal->parsed()) {
            merge_config(optimal, opts);
            return run_optimal(opts, out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
