#include "wqed/fano.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace wqed {

complex chi(double delta_a, const SystemParams& params) {
    params.validate();
    const complex cavity(delta_a + params.u, -0.5 * (params.kappa + params.gamma));
    const complex single(delta_a, -0.5 * params.kappa);
    if (cavity == complex(0.0, 0.0) || single == complex(0.0, 0.0)) {
        throw PoleError("chi: denominator (delta_a + u - i(kappa+gamma)/2)(delta_a - i kappa/2)^2 == 0");
    }
    const double half_gamma = 0.5 * params.gamma;
    return 1.0 + half_gamma * half_gamma * params.u / (cavity * single * single);
}

FanoShape fano_parameters(double delta_a, const SystemParams& params) {
    params.validate();
    const double det = 2.0 * delta_a * delta_a - params.kappa * params.gamma;
    if (delta_a == 0.0) throw FanoPoleError("fano_parameters: delta_a == 0");
    if (det == 0.0) throw FanoPoleError("fano_parameters: 2 delta_a^2 == kappa gamma");

    FanoShape shape;
    shape.q = params.u * params.gamma * params.gamma / (2.0 * delta_a * det);
    shape.epsilon = params.gamma * (4.0 * delta_a * delta_a - params.kappa * params.kappa) /
                    (4.0 * delta_a * det);
    shape.chi = chi(delta_a, params);
    return shape;
}

double fano_eta_approx(const FanoShape& shape) {
    const double one_plus_q = 1.0 + shape.q;
    return (shape.epsilon * shape.epsilon + one_plus_q * one_plus_q) /
           (1.0 + shape.epsilon * shape.epsilon);
}

OptimalConditions optimal_conditions(const SystemParams& params) {
    params.validate();
    if (!(params.gamma > 0.0) || !(params.kappa > 0.0)) {
        throw std::invalid_argument("optimal_conditions: gamma and kappa must be > 0");
    }
    return {0.5 * params.kappa, params.kappa * params.kappa / params.gamma};
}

double eta_min_estimate(const SystemParams& params) {
    const double ratio = params.u / params.kappa;
    return ratio * ratio;
}

namespace {

double eta_exact(const SystemParams& base, double delta_a, double u) {
    SystemParams p = base;
    p.u = u;
    return std::norm(chi(delta_a, p));
}

// Golden-section minimization of a unimodal 1-d slice; deterministic.
double golden_min(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

OptimumResult numeric_optimum_search(const SystemParams& params, SearchRange delta_a_range,
                                     SearchRange u_range, double tolerance) {
    params.validate();
    if (!(tolerance > 0.0)) throw std::invalid_argument("numeric_optimum_search: tolerance must be > 0");
    if (delta_a_range.min > delta_a_range.max || u_range.min > u_range.max) {
        throw std::invalid_argument("numeric_optimum_search: empty search range");
    }

    const bool da_free = delta_a_range.max > delta_a_range.min;
    const bool u_free = u_range.max > u_range.min;
    const int n_grid = 65;

    auto axis_values = [n_grid](SearchRange r) {
        std::vector<double> v;
        if (r.max > r.min) {
            for (int i = 0; i < n_grid; ++i) {
                v.push_back(r.min + (r.max - r.min) * i / (n_grid - 1));
            }
        } else {
            v.push_back(r.min);
        }
        return v;
    };

    const auto da_values = axis_values(delta_a_range);
    const auto u_values = axis_values(u_range);

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0, best_j = 0;
    for (std::size_t i = 0; i < da_values.size(); ++i) {
        for (std::size_t j = 0; j < u_values.size(); ++j) {
            const double eta = eta_exact(params, da_values[i], u_values[j]);
            if (eta < best) {
                best = eta;
                best_i = i;
                best_j = j;
            }
        }
    }

    if ((da_free && (best_i == 0 || best_i + 1 == da_values.size())) ||
        (u_free && (best_j == 0 || best_j + 1 == u_values.size()))) {
        throw NoMinimumInRange("numeric_optimum_search: grid minimum on range boundary");
    }

    // Coordinate descent with golden-section refinement around the grid minimum.
    double da = da_values[best_i];
    double u = u_values[best_j];
    const double da_step = da_free ? da_values[1] - da_values[0] : 0.0;
    const double u_step = u_free ? u_values[1] - u_values[0] : 0.0;
    for (int sweep = 0; sweep < 8; ++sweep) {
        if (da_free) {
            const double lo = std::max(delta_a_range.min, da - da_step);
            const double hi = std::min(delta_a_range.max, da + da_step);
            da = golden_min([&](double v) { return eta_exact(params, v, u); }, lo, hi, tolerance);
        }
        if (u_free) {
            const double lo = std::max(u_range.min, u - u_step);
            const double hi = std::min(u_range.max, u + u_step);
            u = golden_min([&](double v) { return eta_exact(params, da, v); }, lo, hi, tolerance);
        }
        if (!da_free && !u_free) break;
    }

    return {da, u, eta_exact(params, da, u)};
}

}  // namespace wqed
