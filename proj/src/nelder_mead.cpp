#include "plume/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "plume/errors.hpp"

namespace plume {

void NelderMeadConfig::validate() const {
    if (!(reflection > 0) || !(expansion > 1) || !(contraction > 0) || contraction >= 1 ||
        !(shrink > 0) || shrink >= 1) {
        throw ConfigError("nelder-mead coefficients violate the standard inequalities");
    }
    if (max_iter < 0) throw ConfigError("max_iter must be non-negative");
}

NelderMeadResult nelder_mead_minimize(
    const std::function<double(std::span<const double>)>& objective,
    std::span<const double> theta0, const NelderMeadConfig& cfg) {
    cfg.validate();
    const int dim = static_cast<int>(theta0.size());

    NelderMeadResult result;
    result.theta.assign(theta0.begin(), theta0.end());
    if (cfg.max_iter == 0) {
        result.value = objective(result.theta);
        result.evaluations = 1;
        return result;
    }

    std::vector<std::vector<double>> simplex(dim + 1, result.theta);
    for (int d = 0; d < dim; ++d) {
        const double step = std::max(cfg.init_step_rel * std::abs(theta0[d]), cfg.init_step_abs);
        simplex[d + 1][d] += step;
    }
    std::vector<double> values(dim + 1);
    for (int v = 0; v <= dim; ++v) {
        values[v] = objective(simplex[v]);
        ++result.evaluations;
    }

    std::vector<int> order(dim + 1);
    auto sort_order = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return values[a] < values[b]; });
    };
    auto diameter = [&] {
        double d = 0.0;
        for (int a = 0; a <= dim; ++a) {
            for (int b = a + 1; b <= dim; ++b) {
                double s = 0.0;
                for (int q = 0; q < dim; ++q) {
                    const double e = simplex[a][q] - simplex[b][q];
                    s += e * e;
                }
                d = std::max(d, s);
            }
        }
        return std::sqrt(d);
    };

    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        sort_order();
        const int best = order[0], worst = order[dim];
        const double spread = values[worst] - values[best];
        if (diameter() < cfg.tol_simplex ||
            (std::isfinite(spread) && spread < cfg.tol_simplex * cfg.tol_simplex)) {
            result.converged = true;
            break;
        }
        result.iterations = iter + 1;

        // centroid of all but the worst vertex
        std::vector<double> centroid(dim, 0.0);
        for (int v = 0; v <= dim; ++v) {
            if (v == worst) continue;
            for (int q = 0; q < dim; ++q) centroid[q] += simplex[v][q];
        }
        for (int q = 0; q < dim; ++q) centroid[q] /= dim;

        auto blend = [&](double coef) {
            std::vector<double> p(dim);
            for (int q = 0; q < dim; ++q) {
                p[q] = centroid[q] + coef * (centroid[q] - simplex[worst][q]);
            }
            return p;
        };

        const auto reflected = blend(cfg.reflection);
        const double fr = objective(reflected);
        ++result.evaluations;

        if (fr < values[best]) {
            const auto expanded = blend(cfg.reflection * cfg.expansion);
            const double fe = objective(expanded);
            ++result.evaluations;
            if (fe < fr) {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[order[dim - 1]]) {
            simplex[worst] = reflected;
            values[worst] = fr;
            continue;
        }
        // contraction (outside when the reflection improved on the worst)
        const bool outside = fr < values[worst];
        const auto contracted = blend(outside ? cfg.reflection * cfg.contraction
                                              : -cfg.contraction);
        const double fc = objective(contracted);
        ++result.evaluations;
        if (fc < std::min(fr, values[worst])) {
            simplex[worst] = contracted;
            values[worst] = fc;
            continue;
        }
        // shrink toward the best vertex
        for (int v = 0; v <= dim; ++v) {
            if (v == best) continue;
            for (int q = 0; q < dim; ++q) {
                simplex[v][q] = simplex[best][q] + cfg.shrink * (simplex[v][q] - simplex[best][q]);
            }
            values[v] = objective(simplex[v]);
            ++result.evaluations;
        }
    }

    sort_order();
    result.theta = simplex[order[0]];
    result.value = values[order[0]];
    return result;
}

}  // namespace plume
