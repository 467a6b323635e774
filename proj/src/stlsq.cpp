#include "plume/stlsq.hpp"

#include <cmath>

#include "plume/errors.hpp"

namespace plume {

void StlsqConfig::validate() const {
    if (lambda < 0) throw ConfigError("stlsq lambda must be non-negative");
    if (alpha < 0) throw ConfigError("stlsq alpha must be non-negative");
    if (max_iter < 1) throw ConfigError("stlsq max_iter must be at least 1");
}

namespace {

Eigen::VectorXd ridge_solve(const Eigen::MatrixXd& theta, const Eigen::VectorXd& b,
                            const std::vector<int>& active, double alpha) {
    const int ka = static_cast<int>(active.size());
    Eigen::MatrixXd sub(theta.rows(), ka);
    for (int c = 0; c < ka; ++c) sub.col(c) = theta.col(active[c]);
    Eigen::MatrixXd normal = sub.transpose() * sub;
    normal.diagonal().array() += alpha;
    return normal.ldlt().solve(sub.transpose() * b);
}

}  // namespace

StlsqResult stlsq(const Eigen::MatrixXd& theta, const Eigen::VectorXd& b,
                  const StlsqConfig& cfg) {
    cfg.validate();
    if (theta.rows() != b.size()) throw DataError("stlsq: theta and b row counts differ");

    const int k = static_cast<int>(theta.cols());
    StlsqResult result;
    result.xi = Eigen::VectorXd::Zero(k);
    result.underdetermined_warning = theta.rows() < theta.cols();

    std::vector<int> active(k);
    for (int c = 0; c < k; ++c) active[c] = c;

    for (int iter = 1; iter <= cfg.max_iter; ++iter) {
        result.iterations = iter;
        const Eigen::VectorXd xi_active = ridge_solve(theta, b, active, cfg.alpha);

        std::vector<int> survivors;
        survivors.reserve(active.size());
        for (std::size_t c = 0; c < active.size(); ++c) {
            if (std::abs(xi_active[static_cast<Eigen::Index>(c)]) >= cfg.lambda) {
                survivors.push_back(active[c]);
            }
        }
        if (survivors.empty()) {
            result.xi.setZero();
            result.active.clear();
            result.empty_model = true;
            return result;
        }
        if (survivors == active) {
            result.xi.setZero();
            for (std::size_t c = 0; c < active.size(); ++c) {
                result.xi[active[c]] = xi_active[static_cast<Eigen::Index>(c)];
            }
            result.active = active;
            return result;
        }
        active = std::move(survivors);
    }

    // max_iter reached: report the last active set with a fresh solve
    const Eigen::VectorXd xi_active = ridge_solve(theta, b, active, cfg.alpha);
    result.xi.setZero();
    for (std::size_t c = 0; c < active.size(); ++c) {
        result.xi[active[c]] = xi_active[static_cast<Eigen::Index>(c)];
    }
    result.active = active;
    return result;
}

}  // namespace plume
