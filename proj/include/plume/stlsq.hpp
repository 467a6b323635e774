#pragma once

#include <Eigen/Dense>
#include <vector>

namespace plume {

struct StlsqConfig {
    double lambda = 1e-3;  // hard threshold on coefficient magnitude
    double alpha = 1e-6;   // ridge weight
    int max_iter = 100;

    void validate() const;
};

struct StlsqResult {
    Eigen::VectorXd xi;       // exact zeros off the active set
    std::vector<int> active;  // column indices, ascending
    int iterations = 0;
    bool empty_model = false;           // every column eliminated
    bool underdetermined_warning = false;  // fewer rows than columns
};

// Sequentially thresholded least squares: ridge-solve on the active columns,
// zero out coefficients below lambda, repeat until the active set is stable.
StlsqResult stlsq(const Eigen::MatrixXd& theta, const Eigen::VectorXd& b,
                  const StlsqConfig& cfg);

}  // namespace plume
