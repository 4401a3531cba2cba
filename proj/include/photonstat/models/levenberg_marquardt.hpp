#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace photonstat::models {

struct LmOptions {
    int max_iterations = 200;
    double rel_step_tol = 1e-10;
    double rel_cost_tol = 1e-10;
    // Damping is multiplicative on diag(J^T J). Zero means plain Gauss-Newton
    // steps until one fails, which gives one-step convergence on linear
    // problems.
    double initial_lambda = 0.0;
    double lambda_up = 10.0;
    double lambda_down = 0.1;
    double max_lambda = 1e14;
    // Relative step for finite-difference Jacobians: h_j = step * max(|p_j|, 1).
    double fd_rel_step = 1e-6;
    bool error_on_max_iterations = true;
};

struct FitResult {
    std::vector<std::string> param_names;
    Eigen::VectorXd params;
    Eigen::MatrixXd covariance;      // positive semidefinite when converged
    Eigen::VectorXd std_errors;      // sqrt of the covariance diagonal
    double residual_norm = 0.0;      // L2 norm of the weighted residual vector
    int n_iterations = 0;
    bool converged = false;
    std::vector<std::string> diagnostics;
};

// Weighted residual vector r(p); the fit minimizes |r|^2.
using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
// J_ij = d r_i / d p_j.
using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

Eigen::MatrixXd finite_difference_jacobian(const ResidualFn& residual,
                                           const Eigen::VectorXd& p,
                                           double rel_step = 1e-6);

// Damped least squares with multiplicative diagonal regularization,
// (J^T J + lambda diag(J^T J)) step = -J^T r. Converges when the relative
// step or relative cost change drops below the configured tolerance; the
// covariance comes from the damped normal equations at the solution.
// Parameters whose J^T J diagonal vanishes are reported in diagnostics as
// unidentifiable. Throws NonConvergence after max_iterations (unless
// disabled) and SingularJacobian when the Jacobian is identically zero.
FitResult levenberg_marquardt(const ResidualFn& residual,
                              const std::optional<JacobianFn>& jacobian,
                              Eigen::VectorXd init, const LmOptions& options = {});

}  // namespace photonstat::models
