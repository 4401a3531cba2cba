#include "photonstat/models/levenberg_marquardt.hpp"

#include <cmath>

#include "photonstat/core/errors.hpp"

namespace photonstat::models {

Eigen::MatrixXd finite_difference_jacobian(const ResidualFn& residual,
                                           const Eigen::VectorXd& p, double rel_step) {
    const Eigen::Index n = p.size();
    Eigen::MatrixXd jac;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double h = rel_step * std::max(std::abs(p[j]), 1.0);
        Eigen::VectorXd lo = p, hi = p;
        lo[j] -= h;
        hi[j] += h;
        const Eigen::VectorXd r_hi = residual(hi);
        const Eigen::VectorXd r_lo = residual(lo);
        if (jac.size() == 0) jac.resize(r_hi.size(), n);
        jac.col(j) = (r_hi - r_lo) / (2.0 * h);
    }
    return jac;
}

FitResult levenberg_marquardt(const ResidualFn& residual,
                              const std::optional<JacobianFn>& jacobian,
                              Eigen::VectorXd init, const LmOptions& options) {
    const Eigen::Index n = init.size();
    FitResult result;
    result.params = std::move(init);

    auto eval_jacobian = [&](const Eigen::VectorXd& p) {
        return jacobian ? (*jacobian)(p)
                        : finite_difference_jacobian(residual, p, options.fd_rel_step);
    };

    Eigen::VectorXd r = residual(result.params);
    double cost = r.squaredNorm();
    double lambda = options.initial_lambda;
    bool flagged_unidentifiable = false;

    Eigen::MatrixXd jac = eval_jacobian(result.params);
    Eigen::MatrixXd hessian = jac.transpose() * jac;
    Eigen::VectorXd gradient = jac.transpose() * r;

    auto damped_diag = [&](const Eigen::MatrixXd& h) {
        const double max_diag = h.diagonal().maxCoeff();
        if (!(max_diag > 0.0)) {
            raise(errc::singular_jacobian, "Jacobian is identically zero at the current point");
        }
        Eigen::VectorXd d = h.diagonal();
        const double floor = 1e-12 * max_diag;
        for (Eigen::Index i = 0; i < d.size(); ++i) {
            if (d[i] < floor) {
                d[i] = floor;
                if (!flagged_unidentifiable) {
                    result.diagnostics.push_back(
                        "parameter " + std::to_string(i) +
                        " is unidentifiable (vanishing curvature); value held near its start");
                    flagged_unidentifiable = true;
                }
            }
        }
        return d;
    };

    for (result.n_iterations = 0; result.n_iterations < options.max_iterations;) {
        const Eigen::VectorXd diag = damped_diag(hessian);

        // Inner loop: raise the damping until a step lowers the cost.
        bool accepted = false;
        while (true) {
            Eigen::MatrixXd system = hessian;
            system.diagonal() += lambda * diag;
            Eigen::LDLT<Eigen::MatrixXd> solver(system);
            Eigen::VectorXd step;
            bool solvable = solver.info() == Eigen::Success;
            if (solvable) {
                step = solver.solve(-gradient);
                solvable = step.allFinite();
            }
            if (solvable) {
                const Eigen::VectorXd trial = result.params + step;
                const Eigen::VectorXd r_trial = residual(trial);
                const double trial_cost = r_trial.squaredNorm();
                if (std::isfinite(trial_cost) && trial_cost <= cost) {
                    ++result.n_iterations;
                    const double cost_drop = cost - trial_cost;
                    double max_rel_step = 0.0;
                    for (Eigen::Index i = 0; i < n; ++i) {
                        max_rel_step = std::max(
                            max_rel_step, std::abs(step[i]) / (std::abs(result.params[i]) + 1e-30));
                    }
                    result.params = trial;
                    r = r_trial;
                    cost = trial_cost;
                    lambda = (lambda == 0.0) ? 0.0 : std::max(lambda * options.lambda_down, 1e-14);
                    accepted = true;
                    // A tiny cost drop only signals convergence when the step
                    // was lightly damped; under heavy damping steps are short
                    // no matter how far the minimum is.
                    if (cost <= 1e-300 || max_rel_step < options.rel_step_tol ||
                        (lambda <= 1e-6 &&
                         cost_drop <= options.rel_cost_tol * std::max(cost, 1e-300))) {
                        result.converged = true;
                    }
                    break;
                }
            }
            lambda = (lambda == 0.0) ? 1e-4 : lambda * options.lambda_up;
            if (lambda > options.max_lambda) break;
        }

        if (!accepted) {
            // No downhill step exists at any damping: stationary point.
            result.converged = true;
            result.diagnostics.push_back("stopped at damping limit (no downhill step found)");
        }
        if (result.converged) break;
        jac = eval_jacobian(result.params);
        hessian = jac.transpose() * jac;
        gradient = jac.transpose() * r;
    }

    if (!result.converged) {
        if (options.error_on_max_iterations) {
            raise(errc::non_convergence,
                  "no convergence after " + std::to_string(result.n_iterations) + " iterations");
        }
        result.diagnostics.push_back("max iterations reached before convergence");
    }

    // Covariance from the damped normal equations at the solution.
    jac = eval_jacobian(result.params);
    hessian = jac.transpose() * jac;
    Eigen::MatrixXd system = hessian;
    system.diagonal() += lambda * damped_diag(hessian);
    Eigen::LDLT<Eigen::MatrixXd> solver(system);
    if (solver.info() == Eigen::Success) {
        result.covariance = solver.solve(Eigen::MatrixXd::Identity(n, n));
    } else {
        result.covariance = Eigen::MatrixXd::Constant(n, n, std::nan(""));
        result.diagnostics.push_back("covariance unavailable (singular normal equations)");
    }
    result.std_errors.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double v = result.covariance(i, i);
        result.std_errors[i] = v >= 0.0 ? std::sqrt(v) : std::nan("");
    }
    result.residual_norm = std::sqrt(cost);
    return result;
}

}  // namespace photonstat::models
