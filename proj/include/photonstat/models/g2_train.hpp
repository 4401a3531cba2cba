#pragma once

#include <Eigen/Dense>
#include <optional>

#include "photonstat/correlator/correlator.hpp"
#include "photonstat/models/levenberg_marquardt.hpp"

namespace photonstat::models {

// Pulsed coincidence train: a periodic comb of two-sided exponential peaks
// over a flat background, with the central peak scaled by (1 - 1/m),
//   C(tau) = B + N * sum_n (1 - delta_{0n}/m) exp(-|tau - n*dt| / T1).
// m is a continuous effective emitter number (m >= 1); the derived
// g2(0) = 1 - 1/m lies in [0, 1).
struct G2TrainParams {
    double background_b = 0.0;   // counts per bin
    double amplitude_n = 0.0;    // counts per bin
    double n_molecules_m = 1.0;
    double t1_ns = 1.0;
    double pulse_period_ns = 25.0;  // fixed during fits

    double g2_zero() const { return 1.0 - 1.0 / n_molecules_m; }
    void validate() const;
};

// Evaluates the train with the infinite sum truncated to
// |n| <= ceil(|tau|/dt) + n_extra, with n_extra chosen so the first dropped
// term is below 1e-16 of a unit peak (stricter than the 1e-12 contract).
double eval_g2_train(double tau_ns, const G2TrainParams& p);

// Gradient with respect to (B, N, m, T1) at fixed pulse period.
Eigen::Vector4d eval_g2_train_grad(double tau_ns, const G2TrainParams& p);

struct G2Fit {
    G2TrainParams params;
    double background_err = 0.0;
    double amplitude_err = 0.0;
    double m_err = 0.0;
    double t1_err_ns = 0.0;
    double g2_zero = 0.0;
    double g2_zero_err = 0.0;
    FitResult fit;
};

// Data-driven starting point: B from the inter-peak minimum, N and m from
// the first side peak and the central/side ratio, T1 from the half-maximum
// width of the n = 1 peak.
G2TrainParams g2_initial_guess(const corr::CorrelationHistogram& hist,
                               double pulse_period_ns);

// Weighted least squares of the train against a coincidence histogram with
// Poisson weights sigma^2 = max(counts, 1). Requires the histogram to span
// at least 3 pulse periods on each side of tau = 0.
G2Fit fit_g2(const corr::CorrelationHistogram& hist, double pulse_period_ns,
             std::optional<G2TrainParams> init = std::nullopt);

}  // namespace photonstat::models
