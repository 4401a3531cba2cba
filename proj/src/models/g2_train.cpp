#include "photonstat/models/g2_train.hpp"

#include <algorithm>
#include <cmath>

#include "photonstat/core/errors.hpp"

namespace photonstat::models {

namespace {

// exp(-n_extra * dt / T1) < 1e-16
int tail_terms(double t1_ns, double dt_ns) {
    return int(std::floor(t1_ns / dt_ns * 36.8414)) + 1;
}

int span_terms(double tau_ns, const G2TrainParams& p) {
    const double dt = p.pulse_period_ns;
    return int(std::ceil(std::abs(tau_ns) / dt)) + tail_terms(p.t1_ns, dt);
}

}  // namespace

void G2TrainParams::validate() const {
    if (!(amplitude_n >= 0.0) || !(background_b >= 0.0)) {
        raise(errc::invalid_config, "g2 train: B and N must be >= 0");
    }
    if (!(n_molecules_m >= 1.0)) {
        raise(errc::invalid_config, "g2 train: m must be >= 1");
    }
    if (!(t1_ns > 0.0) || !(pulse_period_ns > 0.0)) {
        raise(errc::invalid_config, "g2 train: T1 and pulse period must be > 0");
    }
}

double eval_g2_train(double tau_ns, const G2TrainParams& p) {
    const int span = span_terms(tau_ns, p);
    double sum = 0.0;
    for (int n = -span; n <= span; ++n) {
        const double x = std::abs(tau_ns - n * p.pulse_period_ns) / p.t1_ns;
        const double weight = (n == 0) ? 1.0 - 1.0 / p.n_molecules_m : 1.0;
        sum += weight * std::exp(-x);
    }
    return p.background_b + p.amplitude_n * sum;
}

Eigen::Vector4d eval_g2_train_grad(double tau_ns, const G2TrainParams& p) {
    const int span = span_terms(tau_ns, p);
    double sum = 0.0;
    double sum_t1 = 0.0;
    for (int n = -span; n <= span; ++n) {
        const double dist = std::abs(tau_ns - n * p.pulse_period_ns);
        const double term = std::exp(-dist / p.t1_ns);
        const double weight = (n == 0) ? 1.0 - 1.0 / p.n_molecules_m : 1.0;
        sum += weight * term;
        sum_t1 += weight * term * dist;
    }
    Eigen::Vector4d grad;
    grad[0] = 1.0;                                                       // dB
    grad[1] = sum;                                                       // dN
    grad[2] = p.amplitude_n * std::exp(-std::abs(tau_ns) / p.t1_ns) /
              (p.n_molecules_m * p.n_molecules_m);                       // dm
    grad[3] = p.amplitude_n * sum_t1 / (p.t1_ns * p.t1_ns);              // dT1
    return grad;
}

G2TrainParams g2_initial_guess(const corr::CorrelationHistogram& hist,
                               double pulse_period_ns) {
    const auto& w = hist.window;
    const double dt_ps = pulse_period_ns * 1e3;

    auto nearest_peak_dist_ps = [&](double tau_ps) {
        const double n = std::round(tau_ps / dt_ps);
        return std::abs(tau_ps - n * dt_ps);
    };
    auto counts_at = [&](double tau_ps) -> double {
        const int k = int(std::floor((tau_ps - w.tau_min_ps) / w.bin_width_ps));
        if (k < 0 || k >= w.nbins) return 0.0;
        return double(hist.counts[std::size_t(k)]);
    };

    // Background: minimum over bins at least a quarter period from any peak.
    double background = std::numeric_limits<double>::infinity();
    for (int k = 0; k < w.nbins; ++k) {
        const double tau = w.bin_center_ps(k);
        if (nearest_peak_dist_ps(tau) > 0.25 * dt_ps) {
            background = std::min(background, double(hist.counts[std::size_t(k)]));
        }
    }
    if (!std::isfinite(background)) background = 0.0;

    const double side = 0.5 * (counts_at(dt_ps) + counts_at(-dt_ps));
    const double center = counts_at(0.0);
    const double amplitude = std::max(side - background, 1e-9);

    double ratio = (side - background) > 0.0
                       ? (center - background) / (side - background)
                       : 0.0;
    ratio = std::clamp(ratio, 0.0, 1.0 - 1e-9);
    const double m = std::clamp(1.0 / (1.0 - ratio), 1.0, 1e6);

    // T1 from the half-maximum width of the n = 1 peak.
    double t1_ns = pulse_period_ns / 6.0;
    if (side - background > 0.0) {
        const double half = background + 0.5 * (side - background);
        double left = dt_ps, right = dt_ps;
        while (left > 0.5 * dt_ps && counts_at(left - w.bin_width_ps) >= half) {
            left -= w.bin_width_ps;
        }
        while (right < 1.5 * dt_ps && counts_at(right + w.bin_width_ps) >= half) {
            right += w.bin_width_ps;
        }
        const double width_ps = (right - left) + w.bin_width_ps;
        // Two-sided exponential: FWHM = 2 ln 2 * T1.
        t1_ns = std::clamp(width_ps / (2.0 * 0.6931471805599453) * 1e-3,
                           w.bin_width_ps * 1e-3, pulse_period_ns);
    }

    G2TrainParams init;
    init.background_b = background;
    init.amplitude_n = amplitude;
    init.n_molecules_m = m;
    init.t1_ns = t1_ns;
    init.pulse_period_ns = pulse_period_ns;
    return init;
}

G2Fit fit_g2(const corr::CorrelationHistogram& hist, double pulse_period_ns,
             std::optional<G2TrainParams> init) {
    const auto& w = hist.window;
    if (w.nbins <= 0 || hist.counts.empty()) {
        raise(errc::degenerate_data, "fit_g2: empty histogram");
    }
    const double span_ps = 3.0 * pulse_period_ns * 1e3;
    if (w.tau_min_ps > -span_ps || w.tau_max_ps() < span_ps) {
        raise(errc::degenerate_data,
              "fit_g2: histogram must span at least 3 pulse periods on each side of tau = 0");
    }
    const bool all_zero =
        std::all_of(hist.counts.begin(), hist.counts.end(),
                    [](std::uint64_t c) { return c == 0; });
    if (all_zero) raise(errc::degenerate_data, "fit_g2: all-zero histogram");

    const G2TrainParams start = init ? *init : g2_initial_guess(hist, pulse_period_ns);

    const std::size_t nbins = hist.counts.size();
    Eigen::VectorXd tau_ns(nbins), counts(nbins), inv_sigma(nbins);
    for (std::size_t k = 0; k < nbins; ++k) {
        tau_ns[Eigen::Index(k)] = w.bin_center_ps(int(k)) * 1e-3;
        counts[Eigen::Index(k)] = double(hist.counts[k]);
        inv_sigma[Eigen::Index(k)] = 1.0 / std::sqrt(std::max(counts[Eigen::Index(k)], 1.0));
    }

    auto to_model = [&](const Eigen::VectorXd& p) {
        G2TrainParams q;
        q.background_b = p[0];
        q.amplitude_n = p[1];
        q.n_molecules_m = p[2];
        q.t1_ns = p[3];
        q.pulse_period_ns = pulse_period_ns;
        return q;
    };

    ResidualFn residual = [&](const Eigen::VectorXd& p) {
        const G2TrainParams q = to_model(p);
        Eigen::VectorXd r(tau_ns.size());
        for (Eigen::Index i = 0; i < tau_ns.size(); ++i) {
            r[i] = (eval_g2_train(tau_ns[i], q) - counts[i]) * inv_sigma[i];
        }
        return r;
    };
    JacobianFn jacobian = [&](const Eigen::VectorXd& p) {
        const G2TrainParams q = to_model(p);
        Eigen::MatrixXd jac(tau_ns.size(), 4);
        for (Eigen::Index i = 0; i < tau_ns.size(); ++i) {
            jac.row(i) = (eval_g2_train_grad(tau_ns[i], q) * inv_sigma[i]).transpose();
        }
        return jac;
    };

    Eigen::VectorXd p0(4);
    p0 << start.background_b, start.amplitude_n, start.n_molecules_m, start.t1_ns;

    FitResult fit = levenberg_marquardt(residual, jacobian, p0);
    fit.param_names = {"background_b", "amplitude_n", "n_molecules_m", "t1_ns"};

    G2Fit out;
    out.params = to_model(fit.params);
    out.background_err = fit.std_errors[0];
    out.amplitude_err = fit.std_errors[1];
    out.m_err = fit.std_errors[2];
    out.t1_err_ns = fit.std_errors[3];
    const double m = out.params.n_molecules_m;
    out.g2_zero = out.params.g2_zero();
    out.g2_zero_err = out.m_err / (m * m);
    if (out.params.amplitude_n * 1e6 < out.params.background_b ||
        out.params.amplitude_n <= 0.0) {
        fit.diagnostics.push_back("amplitude consistent with zero: m is unidentifiable");
    }
    out.fit = std::move(fit);
    return out;
}

}  // namespace photonstat::models
