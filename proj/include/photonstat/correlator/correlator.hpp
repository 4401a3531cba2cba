#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "photonstat/core/timetag.hpp"

namespace photonstat::corr {

// Binning grid for the coincidence histogram. Bins are half-open:
// bin k covers [tau_min + k*w, tau_min + (k+1)*w). The delay convention is
// tau = t_b - t_a (channel 1 minus channel 0). Bin width may be non-integer
// in ps (the hardware's 106.9 ps); bin indices are computed by
// floor((tau - tau_min)/w) in double precision, valid for |tau| < 2^53 ps.
struct CorrelationWindow {
    double bin_width_ps = 0.0;
    double tau_min_ps = 0.0;
    int nbins = 0;

    // Symmetric window covering at least +-half_width_ps with an even number
    // of bins, so tau_min = -(nbins/2)*bin_width exactly.
    static CorrelationWindow symmetric(double bin_width_ps, double half_width_ps);

    double tau_max_ps() const { return tau_min_ps + bin_width_ps * nbins; }
    double bin_center_ps(int k) const { return tau_min_ps + (k + 0.5) * bin_width_ps; }

    // Bin index for a delay in integer ps, or -1 when outside the window.
    int bin_index(std::int64_t tau_ps) const {
        const double x = (double(tau_ps) - tau_min_ps) / bin_width_ps;
        if (x < 0.0) return -1;
        const int k = int(x);
        return k < nbins ? k : -1;
    }

    void validate() const;  // throws EmptyWindow
};

struct CorrelationHistogram {
    CorrelationWindow window;
    std::vector<std::uint64_t> counts;
    std::uint64_t total_starts = 0;  // clicks contributing from channel 0
    std::uint64_t total_stops = 0;   // clicks contributing from channel 1
    core::AcquisitionMeta acquisition;
};

// Coincidence histogram between two sorted click-time sequences: counts[k] is
// the number of pairs (t_a, t_b) whose delay t_b - t_a falls in bin k. Full
// cross-correlation (every in-window pair), swept with two monotone pointers
// in O(N_a + N_b + P). The default entry point partitions the sweep across
// OpenMP threads; results are identical to the serial reference for any
// thread count. Throws UnsortedInput on unsorted input.
CorrelationHistogram cross_correlate(std::span<const std::uint64_t> a,
                                     std::span<const std::uint64_t> b,
                                     const CorrelationWindow& window);

// Single-threaded reference sweep, kept for testing and benchmarking.
CorrelationHistogram cross_correlate_reference(std::span<const std::uint64_t> a,
                                               std::span<const std::uint64_t> b,
                                               const CorrelationWindow& window);

// Convenience: split a two-channel stream and correlate channel 0 vs 1,
// propagating the acquisition metadata.
CorrelationHistogram cross_correlate(const core::TimeTagStream& stream,
                                     const CorrelationWindow& window);

// Per-bin counts divided by the uncorrelated-pair expectation
// rate_a * rate_b * duration * bin_width. Display-only normalization.
// Throws DivisionByZeroConfig for non-positive rates or duration.
std::vector<double> normalize_g2(const CorrelationHistogram& hist, double rate_a_hz,
                                 double rate_b_hz, double duration_s);

}  // namespace photonstat::corr
