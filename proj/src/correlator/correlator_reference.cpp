#include <algorithm>
#include <cmath>

#include "photonstat/core/errors.hpp"
#include "photonstat/correlator/correlator.hpp"

namespace photonstat::corr {

CorrelationWindow CorrelationWindow::symmetric(double bin_width_ps, double half_width_ps) {
    if (!(bin_width_ps > 0.0) || !(half_width_ps > 0.0)) {
        raise(errc::empty_window, "bin width and half width must be positive");
    }
    const int half_bins = int(std::ceil(half_width_ps / bin_width_ps));
    CorrelationWindow w;
    w.bin_width_ps = bin_width_ps;
    w.nbins = 2 * half_bins;
    w.tau_min_ps = -double(half_bins) * bin_width_ps;
    w.validate();
    return w;
}

void CorrelationWindow::validate() const {
    if (!(bin_width_ps > 0.0)) raise(errc::empty_window, "bin_width_ps must be > 0");
    if (nbins <= 0) raise(errc::empty_window, "window contains no bins");
    if (!std::isfinite(tau_min_ps) || !std::isfinite(tau_max_ps())) {
        raise(errc::empty_window, "window bounds must be finite");
    }
}

namespace {

void check_sorted(std::span<const std::uint64_t> times, const char* label) {
    if (!std::is_sorted(times.begin(), times.end())) {
        raise(errc::unsorted_input, std::string(label) + " click times are not sorted");
    }
}

}  // namespace

namespace detail {

// Sweep a-clicks [a_begin, a_end); for each, count b-clicks whose delay
// t_b - t_a lies in the window. lo/hi advance monotonically because both
// inputs are sorted.
void sweep_range(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                 const CorrelationWindow& w, std::size_t a_begin, std::size_t a_end,
                 std::size_t lo, std::size_t hi, std::vector<std::uint64_t>& counts) {
    // Window bounds as signed offsets, conservatively widened to whole ps.
    const auto lo_off = std::int64_t(std::floor(w.tau_min_ps));
    const auto hi_off = std::int64_t(std::ceil(w.tau_max_ps())) + 1;
    for (std::size_t i = a_begin; i < a_end; ++i) {
        const auto t_a = std::int64_t(a[i]);
        while (lo < b.size() && std::int64_t(b[lo]) < t_a + lo_off) ++lo;
        if (hi < lo) hi = lo;
        while (hi < b.size() && std::int64_t(b[hi]) < t_a + hi_off) ++hi;
        for (std::size_t j = lo; j < hi; ++j) {
            const int k = w.bin_index(std::int64_t(b[j]) - t_a);
            if (k >= 0) ++counts[std::size_t(k)];
        }
    }
}

}  // namespace detail

CorrelationHistogram cross_correlate_reference(std::span<const std::uint64_t> a,
                                               std::span<const std::uint64_t> b,
                                               const CorrelationWindow& window) {
    window.validate();
    check_sorted(a, "channel-0");
    check_sorted(b, "channel-1");

    CorrelationHistogram hist;
    hist.window = window;
    hist.counts.assign(std::size_t(window.nbins), 0);
    hist.total_starts = a.size();
    hist.total_stops = b.size();
    detail::sweep_range(a, b, window, 0, a.size(), 0, 0, hist.counts);
    return hist;
}

}  // namespace photonstat::corr
