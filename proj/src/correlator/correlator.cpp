#include <algorithm>
#include <cmath>

#include <omp.h>

#include "photonstat/core/errors.hpp"
#include "photonstat/correlator/correlator.hpp"

namespace photonstat::corr {

namespace detail {
void sweep_range(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                 const CorrelationWindow& w, std::size_t a_begin, std::size_t a_end,
                 std::size_t lo, std::size_t hi, std::vector<std::uint64_t>& counts);
}

CorrelationHistogram cross_correlate(std::span<const std::uint64_t> a,
                                     std::span<const std::uint64_t> b,
                                     const CorrelationWindow& window) {
    window.validate();
    if (!std::is_sorted(a.begin(), a.end())) {
        raise(errc::unsorted_input, "channel-0 click times are not sorted");
    }
    if (!std::is_sorted(b.begin(), b.end())) {
        raise(errc::unsorted_input, "channel-1 click times are not sorted");
    }

    CorrelationHistogram hist;
    hist.window = window;
    hist.counts.assign(std::size_t(window.nbins), 0);
    hist.total_starts = a.size();
    hist.total_stops = b.size();
    if (a.empty() || b.empty()) return hist;

    // Partition the start clicks; each chunk seeds its stop pointers by
    // binary search and sweeps into a private histogram. Every pair is owned
    // by exactly one chunk, so the merged result matches the serial sweep
    // bin for bin.
    const auto lo_off = std::int64_t(std::floor(window.tau_min_ps));
    const int nchunks = std::max(1, std::min<int>(4 * omp_get_max_threads(),
                                                  int(std::min<std::size_t>(a.size(), 1 << 20))));
    const std::size_t chunk_size = (a.size() + nchunks - 1) / nchunks;

#pragma omp parallel
    {
        std::vector<std::uint64_t> local(hist.counts.size(), 0);
#pragma omp for schedule(dynamic, 1) nowait
        for (int c = 0; c < nchunks; ++c) {
            const std::size_t a_begin = std::size_t(c) * chunk_size;
            if (a_begin >= a.size()) continue;
            const std::size_t a_end = std::min(a.size(), a_begin + chunk_size);
            const std::int64_t first_b = std::int64_t(a[a_begin]) + lo_off;
            const std::size_t lo = std::size_t(
                std::lower_bound(b.begin(), b.end(),
                                 first_b < 0 ? 0ULL : std::uint64_t(first_b)) -
                b.begin());
            detail::sweep_range(a, b, window, a_begin, a_end, lo, lo, local);
        }
#pragma omp critical
        {
            for (std::size_t k = 0; k < local.size(); ++k) hist.counts[k] += local[k];
        }
    }
    return hist;
}

CorrelationHistogram cross_correlate(const core::TimeTagStream& stream,
                                     const CorrelationWindow& window) {
    const auto a = stream.channel_times(0);
    const auto b = stream.channel_times(1);
    CorrelationHistogram hist = cross_correlate(a, b, window);
    hist.acquisition = stream.meta();
    return hist;
}

std::vector<double> normalize_g2(const CorrelationHistogram& hist, double rate_a_hz,
                                 double rate_b_hz, double duration_s) {
    if (!(rate_a_hz > 0.0) || !(rate_b_hz > 0.0) || !(duration_s > 0.0)) {
        raise(errc::division_by_zero_config,
              "normalize_g2 requires positive rates and duration");
    }
    const double expected =
        rate_a_hz * rate_b_hz * duration_s * (hist.window.bin_width_ps * 1e-12);
    std::vector<double> out(hist.counts.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = double(hist.counts[k]) / expected;
    }
    return out;
}

}  // namespace photonstat::corr
