#include "photonstat/core/timetag.hpp"

#include <algorithm>

#include "photonstat/core/errors.hpp"

namespace photonstat::core {

void AcquisitionMeta::validate() const {
    if (!(bin_width_ps > 0.0)) {
        raise(errc::invalid_config, "AcquisitionMeta: bin_width_ps must be > 0");
    }
    if (pulse_period_ps != 0.0 && !(pulse_period_ps > bin_width_ps)) {
        raise(errc::invalid_config,
              "AcquisitionMeta: pulse_period_ps must be 0 (CW) or > bin_width_ps");
    }
    if (duration_s < 0.0) {
        raise(errc::invalid_config, "AcquisitionMeta: duration_s must be >= 0");
    }
}

TimeTagStream::TimeTagStream(std::vector<TimeTag> tags, AcquisitionMeta meta)
    : tags_(std::move(tags)), meta_(std::move(meta)) {
    meta_.validate();
    for (std::size_t i = 0; i < tags_.size(); ++i) {
        if (tags_[i].channel > 1) {
            raise(errc::unknown_channel,
                  "record " + std::to_string(i) + " has channel " +
                      std::to_string(int(tags_[i].channel)) + " (expected 0 or 1)");
        }
        if (i > 0 && tags_[i].time_ps < tags_[i - 1].time_ps) {
            raise(errc::unsorted_stream,
                  "record " + std::to_string(i) + " (t = " +
                      std::to_string(tags_[i].time_ps) +
                      " ps) precedes record " + std::to_string(i - 1));
        }
    }
}

TimeTagStream TimeTagStream::from_unsorted(std::vector<TimeTag> tags, AcquisitionMeta meta) {
    std::stable_sort(tags.begin(), tags.end(), [](const TimeTag& a, const TimeTag& b) {
        if (a.time_ps != b.time_ps) return a.time_ps < b.time_ps;
        return a.channel < b.channel;
    });
    return TimeTagStream(std::move(tags), std::move(meta));
}

std::vector<std::uint64_t> TimeTagStream::channel_times(unsigned channel) const {
    std::vector<std::uint64_t> out;
    out.reserve(tags_.size() / 2 + 1);
    for (const auto& tag : tags_) {
        if (tag.channel == channel) out.push_back(tag.time_ps);
    }
    return out;
}

std::size_t TimeTagStream::channel_count(unsigned channel) const {
    return static_cast<std::size_t>(
        std::count_if(tags_.begin(), tags_.end(),
                      [channel](const TimeTag& t) { return t.channel == channel; }));
}

}  // namespace photonstat::core
