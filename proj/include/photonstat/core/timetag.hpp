#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace photonstat::core {

// One detector click. Times are integer picoseconds since acquisition start;
// channels are 0 or 1 (HBT configuration, two detectors).
struct TimeTag {
    std::uint8_t channel = 0;
    std::uint64_t time_ps = 0;

    friend bool operator==(const TimeTag&, const TimeTag&) = default;
};

struct AcquisitionMeta {
    double duration_s = 0.0;
    double bin_width_ps = 1.0;    // acquisition timing resolution
    double pulse_period_ps = 0.0; // 0 for CW
    std::uint64_t seed = 0;
    std::string notes;

    // bin_width > 0; pulse_period is either 0 or > bin_width.
    void validate() const;

    friend bool operator==(const AcquisitionMeta&, const AcquisitionMeta&) = default;
};

// Sorted, validated sequence of clicks plus its acquisition metadata.
// Immutable after construction; safe to share read-only across threads.
class TimeTagStream {
public:
    TimeTagStream() = default;

    // Validates sortedness and channels; throws UnsortedStream (with the
    // first offending record index) or UnknownChannel.
    TimeTagStream(std::vector<TimeTag> tags, AcquisitionMeta meta);

    // Stable-sorts by (time, channel) first; ties keep insertion order.
    static TimeTagStream from_unsorted(std::vector<TimeTag> tags, AcquisitionMeta meta);

    const std::vector<TimeTag>& tags() const { return tags_; }
    const AcquisitionMeta& meta() const { return meta_; }
    std::size_t size() const { return tags_.size(); }
    bool empty() const { return tags_.empty(); }

    // Click times of one channel, in order.
    std::vector<std::uint64_t> channel_times(unsigned channel) const;
    std::size_t channel_count(unsigned channel) const;

    friend bool operator==(const TimeTagStream&, const TimeTagStream&) = default;

private:
    std::vector<TimeTag> tags_;
    AcquisitionMeta meta_;
};

}  // namespace photonstat::core
