#pragma once

#include <filesystem>
#include <string>

#include "photonstat/core/timetag.hpp"

namespace photonstat::core {

enum class StreamFormat { binary, csv };

// Picks csv for a .csv extension, binary otherwise.
StreamFormat format_from_path(const std::filesystem::path& path);

// Binary time-tag file layout (all integers little-endian):
//   bytes  0-7   magic "PSTTAG01"
//   bytes  8-11  u32 format version (1)
//   bytes 12-15  u32 reserved (0)
//   bytes 16-19  u32 length L of the metadata blob
//   bytes 20-..  L bytes of UTF-8 JSON holding AcquisitionMeta
//   then records of 16 bytes each: u8 channel, 7 reserved bytes (0),
//   u64 time_ps.
// A zero-length file reads as an empty stream with default metadata; the
// same applies to CSV.
//
// CSV layout: header line "channel,time_ps", one record per line. CSV
// carries no acquisition metadata.
TimeTagStream read_timetags(const std::filesystem::path& path, StreamFormat format);
void write_timetags(const TimeTagStream& stream, const std::filesystem::path& path,
                    StreamFormat format);

inline constexpr std::size_t binary_record_size = 16;
inline constexpr char binary_magic[9] = "PSTTAG01";

std::string meta_to_json_string(const AcquisitionMeta& meta);
AcquisitionMeta meta_from_json_string(const std::string& text);

}  // namespace photonstat::core
