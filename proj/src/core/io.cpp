#include "photonstat/core/io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "photonstat/core/errors.hpp"

namespace photonstat::core {

namespace {

void put_u32le(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xFF));
}

void put_u64le(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(char((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32le(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

std::uint64_t get_u64le(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(errc::io_failure, "cannot open " + path.string());
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) raise(errc::io_failure, "read failed for " + path.string());
    return data;
}

void spit(const std::filesystem::path& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(errc::io_failure, "cannot open " + path.string() + " for writing");
    out.write(data.data(), std::streamsize(data.size()));
    if (!out) raise(errc::io_failure, "write failed for " + path.string());
}

TimeTagStream read_binary(const std::filesystem::path& path) {
    const std::string data = slurp(path);
    if (data.empty()) return TimeTagStream({}, AcquisitionMeta{});

    if (data.size() < 20 || std::memcmp(data.data(), binary_magic, 8) != 0) {
        raise(errc::malformed_record, path.string() + ": bad magic or truncated header");
    }
    const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
    const std::uint32_t version = get_u32le(bytes + 8);
    if (version != 1) {
        raise(errc::malformed_record,
              path.string() + ": unsupported format version " + std::to_string(version));
    }
    const std::uint32_t meta_len = get_u32le(bytes + 16);
    const std::size_t header_size = 20 + std::size_t(meta_len);
    if (data.size() < header_size) {
        raise(errc::malformed_record, path.string() + ": truncated metadata blob");
    }
    AcquisitionMeta meta = meta_from_json_string(data.substr(20, meta_len));

    const std::size_t payload = data.size() - header_size;
    if (payload % binary_record_size != 0) {
        raise(errc::malformed_record,
              path.string() + ": payload is not a whole number of 16-byte records");
    }
    std::vector<TimeTag> tags(payload / binary_record_size);
    const unsigned char* rec = bytes + header_size;
    for (auto& tag : tags) {
        tag.channel = rec[0];
        tag.time_ps = get_u64le(rec + 8);
        rec += binary_record_size;
    }
    return TimeTagStream(std::move(tags), std::move(meta));
}

void write_binary(const TimeTagStream& stream, const std::filesystem::path& path) {
    std::string out;
    const std::string meta = meta_to_json_string(stream.meta());
    out.reserve(20 + meta.size() + stream.size() * binary_record_size);
    out.append(binary_magic, 8);
    put_u32le(out, 1);  // version
    put_u32le(out, 0);  // reserved
    put_u32le(out, std::uint32_t(meta.size()));
    out += meta;
    for (const auto& tag : stream.tags()) {
        out.push_back(char(tag.channel));
        out.append(7, '\0');
        put_u64le(out, tag.time_ps);
    }
    spit(path, out);
}

TimeTagStream read_csv(const std::filesystem::path& path) {
    const std::string data = slurp(path);
    if (data.empty()) return TimeTagStream({}, AcquisitionMeta{});

    std::vector<TimeTag> tags;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < data.size()) {
        std::size_t eol = data.find('\n', pos);
        if (eol == std::string::npos) eol = data.size();
        std::string line = data.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        pos = eol + 1;
        ++line_no;
        if (line_no == 1) {
            if (line != "channel,time_ps") {
                raise(errc::malformed_record,
                      path.string() + ": expected header 'channel,time_ps'");
            }
            continue;
        }
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) {
            raise(errc::malformed_record,
                  path.string() + ": line " + std::to_string(line_no) + ": missing comma");
        }
        try {
            std::size_t used = 0;
            const unsigned long ch = std::stoul(line.substr(0, comma), &used);
            if (used != comma) throw std::invalid_argument("trailing junk");
            const std::string tail = line.substr(comma + 1);
            const unsigned long long t = std::stoull(tail, &used);
            if (used != tail.size()) throw std::invalid_argument("trailing junk");
            if (ch > 255) throw std::out_of_range("channel");
            tags.push_back(TimeTag{std::uint8_t(ch), std::uint64_t(t)});
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            raise(errc::malformed_record,
                  path.string() + ": line " + std::to_string(line_no) + ": '" + line + "'");
        }
    }
    return TimeTagStream(std::move(tags), AcquisitionMeta{});
}

void write_csv(const TimeTagStream& stream, const std::filesystem::path& path) {
    std::string out = "channel,time_ps\n";
    for (const auto& tag : stream.tags()) {
        out += std::to_string(int(tag.channel));
        out += ',';
        out += std::to_string(tag.time_ps);
        out += '\n';
    }
    spit(path, out);
}

}  // namespace

StreamFormat format_from_path(const std::filesystem::path& path) {
    return path.extension() == ".csv" ? StreamFormat::csv : StreamFormat::binary;
}

TimeTagStream read_timetags(const std::filesystem::path& path, StreamFormat format) {
    return format == StreamFormat::binary ? read_binary(path) : read_csv(path);
}

void write_timetags(const TimeTagStream& stream, const std::filesystem::path& path,
                    StreamFormat format) {
    if (format == StreamFormat::binary) {
        write_binary(stream, path);
    } else {
        write_csv(stream, path);
    }
}

std::string meta_to_json_string(const AcquisitionMeta& meta) {
    nlohmann::json j;
    j["duration_s"] = meta.duration_s;
    j["bin_width_ps"] = meta.bin_width_ps;
    j["pulse_period_ps"] = meta.pulse_period_ps;
    j["seed"] = meta.seed;
    j["notes"] = meta.notes;
    return j.dump();
}

AcquisitionMeta meta_from_json_string(const std::string& text) {
    AcquisitionMeta meta;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        raise(errc::malformed_record, std::string("metadata blob is not valid JSON: ") + e.what());
    }
    meta.duration_s = j.value("duration_s", 0.0);
    meta.bin_width_ps = j.value("bin_width_ps", 1.0);
    meta.pulse_period_ps = j.value("pulse_period_ps", 0.0);
    meta.seed = j.value("seed", std::uint64_t(0));
    meta.notes = j.value("notes", std::string());
    return meta;
}

}  // namespace photonstat::core
