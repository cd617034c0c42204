#include "motionsimp/motion_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "motionsimp/errors.hpp"

namespace motionsimp {

namespace {

using nlohmann::json;

constexpr char kMagic[4] = {'M', 'S', 'M', 'P'};

template <typename T>
void put_le(std::string& out, T value) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(std::begin(bytes), std::end(bytes));
    }
    out.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

class Reader {
public:
    explicit Reader(std::string_view data) : data_(data) {}

    template <typename T>
    T get() {
        need(sizeof(T));
        unsigned char bytes[sizeof(T)];
        std::memcpy(bytes, data_.data() + pos_, sizeof(T));
        if constexpr (std::endian::native == std::endian::big) {
            std::reverse(std::begin(bytes), std::end(bytes));
        }
        pos_ += sizeof(T);
        T value;
        std::memcpy(&value, bytes, sizeof(T));
        return value;
    }

    std::size_t remaining() const { return data_.size() - pos_; }

    void need(std::size_t n) const {
        if (remaining() < n) fail(ErrorKind::Parse, "truncated motion-BIN data");
    }

private:
    std::string_view data_;
    std::size_t pos_ = 0;
};

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) fail(ErrorKind::Io, "read failed: " + path.string());
    return ss.str();
}

}  // namespace

MotionFormat format_from_name(std::string_view name) {
    if (name == "json") return MotionFormat::Json;
    if (name == "bin") return MotionFormat::Bin;
    fail(ErrorKind::InvalidArgument, "unknown motion format: " + std::string(name));
}

MotionSequence motion_from_json(const json& doc) {
    if (!doc.is_object()) fail(ErrorKind::Parse, "motion-JSON must be an object");
    if (!doc.contains("fps") || !doc["fps"].is_number()) {
        fail(ErrorKind::Parse, "motion-JSON needs a numeric \"fps\"");
    }
    if (!doc.contains("frames") || !doc["frames"].is_array()) {
        fail(ErrorKind::Parse, "motion-JSON needs a \"frames\" array");
    }
    if (doc.contains("joints")) {
        const auto& names = doc["joints"];
        if (!names.is_array()) fail(ErrorKind::Parse, "\"joints\" must be an array");
        if (names.size() != kNumJoints) {
            fail(ErrorKind::Shape, "expected 24 joints, got " + std::to_string(names.size()));
        }
        const auto& expected = smpl24().joint_names;
        for (std::size_t j = 0; j < kNumJoints; ++j) {
            if (!names[j].is_string() || names[j].get<std::string>() != expected[j]) {
                fail(ErrorKind::Shape, "joint " + std::to_string(j) + " must be " + expected[j]);
            }
        }
    }

    const auto& frames = doc["frames"];
    const std::size_t F = frames.size();
    std::vector<Vec3> pos;
    pos.reserve(F * kNumJoints);
    for (std::size_t f = 0; f < F; ++f) {
        const auto& frame = frames[f];
        if (!frame.is_array()) fail(ErrorKind::Parse, "frame " + std::to_string(f) + " is not an array");
        if (frame.size() != kNumJoints) {
            fail(ErrorKind::Shape, "frame " + std::to_string(f) + " has " +
                                       std::to_string(frame.size()) + " joints, expected 24");
        }
        for (const auto& p : frame) {
            if (!p.is_array() || p.size() != 3) fail(ErrorKind::Parse, "joint position must be [x,y,z]");
            Vec3 v;
            for (int a = 0; a < 3; ++a) {
                if (!p[a].is_number()) fail(ErrorKind::Parse, "joint coordinate must be a number");
                v[a] = p[a].get<double>();
            }
            pos.push_back(v);
        }
    }

    std::optional<ContactTrack> contacts;
    if (doc.contains("contacts") && !doc["contacts"].is_null()) {
        const auto& c = doc["contacts"];
        if (!c.is_array()) fail(ErrorKind::Parse, "\"contacts\" must be an array");
        ContactTrack track;
        track.reserve(c.size());
        for (const auto& row : c) {
            if (!row.is_array() || row.size() != kContactChannels) {
                fail(ErrorKind::Shape, "contact rows must have 4 entries");
            }
            ContactRow r{};
            for (std::size_t k = 0; k < kContactChannels; ++k) {
                if (!row[k].is_number_integer()) fail(ErrorKind::Parse, "contact entry must be 0 or 1");
                const auto v = row[k].get<long long>();
                if (v != 0 && v != 1) fail(ErrorKind::Shape, "contact entries must be 0 or 1");
                r[k] = static_cast<std::uint8_t>(v);
            }
            track.push_back(r);
        }
        contacts = std::move(track);
    }
    return MotionSequence(F, doc["fps"].get<double>(), std::move(pos), std::move(contacts));
}

MotionSequence parse_motion_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Parse, std::string("malformed motion-JSON: ") + e.what());
    }
    return motion_from_json(doc);
}

json motion_to_json(const MotionSequence& seq) {
    json frames = json::array();
    for (std::size_t f = 0; f < seq.frames(); ++f) {
        json frame = json::array();
        for (std::size_t j = 0; j < kNumJoints; ++j) {
            const Vec3& p = seq.at(f, j);
            frame.push_back({p.x(), p.y(), p.z()});
        }
        frames.push_back(std::move(frame));
    }
    json doc = {{"fps", seq.fps()}, {"joints", smpl24().joint_names}, {"frames", std::move(frames)}};
    if (seq.contacts()) {
        json c = json::array();
        for (const auto& row : *seq.contacts()) {
            c.push_back({row[0], row[1], row[2], row[3]});
        }
        doc["contacts"] = std::move(c);
    }
    return doc;
}

std::string encode_motion_bin(const MotionSequence& seq) {
    std::string out;
    out.reserve(kBinHeaderBytes + seq.frames() * kNumJoints * 3 * sizeof(double));
    out.append(kMagic, 4);
    put_le<std::uint32_t>(out, kBinVersion);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(seq.frames()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(kNumJoints));
    put_le<double>(out, seq.fps());
    for (const auto& p : seq.positions()) {
        for (int a = 0; a < 3; ++a) put_le<double>(out, p[a]);
    }
    if (seq.contacts()) {
        out.push_back(1);
        for (const auto& row : *seq.contacts()) {
            for (auto c : row) out.push_back(static_cast<char>(c));
        }
    }
    return out;
}

MotionSequence decode_motion_bin(std::string_view bytes) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
        fail(ErrorKind::Parse, "missing MSMP magic");
    }
    Reader r(bytes.substr(4));
    const auto version = r.get<std::uint32_t>();
    if (version != kBinVersion) fail(ErrorKind::Parse, "unsupported motion-BIN version " + std::to_string(version));
    const auto F = r.get<std::uint32_t>();
    const auto J = r.get<std::uint32_t>();
    const auto fps = r.get<double>();
    if (J != kNumJoints) fail(ErrorKind::Shape, "expected 24 joints, got " + std::to_string(J));
    r.need(static_cast<std::size_t>(F) * J * 3 * sizeof(double));
    std::vector<Vec3> pos(static_cast<std::size_t>(F) * J);
    for (auto& p : pos) {
        for (int a = 0; a < 3; ++a) p[a] = r.get<double>();
    }
    std::optional<ContactTrack> contacts;
    if (r.remaining() > 0) {
        const auto flag = r.get<std::uint8_t>();
        if (flag > 1) fail(ErrorKind::Parse, "bad contact flag");
        if (flag == 1) {
            ContactTrack track(F);
            for (auto& row : track) {
                for (auto& c : row) c = r.get<std::uint8_t>();
            }
            contacts = std::move(track);
        }
        if (r.remaining() != 0) fail(ErrorKind::Parse, "trailing bytes after motion-BIN payload");
    }
    return MotionSequence(F, fps, std::move(pos), std::move(contacts));
}

MotionSequence load_motion(const std::filesystem::path& path) {
    const std::string data = read_file(path);
    if (data.size() >= 4 && std::memcmp(data.data(), kMagic, 4) == 0) {
        return decode_motion_bin(data);
    }
    return parse_motion_json(data);
}

void save_motion(const MotionSequence& seq, const std::filesystem::path& path, MotionFormat format) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
    if (format == MotionFormat::Bin) {
        const std::string bytes = encode_motion_bin(seq);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    } else {
        out << motion_to_json(seq).dump();
    }
    out.flush();
    if (!out) fail(ErrorKind::Io, "write failed: " + path.string());
}

}  // namespace motionsimp
