#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "motionsimp/motion.hpp"

namespace motionsimp {

enum class MotionFormat { Json, Bin };

// motion-BIN layout: "MSMP", u32 version, u32 F, u32 J, f64 fps, then F*J*3
// little-endian f64, then an optional contact block (u8 flag = 1, F*4 bytes).
inline constexpr std::uint32_t kBinVersion = 1;
inline constexpr std::size_t kBinHeaderBytes = 24;

/// Loads motion-JSON or motion-BIN; the format is sniffed from the magic bytes.
MotionSequence load_motion(const std::filesystem::path& path);
void save_motion(const MotionSequence& seq, const std::filesystem::path& path, MotionFormat format);

MotionSequence motion_from_json(const nlohmann::json& doc);
MotionSequence parse_motion_json(std::string_view text);
nlohmann::json motion_to_json(const MotionSequence& seq);

MotionSequence decode_motion_bin(std::string_view bytes);
std::string encode_motion_bin(const MotionSequence& seq);

MotionFormat format_from_name(std::string_view name);

}  // namespace motionsimp
