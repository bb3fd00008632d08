#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "nrhf/instance.hpp"
#include "nrhf/text_io.hpp"

namespace nrhf {

inline constexpr std::string_view kInstanceHeader = "nrhf-instance";
inline constexpr int kInstanceVersion = 1;

// Parses the instance text format (see docs/file-formats.md).
// Throws ParseError on malformed text and std::invalid_argument when the
// parsed instance fails validate().
Instance load_instance(std::string_view text);
std::string save_instance(const Instance& instance);

Instance read_instance_file(const std::filesystem::path& path);
void write_instance_file(const std::filesystem::path& path, const Instance& instance);

// Whole-file helpers shared by the readers and writers.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace nrhf
