#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace aploco {

/// Fixed-point decimal formatting with half-up rounding (halves round away
/// from zero), e.g. format_fixed(0.0188, 3) == "0.019". Used for the text
/// tables so printed output is reproducible byte for byte.
std::string format_fixed(double value, int precision);

/// Shortest decimal string that parses back to exactly the same double.
std::string format_full(double value);

/// Writes content to path atomically: a temp file in the same directory is
/// renamed over the target, so failures never leave partial output behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Reads a whole file; throws aploco::Error if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Current UTC time as ISO-8601 (e.g. "2024-05-01T12:00:00Z"). Honors the
/// SOURCE_DATE_EPOCH environment variable for reproducible output.
std::string iso8601_utc_now();

}  // namespace aploco
