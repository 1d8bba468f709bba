#pragma once

#include <complex>
#include <string>

// Small serialization helpers shared by the report writers and the
// command-line front end.  Everything here is byte-stable: the same inputs
// always produce the same bytes, so emitted artifacts can be digested and
// replayed.
namespace sphmax::io {

// Fixed scientific formatting (%.12e) used for every float that lands in a
// CSV or JSON artifact.
[[nodiscard]] std::string format_float(double v);

// Minimal JSON string escaping (backslash, quote, control characters).
[[nodiscard]] std::string json_escape(const std::string& s);

// Complex orders cross the command line and config files as "a+bi"
// (examples: "0+0i", "0.5+0i", "-0.25+0.5i", "0-1i").
[[nodiscard]] std::complex<double> parse_complex(const std::string& s);
[[nodiscard]] std::string format_complex(std::complex<double> z);

// Hex-encoded SHA-256 digests.
[[nodiscard]] std::string sha256_hex(const std::string& bytes);
[[nodiscard]] std::string sha256_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
[[nodiscard]] std::string read_text_file(const std::string& path);

}  // namespace sphmax::io
