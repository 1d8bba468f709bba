#include "sphmax/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sphmax::io {

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::complex<double> parse_complex(const std::string& s) {
  // Split at the sign that separates the imaginary part; the string must
  // end in 'i'.
  if (s.size() < 2 || s.back() != 'i')
    throw std::invalid_argument("bad complex literal: " + s);
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size() - 2; i >= 1; --i) {
    const char c = s[i];
    if ((c == '+' || c == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
    if (i == 1) break;
  }
  if (split == std::string::npos)
    throw std::invalid_argument("bad complex literal: " + s);
  const std::string re_part = s.substr(0, split);
  const std::string im_part = s.substr(split, s.size() - 1 - split);
  try {
    std::size_t used = 0;
    const double re = std::stod(re_part, &used);
    if (used != re_part.size())
      throw std::invalid_argument("trailing characters");
    const double im = std::stod(im_part, &used);
    if (used != im_part.size())
      throw std::invalid_argument("trailing characters");
    return {re, im};
  } catch (const std::exception&) {
    throw std::invalid_argument("bad complex literal: " + s);
  }
}

std::string format_complex(std::complex<double> z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1)
    throw std::runtime_error("sha256: digest failure");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::string sha256_file(const std::string& path) {
  return sha256_hex(read_text_file(path));
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("short write: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace sphmax::io
