#include "mmfista/harness/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace mmfista {

namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string header_token(std::istream& in) {
  std::string token;
  char ch;
  while (in.get(ch)) {
    if (ch == '#') {
      std::string ignored;
      std::getline(in, ignored);
      if (!token.empty()) break;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(ch);
  }
  return token;
}

}  // namespace

GridImage read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_pgm: cannot open " + path);
  if (header_token(in) != "P5") throw std::runtime_error("read_pgm: " + path + " is not a binary PGM (P5)");
  const long width = std::stol(header_token(in));
  const long height = std::stol(header_token(in));
  const long maxval = std::stol(header_token(in));
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535) {
    throw std::runtime_error("read_pgm: invalid header in " + path);
  }
  GridImage image(static_cast<std::size_t>(height), static_cast<std::size_t>(width));
  const bool wide = maxval > 255;
  for (double& v : image.values()) {
    unsigned value = 0;
    if (wide) {
      unsigned char bytes[2];
      if (!in.read(reinterpret_cast<char*>(bytes), 2)) throw std::runtime_error("read_pgm: truncated " + path);
      value = (static_cast<unsigned>(bytes[0]) << 8) | bytes[1];
    } else {
      char byte;
      if (!in.get(byte)) throw std::runtime_error("read_pgm: truncated " + path);
      value = static_cast<unsigned char>(byte);
    }
    v = static_cast<double>(value) / static_cast<double>(maxval);
  }
  return image;
}

void write_pgm(const std::string& path, const GridImage& image, int bit_depth) {
  if (bit_depth != 8 && bit_depth != 16) throw ParameterError("write_pgm: bit depth must be 8 or 16");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_pgm: cannot open " + path);
  const unsigned maxval = bit_depth == 8 ? 255u : 65535u;
  out << "P5\n" << image.cols() << " " << image.rows() << "\n" << maxval << "\n";
  for (double v : image.values()) {
    const auto q = static_cast<unsigned>(std::lround(std::clamp(v, 0.0, 1.0) * maxval));
    if (bit_depth == 16) {
      out.put(static_cast<char>(q >> 8));
      out.put(static_cast<char>(q & 0xff));
    } else {
      out.put(static_cast<char>(q));
    }
  }
}

}  // namespace mmfista
