#pragma once

#include <string>

#include "mmfista/grid_image.hpp"

namespace mmfista {

/// Binary (P5) PGM, 8- or 16-bit; intensities mapped linearly to [0, 1].
GridImage read_pgm(const std::string& path);

/// Values are clipped to [0, 1] and quantized to `bit_depth` (8 or 16) bits.
void write_pgm(const std::string& path, const GridImage& image, int bit_depth = 8);

}  // namespace mmfista
