#pragma once

#include <span>
#include <vector>

#include "cohsr/image.hpp"

namespace cohsr {

enum class FftDirection { forward, inverse };

/// In-place 2-D DFT of a row-major width x height grid. The inverse is
/// scaled by 1/(width*height) so forward followed by inverse is the identity.
void fft2(std::span<Complex> data, int width, int height, FftDirection direction);

std::vector<Complex> fft2(const Image& image);

/// Real part of the inverse transform.
Image ifft2_real(std::vector<Complex> spectrum, int width, int height);

/// Frequency of DFT bin `index` for an n-point transform with sample spacing
/// `spacing`: index/(n*spacing) below n/2, (index-n)/(n*spacing) above.
double fft_frequency(int index, int n, double spacing = 1.0);

/// Band-limited translation: out(x, y) = in(x - dx, y - dy) with periodic
/// boundaries. Shifts are in pixels and may be fractional.
Image fourier_shift(const Image& image, double dx, double dy);

}  // namespace cohsr
