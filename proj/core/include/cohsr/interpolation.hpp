#pragma once

#include "cohsr/image.hpp"

namespace cohsr {

/// Keys cubic convolution kernel with a = -0.5.
double cubic_kernel(double t);

/// Border-replicated samples at fractional coordinates.
double sample_bilinear(const Image& image, double x, double y);
double sample_bicubic(const Image& image, double x, double y);

/// Bicubic upsampling by an integer factor. Output pixel centres map to input
/// coordinates (o + 0.5) / factor - 0.5, so each input pixel's centre sits at
/// the centre of its factor x factor output block.
Image upsample_bicubic(const Image& image, int factor);

}  // namespace cohsr
