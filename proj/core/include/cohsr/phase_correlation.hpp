#pragma once

#include "cohsr/image.hpp"

namespace cohsr {

struct ShiftEstimate {
  double dx = 0.0;
  double dy = 0.0;
  double peak = 0.0;  ///< phase-correlation surface height, 1 for an exact periodic shift
};

/// Translation d such that target(x) ~= reference(x - d), periodic
/// boundaries. The integer peak of the phase-correlation surface (inverse FFT
/// of the whitened cross-power spectrum) is refined by a
/// matrix-multiply DFT evaluated on a grid 1/upsample px fine within +-1.5 px.
ShiftEstimate estimate_translation(const Image& reference, const Image& target,
                                   int upsample = 100);

}  // namespace cohsr
