#pragma once

#include "cohsr/image.hpp"

namespace cohsr {

/// Angular-spectrum transfer function in standard FFT ordering (DC at index
/// 0). Propagating frequencies get exp(i 2 pi z sqrt((n/lambda)^2 - f^2));
/// evanescent ones are set to exactly zero. The returned field's metadata
/// carries the spatial pitch and wavelength it was built for, with z_um = z.
ComplexField transfer_function(int width, int height, double pitch_um, double wavelength_um,
                               double z_um, double refractive_index = 1.0);

/// Free-space propagation by dz_um: FFT, multiply by the transfer function,
/// inverse FFT. No padding is applied; callers pad explicitly if they need
/// to suppress wrap-around.
ComplexField propagate(const ComplexField& field, double dz_um, double refractive_index = 1.0);

/// Temporal coherence length sqrt(2 ln2 / (pi n)) * lambda^2 / d_lambda (um).
double coherence_length(const SystemParams& params);

struct CoherenceLimit {
  double na;
  double resolution_um;
};

/// Effective NA n*sqrt(1 - (z2/(z2 + L_c))^2) and resolution lambda/NA.
CoherenceLimit coherence_limited_na(const SystemParams& params);

/// Same as above but with an explicit coherence length, for studying limits.
CoherenceLimit coherence_limited_na(double wavelength_um, double refractive_index, double z2_um,
                                    double coherence_length_um);

}  // namespace cohsr
