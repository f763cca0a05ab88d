#include "cohsr/propagation.hpp"

#include <cmath>
#include <numbers>

#include "cohsr/errors.hpp"
#include "cohsr/fft.hpp"

namespace cohsr {

ComplexField transfer_function(int width, int height, double pitch_um, double wavelength_um,
                               double z_um, double refractive_index) {
  require(pitch_um > 0.0, "transfer_function: pitch_um must be positive");
  require(wavelength_um > 0.0, "transfer_function: wavelength_um must be positive");
  require(refractive_index > 0.0, "transfer_function: refractive index must be positive");
  ComplexField kernel(width, height, pitch_um, wavelength_um, z_um);
  const double k2 = std::pow(refractive_index / wavelength_um, 2);
  const double two_pi_z = 2.0 * std::numbers::pi * z_um;
  for (int y = 0; y < height; ++y) {
    const double fy = fft_frequency(y, height, pitch_um);
    for (int x = 0; x < width; ++x) {
      const double fx = fft_frequency(x, width, pitch_um);
      const double arg = k2 - fx * fx - fy * fy;
      if (arg <= 0.0) {
        kernel(x, y) = Complex{};
      } else {
        const double phase = two_pi_z * std::sqrt(arg);
        kernel(x, y) = Complex{std::cos(phase), std::sin(phase)};
      }
    }
  }
  return kernel;
}

ComplexField propagate(const ComplexField& field, double dz_um, double refractive_index) {
  const int w = field.width();
  const int h = field.height();
  std::vector<Complex> buf(field.data().begin(), field.data().end());
  fft2(buf, w, h, FftDirection::forward);
  const auto kernel =
      transfer_function(w, h, field.pitch_um(), field.wavelength_um(), dz_um, refractive_index);
  auto kd = kernel.data();
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= kd[i];
  fft2(buf, w, h, FftDirection::inverse);
  ComplexField out = field.with_data(std::move(buf));
  out.set_z_um(field.z_um() + dz_um);
  return out;
}

double coherence_length(const SystemParams& params) {
  params.validate();
  const double lambda = params.wavelength_um;
  return std::sqrt(2.0 * std::numbers::ln2 / (std::numbers::pi * params.refractive_index)) *
         lambda * lambda / params.bandwidth_um;
}

CoherenceLimit coherence_limited_na(const SystemParams& params) {
  return coherence_limited_na(params.wavelength_um, params.refractive_index, params.z2_um,
                              coherence_length(params));
}

CoherenceLimit coherence_limited_na(double wavelength_um, double refractive_index, double z2_um,
                                    double coherence_length_um) {
  require(wavelength_um > 0.0 && refractive_index > 0.0, "coherence_limited_na: bad optics");
  require(z2_um > 0.0 && coherence_length_um > 0.0, "coherence_limited_na: bad geometry");
  const double cos_theta = z2_um / (z2_um + coherence_length_um);
  const double na = refractive_index * std::sqrt(1.0 - cos_theta * cos_theta);
  return {na, wavelength_um / na};
}

}  // namespace cohsr
