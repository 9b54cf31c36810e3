#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "sqslab/constants.hpp"
#include "sqslab/emission.hpp"
#include "sqslab/errors.hpp"
#include "sqslab/grid.hpp"
#include "sqslab/slab.hpp"

namespace sqslab {

inline double wrap_two_pi(double phase) {
  const double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(phase, two_pi);
  if (wrapped < 0.0) wrapped += two_pi;
  if (wrapped >= two_pi) wrapped -= two_pi;
  return wrapped;
}

// Narrowband squeezed-vacuum input around the carrier: squeeze parameter
// xi = |xi| e^{i phi_xi}, incident from the left.
struct SqueezeInput {
  double magnitude = 0.0;   // |xi|
  double phase_rad = 0.0;   // phi_xi, stored in [0, 2 pi)
  double carrier_ev = 0.0;  // hbar omega_0

  void validate(const FrequencyGrid& grid) const {
    if (!(magnitude >= 0.0) || !std::isfinite(magnitude))
      throw ValidationError("squeeze: magnitude must be finite and >= 0");
    if (!std::isfinite(phase_rad))
      throw ValidationError("squeeze: phase must be finite");
    if (!(carrier_ev > 0.0) || !grid.contains(carrier_ev))
      throw ValidationError("squeeze: carrier energy must lie inside the grid");
  }
};

// Output normally ordered squeezing spectrum in vacuum-normalized units
// (everything divided by K = hbar omega_0 / (2 pi epsilon_0 c), so vacuum
// noise sits at exactly 0).  Per sample, with T = |T| e^{i theta}:
//   S/K     = I/K + |T|^2 sinh^2|xi|
//                 + 2 |T|^2 cosh|xi| sinh|xi| cos(2 omega_0 L / c + phi_xi + 2 theta)
//   S_max/K = I/K + |T|^2 (sinh^2|xi| + sinh|xi| cosh|xi|)
//   S_min/K = I/K + |T|^2 (sinh^2|xi| - sinh|xi| cosh|xi|)
// The input references are the slab-free constants (T = 1, I = 0).
struct SqueezingResult {
  FrequencyGrid grid;
  std::vector<double> s_at_phase;
  std::vector<double> s_min;
  std::vector<double> s_max;
  std::vector<double> i_over_k;
  double input_min = 0.0;  //  sinh^2 - sinh cosh = -(1 - e^{-2|xi|})/2
  double input_max = 0.0;  //  sinh^2 + sinh cosh =  (e^{ 2|xi|} - 1)/2
};

inline SqueezingResult squeezing_spectrum(const SqueezeInput& input,
                                          const SlabTransfer& transfer,
                                          const EmissionSpectrum& emission) {
  require_same_grid(transfer.grid, emission.grid, "squeezing_spectrum");
  input.validate(transfer.grid);
  if (transfer.all_lasing())
    throw LasingThreshold("squeezing_spectrum: every sample is at the lasing threshold");

  const FrequencyGrid& grid = transfer.grid;
  const std::size_t count = grid.size();
  const double sh = std::sinh(input.magnitude);
  const double ch = std::cosh(input.magnitude);
  const double sh2 = sh * sh;
  const double cross = sh * ch;
  const double carrier_phase =
      2.0 * angular_frequency(input.carrier_ev) * transfer.slab.thickness_m /
          constants::c_m_per_s +
      input.phase_rad;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  SqueezingResult out{grid,
                      std::vector<double>(count),
                      std::vector<double>(count),
                      std::vector<double>(count),
                      emission.i_over_k,
                      sh2 - cross,
                      sh2 + cross};

  for (std::size_t k = 0; k < count; ++k) {
    if (transfer.lasing[k]) {
      out.s_at_phase[k] = out.s_min[k] = out.s_max[k] = nan;
      continue;
    }
    const double t_abs2 = std::norm(transfer.T[k]);
    const double theta = std::arg(transfer.T[k]);
    const double base = emission.i_over_k[k];
    out.s_at_phase[k] =
        base + t_abs2 * (sh2 + 2.0 * cross * std::cos(carrier_phase + 2.0 * theta));
    out.s_min[k] = base + t_abs2 * (sh2 - cross);
    out.s_max[k] = base + t_abs2 * (sh2 + cross);
  }
  return out;
}

// Squeeze phase that drives the sample to its S_min:
// phi* = pi - 2 omega_0 L / c - 2 theta  (mod 2 pi).
inline double envelope_phase(const SqueezeInput& input, const SlabTransfer& transfer,
                             std::size_t sample) {
  const Complex t = transfer.T[sample];
  if (!(std::abs(t) >= 1e-15))
    throw ZeroTransmission("envelope_phase: |T| < 1e-15, phase is irrelevant");
  const double propagation =
      2.0 * angular_frequency(input.carrier_ev) * transfer.slab.thickness_m /
      constants::c_m_per_s;
  return wrap_two_pi(std::numbers::pi - propagation - 2.0 * std::arg(t));
}

// Per-sample classification of the output noise floor.
enum class NoiseClass : char {
  classical = 0,  // S_min >= 0
  squeezed = 1,   // S_min < 0
  undefined = 2,  // lasing sample
};

struct DegradationReport {
  struct Interval {
    std::size_t first = 0;
    std::size_t last = 0;  // inclusive
    double energy_lo = 0.0;
    double energy_hi = 0.0;
  };

  std::vector<NoiseClass> classification;
  std::vector<Interval> squeezed_intervals;
  bool any_squeezed = false;
  std::size_t global_min_index = 0;
  double global_min_energy = 0.0;
  double global_min_value = 0.0;
};

inline DegradationReport degradation_report(const SqueezingResult& result) {
  const std::size_t count = result.grid.size();
  DegradationReport report;
  report.classification.resize(count, NoiseClass::undefined);
  report.global_min_value = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < count; ++k) {
    const double s = result.s_min[k];
    if (std::isnan(s)) continue;
    report.classification[k] = (s < 0.0) ? NoiseClass::squeezed : NoiseClass::classical;
    if (s < report.global_min_value) {
      report.global_min_value = s;
      report.global_min_index = k;
      report.global_min_energy = result.grid.energy(k);
    }
  }

  for (std::size_t k = 0; k < count; ++k) {
    if (report.classification[k] != NoiseClass::squeezed) continue;
    std::size_t end = k;
    while (end + 1 < count && report.classification[end + 1] == NoiseClass::squeezed)
      ++end;
    report.squeezed_intervals.push_back(
        {k, end, result.grid.energy(k), result.grid.energy(end)});
    report.any_squeezed = true;
    k = end;
  }
  return report;
}

}  // namespace sqslab
