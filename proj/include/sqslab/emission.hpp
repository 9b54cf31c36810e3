#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "sqslab/constants.hpp"
#include "sqslab/dielectric.hpp"
#include "sqslab/errors.hpp"
#include "sqslab/grid.hpp"
#include "sqslab/slab.hpp"

namespace sqslab {

// Quasi-equilibrium excitation of the medium.  mu = 0 is thermal
// equilibrium; mu > 0 is a pumped medium with gain below hbar*omega = mu.
struct EmissionState {
  double temperature_k = 300.0;
  double mu_ev = 0.0;

  void validate() const {
    if (!(temperature_k > 0.0) || !std::isfinite(temperature_k))
      throw ValidationError("emission: temperature must be finite and > 0");
    if (!(mu_ev >= 0.0) || !std::isfinite(mu_ev))
      throw ValidationError("emission: mu must be finite and >= 0");
  }

  double beta() const { return 1.0 / (constants::k_boltzmann_ev_per_k * temperature_k); }
};

// Nonequilibrium Bose occupation b = 1/(e^{beta(E - mu)} - 1), negative for
// E < mu.  Evaluated through expm1 so the near-crossover magnitude is not
// lost to cancellation.  Exactly at E = mu the occupation is a pole; callers
// in the crossover window must use the regularized product instead.
inline double bose_occupation(const EmissionState& state, double energy_ev) {
  const double x = state.beta() * (energy_ev - state.mu_ev);
  if (x == 0.0)
    throw CrossoverSingularity("bose_occupation: energy equals the chemical potential");
  return 1.0 / std::expm1(x);
}

// closed form of int_{-L/2}^{L/2} |e^{i n omega x / c} +/- e^{-i n omega x / c}|^2 dx
//   = (2c / (n'' omega)) sinh(n'' omega L / c) +/- (2c / (n' omega)) sin(n' omega L / c),
// with the n'' -> 0 term replaced by its limit 2L.
inline double mode_overlap_integral(Complex n, double omega, double thickness_m,
                                    int parity) {
  const double x_real = n.real() * omega * thickness_m / constants::c_m_per_s;
  const double x_imag = n.imag() * omega * thickness_m / constants::c_m_per_s;
  const double cosh_part =
      (x_imag == 0.0) ? 2.0 * thickness_m
                      : 2.0 * thickness_m * std::sinh(x_imag) / x_imag;
  const double cos_part = 2.0 * thickness_m * std::sin(x_real) / x_real;
  return (parity >= 0) ? cosh_part + cos_part : cosh_part - cos_part;
}

// Normalizations N_+/- of the quasiparticle operators built from the noise
// current, fixed so the constructed commutator [c_pm, c_pm^dagger] evaluates
// to sign(chi'') * 1.  The sign is recorded rather than hidden: for an
// amplifying medium (chi'' < 0) the commutator of the construction is -1.
struct QuasiparticleNormalization {
  double n_plus = 0.0;
  double n_minus = 0.0;
  int commutator_sign = 0;  // +1 absorbing, -1 amplifying
};

inline QuasiparticleNormalization quasiparticle_normalization(Complex n, double omega,
                                                              double thickness_m,
                                                              double chi_im) {
  if (std::abs(chi_im) < 1e-15)
    throw TransparentMedium(
        "quasiparticle_normalization: |chi''| < 1e-15, normalization diverges");
  const double scale = 2.0 * constants::epsilon0_si * constants::hbar_ev_s *
                       omega * omega * std::abs(chi_im);
  QuasiparticleNormalization out;
  out.n_plus = 1.0 / std::sqrt(scale * mode_overlap_integral(n, omega, thickness_m, +1));
  out.n_minus = 1.0 / std::sqrt(scale * mode_overlap_integral(n, omega, thickness_m, -1));
  out.commutator_sign = (chi_im > 0.0) ? +1 : -1;
  return out;
}

// Per-sample normalizations over a full response; transparent samples
// (|chi''| < 1e-15) carry NaN and sign 0.
struct ModeNormalization {
  FrequencyGrid grid;
  std::vector<double> n_plus;
  std::vector<double> n_minus;
  std::vector<int> commutator_sign;

  static ModeNormalization compute(const DielectricResponse& response,
                                   const SlabGeometry& slab) {
    const std::size_t count = response.grid.size();
    ModeNormalization out{response.grid, std::vector<double>(count),
                          std::vector<double>(count), std::vector<int>(count, 0)};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = 0; k < count; ++k) {
      try {
        const auto norm = quasiparticle_normalization(
            response.n[k], response.grid.omega(k), slab.thickness_m,
            response.chi[k].imag());
        out.n_plus[k] = norm.n_plus;
        out.n_minus[k] = norm.n_minus;
        out.commutator_sign[k] = norm.commutator_sign;
      } catch (const TransparentMedium&) {
        out.n_plus[k] = nan;
        out.n_minus[k] = nan;
      }
    }
    return out;
  }
};

// Occupation and vacuum-normalized emitted intensity.  `regularized` marks
// samples inside the crossover window |beta(E - mu)| < window where the
// product was replaced by its slope-formula limit.
struct EmissionSpectrum {
  FrequencyGrid grid;
  std::vector<double> b;
  std::vector<double> i_over_k;
  std::vector<char> regularized;
};

inline constexpr double default_crossover_window = 1e-6;

// Emitted intensity in vacuum-normalized units:
//   I/K = (1 - |T|^2 - |R|^2) * b(omega).
// Modeling decision: the vacuum-induced spectral weight of the slab is taken
// as its total loss, so a transparent medium emits nothing and the sign flip
// of the loss factor at the crossover cancels the sign flip of b, keeping
// I >= 0 throughout.  Inside the crossover window the product is evaluated
// by its first-order limit, d(1-|T|^2-|R|^2)/dE / beta, with the slope taken
// from the two neighboring grid samples.
inline EmissionSpectrum emission_intensity(
    const EmissionState& state, const SlabTransfer& transfer,
    const DielectricResponse& response,
    double crossover_window = default_crossover_window) {
  state.validate();
  require_same_grid(transfer.grid, response.grid, "emission_intensity");
  if (transfer.all_lasing())
    throw LasingThreshold("emission_intensity: every sample is at the lasing threshold");

  const FrequencyGrid& grid = transfer.grid;
  const std::size_t count = grid.size();
  const double beta = state.beta();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::vector<double> loss(count, nan);
  for (std::size_t k = 0; k < count; ++k)
    if (!transfer.lasing[k]) loss[k] = transfer.loss_factor(k);

  EmissionSpectrum out{grid, std::vector<double>(count),
                       std::vector<double>(count), std::vector<char>(count, 0)};

  for (std::size_t k = 0; k < count; ++k) {
    const double x = beta * (grid.energy(k) - state.mu_ev);
    out.b[k] = (x == 0.0) ? -0.5 : 1.0 / std::expm1(x);  // finite part at the pole

    if (transfer.lasing[k]) {
      out.i_over_k[k] = nan;
      continue;
    }
    if (std::abs(x) < crossover_window) {
      // slope of the loss factor from the neighboring samples; one-sided at
      // the grid edge or next to a lasing sample
      std::size_t lo = k, hi = k;
      if (k > 0 && !transfer.lasing[k - 1]) lo = k - 1;
      if (k + 1 < count && !transfer.lasing[k + 1]) hi = k + 1;
      if (lo == hi)
        throw CrossoverSingularity(
            "emission_intensity: no usable neighbors to regularize the crossover at "
            "sample " + std::to_string(k));
      const double slope =
          (loss[hi] - loss[lo]) / (grid.energy(hi) - grid.energy(lo));
      out.i_over_k[k] = slope / beta;
      out.regularized[k] = 1;
    } else {
      out.i_over_k[k] = loss[k] / std::expm1(x);
    }
  }
  return out;
}

}  // namespace sqslab
