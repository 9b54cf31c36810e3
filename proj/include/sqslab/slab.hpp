#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "sqslab/constants.hpp"
#include "sqslab/dielectric.hpp"
#include "sqslab/errors.hpp"
#include "sqslab/grid.hpp"
#include "sqslab/parallel.hpp"

namespace sqslab {

struct SlabGeometry {
  double thickness_m = 0.0;

  void validate() const {
    if (!(thickness_m > 0.0) || !std::isfinite(thickness_m))
      throw ValidationError("slab: thickness must be finite and > 0");
  }
};

inline constexpr double default_lasing_guard = 1e-9;

// Single-interface Fresnel factor combined with the one-pass propagation
// phase: r = [(1-n)/(1+n)] e^{i omega n L / c}.
inline Complex internal_reflectivity(Complex n, double omega, double thickness_m) {
  const Complex phase =
      std::exp(Complex(0.0, 1.0) * omega * n * thickness_m / constants::c_m_per_s);
  return (1.0 - n) / (1.0 + n) * phase;
}

namespace detail {

// 1 - r^2, the Fabry-Perot round-trip denominator.  A gain slab reaching
// |1 - r^2| < guard is at self-oscillation; linear spectra are undefined.
inline Complex round_trip_denominator(Complex n, double omega, double thickness_m,
                                      double lasing_guard) {
  const Complex r = internal_reflectivity(n, omega, thickness_m);
  const Complex denom = 1.0 - r * r;
  if (std::abs(denom) < lasing_guard)
    throw LasingThreshold("slab: |1 - r^2| below lasing guard; slab self-oscillates");
  return denom;
}

}  // namespace detail

// Amplitude transmission of the slab, referenced to free propagation over L:
// T = 4n / {(1+n)^2 [1 - r^2]} e^{i omega (n-1) L / c}.
inline Complex transmission(Complex n, double omega, double thickness_m,
                            double lasing_guard = default_lasing_guard) {
  const Complex denom =
      detail::round_trip_denominator(n, omega, thickness_m, lasing_guard);
  const Complex phase = std::exp(Complex(0.0, 1.0) * omega * (n - 1.0) *
                                 thickness_m / constants::c_m_per_s);
  return 4.0 * n / ((1.0 + n) * (1.0 + n) * denom) * phase;
}

// Amplitude reflection (standard Fabry-Perot closed form; needed for the
// energy bookkeeping 1 - |T|^2 - |R|^2 in the emission model):
// R = r0 [1 - e^{2 i omega n L / c}] / [1 - r0^2 e^{2 i omega n L / c}].
inline Complex reflection(Complex n, double omega, double thickness_m,
                          double lasing_guard = default_lasing_guard) {
  detail::round_trip_denominator(n, omega, thickness_m, lasing_guard);
  const Complex r0 = (1.0 - n) / (1.0 + n);
  const Complex round_trip = std::exp(Complex(0.0, 2.0) * omega * n *
                                      thickness_m / constants::c_m_per_s);
  return r0 * (1.0 - round_trip) / (1.0 - r0 * r0 * round_trip);
}

// Partial sums of the ray (multiple-reflection) series, the independent
// oracle for the closed forms above.  Fresnel factors t0 = 2/(1+n),
// t0' = 2n/(1+n), r0' = (n-1)/(n+1); transmission referenced to vacuum
// propagation e^{i omega L / c}, matching the closed-form convention.
struct RaySeriesResult {
  Complex t;
  Complex r;
};

inline RaySeriesResult multiple_reflection_oracle(Complex n, double omega,
                                                  double thickness_m, int bounces) {
  const Complex i_unit(0.0, 1.0);
  const Complex phi = omega * n * thickness_m / constants::c_m_per_s;
  const Complex free_phase =
      std::exp(i_unit * omega * thickness_m / constants::c_m_per_s);
  const Complex t0 = 2.0 / (1.0 + n);
  const Complex t0p = 2.0 * n / (1.0 + n);
  const Complex r0p = (n - 1.0) / (n + 1.0);
  const Complex one_pass = std::exp(i_unit * phi);
  const Complex ratio = r0p * r0p * one_pass * one_pass;

  if (std::abs(ratio) >= 1.0)
    throw NonConvergent("multiple_reflection_oracle: |r0'^2 e^{2 i phi}| >= 1");

  Complex sum(0.0, 0.0);
  Complex term(1.0, 0.0);
  for (int k = 0; k <= bounces; ++k) {
    sum += term;
    term *= ratio;
  }
  const Complex t = t0 * t0p * one_pass / free_phase * sum;
  // reflection series: front-face bounce plus one internal round trip per
  // further term, R = -r0' + t0 t0' r0' e^{2 i phi} sum_k ratio^k
  const Complex r = -r0p + t0 * t0p * r0p * one_pass * one_pass * sum;
  return {t, r};
}

// Per-frequency slab coefficients.  Samples where the lasing guard trips
// carry NaN in T and R and are flagged; everything downstream must skip them.
struct SlabTransfer {
  FrequencyGrid grid;
  SlabGeometry slab;
  std::vector<Complex> n;  // refractive index used to build the coefficients
  std::vector<Complex> r;  // internal reflectivity
  std::vector<Complex> T;  // amplitude transmission
  std::vector<Complex> R;  // amplitude reflection
  std::vector<char> lasing;

  // Per-frequency and embarrassingly parallel; each worker writes only its
  // own samples, so the result is identical for any thread count.
  static SlabTransfer compute(const DielectricResponse& response,
                              const SlabGeometry& slab,
                              double lasing_guard = default_lasing_guard,
                              unsigned threads = 1) {
    slab.validate();
    const std::size_t count = response.grid.size();
    SlabTransfer out{response.grid, slab,           response.n,
                     std::vector<Complex>(count),   std::vector<Complex>(count),
                     std::vector<Complex>(count),   std::vector<char>(count, 0)};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    parallel_for(count, threads, [&](std::size_t k) {
      const double omega = response.grid.omega(k);
      out.r[k] = internal_reflectivity(response.n[k], omega, slab.thickness_m);
      try {
        out.T[k] = transmission(response.n[k], omega, slab.thickness_m, lasing_guard);
        out.R[k] = reflection(response.n[k], omega, slab.thickness_m, lasing_guard);
      } catch (const LasingThreshold&) {
        out.T[k] = Complex(nan, nan);
        out.R[k] = Complex(nan, nan);
        out.lasing[k] = 1;
      }
    });
    return out;
  }

  bool all_lasing() const {
    for (char f : lasing)
      if (!f) return false;
    return !lasing.empty();
  }

  // 1 - |T|^2 - |R|^2: positive where the slab dissipates, negative where
  // it amplifies, zero for a lossless medium.
  double loss_factor(std::size_t k) const {
    return 1.0 - std::norm(T[k]) - std::norm(R[k]);
  }
};

namespace detail {

// Vertex of the parabola through (x0,y0), (x1,y1), (x2,y2).
inline double parabola_vertex(double x0, double y0, double x1, double y1,
                              double x2, double y2) {
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curvature = (d12 - d01) / (x2 - x0);
  if (curvature == 0.0) return x1;
  return 0.5 * (x0 + x1 - d01 / curvature);
}

}  // namespace detail

// Fabry-Perot resonances: local maxima of |T|^2, refined by a three-point
// parabola on log|T|^2, reported only where the refined peak satisfies the
// resonance condition omega_s = 2 pi c s / (L n'(omega_s)) for an integer s
// to within one local grid step.  The |T|^2 maxima alternate between
// integer and half-integer s; only the integer ones count as resonances.
inline std::vector<double> find_resonances(const SlabTransfer& transfer) {
  std::vector<double> resonances;
  const FrequencyGrid& grid = transfer.grid;
  const double length = transfer.slab.thickness_m;
  const double two_pi_hbar_c =
      2.0 * std::numbers::pi * constants::hbar_ev_s * constants::c_m_per_s;

  for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
    if (transfer.lasing[k - 1] || transfer.lasing[k] || transfer.lasing[k + 1])
      continue;
    const double y0 = std::norm(transfer.T[k - 1]);
    const double y1 = std::norm(transfer.T[k]);
    const double y2 = std::norm(transfer.T[k + 1]);
    if (!(y1 > y0 && y1 > y2)) continue;
    if (y0 <= 0.0 || y1 <= 0.0 || y2 <= 0.0) continue;

    const double peak_ev = detail::parabola_vertex(
        grid.energy(k - 1), std::log(y0), grid.energy(k), std::log(y1),
        grid.energy(k + 1), std::log(y2));

    // n' at the refined peak, linear between the bracketing samples
    const std::size_t lo = (peak_ev < grid.energy(k)) ? k - 1 : k;
    const double t =
        (peak_ev - grid.energy(lo)) / (grid.energy(lo + 1) - grid.energy(lo));
    const double n_prime =
        transfer.n[lo].real() + t * (transfer.n[lo + 1].real() - transfer.n[lo].real());
    if (!(n_prime > 0.0)) continue;

    const double spacing = two_pi_hbar_c / (length * n_prime);  // integer-s spacing
    const double s = std::round(peak_ev / spacing);
    if (s < 1.0) continue;
    if (std::abs(peak_ev - s * spacing) < grid.step(k)) resonances.push_back(peak_ev);
  }
  return resonances;
}

}  // namespace sqslab
