#pragma once

// Physical constants in the eV-based unit system used throughout:
// energies in eV, lengths in m, times in s.  CODATA 2018 values.

namespace sqslab::constants {

inline constexpr double hbar_ev_s = 6.582119569e-16;         // reduced Planck constant
inline constexpr double c_m_per_s = 2.99792458e8;            // speed of light (exact)
inline constexpr double k_boltzmann_ev_per_k = 8.617333262e-5;
inline constexpr double epsilon0_si = 8.8541878128e-12;      // vacuum permittivity, F/m

}  // namespace sqslab::constants

namespace sqslab {

// The single energy -> angular frequency conversion point.  Everything
// external speaks eV; everything that needs omega goes through here.
inline double angular_frequency(double energy_ev) {
  return energy_ev / constants::hbar_ev_s;
}

}  // namespace sqslab
