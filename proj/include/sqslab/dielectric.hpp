#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sqslab/errors.hpp"
#include "sqslab/grid.hpp"

namespace sqslab {

using Complex = std::complex<double>;

// Single excitonic resonance, chi(E) = A / (E_x^2 - E^2 - i*gamma*E).
// gamma is the full damping rate expressed as an energy; A sets the
// oscillator strength (eV^2).  A passive Lorentz medium absorbs:
// chi'' >= 0 for every E > 0.
struct LorentzModel {
  double resonance_ev = 0.0;   // E_x
  double linewidth_ev = 0.0;   // gamma
  double strength_ev2 = 0.0;   // A

  void validate() const {
    if (!(resonance_ev > 0.0) || !std::isfinite(resonance_ev))
      throw ValidationError("medium: lorentz resonance_ev must be > 0");
    if (!(linewidth_ev > 0.0) || !std::isfinite(linewidth_ev))
      throw ValidationError("medium: lorentz linewidth_ev must be > 0");
    if (!(strength_ev2 >= 0.0) || !std::isfinite(strength_ev2))
      throw ValidationError("medium: lorentz strength_ev2 must be >= 0");
  }
};

inline Complex lorentz_chi(const LorentzModel& model, double energy_ev) {
  const double ex2 = model.resonance_ev * model.resonance_ev;
  return model.strength_ev2 /
         Complex(ex2 - energy_ev * energy_ev, -model.linewidth_ev * energy_ev);
}

inline std::vector<Complex> lorentz_chi(const LorentzModel& model,
                                        const FrequencyGrid& grid) {
  model.validate();
  std::vector<Complex> chi(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k)
    chi[k] = lorentz_chi(model, grid.energy(k));
  return chi;
}

// Tabulated chi(E): rows of (energy eV, chi', chi''), strictly increasing
// energies.  Queries are linear per component and only valid inside the span.
class TabulatedSusceptibility {
 public:
  TabulatedSusceptibility(std::vector<double> energies_ev,
                          std::vector<Complex> chi)
      : energies_(std::move(energies_ev)), chi_(std::move(chi)) {
    if (energies_.size() != chi_.size() || energies_.size() < 2)
      throw MalformedTable("susceptibility table: need >= 2 rows of matching length");
    for (std::size_t k = 0; k < energies_.size(); ++k) {
      if (!std::isfinite(energies_[k]) || !std::isfinite(chi_[k].real()) ||
          !std::isfinite(chi_[k].imag()))
        throw MalformedTable("susceptibility table: non-finite entry");
      if (k > 0 && energies_[k] <= energies_[k - 1])
        throw MalformedTable("susceptibility table: energies must be strictly increasing");
    }
  }

  double span_min() const { return energies_.front(); }
  double span_max() const { return energies_.back(); }
  std::size_t rows() const { return energies_.size(); }

  Complex interpolate(double energy_ev) const {
    if (energy_ev < span_min() || energy_ev > span_max()) {
      std::ostringstream msg;
      msg << "susceptibility table: query " << energy_ev
          << " eV outside table span [" << span_min() << ", " << span_max() << "]";
      throw OutOfRange(msg.str());
    }
    // exact at nodes, linear in between
    const auto it = std::lower_bound(energies_.begin(), energies_.end(), energy_ev);
    const auto hi = static_cast<std::size_t>(it - energies_.begin());
    if (hi < energies_.size() && energies_[hi] == energy_ev) return chi_[hi];
    const double t =
        (energy_ev - energies_[hi - 1]) / (energies_[hi] - energies_[hi - 1]);
    return chi_[hi - 1] + t * (chi_[hi] - chi_[hi - 1]);
  }

 private:
  std::vector<double> energies_;
  std::vector<Complex> chi_;
};

// Table file format: comma-separated `energy_ev, chi_re, chi_im`, one row
// per line, `#` comment lines allowed, plain decimal-point numbers.
inline TabulatedSusceptibility load_susceptibility_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("susceptibility table: cannot open " + path);
  std::vector<double> energies;
  std::vector<Complex> chi;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    double e, re, im;
    char c1, c2;
    if (!(row >> e >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',') {
      throw MalformedTable("susceptibility table: bad row at " + path + ":" +
                           std::to_string(lineno));
    }
    energies.push_back(e);
    chi.emplace_back(re, im);
  }
  return TabulatedSusceptibility(std::move(energies), std::move(chi));
}

inline std::vector<Complex> tabulated_chi(const TabulatedSusceptibility& table,
                                          const FrequencyGrid& grid) {
  std::vector<Complex> chi(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k)
    chi[k] = table.interpolate(grid.energy(k));
  return chi;
}

// n = sqrt(1 + chi), branch fixed by continuity along the grid.  The sweep
// is seeded with the principal root at the lowest energy and at each later
// sample picks the sign of the root closest to the previous value.  This is
// the analytic continuation that stays on the forward-propagating branch
// through gain regions (chi'' < 0), where the per-point principal root
// would jump.  Sequential by construction; run once before any parallel
// consumption of the result.
inline std::vector<Complex> refractive_index(const std::vector<Complex>& chi) {
  std::vector<Complex> n(chi.size());
  Complex previous(1.0, 0.0);
  for (std::size_t k = 0; k < chi.size(); ++k) {
    const Complex radicand = 1.0 + chi[k];
    if (std::abs(radicand) < 1e-14)
      throw BranchPointHit("refractive_index: |1 + chi| < 1e-14 at sample " +
                           std::to_string(k) + "; degenerate medium");
    const Complex root = std::sqrt(radicand);
    if (k == 0) {
      n[k] = root;  // principal seed, Re >= 0
    } else {
      n[k] = (std::abs(root - previous) <= std::abs(-root - previous)) ? root : -root;
    }
    previous = n[k];
  }
  return n;
}

// chi(omega) and the derived n(omega) on a common grid.
struct DielectricResponse {
  FrequencyGrid grid;
  std::vector<Complex> chi;
  std::vector<Complex> n;

  static DielectricResponse from_chi(FrequencyGrid grid, std::vector<Complex> chi) {
    if (chi.size() != grid.size())
      throw InconsistentGrids("DielectricResponse: chi sample count != grid size");
    std::vector<Complex> n = refractive_index(chi);
    return DielectricResponse{std::move(grid), std::move(chi), std::move(n)};
  }

  static DielectricResponse from_lorentz(const LorentzModel& model,
                                         const FrequencyGrid& grid) {
    return from_chi(grid, lorentz_chi(model, grid));
  }

  static DielectricResponse from_table(const TabulatedSusceptibility& table,
                                       const FrequencyGrid& grid) {
    return from_chi(grid, tabulated_chi(table, grid));
  }

  // Largest |n(k+1) - n(k)| along the grid; a branch flip shows up as a
  // jump of order 2|n|, far above any resolved physical feature.
  double max_branch_jump() const {
    double worst = 0.0;
    for (std::size_t k = 1; k < n.size(); ++k)
      worst = std::max(worst, std::abs(n[k] - n[k - 1]));
    return worst;
  }
};

}  // namespace sqslab
