#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "sqslab/constants.hpp"
#include "sqslab/errors.hpp"

namespace sqslab {

// Ordered photon-energy samples (eV) over which all spectra are evaluated.
// Strictly increasing, all positive, at least two samples.
class FrequencyGrid {
 public:
  explicit FrequencyGrid(std::vector<double> energies_ev)
      : energies_(std::move(energies_ev)) {
    if (energies_.size() < 2)
      throw ValidationError("grid: need at least 2 energy samples");
    for (std::size_t k = 0; k < energies_.size(); ++k) {
      if (!std::isfinite(energies_[k]) || energies_[k] <= 0.0)
        throw ValidationError("grid: energies must be finite and > 0");
      if (k > 0 && energies_[k] <= energies_[k - 1])
        throw ValidationError("grid: energies must be strictly increasing");
    }
  }

  static FrequencyGrid linspace(double e_min, double e_max, std::size_t count) {
    if (count < 2) throw ValidationError("grid: need at least 2 energy samples");
    if (!(e_min < e_max))
      throw ValidationError("grid: e_min must be < e_max");
    std::vector<double> e(count);
    const double h = (e_max - e_min) / static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k)
      e[k] = e_min + h * static_cast<double>(k);
    e.back() = e_max;  // endpoint exact
    return FrequencyGrid(std::move(e));
  }

  std::size_t size() const { return energies_.size(); }
  double energy(std::size_t k) const { return energies_[k]; }
  const std::vector<double>& energies() const { return energies_; }

  double omega(std::size_t k) const { return angular_frequency(energies_[k]); }

  double front() const { return energies_.front(); }
  double back() const { return energies_.back(); }

  bool contains(double energy_ev) const {
    return energy_ev >= front() && energy_ev <= back();
  }

  // Local spacing at sample k; the "one grid step" scale for peak and
  // resonance tolerances.
  double step(std::size_t k) const {
    if (k == 0) return energies_[1] - energies_[0];
    if (k + 1 == energies_.size()) return energies_[k] - energies_[k - 1];
    return 0.5 * (energies_[k + 1] - energies_[k - 1]);
  }

  friend bool operator==(const FrequencyGrid& a, const FrequencyGrid& b) {
    return a.energies_ == b.energies_;
  }

 private:
  std::vector<double> energies_;
};

inline void require_same_grid(const FrequencyGrid& a, const FrequencyGrid& b,
                              const char* where) {
  if (!(a == b))
    throw InconsistentGrids(std::string(where) + ": inputs computed on different grids");
}

}  // namespace sqslab
