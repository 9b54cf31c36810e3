#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "sqslab/config.hpp"
#include "sqslab/dielectric.hpp"
#include "sqslab/emission.hpp"
#include "sqslab/errors.hpp"
#include "sqslab/grid.hpp"
#include "sqslab/slab.hpp"
#include "sqslab/squeezing.hpp"

namespace sqslab {

enum class RowFlag : char { ok, lasing, crossover_regularized };

inline const char* to_token(RowFlag flag) {
  switch (flag) {
    case RowFlag::lasing: return "LASING";
    case RowFlag::crossover_regularized: return "CROSSOVER_REGULARIZED";
    default: return "OK";
  }
}

// One row per grid sample.  LASING rows carry no transfer-dependent values
// (emitted as empty fields); chi, n and b stay defined there.
struct SpectrumTable {
  FrequencyGrid grid;
  std::vector<Complex> chi;
  std::vector<Complex> n;
  std::vector<double> t_abs2;
  std::vector<double> r_abs2;
  std::vector<double> b;
  std::vector<double> i_over_k;
  std::vector<double> s_at_phase;
  std::vector<double> s_min;
  std::vector<double> s_max;
  std::vector<RowFlag> flags;
  double input_min = 0.0;
  double input_max = 0.0;
  double squeeze_magnitude = 0.0;
  double mu_ev = 0.0;
  DegradationReport report;
};

// response -> transfer -> emission -> squeezing, assembled per sample.
// Deterministic: the same config yields a byte-identical CSV, and the
// thread count never changes any value (the only sequential stage is the
// branch-tracking pass inside the response construction).
inline SpectrumTable run_pipeline(const RunConfig& config, unsigned threads = 1) {
  const DielectricResponse response = config.make_response();
  const SlabTransfer transfer =
      SlabTransfer::compute(response, config.geometry(), config.lasing_guard, threads);
  if (transfer.all_lasing())
    throw LasingThreshold("run_pipeline: lasing threshold reached on the whole grid");
  const EmissionSpectrum emission =
      emission_intensity(config.emission, transfer, response, config.crossover_window);
  const SqueezingResult squeezing =
      squeezing_spectrum(config.squeeze, transfer, emission);

  const std::size_t count = response.grid.size();
  SpectrumTable table{response.grid,
                      response.chi,
                      response.n,
                      std::vector<double>(count),
                      std::vector<double>(count),
                      emission.b,
                      emission.i_over_k,
                      squeezing.s_at_phase,
                      squeezing.s_min,
                      squeezing.s_max,
                      std::vector<RowFlag>(count, RowFlag::ok),
                      squeezing.input_min,
                      squeezing.input_max,
                      config.squeeze.magnitude,
                      config.emission.mu_ev,
                      {}};

  for (std::size_t k = 0; k < count; ++k) {
    table.t_abs2[k] = std::norm(transfer.T[k]);
    table.r_abs2[k] = std::norm(transfer.R[k]);
    if (transfer.lasing[k])
      table.flags[k] = RowFlag::lasing;
    else if (emission.regularized[k])
      table.flags[k] = RowFlag::crossover_regularized;
  }
  table.report = degradation_report(squeezing);
  return table;
}

}  // namespace sqslab
