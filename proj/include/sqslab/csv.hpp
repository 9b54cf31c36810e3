#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "sqslab/errors.hpp"
#include "sqslab/pipeline.hpp"

namespace sqslab {

inline constexpr const char* spectrum_csv_header =
    "energy_ev,chi_re,chi_im,n_re,n_im,t_abs2,r_abs2,b,i_over_k,"
    "s_at_phase,s_min,s_max,flags";

namespace detail {

inline std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12e", value);
  return buffer;
}

inline double parse_field(const std::string& field) {
  if (field.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::stod(field);
}

}  // namespace detail

// Writes the table: exact header above, one row per sample, %.12e numbers,
// comma separator, \n line endings, flag tokens OK | LASING |
// CROSSOVER_REGULARIZED.  LASING rows leave the transfer-dependent fields
// empty.  A comment footer records the squeezed intervals.
inline void emit_csv(const SpectrumTable& table, const std::string& path) {
  std::ostringstream out;
  out << spectrum_csv_header << "\n";
  for (std::size_t k = 0; k < table.grid.size(); ++k) {
    using detail::format_number;
    out << format_number(table.grid.energy(k)) << ','
        << format_number(table.chi[k].real()) << ','
        << format_number(table.chi[k].imag()) << ','
        << format_number(table.n[k].real()) << ','
        << format_number(table.n[k].imag()) << ',';
    if (table.flags[k] == RowFlag::lasing) {
      out << ",," << format_number(table.b[k]) << ",,,,,";
    } else {
      out << format_number(table.t_abs2[k]) << ','
          << format_number(table.r_abs2[k]) << ','
          << format_number(table.b[k]) << ','
          << format_number(table.i_over_k[k]) << ','
          << format_number(table.s_at_phase[k]) << ','
          << format_number(table.s_min[k]) << ','
          << format_number(table.s_max[k]) << ',';
    }
    out << to_token(table.flags[k]) << "\n";
  }

  out << "# squeezed_intervals: " << table.report.squeezed_intervals.size() << "\n";
  for (const auto& interval : table.report.squeezed_intervals)
    out << "# squeezed_interval: " << detail::format_number(interval.energy_lo) << ' '
        << detail::format_number(interval.energy_hi) << "\n";
  if (std::isfinite(table.report.global_min_value))
    out << "# global_min: energy_ev=" << detail::format_number(table.report.global_min_energy)
        << " s_min_over_k=" << detail::format_number(table.report.global_min_value) << "\n";

  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("emit_csv: cannot open " + path + " for writing");
  file << out.str();
  if (!file) throw IoError("emit_csv: write failed for " + path);
}

// Reads a table written by emit_csv.  Comment/footer lines are skipped and
// the degradation report is recomputed from the parsed s_min column; the
// run metadata (input envelopes, |xi|, mu) is not stored in the CSV and is
// left zeroed.
inline SpectrumTable read_csv(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("read_csv: cannot open " + path);

  std::string line;
  if (!std::getline(file, line)) throw MalformedTable("read_csv: empty file " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != spectrum_csv_header)
    throw MalformedTable("read_csv: unexpected header in " + path);

  std::vector<double> energies;
  std::vector<Complex> chi, n;
  std::vector<double> t_abs2, r_abs2, b, i_over_k, s_at_phase, s_min, s_max;
  std::vector<RowFlag> flags;

  while (std::getline(file, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream row(line);
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.emplace_back();
    if (fields.size() != 13)
      throw MalformedTable("read_csv: expected 13 fields, got " +
                           std::to_string(fields.size()) + " in " + path);
    using detail::parse_field;
    energies.push_back(parse_field(fields[0]));
    chi.emplace_back(parse_field(fields[1]), parse_field(fields[2]));
    n.emplace_back(parse_field(fields[3]), parse_field(fields[4]));
    t_abs2.push_back(parse_field(fields[5]));
    r_abs2.push_back(parse_field(fields[6]));
    b.push_back(parse_field(fields[7]));
    i_over_k.push_back(parse_field(fields[8]));
    s_at_phase.push_back(parse_field(fields[9]));
    s_min.push_back(parse_field(fields[10]));
    s_max.push_back(parse_field(fields[11]));
    if (fields[12] == "OK")
      flags.push_back(RowFlag::ok);
    else if (fields[12] == "LASING")
      flags.push_back(RowFlag::lasing);
    else if (fields[12] == "CROSSOVER_REGULARIZED")
      flags.push_back(RowFlag::crossover_regularized);
    else
      throw MalformedTable("read_csv: unknown flag token '" + fields[12] + "'");
  }

  SpectrumTable table{FrequencyGrid(std::move(energies)),
                      std::move(chi),
                      std::move(n),
                      std::move(t_abs2),
                      std::move(r_abs2),
                      std::move(b),
                      std::move(i_over_k),
                      std::move(s_at_phase),
                      std::move(s_min),
                      std::move(s_max),
                      std::move(flags),
                      0.0,
                      0.0,
                      0.0,
                      0.0,
                      {}};
  SqueezingResult for_report{table.grid,  table.s_at_phase, table.s_min,
                             table.s_max, table.i_over_k,   0.0,
                             0.0};
  table.report = degradation_report(for_report);
  return table;
}

// Standalone matplotlib script: panel (a) squeezing envelopes with the
// input references as dashed lines, panel (b) chi''.  References the CSV
// by the relative name given; a gain run (mu > 0) gets a vertical marker
// at hbar omega = mu.
inline void emit_plot_script(const SpectrumTable& table, const std::string& csv_name,
                             const std::string& path) {
  std::ostringstream script;
  script << "#!/usr/bin/env python3\n"
         << "\"\"\"Plot squeezing envelopes and chi'' from " << csv_name << ".\"\"\"\n"
         << "import csv\n"
         << "import matplotlib\n"
         << "matplotlib.use(\"Agg\")\n"
         << "import matplotlib.pyplot as plt\n"
         << "\n"
         << "CSV = \"" << csv_name << "\"\n"
         << "INPUT_MIN = " << detail::format_number(table.input_min) << "\n"
         << "INPUT_MAX = " << detail::format_number(table.input_max) << "\n"
         << "MU_EV = " << detail::format_number(table.mu_ev) << "\n"
         << "\n"
         << "energy, s_min, s_max, s_at_phase, chi_im = [], [], [], [], []\n"
         << "with open(CSV, newline=\"\") as handle:\n"
         << "    for row in csv.DictReader(r for r in handle if not r.startswith(\"#\")):\n"
         << "        energy.append(float(row[\"energy_ev\"]))\n"
         << "        chi_im.append(float(row[\"chi_im\"]))\n"
         << "        lasing = row[\"flags\"] == \"LASING\"\n"
         << "        s_min.append(None if lasing else float(row[\"s_min\"]))\n"
         << "        s_max.append(None if lasing else float(row[\"s_max\"]))\n"
         << "        s_at_phase.append(None if lasing else float(row[\"s_at_phase\"]))\n"
         << "\n"
         << "fig, (ax_sq, ax_chi) = plt.subplots(2, 1, sharex=True, figsize=(7, 7))\n"
         << "ax_sq.plot(energy, s_max, color=\"0.6\", label=\"S_max/K\")\n"
         << "ax_sq.plot(energy, s_min, color=\"black\", label=\"S_min/K\")\n"
         << "ax_sq.axhline(INPUT_MAX, linestyle=\"--\", color=\"0.6\")\n"
         << "ax_sq.axhline(INPUT_MIN, linestyle=\"--\", color=\"black\")\n"
         << "ax_sq.axhline(0.0, linewidth=0.5, color=\"0.8\")\n"
         << "if MU_EV > 0.0:\n"
         << "    ax_sq.axvline(MU_EV, linestyle=\":\", color=\"tab:red\")\n"
         << "    ax_chi.axvline(MU_EV, linestyle=\":\", color=\"tab:red\")\n"
         << "ax_sq.set_ylabel(\"S/K\")\n"
         << "ax_sq.legend(loc=\"best\", fontsize=8)\n"
         << "ax_chi.plot(energy, chi_im, color=\"tab:blue\")\n"
         << "ax_chi.axhline(0.0, linewidth=0.5, color=\"0.8\")\n"
         << "ax_chi.set_xlabel(\"photon energy (eV)\")\n"
         << "ax_chi.set_ylabel(\"chi''\")\n"
         << "fig.tight_layout()\n"
         << "fig.savefig(CSV.rsplit(\".\", 1)[0] + \".png\", dpi=160)\n";

  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("emit_plot_script: cannot open " + path + " for writing");
  file << script.str();
  if (!file) throw IoError("emit_plot_script: write failed for " + path);
}

}  // namespace sqslab
