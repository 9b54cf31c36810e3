#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include "sqslab/config.hpp"
#include "support/tempfile.hpp"

using namespace sqslab;
using Catch::Approx;
using testsupport::TempFile;

namespace {

const std::string minimal =
    "[grid]\n"
    "e_min = 1.510\n"
    "e_max = 1.520\n"
    "count = 1000\n"
    "[slab]\n"
    "thickness_um = 25\n"
    "[medium]\n"
    "model = lorentz\n"
    "resonance_ev = 1.515\n"
    "linewidth_ev = 0.0002\n";

}  // namespace

TEST_CASE("minimal config gets documented defaults") {
  TempFile file("sqslab_minimal.cfg", minimal);
  const RunConfig config = load_config(file.path());

  REQUIRE(config.e_min_ev == 1.510);
  REQUIRE(config.e_max_ev == 1.520);
  REQUIRE(config.samples == 1000);
  REQUIRE(config.thickness_um == 25.0);
  REQUIRE(config.medium == MediumModel::lorentz);

  // defaults
  REQUIRE(config.emission.temperature_k == 300.0);
  REQUIRE(config.emission.mu_ev == 0.0);
  REQUIRE(config.squeeze.magnitude == 0.0);
  REQUIRE(config.squeeze.phase_rad == 0.0);
  REQUIRE(config.squeeze.carrier_ev == Approx(1.515));
  REQUIRE(config.output_dir == ".");
  REQUIRE(config.emit_plot);
  REQUIRE(config.lasing_guard == 1e-9);
  REQUIRE(config.crossover_window == 1e-6);
  // oscillator strength defaults to gamma * Ex (unit peak chi'')
  REQUIRE(config.lorentz.strength_ev2 == Approx(0.0002 * 1.515));
}

TEST_CASE("config validation errors name the invariant") {
  SECTION("inverted grid") {
    TempFile file("sqslab_badgrid.cfg",
                  "[grid]\ne_min = 2.0\ne_max = 1.0\ncount = 100\n"
                  "[slab]\nthickness_um = 25\n"
                  "[medium]\nmodel = lorentz\nresonance_ev = 1.5\nlinewidth_ev = 1e-4\n");
    try {
      load_config(file.path());
      FAIL("expected ValidationError");
    } catch (const ValidationError& error) {
      REQUIRE(std::string(error.what()).find("grid") != std::string::npos);
    }
  }

  SECTION("missing required key") {
    TempFile file("sqslab_nores.cfg",
                  "[grid]\ne_min = 1.0\ne_max = 2.0\ncount = 100\n"
                  "[slab]\nthickness_um = 25\n"
                  "[medium]\nmodel = lorentz\nlinewidth_ev = 1e-4\n");
    REQUIRE_THROWS_AS(load_config(file.path()), ValidationError);
  }

  SECTION("unknown medium model") {
    TempFile file("sqslab_badmodel.cfg",
                  "[grid]\ne_min = 1.0\ne_max = 2.0\ncount = 100\n"
                  "[slab]\nthickness_um = 25\n"
                  "[medium]\nmodel = drude\n");
    REQUIRE_THROWS_AS(load_config(file.path()), ValidationError);
  }

  SECTION("carrier outside the grid") {
    TempFile file("sqslab_badcarrier.cfg",
                  minimal + "[squeeze]\nmagnitude = 0.2\ncarrier_ev = 1.6\n");
    REQUIRE_THROWS_AS(load_config(file.path()), ValidationError);
  }
}

TEST_CASE("config parse errors carry context") {
  SECTION("missing table file") {
    TempFile file("sqslab_notable.cfg",
                  "[grid]\ne_min = 1.0\ne_max = 2.0\ncount = 100\n"
                  "[slab]\nthickness_um = 25\n"
                  "[medium]\nmodel = table\npath = does_not_exist.csv\n");
    try {
      load_config(file.path());
      FAIL("expected ParseError");
    } catch (const ParseError& error) {
      REQUIRE(std::string(error.what()).find("does_not_exist.csv") != std::string::npos);
    }
  }

  SECTION("unknown key is rejected with its line") {
    TempFile file("sqslab_unknown.cfg", minimal + "oscillator = 7\n");
    try {
      load_config(file.path());
      FAIL("expected ParseError");
    } catch (const ParseError& error) {
      const std::string what = error.what();
      REQUIRE(what.find("oscillator") != std::string::npos);
      REQUIRE(what.find(":11") != std::string::npos);  // line number
    }
  }

  SECTION("unknown section") {
    TempFile file("sqslab_badsect.cfg", "[detector]\nefficiency = 0.9\n" + minimal);
    REQUIRE_THROWS_AS(load_config(file.path()), ParseError);
  }

  SECTION("malformed number") {
    TempFile file("sqslab_nan.cfg",
                  "[grid]\ne_min = fast\ne_max = 2.0\ncount = 100\n"
                  "[slab]\nthickness_um = 25\n"
                  "[medium]\nmodel = lorentz\nresonance_ev = 1.5\nlinewidth_ev = 1e-4\n");
    REQUIRE_THROWS_AS(load_config(file.path()), ParseError);
  }

  SECTION("duplicate key") {
    TempFile file("sqslab_dup.cfg", minimal + "[emission]\nmu_ev = 0\nmu_ev = 1\n");
    REQUIRE_THROWS_AS(load_config(file.path()), ParseError);
  }

  SECTION("key outside any section") {
    TempFile file("sqslab_loose.cfg", "e_min = 1.0\n" + minimal);
    REQUIRE_THROWS_AS(load_config(file.path()), ParseError);
  }
}

TEST_CASE("config details") {
  SECTION("squeeze phase is wrapped into [0, 2 pi)") {
    TempFile file("sqslab_phase.cfg",
                  minimal + "[squeeze]\nmagnitude = 0.2\nphase_rad = 7.0\n");
    const RunConfig config = load_config(file.path());
    REQUIRE(config.squeeze.phase_rad ==
            Approx(7.0 - 2.0 * std::numbers::pi).epsilon(1e-12));
  }

  SECTION("table path resolves relative to the config file") {
    TempFile table("sqslab_rel_chi.csv", "1.0, 0.5, 0.01\n2.0, 0.5, 0.01\n");
    TempFile file("sqslab_rel.cfg",
                  "[grid]\ne_min = 1.2\ne_max = 1.8\ncount = 64\n"
                  "[slab]\nthickness_um = 25\n"
                  "[medium]\nmodel = table\npath = sqslab_rel_chi.csv\n");
    const RunConfig config = load_config(file.path());
    REQUIRE(config.medium == MediumModel::table);
    const auto response = config.make_response();
    REQUIRE(response.chi.front() == Complex(0.5, 0.01));
  }

  SECTION("comments and blank lines are ignored") {
    TempFile file("sqslab_comments.cfg",
                  "# a recipe\n\n" + minimal + "\n[emission]  # inline\n"
                  "temperature_k = 10  # cold\n");
    const RunConfig config = load_config(file.path());
    REQUIRE(config.emission.temperature_k == 10.0);
  }
}
