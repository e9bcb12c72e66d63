#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"
#include "core/evaluation.hpp"
#include "test_util.hpp"

using namespace csaudio;
using testutil::random_frame;

namespace {

Frame harmonic_frame(std::size_t n, std::uint64_t seed) {
  SynthSpec spec;
  spec.kind = SynthKind::Harmonic;
  spec.n = n;
  spec.fundamental_index = 8;
  spec.harmonic_count = 10;
  spec.decay = 0.7;
  spec.seed = seed;
  return synthesize(spec, BasisKind::Dct);
}

}  // namespace

TEST_CASE("mse") {
  Frame a{{1.0, 1.0}, 8000, "t"};
  Frame b{{0.0, 0.0}, 8000, "t"};
  CHECK(mse(a, a) == 0.0);
  CHECK(mse(a, b) == doctest::Approx(1.0));
  Frame c{{1.0, 0.0}, 8000, "t"};
  CHECK(mse(c, b) == doctest::Approx(0.5));

  Frame wrong{{1.0}, 8000, "t"};
  CHECK_THROWS_AS(mse(a, wrong), Error);
}

TEST_CASE("measurement_count rounds half up") {
  CHECK(measurement_count(50, 3000) == 1500);
  CHECK(measurement_count(33, 100) == 33);
  CHECK(measurement_count(25, 10) == 3);  // 2.5 rounds up
  CHECK(measurement_count(100, 77) == 77);
  CHECK_THROWS_AS(measurement_count(0, 100), Error);
  CHECK_THROWS_AS(measurement_count(101, 100), Error);

  // Percentages that round to zero measurements surface as a pattern
  // error rather than being silently clamped.
  CHECK(measurement_count(1, 10) == 0);
  const Frame tiny = random_frame(10, 1);
  CHECK_THROWS_AS(run_cell(tiny, BasisKind::Dct, 1, 1, SolverConfig{}), Error);
}

TEST_CASE("run_cell at 100% has a vanishing error on any frame") {
  for (BasisKind kind : {BasisKind::Dct, BasisKind::Dft}) {
    const Frame f = random_frame(128, 42);
    const SweepRow row = run_cell(f, kind, 100, 5, SolverConfig{});
    CHECK(row.m == 128);
    CHECK(row.mse < 1e-10);
    CHECK(row.converged);
  }
}

TEST_CASE("run_cell recovers an easy planted instance exactly") {
  SynthSpec spec;
  spec.kind = SynthKind::Sparse;
  spec.n = 512;
  spec.sparsity = 10;
  spec.seed = 12;
  const Frame f = synthesize(spec, BasisKind::Dct);
  const SweepRow row = run_cell(f, BasisKind::Dct, 50, 99, SolverConfig{});
  CHECK(row.m == 256);
  CHECK(row.converged);
  CHECK(row.mse < 1e-10);
}

TEST_CASE("run_cell is deterministic") {
  const Frame f = harmonic_frame(256, 3);
  const SweepRow a = run_cell(f, BasisKind::Dct, 40, 17, SolverConfig{});
  const SweepRow b = run_cell(f, BasisKind::Dct, 40, 17, SolverConfig{});
  CHECK(a.mse == b.mse);
  CHECK(a.iterations == b.iterations);
  CHECK(a.m == b.m);
  CHECK(a.converged == b.converged);
}

TEST_CASE("degenerate sweep equals run_cell") {
  SweepSpec spec;
  spec.frame = harmonic_frame(256, 4);
  spec.percentages = {50};
  spec.trials = 1;
  spec.bases = {BasisKind::Dct};
  spec.base_seed = 31;
  const SweepReport report = run_sweep(spec);
  REQUIRE(report.rows.size() == 1);
  const SweepRow direct = run_cell(spec.frame, BasisKind::Dct, 50, 31, spec.solver);
  CHECK(report.rows[0].mse == direct.mse);
  CHECK(report.rows[0].seed == 31);
  CHECK(report.aggregates.size() == 1);
  CHECK(report.aggregates[0].mean_mse == direct.mse);
  CHECK(report.aggregates[0].median_mse == direct.mse);
}

TEST_CASE("sweep row order, seeds and aggregates") {
  SweepSpec spec;
  spec.frame = harmonic_frame(128, 5);
  spec.percentages = {40, 60};
  spec.trials = 2;
  spec.bases = {BasisKind::Dct, BasisKind::Dft};
  spec.base_seed = 100;
  const SweepReport report = run_sweep(spec);
  REQUIRE(report.rows.size() == 8);
  // (basis, percentage, trial) order with seed = base + counter.
  CHECK(report.rows[0].basis == BasisKind::Dct);
  CHECK(report.rows[0].percentage == 40);
  CHECK(report.rows[0].seed == 100);
  CHECK(report.rows[3].basis == BasisKind::Dct);
  CHECK(report.rows[3].percentage == 60);
  CHECK(report.rows[3].seed == 103);
  CHECK(report.rows[4].basis == BasisKind::Dft);
  CHECK(report.rows[4].seed == 104);
  CHECK(report.rows[7].seed == 107);
  REQUIRE(report.aggregates.size() == 4);
  CHECK(report.aggregate(BasisKind::Dft, 60).percentage == 60);
  CHECK_THROWS_AS(report.aggregate(BasisKind::Dft, 99), Error);
}

TEST_CASE("sweep MSE improves with the measurement rate on the harmonic proxy") {
  SweepSpec spec;
  spec.frame = harmonic_frame(512, 6);
  spec.percentages = {20, 40, 60, 80};
  spec.trials = 3;
  spec.bases = {BasisKind::Dct};
  spec.base_seed = 7;
  const SweepReport report = run_sweep(spec);
  int inversions = 0;
  for (std::size_t i = 1; i < report.aggregates.size(); ++i) {
    const double prev = report.aggregates[i - 1].mean_mse;
    const double cur = report.aggregates[i].mean_mse;
    // Tiny absolute slack so solver-floor scatter does not count as a
    // real inversion.
    if (cur > 1.10 * prev + 1e-12) ++inversions;
  }
  CHECK(inversions <= 1);
}

TEST_CASE("experiment-length harmonic proxy orders by rate and by basis") {
  SweepSpec spec;
  spec.frame = harmonic_frame(3000, 42);
  spec.percentages = {30, 50};
  spec.trials = 3;
  spec.bases = {BasisKind::Dct, BasisKind::Dft};
  spec.base_seed = 11;
  const SweepReport report = run_sweep(spec);
  // All four cells recover exactly, so the means are solver noise floors;
  // the orderings are asserted up to floor scatter (same slack rule as
  // the monotonicity test above).
  const double dct30 = report.aggregate(BasisKind::Dct, 30).mean_mse;
  const double dct50 = report.aggregate(BasisKind::Dct, 50).mean_mse;
  const double dft50 = report.aggregate(BasisKind::Dft, 50).mean_mse;
  CHECK(dct50 <= 1.10 * dct30 + 1e-12);
  CHECK(dct50 <= 1.10 * dft50 + 1e-12);
}

TEST_CASE("random sparse proxies favor the DCT over the DFT") {
  SynthSpec spec;
  spec.kind = SynthKind::Sparse;
  spec.n = 256;
  spec.sparsity = 8;
  spec.seed = 21;
  SweepSpec sweep;
  sweep.frame = synthesize(spec, BasisKind::Dct);
  sweep.percentages = {50};
  sweep.trials = 3;
  sweep.bases = {BasisKind::Dct, BasisKind::Dft};
  sweep.base_seed = 55;
  const SweepReport report = run_sweep(sweep);
  CHECK(report.aggregate(BasisKind::Dct, 50).mean_mse <=
        report.aggregate(BasisKind::Dft, 50).mean_mse);
}

TEST_CASE("csv format and determinism") {
  SweepSpec spec;
  spec.frame = harmonic_frame(128, 9);
  spec.percentages = {50};
  spec.trials = 1;
  spec.bases = {BasisKind::Dct};
  spec.base_seed = 1;
  const SweepReport report = run_sweep(spec);
  const std::string csv = csv_string(report);

  std::istringstream lines(csv);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "basis,percentage,trial,seed,M,mse,converged,iterations");
  REQUIRE(std::getline(lines, line));
  CHECK(line.rfind("dct,50,0,1,64,", 0) == 0);
  REQUIRE(std::getline(lines, line));
  CHECK(line.rfind("# aggregate basis=dct percentage=50 mean_mse=", 0) == 0);
  CHECK_FALSE(std::getline(lines, line));  // exactly 2 lines + aggregate block

  const SweepReport again = run_sweep(spec);
  CHECK(csv_string(again) == csv);

  const std::string path = testutil::temp_path("sweep") + ".csv";
  write_csv(report, path);
  std::ifstream in(path, std::ios::binary);
  std::stringstream file_content;
  file_content << in.rdbuf();
  CHECK(file_content.str() == csv);
  std::remove(path.c_str());

  CHECK_THROWS_AS(write_csv(report, "no_such_dir/out.csv"), Error);
}

TEST_CASE("sweep spec validation") {
  SweepSpec spec;
  spec.frame = harmonic_frame(128, 2);
  spec.percentages = {};
  CHECK_THROWS_AS(run_sweep(spec), Error);
  spec.percentages = {50, 40};
  CHECK_THROWS_AS(run_sweep(spec), Error);
  spec.percentages = {0, 40};
  CHECK_THROWS_AS(run_sweep(spec), Error);
  spec.percentages = {40};
  spec.trials = 0;
  CHECK_THROWS_AS(run_sweep(spec), Error);
  spec.trials = 1;
  spec.bases = {};
  CHECK_THROWS_AS(run_sweep(spec), Error);
}
