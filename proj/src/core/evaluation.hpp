#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "signal_io.hpp"
#include "solver.hpp"

namespace csaudio {

// Measurement-rate sweep: every (basis, percentage, trial) cell draws its
// own pattern, reconstructs by basis pursuit and records the MSE.
struct SweepSpec {
  std::vector<int> percentages = {20, 30, 40, 50, 60, 70, 80, 90};
  int trials = 10;
  std::vector<BasisKind> bases = {BasisKind::Dct, BasisKind::Dft};
  std::uint64_t base_seed = 1;
  Frame frame;
  SolverConfig solver;
};

struct SweepRow {
  BasisKind basis;
  int percentage;
  int trial;
  std::uint64_t seed;
  std::size_t m;
  double mse;
  bool converged;
  std::size_t iterations;
};

struct SweepAggregate {
  BasisKind basis;
  int percentage;
  double mean_mse;
  double median_mse;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  std::vector<SweepAggregate> aggregates;

  const SweepAggregate& aggregate(BasisKind basis, int percentage) const;
};

// Time-domain mean squared error, (1/N) sum (f - f_hat)^2.
double mse(const Frame& original, const Frame& reconstructed);

// M = round(p/100 * N), computed in integers (half rounds up).
std::size_t measurement_count(int percentage, std::size_t n);

// One sweep cell: derive M, draw the pattern from `seed`, measure, solve,
// score. Fully deterministic per inputs. The reconstruction itself is
// returned through `out` when non-null.
SweepRow run_cell(const Frame& frame, BasisKind basis, int percentage, std::uint64_t seed,
                  const SolverConfig& config, Reconstruction* out = nullptr);

// Executes every cell in (basis, percentage, trial) order. Trial seeds are
// base_seed + cell counter, where the counter enumerates cells in that
// same order starting from 0.
SweepReport run_sweep(const SweepSpec& spec);

// CSV with header "basis,percentage,trial,seed,M,mse,converged,iterations",
// floats printed with 10 significant digits, aggregates appended as
// '#'-prefixed comment lines. Byte-stable across runs.
std::string csv_string(const SweepReport& report);
void write_csv(const SweepReport& report, const std::string& path);

}  // namespace csaudio
