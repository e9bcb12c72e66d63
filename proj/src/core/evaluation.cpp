#include "evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "errors.hpp"

namespace csaudio {

namespace {

void validate_spec(const SweepSpec& spec) {
  validate_frame(spec.frame);
  if (spec.percentages.empty()) fail(Errc::InvalidArgument, "sweep: empty percentage list");
  int prev = 0;
  for (const int p : spec.percentages) {
    if (p < 1 || p > 100) fail(Errc::InvalidArgument, "sweep: percentage outside [1, 100]");
    if (p <= prev) fail(Errc::InvalidArgument, "sweep: percentages must be strictly increasing");
    prev = p;
  }
  if (spec.trials < 1) fail(Errc::InvalidArgument, "sweep: trials must be at least 1");
  if (spec.bases.empty()) fail(Errc::InvalidArgument, "sweep: no bases selected");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

const SweepAggregate& SweepReport::aggregate(BasisKind basis, int percentage) const {
  for (const auto& agg : aggregates)
    if (agg.basis == basis && agg.percentage == percentage) return agg;
  fail(Errc::OutOfRange, "sweep: no aggregate for requested (basis, percentage)");
}

double mse(const Frame& original, const Frame& reconstructed) {
  if (original.samples.size() != reconstructed.samples.size())
    fail(Errc::Mismatch, "mse: frame lengths differ");
  if (original.samples.empty()) fail(Errc::InvalidArgument, "mse: empty frames");
  double sum = 0.0;
  for (std::size_t i = 0; i < original.samples.size(); ++i) {
    const double d = original.samples[i] - reconstructed.samples[i];
    sum += d * d;
  }
  return sum / static_cast<double>(original.samples.size());
}

std::size_t measurement_count(int percentage, std::size_t n) {
  if (percentage < 1 || percentage > 100)
    fail(Errc::InvalidArgument, "measurement_count: percentage outside [1, 100]");
  return (static_cast<std::size_t>(percentage) * n + 50) / 100;
}

SweepRow run_cell(const Frame& frame, BasisKind basis, int percentage, std::uint64_t seed,
                  const SolverConfig& config, Reconstruction* out) {
  validate_frame(frame);
  const std::size_t m = measurement_count(percentage, frame.samples.size());
  const SamplingPattern pattern = draw_pattern(frame.samples.size(), m, seed);
  const MeasurementSet ms = measure(frame, pattern, basis);
  Reconstruction rec = solve_bp(ms, config);

  SweepRow row;
  row.basis = basis;
  row.percentage = percentage;
  row.trial = 0;
  row.seed = seed;
  row.m = m;
  row.mse = mse(frame, rec.frame);
  row.converged = rec.converged;
  row.iterations = rec.iterations;
  if (out) *out = std::move(rec);
  return row;
}

SweepReport run_sweep(const SweepSpec& spec) {
  validate_spec(spec);
  SweepReport report;
  report.rows.reserve(spec.bases.size() * spec.percentages.size() *
                      static_cast<std::size_t>(spec.trials));

  std::uint64_t counter = 0;
  for (const BasisKind basis : spec.bases) {
    for (const int percentage : spec.percentages) {
      std::vector<double> cell_mse;
      cell_mse.reserve(static_cast<std::size_t>(spec.trials));
      for (int trial = 0; trial < spec.trials; ++trial, ++counter) {
        const std::uint64_t seed = spec.base_seed + counter;
        SweepRow row = run_cell(spec.frame, basis, percentage, seed, spec.solver);
        row.trial = trial;
        cell_mse.push_back(row.mse);
        report.rows.push_back(row);
      }
      SweepAggregate agg;
      agg.basis = basis;
      agg.percentage = percentage;
      agg.mean_mse = std::accumulate(cell_mse.begin(), cell_mse.end(), 0.0) /
                     static_cast<double>(cell_mse.size());
      std::sort(cell_mse.begin(), cell_mse.end());
      const std::size_t half = cell_mse.size() / 2;
      agg.median_mse = (cell_mse.size() % 2 == 1)
                           ? cell_mse[half]
                           : 0.5 * (cell_mse[half - 1] + cell_mse[half]);
      report.aggregates.push_back(agg);
    }
  }
  return report;
}

std::string csv_string(const SweepReport& report) {
  std::string out = "basis,percentage,trial,seed,M,mse,converged,iterations\n";
  char buf[160];
  for (const auto& row : report.rows) {
    std::snprintf(buf, sizeof buf, "%s,%d,%d,%llu,%zu,%s,%d,%zu\n", basis_name(row.basis),
                  row.percentage, row.trial, static_cast<unsigned long long>(row.seed), row.m,
                  format_double(row.mse).c_str(), row.converged ? 1 : 0, row.iterations);
    out += buf;
  }
  for (const auto& agg : report.aggregates) {
    std::snprintf(buf, sizeof buf, "# aggregate basis=%s percentage=%d mean_mse=%s median_mse=%s\n",
                  basis_name(agg.basis), agg.percentage, format_double(agg.mean_mse).c_str(),
                  format_double(agg.median_mse).c_str());
    out += buf;
  }
  return out;
}

void write_csv(const SweepReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::Io, path + ": cannot open for writing");
  const std::string text = csv_string(report);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) fail(Errc::Io, path + ": write failed");
}

}  // namespace csaudio
