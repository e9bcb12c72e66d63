// Command-line frontend for the csaudio shared library. Talks to the
// library exclusively through the C API in csaudio.h.
//
// Exit codes: 0 success (including reconstructions that did not converge,
// which only warn), 1 runtime or I/O failure, 2 argument errors.

#include <CLI11.hpp>
#include <csaudio.h>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

namespace {

template <typename T, void (*FreeFn)(T*)>
class Handle {
public:
  Handle() = default;
  ~Handle() { reset(); }
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;

  T** out() {
    reset();
    return &ptr_;
  }
  T* get() const { return ptr_; }
  explicit operator bool() const { return ptr_ != nullptr; }

private:
  void reset() {
    if (ptr_) FreeFn(ptr_);
    ptr_ = nullptr;
  }
  T* ptr_ = nullptr;
};

using FrameHandle = Handle<csa_frame, csa_frame_free>;
using ReportHandle = Handle<csa_sweep_report, csa_sweep_report_free>;

int runtime_error_exit(const std::string& context) {
  std::cerr << "csaudio: " << context << ": " << csa_last_error() << "\n";
  return 1;
}

int argument_error_exit(const std::string& message) {
  std::cerr << "csaudio: " << message << "\n";
  return 2;
}

// Frame source shared by reconstruct/sweep/transform: either a WAV window
// or a synthesized test signal.
struct SourceOptions {
  std::string input;
  std::size_t frame_start = 0;
  std::size_t frame_len = 3000;
  std::string synth_kind;
  std::size_t synth_n = 3000;
  std::size_t synth_k = 10;
  std::size_t fundamental = 8;
  std::size_t harmonics = 10;
  double decay = 0.7;
};

void add_source_options(CLI::App* cmd, SourceOptions* src) {
  cmd->add_option("--input", src->input, "input WAV file (16-bit PCM)");
  cmd->add_option("--frame-start", src->frame_start, "sample offset of the frame window");
  cmd->add_option("--frame-len", src->frame_len, "frame length in samples")->default_val(3000);
  cmd->add_option("--synth-kind", src->synth_kind,
                  "synthesize the frame instead: sparse, harmonic or vowel-proxy")
      ->check(CLI::IsMember({"sparse", "harmonic", "vowel-proxy"}));
  cmd->add_option("--synth-n", src->synth_n, "synthesized frame length")->default_val(3000);
  cmd->add_option("--synth-k", src->synth_k, "sparse kind: number of nonzero coefficients")
      ->default_val(10);
  cmd->add_option("--fundamental", src->fundamental, "harmonic kinds: fundamental bin index")
      ->default_val(8);
  cmd->add_option("--harmonics", src->harmonics, "harmonic kinds: number of harmonics")
      ->default_val(10);
  cmd->add_option("--decay", src->decay, "harmonic kinds: per-harmonic amplitude ratio")
      ->default_val(0.7);
}

// 0 = ok (frame filled), otherwise the process exit code.
int resolve_frame(const SourceOptions& src, csa_basis basis, uint64_t seed, FrameHandle* frame) {
  const bool have_input = !src.input.empty();
  const bool have_synth = !src.synth_kind.empty();
  if (have_input == have_synth)
    return argument_error_exit("exactly one of --input or --synth-kind is required");
  if (have_input) {
    if (csa_frame_read_wav(src.input.c_str(), src.frame_start, src.frame_len, frame->out()) !=
        CSA_OK)
      return runtime_error_exit(src.input);
    return 0;
  }
  csa_synth_spec spec = csa_synth_spec_default();
  if (src.synth_kind == "sparse") spec.kind = CSA_SYNTH_SPARSE;
  if (src.synth_kind == "harmonic") spec.kind = CSA_SYNTH_HARMONIC;
  if (src.synth_kind == "vowel-proxy") spec.kind = CSA_SYNTH_VOWEL_PROXY;
  spec.n = src.synth_n;
  spec.sparsity = src.synth_k;
  spec.fundamental_index = src.fundamental;
  spec.harmonic_count = src.harmonics;
  spec.decay = src.decay;
  spec.seed = seed;
  if (csa_synthesize(&spec, basis, frame->out()) != CSA_OK)
    return runtime_error_exit("synthesize");
  return 0;
}

struct SolverOptions {
  std::size_t max_iters;
  double residual_tol;
  double rho;

  SolverOptions() {
    const csa_solver_config d = csa_solver_config_default();
    max_iters = d.max_iters;
    residual_tol = d.residual_tol;
    rho = d.rho;
  }

  csa_solver_config config() const {
    csa_solver_config cfg = csa_solver_config_default();
    cfg.max_iters = max_iters;
    cfg.residual_tol = residual_tol;
    cfg.rho = rho;
    return cfg;
  }
};

void add_solver_options(CLI::App* cmd, SolverOptions* solver) {
  cmd->add_option("--max-iters", solver->max_iters, "solver iteration cap");
  cmd->add_option("--residual-tol", solver->residual_tol, "relative feasibility tolerance");
  cmd->add_option("--rho", solver->rho, "ADMM penalty (shrinkage threshold is 1/rho)");
}

const char* basis_label(csa_basis basis) { return basis == CSA_BASIS_DFT ? "dft" : "dct"; }

int run_reconstruct(const SourceOptions& src, csa_basis basis, int percent, uint64_t seed,
                    const SolverOptions& solver, const std::string& output) {
  FrameHandle frame;
  if (const int code = resolve_frame(src, basis, seed, &frame)) return code;

  const csa_solver_config cfg = solver.config();
  csa_cell_result cell;
  FrameHandle recon;
  if (csa_run_cell(frame.get(), basis, percent, seed, &cfg, &cell,
                   output.empty() ? nullptr : recon.out()) != CSA_OK)
    return runtime_error_exit("reconstruct");

  std::printf("basis=%s percent=%d M=%zu mse=%.10g converged=%d iters=%zu\n", basis_label(basis),
              cell.percentage, cell.m, cell.mse, cell.converged, cell.iterations);
  if (!cell.converged)
    std::cerr << "csaudio: warning: solver stopped at the iteration cap without meeting the "
                 "tolerances\n";
  if (!output.empty() && csa_frame_write_wav(recon.get(), output.c_str()) != CSA_OK)
    return runtime_error_exit(output);
  return 0;
}

int run_sweep_cmd(const SourceOptions& src, const std::string& basis_arg, int pmin, int pmax,
                  int pstep, int trials, uint64_t seed, const SolverOptions& solver,
                  const std::string& csv_path) {
  if (pmin < 1 || pmax > 100 || pmin > pmax)
    return argument_error_exit("percent range must satisfy 1 <= min <= max <= 100");
  if (pstep < 1) return argument_error_exit("--percent-step must be at least 1");
  if (trials < 1) return argument_error_exit("--trials must be at least 1");

  std::vector<int> percentages;
  for (int p = pmin; p <= pmax; p += pstep) percentages.push_back(p);

  const csa_basis synth_basis = basis_arg == "dft" ? CSA_BASIS_DFT : CSA_BASIS_DCT;
  FrameHandle frame;
  if (const int code = resolve_frame(src, synth_basis, seed, &frame)) return code;

  const csa_solver_config cfg = solver.config();
  csa_sweep_spec spec;
  spec.percentages = percentages.data();
  spec.percentage_count = percentages.size();
  spec.trials = trials;
  spec.use_dct = basis_arg.empty() || basis_arg == "dct";
  spec.use_dft = basis_arg.empty() || basis_arg == "dft";
  spec.base_seed = seed;
  spec.solver = &cfg;

  ReportHandle report;
  if (csa_sweep_run(frame.get(), &spec, report.out()) != CSA_OK)
    return runtime_error_exit("sweep");
  if (csa_sweep_write_csv(report.get(), csv_path.c_str()) != CSA_OK)
    return runtime_error_exit(csv_path);

  const size_t aggregates = csa_sweep_aggregate_count(report.get());
  for (size_t i = 0; i < aggregates; ++i) {
    csa_sweep_aggregate agg;
    if (csa_sweep_aggregate_get(report.get(), i, &agg) != CSA_OK)
      return runtime_error_exit("sweep aggregates");
    std::printf("basis=%s percent=%d mean_mse=%.10g median_mse=%.10g\n", basis_label(agg.basis),
                agg.percentage, agg.mean_mse, agg.median_mse);
  }
  std::fprintf(stderr, "csaudio: wrote %zu rows to %s\n", csa_sweep_row_count(report.get()),
               csv_path.c_str());
  return 0;
}

int run_synth(const SourceOptions& src, csa_basis basis, uint64_t seed,
              const std::string& output) {
  if (src.synth_kind.empty()) return argument_error_exit("synth requires --synth-kind");
  if (!src.input.empty()) return argument_error_exit("synth does not take --input");
  FrameHandle frame;
  if (const int code = resolve_frame(src, basis, seed, &frame)) return code;
  if (csa_frame_write_wav(frame.get(), output.c_str()) != CSA_OK)
    return runtime_error_exit(output);
  std::printf("output=%s n=%zu sample_rate=%d\n", output.c_str(), csa_frame_length(frame.get()),
              csa_frame_sample_rate(frame.get()));
  return 0;
}

int run_transform(const SourceOptions& src, csa_basis basis, uint64_t seed, std::size_t top_k) {
  FrameHandle frame;
  if (const int code = resolve_frame(src, basis, seed, &frame)) return code;

  const size_t n = csa_frame_length(frame.get());
  std::vector<double> re(n), im(n);
  if (csa_transform_forward(frame.get(), basis, re.data(), im.data()) != CSA_OK)
    return runtime_error_exit("transform");

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> magnitude(n);
  for (size_t i = 0; i < n; ++i) magnitude[i] = std::hypot(re[i], im[i]);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return magnitude[a] > magnitude[b]; });

  const size_t shown = std::min(top_k, n);
  for (size_t i = 0; i < shown; ++i)
    std::printf("index=%zu magnitude=%.10g\n", order[i], magnitude[order[i]]);

  size_t count = 0;
  if (csa_sparsity_count(frame.get(), basis, 1e-3, &count) != CSA_OK)
    return runtime_error_exit("sparsity count");
  std::printf("sparsity_count=%zu threshold=0.001\n", count);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compressive-sensing reconstruction of audio frames from random time samples"};
  app.require_subcommand(1);

  // reconstruct
  auto* reconstruct = app.add_subcommand(
      "reconstruct", "recover a frame from a random sample subset by basis pursuit");
  SourceOptions rec_src;
  SolverOptions rec_solver;
  std::string rec_basis = "dct";
  int rec_percent = 50;
  uint64_t rec_seed = 1;
  std::string rec_output;
  add_source_options(reconstruct, &rec_src);
  add_solver_options(reconstruct, &rec_solver);
  reconstruct->add_option("--basis", rec_basis, "sparsity basis")
      ->check(CLI::IsMember({"dct", "dft"}));
  reconstruct->add_option("--percent", rec_percent, "percentage of samples kept")
      ->check(CLI::Range(1, 100))
      ->required();
  reconstruct->add_option("--seed", rec_seed, "pattern / synthesis seed")->default_val(1);
  reconstruct->add_option("--output", rec_output, "write the reconstruction to this WAV file");

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "MSE vs measurement percentage over seeded trials, written as CSV");
  SourceOptions sweep_src;
  SolverOptions sweep_solver;
  std::string sweep_basis;
  int pmin = 20, pmax = 90, pstep = 10, trials = 10;
  uint64_t sweep_seed = 1;
  std::string csv_path;
  add_source_options(sweep, &sweep_src);
  add_solver_options(sweep, &sweep_solver);
  sweep->add_option("--basis", sweep_basis, "restrict to one basis (default: both)")
      ->check(CLI::IsMember({"dct", "dft"}));
  sweep->add_option("--percent-min", pmin)->default_val(20);
  sweep->add_option("--percent-max", pmax)->default_val(90);
  sweep->add_option("--percent-step", pstep)->default_val(10);
  sweep->add_option("--trials", trials, "trials per (basis, percentage) cell")->default_val(10);
  sweep->add_option("--seed", sweep_seed, "base seed for the trial counter")->default_val(1);
  sweep->add_option("--csv", csv_path, "output CSV path")->required();

  // synth
  auto* synth = app.add_subcommand("synth", "write a deterministic test signal as WAV");
  SourceOptions synth_src;
  std::string synth_basis = "dct";
  uint64_t synth_seed = 1;
  std::string synth_output;
  add_source_options(synth, &synth_src);
  synth->add_option("--basis", synth_basis, "construction basis")
      ->check(CLI::IsMember({"dct", "dft"}));
  synth->add_option("--seed", synth_seed)->default_val(1);
  synth->add_option("--output", synth_output, "output WAV path")->required();

  // transform
  auto* transform = app.add_subcommand(
      "transform", "show the largest-magnitude coefficients and the sparsity count");
  SourceOptions tf_src;
  std::string tf_basis = "dct";
  uint64_t tf_seed = 1;
  std::size_t top_k = 10;
  add_source_options(transform, &tf_src);
  transform->add_option("--basis", tf_basis)->check(CLI::IsMember({"dct", "dft"}));
  transform->add_option("--seed", tf_seed)->default_val(1);
  transform->add_option("--top-k", top_k, "number of coefficients to list")->default_val(10);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (app.got_subcommand(reconstruct))
    return run_reconstruct(rec_src, rec_basis == "dft" ? CSA_BASIS_DFT : CSA_BASIS_DCT,
                           rec_percent, rec_seed, rec_solver, rec_output);
  if (app.got_subcommand(sweep))
    return run_sweep_cmd(sweep_src, sweep_basis, pmin, pmax, pstep, trials, sweep_seed,
                         sweep_solver, csv_path);
  if (app.got_subcommand(synth))
    return run_synth(synth_src, synth_basis == "dft" ? CSA_BASIS_DFT : CSA_BASIS_DCT, synth_seed,
                     synth_output);
  if (app.got_subcommand(transform))
    return run_transform(tf_src, tf_basis == "dft" ? CSA_BASIS_DFT : CSA_BASIS_DCT, tf_seed,
                         top_k);
  return 2;
}
