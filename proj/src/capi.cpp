#include "csaudio.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>

#include "core/errors.hpp"
#include "core/evaluation.hpp"
#include "core/sensing.hpp"
#include "core/signal_io.hpp"
#include "core/solver.hpp"
#include "core/transforms.hpp"

// Thin extern-C facade over the C++ core: handles own core values, all
// exceptions are converted to status codes at this boundary.

struct csa_frame {
  csaudio::Frame impl;
};
struct csa_pattern {
  csaudio::SamplingPattern impl;
};
struct csa_reconstruction {
  csaudio::Reconstruction impl;
};
struct csa_sweep_report {
  csaudio::SweepReport impl;
};

namespace {

thread_local std::string g_last_error;

csa_status map_errc(csaudio::Errc code) {
  switch (code) {
    case csaudio::Errc::InvalidArgument: return CSA_ERR_INVALID_ARGUMENT;
    case csaudio::Errc::Io: return CSA_ERR_IO;
    case csaudio::Errc::BadFormat: return CSA_ERR_BAD_FORMAT;
    case csaudio::Errc::OutOfRange: return CSA_ERR_OUT_OF_RANGE;
    case csaudio::Errc::Mismatch: return CSA_ERR_MISMATCH;
  }
  return CSA_ERR_INTERNAL;
}

template <typename Fn>
csa_status guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return CSA_OK;
  } catch (const csaudio::Error& e) {
    g_last_error = e.what();
    return map_errc(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CSA_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CSA_ERR_INTERNAL;
  }
}

csa_status invalid(const char* msg) {
  g_last_error = msg;
  return CSA_ERR_INVALID_ARGUMENT;
}

csaudio::BasisKind to_kind(csa_basis basis) {
  return basis == CSA_BASIS_DFT ? csaudio::BasisKind::Dft : csaudio::BasisKind::Dct;
}

csa_basis from_kind(csaudio::BasisKind kind) {
  return kind == csaudio::BasisKind::Dft ? CSA_BASIS_DFT : CSA_BASIS_DCT;
}

csaudio::SolverConfig to_config(const csa_solver_config* config) {
  if (!config) return {};
  csaudio::SolverConfig cfg;
  cfg.max_iters = config->max_iters;
  cfg.residual_tol = config->residual_tol;
  cfg.change_tol = config->change_tol;
  cfg.admm_rho = config->rho;
  return cfg;
}

csaudio::MeasurementSet measure_through(const csa_frame* frame, csa_basis basis,
                                        const csa_pattern* pattern) {
  return csaudio::measure(frame->impl, pattern->impl, to_kind(basis));
}

}  // namespace

extern "C" {

const char* csa_version(void) { return "0.1.0"; }

const char* csa_last_error(void) { return g_last_error.c_str(); }

/* ---------------- frames ---------------- */

csa_status csa_frame_create(const double* samples, size_t n, int sample_rate, csa_frame** out) {
  if (!samples || !out) return invalid("csa_frame_create: null argument");
  return guard([&] {
    csaudio::Frame frame;
    frame.samples.assign(samples, samples + n);
    frame.sample_rate = sample_rate;
    frame.origin = "capi";
    csaudio::validate_frame(frame);
    *out = new csa_frame{std::move(frame)};
  });
}

csa_status csa_frame_read_wav(const char* path, size_t start, size_t len, csa_frame** out) {
  if (!path || !out) return invalid("csa_frame_read_wav: null argument");
  return guard([&] { *out = new csa_frame{csaudio::read_wav_frame(path, start, len)}; });
}

csa_status csa_frame_write_wav(const csa_frame* frame, const char* path) {
  if (!frame || !path) return invalid("csa_frame_write_wav: null argument");
  return guard([&] { csaudio::write_wav(path, frame->impl); });
}

size_t csa_frame_length(const csa_frame* frame) { return frame ? frame->impl.samples.size() : 0; }

int csa_frame_sample_rate(const csa_frame* frame) { return frame ? frame->impl.sample_rate : 0; }

csa_status csa_frame_samples(const csa_frame* frame, double* out, size_t capacity) {
  if (!frame || !out) return invalid("csa_frame_samples: null argument");
  if (capacity < frame->impl.samples.size()) {
    g_last_error = "csa_frame_samples: buffer too small";
    return CSA_ERR_OUT_OF_RANGE;
  }
  std::memcpy(out, frame->impl.samples.data(), frame->impl.samples.size() * sizeof(double));
  return CSA_OK;
}

void csa_frame_free(csa_frame* frame) { delete frame; }

/* ---------------- synthesis ---------------- */

csa_synth_spec csa_synth_spec_default(void) {
  csa_synth_spec spec;
  spec.kind = CSA_SYNTH_SPARSE;
  spec.n = 3000;
  spec.sparsity = 10;
  spec.fundamental_index = 8;
  spec.harmonic_count = 10;
  spec.decay = 0.7;
  spec.seed = 1;
  spec.sample_rate = 8000;
  return spec;
}

csa_status csa_synthesize(const csa_synth_spec* spec, csa_basis basis, csa_frame** out) {
  if (!spec || !out) return invalid("csa_synthesize: null argument");
  return guard([&] {
    csaudio::SynthSpec s;
    switch (spec->kind) {
      case CSA_SYNTH_SPARSE: s.kind = csaudio::SynthKind::Sparse; break;
      case CSA_SYNTH_HARMONIC: s.kind = csaudio::SynthKind::Harmonic; break;
      case CSA_SYNTH_VOWEL_PROXY: s.kind = csaudio::SynthKind::VowelProxy; break;
      default: csaudio::fail(csaudio::Errc::InvalidArgument, "csa_synthesize: unknown kind");
    }
    s.n = spec->n;
    s.sparsity = spec->sparsity;
    s.fundamental_index = spec->fundamental_index;
    s.harmonic_count = spec->harmonic_count;
    s.decay = spec->decay;
    s.seed = spec->seed;
    s.sample_rate = spec->sample_rate;
    *out = new csa_frame{csaudio::synthesize(s, to_kind(basis))};
  });
}

/* ---------------- transforms ---------------- */

csa_status csa_transform_forward(const csa_frame* frame, csa_basis basis, double* coeff_re,
                                 double* coeff_im) {
  if (!frame || !coeff_re) return invalid("csa_transform_forward: null argument");
  if (basis == CSA_BASIS_DFT && !coeff_im)
    return invalid("csa_transform_forward: coeff_im required for the DFT");
  return guard([&] {
    const csaudio::CoefficientVector cv = csaudio::forward(frame->impl, to_kind(basis));
    for (std::size_t i = 0; i < cv.values.size(); ++i) {
      coeff_re[i] = cv.values[i].real();
      if (coeff_im) coeff_im[i] = cv.values[i].imag();
    }
  });
}

csa_status csa_transform_inverse(const double* coeff_re, const double* coeff_im, size_t n,
                                 csa_basis basis, int sample_rate, csa_frame** out,
                                 double* discarded_imag_energy) {
  if (!coeff_re || !out) return invalid("csa_transform_inverse: null argument");
  return guard([&] {
    csaudio::CoefficientVector cv;
    cv.basis = {to_kind(basis), n};
    cv.values.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      cv.values[i] = {coeff_re[i], coeff_im ? coeff_im[i] : 0.0};
    csaudio::InverseOutcome outcome = csaudio::inverse(cv);
    outcome.frame.sample_rate = sample_rate;
    if (discarded_imag_energy) *discarded_imag_energy = outcome.discarded_imag_energy;
    *out = new csa_frame{std::move(outcome.frame)};
  });
}

csa_status csa_sparsity_count(const csa_frame* frame, csa_basis basis, double rel_threshold,
                              size_t* out) {
  if (!frame || !out) return invalid("csa_sparsity_count: null argument");
  return guard([&] {
    const csaudio::CoefficientVector cv = csaudio::forward(frame->impl, to_kind(basis));
    *out = csaudio::sparsity_count(cv, rel_threshold);
  });
}

/* ---------------- sampling patterns ---------------- */

csa_status csa_pattern_draw(size_t n, size_t m, uint64_t seed, csa_pattern** out) {
  if (!out) return invalid("csa_pattern_draw: null argument");
  return guard([&] { *out = new csa_pattern{csaudio::draw_pattern(n, m, seed)}; });
}

size_t csa_pattern_m(const csa_pattern* pattern) { return pattern ? pattern->impl.m() : 0; }

size_t csa_pattern_n(const csa_pattern* pattern) { return pattern ? pattern->impl.n : 0; }

uint64_t csa_pattern_seed(const csa_pattern* pattern) { return pattern ? pattern->impl.seed : 0; }

csa_status csa_pattern_indices(const csa_pattern* pattern, uint32_t* out, size_t capacity) {
  if (!pattern || !out) return invalid("csa_pattern_indices: null argument");
  if (capacity < pattern->impl.indices.size()) {
    g_last_error = "csa_pattern_indices: buffer too small";
    return CSA_ERR_OUT_OF_RANGE;
  }
  std::memcpy(out, pattern->impl.indices.data(),
              pattern->impl.indices.size() * sizeof(uint32_t));
  return CSA_OK;
}

csa_status csa_pattern_to_text(const csa_pattern* pattern, int with_indices, char* buf,
                               size_t capacity, size_t* needed) {
  if (!pattern || !buf) return invalid("csa_pattern_to_text: null argument");
  return guard([&] {
    const std::string text = csaudio::pattern_to_text(pattern->impl, with_indices != 0);
    if (needed) *needed = text.size() + 1;
    if (capacity < text.size() + 1)
      csaudio::fail(csaudio::Errc::OutOfRange, "csa_pattern_to_text: buffer too small");
    std::memcpy(buf, text.c_str(), text.size() + 1);
  });
}

csa_status csa_pattern_from_text(const char* text, csa_pattern** out) {
  if (!text || !out) return invalid("csa_pattern_from_text: null argument");
  return guard([&] { *out = new csa_pattern{csaudio::pattern_from_text(text)}; });
}

void csa_pattern_free(csa_pattern* pattern) { delete pattern; }

/* ---------------- solving ---------------- */

csa_solver_config csa_solver_config_default(void) {
  const csaudio::SolverConfig cfg;
  return {cfg.max_iters, cfg.residual_tol, cfg.change_tol, cfg.admm_rho};
}

csa_status csa_solve_bp(const csa_frame* frame, csa_basis basis, const csa_pattern* pattern,
                        const csa_solver_config* config, csa_reconstruction** out) {
  if (!frame || !pattern || !out) return invalid("csa_solve_bp: null argument");
  return guard([&] {
    *out = new csa_reconstruction{
        csaudio::solve_bp(measure_through(frame, basis, pattern), to_config(config))};
  });
}

csa_status csa_solve_omp(const csa_frame* frame, csa_basis basis, const csa_pattern* pattern,
                         size_t k_max, double residual_tol, csa_reconstruction** out) {
  if (!frame || !pattern || !out) return invalid("csa_solve_omp: null argument");
  return guard([&] {
    *out = new csa_reconstruction{
        csaudio::solve_omp(measure_through(frame, basis, pattern), k_max, residual_tol)};
  });
}

csa_status csa_reconstruction_frame(const csa_reconstruction* rec, csa_frame** out) {
  if (!rec || !out) return invalid("csa_reconstruction_frame: null argument");
  return guard([&] { *out = new csa_frame{rec->impl.frame}; });
}

csa_status csa_reconstruction_coeffs(const csa_reconstruction* rec, double* re, double* im) {
  if (!rec || !re) return invalid("csa_reconstruction_coeffs: null argument");
  if (rec->impl.coeffs.basis.kind == csaudio::BasisKind::Dft && !im)
    return invalid("csa_reconstruction_coeffs: im required for the DFT");
  for (std::size_t i = 0; i < rec->impl.coeffs.values.size(); ++i) {
    re[i] = rec->impl.coeffs.values[i].real();
    if (im) im[i] = rec->impl.coeffs.values[i].imag();
  }
  return CSA_OK;
}

size_t csa_reconstruction_iterations(const csa_reconstruction* rec) {
  return rec ? rec->impl.iterations : 0;
}

double csa_reconstruction_residual(const csa_reconstruction* rec) {
  return rec ? rec->impl.final_residual : 0.0;
}

int csa_reconstruction_converged(const csa_reconstruction* rec) {
  return rec && rec->impl.converged ? 1 : 0;
}

double csa_reconstruction_discarded_imag_energy(const csa_reconstruction* rec) {
  return rec ? rec->impl.discarded_imag_energy : 0.0;
}

void csa_reconstruction_free(csa_reconstruction* rec) { delete rec; }

/* ---------------- evaluation ---------------- */

csa_status csa_mse(const csa_frame* a, const csa_frame* b, double* out) {
  if (!a || !b || !out) return invalid("csa_mse: null argument");
  return guard([&] { *out = csaudio::mse(a->impl, b->impl); });
}

csa_status csa_run_cell(const csa_frame* frame, csa_basis basis, int percentage, uint64_t seed,
                        const csa_solver_config* config, csa_cell_result* out,
                        csa_frame** reconstructed) {
  if (!frame || !out) return invalid("csa_run_cell: null argument");
  return guard([&] {
    csaudio::Reconstruction rec;
    const csaudio::SweepRow row = csaudio::run_cell(frame->impl, to_kind(basis), percentage, seed,
                                                    to_config(config), &rec);
    out->basis = from_kind(row.basis);
    out->percentage = row.percentage;
    out->seed = row.seed;
    out->m = row.m;
    out->mse = row.mse;
    out->converged = row.converged ? 1 : 0;
    out->iterations = row.iterations;
    if (reconstructed) *reconstructed = new csa_frame{std::move(rec.frame)};
  });
}

csa_status csa_sweep_run(const csa_frame* frame, const csa_sweep_spec* spec,
                         csa_sweep_report** out) {
  if (!frame || !spec || !out) return invalid("csa_sweep_run: null argument");
  return guard([&] {
    csaudio::SweepSpec s;
    if (spec->percentages)
      s.percentages.assign(spec->percentages, spec->percentages + spec->percentage_count);
    if (spec->trials > 0) s.trials = spec->trials;
    s.bases.clear();
    if (spec->use_dct) s.bases.push_back(csaudio::BasisKind::Dct);
    if (spec->use_dft) s.bases.push_back(csaudio::BasisKind::Dft);
    s.base_seed = spec->base_seed;
    s.frame = frame->impl;
    s.solver = to_config(spec->solver);
    *out = new csa_sweep_report{csaudio::run_sweep(s)};
  });
}

size_t csa_sweep_row_count(const csa_sweep_report* report) {
  return report ? report->impl.rows.size() : 0;
}

csa_status csa_sweep_row_get(const csa_sweep_report* report, size_t i, csa_sweep_row* out) {
  if (!report || !out) return invalid("csa_sweep_row_get: null argument");
  if (i >= report->impl.rows.size()) {
    g_last_error = "csa_sweep_row_get: index out of range";
    return CSA_ERR_OUT_OF_RANGE;
  }
  const csaudio::SweepRow& row = report->impl.rows[i];
  out->basis = from_kind(row.basis);
  out->percentage = row.percentage;
  out->trial = row.trial;
  out->seed = row.seed;
  out->m = row.m;
  out->mse = row.mse;
  out->converged = row.converged ? 1 : 0;
  out->iterations = row.iterations;
  return CSA_OK;
}

size_t csa_sweep_aggregate_count(const csa_sweep_report* report) {
  return report ? report->impl.aggregates.size() : 0;
}

csa_status csa_sweep_aggregate_get(const csa_sweep_report* report, size_t i,
                                   csa_sweep_aggregate* out) {
  if (!report || !out) return invalid("csa_sweep_aggregate_get: null argument");
  if (i >= report->impl.aggregates.size()) {
    g_last_error = "csa_sweep_aggregate_get: index out of range";
    return CSA_ERR_OUT_OF_RANGE;
  }
  const csaudio::SweepAggregate& agg = report->impl.aggregates[i];
  out->basis = from_kind(agg.basis);
  out->percentage = agg.percentage;
  out->mean_mse = agg.mean_mse;
  out->median_mse = agg.median_mse;
  return CSA_OK;
}

csa_status csa_sweep_write_csv(const csa_sweep_report* report, const char* path) {
  if (!report || !path) return invalid("csa_sweep_write_csv: null argument");
  return guard([&] { csaudio::write_csv(report->impl, path); });
}

void csa_sweep_report_free(csa_sweep_report* report) { delete report; }

}  // extern "C"
