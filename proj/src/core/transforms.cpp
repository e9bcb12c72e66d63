#include "transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "errors.hpp"

namespace csaudio {

namespace {

constexpr double kPi = 3.14159265358979323846;

// FFTW planning is not thread safe; execution on distinct arrays is.
// Plans are created once per (kind, length), kept for the process
// lifetime, and executed through the new-array interface. FFTW_UNALIGNED
// keeps a plan valid for arbitrarily aligned buffers and makes the plan
// choice independent of allocation addresses, so results are repeatable.
class PlanCache {
public:
  PlanCache() = default;
  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

  ~PlanCache() {
    for (auto& [key, plan] : r2r_) fftw_destroy_plan(plan);
    for (auto& [key, plan] : dft_) fftw_destroy_plan(plan);
  }

  fftw_plan r2r(fftw_r2r_kind kind, std::size_t n) {
    std::scoped_lock lock(mutex_);
    const auto key = std::make_pair(static_cast<int>(kind), n);
    auto it = r2r_.find(key);
    if (it != r2r_.end()) return it->second;
    std::vector<double> in(n), out(n);
    fftw_plan plan = fftw_plan_r2r_1d(static_cast<int>(n), in.data(), out.data(), kind,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    r2r_.emplace(key, plan);
    return plan;
  }

  fftw_plan dft(int sign, std::size_t n) {
    std::scoped_lock lock(mutex_);
    const auto key = std::make_pair(sign, n);
    auto it = dft_.find(key);
    if (it != dft_.end()) return it->second;
    std::vector<std::complex<double>> in(n), out(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()), sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    dft_.emplace(key, plan);
    return plan;
  }

private:
  std::mutex mutex_;
  std::map<std::pair<int, std::size_t>, fftw_plan> r2r_;
  std::map<std::pair<int, std::size_t>, fftw_plan> dft_;
};

PlanCache& plans() {
  static PlanCache cache;
  return cache;
}

void require_nonempty(std::size_t n, const char* where) {
  if (n == 0) fail(Errc::InvalidArgument, std::string(where) + ": empty input");
}

void require_basis(const CoefficientVector& coeffs, BasisKind kind, const char* where) {
  if (coeffs.basis.kind != kind)
    fail(Errc::Mismatch, std::string(where) + ": coefficient vector tagged with the other basis");
  if (coeffs.values.size() != coeffs.basis.n)
    fail(Errc::Mismatch, std::string(where) + ": coefficient count does not match basis length");
}

}  // namespace

const char* basis_name(BasisKind kind) { return kind == BasisKind::Dct ? "dct" : "dft"; }

BasisKind basis_from_name(std::string_view name) {
  if (name == "dct" || name == "DCT") return BasisKind::Dct;
  if (name == "dft" || name == "DFT") return BasisKind::Dft;
  fail(Errc::BadFormat, "unknown basis name: " + std::string(name));
}

std::vector<double> dct2_forward(std::span<const double> samples) {
  const std::size_t n = samples.size();
  require_nonempty(n, "dct2_forward");
  std::vector<double> in(samples.begin(), samples.end());
  std::vector<double> out(n);
  fftw_execute_r2r(plans().r2r(FFTW_REDFT10, n), in.data(), out.data());
  // FFTW REDFT10 computes 2 * sum f(n) cos((2n+1)k pi / 2N).
  const double s0 = 0.5 * std::sqrt(1.0 / static_cast<double>(n));
  const double s = 0.5 * std::sqrt(2.0 / static_cast<double>(n));
  out[0] *= s0;
  for (std::size_t k = 1; k < n; ++k) out[k] *= s;
  return out;
}

std::vector<double> dct2_inverse(std::span<const double> coeffs) {
  const std::size_t n = coeffs.size();
  require_nonempty(n, "dct2_inverse");
  // FFTW REDFT01 computes X(0) + 2 * sum_{k>=1} X(k) cos((2n+1)k pi / 2N).
  std::vector<double> in(n);
  in[0] = std::sqrt(1.0 / static_cast<double>(n)) * coeffs[0];
  const double s = 0.5 * std::sqrt(2.0 / static_cast<double>(n));
  for (std::size_t k = 1; k < n; ++k) in[k] = s * coeffs[k];
  std::vector<double> out(n);
  fftw_execute_r2r(plans().r2r(FFTW_REDFT01, n), in.data(), out.data());
  return out;
}

std::vector<std::complex<double>> dft_forward_c(std::span<const std::complex<double>> x) {
  const std::size_t n = x.size();
  require_nonempty(n, "dft_forward_c");
  std::vector<std::complex<double>> in(x.begin(), x.end());
  std::vector<std::complex<double>> out(n);
  fftw_execute_dft(plans().dft(FFTW_FORWARD, n), reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& v : out) v *= s;
  return out;
}

std::vector<std::complex<double>> dft_inverse_c(std::span<const std::complex<double>> x) {
  const std::size_t n = x.size();
  require_nonempty(n, "dft_inverse_c");
  std::vector<std::complex<double>> in(x.begin(), x.end());
  std::vector<std::complex<double>> out(n);
  fftw_execute_dft(plans().dft(FFTW_BACKWARD, n), reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& v : out) v *= s;
  return out;
}

CoefficientVector dct_forward(const Frame& frame) {
  validate_frame(frame);
  const std::vector<double> real = dct2_forward(frame.samples);
  CoefficientVector cv;
  cv.basis = {BasisKind::Dct, real.size()};
  cv.values.assign(real.begin(), real.end());
  return cv;
}

Frame dct_inverse(const CoefficientVector& coeffs) {
  require_basis(coeffs, BasisKind::Dct, "dct_inverse");
  std::vector<double> real(coeffs.values.size());
  for (std::size_t i = 0; i < real.size(); ++i) real[i] = coeffs.values[i].real();
  Frame frame;
  frame.samples = dct2_inverse(real);
  frame.origin = "inverse:dct";
  return frame;
}

CoefficientVector dft_forward(const Frame& frame) {
  validate_frame(frame);
  std::vector<std::complex<double>> in(frame.samples.begin(), frame.samples.end());
  CoefficientVector cv;
  cv.basis = {BasisKind::Dft, in.size()};
  cv.values = dft_forward_c(in);
  return cv;
}

DftInverseResult dft_inverse(const CoefficientVector& coeffs) {
  require_basis(coeffs, BasisKind::Dft, "dft_inverse");
  const std::vector<std::complex<double>> time = dft_inverse_c(coeffs.values);
  DftInverseResult result;
  result.frame.samples.resize(time.size());
  double imag_energy = 0.0, total_energy = 0.0;
  for (std::size_t i = 0; i < time.size(); ++i) {
    result.frame.samples[i] = time[i].real();
    imag_energy += time[i].imag() * time[i].imag();
    total_energy += std::norm(time[i]);
  }
  result.discarded_imag_energy = total_energy > 0.0 ? imag_energy / total_energy : 0.0;
  result.frame.origin = "inverse:dft";
  return result;
}

CoefficientVector forward(const Frame& frame, BasisKind kind) {
  return kind == BasisKind::Dct ? dct_forward(frame) : dft_forward(frame);
}

InverseOutcome inverse(const CoefficientVector& coeffs) {
  if (coeffs.basis.kind == BasisKind::Dct) {
    return {dct_inverse(coeffs), 0.0};
  }
  DftInverseResult r = dft_inverse(coeffs);
  return {std::move(r.frame), r.discarded_imag_energy};
}

std::vector<double> dct_inverse_row(std::size_t n, std::size_t t) {
  require_nonempty(n, "dct_inverse_row");
  if (t >= n) fail(Errc::OutOfRange, "dct_inverse_row: time index out of range");
  std::vector<double> row(n);
  row[0] = std::sqrt(1.0 / static_cast<double>(n));
  const double c = std::sqrt(2.0 / static_cast<double>(n));
  // cos((2t+1)k pi / 2N) has period 4N in (2t+1)k; reduce in integers so
  // large n keeps full precision.
  const std::uint64_t period = 4 * static_cast<std::uint64_t>(n);
  for (std::size_t k = 1; k < n; ++k) {
    const std::uint64_t arg = ((2 * static_cast<std::uint64_t>(t) + 1) * k) % period;
    row[k] = c * std::cos(kPi * static_cast<double>(arg) / (2.0 * static_cast<double>(n)));
  }
  return row;
}

std::vector<std::complex<double>> dft_inverse_row(std::size_t n, std::size_t t) {
  require_nonempty(n, "dft_inverse_row");
  if (t >= n) fail(Errc::OutOfRange, "dft_inverse_row: time index out of range");
  std::vector<std::complex<double>> row(n);
  const double mag = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t arg = (static_cast<std::uint64_t>(t) * k) % n;  // e^{j2pi tk/N} has period N
    row[k] = std::polar(mag, 2.0 * kPi * static_cast<double>(arg) / static_cast<double>(n));
  }
  return row;
}

std::vector<std::complex<double>> inverse_row(const SparsityBasis& basis, std::size_t t) {
  if (basis.kind == BasisKind::Dft) return dft_inverse_row(basis.n, t);
  const std::vector<double> real = dct_inverse_row(basis.n, t);
  return std::vector<std::complex<double>>(real.begin(), real.end());
}

std::size_t sparsity_count(const CoefficientVector& coeffs, double rel_threshold) {
  if (!(rel_threshold > 0.0 && rel_threshold < 1.0))
    fail(Errc::InvalidArgument, "sparsity_count: rel_threshold must lie in (0, 1)");
  double max_mag = 0.0;
  for (const auto& v : coeffs.values) max_mag = std::max(max_mag, std::abs(v));
  if (max_mag == 0.0) return 0;
  std::size_t count = 0;
  for (const auto& v : coeffs.values)
    if (std::abs(v) > rel_threshold * max_mag) ++count;
  return count;
}

}  // namespace csaudio
