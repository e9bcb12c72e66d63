#include "sensing.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "errors.hpp"
#include "rng.hpp"

namespace csaudio {

namespace {

constexpr std::size_t kMaterializeLimit = 4096;

void require_kind(BasisKind have, BasisKind want, const char* where) {
  if (have != want) fail(Errc::Mismatch, std::string(where) + ": wrong scalar type for this basis");
}

}  // namespace

SamplingPattern draw_pattern(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m == 0) fail(Errc::InvalidArgument, "draw_pattern: m must be at least 1");
  if (m > n) fail(Errc::InvalidArgument, "draw_pattern: m exceeds n");
  if (n > 0xffffffffull) fail(Errc::InvalidArgument, "draw_pattern: n exceeds 32-bit index range");
  SamplingPattern pattern;
  pattern.n = n;
  pattern.seed = seed;
  pattern.indices = shuffled_prefix(n, m, seed);
  return pattern;
}

std::string pattern_to_text(const SamplingPattern& pattern, bool with_indices) {
  std::ostringstream out;
  out << pattern.n << ' ' << pattern.m() << ' ' << pattern.seed << '\n';
  if (with_indices) {
    for (std::size_t i = 0; i < pattern.indices.size(); ++i) {
      if (i) out << ' ';
      out << pattern.indices[i];
    }
    out << '\n';
  }
  return out.str();
}

SamplingPattern pattern_from_text(const std::string& text) {
  std::istringstream in(text);
  std::size_t n = 0, m = 0;
  std::uint64_t seed = 0;
  if (!(in >> n >> m >> seed)) fail(Errc::BadFormat, "pattern: expected header \"N M seed\"");

  std::vector<std::uint32_t> indices;
  std::uint64_t value = 0;
  while (in >> value) {
    if (value >= n) fail(Errc::BadFormat, "pattern: index out of range");
    indices.push_back(static_cast<std::uint32_t>(value));
  }
  if (indices.empty()) return draw_pattern(n, m, seed);

  if (indices.size() != m) fail(Errc::BadFormat, "pattern: index count does not match header");
  std::unordered_set<std::uint32_t> seen(indices.begin(), indices.end());
  if (seen.size() != indices.size()) fail(Errc::BadFormat, "pattern: duplicate index");
  if (m == 0 || m > n) fail(Errc::BadFormat, "pattern: invalid m");
  SamplingPattern pattern;
  pattern.n = n;
  pattern.seed = seed;
  pattern.indices = std::move(indices);
  return pattern;
}

MeasurementSet measure(const Frame& frame, const SamplingPattern& pattern, BasisKind kind) {
  validate_frame(frame);
  if (pattern.n != frame.samples.size())
    fail(Errc::Mismatch, "measure: pattern length does not match frame length");
  MeasurementSet ms;
  ms.y.reserve(pattern.m());
  for (const std::uint32_t idx : pattern.indices) ms.y.push_back(frame.samples[idx]);
  ms.pattern = pattern;
  ms.basis = {kind, pattern.n};
  ms.sample_rate = frame.sample_rate;
  return ms;
}

CsOperator::CsOperator(SamplingPattern pattern, BasisKind kind)
    : pattern_(std::move(pattern)), kind_(kind) {
  if (pattern_.m() == 0 || pattern_.m() > pattern_.n)
    fail(Errc::InvalidArgument, "CsOperator: invalid pattern");
  for (const std::uint32_t idx : pattern_.indices)
    if (idx >= pattern_.n) fail(Errc::InvalidArgument, "CsOperator: pattern index out of range");
}

void CsOperator::apply(std::span<const double> x, std::span<double> out) const {
  require_kind(kind_, BasisKind::Dct, "CsOperator::apply");
  if (x.size() != pattern_.n || out.size() != pattern_.m())
    fail(Errc::Mismatch, "CsOperator::apply: dimension mismatch");
  const std::vector<double> time = dct2_inverse(x);
  for (std::size_t i = 0; i < pattern_.m(); ++i) out[i] = time[pattern_.indices[i]];
}

void CsOperator::adjoint(std::span<const double> r, std::span<double> out) const {
  require_kind(kind_, BasisKind::Dct, "CsOperator::adjoint");
  if (r.size() != pattern_.m() || out.size() != pattern_.n)
    fail(Errc::Mismatch, "CsOperator::adjoint: dimension mismatch");
  std::vector<double> scatter(pattern_.n, 0.0);
  for (std::size_t i = 0; i < pattern_.m(); ++i) scatter[pattern_.indices[i]] = r[i];
  const std::vector<double> coeffs = dct2_forward(scatter);
  std::copy(coeffs.begin(), coeffs.end(), out.begin());
}

void CsOperator::apply(std::span<const std::complex<double>> x,
                       std::span<std::complex<double>> out) const {
  require_kind(kind_, BasisKind::Dft, "CsOperator::apply");
  if (x.size() != pattern_.n || out.size() != pattern_.m())
    fail(Errc::Mismatch, "CsOperator::apply: dimension mismatch");
  const std::vector<std::complex<double>> time = dft_inverse_c(x);
  for (std::size_t i = 0; i < pattern_.m(); ++i) out[i] = time[pattern_.indices[i]];
}

void CsOperator::adjoint(std::span<const std::complex<double>> r,
                         std::span<std::complex<double>> out) const {
  require_kind(kind_, BasisKind::Dft, "CsOperator::adjoint");
  if (r.size() != pattern_.m() || out.size() != pattern_.n)
    fail(Errc::Mismatch, "CsOperator::adjoint: dimension mismatch");
  std::vector<std::complex<double>> scatter(pattern_.n);
  for (std::size_t i = 0; i < pattern_.m(); ++i) scatter[pattern_.indices[i]] = r[i];
  const std::vector<std::complex<double>> coeffs = dft_forward_c(scatter);
  std::copy(coeffs.begin(), coeffs.end(), out.begin());
}

std::vector<std::complex<double>> operator_apply(const CsOperator& op, const CoefficientVector& x) {
  if (x.basis.kind != op.basis().kind || x.values.size() != op.cols())
    fail(Errc::Mismatch, "operator_apply: coefficient vector does not match operator");
  std::vector<std::complex<double>> out(op.rows());
  if (op.basis().kind == BasisKind::Dct) {
    std::vector<double> xr(op.cols());
    for (std::size_t i = 0; i < xr.size(); ++i) xr[i] = x.values[i].real();
    std::vector<double> yr(op.rows());
    op.apply(std::span<const double>(xr), std::span<double>(yr));
    for (std::size_t i = 0; i < yr.size(); ++i) out[i] = yr[i];
  } else {
    op.apply(std::span<const std::complex<double>>(x.values), std::span<std::complex<double>>(out));
  }
  return out;
}

CoefficientVector operator_adjoint(const CsOperator& op, std::span<const std::complex<double>> r) {
  if (r.size() != op.rows()) fail(Errc::Mismatch, "operator_adjoint: dimension mismatch");
  CoefficientVector cv;
  cv.basis = op.basis();
  cv.values.resize(op.cols());
  if (op.basis().kind == BasisKind::Dct) {
    std::vector<double> rr(op.rows());
    for (std::size_t i = 0; i < rr.size(); ++i) rr[i] = r[i].real();
    std::vector<double> out(op.cols());
    op.adjoint(std::span<const double>(rr), std::span<double>(out));
    for (std::size_t i = 0; i < out.size(); ++i) cv.values[i] = out[i];
  } else {
    op.adjoint(r, std::span<std::complex<double>>(cv.values));
  }
  return cv;
}

DenseOperator<double> materialize_real(const CsOperator& op) {
  require_kind(op.basis().kind, BasisKind::Dct, "materialize_real");
  if (op.cols() > kMaterializeLimit)
    fail(Errc::InvalidArgument, "materialize: n exceeds the explicit-matrix guard (4096)");
  DenseOperator<double> dense;
  dense.rows = op.rows();
  dense.cols = op.cols();
  dense.data.resize(dense.rows * dense.cols);
  for (std::size_t i = 0; i < dense.rows; ++i) {
    const std::vector<double> row = dct_inverse_row(op.cols(), op.pattern().indices[i]);
    std::copy(row.begin(), row.end(), dense.data.begin() + static_cast<std::ptrdiff_t>(i * dense.cols));
  }
  return dense;
}

DenseOperator<std::complex<double>> materialize(const CsOperator& op) {
  if (op.cols() > kMaterializeLimit)
    fail(Errc::InvalidArgument, "materialize: n exceeds the explicit-matrix guard (4096)");
  DenseOperator<std::complex<double>> dense;
  dense.rows = op.rows();
  dense.cols = op.cols();
  dense.data.resize(dense.rows * dense.cols);
  for (std::size_t i = 0; i < dense.rows; ++i) {
    const std::vector<std::complex<double>> row = inverse_row(op.basis(), op.pattern().indices[i]);
    std::copy(row.begin(), row.end(), dense.data.begin() + static_cast<std::ptrdiff_t>(i * dense.cols));
  }
  return dense;
}

}  // namespace csaudio
