#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "frame.hpp"
#include "transforms.hpp"

namespace csaudio {

// Ordered set of M distinct time indices in [0, n), reproducible from
// (seed, n, m): the first M entries of a seeded Fisher-Yates permutation.
struct SamplingPattern {
  std::vector<std::uint32_t> indices;
  std::size_t n = 0;
  std::uint64_t seed = 0;

  std::size_t m() const { return indices.size(); }
};

SamplingPattern draw_pattern(std::size_t n, std::size_t m, std::uint64_t seed);

// Text form: first line "N M seed", optionally followed by a second line
// holding the M indices. Without the index list the pattern is regenerated
// from the seed on parse.
std::string pattern_to_text(const SamplingPattern& pattern, bool with_indices = false);
SamplingPattern pattern_from_text(const std::string& text);

// The M observed sample values with their pattern and basis tag.
struct MeasurementSet {
  std::vector<double> y;
  SamplingPattern pattern;
  SparsityBasis basis;
  int sample_rate = 8000;  // carried through so reconstructions stay playable
};

MeasurementSet measure(const Frame& frame, const SamplingPattern& pattern, BasisKind kind);

// The CS operator Omega = B(q(1:M), :) built from rows of the inverse
// transform: apply maps a coefficient vector to the time samples at the
// pattern's indices, adjoint is the conjugate transpose. Rows of a unitary
// matrix are orthonormal, so Omega Omega^H = I_M.
class CsOperator {
public:
  CsOperator(SamplingPattern pattern, BasisKind kind);

  const SamplingPattern& pattern() const { return pattern_; }
  SparsityBasis basis() const { return {kind_, pattern_.n}; }
  std::size_t rows() const { return pattern_.m(); }
  std::size_t cols() const { return pattern_.n; }

  // Real path (DCT basis only).
  void apply(std::span<const double> x, std::span<double> out) const;
  void adjoint(std::span<const double> r, std::span<double> out) const;
  // Complex path (DFT basis only).
  void apply(std::span<const std::complex<double>> x, std::span<std::complex<double>> out) const;
  void adjoint(std::span<const std::complex<double>> r, std::span<std::complex<double>> out) const;

private:
  SamplingPattern pattern_;
  BasisKind kind_;
};

// Basis-generic wrappers over the typed paths above (DCT results carry a
// zero imaginary part).
std::vector<std::complex<double>> operator_apply(const CsOperator& op, const CoefficientVector& x);
CoefficientVector operator_adjoint(const CsOperator& op, std::span<const std::complex<double>> r);

// Explicit row-major M x N matrix, for small-N verification against the
// matrix-free paths. Guarded to n <= 4096.
template <typename Scalar>
struct DenseOperator {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Scalar> data;  // row-major

  const Scalar& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

DenseOperator<double> materialize_real(const CsOperator& op);              // DCT only
DenseOperator<std::complex<double>> materialize(const CsOperator& op);     // either basis

}  // namespace csaudio
