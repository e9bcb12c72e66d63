#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "frame.hpp"

namespace csaudio {

enum class BasisKind { Dct, Dft };

const char* basis_name(BasisKind kind);
BasisKind basis_from_name(std::string_view name);

// One of the two sparsity bases: orthonormal DCT-II or unitary DFT of
// length n. Both are unitary, so forward/inverse are conjugate transposes
// of each other and energy is preserved.
struct SparsityBasis {
  BasisKind kind = BasisKind::Dct;
  std::size_t n = 0;
};

// Coefficients of a frame in a sparsity basis. DCT coefficients of a real
// frame are real and are stored with exactly zero imaginary part; DFT
// coefficients of a real frame are conjugate-symmetric.
struct CoefficientVector {
  SparsityBasis basis;
  std::vector<std::complex<double>> values;

  std::size_t size() const { return values.size(); }
};

// ---- raw kernels (length-preserving, n >= 1) ----
//
// The fast paths below are FFT-backed but are required to match the
// direct evaluation of the defining sums; the test suite holds an
// independent O(N^2) reference for that comparison.

// Orthonormal DCT-II: c(k) * sum_n f(n) cos((2n+1)k pi / 2N),
// c(0) = sqrt(1/N), c(k>0) = sqrt(2/N).
std::vector<double> dct2_forward(std::span<const double> samples);
// Transpose action of the orthonormal DCT-II matrix.
std::vector<double> dct2_inverse(std::span<const double> coeffs);
// Unitary DFT: (1/sqrt(N)) * sum_n x(n) e^{-j 2 pi nk/N}, and its inverse.
std::vector<std::complex<double>> dft_forward_c(std::span<const std::complex<double>> x);
std::vector<std::complex<double>> dft_inverse_c(std::span<const std::complex<double>> x);

// ---- frame-level operations ----

CoefficientVector dct_forward(const Frame& frame);
Frame dct_inverse(const CoefficientVector& coeffs);

CoefficientVector dft_forward(const Frame& frame);

struct DftInverseResult {
  Frame frame;
  // Ratio of imaginary to total energy of the complex time signal that was
  // dropped when taking the real part; ~0 for conjugate-symmetric input.
  double discarded_imag_energy = 0.0;
};
DftInverseResult dft_inverse(const CoefficientVector& coeffs);

CoefficientVector forward(const Frame& frame, BasisKind kind);

struct InverseOutcome {
  Frame frame;
  double discarded_imag_energy = 0.0;  // always 0 for DCT
};
InverseOutcome inverse(const CoefficientVector& coeffs);

// Row t of the inverse-transform matrix B = Psi^-1, i.e. the functional
// mapping a coefficient vector to the time sample at index t. Evaluated
// directly from the definitions (no FFT involved).
std::vector<double> dct_inverse_row(std::size_t n, std::size_t t);
std::vector<std::complex<double>> dft_inverse_row(std::size_t n, std::size_t t);
std::vector<std::complex<double>> inverse_row(const SparsityBasis& basis, std::size_t t);

// Number of coefficients with magnitude above rel_threshold times the
// largest magnitude; 0 for an all-zero vector. rel_threshold in (0, 1).
std::size_t sparsity_count(const CoefficientVector& coeffs, double rel_threshold);

}  // namespace csaudio
