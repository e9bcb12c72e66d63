#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <vector>

#include "core/errors.hpp"
#include "core/transforms.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace csaudio;
using testutil::max_abs_diff;
using testutil::random_frame;

TEST_CASE("dct forward matches hand values") {
  Frame constant{{1.0, 1.0, 1.0, 1.0}, 8000, "test"};
  CoefficientVector cv = dct_forward(constant);
  REQUIRE(cv.values.size() == 4);
  CHECK(cv.values[0].real() == doctest::Approx(2.0).epsilon(1e-12));
  for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(cv.values[k]) < 1e-12);

  Frame impulse{{1.0, 0.0}, 8000, "test"};
  CoefficientVector cv2 = dct_forward(impulse);
  CHECK(cv2.values[0].real() == doctest::Approx(0.70710678).epsilon(1e-8));
  CHECK(cv2.values[1].real() == doctest::Approx(0.70710678).epsilon(1e-8));
}

TEST_CASE("dct inverse matches hand values") {
  CoefficientVector cv;
  cv.basis = {BasisKind::Dct, 4};
  cv.values = {2.0, 0.0, 0.0, 0.0};
  Frame f = dct_inverse(cv);
  for (double v : f.samples) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  cv.values = {0.0, 0.0, 0.0, 0.0};
  Frame zero = dct_inverse(cv);
  for (double v : zero.samples) CHECK(v == 0.0);
}

TEST_CASE("dft forward matches hand values") {
  Frame constant{{1.0, 1.0, 1.0, 1.0}, 8000, "test"};
  CoefficientVector cv = dft_forward(constant);
  CHECK(std::abs(cv.values[0] - std::complex<double>(2.0, 0.0)) < 1e-12);
  for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(cv.values[k]) < 1e-12);

  // Bin-aligned cosine: |values[2]| = |values[6]| = sqrt(8)/2.
  Frame cosine;
  cosine.samples.resize(8);
  for (std::size_t t = 0; t < 8; ++t)
    cosine.samples[t] = std::cos(2.0 * 3.14159265358979323846 * 2.0 * t / 8.0);
  cosine.sample_rate = 8000;
  CoefficientVector cv2 = dft_forward(cosine);
  const double expect = std::sqrt(8.0) / 2.0;
  CHECK(std::abs(cv2.values[2]) == doctest::Approx(expect).epsilon(1e-10));
  CHECK(std::abs(cv2.values[6]) == doctest::Approx(expect).epsilon(1e-10));
  for (std::size_t k = 0; k < 8; ++k)
    if (k != 2 && k != 6) CHECK(std::abs(cv2.values[k]) < 1e-12);
}

TEST_CASE("dft inverse of 2*e_0 is the constant frame") {
  CoefficientVector cv;
  cv.basis = {BasisKind::Dft, 4};
  cv.values.assign(4, 0.0);
  cv.values[0] = 2.0;
  DftInverseResult r = dft_inverse(cv);
  for (double v : r.frame.samples) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.discarded_imag_energy < 1e-20);
}

TEST_CASE("round trips at awkward lengths") {
  for (std::size_t n : {1u, 2u, 7u, 64u, 3000u}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Frame f = random_frame(n, 1000 + seed);
      Frame back_dct = dct_inverse(dct_forward(f));
      CHECK(max_abs_diff(f.samples, back_dct.samples) < 1e-10);
      DftInverseResult back_dft = dft_inverse(dft_forward(f));
      CHECK(max_abs_diff(f.samples, back_dft.frame.samples) < 1e-10);
      CHECK(back_dft.discarded_imag_energy < 1e-20);
    }
  }
}

TEST_CASE("Parseval holds for both bases") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Frame f = random_frame(3000, 2000 + seed);
    double time_energy = 0.0;
    for (double v : f.samples) time_energy += v * v;
    for (BasisKind kind : {BasisKind::Dct, BasisKind::Dft}) {
      CoefficientVector cv = forward(f, kind);
      double coeff_energy = 0.0;
      for (const auto& v : cv.values) coeff_energy += std::norm(v);
      CHECK(std::abs(coeff_energy - time_energy) / time_energy < 1e-9);
    }
  }
}

TEST_CASE("fast paths agree with the direct-evaluation reference") {
  for (std::size_t n : {1u, 2u, 7u, 33u, 64u}) {
    Frame f = random_frame(n, 37 + n);
    const std::vector<double> want_dct = oracle::dct2_forward(f.samples);
    const std::vector<double> got_dct = dct2_forward(f.samples);
    CHECK(max_abs_diff(want_dct, got_dct) < 1e-9);
    CHECK(max_abs_diff(oracle::dct2_inverse(want_dct), dct2_inverse(got_dct)) < 1e-9);

    std::vector<std::complex<double>> fc(f.samples.begin(), f.samples.end());
    CHECK(max_abs_diff(oracle::dft_forward(fc), dft_forward_c(fc)) < 1e-9);
    CHECK(max_abs_diff(oracle::dft_inverse(fc), dft_inverse_c(fc)) < 1e-9);
  }

  // One spot check at the experiment length.
  Frame f = random_frame(3000, 99);
  CHECK(max_abs_diff(oracle::dct2_forward(f.samples), dct2_forward(f.samples)) < 1e-9);
  std::vector<std::complex<double>> fc(f.samples.begin(), f.samples.end());
  CHECK(max_abs_diff(oracle::dft_forward(fc), dft_forward_c(fc)) < 1e-9);
}

TEST_CASE("orthonormality of the explicit matrices at small n") {
  const std::size_t n = 24;
  for (BasisKind kind : {BasisKind::Dct, BasisKind::Dft}) {
    // Columns of Psi from forward transforms of unit vectors.
    std::vector<std::vector<std::complex<double>>> psi;
    for (std::size_t j = 0; j < n; ++j) {
      Frame unit;
      unit.samples.assign(n, 0.0);
      unit.samples[j] = 1.0;
      psi.push_back(forward(unit, kind).values);
    }
    // Psi^H Psi should be the identity.
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        std::complex<double> dot = 0.0;
        for (std::size_t k = 0; k < n; ++k) dot += std::conj(psi[a][k]) * psi[b][k];
        const double want = a == b ? 1.0 : 0.0;
        CHECK(std::abs(dot - want) < 1e-10);
      }
    }
  }
}

TEST_CASE("conjugate symmetry of real-frame DFT coefficients") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 16 + seed % 17;
    Frame f = random_frame(n, 3000 + seed);
    CoefficientVector cv = dft_forward(f);
    for (std::size_t k = 1; k < n; ++k)
      CHECK(std::abs(cv.values[k] - std::conj(cv.values[n - k])) < 1e-10);
  }
}

TEST_CASE("inverse_row matches the closed forms") {
  // DCT rows at n = 4.
  for (std::size_t t = 0; t < 4; ++t) {
    const std::vector<double> row = dct_inverse_row(4, t);
    CHECK(row[0] == doctest::Approx(0.5).epsilon(1e-12));
    for (std::size_t k = 1; k < 4; ++k) {
      const double want = std::sqrt(0.5) * std::cos((2.0 * t + 1.0) * k * 3.14159265358979323846 / 8.0);
      CHECK(row[k] == doctest::Approx(want).epsilon(1e-12));
    }
  }
  // DFT row t=0 is constant 1/sqrt(n).
  const std::vector<std::complex<double>> row0 = dft_inverse_row(9, 0);
  for (const auto& v : row0) CHECK(std::abs(v - 1.0 / 3.0) < 1e-12);
}

TEST_CASE("inverse_row acts as the reconstruction functional") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 8 + rng.next_below(57);
    const std::size_t t = rng.next_below(n);
    Frame f = random_frame(n, 4000 + trial);
    for (BasisKind kind : {BasisKind::Dct, BasisKind::Dft}) {
      const CoefficientVector cv = forward(f, kind);
      const std::vector<std::complex<double>> row = inverse_row(cv.basis, t);
      std::complex<double> dot = 0.0;
      for (std::size_t k = 0; k < n; ++k) dot += row[k] * cv.values[k];
      CHECK(std::abs(dot - f.samples[t]) < 1e-10);
    }
  }
}

TEST_CASE("stacked inverse rows reproduce the inverse transform") {
  const std::size_t n = 32;
  for (BasisKind kind : {BasisKind::Dct, BasisKind::Dft}) {
    // Inverse images of the coefficient unit vectors give the matrix the
    // inverse transform actually applies, column by column.
    std::vector<std::vector<std::complex<double>>> columns;
    for (std::size_t k = 0; k < n; ++k) {
      CoefficientVector unit;
      unit.basis = {kind, n};
      unit.values.assign(n, 0.0);
      unit.values[k] = 1.0;
      if (kind == BasisKind::Dct) {
        const Frame f = dct_inverse(unit);
        columns.emplace_back(f.samples.begin(), f.samples.end());
      } else {
        columns.push_back(dft_inverse_c(unit.values));
      }
    }
    for (std::size_t t = 0; t < n; ++t) {
      const std::vector<std::complex<double>> row = inverse_row({kind, n}, t);
      for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(row[k] - columns[k][t]) < 1e-12);
    }
  }
}

TEST_CASE("dft_inverse reports discarded imaginary energy") {
  CoefficientVector cv;
  cv.basis = {BasisKind::Dft, 8};
  cv.values.assign(8, 0.0);
  cv.values[1] = {1.0, 0.0};  // no mirror partner: time signal is complex
  DftInverseResult r = dft_inverse(cv);
  CHECK(r.discarded_imag_energy == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("sparsity_count") {
  CoefficientVector cv;
  cv.basis = {BasisKind::Dct, 4};
  cv.values = {2.0, 0.0, 0.0, 0.0};
  CHECK(sparsity_count(cv, 1e-6) == 1);

  cv.values = {0.0, 0.0, 0.0, 0.0};
  CHECK(sparsity_count(cv, 1e-6) == 0);

  cv.values = {1.0, 0.5, 0.2, 0.05};
  CHECK(sparsity_count(cv, 0.1) == 3);

  CHECK_THROWS_AS(sparsity_count(cv, 0.0), Error);
  CHECK_THROWS_AS(sparsity_count(cv, 1.0), Error);
}

TEST_CASE("basis mismatch and degenerate inputs are rejected") {
  CoefficientVector cv;
  cv.basis = {BasisKind::Dft, 4};
  cv.values.assign(4, 0.0);
  CHECK_THROWS_AS(dct_inverse(cv), Error);
  cv.basis.kind = BasisKind::Dct;
  CHECK_THROWS_AS(dft_inverse(cv), Error);

  Frame empty;
  CHECK_THROWS_AS(dct_forward(empty), Error);
  Frame nonfinite{{0.0, std::nan("")}, 8000, "test"};
  CHECK_THROWS_AS(dft_forward(nonfinite), Error);

  CHECK_THROWS_AS(dct_inverse_row(8, 8), Error);
  CHECK_THROWS_AS(dft_inverse_row(8, 9), Error);
}
