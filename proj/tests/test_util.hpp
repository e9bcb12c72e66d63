#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "core/frame.hpp"
#include "core/rng.hpp"

namespace testutil {

inline csaudio::Frame random_frame(std::size_t n, std::uint64_t seed, int sample_rate = 8000) {
  csaudio::SplitMix64 rng(seed);
  csaudio::Frame frame;
  frame.samples.resize(n);
  for (double& v : frame.samples) v = 2.0 * rng.next_unit() - 1.0;
  frame.sample_rate = sample_rate;
  frame.origin = "test:random";
  return frame;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline double max_abs_diff(const std::vector<std::complex<double>>& a,
                           const std::vector<std::complex<double>>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

template <typename T>
double l2_norm(const std::vector<T>& v) {
  double sum = 0.0;
  for (const T& x : v) sum += std::norm(std::complex<double>(x));
  return std::sqrt(sum);
}

template <typename T>
double rel_l2_error(const std::vector<T>& got, const std::vector<T>& want) {
  double err = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < want.size(); ++i) {
    err += std::norm(std::complex<double>(got[i]) - std::complex<double>(want[i]));
    ref += std::norm(std::complex<double>(want[i]));
  }
  return ref > 0.0 ? std::sqrt(err / ref) : std::sqrt(err);
}

// Unique temp-file path under the build tree's working directory.
inline std::string temp_path(const std::string& tag) {
  static int counter = 0;
  return "tmp_" + tag + "_" + std::to_string(counter++);
}

}  // namespace testutil
