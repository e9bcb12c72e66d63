#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"

namespace csaudio {

// Fixed-length time-domain signal segment. Amplitudes are dimensionless,
// nominally in [-1, 1]; origin records where the frame came from
// (file + offset, or a synthesis descriptor).
struct Frame {
  std::vector<double> samples;
  int sample_rate = 8000;
  std::string origin;

  std::size_t size() const { return samples.size(); }
};

// Enforces the type invariants: nonzero length, all samples finite.
inline void validate_frame(const Frame& frame) {
  if (frame.samples.empty()) fail(Errc::InvalidArgument, "frame: empty sample vector");
  for (double v : frame.samples)
    if (!std::isfinite(v)) fail(Errc::InvalidArgument, "frame: non-finite sample");
}

}  // namespace csaudio
