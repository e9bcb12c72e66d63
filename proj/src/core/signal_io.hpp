#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "frame.hpp"
#include "transforms.hpp"

namespace csaudio {

enum class SynthKind { Sparse, Harmonic, VowelProxy };

const char* synth_kind_name(SynthKind kind);
SynthKind synth_kind_from_name(std::string_view name);

// Descriptor for deterministic test signals.
//
//   sparse      exactly `sparsity` nonzero coefficients at seeded random
//               positions, magnitudes in [0.5, 1.5] with random signs
//   harmonic    coefficients at {fundamental_index * h, h = 1..harmonic_count}
//               with magnitude decay^(h-1)
//   vowel-proxy harmonic plus a seeded dense perturbation carrying 1% of the
//               coefficient energy, spread over all bins
//
// The construction happens in the requested basis and is inverse-transformed
// to the time domain; for the DFT the planted spectrum is kept
// conjugate-symmetric so the result is real (each planted value occupies a
// bin and its mirror). Output is peak-normalized to max |amplitude| = 0.9.
struct SynthSpec {
  SynthKind kind = SynthKind::Sparse;
  std::size_t n = 3000;
  std::size_t sparsity = 10;
  std::size_t fundamental_index = 8;
  std::size_t harmonic_count = 10;
  double decay = 0.7;
  std::uint64_t seed = 1;
  int sample_rate = 8000;
};

// Reads `len` samples starting at sample offset `start` from a 16-bit PCM
// WAV file (channel 0 of multi-channel files). Sample v maps to v / 32768.
Frame read_wav_frame(const std::string& path, std::size_t start, std::size_t len);

// Writes a mono 16-bit PCM WAV; amplitudes are clamped to [-1, 1], scaled
// by 32767 and rounded to nearest.
void write_wav(const std::string& path, const Frame& frame);

// Deterministic per (spec, basis): same inputs give bit-identical frames.
Frame synthesize(const SynthSpec& spec, BasisKind basis);

}  // namespace csaudio
