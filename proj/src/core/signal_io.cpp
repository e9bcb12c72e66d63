#include "signal_io.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace csaudio {

namespace {

// ---- little-endian helpers ----

std::uint16_t read_u16(std::istream& in) {
  unsigned char b[2];
  in.read(reinterpret_cast<char*>(b), 2);
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

std::uint32_t read_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void write_u16(std::ostream& out, std::uint16_t v) {
  const unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                              static_cast<unsigned char>((v >> 8) & 0xff)};
  out.write(reinterpret_cast<const char*>(b), 2);
}

void write_u32(std::ostream& out, std::uint32_t v) {
  const unsigned char b[4] = {
      static_cast<unsigned char>(v & 0xff), static_cast<unsigned char>((v >> 8) & 0xff),
      static_cast<unsigned char>((v >> 16) & 0xff), static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

struct WavLayout {
  std::uint16_t audio_format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits_per_sample = 0;
  std::streamoff data_offset = -1;
  std::uint32_t data_bytes = 0;
  bool have_fmt = false;
};

// Walks the RIFF chunk list; unknown chunks (LIST, fact, ...) are skipped,
// not rejected. Chunk payloads are padded to even length.
WavLayout scan_wav(std::istream& in, const std::string& path) {
  char magic[4];
  in.read(magic, 4);
  std::uint32_t riff_size = read_u32(in);
  (void)riff_size;
  char wave[4];
  in.read(wave, 4);
  if (!in || std::memcmp(magic, "RIFF", 4) != 0 || std::memcmp(wave, "WAVE", 4) != 0)
    fail(Errc::BadFormat, path + ": not a RIFF/WAVE file");

  WavLayout layout;
  for (;;) {
    char id[4];
    in.read(id, 4);
    if (!in) break;  // clean end of chunk list
    const std::uint32_t size = read_u32(in);
    if (!in) fail(Errc::BadFormat, path + ": truncated chunk header");
    const std::streamoff payload = in.tellg();
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (size < 16) fail(Errc::BadFormat, path + ": fmt chunk too short");
      layout.audio_format = read_u16(in);
      layout.channels = read_u16(in);
      layout.sample_rate = read_u32(in);
      read_u32(in);  // byte rate
      layout.block_align = read_u16(in);
      layout.bits_per_sample = read_u16(in);
      layout.have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      layout.data_offset = payload;
      layout.data_bytes = size;
    }
    in.clear();
    in.seekg(payload + static_cast<std::streamoff>(size + (size & 1)), std::ios::beg);
    if (!in) break;  // final chunk may end exactly at EOF
  }
  in.clear();

  if (!layout.have_fmt || layout.data_offset < 0)
    fail(Errc::BadFormat, path + ": missing fmt or data chunk");
  return layout;
}

std::string describe_synth(const SynthSpec& spec, BasisKind basis) {
  char buf[160];
  switch (spec.kind) {
    case SynthKind::Sparse:
      std::snprintf(buf, sizeof buf, "synth:sparse n=%zu k=%zu seed=%llu basis=%s", spec.n,
                    spec.sparsity, static_cast<unsigned long long>(spec.seed), basis_name(basis));
      break;
    default:
      std::snprintf(buf, sizeof buf, "synth:%s n=%zu f=%zu h=%zu decay=%g seed=%llu basis=%s",
                    synth_kind_name(spec.kind), spec.n, spec.fundamental_index, spec.harmonic_count,
                    spec.decay, static_cast<unsigned long long>(spec.seed), basis_name(basis));
      break;
  }
  return buf;
}

void validate_synth_spec(const SynthSpec& spec, BasisKind basis) {
  if (spec.n == 0) fail(Errc::InvalidArgument, "synthesize: n must be positive");
  if (spec.sample_rate <= 0) fail(Errc::InvalidArgument, "synthesize: sample_rate must be positive");
  if (spec.kind == SynthKind::Sparse) {
    if (spec.sparsity > spec.n) fail(Errc::InvalidArgument, "synthesize: sparsity exceeds n");
    return;
  }
  if (spec.fundamental_index == 0 || spec.harmonic_count == 0)
    fail(Errc::InvalidArgument, "synthesize: fundamental_index and harmonic_count must be positive");
  if (!(spec.decay > 0.0 && spec.decay <= 1.0))
    fail(Errc::InvalidArgument, "synthesize: decay must lie in (0, 1]");
  if (spec.fundamental_index * spec.harmonic_count >= spec.n)
    fail(Errc::InvalidArgument, "synthesize: aliased harmonics (fundamental * count >= n)");
  if (basis == BasisKind::Dft && 2 * spec.fundamental_index * spec.harmonic_count > spec.n)
    fail(Errc::InvalidArgument,
         "synthesize: DFT harmonics must not cross the conjugate-symmetry fold (2*f*h <= n)");
}

// Harmonic ladder in the DCT domain.
std::vector<double> harmonic_coeffs_real(const SynthSpec& spec) {
  std::vector<double> coef(spec.n, 0.0);
  double amp = 1.0;
  for (std::size_t h = 1; h <= spec.harmonic_count; ++h) {
    coef[spec.fundamental_index * h] = amp;
    amp *= spec.decay;
  }
  return coef;
}

// Harmonic ladder in the DFT domain; each harmonic occupies a bin and its
// conjugate mirror so the time signal is real.
std::vector<std::complex<double>> harmonic_coeffs_complex(const SynthSpec& spec) {
  const std::size_t n = spec.n;
  std::vector<std::complex<double>> coef(n);
  double amp = 1.0;
  for (std::size_t h = 1; h <= spec.harmonic_count; ++h) {
    const std::size_t k = spec.fundamental_index * h;
    const std::size_t m = (n - k) % n;
    coef[k] = amp;
    coef[m] = amp;  // same bin when k == n/2
    amp *= spec.decay;
  }
  return coef;
}

std::vector<double> build_coeffs_dct(const SynthSpec& spec, SplitMix64& rng) {
  const std::size_t n = spec.n;
  std::vector<double> coef(n, 0.0);
  switch (spec.kind) {
    case SynthKind::Sparse: {
      const auto positions = shuffled_prefix(n, spec.sparsity, rng);
      for (const std::uint32_t pos : positions) coef[pos] = rng.next_sign() * rng.next_range(0.5, 1.5);
      break;
    }
    case SynthKind::Harmonic:
      coef = harmonic_coeffs_real(spec);
      break;
    case SynthKind::VowelProxy: {
      coef = harmonic_coeffs_real(spec);
      double harmonic_energy = 0.0;
      for (double v : coef) harmonic_energy += v * v;
      std::vector<double> noise(n);
      double noise_energy = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        noise[i] = 2.0 * rng.next_unit() - 1.0;
        noise_energy += noise[i] * noise[i];
      }
      const double scale = std::sqrt(0.01 * harmonic_energy / noise_energy);
      for (std::size_t i = 0; i < n; ++i) coef[i] += scale * noise[i];
      break;
    }
  }
  return coef;
}

// Sparse support in the DFT domain must be closed under conjugate
// mirroring. Self-paired bins (0, and n/2 for even n) count as one
// nonzero; every other planted value occupies two bins, so the atom
// budget is planned before drawing positions.
std::vector<std::complex<double>> sparse_coeffs_dft(const SynthSpec& spec, SplitMix64& rng) {
  const std::size_t n = spec.n;
  const std::size_t k = spec.sparsity;
  std::vector<std::complex<double>> coef(n);
  if (k == 0) return coef;

  std::vector<std::size_t> self_bins{0};
  if (n % 2 == 0 && n > 1) self_bins.push_back(n / 2);
  const std::size_t pair_count = (n - self_bins.size()) / 2;  // low bins 1..(fold-1)

  std::size_t selfs_needed = 0;
  if (k % 2 == 1)
    selfs_needed = 1;
  else if (k / 2 > pair_count)
    selfs_needed = 2;  // only possible when k == n and n is even

  if (selfs_needed == 1 && self_bins.size() == 2 && rng.next_below(2) == 1)
    std::swap(self_bins[0], self_bins[1]);

  for (std::size_t s = 0; s < selfs_needed; ++s)
    coef[self_bins[s]] = rng.next_sign() * rng.next_range(0.5, 1.5);

  const std::size_t pairs = (k - selfs_needed) / 2;
  const auto lows = shuffled_prefix(pair_count, pairs, rng);
  for (const std::uint32_t low : lows) {
    const std::size_t bin = 1 + low;
    const double v = rng.next_sign() * rng.next_range(0.5, 1.5);
    coef[bin] = v;
    coef[n - bin] = v;  // real value, equal to its own conjugate
  }
  return coef;
}

std::vector<std::complex<double>> build_coeffs_dft(const SynthSpec& spec, SplitMix64& rng) {
  const std::size_t n = spec.n;
  switch (spec.kind) {
    case SynthKind::Sparse:
      return sparse_coeffs_dft(spec, rng);
    case SynthKind::Harmonic:
      return harmonic_coeffs_complex(spec);
    case SynthKind::VowelProxy: {
      std::vector<std::complex<double>> coef = harmonic_coeffs_complex(spec);
      double harmonic_energy = 0.0;
      for (const auto& v : coef) harmonic_energy += std::norm(v);
      // Conjugate-symmetric dense perturbation, generated bin 0..fold.
      std::vector<std::complex<double>> noise(n);
      double noise_energy = 0.0;
      const std::size_t fold = n / 2;
      for (std::size_t i = 0; i <= fold; ++i) {
        const bool self = (i == 0) || (2 * i == n);
        if (self) {
          noise[i] = 2.0 * rng.next_unit() - 1.0;
          noise_energy += std::norm(noise[i]);
        } else {
          const double re = 2.0 * rng.next_unit() - 1.0;
          const double im = 2.0 * rng.next_unit() - 1.0;
          noise[i] = {re, im};
          noise[n - i] = {re, -im};
          noise_energy += 2.0 * std::norm(noise[i]);
        }
      }
      const double scale = std::sqrt(0.01 * harmonic_energy / noise_energy);
      for (std::size_t i = 0; i < n; ++i) coef[i] += scale * noise[i];
      return coef;
    }
  }
  fail(Errc::InvalidArgument, "synthesize: unknown kind");
}

}  // namespace

const char* synth_kind_name(SynthKind kind) {
  switch (kind) {
    case SynthKind::Sparse: return "sparse";
    case SynthKind::Harmonic: return "harmonic";
    case SynthKind::VowelProxy: return "vowel-proxy";
  }
  return "?";
}

SynthKind synth_kind_from_name(std::string_view name) {
  if (name == "sparse") return SynthKind::Sparse;
  if (name == "harmonic") return SynthKind::Harmonic;
  if (name == "vowel-proxy" || name == "vowel") return SynthKind::VowelProxy;
  fail(Errc::BadFormat, "unknown synth kind: " + std::string(name));
}

Frame read_wav_frame(const std::string& path, std::size_t start, std::size_t len) {
  if (len == 0) fail(Errc::InvalidArgument, "read_wav_frame: frame length must be positive");
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::Io, path + ": cannot open for reading");

  const WavLayout layout = scan_wav(in, path);
  if (layout.audio_format != 1)
    fail(Errc::BadFormat, path + ": unsupported encoding (only PCM, format tag 1)");
  if (layout.bits_per_sample != 16)
    fail(Errc::BadFormat, path + ": unsupported bit depth (only 16-bit PCM)");
  if (layout.channels == 0) fail(Errc::BadFormat, path + ": zero channels");

  const std::size_t block = layout.block_align != 0
                                ? layout.block_align
                                : static_cast<std::size_t>(layout.channels) * 2;
  const std::size_t total_frames = layout.data_bytes / block;
  if (start > total_frames || len > total_frames - start)
    fail(Errc::OutOfRange, path + ": frame window exceeds file length");

  in.seekg(layout.data_offset + static_cast<std::streamoff>(start * block), std::ios::beg);
  std::vector<char> raw(len * block);
  in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (!in) fail(Errc::BadFormat, path + ": truncated data chunk");

  Frame frame;
  frame.samples.resize(len);
  for (std::size_t i = 0; i < len; ++i) {
    const unsigned char lo = static_cast<unsigned char>(raw[i * block]);
    const unsigned char hi = static_cast<unsigned char>(raw[i * block + 1]);
    const std::int16_t v = static_cast<std::int16_t>(lo | (hi << 8));
    frame.samples[i] = static_cast<double>(v) / 32768.0;
  }
  frame.sample_rate = static_cast<int>(layout.sample_rate);
  frame.origin = "wav:" + path + "@" + std::to_string(start);
  return frame;
}

void write_wav(const std::string& path, const Frame& frame) {
  validate_frame(frame);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::Io, path + ": cannot open for writing");

  const std::uint32_t data_bytes = static_cast<std::uint32_t>(frame.samples.size() * 2);
  const std::uint32_t rate = static_cast<std::uint32_t>(frame.sample_rate);
  out.write("RIFF", 4);
  write_u32(out, 36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  write_u32(out, 16);
  write_u16(out, 1);  // PCM
  write_u16(out, 1);  // mono
  write_u32(out, rate);
  write_u32(out, rate * 2);
  write_u16(out, 2);   // block align
  write_u16(out, 16);  // bits per sample
  out.write("data", 4);
  write_u32(out, data_bytes);
  for (const double s : frame.samples) {
    const double clamped = std::clamp(s, -1.0, 1.0);
    const auto v = static_cast<std::int16_t>(std::llround(clamped * 32767.0));
    write_u16(out, static_cast<std::uint16_t>(v));
  }
  if (!out) fail(Errc::Io, path + ": write failed");
}

Frame synthesize(const SynthSpec& spec, BasisKind basis) {
  validate_synth_spec(spec, basis);
  SplitMix64 rng(spec.seed);

  Frame frame;
  if (basis == BasisKind::Dct) {
    frame.samples = dct2_inverse(build_coeffs_dct(spec, rng));
  } else {
    const auto time = dft_inverse_c(build_coeffs_dft(spec, rng));
    frame.samples.resize(time.size());
    for (std::size_t i = 0; i < time.size(); ++i) frame.samples[i] = time[i].real();
  }

  double peak = 0.0;
  for (const double v : frame.samples) peak = std::max(peak, std::abs(v));
  if (peak > 0.0) {
    const double gain = 0.9 / peak;
    for (double& v : frame.samples) v *= gain;
  }

  frame.sample_rate = spec.sample_rate;
  frame.origin = describe_synth(spec, basis);
  return frame;
}

}  // namespace csaudio
