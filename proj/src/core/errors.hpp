#pragma once

#include <stdexcept>
#include <string>

namespace csaudio {

// Failure categories surfaced through the C API as status codes.
enum class Errc {
  InvalidArgument,
  Io,
  BadFormat,
  OutOfRange,
  Mismatch,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace csaudio
