#pragma once

#include <stdexcept>
#include <string>

namespace equi {

// Failure categories of the pipeline stages. The CLI maps these onto exit
// codes and single-line diagnostics; library code throws and never prints.
enum class errc {
  invalid_grid,
  downsample_forbidden,
  plan,
  degenerate_curve,
  invalid_spec,
  positivity,
  undersampled_exponential,
  resolution,
  under_resolution,
  monotonicity_loss,
  parameter,
  band_mismatch,
  config,
  io,
};

const char* to_string(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace equi
