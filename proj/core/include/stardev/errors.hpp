#pragma once

#include <stdexcept>
#include <string>

namespace stardev {

enum class errc {
  non_positive_weight,
  weight_sum_mismatch,
  invalid_probability,
  space_mismatch,
  empty_sample,
  not_star_shaped_set,
  not_upward_closed,
  bracket_too_small,
  contract_violation,
  invariant_violation,
  grid_too_coarse,
  name_resolution,
  bad_input,
  bad_argument,
};

const char* errc_name(errc c);

/// Domain error carrying a machine-readable code; the CLI maps codes to
/// its exit-code contract.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& message) {
  throw error(code, message);
}

}  // namespace stardev
