#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace monolab {

enum class Errc {
  not_hermitian,
  no_convergence,
  not_psd,
  non_square,
  dimension_mismatch,
  bad_subsystem_index,
  not_normalized,
  dimension_too_large,
  bad_split,
  wrong_dimension,
  unsupported,
  negative_input,
  domain_error,
  zero_divisor,
  base_monogamy_violated,
  condition_violated,
  slack_too_large,
  slack_too_small,
  exponent_out_of_range,
  length_mismatch,
  unsupported_system_measure_pair,
  parse_error,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace monolab
