#include "monolab/errors.hpp"

namespace monolab {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::not_hermitian: return "NotHermitian";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::not_psd: return "NotPSD";
    case Errc::non_square: return "NonSquare";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::bad_subsystem_index: return "BadSubsystemIndex";
    case Errc::not_normalized: return "NotNormalized";
    case Errc::dimension_too_large: return "DimensionTooLarge";
    case Errc::bad_split: return "BadSplit";
    case Errc::wrong_dimension: return "WrongDimension";
    case Errc::unsupported: return "Unsupported";
    case Errc::negative_input: return "NegativeInput";
    case Errc::domain_error: return "DomainError";
    case Errc::zero_divisor: return "ZeroDivisor";
    case Errc::base_monogamy_violated: return "BaseMonogamyViolated";
    case Errc::condition_violated: return "ConditionViolated";
    case Errc::slack_too_large: return "SlackTooLarge";
    case Errc::slack_too_small: return "SlackTooSmall";
    case Errc::exponent_out_of_range: return "ExponentOutOfRange";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::unsupported_system_measure_pair: return "UnsupportedSystemMeasurePair";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

}  // namespace monolab
