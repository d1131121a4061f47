#ifndef CONMAP_ERRORS_HPP
#define CONMAP_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace conmap {

enum class errc {
  not_monic,
  reducible,
  degree_too_large,
  field_mismatch,
  division_by_zero,
  zero_element,
  zero_argument,
  unsupported_family,
  non_maximal_order,
  precision_overflow,
  no_common_overfield,
  unsupported_prime,
  duplicate_place,
  search_exhausted,
  split_place_not_found,
  not_galois,
  no_splitting_step,
  zero_value_in_range,
  not_fundamental,
  not_negative,
  parse_error,
  factorization_incomplete,
  bad_embedding,
  bad_argument,
};

// Library-wide exception; `code` distinguishes domain failures from parse
// failures for CLI exit-code mapping.
class error : public std::runtime_error {
public:
  error(errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

inline bool is_parse_error(const error& e) { return e.code() == errc::parse_error; }

} // namespace conmap

#endif
