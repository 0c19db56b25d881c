#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rayfield {

enum class Errc {
    non_prime,
    reducible,
    zero_element,
    domain_error,
    branch_mismatch,
    cap_exceeded,
    inconsistent_counts,
    singular_point,
    zero_denominator,
    valuation_cap_exceeded,
    rank_deficient,
    non_divisible,
    unsupported_ordering,
    not_a_one_unit,
    precision_exceeded,
    dependent_rows,
    out_of_range,
    integrality_violation,
    degree_relation,
    parse_error,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
   public:
    Error(Errc code, const std::string& what);
    Errc code() const noexcept { return code_; }

   private:
    Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace rayfield
