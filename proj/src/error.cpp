#include "rayfield/error.hpp"

namespace rayfield {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::non_prime: return "NonPrime";
        case Errc::reducible: return "Reducible";
        case Errc::zero_element: return "ZeroElement";
        case Errc::domain_error: return "DomainError";
        case Errc::branch_mismatch: return "BranchMismatch";
        case Errc::cap_exceeded: return "CapExceeded";
        case Errc::inconsistent_counts: return "InconsistentCounts";
        case Errc::singular_point: return "SingularPoint";
        case Errc::zero_denominator: return "ZeroDenominator";
        case Errc::valuation_cap_exceeded: return "ValuationCapExceeded";
        case Errc::rank_deficient: return "RankDeficient";
        case Errc::non_divisible: return "NonDivisible";
        case Errc::unsupported_ordering: return "UnsupportedOrdering";
        case Errc::not_a_one_unit: return "NotAOneUnit";
        case Errc::precision_exceeded: return "PrecisionExceeded";
        case Errc::dependent_rows: return "DependentRows";
        case Errc::out_of_range: return "OutOfRange";
        case Errc::integrality_violation: return "IntegralityViolation";
        case Errc::degree_relation: return "DegreeRelation";
        case Errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace rayfield
