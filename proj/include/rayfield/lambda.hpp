#pragma once

#include <string>
#include <vector>

namespace rayfield {

enum class LambdaSource { A, B, hayes };

std::string source_name(LambdaSource s);

/// lambda_S^(n) for n = 0 .. values.size()-1; values beyond valid_to are not
/// certified and are never stored.
struct LambdaSeq {
    std::vector<long> values;
    unsigned e = 1;
    long valid_to = 0;
    LambdaSource source = LambdaSource::A;

    long at(long n) const;
    long max_index() const noexcept { return static_cast<long>(values.size()) - 1; }
};

/// n* = n / p^v_p(n)
long strip_p(long n, long p);
long vp(long n, long p);

}  // namespace rayfield
