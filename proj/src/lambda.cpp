#include "rayfield/lambda.hpp"

#include "rayfield/error.hpp"

namespace rayfield {

std::string source_name(LambdaSource s) {
    switch (s) {
        case LambdaSource::A: return "A";
        case LambdaSource::B: return "B";
        case LambdaSource::hayes: return "hayes";
    }
    return "?";
}

long LambdaSeq::at(long n) const {
    if (n < 0 || n > max_index() || n > valid_to)
        fail(Errc::out_of_range, "lambda^(" + std::to_string(n) + ") not available");
    return values[static_cast<std::size_t>(n)];
}

long vp(long n, long p) {
    if (n == 0) fail(Errc::domain_error, "v_p(0)");
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

long strip_p(long n, long p) {
    if (n <= 0) fail(Errc::domain_error, "n* needs n >= 1");
    while (n % p == 0) n /= p;
    return n;
}

}  // namespace rayfield
