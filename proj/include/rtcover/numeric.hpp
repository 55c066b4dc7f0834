#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

namespace rtcover {

/// Exact arbitrary-precision integer. Space sizes q^{ms} and ball volumes
/// overflow 64 bits quickly, and bound tables must be exact, so every count
/// that can grow with the parameters uses this type.
using Integer = boost::multiprecision::cpp_int;

/// C(n, k) with the usual convention C(n, k) = 0 for k < 0 or k > n.
inline Integer binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Integer r = 1;
    for (long long i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

inline Integer int_pow(long long base, long long exp) {
    if (exp < 0) throw std::invalid_argument("int_pow: negative exponent");
    Integer b = base, r = 1;
    while (exp > 0) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
    return (a + b - 1) / b;
}

/// Number of compositions of `total` into exactly `parts` parts, each in
/// 1..cap, by inclusion-exclusion over the parts that exceed cap:
///   sum_k (-1)^k C(parts, k) C(total - k*cap - 1, parts - 1).
inline Integer bounded_compositions(long long total, long long parts, long long cap) {
    if (parts < 0 || cap < 1) return 0;
    if (parts == 0) return total == 0 ? 1 : 0;
    Integer sum = 0;
    for (long long k = 0; k <= parts; ++k) {
        Integer term = binomial(parts, k) * binomial(total - k * cap - 1, parts - 1);
        if (k % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    return sum;
}

} // namespace rtcover
