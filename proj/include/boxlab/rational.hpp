#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace boxlab {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Error kinds map onto the CLI exit-code contract: usage/spec -> 2,
// resolution -> 3, capacity -> 4.
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : SpecError {
    using SpecError::SpecError;
};
struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline BigInt rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Rat make_rat(long long num, long long den) {
    if (den == 0) throw DomainError("zero denominator");
    return Rat(BigInt(num), BigInt(den));
}

inline Rat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("zero denominator");
    return Rat(num, den);
}

// floor(r), exact.
inline BigInt rat_floor(const Rat& r) {
    BigInt n = rat_num(r), d = rat_den(r);
    BigInt q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

// ceil(r), exact.
inline BigInt rat_ceil(const Rat& r) {
    BigInt n = rat_num(r), d = rat_den(r);
    BigInt q = n / d;
    if (n > 0 && q * d != n) ++q;
    return q;
}

// floor(r * m) without building an intermediate rational.
inline BigInt floor_mul(const Rat& r, const BigInt& m) {
    return rat_floor(Rat(rat_num(r) * m, rat_den(r)));
}

inline double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

// b^e for non-negative integer exponents.
inline BigInt ipow(BigInt b, unsigned e) {
    BigInt acc = 1;
    while (e) {
        if (e & 1u) acc *= b;
        b *= b;
        e >>= 1u;
    }
    return acc;
}

// Largest r with r^k <= n (n >= 0, k >= 1), bisected inside bit-length bounds.
inline BigInt iroot(const BigInt& n, unsigned k) {
    if (n < 0) throw DomainError("iroot of negative value");
    if (n == 0 || k == 1) return n;
    unsigned bits = boost::multiprecision::msb(n);  // floor(log2 n)
    BigInt lo = BigInt(1) << (bits / k);
    BigInt hi = BigInt(1) << (bits / k + 2);
    while (lo + 1 < hi) {
        BigInt mid = (lo + hi) >> 1;
        if (ipow(mid, k) <= n)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

// Parses "num/den", a decimal like "0.25", or an integer. Result must be finite.
Rat parse_rational(const std::string& text);

// "num/den" (or "num" when the denominator is 1).
std::string rat_to_string(const Rat& r);

}  // namespace boxlab
