#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <gmpxx.h>

namespace jordanlab {

/// Arbitrary-precision rational; always kept in canonical (reduced) form.
using ExactScalar = mpq_class;

inline ExactScalar exact_fraction(long num, long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    ExactScalar r(num, den);
    r.canonicalize();
    return r;
}

/// t = 1/q as an exact rational.
inline ExactScalar exact_inverse(long q) { return exact_fraction(1, q); }

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<std::decay_t<T>, ExactScalar>;

inline double to_double(const ExactScalar& x) { return x.get_d(); }
inline double to_double(double x) { return x; }
inline double to_double(long double x) { return static_cast<double>(x); }

inline double magnitude(const ExactScalar& x) { return std::fabs(x.get_d()); }
template <class R>
inline double magnitude(const std::complex<R>& x) { return static_cast<double>(std::abs(x)); }
inline double magnitude(double x) { return std::fabs(x); }
inline double magnitude(long double x) { return static_cast<double>(std::fabs(x)); }

/// base^e for integer e (negative e inverts); exact for rationals.
template <class T>
T ipow(const T& base, long e) {
    T result(1);
    T b(base);
    bool invert = e < 0;
    unsigned long u = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    while (u) {
        if (u & 1UL) result = T(result * b);
        b = T(b * b);
        u >>= 1;
    }
    if (invert) return T(T(1) / result);
    return result;
}

inline std::string to_string(const ExactScalar& x) { return x.get_str(); }

}  // namespace jordanlab
