#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "exact.hpp"

namespace jordanlab {

/// A truncated infinite quantity together with the bound on what was dropped.
template <class T>
struct Truncated {
    T value{};
    double error_bound = 0.0;
    int terms = 0;
};

/// Finite q-Pochhammer symbol (z;t)_n = prod_{j<n} (1 - z t^j).
template <class T, class R>
T q_pochhammer(const T& z, const R& t, int n) {
    if (n < 0) throw std::invalid_argument("q_pochhammer: negative length");
    T result(1);
    T zt(z);
    for (int j = 0; j < n; ++j) {
        result = T(result * T(T(1) - zt));
        zt = T(zt * t);
    }
    return result;
}

/// (z;t)_infinity truncated once the tail factor is within tol of 1.
///
/// After N factors the remaining product differs from 1 by at most
/// exp(x) - 1 with x = |z| |t|^N / (1 - |t|); that times |partial| is the
/// recorded bound.
template <class T, class R>
Truncated<T> q_pochhammer_inf(const T& z, const R& t, double tol, int max_terms = 100000) {
    const double at = magnitude(t);
    if (!(at < 1.0)) throw std::invalid_argument("q_pochhammer_inf: requires |t| < 1");
    const double az = magnitude(z);
    Truncated<T> out;
    out.value = T(1);
    T zt(z);
    double tn = 1.0;
    for (int j = 0; j <= max_terms; ++j) {
        const double x = az * tn / (1.0 - at);
        const double bound = magnitude(out.value) * std::expm1(x);
        if (bound < tol || x == 0.0) {
            out.error_bound = bound;
            out.terms = j;
            return out;
        }
        out.value = T(out.value * T(T(1) - zt));
        zt = T(zt * t);
        tn *= at;
    }
    throw std::runtime_error("q_pochhammer_inf: did not reach tolerance");
}

/// Gaussian binomial [n choose k]_t; zero outside 0 <= k <= n.
template <class T>
T q_binomial(int n, int k, const T& t) {
    if (k < 0 || n < 0 || k > n) return T(0);
    // Product form with the smaller of k, n-k keeps exact numbers small.
    const int kk = std::min(k, n - k);
    T num(1), den(1);
    T tn = ipow(t, n - kk + 1);
    T tk(t);
    for (int i = 1; i <= kk; ++i) {
        num = T(num * T(T(1) - tn));
        den = T(den * T(T(1) - tk));
        tn = T(tn * t);
        tk = T(tk * t);
    }
    return T(num / den);
}

/// The infinite-row convention [infinity choose k]_t = 1/(t;t)_k.
template <class T>
T q_binomial_inf(int k, const T& t) {
    if (k < 0) return T(0);
    return T(T(1) / q_pochhammer(t, t, k));
}

/// (t;t)_infinity as a plain number, truncated well below double precision.
template <class R>
R t_pochhammer_inf(R t) {
    return q_pochhammer_inf(t, t, 1e-21).value;
}

inline long binom2(long m) { return m * (m - 1) / 2; }

namespace detail {

// (a;t)_inf (1/a;t)_inf, each factor list cut when |z t^j| drops below 1e-20.
template <class C, class R>
C cross_factor(const C& a, R t) {
    C prod(1);
    C z = a;
    while (std::abs(z) > R(1e-20)) {
        prod *= C(1) - z;
        z *= t;
    }
    z = C(1) / a;
    while (std::abs(z) > R(1e-20)) {
        prod *= C(1) - z;
        z *= t;
    }
    return prod;
}

}  // namespace detail

}  // namespace jordanlab
