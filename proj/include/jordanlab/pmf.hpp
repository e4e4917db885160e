#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "exact.hpp"

namespace jordanlab {

/// Finite probability mass function with an explicit mass deficit.
///
/// `mass_deficit` accounts for truncated support or series tails; the
/// invariant is sum(entries) + mass_deficit == 1 up to the declared tolerance.
template <class Key, class Prob = double>
struct Pmf {
    std::map<Key, Prob> entries;
    double mass_deficit = 0.0;

    Prob at(const Key& key) const {
        auto it = entries.find(key);
        return it == entries.end() ? Prob(0) : it->second;
    }

    void add(const Key& key, const Prob& p) {
        auto [it, inserted] = entries.try_emplace(key, p);
        if (!inserted) it->second = Prob(it->second + p);
    }

    Prob total() const {
        Prob s(0);
        for (const auto& [k, p] : entries) s = Prob(s + p);
        return s;
    }

    /// Checks nonnegativity (>= -tol) and sum + deficit = 1 within tol.
    bool valid(double tol) const {
        for (const auto& [k, p] : entries)
            if (to_double(p) < -tol) return false;
        return std::fabs(to_double(total()) + mass_deficit - 1.0) <= tol;
    }
};

/// Exact pmf: total must be exactly one and all masses nonnegative.
template <class Key>
bool exactly_normalized(const Pmf<Key, ExactScalar>& pmf) {
    for (const auto& [k, p] : pmf.entries)
        if (sgn(p) < 0) return false;
    return pmf.total() == 1;
}

template <class Key, class P>
Pmf<Key, double> to_numeric(const Pmf<Key, P>& pmf) {
    Pmf<Key, double> out;
    out.mass_deficit = pmf.mass_deficit;
    for (const auto& [k, p] : pmf.entries) out.entries.emplace(k, to_double(p));
    return out;
}

/// sup_x |a(x) - b(x)|, missing keys counted as zero mass.
template <class Key, class PA, class PB>
double dinf(const Pmf<Key, PA>& a, const Pmf<Key, PB>& b) {
    double d = 0.0;
    for (const auto& [k, p] : a.entries) d = std::max(d, std::fabs(to_double(p) - to_double(b.at(k))));
    for (const auto& [k, p] : b.entries)
        if (!a.entries.count(k)) d = std::max(d, std::fabs(to_double(p)));
    return d;
}

/// Pushforward along f; masses on colliding keys add.
template <class KeyOut, class KeyIn, class P, class F>
Pmf<KeyOut, P> pushforward(const Pmf<KeyIn, P>& in, F&& f) {
    Pmf<KeyOut, P> out;
    out.mass_deficit = in.mass_deficit;
    for (const auto& [k, p] : in.entries) out.add(f(k), p);
    return out;
}

}  // namespace jordanlab
