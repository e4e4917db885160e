#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "exact.hpp"
#include "partition.hpp"
#include "qseries.hpp"

namespace jordanlab {

namespace detail {

inline std::map<int, int> multiplicities(const Partition& p) {
    std::map<int, int> m;
    for (int v : p.parts()) ++m[v];
    return m;
}

inline std::map<int, int> multiplicities(const Signature& s) {
    std::map<int, int> m;
    for (int v : s.entries()) ++m[v];
    return m;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Hall-Littlewood (q = 0) branching coefficients.

/// psi_{lambda/mu}(0,t) = prod over i with m_i(mu) = m_i(lambda)+1 of (1 - t^{m_i(mu)}).
template <class T>
T hl_psi(const Partition& lambda, const Partition& mu, const T& t) {
    if (!interlaces(mu, lambda)) return T(0);
    const auto ml = detail::multiplicities(lambda);
    const auto mm = detail::multiplicities(mu);
    T result(1);
    for (const auto& [i, m] : mm) {
        auto it = ml.find(i);
        const int mli = it == ml.end() ? 0 : it->second;
        if (m == mli + 1) result = T(result * T(T(1) - ipow(t, m)));
    }
    return result;
}

/// phi_{lambda/mu}(0,t) = prod over i with m_i(lambda) = m_i(mu)+1 of (1 - t^{m_i(lambda)}).
template <class T>
T hl_phi(const Partition& lambda, const Partition& mu, const T& t) {
    if (!interlaces(mu, lambda)) return T(0);
    const auto ml = detail::multiplicities(lambda);
    const auto mm = detail::multiplicities(mu);
    T result(1);
    for (const auto& [i, m] : ml) {
        auto it = mm.find(i);
        const int mmi = it == mm.end() ? 0 : it->second;
        if (m == mmi + 1) result = T(result * T(T(1) - ipow(t, m)));
    }
    return result;
}

// ---------------------------------------------------------------------------
// q-Whittaker (t = 0) polynomials; the deformation parameter is called t here
// because it is always the Hall-Littlewood t in the integrands.

/// psi_{lambda/mu}(t,0) for signatures of lengths k and k-1.
template <class T>
T qw_psi(const Signature& lambda, const Signature& mu, const T& t) {
    if (!interlaces(mu, lambda)) return T(0);
    T result(1);
    for (int i = 1; i <= mu.k(); ++i)
        result = T(result * q_binomial(lambda[i] - lambda[i + 1], lambda[i] - mu[i], t));
    return result;
}

namespace detail {

// Branching recursion P_lambda(x_1..x_k) = sum_{mu < lambda} psi x_k^{|lambda|-|mu|} P_mu(x_1..x_{k-1}).
template <class X, class T>
X qwhittaker_chains(const Signature& lambda, const std::vector<X>& x, const T& t) {
    const int k = lambda.k();
    if (k == 1) return ipow(x[0], lambda[1]);
    X total(0);
    for_each_interlacing(lambda, [&](const Signature& mu) {
        const X weight = X(qw_psi(lambda, mu, t));
        const X head = qwhittaker_chains(mu, std::vector<X>(x.begin(), x.begin() + (k - 1)), t);
        total += weight * ipow(x[static_cast<std::size_t>(k - 1)], static_cast<long>(lambda.sum() - mu.sum())) * head;
    });
    return total;
}

}  // namespace detail

/// P_lambda(x_1..x_k; t, 0) for a signature lambda of length k = x.size().
///
/// The index is first shifted by -lambda_k so the chain enumeration runs over
/// partitions, and the result is multiplied back by (x_1...x_k)^{lambda_k}.
template <class X, class T>
X qwhittaker_P(const Signature& lambda, const std::vector<X>& x, const T& t) {
    if (lambda.k() < 1) throw std::invalid_argument("qwhittaker_P: empty signature");
    if (static_cast<int>(x.size()) != lambda.k()) throw std::invalid_argument("qwhittaker_P: need one variable per entry");
    const int d = lambda.back();
    X prod(1);
    for (const auto& xi : x) prod *= xi;
    return detail::qwhittaker_chains(lambda.shifted(-d), x, t) * ipow(prod, d);
}

/// Monomial expansion of P_lambda(.; t, 0) with double coefficients.
///
/// Collected once from the chain enumeration so that evaluation at many
/// quadrature nodes costs one pass over the distinct monomials.
class QWhittakerPoly {
public:
    struct Term {
        std::vector<int> exponents;
        double coefficient;
    };

    QWhittakerPoly(const Signature& lambda, double t) : k_(lambda.k()) {
        std::map<std::vector<int>, double> acc;
        std::vector<int> exps(static_cast<std::size_t>(k_), 0);
        collect(lambda, t, 1.0, exps, acc);
        for (auto& [e, c] : acc)
            if (c != 0.0) terms_.push_back({e, c});
    }

    int k() const noexcept { return k_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }

    template <class X>
    X operator()(const std::vector<X>& x) const {
        X total(0);
        for (const auto& term : terms_) {
            X mono(term.coefficient);
            for (int i = 0; i < k_; ++i) mono *= ipow(x[static_cast<std::size_t>(i)], term.exponents[static_cast<std::size_t>(i)]);
            total += mono;
        }
        return total;
    }

private:
    void collect(const Signature& lambda, double t, double weight, std::vector<int>& exps, std::map<std::vector<int>, double>& acc) {
        const int k = lambda.k();
        if (k == 1) {
            exps[0] = lambda[1];
            acc[exps] += weight;
            return;
        }
        for_each_interlacing(lambda, [&](const Signature& mu) {
            const double w = qw_psi(lambda, mu, t);
            if (w == 0.0) return;
            exps[static_cast<std::size_t>(k - 1)] = static_cast<int>(lambda.sum() - mu.sum());
            collect(mu, t, weight * w, exps, acc);
        });
    }

    int k_;
    std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// Plancherel specialization gamma(tau) with q = 0.
//
// Q_lambda(gamma(tau); 0, t) = (tau/(1-t))^n / n! * sum over single-box chains
// from the empty partition to lambda of prod phi; this is the D -> infinity
// limit of the alpha specialization with D equal variables tau/((1-t) D).

/// Memoized single-box chain weights for a fixed t.
template <class T>
class HallLittlewoodChains {
public:
    explicit HallLittlewoodChains(T t) : t_(std::move(t)) { memo_.emplace(Partition{}, T(1)); }

    const T& t() const noexcept { return t_; }

    /// Sum over standard chains to lambda of prod phi_{lambda(i)/lambda(i-1)}.
    const T& weight(const Partition& lambda) {
        if (auto it = memo_.find(lambda); it != memo_.end()) return it->second;
        T total(0);
        const auto& parts = lambda.parts();
        for (int r = 1; r <= lambda.length(); ++r) {
            if (lambda[r] <= lambda[r + 1]) continue;  // not a removable corner
            std::vector<int> smaller(parts);
            --smaller[static_cast<std::size_t>(r - 1)];
            const int m = multiplicity(lambda, lambda[r]);
            const T phi = T(T(1) - ipow(t_, m));
            total = T(total + T(phi * weight(Partition(std::move(smaller)))));
        }
        return memo_.emplace(lambda, std::move(total)).first->second;
    }

    template <class S>
    S q_gamma(const Partition& lambda, const S& tau) {
        const int n = lambda.size();
        const S rate = S(tau / S(S(1) - S(t_)));
        S scale(1);
        for (int i = 1; i <= n; ++i) scale = S(scale * S(rate / S(i)));
        return S(scale * S(weight(lambda)));
    }

    template <class S>
    S q_gamma_alpha1(const Partition& lambda, const S& tau) {
        S total(0);
        for_each_interlacing(lambda, [&](const Partition& nu) {
            total = S(total + S(S(hl_phi(lambda, nu, t_)) * q_gamma(nu, tau)));
        });
        return total;
    }

private:
    T t_;
    std::map<Partition, T> memo_;
};

/// Q_lambda(gamma(tau); 0, t).
template <class T>
T hl_Q_gamma(const Partition& lambda, const T& tau, const T& t) {
    HallLittlewoodChains<T> chains(t);
    return chains.q_gamma(lambda, tau);
}

/// Q_lambda(gamma(tau), alpha(1); 0, t) = sum_{nu < lambda} phi_{lambda/nu} Q_nu(gamma(tau)).
template <class T>
T hl_Q_gamma_alpha1(const Partition& lambda, const T& tau, const T& t) {
    HallLittlewoodChains<T> chains(t);
    return chains.q_gamma_alpha1(lambda, tau);
}

}  // namespace jordanlab
