#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "parallel.hpp"
#include "partition.hpp"
#include "qseries.hpp"
#include "quadrature.hpp"
#include "symfunc.hpp"

namespace jordanlab {

/// Trapezoidal rule on circles |z_i| = radius, node count doubling from
/// `nodes` until two successive results differ by at most tol.
struct TorusQuad {
    double radius = 1.5;
    int nodes = 64;
    int max_nodes = 8192;
    double tol = 1e-12;
    unsigned threads = 1;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int nodes = 0;
};

namespace detail {

// Sum over the tensor grid nodes[0] x ... x nodes[k-1] of f(z) * prod weights.
template <class R, class F>
std::complex<R> tensor_sum(const std::vector<std::vector<PathNode<R>>>& nodes, unsigned threads, F&& f) {
    using C = std::complex<R>;
    const std::size_t k = nodes.size();
    std::vector<C> rows(nodes[0].size());
    parallel_for(nodes[0].size(), threads, [&](std::size_t a) {
        std::vector<C> z(k);
        std::vector<std::size_t> idx(k, 0);
        std::vector<C> acc;
        z[0] = nodes[0][a].w;
        const C w0 = nodes[0][a].weight;
        if (k == 1) {
            rows[a] = f(z) * w0;
            return;
        }
        while (true) {
            C w = w0;
            for (std::size_t d = 1; d < k; ++d) {
                z[d] = nodes[d][idx[d]].w;
                w *= nodes[d][idx[d]].weight;
            }
            acc.push_back(f(z) * w);
            std::size_t d = k - 1;
            while (d >= 1 && ++idx[d] == nodes[d].size()) idx[d--] = 0;
            if (d == 0) break;
        }
        rows[a] = pairwise_sum(acc);
    });
    return pairwise_sum(rows);
}

template <class R>
std::complex<R> poch(const std::complex<R>& z, R t) {
    return q_pochhammer_inf(z, t, 1e-21).value;
}

}  // namespace detail

/// The z-dependent part g of the finite-n and Poissonized column formulas,
/// normalized so that
///   Pr = (2 pi i)^{-k} \oint amplitude(z_1 + .. + z_k) g(z) dz_1 .. dz_k
/// over circles of radius > 1, with amplitude (1+s)^n or e^{tau s/(1-t)}.
///
/// k = 1 uses the summed-out form t^{binom(eta,2)} / prod_{j=0}^{eta} (z + t^j);
/// k >= 2 keeps the cross factors, the j-sum of q-Whittaker polynomials
/// P_{eta + j e_k}(1/z), and 1/prod (-1/z_i;t)_inf z_i.
template <class R = long double>
class ColumnIntegrand {
public:
    using C = std::complex<R>;

    ColumnIntegrand(const Signature& eta, double t) : eta_(eta), t_(static_cast<R>(t)) {
        const int k = eta.k();
        if (k < 1) throw std::invalid_argument("column integrand: k must be >= 1");
        if (eta.back() < 0) throw std::invalid_argument("column integrand: eta must be a partition");
        if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("column integrand: t must lie in (0,1)");
        R tpow = 0;
        for (int i = 1; i <= k; ++i) tpow += static_cast<R>(binom2(eta[i]));
        prefactor_ = std::pow(t_, tpow);
        if (k == 1) return;
        prefactor_ *= std::pow(t_pochhammer_inf(t_), static_cast<R>(k - 1));
        for (int i = 2; i <= k; ++i) prefactor_ /= i;
        for (int i = 1; i < k; ++i) prefactor_ /= q_pochhammer(t_, t_, eta[i] - eta[i + 1]);
        const int top = eta[k - 1] - eta[k];
        std::map<std::vector<int>, R> acc;
        for (int j = 0; j <= top; ++j) {
            std::vector<int> e = eta.entries();
            e.back() += j;
            const R c = std::pow(t_, static_cast<R>(j * (eta[k] + 1) + binom2(j))) * q_binomial(top, j, t_);
            const QWhittakerPoly poly(Signature(e), static_cast<double>(t_));
            for (const auto& term : poly.terms()) acc[term.exponents] += c * static_cast<R>(term.coefficient);
        }
        for (auto& [e, c] : acc) {
            exps_.push_back(e);
            coeffs_.push_back(c);
            for (int x : e) max_exp_ = std::max(max_exp_, x);
        }
    }

    int k() const { return eta_.k(); }
    const Signature& eta() const { return eta_; }

    /// Per-variable data: 1/((-1/z;t)_inf z) and powers of 1/z.
    struct Node {
        C z;
        C single;
        std::vector<C> inv_powers;
    };

    Node node(const C& z) const {
        Node nd{z, C(1) / (detail::poch(C(-C(1) / z), t_) * z), {}};
        nd.inv_powers.resize(static_cast<std::size_t>(max_exp_ + 1));
        nd.inv_powers[0] = C(1);
        for (int e = 1; e <= max_exp_; ++e) nd.inv_powers[static_cast<std::size_t>(e)] = nd.inv_powers[static_cast<std::size_t>(e - 1)] / z;
        return nd;
    }

    /// g at the point whose coordinates are the given nodes (k >= 2).
    C combine(const Node* const* nd) const {
        const int k = eta_.k();
        C val(prefactor_);
        for (int i = 0; i < k; ++i) {
            val *= nd[i]->single;
            for (int j = i + 1; j < k; ++j) val *= detail::cross_factor(C(nd[i]->z / nd[j]->z), t_);
        }
        C poly(0);
        for (std::size_t m = 0; m < exps_.size(); ++m) {
            C mono(coeffs_[m]);
            for (int i = 0; i < k; ++i) mono *= nd[i]->inv_powers[static_cast<std::size_t>(exps_[m][static_cast<std::size_t>(i)])];
            poly += mono;
        }
        return val * poly;
    }

    C operator()(const std::vector<C>& z) const {
        const int k = eta_.k();
        if (k == 1) {
            C den(1);
            R tj = 1;
            for (int j = 0; j <= eta_[1]; ++j, tj *= t_) den *= z[0] + tj;
            return C(prefactor_) / den;
        }
        std::vector<Node> nodes;
        std::vector<const Node*> ptr;
        for (const auto& zi : z) nodes.push_back(node(zi));
        for (const auto& nd : nodes) ptr.push_back(&nd);
        return combine(ptr.data());
    }

private:
    Signature eta_;
    R t_;
    R prefactor_ = 1;
    std::vector<std::vector<int>> exps_;
    std::vector<R> coeffs_;
    int max_exp_ = 0;
};

namespace detail {

template <class R, class Amp>
QuadResult torus_integrate(const ColumnIntegrand<R>& g, const TorusQuad& quad, Amp&& log_amplitude) {
    using C = std::complex<R>;
    const int k = g.k();
    if (k > 2) throw std::invalid_argument("torus quadrature: k <= 2 only");
    if (!(quad.radius > 1.0)) throw std::invalid_argument("torus quadrature: radius must exceed 1");
    auto pass = [&](int m) {
        const auto circle = circle_nodes<R>(m, static_cast<R>(quad.radius));
        if (k == 2) {
            std::vector<typename ColumnIntegrand<R>::Node> cache;
            for (const auto& pn : circle) cache.push_back(g.node(pn.w));
            std::vector<C> rows(circle.size());
            parallel_for(circle.size(), quad.threads, [&](std::size_t a) {
                std::vector<C> acc(circle.size());
                for (std::size_t b = 0; b < circle.size(); ++b) {
                    const typename ColumnIntegrand<R>::Node* pair[2] = {&cache[a], &cache[b]};
                    acc[b] = std::exp(log_amplitude(C(circle[a].w + circle[b].w))) * g.combine(pair) * circle[a].weight * circle[b].weight;
                }
                rows[a] = pairwise_sum(acc);
            });
            return pairwise_sum(rows);
        }
        std::vector<std::vector<PathNode<R>>> nodes(static_cast<std::size_t>(k), circle);
        return tensor_sum<R>(nodes, quad.threads, [&](const std::vector<C>& z) {
            C s(0);
            for (const auto& zi : z) s += zi;
            return std::exp(log_amplitude(s)) * g(z);
        });
    };
    int m = quad.nodes;
    C prev = pass(m);
    QuadResult out;
    while (2 * m <= quad.max_nodes) {
        const C cur = pass(2 * m);
        out.value = static_cast<double>(cur.real());
        out.error_estimate = static_cast<double>(std::abs(cur - prev));
        out.nodes = 2 * m;
        if (out.error_estimate <= quad.tol) return out;
        prev = cur;
        m *= 2;
    }
    throw ConvergenceError("torus quadrature did not reach tolerance", out.error_estimate);
}

inline void check_eta(const Signature& eta, int k) {
    if (eta.k() != k) throw std::invalid_argument("eta must have exactly k entries");
    if (k >= 1 && eta.back() < 0) throw std::invalid_argument("eta must be a partition");
}

}  // namespace detail

/// Pr((lambda'_1..lambda'_k)(sigma_n) = eta) by the finite-n contour formula.
template <class R = long double>
QuadResult prelimit_pmf_integral(int n, int k, double t, const Signature& eta, TorusQuad quad = {}) {
    if (n < 0) throw std::invalid_argument("prelimit_pmf_integral: n must be >= 0");
    detail::check_eta(eta, k);
    const ColumnIntegrand<R> g(eta, t);
    return detail::torus_integrate(g, quad, [n](const std::complex<R>& s) {
        return n == 0 ? std::complex<R>(0) : static_cast<R>(n) * std::log(std::complex<R>(1) + s);
    });
}

/// Same event for the continuous-time process at time tau.
template <class R = long double>
QuadResult poissonized_pmf_integral(double tau, int k, double t, const Signature& eta, TorusQuad quad = {}) {
    if (tau < 0) throw std::invalid_argument("poissonized_pmf_integral: tau must be >= 0");
    detail::check_eta(eta, k);
    const ColumnIntegrand<R> g(eta, t);
    const R rate = static_cast<R>(tau) / (1 - static_cast<R>(t));
    return detail::torus_integrate(g, quad, [rate](const std::complex<R>& s) { return rate * s; });
}

// ---------------------------------------------------------------------------
// Residues at z_k = -t^v.

/// k = 1 residue of (1+z)^n t^{binom(eta,2)} / prod_{j<=eta} (z + t^j) at z = -t^v:
/// (1-t^v)^n (-1)^{eta+v} t^{binom(v+1,2) + binom(eta,2) - v eta} [eta, v]_t / (t;t)_eta.
/// Exact when T is ExactScalar.
template <class T>
T residue_E_k1(int n, int eta, int v, const T& t) {
    if (n < 0 || eta < 0 || v < 0) throw std::invalid_argument("residue_E: n, eta, v must be >= 0");
    if (v > eta) return T(0);
    const long e = binom2(v + 1) + binom2(eta) - static_cast<long>(v) * eta;
    T val = T(ipow(T(T(1) - ipow(t, v)), n) * ipow(t, e) * q_binomial(eta, v, t) / q_pochhammer(t, t, eta));
    return (eta + v) % 2 ? T(-val) : val;
}

/// Residue of the finite-n integral at z_k = -t^v, as a number.
///
/// k = 1 is the closed form. For k >= 2 the remaining variables are
/// integrated over the unit torus:
///   (-1)^v (t;t)_inf^{k-2} t^{binom(v+1,2)} t^{sum binom(eta_i,2)} / (k! (t;t)_v prod (t;t)_{eta_i-eta_{i+1}})
///   sum_{mu < eta} (-t^{-v})^{|eta|-|mu|} prod [eta_i - eta_{i+1}, eta_i - mu_i]_t (t^{eta_k-v+1};t)_{mu_{k-1}-eta_k}
///   (2 pi i)^{1-k} \oint (1 - t^v + sum z)^n P_mu(1/z) prod_{i != j} (z_i/z_j;t)_inf
///   prod (z_i + t^v) z_i^{v-1} t^{-binom(v+1,2)} (-t z_i;t)_inf dz_i.
template <class R = long double>
QuadResult residue_E(int n, const Signature& eta, int v, int k, double t, TorusQuad quad = {}) {
    using C = std::complex<R>;
    detail::check_eta(eta, k);
    if (n < 0 || v < 0) throw std::invalid_argument("residue_E: n and v must be >= 0");
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("residue_E: t must lie in (0,1)");
    if (k == 1) return QuadResult{static_cast<double>(residue_E_k1(n, eta[1], v, static_cast<R>(t))), 0.0, 0};
    if (k > 3) throw std::invalid_argument("residue_E: k <= 3 only");
    const R tt = static_cast<R>(t);
    const R tv = std::pow(tt, static_cast<R>(v));
    R pre = (v % 2 ? -1 : 1) * std::pow(t_pochhammer_inf(tt), static_cast<R>(k - 2)) * std::pow(tt, static_cast<R>(binom2(v + 1)));
    for (int i = 1; i <= k; ++i) pre *= std::pow(tt, static_cast<R>(binom2(eta[i])));
    for (int i = 2; i <= k; ++i) pre /= i;
    pre /= q_pochhammer(tt, tt, v);
    for (int i = 1; i < k; ++i) pre /= q_pochhammer(tt, tt, eta[i] - eta[i + 1]);

    // sum_mu B_mu P_mu(x) collected into one polynomial
    std::map<std::vector<int>, R> acc;
    for_each_interlacing(eta, [&](const Signature& mu) {
        R b = std::pow(-1 / tv, static_cast<R>(eta.sum() - mu.sum()));
        for (int i = 1; i < k; ++i) b *= q_binomial(eta[i] - eta[i + 1], eta[i] - mu[i], tt);
        b *= q_pochhammer(std::pow(tt, static_cast<R>(eta[k] - v + 1)), tt, mu[k - 1] - eta[k]);
        if (b == 0) return;
        const QWhittakerPoly poly(mu, t);
        for (const auto& term : poly.terms()) acc[term.exponents] += b * static_cast<R>(term.coefficient);
    });
    std::vector<std::pair<std::vector<int>, R>> terms(acc.begin(), acc.end());
    const R scale = std::pow(tt, -static_cast<R>(binom2(v + 1)));
    auto integrand = [&](const std::vector<C>& z) {
        C s(1 - tv);
        for (const auto& zi : z) s += zi;
        C val = (n == 0 ? C(1) : std::exp(static_cast<R>(n) * std::log(s)));
        for (std::size_t i = 0; i < z.size(); ++i) {
            for (std::size_t j = i + 1; j < z.size(); ++j) val *= detail::cross_factor(C(z[i] / z[j]), tt);
            val *= (z[i] + tv) * std::pow(z[i], v - 1) * scale * detail::poch(C(-tt * z[i]), tt);
        }
        C poly(0);
        for (const auto& [e, c] : terms) {
            C mono(c);
            for (std::size_t i = 0; i < z.size(); ++i) mono *= std::pow(z[i], -e[i]);
            poly += mono;
        }
        return val * poly;
    };
    auto pass = [&](int m) {
        const auto circle = circle_nodes<R>(m, R(1));
        std::vector<std::vector<PathNode<R>>> nodes(static_cast<std::size_t>(k - 1), circle);
        return detail::tensor_sum<R>(nodes, quad.threads, integrand) * pre;
    };
    int m = quad.nodes;
    C prev = pass(m);
    QuadResult out;
    while (2 * m <= quad.max_nodes) {
        const C cur = pass(2 * m);
        out.value = static_cast<double>(cur.real());
        out.error_estimate = static_cast<double>(std::abs(cur - prev));
        out.nodes = 2 * m;
        if (out.error_estimate <= quad.tol) return out;
        prev = cur;
        m *= 2;
    }
    throw ConvergenceError("residue quadrature did not reach tolerance", out.error_estimate);
}

}  // namespace jordanlab
