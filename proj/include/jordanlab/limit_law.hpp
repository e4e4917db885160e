#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "parallel.hpp"
#include "partition.hpp"
#include "pmf.hpp"
#include "qseries.hpp"
#include "quadrature.hpp"
#include "symfunc.hpp"

namespace jordanlab {

/// Parameters of one point probability of the limit law.
struct LimitQuery {
    int k = 1;
    double t = 0.5;
    double chi = 1.0;
    Signature L;
    double tol = 1e-13;

    void validate() const {
        if (k < 1) throw std::invalid_argument("limit law: k must be >= 1");
        if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("limit law: t must lie in (0,1)");
        if (!(chi > 0.0)) throw std::invalid_argument("limit law: chi must be positive");
        if (L.k() != k) throw std::invalid_argument("limit law: L must have exactly k entries");
        if (!(tol > 0.0)) throw std::invalid_argument("limit law: tol must be positive");
    }
};

/// Series evaluator; keeps the Plancherel chain weights across calls.
///
/// Pr(L) = 1/(t;t)_inf sum_{d <= L_k} e^{-chi t^d} t^{sum binom(L_i - d, 2)}
///         / ((t;t)_{L_k - d} prod (t;t)_{L_i - L_{i+1}})
///         * sum_{mu < L} (-1)^{|L|-|mu|-d} prod [L_i - L_{i+1}, L_i - mu_i]_t
///           Q_{(mu - d)'}(gamma((1-t) t^d chi), alpha(1)).
///
/// The d-sum is cut once chi t^d >= 1 (past the window where terms can grow)
/// and three consecutive terms are below tol/10; from there the terms decay
/// faster than geometrically, and twice the last term is recorded as the bound.
template <class R = double>
class LimitSeries {
public:
    LimitSeries(double t, double chi) : t_(static_cast<R>(t)), chi_(static_cast<R>(chi)), chains_(static_cast<R>(t)) {
        if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("limit law: t must lie in (0,1)");
        if (!(chi > 0.0)) throw std::invalid_argument("limit law: chi must be positive");
        tinf_ = t_pochhammer_inf(t_);
    }

    Truncated<R> operator()(const Signature& L, double tol, int max_terms = 4000) {
        const int k = L.k();
        if (k < 1) throw std::invalid_argument("limit law: L must be nonempty");
        R const_den(1);
        for (int i = 1; i < k; ++i) const_den *= q_pochhammer(t_, t_, L[i] - L[i + 1]);
        Truncated<R> out;
        R sum(0), bound(0);
        int small_run = 0;
        for (int j = 0; j < max_terms; ++j) {
            const int d = L.back() - j;
            const R term = term_at(L, d) / const_den;
            sum += term;
            const R td = std::pow(t_, static_cast<R>(d));
            if (std::fabs(static_cast<double>(term)) < tol / 10)
                ++small_run;
            else
                small_run = 0;
            if (chi_ * td >= 1 && small_run >= 3) {
                bound = 2 * std::fabs(term);
                out.value = sum / tinf_;
                out.error_bound = static_cast<double>(bound / tinf_);
                out.terms = j + 1;
                return out;
            }
        }
        throw ConvergenceError("limit series did not converge", static_cast<double>(std::fabs(sum)));
    }

    double t() const { return static_cast<double>(t_); }
    double chi() const { return static_cast<double>(chi_); }

private:
    R term_at(const Signature& L, int d) {
        const int k = L.k();
        const R td = std::pow(t_, static_cast<R>(d));
        R tpow_exp = 0;
        for (int i = 1; i <= k; ++i) tpow_exp += static_cast<R>(binom2(L[i] - d));
        const R pre = std::exp(-chi_ * td) * std::pow(t_, tpow_exp) / q_pochhammer(t_, t_, L.back() - d);
        if (pre == R(0)) return R(0);
        if (k == 1) return ((L.back() - d) % 2 ? -pre : pre);
        const R tau = (1 - t_) * td * chi_;
        R inner(0);
        for_each_interlacing(L, [&](const Signature& mu) {
            R w(1);
            for (int i = 1; i < k; ++i) w *= q_binomial(L[i] - L[i + 1], L[i] - mu[i], t_);
            const Partition lam = conjugate(Partition(mu.shifted(-d).entries()));
            const R q = chains_.q_gamma_alpha1(lam, tau);
            const long long parity = L.sum() - mu.sum() - d;
            inner += ((parity % 2 + 2) % 2 ? -w * q : w * q);
        });
        return pre * inner;
    }

    R t_, chi_, tinf_;
    HallLittlewoodChains<R> chains_;
};

/// One point probability by the series.
template <class R = double>
Truncated<R> limit_pmf_series(const LimitQuery& query) {
    query.validate();
    LimitSeries<R> series(query.t, query.chi);
    return series(query.L, query.tol);
}

/// Closed form for k = 1 written in q = 1/t:
/// 1/prod_i (1 - q^{-i}) sum_{m >= 0} e^{-chi q^{m-x}} (-1)^m q^{-binom(m,2)} / prod_{j<=m} (1 - q^{-j}).
template <class R = double>
Truncated<R> limit_pmf_k1(double t, double chi, int x, double tol) {
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("limit law: t must lie in (0,1)");
    if (!(chi > 0.0)) throw std::invalid_argument("limit law: chi must be positive");
    const R q = 1 / static_cast<R>(t);
    R prefactor(1);
    for (int i = 1; i < 400; ++i) {
        const R f = 1 - std::pow(q, static_cast<R>(-i));
        prefactor *= f;
        if (1 - f < R(1e-22)) break;
    }
    Truncated<R> out;
    R sum(0), den(1);
    int small_run = 0;
    for (int m = 0; m < 4000; ++m) {
        if (m > 0) den *= 1 - std::pow(q, static_cast<R>(-m));
        const R mag = std::exp(-static_cast<R>(chi) * std::pow(q, static_cast<R>(m - x)) - static_cast<R>(binom2(m)) * std::log(q)) / den;
        sum += (m % 2 ? -mag : mag);
        small_run = std::fabs(static_cast<double>(mag)) < tol / 10 ? small_run + 1 : 0;
        if (m >= x && small_run >= 3) {
            out.value = sum / prefactor;
            out.error_bound = static_cast<double>(2 * mag / prefactor);
            out.terms = m + 1;
            return out;
        }
    }
    throw ConvergenceError("k=1 closed form did not converge", static_cast<double>(sum));
}

// ---------------------------------------------------------------------------
// Contour quadrature.

struct ContourSpec {
    double ray_length = 0.0;  // 0 picks a length from the decay of the integrand
    int per_panel = 16;       // starting Gauss-Legendre order per panel
    int max_per_panel = 64;
    long max_evaluations = 40'000'000;  // budget on integrand evaluations per pass
    unsigned threads = 1;
};

struct ContourResult {
    double value = 0.0;
    double error_estimate = 0.0;
    double ray_length = 0.0;
    int per_panel = 0;
    long nodes = 0;
};

namespace detail {

template <class C, class R>
C poch_inf(const C& z, R t) {
    return q_pochhammer_inf(z, t, 1e-20).value;
}

}  // namespace detail

namespace detail {

// k = 1 on a sector keyhole. For c = chi t^L > 1 the arc is centred on the
// pole at -1 with radius 1/c, the saddle of e^{cw}/(1+w); otherwise on 0 with
// radius 1. Either way the integrand on the path stays within a modest factor
// of the answer, and the tilted rays let 1/(-w;t)_inf decay at its own slow rate.
template <class R>
ContourResult contour_k1(const LimitQuery& query, R c, const ContourSpec& spec) {
    using C = std::complex<R>;
    const R t = static_cast<R>(query.t);
    const R center = c > 1 ? R(-1) : R(0);
    const R radius = c > 1 ? 1 / c : R(1);
    const R theta = std::numbers::pi_v<R> / 4;
    const C up = std::polar(R(1), std::numbers::pi_v<R> - theta);
    auto integrand = [&](const C& w) { return std::exp(c * w) / poch_inf(C(-w), t); };
    R reach = spec.ray_length > 0 ? static_cast<R>(spec.ray_length) : 4 * radius;
    if (spec.ray_length <= 0) {
        const R floor_value = static_cast<R>(query.tol) * R(1e-4);
        int quiet = 0;
        while (quiet < 3) {
            if (reach > R(1e15)) throw ConvergenceError("limit_pmf_contour: integrand does not decay along the rays", 0.0);
            reach *= R(1.5);
            quiet = std::abs(integrand(C(center) + reach * up)) * reach < floor_value ? quiet + 1 : 0;
        }
    }
    auto evaluate = [&](int per_panel) {
        const auto nodes = sector_keyhole_nodes<R>(center, radius, theta, reach, per_panel);
        std::vector<C> terms(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) terms[i] = nodes[i].weight * integrand(nodes[i].w);
        return std::pair{pairwise_sum(terms) / C(0, 2 * std::numbers::pi_v<R>), static_cast<long>(nodes.size())};
    };
    ContourResult out;
    out.ray_length = static_cast<double>(reach);
    int p = spec.per_panel;
    C prev = evaluate(p).first;
    while (2 * p <= spec.max_per_panel) {
        const auto [cur, count] = evaluate(2 * p);
        p *= 2;
        out.error_estimate = static_cast<double>(std::abs(cur - prev));
        out.value = static_cast<double>(cur.real());
        out.per_panel = p;
        out.nodes = count;
        if (out.error_estimate <= query.tol) return out;
        prev = cur;
    }
    throw ConvergenceError("limit_pmf_contour: tolerance not reached at node budget", out.error_estimate);
}

}  // namespace detail

/// Contour form of the limit probabilities over the keyhole of quadrature.hpp.
///
/// k = 1 integrates e^{chi t^L w}/(-w;t)_inf around the poles w = -t^{-m};
/// their residues give back the series term by term.
/// k >= 2 integrates
///   (t;t)_inf^{k-1}/(k! (2 pi i)^k) prod_{i<k} t^{binom(L_i-L_k,2)}/(t;t)_{L_i-L_{i+1}}
///   e^{chi t^{L_k} sum w} prod_{i != j} (w_i/w_j;t)_inf / prod (-1/w_i;t)_inf (-t w_i;t)_inf
///   sum_j t^{binom(j+1,2)} [L_{k-1}-L_k, j]_t P_{(L_1-L_k, .., L_{k-1}-L_k, j)}(1/w) prod dw_i/w_i.
/// The integrand is symmetric, so only ordered tuples i_1 < .. < i_k are
/// visited (coinciding nodes vanish through (1;t)_inf = 0).
template <class R = double>
ContourResult limit_pmf_contour(const LimitQuery& query, ContourSpec spec = {}) {
    using C = std::complex<R>;
    query.validate();
    const int k = query.k;
    if (k > 3) throw std::invalid_argument("limit_pmf_contour: k <= 3 only");
    const R t = static_cast<R>(query.t);
    const R chi_eff = static_cast<R>(query.chi) * std::pow(t, static_cast<R>(query.L.back()));

    if (k == 1) return detail::contour_k1<R>(query, chi_eff, spec);

    // Ray length from the k = 1 style envelope |e^{chi' w} / (-w;t)_inf|.
    double ray = spec.ray_length;
    if (ray <= 0.0) {
        ray = 4.0;
        while (ray < 2000.0) {
            const C w(static_cast<R>(-ray), 1);
            const double env = static_cast<double>(std::abs(std::exp(chi_eff * w) / detail::poch_inf(C(-w), t)));
            if (env / static_cast<double>(chi_eff) < query.tol * 1e-3) break;
            ray += 2.0;
        }
    }

    // Prefactor and the polynomial in 1/w for k >= 2.
    const R tinf = t_pochhammer_inf(t);
    R prefactor = std::pow(tinf, static_cast<R>(k - 1));
    for (int i = 2; i <= k; ++i) prefactor /= i;
    std::vector<std::vector<int>> exps;
    std::vector<R> coeffs;
    int max_exp = 0;
    if (k >= 2) {
        const auto& L = query.L;
        for (int i = 1; i < k; ++i)
            prefactor *= std::pow(t, static_cast<R>(binom2(L[i] - L.back()))) / q_pochhammer(t, t, L[i] - L[i + 1]);
        std::map<std::vector<int>, R> acc;
        const int top = L[k - 1] - L.back();
        for (int j = 0; j <= top; ++j) {
            std::vector<int> e;
            for (int i = 1; i < k; ++i) e.push_back(L[i] - L.back());
            e.push_back(j);
            const R c = std::pow(t, static_cast<R>(binom2(j + 1))) * q_binomial(top, j, t);
            const QWhittakerPoly poly(Signature(e), static_cast<double>(t));
            for (const auto& term : poly.terms()) acc[term.exponents] += c * static_cast<R>(term.coefficient);
        }
        for (auto& [e, c] : acc) {
            exps.push_back(e);
            coeffs.push_back(c);
            for (int x : e) max_exp = std::max(max_exp, x);
        }
    }

    auto evaluate = [&](int per_panel) -> C {
        const auto nodes = keyhole_nodes<R>(ray, per_panel);
        const std::size_t N = nodes.size();
        // per-node factor g(w) = weight * e^{chi' w} / (w (-1/w;t)(-t w;t)); k = 1 uses its own form
        std::vector<C> g(N), inv(N);
        for (std::size_t i = 0; i < N; ++i) {
            const C w = nodes[i].w;
            if (k == 1) {
                g[i] = nodes[i].weight * std::exp(chi_eff * w) / detail::poch_inf(C(-w), t);
            } else {
                g[i] = nodes[i].weight * std::exp(chi_eff * w) /
                       (w * detail::poch_inf(C(-C(1) / w), t) * detail::poch_inf(C(-t * w), t));
            }
            inv[i] = C(1) / w;
        }
        if (k == 1) return pairwise_sum(g) / C(0, 2 * std::numbers::pi_v<R>);
        double evals = 1;
        for (int i = 0; i < k; ++i) evals *= static_cast<double>(N);
        if (evals / 2 > static_cast<double>(spec.max_evaluations))
            throw ConvergenceError("limit_pmf_contour: node budget exceeded", -1.0);
        // powers of 1/w for the polynomial
        std::vector<std::vector<C>> pw(N, std::vector<C>(static_cast<std::size_t>(max_exp + 1)));
        for (std::size_t i = 0; i < N; ++i) {
            pw[i][0] = C(1);
            for (int e = 1; e <= max_exp; ++e) pw[i][static_cast<std::size_t>(e)] = pw[i][static_cast<std::size_t>(e - 1)] * inv[i];
        }
        auto poly_at = [&](const std::size_t* idx) {
            C s(0);
            for (std::size_t m = 0; m < exps.size(); ++m) {
                C mono(coeffs[m]);
                for (int v = 0; v < k; ++v) mono *= pw[idx[v]][static_cast<std::size_t>(exps[m][static_cast<std::size_t>(v)])];
                s += mono;
            }
            return s;
        };
        // Symmetric integrand: sum over i_1 < ... < i_k, times k!.
        std::vector<C> rows(N);
        parallel_for(N, spec.threads, [&](std::size_t a) {
            std::vector<C> acc;
            std::size_t idx[3];
            idx[0] = a;
            for (std::size_t b = a + 1; b < N; ++b) {
                idx[1] = b;
                const C ab = detail::cross_factor(C(nodes[a].w / nodes[b].w), t) * g[a] * g[b];
                if (k == 2) {
                    acc.push_back(ab * poly_at(idx));
                    continue;
                }
                for (std::size_t c = b + 1; c < N; ++c) {
                    idx[2] = c;
                    acc.push_back(ab * g[c] * detail::cross_factor(C(nodes[a].w / nodes[c].w), t) *
                                  detail::cross_factor(C(nodes[b].w / nodes[c].w), t) * poly_at(idx));
                }
            }
            rows[a] = pairwise_sum(acc);
        });
        R kfact = 1;
        for (int i = 2; i <= k; ++i) kfact *= i;
        const C two_pi_i(0, 2 * std::numbers::pi_v<R>);
        C denom(1);
        for (int i = 0; i < k; ++i) denom *= two_pi_i;
        return pairwise_sum(rows) * kfact * prefactor / denom;
    };

    ContourResult out;
    out.ray_length = ray;
    int p = spec.per_panel;
    C prev = evaluate(p);
    while (true) {
        const int next = 2 * p;
        if (next > spec.max_per_panel) {
            out.value = static_cast<double>(prev.real());
            out.per_panel = p;
            throw ConvergenceError("limit_pmf_contour: tolerance not reached at node budget", out.error_estimate);
        }
        const C cur = evaluate(next);
        out.error_estimate = static_cast<double>(std::abs(cur - prev));
        out.value = static_cast<double>(cur.real());
        out.per_panel = next;
        out.nodes = static_cast<long>(keyhole_nodes<R>(ray, next).size());
        if (out.error_estimate <= query.tol) return out;
        prev = cur;
        p = next;
    }
}

}  // namespace jordanlab
