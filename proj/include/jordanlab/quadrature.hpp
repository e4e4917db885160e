#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace jordanlab {

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved) : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// Pairwise (cascade) summation; the result depends only on the order of v.
template <class T>
T pairwise_sum(const T* v, std::size_t n) {
    if (n == 0) return T(0);
    if (n <= 8) {
        T s = v[0];
        for (std::size_t i = 1; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(v.data(), v.size());
}

/// Gauss-Legendre rule on [-1, 1], nodes by Newton iteration on P_n.
struct GaussLegendre {
    std::vector<long double> nodes, weights;
};

inline const GaussLegendre& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    static std::mutex mu;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    GaussLegendre rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const long double pi = std::numbers::pi_v<long double>;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        long double x = std::cos(pi * (i + 0.75L) / (n + 0.5L));
        long double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            long double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1;
            dp = n * (x * p1 - p0) / (x * x - 1);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-19L) break;
        }
        {
            long double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1;
            dp = n * (x * p1 - p0) / (x * x - 1);
        }
        const long double w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

/// A quadrature node on a path in C: f(w) dw is approximated by sum f(node) * weight.
template <class R = double>
struct PathNode {
    std::complex<R> w;
    std::complex<R> weight;  // quadrature weight times dw/ds
};

/// Nodes for the contour made of the ray {x - i : -R <= x <= 0}, the right
/// unit half-circle from -i to i, and the ray {x + i} back out to -R.
///
/// Rays are split into panels of length about 1 and the arc into four, each
/// panel carrying `per_panel` Gauss-Legendre nodes; the orientation is
/// counterclockwise around the negative real axis.
template <class R = double>
std::vector<PathNode<R>> keyhole_nodes(double ray_length, int per_panel) {
    using C = std::complex<R>;
    const auto& gl = gauss_legendre(per_panel);
    std::vector<PathNode<R>> out;
    const int panels = std::max(1, static_cast<int>(std::ceil(ray_length)));
    const R h = static_cast<R>(ray_length) / panels;
    // bottom ray, left to right
    for (int p = 0; p < panels; ++p) {
        const R a = -static_cast<R>(ray_length) + p * h;
        for (int i = 0; i < per_panel; ++i) {
            const R x = a + h * (1 + static_cast<R>(gl.nodes[static_cast<std::size_t>(i)])) / 2;
            out.push_back({C(x, -1), C(h / 2 * static_cast<R>(gl.weights[static_cast<std::size_t>(i)]), 0)});
        }
    }
    // arc e^{i theta}, theta from -pi/2 to pi/2
    const R pi = std::numbers::pi_v<R>;
    const int arc_panels = 4;
    const R ha = pi / arc_panels;
    for (int p = 0; p < arc_panels; ++p) {
        const R a = -pi / 2 + p * ha;
        for (int i = 0; i < per_panel; ++i) {
            const R th = a + ha * (1 + static_cast<R>(gl.nodes[static_cast<std::size_t>(i)])) / 2;
            const C w = std::polar(R(1), th);
            out.push_back({w, C(0, 1) * w * (ha / 2 * static_cast<R>(gl.weights[static_cast<std::size_t>(i)]))});
        }
    }
    // top ray, right to left
    for (int p = 0; p < panels; ++p) {
        const R b = -p * h;
        for (int i = 0; i < per_panel; ++i) {
            const R x = b - h * (1 + static_cast<R>(gl.nodes[static_cast<std::size_t>(i)])) / 2;
            out.push_back({C(x, 1), C(-h / 2 * static_cast<R>(gl.weights[static_cast<std::size_t>(i)]), 0)});
        }
    }
    return out;
}

/// Keyhole around the negative real axis: rays at angles +-(pi - theta)
/// from `center`, joined by the arc of `radius` through center + radius.
/// Ray panels grow geometrically, so the node count is logarithmic in
/// `reach` and each panel stays short against its distance to the axis.
template <class R = double>
std::vector<PathNode<R>> sector_keyhole_nodes(R center, R radius, R theta, R reach, int per_panel, R growth = 1.5) {
    using C = std::complex<R>;
    const auto& gl = gauss_legendre(per_panel);
    const R pi = std::numbers::pi_v<R>;
    std::vector<R> cuts{radius};
    while (cuts.back() < reach) cuts.push_back(std::min(reach, cuts.back() * growth));
    const C down = std::polar(R(1), -(pi - theta)), up = std::polar(R(1), pi - theta);
    std::vector<PathNode<R>> out;
    auto gauss = [&](R a, R b, auto&& emit) {
        for (int i = 0; i < per_panel; ++i) {
            const R x = a + (b - a) * (1 + static_cast<R>(gl.nodes[static_cast<std::size_t>(i)])) / 2;
            emit(x, (b - a) / 2 * static_cast<R>(gl.weights[static_cast<std::size_t>(i)]));
        }
    };
    for (std::size_t p = cuts.size() - 1; p-- > 0;)  // inward along the lower ray
        gauss(cuts[p + 1], cuts[p], [&](R r, R h) { out.push_back({C(center) + r * down, h * down}); });
    const int arc_panels = 8;
    const R span = 2 * (pi - theta) / arc_panels;
    for (int p = 0; p < arc_panels; ++p)
        gauss(-(pi - theta) + p * span, -(pi - theta) + (p + 1) * span, [&](R phi, R h) {
            const C w = std::polar(radius, phi);
            out.push_back({C(center) + w, C(0, 1) * w * h});
        });
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p)  // outward along the upper ray
        gauss(cuts[p], cuts[p + 1], [&](R r, R h) { out.push_back({C(center) + r * up, h * up}); });
    return out;
}

/// M equally spaced points on the circle |z - center| = radius, with
/// weights such that sum f(z) weight approximates (1/(2 pi i)) \oint f dz.
template <class R = double>
std::vector<PathNode<R>> circle_nodes(int m, R radius, std::complex<R> center = {}) {
    using C = std::complex<R>;
    const R pi = std::numbers::pi_v<R>;
    std::vector<PathNode<R>> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        const C u = std::polar(R(1), 2 * pi * (j + R(0.5)) / m);
        out.push_back({center + radius * u, radius * u / R(m)});
    }
    return out;
}

}  // namespace jordanlab
