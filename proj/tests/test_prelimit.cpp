#include <gtest/gtest.h>

#include <jordanlab/growth_chain.hpp>
#include <jordanlab/prelimit.hpp>

using namespace jordanlab;

namespace {
const ExactScalar half = exact_fraction(1, 2);
}

TEST(Prelimit, SmallExamples) {
    EXPECT_NEAR(prelimit_pmf_integral(3, 1, 0.5, Signature{2}).value, 0.625, 1e-8);
    EXPECT_NEAR(prelimit_pmf_integral(0, 1, 0.5, Signature{0}).value, 1.0, 1e-10);
    EXPECT_NEAR(prelimit_pmf_integral(0, 2, 0.5, Signature{0, 0}).value, 1.0, 1e-10);
}

TEST(Prelimit, MatchesColumnLawOfChain) {
    for (int n : {3, 6, 10})
        for (int k : {1, 2}) {
            const auto exact = column_projection(exact_distribution(n, half), k);
            // every key in the support, plus a few impossible ones
            std::vector<Signature> keys;
            for (const auto& [key, p] : exact.entries) keys.push_back(key);
            keys.push_back(k == 1 ? Signature{n + 1} : Signature{n, n});
            for (const auto& key : keys) {
                TorusQuad quad;
                quad.tol = 1e-11;
                const double got = prelimit_pmf_integral(n, k, 0.5, key, quad).value;
                EXPECT_NEAR(got, to_double(exact.at(key)), 1e-8) << "n=" << n << " eta=" << key;
            }
        }
}

TEST(Prelimit, RadiusIndependence) {
    for (const auto& [n, eta] : {std::pair{10, Signature{3}}, {10, Signature{3, 2}}, {6, Signature{2, 1}}}) {
        std::vector<double> values;
        for (double c : {1.1, 1.5, 2.0}) {
            TorusQuad quad;
            quad.radius = c;
            quad.tol = 1e-12;
            values.push_back(prelimit_pmf_integral(n, eta.k(), 0.5, eta, quad).value);
        }
        EXPECT_NEAR(values[0], values[1], 1e-9) << eta;
        EXPECT_NEAR(values[1], values[2], 1e-9) << eta;
    }
}

TEST(Prelimit, NodeDoublingStable) {
    TorusQuad quad;
    quad.tol = 1e-13;
    const auto r = prelimit_pmf_integral(10, 2, 0.5, Signature{3, 2}, quad);
    EXPECT_LT(r.error_estimate, 1e-10);
}

TEST(Prelimit, RejectsBadInput) {
    EXPECT_THROW(prelimit_pmf_integral(3, 3, 0.5, Signature{1, 1, 1}), std::invalid_argument);
    EXPECT_THROW(prelimit_pmf_integral(3, 2, 0.5, Signature{1}), std::invalid_argument);
    EXPECT_THROW(prelimit_pmf_integral(3, 1, 0.5, Signature{-1}), std::invalid_argument);
}

TEST(Poissonized, TimeZeroIsEmpty) {
    EXPECT_NEAR(poissonized_pmf_integral(0.0, 1, 0.5, Signature{0}).value, 1.0, 1e-12);
    EXPECT_NEAR(poissonized_pmf_integral(0.0, 2, 0.5, Signature{0, 0}).value, 1.0, 1e-12);
    EXPECT_NEAR(poissonized_pmf_integral(0.0, 1, 0.5, Signature{1}).value, 0.0, 1e-12);
}

TEST(Poissonized, MixtureOfChainLaws) {
    const double tau = 3.0, t = 0.5, rate = tau / (1 - t);
    std::vector<Pmf<Signature, ExactScalar>> laws;
    for (int n = 0; n <= 60; ++n) laws.push_back(exact_column_distribution(n, half, 1));
    double window = 0;
    for (int eta = 0; eta <= 14; ++eta) {
        double mix = 0, weight = std::exp(-rate);
        for (int n = 0; n <= 60; ++n) {
            mix += weight * to_double(laws[static_cast<std::size_t>(n)].at(Signature{eta}));
            weight *= rate / (n + 1);
        }
        const double got = poissonized_pmf_integral(tau, 1, t, Signature{eta}).value;
        EXPECT_NEAR(got, mix, 1e-8) << eta;
        window += got;
    }
    EXPECT_NEAR(window, 1.0, 1e-6);
}

TEST(Poissonized, K2MatchesMixture) {
    const double tau = 1.5, rate = tau / 0.5;
    for (const Signature& eta : {Signature{2, 1}, Signature{3, 0}, Signature{1, 1}}) {
        double mix = 0, weight = std::exp(-rate);
        for (int n = 0; n <= 40; ++n) {
            mix += weight * to_double(exact_column_distribution(n, half, 2).at(eta));
            weight *= rate / (n + 1);
        }
        EXPECT_NEAR(poissonized_pmf_integral(tau, 2, 0.5, eta).value, mix, 1e-8) << eta;
    }
}

TEST(Residue, ClosedFormVanishing) {
    for (int n = 1; n <= 6; ++n)
        for (int eta = 0; eta <= 4; ++eta) {
            EXPECT_EQ(residue_E_k1(n, eta, 0, half), ExactScalar(0));
            EXPECT_EQ(residue_E_k1(n, eta, eta + 1, half), ExactScalar(0));
        }
}

// For k = 1 the integrand is rational with all poles at -t^v, v <= eta, so
// the residues add up to the probability itself.
TEST(Residue, K1ResiduesSumToProbability) {
    for (const auto& t : {half, exact_fraction(1, 3)})
        for (int n = 1; n <= 9; ++n) {
            const auto law = exact_column_distribution(n, t, 1);
            for (int eta = 0; eta <= n + 1; ++eta) {
                ExactScalar total(0);
                for (int v = 0; v <= eta; ++v) total += residue_E_k1(n, eta, v, t);
                EXPECT_EQ(total, law.at(Signature{eta})) << "n=" << n << " eta=" << eta;
            }
        }
    EXPECT_EQ(residue_E_k1(2, 1, 1, half), exact_fraction(1, 2));
    EXPECT_EQ(residue_E_k1(3, 2, 1, half), exact_fraction(-1, 2));
    EXPECT_EQ(residue_E_k1(3, 2, 2, half), exact_fraction(9, 8));
}

// Independent check of the k >= 2 residue: integrate the full k = 2
// integrand with z_1 on a circle of radius 1.5 and z_2 on a small circle
// around -t^v.
TEST(Residue, K2MatchesDirectContourResidue) {
    using R = long double;
    using C = std::complex<R>;
    const double t = 0.5;
    for (const auto& [n, eta, v] : {std::tuple{4, Signature{2, 1}, 1}, {5, Signature{3, 1}, 2}, {6, Signature{2, 2}, 1},
                                    {3, Signature{1, 0}, 0}, {7, Signature{4, 2}, 3}}) {
        const ColumnIntegrand<R> g(eta, t);
        const R tv = std::pow(R(t), v);
        const R r = tv * (1 - R(t)) * R(0.4);
        std::vector<std::vector<PathNode<R>>> nodes{circle_nodes<R>(512, R(1.5)), circle_nodes<R>(256, r, C(-tv, 0))};
        const C direct = detail::tensor_sum<R>(nodes, 1, [&](const std::vector<C>& z) {
            return std::pow(C(1) + z[0] + z[1], n) * g(z);
        });
        TorusQuad quad;
        quad.tol = 1e-13;
        const auto res = residue_E(n, eta, v, 2, t, quad);
        EXPECT_NEAR(res.value, static_cast<double>(direct.real()), 1e-9 * std::max(1.0, std::fabs(res.value)))
            << "n=" << n << " eta=" << eta << " v=" << v;
    }
}

TEST(Residue, DecaysAlongLogScale) {
    for (int v : {1, 2}) {
        double prev = 1e300;
        int decreasing_from = -1;
        for (int n = 2; n <= 50; ++n) {
            const int eta = static_cast<int>(std::lround(std::log2(static_cast<double>(n))));
            const double e = std::fabs(residue_E(n, Signature{eta}, v, 1, 0.5).value);
            if (e > prev) decreasing_from = -1;
            else if (decreasing_from < 0) decreasing_from = n;
            prev = e;
            if (n == 50) {
                EXPECT_LT(e, 1e-6);
            }
        }
        EXPECT_GT(decreasing_from, 0);
    }
}
