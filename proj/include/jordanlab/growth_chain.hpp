#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exact.hpp"
#include "partition.hpp"
#include "pmf.hpp"

namespace jordanlab {

/// One-step kernel from a partition: (target row, probability) pairs.
template <class T = ExactScalar>
struct TransitionLaw {
    std::vector<std::pair<int, T>> targets;

    T total() const {
        T s(0);
        for (const auto& [row, p] : targets) s = T(s + p);
        return s;
    }
};

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The box lands on the first row l of each block of equal parts with
/// probability t^{l-1}(1 - t^{m}), m the block size, or starts a new row with
/// probability t^{len}. Rows inside a block are unreachable.
template <class T>
TransitionLaw<T> transition_law(const Partition& mu, const T& t) {
    if (!(to_double(t) > 0.0 && to_double(t) < 1.0)) throw std::invalid_argument("transition_law: t must lie in (0,1)");
    TransitionLaw<T> law;
    int row = 1;
    T tpow(1);
    for (const auto& b : mu.blocks()) {
        law.targets.emplace_back(row, T(tpow * T(T(1) - ipow(t, b.count))));
        tpow = T(tpow * ipow(t, b.count));
        row += b.count;
    }
    law.targets.emplace_back(row, tpow);
    return law;
}

/// Adds a box at the end of row `row` (1-based); row may be length+1.
inline Partition add_box(const Partition& mu, int row) {
    std::vector<int> parts = mu.parts();
    if (row == mu.length() + 1) {
        parts.push_back(1);
    } else {
        if (row < 1 || row > mu.length() || (row > 1 && mu[row - 1] == mu[row]))
            throw std::invalid_argument("add_box: result is not a partition");
        ++parts[static_cast<std::size_t>(row - 1)];
    }
    return Partition(std::move(parts));
}

// ---------------------------------------------------------------------------
// Sampling.

/// Run-length chain state; blocks are kept in decreasing order of value.
class ChainState {
public:
    int size() const noexcept { return n_; }
    const std::vector<Block>& blocks() const noexcept { return blocks_; }
    int length() const noexcept {
        int len = 0;
        for (const auto& b : blocks_) len += b.count;
        return len;
    }

    /// Moves the box into the block containing row g (or appends a new row).
    void grow_at(long g) {
        ++n_;
        long seen = 0;
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            seen += blocks_[i].count;
            if (g > seen) continue;
            const int value = blocks_[i].value + 1;
            if (i > 0 && blocks_[i - 1].value == value) {
                ++blocks_[i - 1].count;
            } else {
                blocks_.insert(blocks_.begin() + static_cast<std::ptrdiff_t>(i), Block{value, 1});
                ++i;
            }
            if (--blocks_[i].count == 0) blocks_.erase(blocks_.begin() + static_cast<std::ptrdiff_t>(i));
            return;
        }
        if (!blocks_.empty() && blocks_.back().value == 1)
            ++blocks_.back().count;
        else
            blocks_.push_back(Block{1, 1});
    }

    Partition partition() const { return Partition::from_blocks(blocks_); }

    /// lambda'_1..lambda'_k straight from the blocks.
    std::vector<int> leading_columns(int k) const {
        std::vector<int> cols(static_cast<std::size_t>(k), 0);
        for (const auto& b : blocks_)
            for (int j = 1; j <= k && j <= b.value; ++j) cols[static_cast<std::size_t>(j - 1)] += b.count;
        return cols;
    }

private:
    int n_ = 0;
    std::vector<Block> blocks_;
};

/// Draws the row index G with P(G = r) = t^{r-1}(1-t), t = 1/q, exactly.
///
/// Each extra row needs one more uniform draw from F_q to be zero; for q = 2
/// the draws are bits of a machine word.
template <class Rng>
long geometric_row(int q, Rng& rng) {
    long g = 1;
    if (q == 2) {
        while (true) {
            const std::uint64_t word = rng();
            if (word) return g + std::countr_zero(word);
            g += 64;
        }
    }
    std::uniform_int_distribution<int> digit(0, q - 1);
    while (digit(rng) == 0) ++g;
    return g;
}

/// Same draw for real t in (0,1) by inversion.
template <class Rng>
long geometric_row(double t, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double x = 1.0 - u(rng);  // (0,1]
    return 1 + static_cast<long>(std::floor(std::log(x) / std::log(t)));
}

/// Runs the chain n steps from the empty partition with t = 1/q.
///
/// Sampling G with P(G=r) = t^{r-1}(1-t) and sending the box to the first row
/// of G's block has exactly the block probabilities of transition_law.
template <class Rng>
ChainState simulate_state(int n, int q, Rng& rng) {
    if (n < 0) throw std::invalid_argument("simulate: n must be >= 0");
    if (q < 2) throw std::invalid_argument("simulate: q must be >= 2");
    ChainState s;
    for (int i = 0; i < n; ++i) s.grow_at(geometric_row(q, rng));
    return s;
}

template <class Rng>
Partition simulate(int n, int q, Rng& rng) {
    return simulate_state(n, q, rng).partition();
}

template <class Rng>
Partition simulate(int n, double t, Rng& rng) {
    if (n < 0) throw std::invalid_argument("simulate: n must be >= 0");
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("simulate: t must lie in (0,1)");
    ChainState s;
    for (int i = 0; i < n; ++i) s.grow_at(geometric_row(t, rng));
    return s.partition();
}

/// Runs only the first k columns of the chain: the box lands in column j
/// when c_j < G <= c_{j-1} (c_0 = infinity), and beyond column k when G <= c_k.
/// Same G draws as simulate_state, so the law of the columns is identical.
template <class Rng>
std::vector<int> simulate_columns(int n, int q, int k, Rng& rng) {
    if (n < 0) throw std::invalid_argument("simulate: n must be >= 0");
    if (q < 2) throw std::invalid_argument("simulate: q must be >= 2");
    if (k < 1) throw std::invalid_argument("simulate: k must be >= 1");
    std::vector<int> c(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < n; ++i) {
        const long g = geometric_row(q, rng);
        for (std::size_t j = 0; j < c.size(); ++j)
            if (g > c[j]) {
                ++c[j];
                break;
            }
    }
    return c;
}

// ---------------------------------------------------------------------------
// Exact distributions.

inline constexpr int default_exact_cap = 40;

/// Law of the chain after n steps, by forward propagation level by level.
template <class T = ExactScalar>
Pmf<Partition, T> exact_distribution(int n, const T& t, int cap = default_exact_cap) {
    if (n < 0) throw std::invalid_argument("exact_distribution: n must be >= 0");
    if (n > cap) throw CapExceeded("exact_distribution: n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    std::map<Partition, T> level{{Partition{}, T(1)}};
    for (int step = 0; step < n; ++step) {
        std::map<Partition, T> next;
        for (const auto& [mu, p] : level)
            for (const auto& [row, w] : transition_law(mu, t).targets) {
                auto [it, inserted] = next.try_emplace(add_box(mu, row), T(p * w));
                if (!inserted) it->second = T(it->second + T(p * w));
            }
        level = std::move(next);
    }
    Pmf<Partition, T> out;
    out.entries = std::move(level);
    return out;
}

/// Pushforward to the first k columns (lambda'_1..lambda'_k).
template <class T>
Pmf<Signature, T> column_projection(const Pmf<Partition, T>& dist, int k) {
    if (k < 1) throw std::invalid_argument("column_projection: k must be >= 1");
    return pushforward<Signature>(dist, [k](const Partition& p) { return Signature(leading_columns(p, k)); });
}

/// Law of (lambda'_1..lambda'_k) after n steps, tracked on its own.
///
/// The leading columns form a Markov chain: column j gains the box with
/// probability t^{c_j}(1 - t^{c_{j-1} - c_j}) (c_0 = infinity, so the first
/// column gets t^{c_1}), and with probability 1 - t^{c_k} the box lands beyond
/// column k. The state space is polynomial in n, so n in the hundreds is cheap.
template <class T = ExactScalar>
Pmf<Signature, T> exact_column_distribution(int n, const T& t, int k) {
    if (n < 0) throw std::invalid_argument("exact_column_distribution: n must be >= 0");
    if (k < 1) throw std::invalid_argument("exact_column_distribution: k must be >= 1");
    std::map<std::vector<int>, T> level{{std::vector<int>(static_cast<std::size_t>(k), 0), T(1)}};
    auto push = [](std::map<std::vector<int>, T>& m, std::vector<int> key, const T& p) {
        auto [it, inserted] = m.try_emplace(std::move(key), p);
        if (!inserted) it->second = T(it->second + p);
    };
    for (int step = 0; step < n; ++step) {
        std::map<std::vector<int>, T> next;
        for (const auto& [c, p] : level) {
            T moved(0);
            for (int j = 0; j < k; ++j) {
                T w = ipow(t, c[static_cast<std::size_t>(j)]);
                if (j > 0) w = T(w * T(T(1) - ipow(t, c[static_cast<std::size_t>(j - 1)] - c[static_cast<std::size_t>(j)])));
                if (w == T(0)) continue;
                moved = T(moved + w);
                auto grown = c;
                ++grown[static_cast<std::size_t>(j)];
                push(next, std::move(grown), T(p * w));
            }
            const T stay = T(T(1) - moved);
            if (stay != T(0)) push(next, c, T(p * stay));
        }
        level = std::move(next);
    }
    Pmf<Signature, T> out;
    for (auto& [c, p] : level) out.entries.emplace(Signature(c), std::move(p));
    return out;
}

}  // namespace jordanlab
