#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace jordanlab {

/// Maximal run of equal parts: `count` rows of length `value`.
struct Block {
    int value = 0;
    int count = 0;
    friend bool operator==(const Block&, const Block&) = default;
};

/// Integer partition stored densely as weakly decreasing positive parts.
///
/// Trailing zeros are dropped on construction, so two partitions compare equal
/// iff their part lists do. Ordering is lexicographic on the part list, which
/// is all std::map needs.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 0)
                throw std::invalid_argument("partition parts must be nonnegative");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw std::invalid_argument("partition parts must be weakly decreasing");
        }
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    }

    /// Builds from the run-length view, blocks in decreasing value order.
    static Partition from_blocks(const std::vector<Block>& blocks) {
        std::vector<int> parts;
        for (const auto& b : blocks) parts.insert(parts.end(), static_cast<std::size_t>(b.count), b.value);
        return Partition(std::move(parts));
    }

    const std::vector<int>& parts() const noexcept { return parts_; }
    int length() const noexcept { return static_cast<int>(parts_.size()); }
    bool empty() const noexcept { return parts_.empty(); }
    int size() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }

    /// 1-based part access; zero beyond the length.
    int operator[](int i) const noexcept {
        return (i >= 1 && i <= length()) ? parts_[static_cast<std::size_t>(i - 1)] : 0;
    }

    std::vector<Block> blocks() const {
        std::vector<Block> out;
        for (int p : parts_) {
            if (!out.empty() && out.back().value == p)
                ++out.back().count;
            else
                out.push_back({p, 1});
        }
        return out;
    }

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

private:
    std::vector<int> parts_;
};

/// Weakly decreasing integer k-tuple; entries may be negative.
class Signature {
public:
    Signature() = default;
    Signature(std::initializer_list<int> entries) : Signature(std::vector<int>(entries)) {}
    explicit Signature(std::vector<int> entries) : entries_(std::move(entries)) {
        for (std::size_t i = 1; i < entries_.size(); ++i)
            if (entries_[i] > entries_[i - 1])
                throw std::invalid_argument("signature entries must be weakly decreasing");
    }

    const std::vector<int>& entries() const noexcept { return entries_; }
    int k() const noexcept { return static_cast<int>(entries_.size()); }
    int operator[](int i) const { return entries_.at(static_cast<std::size_t>(i - 1)); }
    int back() const { return entries_.back(); }
    long long sum() const { return std::accumulate(entries_.begin(), entries_.end(), 0LL); }

    Signature shifted(int d) const {
        auto e = entries_;
        for (auto& x : e) x += d;
        return Signature(std::move(e));
    }

    friend bool operator==(const Signature&, const Signature&) = default;
    friend auto operator<=>(const Signature& a, const Signature& b) { return a.entries_ <=> b.entries_; }

private:
    std::vector<int> entries_;
};

/// lambda'_i = #{j : lambda_j >= i}.
inline Partition conjugate(const Partition& lambda) {
    if (lambda.empty()) return {};
    std::vector<int> out(static_cast<std::size_t>(lambda[1]), 0);
    for (int p : lambda.parts())
        for (int i = 0; i < p; ++i) ++out[static_cast<std::size_t>(i)];
    return Partition(std::move(out));
}

/// The first k entries of the conjugate, zero padded.
inline std::vector<int> leading_columns(const Partition& lambda, int k) {
    std::vector<int> cols(static_cast<std::size_t>(k), 0);
    for (int p : lambda.parts())
        for (int i = 0; i < std::min(p, k); ++i) ++cols[static_cast<std::size_t>(i)];
    return cols;
}

/// m_i(lambda), the number of parts equal to i (i >= 1).
inline int multiplicity(const Partition& lambda, int i) {
    if (i < 1) throw std::invalid_argument("multiplicity index must be >= 1");
    return static_cast<int>(std::count(lambda.parts().begin(), lambda.parts().end(), i));
}

/// Signature multiplicity, counting every value (zero and negatives included).
inline int multiplicity(const Signature& s, int value) {
    return static_cast<int>(std::count(s.entries().begin(), s.entries().end(), value));
}

/// mu < lambda: lambda_1 >= mu_1 >= lambda_2 >= mu_2 >= ... (horizontal strip).
inline bool interlaces(const Partition& mu, const Partition& lambda) {
    const int len = std::max(mu.length(), lambda.length());
    for (int i = 1; i <= len; ++i) {
        if (mu[i] > lambda[i]) return false;
        if (mu[i] < lambda[i + 1]) return false;
    }
    return true;
}

/// Signature interlacing; requires k(mu) = k(lambda) - 1.
inline bool interlaces(const Signature& mu, const Signature& lambda) {
    if (mu.k() + 1 != lambda.k())
        throw std::invalid_argument("interlacing signatures need lengths k-1 and k");
    for (int i = 1; i <= mu.k(); ++i)
        if (!(lambda[i] >= mu[i] && mu[i] >= lambda[i + 1])) return false;
    return true;
}

/// Calls f(mu) for every mu in Sig_{k-1} with mu < lambda.
template <class F>
void for_each_interlacing(const Signature& lambda, F&& f) {
    const int k = lambda.k();
    if (k <= 1) {
        f(Signature{});
        return;
    }
    std::vector<int> mu(static_cast<std::size_t>(k - 1));
    std::function<void(int)> rec = [&](int i) {
        if (i == k - 1) {
            f(Signature(mu));
            return;
        }
        for (int v = lambda.entries()[static_cast<std::size_t>(i)]; v >= lambda.entries()[static_cast<std::size_t>(i + 1)]; --v) {
            mu[static_cast<std::size_t>(i)] = v;
            rec(i + 1);
        }
    };
    rec(0);
}

/// Calls f(nu) for every partition nu < lambda.
template <class F>
void for_each_interlacing(const Partition& lambda, F&& f) {
    const int len = lambda.length();
    std::vector<int> nu(static_cast<std::size_t>(len), 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == len) {
            f(Partition(nu));
            return;
        }
        for (int v = lambda[i + 1]; v >= lambda[i + 2]; --v) {
            nu[static_cast<std::size_t>(i)] = v;
            rec(i + 1);
        }
    };
    rec(0);
}

/// All partitions of n, in reverse lexicographic order.
inline std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            rec(remaining - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

inline std::string to_string(const Partition& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.parts().size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p.parts()[i]);
    }
    return s + ")";
}

inline std::string to_string(const Signature& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.entries().size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s.entries()[i]);
    }
    return out + ")";
}

inline std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const Signature& s) { return os << to_string(s); }

// JSON: partitions are plain decreasing arrays; signatures carry their length.
inline void to_json(nlohmann::json& j, const Partition& p) { j = p.parts(); }
inline void from_json(const nlohmann::json& j, Partition& p) { p = Partition(j.get<std::vector<int>>()); }

inline void to_json(nlohmann::json& j, const Signature& s) { j = nlohmann::json{{"k", s.k()}, {"entries", s.entries()}}; }
inline void from_json(const nlohmann::json& j, Signature& s) {
    auto entries = j.at("entries").get<std::vector<int>>();
    if (static_cast<int>(entries.size()) != j.at("k").get<int>())
        throw std::invalid_argument("signature length does not match declared k");
    s = Signature(std::move(entries));
}

}  // namespace jordanlab
