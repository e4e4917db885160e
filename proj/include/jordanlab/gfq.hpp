#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "partition.hpp"

namespace jordanlab {

/// GF(q) for a prime power q <= 256 with full addition and multiplication tables.
///
/// Elements are the integers 0..q-1, read as base-p digit vectors of
/// polynomials modulo the first primitive polynomial of degree m in
/// lexicographic coefficient order. Prime fields reduce to arithmetic mod p.
class FiniteField {
public:
    explicit FiniteField(int q) : q_(q) {
        if (q < 2 || q > 256) throw std::invalid_argument("field order must be a prime power in [2, 256]");
        p_ = smallest_prime_factor(q);
        m_ = 0;
        for (int x = q; x > 1; x /= p_) {
            if (x % p_ != 0) throw std::invalid_argument("field order " + std::to_string(q) + " is not a prime power");
            ++m_;
        }
        add_.resize(static_cast<std::size_t>(q * q));
        mul_.resize(static_cast<std::size_t>(q * q));
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) add_[idx(a, b)] = static_cast<std::uint8_t>(poly_add(a, b));
        build_multiplication();
        neg_.resize(static_cast<std::size_t>(q));
        inv_.assign(static_cast<std::size_t>(q), 0);
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
                if (add(a, b) == 0) neg_[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(b);
                if (mul(a, b) == 1) inv_[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(b);
            }
    }

    int q() const noexcept { return q_; }
    int characteristic() const noexcept { return p_; }
    int degree() const noexcept { return m_; }
    /// Coefficients c_0..c_m (c_m = 1) of the defining polynomial; {0,1} for prime fields.
    const std::vector<int>& modulus() const noexcept { return modulus_; }

    int add(int a, int b) const noexcept { return add_[idx(a, b)]; }
    int mul(int a, int b) const noexcept { return mul_[idx(a, b)]; }
    int neg(int a) const noexcept { return neg_[static_cast<std::size_t>(a)]; }
    int sub(int a, int b) const noexcept { return add(a, neg(b)); }
    int inv(int a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        return inv_[static_cast<std::size_t>(a)];
    }

private:
    static int smallest_prime_factor(int x) {
        for (int d = 2; d * d <= x; ++d)
            if (x % d == 0) return d;
        return x;
    }

    std::size_t idx(int a, int b) const noexcept { return static_cast<std::size_t>(a * q_ + b); }

    std::vector<int> digits(int a) const {
        std::vector<int> d(static_cast<std::size_t>(m_), 0);
        for (int i = 0; i < m_; ++i, a /= p_) d[static_cast<std::size_t>(i)] = a % p_;
        return d;
    }
    int from_digits(const std::vector<int>& d) const {
        int a = 0;
        for (int i = m_ - 1; i >= 0; --i) a = a * p_ + d[static_cast<std::size_t>(i)];
        return a;
    }
    int poly_add(int a, int b) const {
        auto da = digits(a), db = digits(b);
        for (int i = 0; i < m_; ++i) da[static_cast<std::size_t>(i)] = (da[static_cast<std::size_t>(i)] + db[static_cast<std::size_t>(i)]) % p_;
        return from_digits(da);
    }
    // Multiplies by x modulo the candidate monic modulus (low coefficients `low`).
    int times_x(int a, const std::vector<int>& low) const {
        auto d = digits(a);
        const int top = d[static_cast<std::size_t>(m_ - 1)];
        for (int i = m_ - 1; i > 0; --i) d[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(i - 1)];
        d[0] = 0;
        for (int i = 0; i < m_; ++i)
            d[static_cast<std::size_t>(i)] = ((d[static_cast<std::size_t>(i)] - top * low[static_cast<std::size_t>(i)]) % p_ + p_) % p_;
        return from_digits(d);
    }

    void build_multiplication() {
        if (m_ == 1) {
            modulus_ = {0, 1};
            for (int a = 0; a < q_; ++a)
                for (int b = 0; b < q_; ++b) mul_[idx(a, b)] = static_cast<std::uint8_t>((a * b) % p_);
            return;
        }
        // Search monic degree-m polynomials for one where x has order q-1.
        for (int code = 0; code < q_; ++code) {
            std::vector<int> low = digits(code);
            if (low[0] == 0) continue;
            std::vector<int> antilog;
            int cur = 1;
            bool primitive = true;
            for (int e = 0; e < q_ - 1; ++e) {
                if (e > 0 && cur == 1) {
                    primitive = false;
                    break;
                }
                antilog.push_back(cur);
                cur = times_x(cur, low);
            }
            if (!primitive || cur != 1) continue;
            std::vector<int> log(static_cast<std::size_t>(q_), -1);
            for (int e = 0; e < q_ - 1; ++e) log[static_cast<std::size_t>(antilog[static_cast<std::size_t>(e)])] = e;
            if (std::count(log.begin() + 1, log.end(), -1) != 0) continue;
            for (int a = 0; a < q_; ++a)
                for (int b = 0; b < q_; ++b) {
                    int v = 0;
                    if (a && b) v = antilog[static_cast<std::size_t>((log[static_cast<std::size_t>(a)] + log[static_cast<std::size_t>(b)]) % (q_ - 1))];
                    mul_[idx(a, b)] = static_cast<std::uint8_t>(v);
                }
            modulus_.assign(low.begin(), low.end());
            modulus_.push_back(1);
            return;
        }
        throw std::logic_error("no primitive polynomial found");
    }

    int q_, p_, m_;
    std::vector<int> modulus_;
    std::vector<std::uint8_t> add_, mul_, neg_, inv_;
};

/// Dense square matrix over a shared FiniteField.
class MatrixGFq {
public:
    MatrixGFq(int n, std::shared_ptr<const FiniteField> field, bool strict = false)
        : n_(n), field_(std::move(field)), strict_(strict), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {
        if (n < 0) throw std::invalid_argument("negative dimension");
    }

    int n() const noexcept { return n_; }
    const FiniteField& field() const noexcept { return *field_; }
    const std::shared_ptr<const FiniteField>& field_ptr() const noexcept { return field_; }
    bool strict() const noexcept { return strict_; }

    int at(int i, int j) const noexcept { return data_[static_cast<std::size_t>(i * n_ + j)]; }
    void set(int i, int j, int v) {
        if (strict_ && i >= j && v != 0) throw std::invalid_argument("strict matrix must vanish on and below the diagonal");
        data_[static_cast<std::size_t>(i * n_ + j)] = static_cast<std::uint8_t>(v);
    }

    bool is_zero() const noexcept {
        return std::all_of(data_.begin(), data_.end(), [](std::uint8_t v) { return v == 0; });
    }

    friend bool operator==(const MatrixGFq& a, const MatrixGFq& b) { return a.n_ == b.n_ && a.data_ == b.data_; }

private:
    int n_;
    std::shared_ptr<const FiniteField> field_;
    bool strict_;
    std::vector<std::uint8_t> data_;
};

inline MatrixGFq multiply(const MatrixGFq& a, const MatrixGFq& b) {
    const auto& f = a.field();
    const int n = a.n();
    MatrixGFq c(n, a.field_ptr());
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
            const int ail = a.at(i, l);
            if (!ail) continue;
            for (int j = 0; j < n; ++j)
                if (b.at(l, j)) c.set(i, j, f.add(c.at(i, j), f.mul(ail, b.at(l, j))));
        }
    return c;
}

/// Debug dump: one line per row, entries as integers in [0, q).
inline void dump(std::ostream& os, const MatrixGFq& a) {
    for (int i = 0; i < a.n(); ++i) {
        for (int j = 0; j < a.n(); ++j) os << (j ? " " : "") << a.at(i, j);
        os << '\n';
    }
}

// ---------------------------------------------------------------------------
// GF(2) bit-packed matrices.

/// Square GF(2) matrix with rows packed into 64-bit words.
class BitMatrix {
public:
    explicit BitMatrix(int n = 0) : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * static_cast<std::size_t>(words_), 0) {}

    static BitMatrix from(const MatrixGFq& a) {
        if (a.field().q() != 2) throw std::invalid_argument("BitMatrix needs q = 2");
        BitMatrix m(a.n());
        for (int i = 0; i < a.n(); ++i)
            for (int j = 0; j < a.n(); ++j)
                if (a.at(i, j)) m.set(i, j);
        return m;
    }

    int n() const noexcept { return n_; }
    int words() const noexcept { return words_; }
    std::uint64_t* row(int i) noexcept { return bits_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(words_); }
    const std::uint64_t* row(int i) const noexcept { return bits_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(words_); }

    bool get(int i, int j) const noexcept { return (row(i)[j >> 6] >> (j & 63)) & 1U; }
    void set(int i, int j) noexcept { row(i)[j >> 6] |= std::uint64_t{1} << (j & 63); }

    bool is_zero() const noexcept {
        return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
    }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    int n_, words_;
    std::vector<std::uint64_t> bits_;
};

inline BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
    const int n = a.n(), w = a.words();
    BitMatrix c(n);
    for (int i = 0; i < n; ++i) {
        std::uint64_t* ci = c.row(i);
        const std::uint64_t* ai = a.row(i);
        for (int wi = 0; wi < w; ++wi) {
            std::uint64_t bits = ai[wi];
            while (bits) {
                const int l = wi * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                const std::uint64_t* bl = b.row(l);
                for (int x = 0; x < w; ++x) ci[x] ^= bl[x];
            }
        }
    }
    return c;
}

inline int rank(BitMatrix m) {
    const int n = m.n(), w = m.words();
    int r = 0;
    for (int col = 0; col < n && r < n; ++col) {
        const int wi = col >> 6;
        const std::uint64_t mask = std::uint64_t{1} << (col & 63);
        int pivot = -1;
        for (int i = r; i < n; ++i)
            if (m.row(i)[wi] & mask) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != r) std::swap_ranges(m.row(pivot), m.row(pivot) + w, m.row(r));
        for (int i = r + 1; i < n; ++i)
            if (m.row(i)[wi] & mask)
                for (int x = wi; x < w; ++x) m.row(i)[x] ^= m.row(r)[x];
        ++r;
    }
    return r;
}

/// Generic elimination path, exposed so it can be checked against the bit path.
inline int rank_dense(const MatrixGFq& a) {
    const auto& f = a.field();
    const int n = a.n();
    std::vector<std::vector<int>> m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a.at(i, j);
    int r = 0;
    for (int col = 0; col < n && r < n; ++col) {
        int pivot = -1;
        for (int i = r; i < n; ++i)
            if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)]) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[static_cast<std::size_t>(pivot)], m[static_cast<std::size_t>(r)]);
        const auto& pr = m[static_cast<std::size_t>(r)];
        const int pinv = f.inv(pr[static_cast<std::size_t>(col)]);
        for (int i = r + 1; i < n; ++i) {
            auto& row = m[static_cast<std::size_t>(i)];
            const int v = row[static_cast<std::size_t>(col)];
            if (!v) continue;
            const int factor = f.mul(v, pinv);
            for (int j = col; j < n; ++j)
                row[static_cast<std::size_t>(j)] = f.sub(row[static_cast<std::size_t>(j)], f.mul(factor, pr[static_cast<std::size_t>(j)]));
        }
        ++r;
    }
    return r;
}

/// Rank over F_q by Gaussian elimination; q = 2 goes through the bit-packed path.
inline int rank(const MatrixGFq& a) {
    if (a.field().q() == 2) return rank(BitMatrix::from(a));
    return rank_dense(a);
}

// ---------------------------------------------------------------------------
// Sampling and enumeration of the strictly upper-triangular set g(n, q).

template <class Rng>
MatrixGFq sample_strict_upper(int n, const std::shared_ptr<const FiniteField>& field, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_strict_upper: n must be >= 1");
    MatrixGFq a(n, field, true);
    std::uniform_int_distribution<int> entry(0, field->q() - 1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) a.set(i, j, entry(rng));
    return a;
}

/// q = 2 sampler writing straight into packed rows.
template <class Rng>
BitMatrix sample_strict_upper_bits(int n, Rng& rng) {
    BitMatrix a(n);
    for (int i = 0; i < n; ++i) {
        std::uint64_t* r = a.row(i);
        for (int wi = 0; wi < a.words(); ++wi) {
            std::uint64_t word = rng();
            const int lo = wi * 64;
            // keep columns j > i and j < n
            if (i + 1 > lo) word = (i + 1 - lo >= 64) ? 0 : word & (~std::uint64_t{0} << (i + 1 - lo));
            if (lo + 64 > n) word &= (n - lo >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (n - lo)) - 1);
            r[wi] = word;
        }
    }
    return a;
}

class EnumerationRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Visits every strictly upper-triangular n x n matrix over the field once.
/// Refuses when q^{n(n-1)/2} exceeds 2^24.
template <class F>
void enumerate_strict_upper(int n, const std::shared_ptr<const FiniteField>& field, F&& visit) {
    if (n < 1) throw std::invalid_argument("enumerate_strict_upper: n must be >= 1");
    const int q = field->q();
    const int free = n * (n - 1) / 2;
    double count = 1.0;
    for (int i = 0; i < free; ++i) count *= q;
    if (count > double(1 << 24)) throw EnumerationRefused("enumeration of g(n,q) exceeds 2^24 matrices");
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    MatrixGFq a(n, field, true);
    std::vector<int> digits(slots.size(), 0);
    while (true) {
        visit(static_cast<const MatrixGFq&>(a));
        std::size_t pos = 0;
        while (pos < slots.size()) {
            if (++digits[pos] < q) {
                a.set(slots[pos].first, slots[pos].second, digits[pos]);
                break;
            }
            digits[pos] = 0;
            a.set(slots[pos].first, slots[pos].second, 0);
            ++pos;
        }
        if (pos == slots.size()) return;
    }
}

// ---------------------------------------------------------------------------
// Jordan types.

namespace detail {

inline Partition partition_from_ranks(const std::vector<int>& ranks) {
    // ranks[i] = rank(A^i), ranks[0] = n, last entry 0.
    std::vector<int> cols;
    for (std::size_t i = 1; i < ranks.size(); ++i) cols.push_back(ranks[i - 1] - ranks[i]);
    while (!cols.empty() && cols.back() == 0) cols.pop_back();
    return conjugate(Partition(cols));
}

}  // namespace detail

/// J(A) from the ranks of successive powers: column i has length rank(A^{i-1}) - rank(A^i).
inline Partition jordan_type(const MatrixGFq& a) {
    const int n = a.n();
    std::vector<int> ranks{n};
    if (a.field().q() == 2) {
        const BitMatrix base = BitMatrix::from(a);
        BitMatrix power = base;
        for (int i = 1; i <= n; ++i) {
            if (power.is_zero()) {
                ranks.push_back(0);
                return detail::partition_from_ranks(ranks);
            }
            ranks.push_back(rank(power));
            power = multiply(power, base);
        }
    } else {
        MatrixGFq power = a;
        for (int i = 1; i <= n; ++i) {
            if (power.is_zero()) {
                ranks.push_back(0);
                return detail::partition_from_ranks(ranks);
            }
            ranks.push_back(rank_dense(power));
            power = multiply(power, a);
        }
    }
    if (ranks.back() != 0) throw std::invalid_argument("jordan_type: matrix is not nilpotent");
    return detail::partition_from_ranks(ranks);
}

/// (rank(A^{i-1}) - rank(A^i))_{i <= k}, i.e. the first k columns of J(A).
inline std::vector<int> leading_columns(const BitMatrix& a, int k) {
    std::vector<int> cols;
    int prev = a.n();
    BitMatrix power = a;
    for (int i = 1; i <= k; ++i) {
        const int r = power.is_zero() ? 0 : rank(power);
        cols.push_back(prev - r);
        prev = r;
        if (i < k) power = multiply(power, a);
    }
    return cols;
}

inline std::vector<int> leading_columns(const MatrixGFq& a, int k) {
    if (a.field().q() == 2) return leading_columns(BitMatrix::from(a), k);
    std::vector<int> cols;
    int prev = a.n();
    MatrixGFq power = a;
    for (int i = 1; i <= k; ++i) {
        const int r = rank_dense(power);
        cols.push_back(prev - r);
        prev = r;
        if (i < k) power = multiply(power, a);
    }
    return cols;
}

/// J(A) for strictly upper-triangular A by adding one column at a time.
///
/// Keeps a Jordan basis of the leading m x m block implicitly, through the
/// coordinate functionals of its chains. The new column c has coordinates x;
/// the new box lands on the longest chain whose top coordinate is nonzero
/// (a fresh chain of length one if there is none), and the remaining
/// coordinate rows are corrected so the basis stays a Jordan basis.
/// O(n^3) field operations, with no matrix powers.
inline Partition jordan_type_incremental(const MatrixGFq& a) {
    const auto& f = a.field();
    const int n = a.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            if (a.at(i, j)) throw std::invalid_argument("jordan_type_incremental: matrix must be strictly upper-triangular");

    std::vector<std::vector<int>> coord;        // coordinate functionals, one per basis vector
    std::vector<std::vector<int>> chains;       // row ids, deepest first, top last
    std::vector<int> x;
    for (int m = 0; m < n; ++m) {
        x.assign(coord.size(), 0);
        for (std::size_t r = 0; r < coord.size(); ++r) {
            int acc = 0;
            for (int j = 0; j < m; ++j)
                if (a.at(j, m)) acc = f.add(acc, f.mul(coord[r][static_cast<std::size_t>(j)], a.at(j, m)));
            x[r] = acc;
        }
        // Coefficient of e_m in each functional: x of the vector one step deeper in its chain.
        for (auto& chain : chains)
            for (std::size_t idx = 0; idx < chain.size(); ++idx) {
                const int above = idx > 0 ? x[static_cast<std::size_t>(chain[idx - 1])] : 0;
                coord[static_cast<std::size_t>(chain[idx])][static_cast<std::size_t>(m)] = above;
            }
        int star = -1;
        for (std::size_t c = 0; c < chains.size(); ++c)
            if (x[static_cast<std::size_t>(chains[c].back())] != 0 &&
                (star < 0 || chains[c].size() > chains[static_cast<std::size_t>(star)].size()))
                star = static_cast<int>(c);

        std::vector<int> top(static_cast<std::size_t>(n), 0);
        top[static_cast<std::size_t>(m)] = 1;
        if (star < 0) {
            coord.push_back(std::move(top));
            chains.push_back({static_cast<int>(coord.size() - 1)});
            continue;
        }
        const auto& sc = chains[static_cast<std::size_t>(star)];
        const int a_star = x[static_cast<std::size_t>(sc.back())];
        const int a_inv = f.inv(a_star);
        const int ls = static_cast<int>(sc.size());
        for (std::size_t c = 0; c < chains.size(); ++c) {
            if (static_cast<int>(c) == star) continue;
            const auto& ch = chains[c];
            const int xc = x[static_cast<std::size_t>(ch.back())];
            if (xc == 0) continue;
            const int beta = f.mul(xc, a_inv);
            const int lc = static_cast<int>(ch.size());
            for (int s = 0; s < lc; ++s) {  // depth s from the top
                auto& dst = coord[static_cast<std::size_t>(ch[static_cast<std::size_t>(lc - 1 - s)])];
                const auto& src = coord[static_cast<std::size_t>(sc[static_cast<std::size_t>(ls - 1 - s)])];
                for (int j = 0; j <= m; ++j)
                    if (src[static_cast<std::size_t>(j)]) dst[static_cast<std::size_t>(j)] = f.sub(dst[static_cast<std::size_t>(j)], f.mul(beta, src[static_cast<std::size_t>(j)]));
            }
        }
        top[static_cast<std::size_t>(m)] = a_star;
        coord.push_back(std::move(top));
        chains[static_cast<std::size_t>(star)].push_back(static_cast<int>(coord.size() - 1));
    }
    std::vector<int> lengths;
    for (const auto& c : chains) lengths.push_back(static_cast<int>(c.size()));
    std::sort(lengths.rbegin(), lengths.rend());
    return Partition(lengths);
}

/// Bit-packed version of jordan_type_incremental for q = 2.
inline Partition jordan_type_incremental(const BitMatrix& a) {
    const int n = a.n(), w = a.words();
    std::vector<std::uint64_t> coord;  // n rows of w words, allocated as chains grow
    std::vector<std::vector<int>> chains;
    std::vector<std::uint8_t> x;
    std::vector<std::uint64_t> column(static_cast<std::size_t>(w), 0);
    int rows = 0;
    coord.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(w));
    auto row = [&](int r) { return coord.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(w); };
    for (int m = 0; m < n; ++m) {
        std::fill(column.begin(), column.end(), 0);
        for (int j = 0; j < m; ++j)
            if (a.get(j, m)) column[static_cast<std::size_t>(j >> 6)] |= std::uint64_t{1} << (j & 63);
        const int used = (m + 63) / 64;
        x.assign(static_cast<std::size_t>(rows), 0);
        for (int r = 0; r < rows; ++r) {
            const std::uint64_t* cr = row(r);
            std::uint64_t acc = 0;
            for (int wi = 0; wi < used; ++wi) acc ^= cr[wi] & column[static_cast<std::size_t>(wi)];
            x[static_cast<std::size_t>(r)] = static_cast<std::uint8_t>(std::popcount(acc) & 1);
        }
        const std::uint64_t bit = std::uint64_t{1} << (m & 63);
        for (auto& chain : chains)
            for (std::size_t idx = 1; idx < chain.size(); ++idx)
                if (x[static_cast<std::size_t>(chain[idx - 1])]) row(chain[idx])[m >> 6] |= bit;
        int star = -1;
        for (std::size_t c = 0; c < chains.size(); ++c)
            if (x[static_cast<std::size_t>(chains[c].back())] &&
                (star < 0 || chains[c].size() > chains[static_cast<std::size_t>(star)].size()))
                star = static_cast<int>(c);
        coord.resize(coord.size() + static_cast<std::size_t>(w), 0);
        row(rows)[m >> 6] |= bit;
        const int top = rows++;
        if (star < 0) {
            chains.push_back({top});
            continue;
        }
        const auto& sc = chains[static_cast<std::size_t>(star)];
        const int ls = static_cast<int>(sc.size());
        const int upto = m / 64 + 1;
        for (std::size_t c = 0; c < chains.size(); ++c) {
            if (static_cast<int>(c) == star) continue;
            const auto& ch = chains[c];
            if (!x[static_cast<std::size_t>(ch.back())]) continue;
            const int lc = static_cast<int>(ch.size());
            for (int s = 0; s < lc; ++s) {
                std::uint64_t* dst = row(ch[static_cast<std::size_t>(lc - 1 - s)]);
                const std::uint64_t* src = row(sc[static_cast<std::size_t>(ls - 1 - s)]);
                for (int wi = 0; wi < upto; ++wi) dst[wi] ^= src[wi];
            }
        }
        chains[static_cast<std::size_t>(star)].push_back(top);
    }
    std::vector<int> lengths;
    for (const auto& c : chains) lengths.push_back(static_cast<int>(c.size()));
    std::sort(lengths.rbegin(), lengths.rend());
    return Partition(lengths);
}

}  // namespace jordanlab
