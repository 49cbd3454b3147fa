#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <vector>

namespace fockdyn {

/// A multi-index alpha in N^d (entries may be negative only where a caller
/// explicitly works in Z^d, e.g. relation certificates and torus exponents).
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t d) : e_(d, 0) {}
    MultiIndex(std::initializer_list<int> init) : e_(init) {}
    explicit MultiIndex(std::vector<int> entries) : e_(std::move(entries)) {}

    static MultiIndex unit(std::size_t d, std::size_t j) {
        MultiIndex m(d);
        m.e_[j] = 1;
        return m;
    }

    std::size_t size() const { return e_.size(); }
    int operator[](std::size_t j) const { return e_[j]; }
    int& operator[](std::size_t j) { return e_[j]; }
    const std::vector<int>& entries() const { return e_; }

    /// |alpha| = sum of entries.
    int degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }

    bool nonnegative() const {
        return std::all_of(e_.begin(), e_.end(), [](int x) { return x >= 0; });
    }

    /// Componentwise partial order alpha <= beta.
    bool dominated_by(const MultiIndex& other) const {
        for (std::size_t j = 0; j < e_.size(); ++j)
            if (e_[j] > other.e_[j]) return false;
        return true;
    }

    MultiIndex operator+(const MultiIndex& o) const {
        MultiIndex r(*this);
        for (std::size_t j = 0; j < e_.size(); ++j) r.e_[j] += o.e_[j];
        return r;
    }
    MultiIndex operator-(const MultiIndex& o) const {
        MultiIndex r(*this);
        for (std::size_t j = 0; j < e_.size(); ++j) r.e_[j] -= o.e_[j];
        return r;
    }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) { return a.e_ <=> b.e_; }

    friend std::ostream& operator<<(std::ostream& os, const MultiIndex& m) {
        os << '(';
        for (std::size_t j = 0; j < m.e_.size(); ++j) os << (j ? "," : "") << m.e_[j];
        return os << ')';
    }

private:
    std::vector<int> e_;
};

/// Graded order used for every basis in the library: total degree ascending,
/// then lexicographically *descending* within a degree, so that for d = 2 the
/// basis reads 1, z1, z2, z1^2, z1 z2, z2^2, ...
struct GradedLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        const int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return b < a;
    }
};

struct MultiIndexHash {
    std::size_t operator()(const MultiIndex& m) const noexcept {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (int x : m.entries()) h ^= std::hash<int>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

/// All alpha in N^d with |alpha| == n, in graded order.
inline std::vector<MultiIndex> homogeneous_indices(std::size_t d, int n) {
    std::vector<MultiIndex> out;
    if (d == 0) {
        if (n == 0) out.emplace_back(0);
        return out;
    }
    MultiIndex cur(d);
    // Recursive fill, first coordinate from n down to 0 gives descending lex.
    std::function<void(std::size_t, int)> rec = [&](std::size_t j, int rem) {
        if (j + 1 == d) {
            cur[j] = rem;
            out.push_back(cur);
            return;
        }
        for (int v = rem; v >= 0; --v) {
            cur[j] = v;
            rec(j + 1, rem - v);
        }
    };
    rec(0, n);
    return out;
}

/// All alpha in N^d with |alpha| <= n, in graded order.
inline std::vector<MultiIndex> indices_up_to(std::size_t d, int n) {
    std::vector<MultiIndex> out;
    for (int k = 0; k <= n; ++k) {
        auto h = homogeneous_indices(d, k);
        out.insert(out.end(), h.begin(), h.end());
    }
    return out;
}

/// C(n + d, d) with overflow saturation.
inline std::size_t count_up_to(std::size_t d, int n) {
    long double c = 1;
    for (std::size_t i = 1; i <= d; ++i) c = c * (n + static_cast<long double>(i)) / i;
    return c > 1e18L ? static_cast<std::size_t>(1e18) : static_cast<std::size_t>(c + 0.5L);
}

}  // namespace fockdyn
