#pragma once

// Multiplicative relations lambda^alpha = 1, alpha in Z^n \ {0}.
//
// Exact mode works on ExactPolarSpec data: the modulus condition becomes an
// integer kernel (prime valuations + generic log tags), argument tags add more
// integer rows, and the rational multiples of pi leave a single congruence
// modulo 2 on that kernel. Numeric mode is a pruned exhaustive search.

#include "core.hpp"
#include "exact.hpp"

#include <functional>
#include <numeric>

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fockdyn {

using IntVector = std::vector<std::int64_t>;

// ---------------------------------------------------------------------------
// 64-bit factorization (Miller-Rabin + Pollard-Brent).

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL})
        if (n % p == 0) return n == p;
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic witness set for 64-bit integers.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline std::uint64_t pollard_brent(std::uint64_t n, std::uint64_t seed) {
    if (n % 2 == 0) return 2;
    constexpr int kMaxRounds = 1 << 22;
    std::uint64_t y = seed % n, c = (seed * 7919 + 1) % n, m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
    if (c == 0) c = 1;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    int rounds = 0;
    do {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) y = f(y);
        std::uint64_t k = 0;
        do {
            ys = y;
            for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                y = f(y);
                q = mulmod(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
            k += m;
            rounds += static_cast<int>(m);
        } while (k < r && g == 1);
        r <<= 1;
        if (rounds > kMaxRounds) return 0;
    } while (g == 1);
    if (g == n) {
        do {
            ys = f(ys);
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g == n ? 0 : g;
}

inline void factor_into(std::uint64_t n, std::map<std::uint64_t, int>& out) {
    if (n <= 1) return;
    for (std::uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    for (std::uint64_t seed = 2; seed < 40; ++seed) {
        const std::uint64_t g = pollard_brent(n, seed);
        if (g != 0 && g != 1 && g != n) {
            factor_into(g, out);
            factor_into(n / g, out);
            return;
        }
    }
    throw Unsupported("could not factor " + std::to_string(n) + " within the factorization budget");
}

inline i128 checked(i128 v) {
    constexpr i128 kLimit = static_cast<i128>(1) << 100;
    if (v > kLimit || v < -kLimit) throw Unsupported("integer overflow in exact lattice arithmetic");
    return v;
}

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

inline i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace detail

/// Prime factorization of a positive 64-bit integer.
inline std::map<std::uint64_t, int> factorize(std::uint64_t n) {
    std::map<std::uint64_t, int> out;
    detail::factor_into(n, out);
    return out;
}

/// Basis of {x in Z^n : M x = 0} for an integer matrix M (rows x n), computed
/// by unimodular row reduction of [M^T | I]. The basis is returned in Hermite
/// normal form (leading entries positive, entries above pivots reduced).
inline std::vector<IntVector> integer_kernel(const std::vector<IntVector>& rows, std::size_t n) {
    using detail::checked;
    const std::size_t r = rows.size();
    std::vector<std::vector<i128>> w(n, std::vector<i128>(r + n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < r; ++c) {
            if (rows[c].size() != n) throw InvalidInput("integer matrix row has wrong length");
            w[i][c] = rows[c][i];
        }
        w[i][r + i] = 1;
    }
    std::size_t pivot = 0;
    for (std::size_t c = 0; c < r && pivot < n; ++c) {
        while (true) {
            // smallest nonzero |entry| in column c among rows >= pivot
            std::size_t best = n;
            for (std::size_t i = pivot; i < n; ++i)
                if (w[i][c] != 0 && (best == n || detail::abs128(w[i][c]) < detail::abs128(w[best][c]))) best = i;
            if (best == n) break;
            std::swap(w[pivot], w[best]);
            bool done = true;
            for (std::size_t i = pivot + 1; i < n; ++i) {
                if (w[i][c] == 0) continue;
                const i128 q = w[i][c] / w[pivot][c];
                for (std::size_t k = 0; k < r + n; ++k) w[i][k] = checked(w[i][k] - q * w[pivot][k]);
                if (w[i][c] != 0) done = false;
            }
            if (done) {
                ++pivot;
                break;
            }
        }
    }
    // Rows pivot..n-1 have zero M^T part; their identity parts span the kernel.
    std::vector<std::vector<i128>> basis;
    for (std::size_t i = pivot; i < n; ++i) basis.emplace_back(w[i].begin() + static_cast<std::ptrdiff_t>(r), w[i].end());

    // Hermite normal form of the kernel basis.
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < basis.size(); ++c) {
        while (true) {
            std::size_t best = basis.size();
            for (std::size_t i = row; i < basis.size(); ++i)
                if (basis[i][c] != 0 &&
                    (best == basis.size() || detail::abs128(basis[i][c]) < detail::abs128(basis[best][c])))
                    best = i;
            if (best == basis.size()) break;
            std::swap(basis[row], basis[best]);
            bool done = true;
            for (std::size_t i = row + 1; i < basis.size(); ++i) {
                if (basis[i][c] == 0) continue;
                const i128 q = basis[i][c] / basis[row][c];
                for (std::size_t k = 0; k < n; ++k) basis[i][k] = checked(basis[i][k] - q * basis[row][k]);
                if (basis[i][c] != 0) done = false;
            }
            if (!done) continue;
            if (basis[row][c] < 0)
                for (auto& x : basis[row]) x = -x;
            for (std::size_t i = 0; i < row; ++i) {
                i128 q = basis[i][c] / basis[row][c];
                if (basis[i][c] - q * basis[row][c] < 0) --q;
                for (std::size_t k = 0; k < n; ++k) basis[i][k] = checked(basis[i][k] - q * basis[row][k]);
            }
            ++row;
            break;
        }
    }
    std::vector<IntVector> out;
    for (const auto& v : basis) {
        IntVector x(n);
        for (std::size_t k = 0; k < n; ++k) {
            if (v[k] > INT64_MAX || v[k] < -INT64_MAX) throw Unsupported("kernel vector exceeds 64-bit range");
            x[k] = static_cast<std::int64_t>(v[k]);
        }
        out.push_back(std::move(x));
    }
    return out;
}

struct ValuationLattice {
    std::vector<std::uint64_t> primes;
    /// Generic log-modulus tags, one row each after the prime rows.
    std::vector<std::string> log_tags;
    /// (primes + log_tags) x eigenvalues.
    std::vector<IntVector> valuation_matrix;
    std::vector<IntVector> kernel_basis;
};

/// Lattice of alpha with prod |lambda_j|^alpha_j = 1, from exact moduli.
inline ValuationLattice modulus_kernel(const ExactPolarSpec& spec) {
    spec.validate();
    const std::size_t n = spec.eigenvalues.size();
    std::vector<std::map<std::uint64_t, int>> val(n);
    std::set<std::uint64_t> primes;
    std::set<std::string> tags;
    for (std::size_t j = 0; j < n; ++j) {
        const auto& m = spec.eigenvalues[j].modulus;
        for (auto [p, e] : factorize(static_cast<std::uint64_t>(m.rational.num()))) val[j][p] += e;
        for (auto [p, e] : factorize(static_cast<std::uint64_t>(m.rational.den()))) val[j][p] -= e;
        for (const auto& [p, e] : val[j]) primes.insert(p);
        if (m.log_tag && m.log_tag->coeff != 0) tags.insert(m.log_tag->tag);
    }
    ValuationLattice lat;
    lat.primes.assign(primes.begin(), primes.end());
    lat.log_tags.assign(tags.begin(), tags.end());
    for (std::uint64_t p : lat.primes) {
        IntVector row(n, 0);
        for (std::size_t j = 0; j < n; ++j) {
            auto it = val[j].find(p);
            row[j] = it == val[j].end() ? 0 : it->second;
        }
        lat.valuation_matrix.push_back(std::move(row));
    }
    for (const auto& t : lat.log_tags) {
        IntVector row(n, 0);
        for (std::size_t j = 0; j < n; ++j) {
            const auto& lt = spec.eigenvalues[j].modulus.log_tag;
            if (lt && lt->tag == t) row[j] = lt->coeff;
        }
        lat.valuation_matrix.push_back(std::move(row));
    }
    lat.kernel_basis = integer_kernel(lat.valuation_matrix, n);
    return lat;
}

enum class RelationStatus { Found, NoneUpToHeight, ProvenNone };

struct RelationResult {
    RelationStatus status = RelationStatus::ProvenNone;
    IntVector alpha;          // set when Found
    bool exact_certificate = false;
    double residual = 0.0;    // |lambda^alpha - 1| for numeric certificates
    int height = 0;           // search height for NoneUpToHeight
};

inline const char* to_string(RelationStatus s) {
    switch (s) {
        case RelationStatus::Found: return "found";
        case RelationStatus::NoneUpToHeight: return "none_up_to_height";
        case RelationStatus::ProvenNone: return "proven_none";
    }
    return "?";
}

/// Sign convention for certificates: last nonzero entry positive.
inline IntVector canonical_sign(IntVector a) {
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        if (*it == 0) continue;
        if (*it < 0)
            for (auto& x : a) x = -x;
        break;
    }
    return a;
}

namespace detail {

// sum_j alpha_j * p_j / q_j as an exact fraction (num, den), den > 0.
inline std::pair<i128, i128> rational_dot(const IntVector& alpha, const std::vector<Rational>& w) {
    i128 num = 0, den = 1;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        if (alpha[j] == 0 || w[j].is_zero()) continue;
        const i128 q = w[j].den();
        const i128 g = gcd128(den, q);
        const i128 l = checked(den / g * q);
        num = checked(num * (l / den) + checked(static_cast<i128>(alpha[j]) * w[j].num()) * (l / q));
        den = l;
    }
    return {num, den};
}

inline bool is_even_integer(std::pair<i128, i128> f) { return f.first % (2 * f.second) == 0; }

inline std::int64_t inf_norm(const IntVector& a) {
    std::int64_t m = 0;
    for (auto x : a) m = std::max<std::int64_t>(m, x < 0 ? -x : x);
    return m;
}

inline std::vector<IntVector> constraint_rows(const ExactPolarSpec& spec, const ValuationLattice& lat) {
    const std::size_t n = spec.eigenvalues.size();
    std::vector<IntVector> rows = lat.valuation_matrix;
    std::set<std::string> arg_tags;
    for (const auto& ev : spec.eigenvalues)
        if (ev.arg.tag && ev.arg.tag->coeff != 0) arg_tags.insert(ev.arg.tag->tag);
    for (const auto& t : arg_tags) {
        IntVector row(n, 0);
        for (std::size_t j = 0; j < n; ++j) {
            const auto& at = spec.eigenvalues[j].arg.tag;
            if (at && at->tag == t) row[j] = at->coeff;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace detail

/// Exact check that alpha is a relation for the given exact data.
inline bool verify_exact_relation(const ExactPolarSpec& spec, const IntVector& alpha) {
    const std::size_t n = spec.eigenvalues.size();
    if (alpha.size() != n) return false;
    if (std::all_of(alpha.begin(), alpha.end(), [](auto x) { return x == 0; })) return false;
    const auto rows = detail::constraint_rows(spec, modulus_kernel(spec));
    for (const auto& row : rows) {
        i128 s = 0;
        for (std::size_t j = 0; j < n; ++j) s = detail::checked(s + static_cast<i128>(row[j]) * alpha[j]);
        if (s != 0) return false;
    }
    std::vector<Rational> w;
    for (const auto& ev : spec.eigenvalues) w.push_back(ev.arg.pi_multiple);
    return detail::is_even_integer(detail::rational_dot(alpha, w));
}

/// Decides the existence of alpha != 0 with lambda^alpha = 1 exactly.
inline RelationResult exact_relation_decide(const ExactPolarSpec& spec) {
    const std::size_t n = spec.eigenvalues.size();
    RelationResult res;
    res.exact_certificate = true;
    if (n == 0) return res;
    const ValuationLattice lat = modulus_kernel(spec);
    const auto kernel = integer_kernel(detail::constraint_rows(spec, lat), n);
    if (kernel.empty()) {
        res.status = RelationStatus::ProvenNone;
        return res;
    }
    // On the kernel lambda^alpha = exp(i pi sum alpha_j q_j); every kernel
    // vector has a multiple that is a relation. Look for a short certificate.
    std::vector<Rational> w;
    for (const auto& ev : spec.eigenvalues) w.push_back(ev.arg.pi_multiple);

    std::optional<IntVector> best;
    auto consider = [&](const IntVector& cand) {
        if (std::all_of(cand.begin(), cand.end(), [](auto x) { return x == 0; })) return;
        if (!detail::is_even_integer(detail::rational_dot(cand, w))) return;
        IntVector c = canonical_sign(cand);
        if (!best) {
            best = c;
            return;
        }
        const auto nc = detail::inf_norm(c), nb = detail::inf_norm(*best);
        if (nc < nb || (nc == nb && c < *best)) best = c;
    };
    for (const auto& k : kernel) {
        // smallest t > 0 with t * s in 2Z where s = p/q
        const auto [p, q] = detail::rational_dot(k, w);
        const i128 twoq = 2 * q;
        const i128 t = p == 0 ? 1 : twoq / detail::gcd128(p, twoq);
        IntVector cand(n);
        for (std::size_t j = 0; j < n; ++j)
            cand[j] = static_cast<std::int64_t>(detail::checked(t * k[j]));
        consider(cand);
    }
    // small integer combinations of kernel vectors
    const std::size_t m = kernel.size();
    if (m >= 2 && m <= 4) {
        std::vector<int> c(m, -3);
        while (true) {
            IntVector cand(n, 0);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < n; ++j) cand[j] += c[i] * kernel[i][j];
            consider(cand);
            std::size_t i = 0;
            while (i < m && ++c[i] > 3) c[i++] = -3;
            if (i == m) break;
        }
    }
    res.status = RelationStatus::Found;
    res.alpha = *best;
    return res;
}

namespace detail {

struct SearchSpace {
    const std::vector<double>* logmod;
    const std::vector<double>* angle;
    std::vector<double> tail;  // tail[j] = sum_{k >= j} |logmod_k|
    double tol;
};

inline double wrap_angle(double x) {
    x = std::fmod(x, 2.0 * kPi);
    if (x > kPi) x -= 2.0 * kPi;
    if (x <= -kPi) x += 2.0 * kPi;
    return x;
}

// Lex-first canonical alpha with ||alpha||_inf == h and first coordinate in
// [lo, hi] satisfying |lambda^alpha - 1| <= tol.
inline std::optional<std::pair<IntVector, double>> search_layer(const SearchSpace& sp, int h, int lo, int hi) {
    const std::size_t n = sp.logmod->size();
    IntVector alpha(n, 0);
    std::optional<std::pair<IntVector, double>> hit;
    const double log_slack = 2.0 * sp.tol + 1e-13 * (1.0 + sp.tail[0] * h);
    std::function<bool(std::size_t, double, double, bool)> rec = [&](std::size_t j, double s, double ph,
                                                                    bool at_edge) -> bool {
        if (j == n) {
            if (!at_edge) return false;
            // canonical: last nonzero positive
            for (std::size_t k = n; k-- > 0;) {
                if (alpha[k] == 0) continue;
                if (alpha[k] < 0) return false;
                break;
            }
            const double res = std::abs(std::exp(Complex(s, wrap_angle(ph))) - 1.0);
            if (res <= sp.tol) {
                hit = std::make_pair(alpha, res);
                return true;
            }
            return false;
        }
        const int from = j == 0 ? lo : -h;
        const int to = j == 0 ? hi : h;
        for (int v = from; v <= to; ++v) {
            const double s2 = s + v * (*sp.logmod)[j];
            const double rem = j + 1 < n ? h * sp.tail[j + 1] : 0.0;
            if (std::abs(s2) > rem + log_slack) continue;
            alpha[j] = v;
            if (rec(j + 1, s2, ph + v * (*sp.angle)[j], at_edge || v == h || v == -h)) return true;
        }
        alpha[j] = 0;
        return false;
    };
    rec(0, 0.0, 0.0, false);
    return hit;
}

}  // namespace detail

/// Exhaustive search for alpha with ||alpha||_inf <= height and
/// |lambda^alpha - 1| <= tol. Never returns ProvenNone.
inline RelationResult numeric_relation_search(const std::vector<Complex>& lambdas, int height, double tol) {
    const std::size_t n = lambdas.size();
    if (height < 1) throw InvalidInput("search height must be positive");
    if (!(tol > 0)) throw InvalidInput("relation tolerance must be positive");
    for (const auto& l : lambdas)
        if (l == Complex(0.0) || !std::isfinite(std::abs(l))) throw InvalidInput("relation search needs nonzero finite eigenvalues");
    if (n >= 4 && height >= 25) throw BudgetExceeded("relation search: height >= 25 in dimension >= 4");
    const double candidates = std::pow(2.0 * height + 1.0, static_cast<double>(n));
    if (candidates > 1e9) throw BudgetExceeded("relation search exceeds 1e9 candidate evaluations");

    RelationResult res;
    res.height = height;
    if (n == 0) {
        res.status = RelationStatus::NoneUpToHeight;
        return res;
    }
    std::vector<double> logmod(n), angle(n);
    for (std::size_t j = 0; j < n; ++j) {
        logmod[j] = std::log(std::abs(lambdas[j]));
        angle[j] = std::arg(lambdas[j]);
    }
    detail::SearchSpace sp{&logmod, &angle, std::vector<double>(n + 1, 0.0), tol};
    for (std::size_t j = n; j-- > 0;) sp.tail[j] = sp.tail[j + 1] + std::abs(logmod[j]);

    const unsigned workers = worker_count();
    for (int h = 1; h <= height; ++h) {
        std::optional<std::pair<IntVector, double>> hit;
        const double layer = std::pow(2.0 * h + 1.0, static_cast<double>(n));
        if (workers <= 1 || layer < 1e5) {
            hit = detail::search_layer(sp, h, -h, h);
        } else {
            // Contiguous blocks of the first coordinate; the lowest block with
            // a hit holds the lex-first hit, independent of worker count.
            const int span = 2 * h + 1;
            const int parts = static_cast<int>(std::min<unsigned>(workers, static_cast<unsigned>(span)));
            std::vector<std::future<std::optional<std::pair<IntVector, double>>>> futs;
            for (int p = 0; p < parts; ++p) {
                const int lo = -h + p * span / parts;
                const int hi = -h + (p + 1) * span / parts - 1;
                futs.push_back(std::async(std::launch::async, [&sp, h, lo, hi] { return detail::search_layer(sp, h, lo, hi); }));
            }
            for (auto& f : futs) {
                auto r = f.get();
                if (!hit && r) hit = std::move(r);
            }
        }
        if (hit) {
            res.status = RelationStatus::Found;
            res.alpha = hit->first;
            res.residual = hit->second;
            return res;
        }
    }
    res.status = RelationStatus::NoneUpToHeight;
    return res;
}

/// Recomputes |lambda^alpha - 1| in log-polar form, independent of the search.
inline double relation_residual(const std::vector<Complex>& lambdas, const IntVector& alpha) {
    double s = 0.0, ph = 0.0;
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
        s += static_cast<double>(alpha[j]) * std::log(std::abs(lambdas[j]));
        ph += static_cast<double>(alpha[j]) * std::arg(lambdas[j]);
    }
    return std::abs(std::polar(std::exp(s), ph) - 1.0);
}

}  // namespace fockdyn
