#pragma once

// Sparse complex polynomials in d variables; the "coefficient map" exchanged
// between modules (monomial coefficients, or coefficients in an L basis).

#include "core.hpp"
#include "multi_index.hpp"

#include <functional>
#include <map>
#include <vector>

namespace fockdyn {

class Polynomial {
public:
    using Terms = std::map<MultiIndex, Complex, GradedLess>;

    Polynomial() = default;
    explicit Polynomial(std::size_t d) : d_(d) {}

    static Polynomial constant(std::size_t d, Complex c) {
        Polynomial p(d);
        p.add(MultiIndex(d), c);
        return p;
    }
    static Polynomial monomial(const MultiIndex& alpha, Complex c = 1.0) {
        Polynomial p(alpha.size());
        p.add(alpha, c);
        return p;
    }
    /// sum_k coeffs(k) z_k + c0
    static Polynomial linear(const ComplexVector& coeffs, Complex c0) {
        const auto d = static_cast<std::size_t>(coeffs.size());
        Polynomial p(d);
        p.add(MultiIndex(d), c0);
        for (std::size_t k = 0; k < d; ++k) p.add(MultiIndex::unit(d, k), coeffs(static_cast<Eigen::Index>(k)));
        return p;
    }

    std::size_t dimension() const { return d_; }
    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    void add(const MultiIndex& alpha, Complex c) {
        if (alpha.size() != d_) throw InvalidInput("multi-index length does not match polynomial dimension");
        if (!alpha.nonnegative()) throw InvalidInput("polynomial exponents must be nonnegative");
        if (c == Complex(0.0)) return;
        auto [it, inserted] = terms_.try_emplace(alpha, c);
        if (!inserted) {
            it->second += c;
            if (it->second == Complex(0.0)) terms_.erase(it);
        }
    }

    Complex coefficient(const MultiIndex& alpha) const {
        auto it = terms_.find(alpha);
        return it == terms_.end() ? Complex(0.0) : it->second;
    }

    /// Highest total degree with a stored term; -1 for the zero polynomial.
    int degree() const {
        int deg = -1;
        for (const auto& [a, c] : terms_) deg = std::max(deg, a.degree());
        return deg;
    }

    Complex evaluate(const ComplexVector& z) const {
        if (static_cast<std::size_t>(z.size()) != d_) throw InvalidInput("evaluation point has wrong dimension");
        Complex s = 0.0;
        for (const auto& [a, c] : terms_) {
            Complex t = c;
            for (std::size_t j = 0; j < d_; ++j)
                if (a[j]) t *= std::pow(z(static_cast<Eigen::Index>(j)), a[j]);
            s += t;
        }
        return s;
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_dim(o);
        for (const auto& [a, c] : o.terms_) add(a, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check_dim(o);
        for (const auto& [a, c] : o.terms_) add(a, -c);
        return *this;
    }
    Polynomial& operator*=(Complex s) {
        if (s == Complex(0.0)) {
            terms_.clear();
            return *this;
        }
        for (auto& [a, c] : terms_) c *= s;
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, Complex s) { return a *= s; }
    friend Polynomial operator*(Complex s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_dim(b);
        Polynomial r(a.d_);
        for (const auto& [x, cx] : a.terms_)
            for (const auto& [y, cy] : b.terms_) r.add(x + y, cx * cy);
        return r;
    }

    /// Part of exact total degree n.
    Polynomial homogeneous_part(int n) const {
        Polynomial r(d_);
        for (const auto& [a, c] : terms_)
            if (a.degree() == n) r.terms_.emplace(a, c);
        return r;
    }

    Polynomial filtered(const std::function<bool(const MultiIndex&)>& keep) const {
        Polynomial r(d_);
        for (const auto& [a, c] : terms_)
            if (keep(a)) r.terms_.emplace(a, c);
        return r;
    }

    /// Largest |coefficient difference| over the union of supports.
    double max_abs_diff(const Polynomial& o) const {
        check_dim(o);
        double m = 0.0;
        for (const auto& [a, c] : terms_) m = std::max(m, std::abs(c - o.coefficient(a)));
        for (const auto& [a, c] : o.terms_)
            if (!terms_.count(a)) m = std::max(m, std::abs(c));
        return m;
    }

    double max_abs_coefficient() const {
        double m = 0.0;
        for (const auto& [a, c] : terms_) m = std::max(m, std::abs(c));
        return m;
    }

    /// Returns g(z) = f(M z + c).
    Polynomial compose_affine(const ComplexMatrix& m, const ComplexVector& c) const {
        if (static_cast<std::size_t>(m.rows()) != d_ || static_cast<std::size_t>(c.size()) != d_)
            throw InvalidInput("affine substitution has wrong dimension");
        const auto dout = static_cast<std::size_t>(m.cols());
        std::vector<int> max_exp(d_, 0);
        for (const auto& [a, cf] : terms_)
            for (std::size_t j = 0; j < d_; ++j) max_exp[j] = std::max(max_exp[j], a[j]);
        // powers[j][k] = (row_j(M) z + c_j)^k
        std::vector<std::vector<Polynomial>> powers(d_);
        for (std::size_t j = 0; j < d_; ++j) {
            const auto jj = static_cast<Eigen::Index>(j);
            Polynomial lin = Polynomial::linear(m.row(jj).transpose(), c(jj));
            powers[j].push_back(Polynomial::constant(dout, 1.0));
            for (int k = 1; k <= max_exp[j]; ++k) powers[j].push_back(powers[j].back() * lin);
        }
        Polynomial out(dout);
        for (const auto& [a, cf] : terms_) {
            Polynomial t = Polynomial::constant(dout, cf);
            for (std::size_t j = 0; j < d_; ++j)
                if (a[j]) t = t * powers[j][static_cast<std::size_t>(a[j])];
            out += t;
        }
        return out;
    }

private:
    void check_dim(const Polynomial& o) const {
        if (o.d_ != d_) throw InvalidInput("polynomial dimension mismatch");
    }

    std::size_t d_ = 0;
    Terms terms_;
};

}  // namespace fockdyn
