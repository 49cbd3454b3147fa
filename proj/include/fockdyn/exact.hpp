#pragma once

// Exact polar data for eigenvalues: |lambda| = r * exp(c * s), arg = pi * q + c' * t
// with r, q rational and s, t named "generic" reals. Distinct tag names are
// taken to be Q-linearly independent from each other, from pi (arguments) and
// from the logarithms of the primes (moduli).

#include "core.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace fockdyn {

using i128 = __int128;

class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1) { assign(num, den); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_zero() const { return num_ == 0; }

    friend bool operator==(const Rational&, const Rational&) = default;

private:
    void assign(std::int64_t num, std::int64_t den) {
        if (den == 0) throw InvalidInput("rational with zero denominator");
        if (den < 0) {
            if (num == INT64_MIN || den == INT64_MIN) throw Unsupported("rational out of 64-bit range");
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num, den);
        num_ = g ? num / g : 0;
        den_ = g ? den / g : 1;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

struct TagTerm {
    std::string tag;
    std::int64_t coeff = 1;
};

/// |lambda| = rational * exp(coeff * value(tag)).
struct ExactModulus {
    Rational rational{1, 1};
    std::optional<TagTerm> log_tag;
};

/// arg(lambda) = pi * pi_multiple + coeff * value(tag).
struct ExactArgument {
    Rational pi_multiple{0, 1};
    std::optional<TagTerm> tag;
};

struct ExactEigenvalue {
    ExactModulus modulus;
    ExactArgument arg;
};

struct ExactPolarSpec {
    std::vector<ExactEigenvalue> eigenvalues;
    /// Numeric values of generic tags; needed only to pair exact entries with
    /// numerically computed eigenvalues.
    std::map<std::string, double> tag_values;

    void validate() const {
        for (const auto& ev : eigenvalues) {
            if (ev.modulus.rational.num() <= 0) throw InvalidInput("exact modulus must be a positive rational");
            if (ev.modulus.log_tag && ev.modulus.log_tag->tag.empty())
                throw InvalidInput("empty generic tag name");
            if (ev.arg.tag && ev.arg.tag->tag.empty()) throw InvalidInput("empty generic tag name");
        }
    }

    /// Numeric value of eigenvalue i, or nullopt when a tag has no value.
    std::optional<Complex> numeric_value(std::size_t i) const {
        const auto& ev = eigenvalues.at(i);
        double logmod = std::log(ev.modulus.rational.to_double());
        double angle = kPi * ev.arg.pi_multiple.to_double();
        if (ev.modulus.log_tag) {
            auto it = tag_values.find(ev.modulus.log_tag->tag);
            if (it == tag_values.end()) return std::nullopt;
            logmod += static_cast<double>(ev.modulus.log_tag->coeff) * it->second;
        }
        if (ev.arg.tag) {
            auto it = tag_values.find(ev.arg.tag->tag);
            if (it == tag_values.end()) return std::nullopt;
            angle += static_cast<double>(ev.arg.tag->coeff) * it->second;
        }
        return std::polar(std::exp(logmod), angle);
    }
};

/// True iff theta / pi is rational, i.e. {pi, theta} is Q-linearly dependent.
inline bool pi_rational_dependence(const ExactArgument& arg) {
    return !arg.tag || arg.tag->coeff == 0;
}

}  // namespace fockdyn
