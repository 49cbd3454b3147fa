#include "fockdyn_suite/oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace fockdyn;

namespace {

ExactEigenvalue ev(Rational modulus, Rational pi_multiple = Rational(0), std::optional<TagTerm> arg_tag = {},
                   std::optional<TagTerm> log_tag = {}) {
    ExactEigenvalue e;
    e.modulus.rational = modulus;
    e.modulus.log_tag = std::move(log_tag);
    e.arg.pi_multiple = pi_multiple;
    e.arg.tag = std::move(arg_tag);
    return e;
}

ExactPolarSpec spec_of(std::vector<ExactEigenvalue> evs) {
    ExactPolarSpec s;
    s.eigenvalues = std::move(evs);
    return s;
}

// prod r_j^{v_j} == 1, in exact big rationals
bool modulus_product_is_one(const std::vector<Rational>& r, const IntVector& v) {
    suite::BigRational p(1);
    for (std::size_t j = 0; j < r.size(); ++j) {
        const suite::BigRational x(r[j].num(), r[j].den());
        for (std::int64_t k = 0; k < std::abs(v[j]); ++k) {
            if (v[j] > 0) p *= x;
            else p /= x;
        }
    }
    return p == 1;
}

}  // namespace

TEST_CASE("integer factorization", "[relations]") {
    const auto f = factorize(360);
    CHECK(f.at(2) == 3);
    CHECK(f.at(3) == 2);
    CHECK(f.at(5) == 1);
    const auto big = factorize(1000000007ULL * 998244353ULL);
    CHECK(big.size() == 2);
    CHECK(big.count(1000000007ULL));
}

TEST_CASE("modulus kernel examples", "[relations]") {
    CHECK(modulus_kernel(spec_of({ev({1, 2}), ev({1, 3})})).kernel_basis.empty());
    const auto k = modulus_kernel(spec_of({ev({1, 2}), ev({1, 4})}));
    REQUIRE(k.kernel_basis.size() == 1);
    const IntVector v = k.kernel_basis[0];
    CHECK((v == IntVector{-2, 1} || v == IntVector{2, -1}));
    CHECK(modulus_kernel(spec_of({ev(1), ev(1)})).kernel_basis.size() == 2);
}

TEST_CASE("modulus kernel vectors annihilate random rational tuples", "[relations]") {
    suite::Rng rng(41);
    const std::vector<std::int64_t> small{1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 18, 27};
    for (int t = 0; t < 200; ++t) {
        const int n = suite::uniform_int(rng, 1, 4);
        std::vector<Rational> r;
        std::vector<ExactEigenvalue> evs;
        for (int j = 0; j < n; ++j) {
            const auto p = small[static_cast<std::size_t>(suite::uniform_int(rng, 0, 12))];
            const auto q = small[static_cast<std::size_t>(suite::uniform_int(rng, 0, 12))];
            r.emplace_back(p, q);
            evs.push_back(ev(r.back()));
        }
        for (const auto& v : modulus_kernel(spec_of(evs)).kernel_basis) CHECK(modulus_product_is_one(r, v));
    }
}

TEST_CASE("exact relation decisions", "[relations]") {
    auto t1 = TagTerm{"t1", 1};
    CHECK(exact_relation_decide(spec_of({ev({1, 2}, 0, t1), ev({1, 3}, 0, TagTerm{"t2", 1})})).status ==
          RelationStatus::ProvenNone);
    const auto found = exact_relation_decide(spec_of({ev({1, 2}, {1, 3}), ev({1, 4}, {2, 3})}));
    REQUIRE(found.status == RelationStatus::Found);
    CHECK((found.alpha == IntVector{-2, 1}));
    CHECK(found.exact_certificate);
    CHECK(exact_relation_decide(spec_of({ev({1, 2}, {1, 3}), ev({1, 4}, 0, TagTerm{"t", 1})})).status ==
          RelationStatus::ProvenNone);
    // e^{2 pi i / 7}
    const auto root = exact_relation_decide(spec_of({ev(1, {2, 7})}));
    REQUIRE(root.status == RelationStatus::Found);
    CHECK((root.alpha == IntVector{7}));
    // log-modulus tags: e^{-1}, e^{-sqrt 2} with independent tags
    CHECK(exact_relation_decide(spec_of({ev(1, 0, {}, TagTerm{"r1", 1}), ev(1, 0, {}, TagTerm{"r2", 1})})).status ==
          RelationStatus::ProvenNone);
    // same tag twice: lambda_2 = lambda_1^2
    const auto twice = exact_relation_decide(spec_of({ev(1, 0, {}, TagTerm{"r", 1}), ev(1, 0, {}, TagTerm{"r", 2})}));
    REQUIRE(twice.status == RelationStatus::Found);
    CHECK(verify_exact_relation(spec_of({ev(1, 0, {}, TagTerm{"r", 1}), ev(1, 0, {}, TagTerm{"r", 2})}), twice.alpha));
}

TEST_CASE("canonical sign", "[relations]") {
    CHECK((canonical_sign({1, -1}) == IntVector{-1, 1}));
    CHECK((canonical_sign({2, 0}) == IntVector{2, 0}));
    CHECK((canonical_sign({3, -2, 0}) == IntVector{-3, 2, 0}));
}

TEST_CASE("numeric relation search examples", "[relations]") {
    const auto a = numeric_relation_search({0.5, 0.25}, 2, 1e-9);
    REQUIRE(a.status == RelationStatus::Found);
    CHECK((a.alpha == IntVector{-2, 1}));
    const auto b = numeric_relation_search({std::polar(0.5, 1.0), 0.3}, 10, 1e-9);
    CHECK(b.status == RelationStatus::NoneUpToHeight);
    CHECK(b.height == 10);
    const auto c = numeric_relation_search({std::polar(1.0, 2 * kPi / 5)}, 10, 1e-9);
    REQUIRE(c.status == RelationStatus::Found);
    CHECK((c.alpha == IntVector{5}));
    CHECK(relation_residual({std::polar(1.0, 2 * kPi / 5)}, c.alpha) < 1e-12);
}

TEST_CASE("numeric search never proves absence", "[relations]") {
    suite::Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        std::vector<Complex> l;
        for (int j = 0; j < suite::uniform_int(rng, 1, 3); ++j)
            l.push_back(std::polar(suite::uniform(rng, 0.1, 1.0), suite::uniform(rng, -3, 3)));
        CHECK(numeric_relation_search(l, 4, 1e-9).status != RelationStatus::ProvenNone);
    }
}

TEST_CASE("numeric search is symmetric under conjugation", "[relations]") {
    suite::Rng rng(99);
    for (int t = 0; t < 60; ++t) {
        const int n = suite::uniform_int(rng, 1, 3);
        std::vector<Complex> l;
        for (int j = 0; j < n; ++j) {
            // half the draws reuse rational multiples of pi so relations occur
            const double arg = t % 2 ? kPi * suite::uniform_int(rng, -6, 6) / 6.0 : suite::uniform(rng, -3, 3);
            const double mod = t % 2 ? std::ldexp(1.0, -suite::uniform_int(rng, 0, 3)) : suite::uniform(rng, 0.1, 1.0);
            l.push_back(std::polar(mod, arg));
        }
        std::vector<Complex> conj;
        for (const auto& z : l) conj.push_back(std::conj(z));
        const auto r1 = numeric_relation_search(l, 6, 1e-9), r2 = numeric_relation_search(conj, 6, 1e-9);
        CHECK(r1.status == r2.status);
        CHECK(r1.alpha == r2.alpha);
    }
}

TEST_CASE("exact and numeric modes agree on planted relations", "[relations]") {
    suite::Rng rng(123);
    for (int t = 0; t < 60; ++t) {
        const int n = suite::uniform_int(rng, 1, 3);
        std::vector<ExactEigenvalue> evs;
        std::vector<Complex> vals;
        for (int j = 0; j < n; ++j) {
            const std::int64_t den = std::int64_t{1} << suite::uniform_int(rng, 0, 3);
            const Rational pm(suite::uniform_int(rng, -4, 4), suite::uniform_int(rng, 1, 4));
            evs.push_back(ev({1, den}, pm));
            vals.push_back(std::polar(1.0 / static_cast<double>(den), kPi * pm.to_double()));
        }
        const auto ex = exact_relation_decide(spec_of(evs));
        const auto nu = numeric_relation_search(vals, 12, 1e-9);
        if (ex.status == RelationStatus::Found && detail::inf_norm(ex.alpha) <= 12) {
            CHECK(nu.status == RelationStatus::Found);
        }
        if (ex.status == RelationStatus::ProvenNone) CHECK(nu.status == RelationStatus::NoneUpToHeight);
        if (nu.status == RelationStatus::Found) {
            CHECK(relation_residual(vals, nu.alpha) <= 1e-9);
            CHECK(verify_exact_relation(spec_of(evs), nu.alpha));
        }
    }
}

TEST_CASE("invalid exact data", "[relations]") {
    CHECK_THROWS_AS(spec_of({ev(Rational(-1, 2))}).validate(), InvalidInput);
    CHECK_THROWS_AS(spec_of({ev(1, 0, TagTerm{"", 1})}).validate(), InvalidInput);
}
