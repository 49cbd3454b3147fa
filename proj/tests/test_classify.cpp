#include "fockdyn_suite/oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace fockdyn;

namespace {

AffineSymbol diag_symbol(std::vector<Complex> l, ComplexVector b = {}) {
    const auto d = static_cast<Eigen::Index>(l.size());
    ComplexMatrix a = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) a(i, i) = l[static_cast<std::size_t>(i)];
    if (b.size() == 0) b = ComplexVector::Zero(d);
    return AffineSymbol(a, b);
}

ExactEigenvalue ev(Rational modulus, Rational pi_multiple = Rational(0), std::optional<TagTerm> arg_tag = {}) {
    ExactEigenvalue e;
    e.modulus.rational = modulus;
    e.arg.pi_multiple = pi_multiple;
    e.arg.tag = std::move(arg_tag);
    return e;
}

AffineSymbol with_exact(AffineSymbol s, std::vector<ExactEigenvalue> evs, std::map<std::string, double> tags = {}) {
    ExactPolarSpec spec;
    spec.eigenvalues = std::move(evs);
    spec.tag_values = std::move(tags);
    s.exact = spec;
    s.validate();
    return s;
}

AffineSymbol jordan_two() {
    ComplexMatrix a(2, 2);
    a << 0.5, 0.25, 0.0, 0.5;
    return with_exact(AffineSymbol(a, ComplexVector::Zero(2)), {ev({1, 2})});
}

}  // namespace

TEST_CASE("classification examples", "[classify]") {
    const auto generic = with_exact(diag_symbol({std::polar(0.5, 0.7), std::polar(1.0 / 3.0, 2.1)}),
                                    {ev({1, 2}, 0, TagTerm{"t1", 1}), ev({1, 3}, 0, TagTerm{"t2", 1})},
                                    {{"t1", 0.7}, {"t2", 2.1}});
    const auto v1 = classify_cyclicity(generic);
    CHECK(v1.status == VerdictStatus::Cyclic);
    CHECK(v1.has_reason("EXACT_NO_RELATION"));
    CHECK(v1.exact_mode);

    const auto resonant = with_exact(diag_symbol({std::polar(0.5, 0.7), std::polar(0.25, 1.4 + kPi / 3)}),
                                     {ev({1, 2}, 0, TagTerm{"t1", 1}), ev({1, 4}, {1, 3}, TagTerm{"t1", 2})},
                                     {{"t1", 0.7}});
    const auto v2 = classify_cyclicity(resonant);
    CHECK(v2.status == VerdictStatus::NotCyclic);
    REQUIRE(v2.reasons.front().alpha);
    const IntVector& a = *v2.reasons.front().alpha;
    // a multiple of (-2, 1)
    CHECK(a[1] != 0);
    CHECK(a[0] == -2 * a[1]);

    const auto v3 = classify_cyclicity(diag_symbol({0.5, 0.5}));
    CHECK(v3.status == VerdictStatus::NotCyclic);
    REQUIRE(v3.reasons.front().alpha);
    CHECK((*v3.reasons.front().alpha == IntVector{-1, 1}));

    ComplexMatrix j3(3, 3);
    j3 << 0.5, 0.25, 0, 0, 0.5, 0.25, 0, 0, 0.5;
    CHECK(classify_cyclicity(AffineSymbol(j3, ComplexVector::Zero(3))).has_reason("BAD_JORDAN"));

    ComplexMatrix two_blocks = ComplexMatrix::Zero(4, 4);
    two_blocks.diagonal() << 0.5, 0.5, 0.3, 0.3;
    two_blocks(0, 1) = 0.1;
    two_blocks(2, 3) = 0.1;
    CHECK(classify_cyclicity(AffineSymbol(two_blocks, ComplexVector::Zero(4))).has_reason("BAD_JORDAN"));

    ComplexMatrix singular = ComplexMatrix::Zero(2, 2);
    singular(0, 0) = 0.5;
    CHECK(classify_cyclicity(AffineSymbol(singular, ComplexVector::Zero(2))).has_reason("NOT_INVERTIBLE"));

    const auto root = classify_cyclicity(with_exact(diag_symbol({std::polar(1.0, 2 * kPi / 7)}), {ev(1, {2, 7})}));
    CHECK(root.status == VerdictStatus::NotCyclic);
    CHECK((*root.reasons.front().alpha == IntVector{7}));

    const auto numeric = classify_cyclicity(diag_symbol({std::polar(0.5, 1.0), 0.3}));
    CHECK(numeric.status == VerdictStatus::Undecided);
    CHECK(numeric.has_reason("NO_RELATION_UP_TO_HEIGHT"));
    CHECK(numeric.search_height == 10);
    CHECK_FALSE(numeric.exact_mode);

    CHECK(classify_cyclicity(jordan_two()).status == VerdictStatus::Cyclic);
}

TEST_CASE("classification refuses unbounded symbols", "[classify]") {
    CHECK_THROWS_AS(classify_cyclicity(diag_symbol({1.5})), Refused);
    ComplexVector b(1);
    b << 1.0;
    CHECK_THROWS_AS(classify_cyclicity(diag_symbol({1.0}, b)), Refused);
}

TEST_CASE("classification is invariant under unitary conjugation", "[classify]") {
    suite::Rng rng(201);
    for (int t = 0; t < 25; ++t) {
        const int d = suite::uniform_int(rng, 1, 3);
        std::vector<Complex> l;
        for (int j = 0; j < d; ++j) {
            if (t % 3 == 0) l.push_back(std::polar(std::ldexp(1.0, -suite::uniform_int(rng, 1, 3)), kPi * suite::uniform_int(rng, -3, 3) / 3));
            else l.push_back(std::polar(suite::uniform(rng, 0.2, 0.9), suite::uniform(rng, -3, 3)));
        }
        const AffineSymbol s = diag_symbol(l, suite::gaussian_vector(rng, d));
        const ComplexMatrix p = suite::random_unitary(rng, d);
        const AffineSymbol c(p * s.a * p.adjoint(), p * s.b);
        const auto v1 = classify_cyclicity(s), v2 = classify_cyclicity(c);
        CHECK(v1.status == v2.status);
        CHECK(v1.reasons.front().code == v2.reasons.front().code);
    }
}

TEST_CASE("translation does not change the verdict", "[classify]") {
    suite::Rng rng(202);
    for (int t = 0; t < 10; ++t) {
        const std::vector<Complex> l{std::polar(0.5, 1.0), std::polar(0.25, 2.0)};
        const auto v1 = classify_cyclicity(diag_symbol(l));
        const auto v2 = classify_cyclicity(diag_symbol(l, suite::gaussian_vector(rng, 2)));
        CHECK(v1.status == v2.status);
    }
}

TEST_CASE("cyclic vector examples", "[classify]") {
    const auto generic = with_exact(diag_symbol({std::polar(0.5, 0.7)}), {ev({1, 2}, 0, TagTerm{"t1", 1})}, {{"t1", 0.7}});
    // exp(z/4) truncated: every Taylor coefficient is nonzero
    Polynomial e(1);
    double c = 1.0;
    for (int k = 0; k <= 8; ++k) {
        e.add(MultiIndex{k}, c);
        c /= 4.0 * (k + 1);
    }
    CHECK(cyclic_vector_test(generic, e, 8).verdict);

    const auto z = cyclic_vector_test(generic, Polynomial::monomial(MultiIndex{1}), 1);
    CHECK_FALSE(z.verdict);
    REQUIRE(z.failing_indices.size() == 1);
    CHECK(z.failing_indices[0] == MultiIndex{0});

    // Jordan case: 1 + L2 + L2^2 passes, the eigenvector slot is skipped
    const auto jb = linear_form_basis(jordan_two(), eigen_decompose(jordan_two().a));
    Polynomial g(2);
    g.add(MultiIndex{0, 0}, 1.0);
    g.add(MultiIndex{0, 1}, 1.0);
    g.add(MultiIndex{0, 2}, 1.0);
    const auto rep = cyclic_vector_test(jordan_two(), from_L_basis(g, jb), 2);
    CHECK(rep.verdict);
    CHECK_FALSE(rep.basis_order_note.empty());

    Polynomial missing(2);
    missing.add(MultiIndex{0, 0}, 1.0);
    missing.add(MultiIndex{0, 2}, 1.0);
    CHECK_FALSE(cyclic_vector_test(jordan_two(), from_L_basis(missing, jb), 2).verdict);
}

TEST_CASE("cyclic vector test refuses non-cyclic or non-compact operators", "[classify]") {
    const Polynomial one = Polynomial::constant(1, 1.0);
    CHECK_THROWS_AS(cyclic_vector_test(diag_symbol({std::polar(1.0, 1.0)}), one, 2), Refused);
    CHECK_THROWS_AS(cyclic_vector_test(diag_symbol({std::polar(0.5, 1.0)}), one, 2), Refused);
    CHECK_THROWS_AS(cyclic_vector_test(diag_symbol({0.5, 0.5}), Polynomial::constant(2, 1.0), 2), Refused);
    CHECK_THROWS_AS(cyclic_vector_test(jordan_two(), one, 2), InvalidInput);
}

TEST_CASE("cyclic vector verdict matches the L-basis coefficients", "[classify]") {
    suite::Rng rng(203);
    const auto sym = with_exact(diag_symbol({std::polar(0.5, 0.7), std::polar(1.0 / 3.0, 2.1)}),
                                {ev({1, 2}, 0, TagTerm{"t1", 1}), ev({1, 3}, 0, TagTerm{"t2", 1})},
                                {{"t1", 0.7}, {"t2", 2.1}});
    const auto basis = linear_form_basis(sym, eigen_decompose(sym.a));
    for (int t = 0; t < 20; ++t) {
        // random L-coefficients with planted zeros
        Polynomial g = suite::random_polynomial(rng, 2, 3, t % 2 ? 0.2 : 0.0);
        const bool full = g.terms().size() == count_up_to(2, 3);
        CHECK(cyclic_vector_test(sym, from_L_basis(g, basis), 3).verdict == full);
    }
}

TEST_CASE("convex combinations of iterates cannot reach a function vanishing at the fixed point", "[classify]") {
    ComplexVector b(2);
    b << 0.3, -0.1;
    const AffineSymbol s = diag_symbol({std::polar(0.5, 1.0), std::polar(0.4, -2.0)}, b);
    const ComplexVector xi = fixed_point(s);
    suite::Rng rng(204);
    const Polynomial f = suite::random_polynomial(rng, 2, 3);
    for (int t = 0; t < 10; ++t) {
        const int m = suite::uniform_int(rng, 1, 5);
        std::vector<double> w;
        std::vector<int> p;
        double total = 0;
        for (int k = 0; k < m; ++k) {
            w.push_back(suite::uniform(rng, 0.01, 1.0));
            total += w.back();
            p.push_back(suite::uniform_int(rng, 0, 12));
        }
        for (double& x : w) x /= total;
        CHECK(std::abs(convex_obstruction_value(s, f, w, p) - f.evaluate(xi)) < 1e-10);
    }
}
