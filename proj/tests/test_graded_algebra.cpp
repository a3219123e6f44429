#include <catch2/catch_amalgamated.hpp>

#include "sullivan/graded_algebra.hpp"

#include <algorithm>
#include <vector>

#include "support.hpp"

using namespace sullivan;
using test_support::Rng;

namespace {

const Generator a2{"a2", 2};
const Generator b2{"b2", 2};
const Generator z2{"z2", 2};
const Generator x2{"x2", 2};
const Generator y2{"y2", 2};
const Generator v1{"v1", 1};
const Generator v3{"v3", 3};
const Generator v5{"v5", 5};

Element gen(const Generator& g) { return Element::from_generator(g); }

}  // namespace

TEST_CASE("mono_mul odd squares vanish") {
    Monomial m = Monomial::generator(v3);
    auto r = mono_mul(m, m);
    CHECK_FALSE(r.product.has_value());
}

TEST_CASE("mono_mul Koszul sign for odd generators") {
    Monomial m3 = Monomial::generator(v3);
    Monomial m5 = Monomial::generator(v5);

    auto forward = mono_mul(m3, m5);
    REQUIRE(forward.product.has_value());
    CHECK(forward.sign == 1);

    auto backward = mono_mul(m5, m3);
    REQUIRE(backward.product.has_value());
    CHECK(backward.sign == -1);
    CHECK(*backward.product == *forward.product);
}

TEST_CASE("mono_mul even generators commute") {
    auto ab = mono_mul(Monomial::generator(a2), Monomial::generator(b2));
    auto ba = mono_mul(Monomial::generator(b2), Monomial::generator(a2));
    REQUIRE(ab.product.has_value());
    REQUIRE(ba.product.has_value());
    CHECK(ab.sign == 1);
    CHECK(ba.sign == 1);
    CHECK(*ab.product == *ba.product);
}

TEST_CASE("mul expands binomials") {
    Element sum = gen(a2) + gen(b2);
    Element square = mul(sum, sum);

    Element expected;
    expected.add_term(Monomial::generator(a2, 2), 1);
    expected.add_term(*mono_mul(Monomial::generator(a2), Monomial::generator(b2)).product, 2);
    expected.add_term(Monomial::generator(b2, 2), 1);
    CHECK(square == expected);
}

TEST_CASE("telescoping identity (x - y) * sum x^{2-i} y^i = x^3 - y^3") {
    Element sum;
    sum.add_term(Monomial::generator(x2, 2), 1);
    sum.add_term(*mono_mul(Monomial::generator(x2), Monomial::generator(y2)).product, 1);
    sum.add_term(Monomial::generator(y2, 2), 1);

    Element product = mul(gen(x2) - gen(y2), sum);

    Element expected;
    expected.add_term(Monomial::generator(x2, 3), 1);
    expected.add_term(Monomial::generator(y2, 3), -1);
    CHECK(product == expected);
}

TEST_CASE("odd times even commutes") {
    Element evens = gen(a2) + gen(b2) + gen(z2);
    CHECK(mul(gen(v1), evens) == mul(evens, gen(v1)));
}

TEST_CASE("substitute performs the paper's change of variables") {
    // a2 b2 + (a2 + b2) z2 with z2 -> -(a2 + b2) gives a2 b2 - (a2 + b2)^2.
    Element input = mul(gen(a2), gen(b2)) + mul(gen(a2) + gen(b2), gen(z2));
    Element image = substitute(input, {{"z2", -(gen(a2) + gen(b2))}});
    Element expected = mul(gen(a2), gen(b2)) - mul(gen(a2) + gen(b2), gen(a2) + gen(b2));
    CHECK(image == expected);
}

TEST_CASE("substitute x -> x - y on the Chern form") {
    Element input;
    input.add_term(Monomial::generator(x2, 2), 1);
    input.add_term(*mono_mul(Monomial::generator(x2), Monomial::generator(y2)).product, 3);
    input.add_term(Monomial::generator(y2, 2), 3);

    Element image = substitute(input, {{"x2", gen(x2) - gen(y2)}});

    Element expected;
    expected.add_term(Monomial::generator(x2, 2), 1);
    expected.add_term(*mono_mul(Monomial::generator(x2), Monomial::generator(y2)).product, 1);
    expected.add_term(Monomial::generator(y2, 2), 1);
    CHECK(image == expected);
}

TEST_CASE("identity substitution is the identity") {
    Rng rng(31);
    auto gens = test_support::mixed_generators();
    for (int trial = 0; trial < 25; ++trial) {
        Element e = test_support::random_element(gens, 8, rng);
        CHECK(substitute(e, {}) == e);
    }
}

TEST_CASE("substitute rejects degree mismatches") {
    Element input = gen(a2);
    CHECK_THROWS_AS(substitute(input, {{"a2", gen(v3)}}), ValidationError);
}

TEST_CASE("basis_of_degree enumerates canonical monomials") {
    Generator y5{"y5", 5};

    auto degree0 = basis_of_degree({y2, y5}, 0);
    REQUIRE(degree0.size() == 1);
    CHECK(degree0.front().is_one());

    auto degree7 = basis_of_degree({y2, y5}, 7);
    REQUIRE(degree7.size() == 1);
    CHECK(degree7.front() == *mono_mul(Monomial::generator(y2), Monomial::generator(y5)).product);

    auto degree4 = basis_of_degree({a2, b2}, 4);
    REQUIRE(degree4.size() == 3);
    CHECK(degree4[0] == Monomial::generator(a2, 2));
    CHECK(degree4[1] ==
          *mono_mul(Monomial::generator(a2), Monomial::generator(b2)).product);
    CHECK(degree4[2] == Monomial::generator(b2, 2));
}

TEST_CASE("two even generators give k+1 monomials in degree 2k") {
    for (int k = 0; k <= 10; ++k)
        CHECK(basis_of_degree({a2, b2}, 2 * k).size() == static_cast<std::size_t>(k) + 1);
}

TEST_CASE("graded commutativity on random homogeneous elements") {
    Rng rng(101);
    auto gens = test_support::mixed_generators();
    std::uniform_int_distribution<int> deg(1, 7);
    int nontrivial = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int d1 = deg(rng), d2 = deg(rng);
        Element e1 = test_support::random_homogeneous(gens, d1, rng);
        Element e2 = test_support::random_homogeneous(gens, d2, rng);
        Element forward = mul(e1, e2);
        Element backward = mul(e2, e1);
        if (d1 % 2 == 1 && d2 % 2 == 1)
            backward *= Rational(-1);
        CHECK(forward == backward);
        if (!forward.is_zero())
            ++nontrivial;
    }
    CHECK(nontrivial > 100);
}

TEST_CASE("associativity and distributivity on random triples") {
    Rng rng(202);
    auto gens = test_support::mixed_generators();
    for (int trial = 0; trial < 150; ++trial) {
        Element a = test_support::random_element(gens, 6, rng);
        Element b = test_support::random_element(gens, 6, rng);
        Element c = test_support::random_element(gens, 6, rng);
        CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
        CHECK(mul(a, b + c) == mul(a, b) + mul(a, c));
    }
}

TEST_CASE("substitution composes") {
    Rng rng(303);
    std::vector<Generator> gens{a2, b2, z2};
    for (int trial = 0; trial < 40; ++trial) {
        Element e = test_support::random_element(gens, 8, rng);
        std::map<std::string, Element> sigma{{"z2", gen(a2) + gen(b2)}};
        std::map<std::string, Element> tau{{"a2", gen(b2) * Rational(2)}, {"b2", gen(a2)}};

        Element via_steps = substitute(substitute(e, sigma), tau);

        // tau after sigma, as a single assignment.
        std::map<std::string, Element> composed;
        for (const auto& g : gens) {
            auto it = sigma.find(g.name);
            Element image = it == sigma.end() ? gen(g) : it->second;
            composed[g.name] = substitute(image, tau);
        }
        CHECK(via_steps == substitute(e, composed));
    }
}

TEST_CASE("canonical form survives term reordering") {
    Rng rng(404);
    auto gens = test_support::mixed_generators();
    for (int trial = 0; trial < 25; ++trial) {
        Element e = test_support::random_element(gens, 7, rng);
        std::vector<std::pair<Monomial, Rational>> terms(e.terms().begin(), e.terms().end());
        std::shuffle(terms.begin(), terms.end(), rng);
        Element rebuilt;
        for (const auto& [m, c] : terms)
            rebuilt.add_term(m, c);
        CHECK(rebuilt == e);
    }
}
