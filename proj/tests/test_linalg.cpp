#include <catch2/catch_amalgamated.hpp>

#include "sullivan/linalg.hpp"

#include "support.hpp"

using namespace sullivan;
using test_support::Rng;

namespace {

SparseMatrix identity(int n) {
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m.set(i, i, 1);
    return m;
}

std::vector<Rational> recombine(const std::vector<std::vector<Rational>>& vectors,
                                const std::vector<Rational>& coeffs) {
    std::vector<Rational> out(vectors.empty() ? 0 : vectors.front().size(), Rational(0));
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t c = 0; c < out.size(); ++c)
            out[c] += coeffs[i] * vectors[i][c];
    return out;
}

}  // namespace

TEST_CASE("rank of small matrices") {
    CHECK(rank(SparseMatrix(0, 0)) == 0);
    CHECK(rank(identity(2)) == 2);

    // Degree-8 ideal-slice matrix of the n=2 flag quotient; full rank by
    // hand elimination.
    SparseMatrix m = SparseMatrix::from_rows({
        {1, 1, 1, 0, 0},
        {0, 1, 1, 1, 0},
        {0, 0, 1, 1, 1},
        {0, 1, 1, 0, 0},
        {0, 0, 1, 1, 0},
    });
    CHECK(rank(m) == 5);
}

TEST_CASE("rank equals rank of transpose") {
    Rng rng(20240811);
    for (int trial = 0; trial < 60; ++trial) {
        SparseMatrix m = test_support::random_matrix(1 + trial % 6, 1 + (trial / 2) % 7, rng);
        CHECK(rank(m) == rank(transpose(m)));
    }
}

TEST_CASE("kernel basis") {
    CHECK(kernel_basis(identity(3)).empty());
    CHECK(kernel_basis(SparseMatrix(2, 3)).size() == 3);

    SparseMatrix row = SparseMatrix::from_rows({{1, 1, 1}});
    auto basis = kernel_basis(row);
    REQUIRE(basis.size() == 2);
    for (const auto& v : basis) {
        Rational dot = v[0] + v[1] + v[2];
        CHECK(dot == 0);
    }
}

TEST_CASE("rank-nullity holds on random matrices") {
    Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        SparseMatrix m = test_support::random_matrix(1 + trial % 5, 1 + trial % 8, rng);
        auto kernel = kernel_basis(m);
        CHECK(rank(m) + static_cast<int>(kernel.size()) == m.cols());
        // Every kernel vector is annihilated exactly.
        auto rows = m.to_rows();
        for (const auto& v : kernel) {
            for (const auto& row : rows) {
                Rational dot = 0;
                for (std::size_t c = 0; c < row.size(); ++c)
                    dot += row[c] * v[c];
                CHECK(dot == 0);
            }
        }
    }
}

TEST_CASE("solve_in_span") {
    std::vector<std::vector<Rational>> single{{1, 0}};
    auto found = solve_in_span(single, {2, 0});
    REQUIRE(found.has_value());
    CHECK((*found)[0] == 2);

    CHECK_FALSE(solve_in_span(single, {0, 1}).has_value());

    std::vector<std::vector<Rational>> pair{{1, 1, 1, 0, 0}, {0, 1, 1, 1, 0}};
    auto combo = solve_in_span(pair, {1, 0, 0, -1, 0});
    REQUIRE(combo.has_value());
    CHECK((*combo)[0] == 1);
    CHECK((*combo)[1] == -1);

    CHECK_THROWS_AS(solve_in_span(pair, {1, 0}), std::invalid_argument);
}

TEST_CASE("solve_in_span recombines exactly") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        int len = 2 + trial % 5;
        int count = 1 + trial % 4;
        std::vector<std::vector<Rational>> span;
        for (int i = 0; i < count; ++i) {
            std::vector<Rational> v(static_cast<std::size_t>(len));
            for (auto& x : v)
                x = test_support::random_coefficient(rng);
            span.push_back(std::move(v));
        }
        // Build a target that is certainly in the span.
        std::vector<Rational> weights(static_cast<std::size_t>(count));
        for (auto& w : weights)
            w = test_support::random_coefficient(rng);
        std::vector<Rational> target = recombine(span, weights);

        auto coeffs = solve_in_span(span, target);
        REQUIRE(coeffs.has_value());
        CHECK(recombine(span, *coeffs) == target);
    }
}

TEST_CASE("row span tracks rank incrementally") {
    RowSpan span(3);
    CHECK(span.add({1, 1, 0}));
    CHECK_FALSE(span.add({2, 2, 0}));
    CHECK(span.add({0, 0, 1}));
    CHECK(span.rank() == 2);
    CHECK(span.contains({3, 3, 5}));
    CHECK_FALSE(span.contains({1, 0, 0}));
}
