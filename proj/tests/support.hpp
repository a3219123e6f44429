#pragma once

// Shared helpers for the test suites: deterministic random elements and
// a few fixture algebras.

#include <random>
#include <vector>

#include "sullivan/cdga.hpp"

namespace test_support {

using namespace sullivan;

using Rng = std::mt19937;

inline Rational random_coefficient(Rng& rng) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    return Rational(num(rng)) / Rational(den(rng));
}

/// Random homogeneous element of the given degree: random coefficients
/// against the canonical monomial basis.
inline Element random_homogeneous(const std::vector<Generator>& gens, int degree, Rng& rng,
                                  double density = 0.5) {
    Element e;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (const Monomial& m : basis_of_degree(gens, degree))
        if (coin(rng) < density)
            e.add_term(m, random_coefficient(rng));
    return e;
}

/// Random element mixing a few degrees.
inline Element random_element(const std::vector<Generator>& gens, int max_degree, Rng& rng,
                              double density = 0.35) {
    Element e;
    std::uniform_int_distribution<int> deg(0, max_degree);
    int d1 = deg(rng), d2 = deg(rng);
    e += random_homogeneous(gens, d1, rng, density);
    e += random_homogeneous(gens, d2, rng, density);
    return e;
}

/// Mixed-parity generator set exercising Koszul signs.
inline std::vector<Generator> mixed_generators() {
    return {{"w1", 1}, {"a2", 2}, {"b2", 2}, {"u3", 3}, {"t4", 4}, {"s5", 5}};
}

inline SparseMatrix random_matrix(int rows, int cols, Rng& rng, double density = 0.4) {
    SparseMatrix m(rows, cols);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (coin(rng) < density)
                m.set(r, c, random_coefficient(rng));
    return m;
}

}  // namespace test_support
