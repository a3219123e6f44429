#pragma once

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sullivan/cdga.hpp"

namespace sullivan {

/// Quotient presentation Lambda(even generators)/(relations) of a
/// cohomology algebra.
class RingPresentation {
public:
    static RingPresentation make(std::vector<Generator> even_generators,
                                 std::vector<Element> relations) {
        RingPresentation p;
        std::set<std::string> names;
        for (const auto& g : even_generators) {
            if (g.is_odd())
                throw ValidationError("RingPresentation: generator '" + g.name +
                                      "' has odd degree");
            if (!names.insert(g.name).second)
                throw ValidationError("RingPresentation: duplicate generator '" + g.name +
                                      "'");
        }
        for (const auto& r : relations) {
            if (!r.is_homogeneous() || r.is_zero())
                throw ValidationError("RingPresentation: relations must be homogeneous "
                                      "and nonzero");
            for (const auto& [m, c] : r.terms())
                for (const auto& [g, e] : m.factors())
                    if (!names.count(g.name))
                        throw ValidationError("RingPresentation: relation uses unknown "
                                              "generator '" + g.name + "'");
        }
        p.even_generators_ = std::move(even_generators);
        p.relations_ = std::move(relations);
        return p;
    }

    const std::vector<Generator>& even_generators() const { return even_generators_; }
    const std::vector<Element>& relations() const { return relations_; }

private:
    std::vector<Generator> even_generators_;
    std::vector<Element> relations_;
};

/// Dimension of each degree slice of the quotient: monomial count minus
/// the rank of the span of { m * g : g a relation, deg m + deg g = d }.
inline BettiTable quotient_dimensions(const RingPresentation& p, int up_to) {
    if (up_to < 0)
        throw std::invalid_argument("quotient_dimensions: negative bound");
    BettiTable table;
    table.up_to = up_to;
    for (int d = 0; d <= up_to; ++d) {
        std::vector<Monomial> basis = basis_of_degree(p.even_generators(), d);
        std::map<Monomial, int> column;
        for (std::size_t j = 0; j < basis.size(); ++j)
            column.emplace(basis[j], static_cast<int>(j));

        std::vector<std::vector<Rational>> rows;
        for (const Element& relation : p.relations()) {
            int rel_degree = *relation.homogeneous_degree();
            if (rel_degree > d)
                continue;
            for (const Monomial& m : basis_of_degree(p.even_generators(), d - rel_degree)) {
                Element multiple = mul(Element::from_monomial(m), relation);
                std::vector<Rational> row(basis.size(), Rational(0));
                for (const auto& [mono, coef] : multiple.terms())
                    row[static_cast<std::size_t>(column.at(mono))] = coef;
                rows.push_back(std::move(row));
            }
        }
        table.dims[d] = static_cast<long long>(basis.size()) -
                        rank(SparseMatrix::from_rows(rows));
    }
    return table;
}

/// Independent Leray-Hirsch oracle for P(E) over CP^n: coefficients of
/// (sum_{j<n} t^{2j}) (sum_{k<=n} t^{2k}); total n(n+1), top degree 4n-2.
inline BettiTable poincare_product_oracle(int n) {
    if (n < 2)
        throw std::invalid_argument("poincare_product_oracle: n must be >= 2");
    BettiTable table;
    table.up_to = 4 * n;
    for (int d = 0; d <= 4 * n; ++d)
        table.dims[d] = 0;
    for (int j = 0; j <= n - 1; ++j)
        for (int k = 0; k <= n; ++k)
            table.dims[2 * (j + k)] += 1;
    return table;
}

/// Certifies a presentation against a model: every relation pushed
/// through gen_map must be a coboundary, and the quotient dimensions
/// must match the model's Betti numbers degree by degree.
inline CheckReport verify_ring_presentation(const FreeCdga& c, const RingPresentation& p,
                                            const std::map<std::string, Element>& gen_map,
                                            int up_to) {
    for (const auto& g : p.even_generators()) {
        auto it = gen_map.find(g.name);
        if (it == gen_map.end())
            throw ValidationError("verify_ring_presentation: no image for generator '" +
                                  g.name + "'");
        if (!it->second.is_homogeneous_of_degree(g.degree))
            throw ValidationError("verify_ring_presentation: image of '" + g.name +
                                  "' has wrong degree");
        if (!apply_d(c, it->second).is_zero())
            throw ValidationError("verify_ring_presentation: image of '" + g.name +
                                  "' is not closed");
    }

    for (std::size_t i = 0; i < p.relations().size(); ++i) {
        Element pushed = apply_generator_map(p.relations()[i], [&](const Generator& g) {
            return gen_map.at(g.name);
        });
        if (pushed.is_zero())
            continue;
        int d = *pushed.homogeneous_degree();
        std::vector<Monomial> basis = basis_of_degree(c.generators(), d);
        std::vector<std::vector<Rational>> coboundaries =
            d == 0 ? std::vector<std::vector<Rational>>{}
                   : differential_matrix(c, d - 1).to_rows();
        auto coords = detail::element_coordinates(pushed, basis);
        if (!solve_in_span(coboundaries, coords))
            return CheckReport::fail("relation " + std::to_string(i + 1) +
                                         " is not a coboundary in the model",
                                     {std::to_string(i + 1)});
    }

    BettiTable quotient = quotient_dimensions(p, up_to);
    BettiTable model = betti(c, up_to);
    for (int d = 0; d <= up_to; ++d) {
        if (quotient.at(d) != model.at(d)) {
            std::ostringstream msg;
            msg << "dimension mismatch in degree " << d << ": presentation "
                << quotient.at(d) << " vs model " << model.at(d);
            return CheckReport::fail(msg.str(), {std::to_string(d)});
        }
    }

    CheckReport ok;
    ok.detail = "relations are coboundaries and dimensions agree up to degree " +
                std::to_string(up_to);
    return ok;
}

/// Alternating sum of dimensions. Requires the top two computed degrees
/// to vanish, as evidence that the table covers the whole cohomology.
inline long long euler_characteristic(const BettiTable& table) {
    if (table.up_to < 1)
        throw std::invalid_argument("euler_characteristic: table too short");
    if (table.at(table.up_to) != 0 || table.at(table.up_to - 1) != 0)
        throw ValidationError("euler_characteristic: non-vanishing tail at the computed "
                              "bound " + std::to_string(table.up_to));
    long long chi = 0;
    for (int d = 0; d <= table.up_to; ++d)
        chi += (d % 2 == 0) ? table.at(d) : -table.at(d);
    return chi;
}

inline long long euler_characteristic(const RingPresentation& p, int up_to) {
    return euler_characteristic(quotient_dimensions(p, up_to));
}

/// Corollary-3.2 presentation of H*(P(E)):
/// Lambda(x2, y2) / (sum_{i=0}^{n} x2^{n-i} y2^i, y2^{n+1}).
/// Relation signs are normalized to a leading +1; units do not change
/// the ideal.
inline RingPresentation projectivization_cohomology_presentation(int n) {
    if (n < 2)
        throw std::invalid_argument("projectivization_cohomology_presentation: n >= 2");
    Generator x2{"x2", 2};
    Generator y2{"y2", 2};

    Element rel1;
    for (int i = 0; i <= n; ++i) {
        std::vector<Monomial::Factor> factors;
        if (i < n)
            factors.emplace_back(x2, n - i);
        if (i > 0)
            factors.emplace_back(y2, i);
        rel1.add_term(Monomial::from_sorted_factors(std::move(factors)), 1);
    }
    Element rel2 = Element::from_monomial(Monomial::generator(y2, n + 1));
    return RingPresentation::make({x2, y2}, {std::move(rel1), std::move(rel2)});
}

/// Theorem-4.1 presentation of H*(U(n+1)/U(1) x U(1) x U(n-1)):
/// Lambda(a2, b2) / (sum_{i=0}^{n} a2^{n-i} b2^i,
///                   sum_{i=1}^{n} a2^{n-i+1} b2^i), signs normalized.
inline RingPresentation flag_cohomology_presentation(int n) {
    if (n < 2)
        throw std::invalid_argument("flag_cohomology_presentation: n >= 2");
    Generator a2{"a2", 2};
    Generator b2{"b2", 2};

    Element rel1;
    for (int i = 0; i <= n; ++i) {
        std::vector<Monomial::Factor> factors;
        if (i < n)
            factors.emplace_back(a2, n - i);
        if (i > 0)
            factors.emplace_back(b2, i);
        rel1.add_term(Monomial::from_sorted_factors(std::move(factors)), 1);
    }
    Element rel2;
    for (int i = 1; i <= n; ++i) {
        std::vector<Monomial::Factor> factors;
        factors.emplace_back(a2, n - i + 1);
        factors.emplace_back(b2, i);
        rel2.add_term(Monomial::from_sorted_factors(std::move(factors)), 1);
    }
    return RingPresentation::make({a2, b2}, {std::move(rel1), std::move(rel2)});
}

}  // namespace sullivan
