#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sullivan/graded_algebra.hpp"
#include "sullivan/linalg.hpp"

namespace sullivan {

/// Outcome of a structural check, with offending generators when it fails.
struct CheckReport {
    bool pass = true;
    std::string detail;
    std::vector<std::string> witnesses;

    static CheckReport ok() { return {}; }

    static CheckReport fail(std::string detail, std::vector<std::string> witnesses = {}) {
        return {false, std::move(detail), std::move(witnesses)};
    }
};

/// Free CDGA (Lambda V, d): a finite generator list plus a differential
/// assignment per generator. `make` certifies d^2 = 0 and degree
/// homogeneity; `make_unchecked` skips the mathematical checks so that
/// suspect models can be built and diagnosed via check_d_squared.
class FreeCdga {
public:
    static FreeCdga make(std::vector<Generator> generators,
                         std::map<std::string, Element> differential);

    static FreeCdga make_unchecked(std::vector<Generator> generators,
                                   std::map<std::string, Element> differential) {
        FreeCdga c;
        c.init(std::move(generators), std::move(differential));
        return c;
    }

    const std::vector<Generator>& generators() const { return gens_; }

    bool has_generator(const std::string& name) const { return by_name_.count(name) != 0; }

    const Generator& generator(const std::string& name) const {
        auto it = by_name_.find(name);
        if (it == by_name_.end())
            throw ValidationError("unknown generator '" + name + "'");
        return gens_[it->second];
    }

    /// Position in the generator list; used by deterministic tie-breaks.
    std::size_t generator_index(const std::string& name) const {
        auto it = by_name_.find(name);
        if (it == by_name_.end())
            throw ValidationError("unknown generator '" + name + "'");
        return it->second;
    }

    const Element& differential(const std::string& name) const {
        static const Element zero;
        if (!has_generator(name))
            throw ValidationError("unknown generator '" + name + "'");
        auto it = diff_.find(name);
        return it == diff_.end() ? zero : it->second;
    }

    const std::map<std::string, Element>& differentials() const { return diff_; }

    friend bool operator==(const FreeCdga&, const FreeCdga&) = default;

private:
    void init(std::vector<Generator> generators, std::map<std::string, Element> differential) {
        gens_ = std::move(generators);
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i].degree < 1)
                throw ValidationError("generator '" + gens_[i].name +
                                      "' has degree < 1");
            if (!by_name_.emplace(gens_[i].name, i).second)
                throw ValidationError("duplicate generator name '" + gens_[i].name + "'");
        }
        for (auto& [name, image] : differential) {
            if (!has_generator(name))
                throw ValidationError("differential assigned to unknown generator '" +
                                      name + "'");
            for (const auto& [m, c] : image.terms())
                for (const auto& [g, e] : m.factors())
                    if (!has_generator(g.name) || !(generator(g.name) == g))
                        throw ValidationError("differential of '" + name +
                                              "' uses foreign generator '" + g.name + "'");
            if (!image.is_zero())
                diff_.emplace(name, std::move(image));
        }
    }

    std::vector<Generator> gens_;
    std::map<std::string, Element> diff_;
    std::map<std::string, std::size_t> by_name_;
};

/// Leibniz extension of the generator differential; raises degree by 1
/// on homogeneous input.
inline Element apply_d(const FreeCdga& c, const Element& e) {
    Element out;
    for (const auto& [m, coef] : e.terms()) {
        Element prefix = Element::constant(coef);
        int prefix_degree = 0;
        const auto& factors = m.factors();
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const auto& [gen, exp] = factors[i];
            const Element& dg = c.differential(gen.name);
            if (!dg.is_zero()) {
                // d(g^e) = e g^(e-1) dg, with the Koszul sign of moving
                // d past the even prefix already accumulated.
                Element term = prefix;
                if (exp > 1)
                    term = mul(term, Element::from_monomial(Monomial::generator(gen, exp - 1),
                                                            Rational(exp)));
                term = mul(term, dg);
                for (std::size_t j = i + 1; j < factors.size(); ++j)
                    term = mul(term, Element::from_monomial(Monomial::generator(
                        factors[j].first, factors[j].second)));
                if (prefix_degree % 2 != 0)
                    term *= Rational(-1);
                out += term;
            }
            prefix = mul(prefix, Element::from_monomial(Monomial::generator(gen, exp)));
            prefix_degree += gen.degree * exp;
        }
    }
    return out;
}

/// Applies d twice to every generator; passes iff every result is zero.
inline CheckReport check_d_squared(const FreeCdga& c) {
    CheckReport report;
    std::ostringstream detail;
    for (const auto& g : c.generators()) {
        Element dd = apply_d(c, apply_d(c, Element::from_generator(g)));
        if (!dd.is_zero()) {
            report.pass = false;
            report.witnesses.push_back(g.name);
            detail << "d^2(" << g.name << ") != 0; ";
        }
    }
    report.detail = report.pass ? "d^2 = 0 on all generators" : detail.str();
    return report;
}

inline FreeCdga FreeCdga::make(std::vector<Generator> generators,
                               std::map<std::string, Element> differential) {
    FreeCdga c;
    c.init(std::move(generators), std::move(differential));
    for (const auto& [name, image] : c.diff_)
        if (!image.is_homogeneous_of_degree(c.generator(name).degree + 1))
            throw ValidationError("differential of '" + name +
                                  "' is not homogeneous of degree " +
                                  std::to_string(c.generator(name).degree + 1));
    CheckReport d2 = check_d_squared(c);
    if (!d2.pass)
        throw ValidationError("d^2 != 0 (witness: " + d2.witnesses.front() + ")");
    return c;
}

/// Matrix of apply_d from basis_of_degree(d) to basis_of_degree(d+1) in
/// canonical bases. Rows are indexed by the source basis.
inline SparseMatrix differential_matrix(const FreeCdga& c, int d) {
    std::vector<Monomial> source = basis_of_degree(c.generators(), d);
    std::vector<Monomial> target = basis_of_degree(c.generators(), d + 1);
    std::map<Monomial, int> column;
    for (std::size_t j = 0; j < target.size(); ++j)
        column.emplace(target[j], static_cast<int>(j));

    SparseMatrix m(static_cast<int>(source.size()), static_cast<int>(target.size()));
    for (std::size_t i = 0; i < source.size(); ++i) {
        Element image = apply_d(c, Element::from_monomial(source[i]));
        for (const auto& [mono, coef] : image.terms()) {
            auto it = column.find(mono);
            if (it == column.end())
                throw ValidationError("differential image leaves the degree slice at degree " +
                                      std::to_string(d));
            m.set(static_cast<int>(i), it->second, coef);
        }
    }
    return m;
}

/// Degree-indexed cohomology dimensions with an explicit computed bound.
struct BettiTable {
    std::map<int, long long> dims;
    int up_to = -1;

    long long at(int d) const {
        if (d < 0 || d > up_to)
            throw std::out_of_range("BettiTable: degree " + std::to_string(d) +
                                    " beyond computed bound " + std::to_string(up_to));
        auto it = dims.find(d);
        return it == dims.end() ? 0 : it->second;
    }
};

inline bool betti_equal(const BettiTable& a, const BettiTable& b, int up_to) {
    if (a.up_to < up_to || b.up_to < up_to)
        throw std::out_of_range("betti_equal: tables not computed far enough");
    for (int d = 0; d <= up_to; ++d)
        if (a.at(d) != b.at(d))
            return false;
    return true;
}

/// b_d = dim ker(d_d) - rank(d_{d-1}) for all d <= up_to.
inline BettiTable betti(const FreeCdga& c, int up_to) {
    if (up_to < 0)
        throw std::invalid_argument("betti: negative bound");
    BettiTable table;
    table.up_to = up_to;
    std::vector<long long> slice_dims(static_cast<std::size_t>(up_to) + 1);
    std::vector<int> ranks(static_cast<std::size_t>(up_to) + 1);
    for (int d = 0; d <= up_to; ++d) {
        SparseMatrix m = differential_matrix(c, d);
        slice_dims[static_cast<std::size_t>(d)] = m.rows();
        ranks[static_cast<std::size_t>(d)] = rank(m);
    }
    for (int d = 0; d <= up_to; ++d) {
        long long kernel_dim =
            slice_dims[static_cast<std::size_t>(d)] - ranks[static_cast<std::size_t>(d)];
        long long boundary_rank = d == 0 ? 0 : ranks[static_cast<std::size_t>(d - 1)];
        table.dims[d] = kernel_dim - boundary_rank;
    }
    return table;
}

namespace detail {

inline std::vector<Rational> element_coordinates(const Element& e,
                                                 const std::vector<Monomial>& basis) {
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i)
        index.emplace(basis[i], i);
    std::vector<Rational> coords(basis.size(), Rational(0));
    for (const auto& [m, c] : e.terms()) {
        auto it = index.find(m);
        if (it == index.end())
            throw ValidationError("element has a term outside the degree slice");
        coords[it->second] = c;
    }
    return coords;
}

inline Element element_from_coordinates(const std::vector<Rational>& coords,
                                        const std::vector<Monomial>& basis) {
    Element e;
    for (std::size_t i = 0; i < coords.size(); ++i)
        e.add_term(basis[i], coords[i]);
    return e;
}

/// Cocycle representatives of H^d plus the coboundary row space they
/// are taken modulo.
struct CohomologySlice {
    std::vector<Monomial> basis;
    std::vector<std::vector<Rational>> coboundary_rows;   // rows of d_{d-1}
    std::vector<std::vector<Rational>> representatives;   // one per cohomology class
};

inline CohomologySlice cohomology_slice(const FreeCdga& c, int d) {
    CohomologySlice slice;
    slice.basis = basis_of_degree(c.generators(), d);

    RowSpan span(slice.basis.size());
    if (d > 0) {
        SparseMatrix below = differential_matrix(c, d - 1);
        for (const auto& row : below.to_rows()) {
            slice.coboundary_rows.push_back(row);
            span.add(row);
        }
    }
    SparseMatrix out = differential_matrix(c, d);
    for (auto& v : kernel_basis(transpose(out)))
        if (span.add(v))
            slice.representatives.push_back(std::move(v));
    return slice;
}

}  // namespace detail

/// Generator-wise assignment between two free CDGAs. Whether it is
/// degree-preserving and commutes with differentials is checked by
/// check_morphism, not assumed.
class CdgaMorphism {
public:
    static CdgaMorphism make(FreeCdga source, FreeCdga target,
                             std::map<std::string, Element> images) {
        CdgaMorphism m;
        m.source_ = std::move(source);
        m.target_ = std::move(target);
        for (const auto& g : m.source_.generators())
            if (!images.count(g.name))
                throw ValidationError("morphism: no image for generator '" + g.name + "'");
        for (const auto& [name, image] : images) {
            if (!m.source_.has_generator(name))
                throw ValidationError("morphism: image assigned to unknown generator '" +
                                      name + "'");
            for (const auto& [mono, c] : image.terms())
                for (const auto& [g, e] : mono.factors())
                    if (!m.target_.has_generator(g.name) || !(m.target_.generator(g.name) == g))
                        throw ValidationError("morphism: image of '" + name +
                                              "' uses generator '" + g.name +
                                              "' foreign to the target");
        }
        m.images_ = std::move(images);
        return m;
    }

    static CdgaMorphism identity(const FreeCdga& c) {
        std::map<std::string, Element> images;
        for (const auto& g : c.generators())
            images.emplace(g.name, Element::from_generator(g));
        return make(c, c, std::move(images));
    }

    const FreeCdga& source() const { return source_; }
    const FreeCdga& target() const { return target_; }
    const std::map<std::string, Element>& images() const { return images_; }

    const Element& image(const std::string& name) const {
        auto it = images_.find(name);
        if (it == images_.end())
            throw ValidationError("morphism: unknown generator '" + name + "'");
        return it->second;
    }

    Element apply(const Element& e) const {
        return apply_generator_map(e, [&](const Generator& g) { return image(g.name); });
    }

private:
    FreeCdga source_;
    FreeCdga target_;
    std::map<std::string, Element> images_;
};

/// g after f.
inline CdgaMorphism compose(const CdgaMorphism& g, const CdgaMorphism& f) {
    std::map<std::string, Element> images;
    for (const auto& gen : f.source().generators())
        images.emplace(gen.name, g.apply(f.image(gen.name)));
    return CdgaMorphism::make(f.source(), g.target(), std::move(images));
}

/// Passes iff every image is homogeneous of the generator's degree and
/// d(f(g)) = f(d(g)) exactly for every source generator g.
inline CheckReport check_morphism(const CdgaMorphism& m) {
    CheckReport report;
    std::ostringstream detail;
    for (const auto& g : m.source().generators()) {
        const Element& image = m.image(g.name);
        if (!image.is_homogeneous_of_degree(g.degree)) {
            report.pass = false;
            report.witnesses.push_back(g.name);
            detail << "image of " << g.name << " is not homogeneous of degree " << g.degree
                   << "; ";
            continue;
        }
        Element lhs = apply_d(m.target(), image);
        Element rhs = m.apply(apply_d(m.source(), Element::from_generator(g)));
        if (!(lhs == rhs)) {
            report.pass = false;
            report.witnesses.push_back(g.name);
            detail << "d(f(" << g.name << ")) != f(d(" << g.name << ")); ";
        }
    }
    report.detail = report.pass ? "commutes with differentials" : detail.str();
    return report;
}

/// Decidable isomorphism criterion: the linear part (images modulo
/// decomposables) is a degree-wise bijection of generator spaces.
/// Requires check_morphism to pass.
inline bool is_isomorphism(const CdgaMorphism& m) {
    CheckReport chk = check_morphism(m);
    if (!chk.pass)
        throw ValidationError("is_isomorphism: morphism does not commute with differentials (" +
                              chk.detail + ")");

    std::map<int, std::vector<Generator>> source_by_degree, target_by_degree;
    for (const auto& g : m.source().generators())
        source_by_degree[g.degree].push_back(g);
    for (const auto& g : m.target().generators())
        target_by_degree[g.degree].push_back(g);

    std::set<int> degrees;
    for (const auto& [d, gens] : source_by_degree)
        degrees.insert(d);
    for (const auto& [d, gens] : target_by_degree)
        degrees.insert(d);

    for (int d : degrees) {
        const auto& src = source_by_degree[d];
        const auto& tgt = target_by_degree[d];
        if (src.size() != tgt.size())
            return false;
        SparseMatrix linear(static_cast<int>(src.size()), static_cast<int>(tgt.size()));
        for (std::size_t i = 0; i < src.size(); ++i) {
            const Element& image = m.image(src[i].name);
            for (std::size_t j = 0; j < tgt.size(); ++j)
                linear.set(static_cast<int>(i), static_cast<int>(j),
                           image.linear_coefficient(tgt[j]));
        }
        if (rank(linear) != static_cast<int>(src.size()))
            return false;
    }
    return true;
}

/// Per-degree matrices of the induced map on cohomology, in the chosen
/// representative bases; quasi_iso is true iff every matrix is square
/// and invertible.
struct InducedCohomologyMap {
    std::map<int, SparseMatrix> matrices;
    bool quasi_iso = true;
    int up_to = -1;
};

inline InducedCohomologyMap induced_cohomology_map(const CdgaMorphism& m, int up_to) {
    CheckReport chk = check_morphism(m);
    if (!chk.pass)
        throw ValidationError("induced_cohomology_map: morphism does not commute (" +
                              chk.detail + ")");

    InducedCohomologyMap out;
    out.up_to = up_to;
    for (int d = 0; d <= up_to; ++d) {
        detail::CohomologySlice src = detail::cohomology_slice(m.source(), d);
        detail::CohomologySlice tgt = detail::cohomology_slice(m.target(), d);

        // Span to decompose images: target representatives first, then
        // coboundaries; the leading coefficients are the class coordinates.
        std::vector<std::vector<Rational>> span = tgt.representatives;
        span.insert(span.end(), tgt.coboundary_rows.begin(), tgt.coboundary_rows.end());

        SparseMatrix matrix(static_cast<int>(src.representatives.size()),
                            static_cast<int>(tgt.representatives.size()));
        for (std::size_t i = 0; i < src.representatives.size(); ++i) {
            Element rep = detail::element_from_coordinates(src.representatives[i], src.basis);
            Element image = m.apply(rep);
            auto coords = detail::element_coordinates(image, tgt.basis);
            auto solution = solve_in_span(span, coords);
            if (!solution)
                throw ValidationError(
                    "induced_cohomology_map: image of a cocycle is not a cocycle in degree " +
                    std::to_string(d));
            for (std::size_t j = 0; j < tgt.representatives.size(); ++j)
                matrix.set(static_cast<int>(i), static_cast<int>(j), (*solution)[j]);
        }
        bool invertible = src.representatives.size() == tgt.representatives.size() &&
                          rank(matrix) == static_cast<int>(src.representatives.size());
        if (!invertible)
            out.quasi_iso = false;
        out.matrices.emplace(d, std::move(matrix));
    }
    return out;
}

/// Pure Sullivan algebra test: every even non-base generator is closed
/// and every odd generator's differential lies in the subalgebra
/// generated by the even generators together with the base.
inline bool is_pure(const FreeCdga& c, const std::set<std::string>& base_generators = {}) {
    for (const auto& name : base_generators)
        if (!c.has_generator(name))
            throw ValidationError("is_pure: unknown generator '" + name + "'");

    std::set<std::string> allowed = base_generators;
    for (const auto& g : c.generators())
        if (!g.is_odd())
            allowed.insert(g.name);

    for (const auto& g : c.generators()) {
        const Element& dg = c.differential(g.name);
        if (g.is_odd()) {
            for (const auto& [m, coef] : dg.terms())
                for (const auto& [factor, exp] : m.factors())
                    if (!allowed.count(factor.name))
                        return false;
        } else if (!base_generators.count(g.name) && !dg.is_zero()) {
            return false;
        }
    }
    return true;
}

}  // namespace sullivan
