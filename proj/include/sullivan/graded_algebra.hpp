#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sullivan/rational.hpp"

namespace sullivan {

/// A named generator of a free graded-commutative algebra. Parity is
/// determined by the degree: even generators are polynomial, odd ones
/// exterior.
struct Generator {
    std::string name;
    int degree = 0;

    bool is_odd() const { return degree % 2 != 0; }

    friend bool operator==(const Generator&, const Generator&) = default;
};

/// Canonical generator order: by degree, then name.
inline bool generator_less(const Generator& a, const Generator& b) {
    return a.degree != b.degree ? a.degree < b.degree : a.name < b.name;
}

/// Product of generator powers in canonical form: factors sorted by
/// (degree, name), exponents >= 1, odd generators appear with exponent
/// exactly 1.
class Monomial {
public:
    using Factor = std::pair<Generator, int>;

    Monomial() = default;

    /// Factors must already be sorted canonically with valid exponents.
    static Monomial from_sorted_factors(std::vector<Factor> factors) {
        Monomial m;
        int degree = 0;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const auto& [gen, exp] = factors[i];
            if (exp < 1)
                throw std::invalid_argument("Monomial: exponent must be >= 1");
            if (gen.is_odd() && exp != 1)
                throw std::invalid_argument("Monomial: odd generator squared is zero");
            if (i > 0 && !generator_less(factors[i - 1].first, gen))
                throw std::invalid_argument("Monomial: factors not in canonical order");
            degree += gen.degree * exp;
        }
        m.factors_ = std::move(factors);
        m.degree_ = degree;
        return m;
    }

    static Monomial one() { return Monomial(); }

    static Monomial generator(const Generator& g, int exp = 1) {
        return from_sorted_factors({{g, exp}});
    }

    const std::vector<Factor>& factors() const { return factors_; }
    int degree() const { return degree_; }
    bool is_one() const { return factors_.empty(); }

    bool contains(const std::string& name) const {
        return std::any_of(factors_.begin(), factors_.end(),
                           [&](const Factor& f) { return f.first.name == name; });
    }

    int exponent_of(const std::string& name) const {
        for (const auto& [gen, exp] : factors_)
            if (gen.name == name)
                return exp;
        return 0;
    }

    /// True iff the monomial is a single generator to the first power.
    std::optional<Generator> as_single_generator() const {
        if (factors_.size() == 1 && factors_.front().second == 1)
            return factors_.front().first;
        return std::nullopt;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;

    /// Total order: total degree first, then lexicographic on factors
    /// with smaller generators first and, for equal generators, larger
    /// exponents first. Gives a2^2 < a2*b2 < b2^2 in degree 4.
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.degree_ != b.degree_)
            return a.degree_ < b.degree_;
        std::size_t i = 0, j = 0;
        while (i < a.factors_.size() && j < b.factors_.size()) {
            const auto& [ga, ea] = a.factors_[i];
            const auto& [gb, eb] = b.factors_[j];
            if (!(ga == gb))
                return generator_less(ga, gb);
            if (ea != eb)
                return ea > eb;
            ++i;
            ++j;
        }
        return false;  // equal degree with common prefix exhausts both
    }

private:
    std::vector<Factor> factors_;
    int degree_ = 0;
};

struct MonoMulResult {
    int sign = 1;                      // +1 or -1
    std::optional<Monomial> product;   // absent iff an odd generator repeats
};

/// Koszul-signed merge of two canonical monomials. The sign is
/// (-1)^(number of transpositions of odd factors during the merge).
inline MonoMulResult mono_mul(const Monomial& m1, const Monomial& m2) {
    const auto& f1 = m1.factors();
    const auto& f2 = m2.factors();
    std::vector<Monomial::Factor> merged;
    merged.reserve(f1.size() + f2.size());

    int odd_remaining = 0;
    for (const auto& [gen, exp] : f1)
        if (gen.is_odd())
            ++odd_remaining;

    int sign = 1;
    std::size_t i = 0, j = 0;
    while (i < f1.size() && j < f2.size()) {
        const auto& [ga, ea] = f1[i];
        const auto& [gb, eb] = f2[j];
        if (ga == gb) {
            if (ga.is_odd())
                return {1, std::nullopt};  // odd square vanishes
            merged.emplace_back(ga, ea + eb);
            ++i;
            ++j;
        } else if (generator_less(ga, gb)) {
            if (ga.is_odd())
                --odd_remaining;
            merged.emplace_back(ga, ea);
            ++i;
        } else {
            // gb jumps over every factor still waiting in m1.
            if (gb.is_odd() && odd_remaining % 2 != 0)
                sign = -sign;
            merged.emplace_back(gb, eb);
            ++j;
        }
    }
    for (; i < f1.size(); ++i)
        merged.push_back(f1[i]);
    for (; j < f2.size(); ++j)
        merged.push_back(f2[j]);

    return {sign, Monomial::from_sorted_factors(std::move(merged))};
}

/// Rational linear combination of canonical monomials. The zero element
/// stores no terms; no zero coefficients are kept.
class Element {
public:
    Element() = default;

    static Element zero() { return Element(); }

    static Element constant(const Rational& c) {
        Element e;
        e.add_term(Monomial::one(), c);
        return e;
    }

    static Element one() { return constant(1); }

    static Element from_monomial(const Monomial& m, const Rational& c = Rational(1)) {
        Element e;
        e.add_term(m, c);
        return e;
    }

    static Element from_generator(const Generator& g) {
        return from_monomial(Monomial::generator(g));
    }

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational linear_coefficient(const Generator& g) const {
        return coefficient(Monomial::generator(g));
    }

    /// Common degree of all terms; nullopt when zero or mixed.
    std::optional<int> homogeneous_degree() const {
        if (terms_.empty())
            return std::nullopt;
        int d = terms_.begin()->first.degree();
        for (const auto& [m, c] : terms_)
            if (m.degree() != d)
                return std::nullopt;
        return d;
    }

    bool is_homogeneous() const {
        return terms_.empty() || homogeneous_degree().has_value();
    }

    /// Zero counts as homogeneous of every degree.
    bool is_homogeneous_of_degree(int d) const {
        for (const auto& [m, c] : terms_)
            if (m.degree() != d)
                return false;
        return true;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0)
            return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    Element& operator+=(const Element& other) {
        for (const auto& [m, c] : other.terms_)
            add_term(m, c);
        return *this;
    }

    Element& operator-=(const Element& other) {
        for (const auto& [m, c] : other.terms_)
            add_term(m, -c);
        return *this;
    }

    Element& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [m, c] : terms_)
                c *= s;
        }
        return *this;
    }

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(Element a, const Rational& s) { return a *= s; }
    friend Element operator*(const Rational& s, Element a) { return a *= s; }

    Element operator-() const {
        Element e = *this;
        for (auto& [m, c] : e.terms_)
            c = -c;
        return e;
    }

    friend bool operator==(const Element&, const Element&) = default;

private:
    std::map<Monomial, Rational> terms_;
};

/// Bilinear, graded-commutative product.
inline Element mul(const Element& a, const Element& b) {
    Element out;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            MonoMulResult r = mono_mul(ma, mb);
            if (r.product)
                out.add_term(*r.product, Rational(r.sign) * ca * cb);
        }
    }
    return out;
}

inline Element operator*(const Element& a, const Element& b) { return mul(a, b); }

inline Element pow(const Element& e, int k) {
    if (k < 0)
        throw std::invalid_argument("pow: negative exponent");
    Element out = Element::one();
    for (int i = 0; i < k; ++i)
        out = mul(out, e);
    return out;
}

/// Extends a generator-wise map to the whole algebra. `image` must be
/// defined for every generator occurring in e; parities are respected
/// because multiplication carries the Koszul signs.
inline Element apply_generator_map(
    const Element& e, const std::function<Element(const Generator&)>& image) {
    Element out;
    for (const auto& [m, c] : e.terms()) {
        Element term = Element::constant(c);
        for (const auto& [gen, exp] : m.factors())
            term = mul(term, pow(image(gen), exp));
        out += term;
    }
    return out;
}

/// Algebra-morphism extension of a partial generator assignment;
/// unassigned generators map to themselves. Every assigned image must
/// be homogeneous of the generator's degree.
inline Element substitute(const Element& e, const std::map<std::string, Element>& assignment) {
    return apply_generator_map(e, [&](const Generator& g) {
        auto it = assignment.find(g.name);
        if (it == assignment.end())
            return Element::from_generator(g);
        if (!it->second.is_homogeneous_of_degree(g.degree))
            throw ValidationError("substitute: image of '" + g.name +
                                  "' is not homogeneous of degree " +
                                  std::to_string(g.degree));
        return it->second;
    });
}

namespace detail {

inline void enumerate_basis(const std::vector<Generator>& gens, std::size_t index,
                            int remaining, std::vector<Monomial::Factor>& current,
                            std::vector<Monomial>& out) {
    if (remaining == 0) {
        out.push_back(Monomial::from_sorted_factors(current));
        return;
    }
    if (index == gens.size())
        return;
    const Generator& g = gens[index];
    enumerate_basis(gens, index + 1, remaining, current, out);
    int max_exp = g.is_odd() ? 1 : remaining / g.degree;
    for (int exp = 1; exp <= max_exp; ++exp) {
        if (g.degree * exp > remaining)
            break;
        current.emplace_back(g, exp);
        enumerate_basis(gens, index + 1, remaining - g.degree * exp, current, out);
        current.pop_back();
    }
}

}  // namespace detail

/// All canonical monomials of total degree d over the given generators,
/// in canonical order. Finite because every degree is >= 1.
inline std::vector<Monomial> basis_of_degree(std::vector<Generator> generators, int d) {
    if (d < 0)
        throw std::invalid_argument("basis_of_degree: negative degree");
    std::set<std::string> names;
    for (const auto& g : generators) {
        if (g.degree < 1)
            throw std::invalid_argument("basis_of_degree: generator degree must be >= 1");
        if (!names.insert(g.name).second)
            throw std::invalid_argument("basis_of_degree: duplicate generator name '" +
                                        g.name + "'");
    }
    std::sort(generators.begin(), generators.end(), generator_less);
    std::vector<Monomial> out;
    std::vector<Monomial::Factor> current;
    detail::enumerate_basis(generators, 0, d, current, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace sullivan
