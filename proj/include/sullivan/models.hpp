#pragma once

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sullivan/cdga.hpp"

namespace sullivan {

/// A base CDGA together with closed cocycles c_1..c_n representing the
/// Chern classes of a rank-n bundle over the base.
struct ChernData {
    FreeCdga base;
    std::vector<Element> cocycles;

    int fiber_rank() const { return static_cast<int>(cocycles.size()); }
};

/// Block sizes (k_1, ..., k_r) of a unitary subgroup
/// U(k_1) x ... x U(k_r) inside U(k_1 + ... + k_r).
struct BlockPartition {
    std::vector<int> blocks;

    int total() const {
        int sum = 0;
        for (int k : blocks)
            sum += k;
        return sum;
    }
};

namespace detail {

inline std::string degree_name(const std::string& prefix, int degree) {
    return prefix + std::to_string(degree);
}

}  // namespace detail

/// Minimal model of CP^n: (Lambda(y2, y_{2n+1}), d) with
/// d y_{2n+1} = y2^{n+1}.
inline FreeCdga model_cpn(int n) {
    if (n < 1)
        throw std::invalid_argument("model_cpn: n must be >= 1");
    Generator y2{"y2", 2};
    Generator y_top{detail::degree_name("y", 2 * n + 1), 2 * n + 1};
    std::map<std::string, Element> diff;
    diff[y_top.name] = Element::from_monomial(Monomial::generator(y2, n + 1));
    return FreeCdga::make({y2, y_top}, std::move(diff));
}

/// Chern cocycles of the tangent bundle of CP^n: c_i = C(n+1, i) y2^i.
inline ChernData chern_classes_tangent_cpn(int n) {
    ChernData data{model_cpn(n), {}};
    Generator y2 = data.base.generator("y2");
    for (int i = 1; i <= n; ++i)
        data.cocycles.push_back(Element::from_monomial(Monomial::generator(y2, i),
                                                       Rational(binomial(n + 1, i))));
    return data;
}

/// Relative model of the projectivization of a rank-n bundle with the
/// given Chern cocycles: base retained, new generators x2 (closed) and
/// x_{2n-1} with D x_{2n-1} = x2^n + sum_i c_i x2^{n-i}.
inline FreeCdga projectivization_model(const ChernData& chern) {
    int n = chern.fiber_rank();
    if (n < 2)
        throw std::invalid_argument("projectivization_model: fiber rank must be >= 2");

    for (int i = 1; i <= n; ++i) {
        const Element& c = chern.cocycles[static_cast<std::size_t>(i - 1)];
        if (!c.is_homogeneous_of_degree(2 * i))
            throw ValidationError("projectivization_model: c_" + std::to_string(i) +
                                  " is not homogeneous of degree " + std::to_string(2 * i));
        if (!apply_d(chern.base, c).is_zero())
            throw ValidationError("projectivization_model: c_" + std::to_string(i) +
                                  " is not closed");
    }

    Generator x2{"x2", 2};
    Generator x_top{detail::degree_name("x", 2 * n - 1), 2 * n - 1};
    std::vector<Generator> gens = chern.base.generators();
    for (const auto& g : gens)
        if (g.name == x2.name || g.name == x_top.name)
            throw ValidationError("projectivization_model: base already uses generator '" +
                                  g.name + "'");
    gens.push_back(x2);
    gens.push_back(x_top);

    Element dx = Element::from_monomial(Monomial::generator(x2, n));
    for (int i = 1; i <= n; ++i) {
        Element term = chern.cocycles[static_cast<std::size_t>(i - 1)];
        if (i < n)
            term = mul(term, Element::from_monomial(Monomial::generator(x2, n - i)));
        dx += term;
    }

    std::map<std::string, Element> diff = chern.base.differentials();
    diff[x_top.name] = std::move(dx);
    return FreeCdga::make(std::move(gens), std::move(diff));
}

/// Normalized model of P(E) for the tangent bundle of CP^n:
/// generators y2, y_{2n+1}, x2, x_{2n-1} with d y_{2n+1} = y2^{n+1} and
/// D x_{2n-1} = sum_{i=0}^{n} x2^{n-i} y2^i.
inline FreeCdga projectivized_tangent_model(int n) {
    if (n < 2)
        throw std::invalid_argument("projectivized_tangent_model: n must be >= 2");
    Generator y2{"y2", 2};
    Generator y_top{detail::degree_name("y", 2 * n + 1), 2 * n + 1};
    Generator x2{"x2", 2};
    Generator x_top{detail::degree_name("x", 2 * n - 1), 2 * n - 1};

    Element dx;
    for (int i = 0; i <= n; ++i) {
        std::vector<Monomial::Factor> factors;
        if (i < n)
            factors.emplace_back(x2, n - i);
        if (i > 0)
            factors.emplace_back(y2, i);
        dx.add_term(Monomial::from_sorted_factors(std::move(factors)), 1);
    }

    std::map<std::string, Element> diff;
    diff[y_top.name] = Element::from_monomial(Monomial::generator(y2, n + 1));
    diff[x_top.name] = std::move(dx);
    return FreeCdga::make({y2, y_top, x2, x_top}, std::move(diff));
}

/// Minimal Sullivan model of U(n+1)/U(1) x U(1) x U(n-1):
/// Lambda(a2, b2, v_{2n-1}, v_{2n+1}) with
/// d v_{2n-1} = (-1)^{n+1} sum_{i=0}^{n} a2^{n-i} b2^i and
/// d v_{2n+1} = (-1)^{n+1} sum_{i=1}^{n} a2^{n-i+1} b2^i.
inline FreeCdga minimal_flag_model(int n) {
    if (n < 2)
        throw std::invalid_argument("minimal_flag_model: n must be >= 2");
    Generator a2{"a2", 2};
    Generator b2{"b2", 2};
    Generator v_lo{detail::degree_name("v", 2 * n - 1), 2 * n - 1};
    Generator v_hi{detail::degree_name("v", 2 * n + 1), 2 * n + 1};

    Rational sign = (n % 2 == 0) ? Rational(-1) : Rational(1);  // (-1)^{n+1}

    Element dv_lo;
    for (int i = 0; i <= n; ++i) {
        std::vector<Monomial::Factor> factors;
        if (i < n)
            factors.emplace_back(a2, n - i);
        if (i > 0)
            factors.emplace_back(b2, i);
        dv_lo.add_term(Monomial::from_sorted_factors(std::move(factors)), sign);
    }

    Element dv_hi;
    for (int i = 1; i <= n; ++i) {
        std::vector<Monomial::Factor> factors;
        factors.emplace_back(a2, n - i + 1);
        factors.emplace_back(b2, i);
        dv_hi.add_term(Monomial::from_sorted_factors(std::move(factors)), sign);
    }

    std::map<std::string, Element> diff;
    diff[v_lo.name] = std::move(dv_lo);
    diff[v_hi.name] = std::move(dv_hi);
    return FreeCdga::make({a2, b2, v_lo, v_hi}, std::move(diff));
}

/// Theorem-2.1 model of G/H for H = U(k_1) x ... x U(k_r) inside
/// G = U(m), m = sum k_j. Even generators are the block Chern classes
/// (the last block is named z2, z4, ...; earlier blocks a, b, c, ...);
/// odd generators v1, v3, ..., v_{2m-1} carry the Whitney product
/// expansion: d v_{2k-1} = degree-2k part of prod_j (1 + c^{(j)}_1 + ...).
inline FreeCdga homogeneous_space_model(const BlockPartition& partition) {
    const auto& blocks = partition.blocks;
    if (blocks.empty())
        throw std::invalid_argument("homogeneous_space_model: empty partition");
    for (int k : blocks)
        if (k < 1)
            throw std::invalid_argument("homogeneous_space_model: blocks must be >= 1");
    if (blocks.size() > 20)
        throw std::invalid_argument("homogeneous_space_model: too many blocks");
    int m = partition.total();
    if (m < 2)
        throw std::invalid_argument("homogeneous_space_model: total rank must be >= 2");

    static const std::string letters = "abcdefghijklmnopqrst";
    std::vector<Generator> gens;
    Element whitney = Element::one();
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        std::string prefix = (j + 1 == blocks.size()) ? "z" : std::string(1, letters[j]);
        Element block_total = Element::one();
        for (int i = 1; i <= blocks[j]; ++i) {
            Generator g{detail::degree_name(prefix, 2 * i), 2 * i};
            gens.push_back(g);
            block_total += Element::from_generator(g);
        }
        whitney = mul(whitney, block_total);
    }

    std::map<std::string, Element> diff;
    for (int k = 1; k <= m; ++k) {
        Generator v{detail::degree_name("v", 2 * k - 1), 2 * k - 1};
        gens.push_back(v);
        Element image;
        for (const auto& [mono, coef] : whitney.terms())
            if (mono.degree() == 2 * k)
                image.add_term(mono, coef);
        diff[v.name] = std::move(image);
    }
    return FreeCdga::make(std::move(gens), std::move(diff));
}

/// The quasi-isomorphism of Theorem 4.2 from the flag-manifold minimal
/// model to the projectivized tangent model. The odd images carry the
/// paper's sign (-1)^{n+1}; the degree-2 generators map without sign,
/// which is the convention that commutes with the differentials for
/// every n.
inline CdgaMorphism paper_morphism_f(int n) {
    if (n < 2)
        throw std::invalid_argument("paper_morphism_f: n must be >= 2");
    FreeCdga source = minimal_flag_model(n);
    FreeCdga target = projectivized_tangent_model(n);

    Rational sign = (n % 2 == 0) ? Rational(-1) : Rational(1);  // (-1)^{n+1}
    Generator x2 = target.generator("x2");
    Generator y2 = target.generator("y2");
    Generator x_top = target.generator(detail::degree_name("x", 2 * n - 1));
    Generator y_top = target.generator(detail::degree_name("y", 2 * n + 1));

    Element v_hi_image =
        mul(Element::from_generator(y2), Element::from_generator(x_top)) -
        Element::from_generator(y_top);

    std::map<std::string, Element> images;
    images["a2"] = Element::from_generator(x2);
    images["b2"] = Element::from_generator(y2);
    images[detail::degree_name("v", 2 * n - 1)] = Element::from_generator(x_top) * sign;
    images[detail::degree_name("v", 2 * n + 1)] = v_hi_image * sign;
    return CdgaMorphism::make(std::move(source), std::move(target), std::move(images));
}

/// Certifies the change of variables x2 -> x2 - y2 carrying the
/// Chern-form differential x2^n + sum_i C(n+1,i) y2^i x2^{n-i} to the
/// normalized sum_i x2^{n-i} y2^i, together with the induced model
/// isomorphism.
inline CheckReport verify_chern_normalization(int n) {
    if (n < 2)
        throw std::invalid_argument("verify_chern_normalization: n must be >= 2");

    FreeCdga chern_model = projectivization_model(chern_classes_tangent_cpn(n));
    FreeCdga normalized = projectivized_tangent_model(n);

    std::string x_name = detail::degree_name("x", 2 * n - 1);
    std::string y_name = detail::degree_name("y", 2 * n + 1);
    Generator x2 = chern_model.generator("x2");
    Generator y2 = chern_model.generator("y2");

    Element x_minus_y = Element::from_generator(x2) - Element::from_generator(y2);
    Element substituted =
        substitute(chern_model.differential(x_name), {{"x2", x_minus_y}});
    if (!(substituted == normalized.differential(x_name)))
        return CheckReport::fail(
            "substitution x2 -> x2 - y2 does not normalize the Chern differential at n = " +
                std::to_string(n),
            {x_name});

    std::map<std::string, Element> images;
    images["x2"] = x_minus_y;
    images["y2"] = Element::from_generator(y2);
    images[x_name] = Element::from_generator(normalized.generator(x_name));
    images[y_name] = Element::from_generator(normalized.generator(y_name));
    CdgaMorphism change =
        CdgaMorphism::make(chern_model, normalized, std::move(images));

    CheckReport commutes = check_morphism(change);
    if (!commutes.pass)
        return CheckReport::fail("change of variables is not a cdga morphism: " +
                                     commutes.detail,
                                 commutes.witnesses);
    if (!is_isomorphism(change))
        return CheckReport::fail("change of variables is not an isomorphism at n = " +
                                 std::to_string(n));

    CheckReport ok;
    ok.detail = "x2 -> x2 - y2 carries the Chern model onto the normalized model";
    return ok;
}

}  // namespace sullivan
