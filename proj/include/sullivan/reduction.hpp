#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sullivan/cdga.hpp"

namespace sullivan {

/// One cancellation of an acyclic ideal (u, du): the odd generator u
/// whose differential is linear in t, the even generator t it kills,
/// and the expression of t in the surviving generators.
struct EliminationStep {
    Generator killed_odd;
    Generator killed_even;
    Element substitution;
};

struct ContractiblePair {
    Generator odd;   // u, with du = coefficient * t + remainder
    Generator even;  // t
    Rational coefficient;
};

namespace detail {

/// Eligible t for a given u: nonzero linear coefficient in du, and the
/// remainder du - c t involves neither t nor u.
inline bool pair_eligible(const FreeCdga& c, const Generator& u, const Generator& t,
                          Rational& coefficient) {
    const Element& du = c.differential(u.name);
    coefficient = du.linear_coefficient(t);
    if (coefficient == 0)
        return false;
    Element remainder = du - Element::from_monomial(Monomial::generator(t), coefficient);
    for (const auto& [m, coef] : remainder.terms())
        if (m.contains(t.name) || m.contains(u.name))
            return false;
    return true;
}

}  // namespace detail

/// Deterministic search for a contractible pair: candidates u in order
/// of (degree, name); among the eligible linear terms of du the t with
/// the largest index in the generator list wins, which keeps the flag
/// generators a2, b2 alive in the paper's cascade.
inline std::optional<ContractiblePair> find_contractible_pair(const FreeCdga& c) {
    std::vector<Generator> candidates = c.generators();
    std::sort(candidates.begin(), candidates.end(), generator_less);

    for (const auto& u : candidates) {
        std::optional<ContractiblePair> best;
        std::size_t best_index = 0;
        for (const auto& t : c.generators()) {
            if (t.name == u.name)
                continue;
            Rational coefficient;
            if (!detail::pair_eligible(c, u, t, coefficient))
                continue;
            std::size_t index = c.generator_index(t.name);
            if (!best || index > best_index) {
                best = ContractiblePair{u, t, coefficient};
                best_index = index;
            }
        }
        if (best)
            return best;
    }
    return std::nullopt;
}

struct EliminationResult {
    FreeCdga model;
    EliminationStep step;
    CdgaMorphism projection;  // quotient map from the input model
};

/// Quotient by the acyclic ideal generated by u and du: removes u and
/// t, rewrites every surviving differential through
/// t -> -(du - c t)/c, and re-certifies d^2 = 0 and the projection.
inline EliminationResult eliminate(const FreeCdga& c, const Generator& u,
                                   const Generator& t) {
    if (!c.has_generator(u.name) || !(c.generator(u.name) == u))
        throw ValidationError("eliminate: unknown generator '" + u.name + "'");
    if (!c.has_generator(t.name) || !(c.generator(t.name) == t))
        throw ValidationError("eliminate: unknown generator '" + t.name + "'");

    Rational coefficient;
    if (!detail::pair_eligible(c, u, t, coefficient))
        throw ValidationError("eliminate: (" + u.name + ", " + t.name +
                              ") is not a contractible pair");

    const Element& du = c.differential(u.name);
    Element remainder = du - Element::from_monomial(Monomial::generator(t), coefficient);
    Element substitution = remainder * (Rational(-1) / coefficient);

    std::map<std::string, Element> assignment;
    assignment[t.name] = substitution;
    assignment[u.name] = Element::zero();

    std::vector<Generator> survivors;
    for (const auto& g : c.generators())
        if (g.name != u.name && g.name != t.name)
            survivors.push_back(g);

    std::map<std::string, Element> diff;
    for (const auto& g : survivors) {
        Element image = substitute(c.differential(g.name), assignment);
        if (!image.is_zero())
            diff.emplace(g.name, std::move(image));
    }

    FreeCdga reduced = [&] {
        try {
            return FreeCdga::make(survivors, diff);
        } catch (const ValidationError& e) {
            throw ValidationError("eliminate: substitution of (" + u.name + ", " + t.name +
                                  ") breaks the model: " + e.what());
        }
    }();

    std::map<std::string, Element> images;
    for (const auto& g : survivors)
        images.emplace(g.name, Element::from_generator(g));
    images.emplace(u.name, Element::zero());
    images.emplace(t.name, substitution);
    CdgaMorphism projection = CdgaMorphism::make(c, reduced, std::move(images));

    CheckReport morphism_ok = check_morphism(projection);
    if (!morphism_ok.pass)
        throw ValidationError("eliminate: quotient map is not a cdga morphism (" +
                              morphism_ok.detail + ")");

    return {std::move(reduced),
            EliminationStep{u, t, std::move(substitution)},
            std::move(projection)};
}

struct MinimizeResult {
    FreeCdga model;
    std::vector<EliminationStep> steps;
    CdgaMorphism projection;  // composite quotient map
};

/// Repeats find_contractible_pair + eliminate until no pair remains.
/// Default step budget: one per odd generator, since each cancellation
/// consumes one.
inline MinimizeResult minimize(const FreeCdga& c,
                               std::optional<int> max_steps = std::nullopt) {
    int budget = max_steps.value_or(static_cast<int>(
        std::count_if(c.generators().begin(), c.generators().end(),
                      [](const Generator& g) { return g.is_odd(); })));

    MinimizeResult result{c, {}, CdgaMorphism::identity(c)};
    for (int step = 0; step < budget; ++step) {
        auto pair = find_contractible_pair(result.model);
        if (!pair)
            return result;
        EliminationResult elim = eliminate(result.model, pair->odd, pair->even);
        result.projection = compose(elim.projection, result.projection);
        result.steps.push_back(std::move(elim.step));
        result.model = std::move(elim.model);
    }
    if (find_contractible_pair(result.model))
        throw ValidationError("minimize: max_steps = " + std::to_string(budget) +
                              " exhausted with contractible pairs remaining");
    return result;
}

/// Independent Betti cross-check of an elimination cascade.
inline CheckReport certify_reduction(const FreeCdga& original, const FreeCdga& reduced,
                                     int up_to) {
    BettiTable before = betti(original, up_to);
    BettiTable after = betti(reduced, up_to);
    for (int d = 0; d <= up_to; ++d) {
        if (before.at(d) != after.at(d)) {
            std::ostringstream msg;
            msg << "betti mismatch in degree " << d << ": " << before.at(d) << " vs "
                << after.at(d);
            return CheckReport::fail(msg.str(), {std::to_string(d)});
        }
    }
    CheckReport ok;
    ok.detail = "betti numbers agree up to degree " + std::to_string(up_to);
    return ok;
}

/// Minimality in the Sullivan sense restricted to linear terms: no
/// generator differential contains another generator linearly.
inline bool has_linear_differential_term(const FreeCdga& c) {
    for (const auto& g : c.generators())
        for (const auto& [m, coef] : c.differential(g.name).terms())
            if (m.as_single_generator())
                return true;
    return false;
}

}  // namespace sullivan
