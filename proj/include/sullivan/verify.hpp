#pragma once

#include <chrono>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sullivan/expr_io.hpp"
#include "sullivan/models.hpp"
#include "sullivan/reduction.hpp"
#include "sullivan/ring.hpp"

namespace sullivan {

struct VerificationCheck {
    std::string name;
    bool pass = false;
    std::string detail;
    double milliseconds = 0.0;
};

/// Full per-n verification record. Timings are kept out of the
/// structured serialization so that output is byte-identical across
/// runs.
struct VerificationReport {
    int n = 0;
    int max_degree = 0;
    std::vector<VerificationCheck> checks;
    std::map<std::string, BettiTable> betti_tables;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass)
                return false;
        return true;
    }
};

namespace detail {

class CheckTimer {
public:
    CheckTimer() : start_(std::chrono::steady_clock::now()) {}

    double elapsed_ms() const {
        auto now = std::chrono::steady_clock::now();
        return std::chrono::duration<double, std::milli>(now - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline std::string betti_to_string(const BettiTable& t) {
    std::string out;
    for (int d = 0; d <= t.up_to; ++d) {
        if (d > 0)
            out += ",";
        out += std::to_string(t.at(d));
    }
    return out;
}

}  // namespace detail

/// Runs the whole per-n verification pipeline:
///   (1) d^2 = 0 on all four built-in models
///   (2) purity of the projectivized tangent model
///   (3) Chern normalization
///   (4) elimination cascade to the minimal flag model, Betti-certified
///   (5) the explicit quasi-isomorphism between the two models
///   (6) both cohomology ring presentations
///   (7) Betti agreement of the three spaces with the product oracle
///   (8) Euler characteristic n(n+1)
inline VerificationReport run_verification(int n, int max_degree = -1) {
    if (n < 2)
        throw std::invalid_argument("verification requires n >= 2");
    if (max_degree < 0)
        max_degree = 4 * n;
    if (max_degree < 4 * n - 2)
        throw std::invalid_argument("max_degree " + std::to_string(max_degree) +
                                    " is too low for the top-degree checks at n = " +
                                    std::to_string(n) + " (need at least " +
                                    std::to_string(4 * n - 2) + ")");

    VerificationReport report;
    report.n = n;
    report.max_degree = max_degree;

    FreeCdga cpn = model_cpn(n);
    FreeCdga ptangent = projectivized_tangent_model(n);
    FreeCdga flag_min = minimal_flag_model(n);
    FreeCdga flag_big = homogeneous_space_model(BlockPartition{{1, 1, n - 1}});

    auto run = [&](const std::string& name, auto&& fn) {
        detail::CheckTimer timer;
        VerificationCheck check;
        check.name = name;
        try {
            CheckReport r = fn();
            check.pass = r.pass;
            check.detail = r.detail;
        } catch (const std::exception& e) {
            check.pass = false;
            check.detail = e.what();
        }
        check.milliseconds = timer.elapsed_ms();
        report.checks.push_back(std::move(check));
    };

    run("d_squared", [&] {
        for (const auto* m : {&cpn, &ptangent, &flag_min, &flag_big}) {
            CheckReport r = check_d_squared(*m);
            if (!r.pass)
                return r;
        }
        CheckReport ok;
        ok.detail = "d^2 = 0 on cpn, ptangent, flag-min, flag-big";
        return ok;
    });

    run("purity", [&] {
        if (!is_pure(ptangent))
            return CheckReport::fail("projectivized tangent model is not pure");
        CheckReport ok;
        ok.detail = "projectivized tangent model is pure";
        return ok;
    });

    run("chern_normalization", [&] { return verify_chern_normalization(n); });

    run("minimal_model_reduction", [&] {
        MinimizeResult reduced = minimize(flag_big);
        std::multiset<int> degrees;
        for (const auto& g : reduced.model.generators())
            degrees.insert(g.degree);
        std::multiset<int> expected{2, 2, 2 * n - 1, 2 * n + 1};
        if (degrees != expected)
            return CheckReport::fail("surviving generator degrees are not {2, 2, " +
                                     std::to_string(2 * n - 1) + ", " +
                                     std::to_string(2 * n + 1) + "}");
        CheckReport certified = certify_reduction(flag_big, reduced.model, max_degree);
        if (!certified.pass)
            return certified;
        CheckReport ok;
        ok.detail = std::to_string(reduced.steps.size()) +
                    " eliminations; betti preserved up to degree " +
                    std::to_string(max_degree);
        return ok;
    });

    run("paper_morphism", [&] {
        CdgaMorphism f = paper_morphism_f(n);
        CheckReport commutes = check_morphism(f);
        if (!commutes.pass)
            return commutes;
        if (!is_isomorphism(f))
            return CheckReport::fail("linear part of f is not a degree-wise bijection");
        InducedCohomologyMap induced = induced_cohomology_map(f, max_degree);
        if (!induced.quasi_iso)
            return CheckReport::fail("induced map on cohomology is not an isomorphism");
        CheckReport ok;
        ok.detail = "f commutes, linear part bijective, quasi-isomorphism up to degree " +
                    std::to_string(max_degree);
        return ok;
    });

    run("ring_presentations", [&] {
        std::map<std::string, Element> ptangent_map{
            {"x2", Element::from_generator(ptangent.generator("x2"))},
            {"y2", Element::from_generator(ptangent.generator("y2"))}};
        CheckReport r1 = verify_ring_presentation(
            ptangent, projectivization_cohomology_presentation(n), ptangent_map, max_degree);
        if (!r1.pass)
            return r1;
        std::map<std::string, Element> flag_map{
            {"a2", Element::from_generator(flag_min.generator("a2"))},
            {"b2", Element::from_generator(flag_min.generator("b2"))}};
        CheckReport r2 = verify_ring_presentation(
            flag_min, flag_cohomology_presentation(n), flag_map, max_degree);
        if (!r2.pass)
            return r2;
        CheckReport ok;
        ok.detail = "both presentations certified up to degree " + std::to_string(max_degree);
        return ok;
    });

    run("betti_agreement", [&] {
        BettiTable t_ptangent = betti(ptangent, max_degree);
        BettiTable t_flag_min = betti(flag_min, max_degree);
        BettiTable t_flag_big = betti(flag_big, max_degree);
        BettiTable oracle = poincare_product_oracle(n);
        report.betti_tables.emplace("ptangent", t_ptangent);
        report.betti_tables.emplace("flag-min", t_flag_min);
        report.betti_tables.emplace("flag-big", t_flag_big);
        report.betti_tables.emplace("oracle", oracle);

        int bound = std::min(max_degree, oracle.up_to);
        for (int d = 0; d <= max_degree; ++d) {
            long long expected = d <= bound ? oracle.at(d) : 0;
            if (t_ptangent.at(d) != expected || t_flag_min.at(d) != expected ||
                t_flag_big.at(d) != expected) {
                return CheckReport::fail("betti mismatch in degree " + std::to_string(d));
            }
        }
        CheckReport ok;
        ok.detail = "all three spaces match the product oracle: " +
                    detail::betti_to_string(t_flag_min);
        return ok;
    });

    run("euler_characteristic", [&] {
        auto it = report.betti_tables.find("flag-min");
        BettiTable table =
            it != report.betti_tables.end() ? it->second : betti(flag_min, max_degree);
        long long chi = euler_characteristic(table);
        long long expected = static_cast<long long>(n) * (n + 1);
        if (chi != expected)
            return CheckReport::fail("euler characteristic " + std::to_string(chi) +
                                     " != " + std::to_string(expected));
        CheckReport ok;
        ok.detail = "chi = " + std::to_string(expected);
        return ok;
    });

    return report;
}

/// Deterministic structured form; timings are deliberately omitted.
inline nlohmann::json report_to_json(const VerificationReport& report) {
    nlohmann::json j;
    j["n"] = report.n;
    j["max_degree"] = report.max_degree;
    j["pass"] = report.pass();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : report.checks)
        j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["betti_tables"] = nlohmann::json::object();
    for (const auto& [name, table] : report.betti_tables) {
        nlohmann::json t = nlohmann::json::object();
        for (int d = 0; d <= table.up_to; ++d)
            t[std::to_string(d)] = table.at(d);
        j["betti_tables"][name] = std::move(t);
    }
    return j;
}

}  // namespace sullivan
