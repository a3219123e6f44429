#include <catch2/catch_amalgamated.hpp>

#include "sullivan/cdga.hpp"
#include "sullivan/models.hpp"

#include <algorithm>

#include "support.hpp"

using namespace sullivan;
using test_support::Rng;

namespace {

Element gen(const FreeCdga& c, const std::string& name) {
    return Element::from_generator(c.generator(name));
}

/// Corrupted fixture: dv3 = a2 v1 with dv1 = t2, so d^2(v3) = a2 t2 != 0.
FreeCdga corrupted_model() {
    Generator v1{"v1", 1};
    Generator t2{"t2", 2};
    Generator a2{"a2", 2};
    Generator v3{"v3", 3};
    std::map<std::string, Element> diff;
    diff["v1"] = Element::from_generator(t2);
    diff["v3"] = mul(Element::from_generator(a2), Element::from_generator(v1));
    return FreeCdga::make_unchecked({v1, t2, a2, v3}, std::move(diff));
}

}  // namespace

TEST_CASE("apply_d follows the Leibniz rule on products") {
    FreeCdga cpn = model_cpn(2);
    Element y2y5 = mul(gen(cpn, "y2"), gen(cpn, "y5"));
    Element expected = Element::from_monomial(Monomial::generator(cpn.generator("y2"), 4));
    CHECK(apply_d(cpn, y2y5) == expected);

    // Product of two closed even generators is closed.
    FreeCdga flag = minimal_flag_model(2);
    CHECK(apply_d(flag, mul(gen(flag, "a2"), gen(flag, "b2"))).is_zero());
}

TEST_CASE("apply_d on v3 v5 in the n=2 flag model") {
    FreeCdga flag = minimal_flag_model(2);
    Element v3v5 = mul(gen(flag, "v3"), gen(flag, "v5"));

    // d(v3 v5) = dv3 * v5 - v3 * dv5 (v3 odd), by hand:
    // -(a2^2 + a2 b2 + b2^2) v5 + (a2^2 b2 + a2 b2^2) v3.
    Element by_hand = mul(-(pow(gen(flag, "a2"), 2) +
                            mul(gen(flag, "a2"), gen(flag, "b2")) +
                            pow(gen(flag, "b2"), 2)),
                          gen(flag, "v5")) +
                      mul(mul(pow(gen(flag, "a2"), 2), gen(flag, "b2")) +
                              mul(gen(flag, "a2"), pow(gen(flag, "b2"), 2)),
                          gen(flag, "v3"));
    CHECK(apply_d(flag, v3v5) == by_hand);
}

TEST_CASE("apply_d rejects foreign generators") {
    FreeCdga cpn = model_cpn(2);
    Element foreign = Element::from_generator(Generator{"w2", 2});
    CHECK_THROWS_AS(apply_d(cpn, foreign), ValidationError);
}

TEST_CASE("apply_d is linear and Leibniz on random homogeneous pairs") {
    FreeCdga flag = homogeneous_space_model(BlockPartition{{1, 1, 2}});
    Rng rng(55);
    std::uniform_int_distribution<int> deg(1, 7);
    for (int trial = 0; trial < 120; ++trial) {
        int d1 = deg(rng), d2 = deg(rng);
        Element e1 = test_support::random_homogeneous(flag.generators(), d1, rng);
        Element e2 = test_support::random_homogeneous(flag.generators(), d2, rng);

        CHECK(apply_d(flag, e1 + e2) == apply_d(flag, e1) + apply_d(flag, e2));

        Element lhs = apply_d(flag, mul(e1, e2));
        Element rhs = mul(apply_d(flag, e1), e2) +
                      (d1 % 2 == 0 ? mul(e1, apply_d(flag, e2))
                                   : -mul(e1, apply_d(flag, e2)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("check_d_squared passes on the built-in models") {
    for (int n = 2; n <= 8; ++n) {
        CHECK(check_d_squared(model_cpn(n)).pass);
        CHECK(check_d_squared(projectivized_tangent_model(n)).pass);
        CHECK(check_d_squared(minimal_flag_model(n)).pass);
    }
    for (int n = 2; n <= 5; ++n)
        CHECK(check_d_squared(homogeneous_space_model(BlockPartition{{1, 1, n - 1}})).pass);
}

TEST_CASE("check_d_squared fails with a witness on a corrupted model") {
    CheckReport report = check_d_squared(corrupted_model());
    REQUIRE_FALSE(report.pass);
    REQUIRE(report.witnesses.size() == 1);
    CHECK(report.witnesses.front() == "v3");
}

TEST_CASE("FreeCdga::make rejects d^2 != 0") {
    Generator v1{"v1", 1};
    Generator t2{"t2", 2};
    Generator a2{"a2", 2};
    Generator v3{"v3", 3};
    std::map<std::string, Element> diff;
    diff["v1"] = Element::from_generator(t2);
    diff["v3"] = mul(Element::from_generator(a2), Element::from_generator(t2));
    CHECK_THROWS_AS(FreeCdga::make({v1, t2, a2, v3}, diff), ValidationError);
}

TEST_CASE("differential_matrix slices") {
    FreeCdga cpn = model_cpn(2);

    SparseMatrix deg5 = differential_matrix(cpn, 5);
    CHECK(deg5.rows() == 1);
    CHECK(deg5.cols() == 1);
    CHECK(deg5.get(0, 0) == 1);

    SparseMatrix deg0 = differential_matrix(cpn, 0);
    CHECK(deg0.rows() == 1);
    CHECK(deg0.entries().empty());

    FreeCdga flag = minimal_flag_model(2);
    SparseMatrix deg3 = differential_matrix(flag, 3);
    CHECK(deg3.rows() == 1);
    CHECK(deg3.cols() == 3);
    CHECK(deg3.get(0, 0) == -1);
    CHECK(deg3.get(0, 1) == -1);
    CHECK(deg3.get(0, 2) == -1);
}

TEST_CASE("rank-nullity across degree slices") {
    FreeCdga flag = homogeneous_space_model(BlockPartition{{1, 1, 1}});
    for (int d = 0; d <= 10; ++d) {
        SparseMatrix m = differential_matrix(flag, d);
        auto kernel = kernel_basis(transpose(m));
        CHECK(rank(m) + static_cast<int>(kernel.size()) == m.rows());
    }
}

TEST_CASE("betti of CP^2") {
    BettiTable t = betti(model_cpn(2), 6);
    std::vector<long long> expected{1, 0, 1, 0, 1, 0, 0};
    for (int d = 0; d <= 6; ++d)
        CHECK(t.at(d) == expected[static_cast<std::size_t>(d)]);
}

TEST_CASE("betti of the two n=2 flag models") {
    std::vector<long long> expected{1, 0, 2, 0, 2, 0, 1};
    BettiTable pt = betti(projectivized_tangent_model(2), 6);
    BettiTable fm = betti(minimal_flag_model(2), 6);
    for (int d = 0; d <= 6; ++d) {
        CHECK(pt.at(d) == expected[static_cast<std::size_t>(d)]);
        CHECK(fm.at(d) == expected[static_cast<std::size_t>(d)]);
    }
}

TEST_CASE("euler characteristic of the cochain complex matches cohomology") {
    // chi of the truncated cochain complex equals chi of its cohomology
    // after subtracting the rank escaping the window; the interior
    // ranks telescope away.
    for (const FreeCdga& model :
         {projectivized_tangent_model(2), minimal_flag_model(2)}) {
        int top = 8;  // cohomology vanishes above degree 6 here
        long long chi_basis = 0, chi_betti = 0;
        BettiTable t = betti(model, top);
        for (int d = 0; d <= top; ++d) {
            long long dim =
                static_cast<long long>(basis_of_degree(model.generators(), d).size());
            chi_basis += (d % 2 == 0) ? dim : -dim;
            chi_betti += (d % 2 == 0) ? t.at(d) : -t.at(d);
        }
        long long edge = rank(differential_matrix(model, top));
        chi_basis -= (top % 2 == 0) ? edge : -edge;
        CHECK(chi_basis == chi_betti);
    }
}

TEST_CASE("check_morphism on the paper morphism and the identity") {
    CHECK(check_morphism(paper_morphism_f(2)).pass);
    CHECK(check_morphism(CdgaMorphism::identity(minimal_flag_model(3))).pass);
}

TEST_CASE("check_morphism catches a sign flip in f(v_{2n+1})") {
    CdgaMorphism f = paper_morphism_f(2);
    const FreeCdga& target = f.target();

    // Flip the sign of the y5 term: the y2^3 contribution to d(f(v5))
    // no longer cancels against d(y5).
    std::map<std::string, Element> images = f.images();
    Element y5 = Element::from_generator(target.generator("y5"));
    Rational y5_coef = images["v5"].coefficient(Monomial::generator(target.generator("y5")));
    images["v5"] -= y5 * (Rational(2) * y5_coef);
    CdgaMorphism flipped = CdgaMorphism::make(f.source(), target, images);

    CheckReport report = check_morphism(flipped);
    REQUIRE_FALSE(report.pass);
    REQUIRE(report.witnesses.size() == 1);
    CHECK(report.witnesses.front() == "v5");
}

TEST_CASE("check_morphism reports degree mismatches") {
    FreeCdga flag = minimal_flag_model(2);
    std::map<std::string, Element> images;
    for (const auto& g : flag.generators())
        images[g.name] = Element::from_generator(g);
    images["a2"] = gen(flag, "v3");  // degree 3 into a degree-2 slot
    CdgaMorphism bad = CdgaMorphism::make(flag, flag, images);

    CheckReport report = check_morphism(bad);
    REQUIRE_FALSE(report.pass);
    CHECK(std::find(report.witnesses.begin(), report.witnesses.end(), "a2") !=
          report.witnesses.end());
}

TEST_CASE("is_isomorphism") {
    for (int n = 2; n <= 5; ++n)
        CHECK(is_isomorphism(paper_morphism_f(n)));
    CHECK(is_isomorphism(CdgaMorphism::identity(projectivized_tangent_model(3))));
}

TEST_CASE("is_isomorphism requires a commuting morphism") {
    FreeCdga cpn = model_cpn(2);
    FreeCdga flag = minimal_flag_model(2);
    std::map<std::string, Element> images;
    images["y2"] = gen(flag, "a2");
    images["y5"] = Element::zero();
    CdgaMorphism m = CdgaMorphism::make(cpn, flag, images);
    CHECK_FALSE(check_morphism(m).pass);  // dy5 = y2^3 must map to a2^3 != 0
    CHECK_THROWS_AS(is_isomorphism(m), ValidationError);
}

TEST_CASE("induced cohomology map of the paper morphism") {
    InducedCohomologyMap induced = induced_cohomology_map(paper_morphism_f(2), 6);
    CHECK(induced.quasi_iso);
    CHECK(induced.matrices.at(2).rows() == 2);
    CHECK(induced.matrices.at(6).rows() == 1);
}

TEST_CASE("inclusion of a polynomial line is not a quasi-isomorphism") {
    FreeCdga line = FreeCdga::make({Generator{"a2", 2}}, {});
    FreeCdga flag = minimal_flag_model(2);
    std::map<std::string, Element> images;
    images["a2"] = gen(flag, "a2");
    CdgaMorphism incl = CdgaMorphism::make(line, flag, images);
    REQUIRE(check_morphism(incl).pass);

    InducedCohomologyMap induced = induced_cohomology_map(incl, 6);
    CHECK_FALSE(induced.quasi_iso);
    CHECK(induced.matrices.at(2).rows() == 1);
    CHECK(induced.matrices.at(2).cols() == 2);
}

TEST_CASE("identity induces identity matrices on cohomology") {
    FreeCdga flag = minimal_flag_model(2);
    InducedCohomologyMap induced =
        induced_cohomology_map(CdgaMorphism::identity(flag), 6);
    CHECK(induced.quasi_iso);
    for (const auto& [d, m] : induced.matrices) {
        REQUIRE(m.rows() == m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                CHECK(m.get(i, j) == (i == j ? 1 : 0));
    }
}

TEST_CASE("generator-space iso implies quasi-iso in every computed degree") {
    for (int n = 2; n <= 4; ++n) {
        CdgaMorphism f = paper_morphism_f(n);
        REQUIRE(check_morphism(f).pass);
        REQUIRE(is_isomorphism(f));
        CHECK(induced_cohomology_map(f, 4 * n - 2).quasi_iso);
    }
}

TEST_CASE("is_pure") {
    for (int n = 2; n <= 5; ++n) {
        CHECK(is_pure(projectivized_tangent_model(n)));
        CHECK(is_pure(model_cpn(n)));
    }
    CHECK_FALSE(is_pure(corrupted_model()));  // dv3 = a2 v1 has an odd factor
    CHECK_THROWS_AS(is_pure(model_cpn(2), {"nope"}), ValidationError);
}
