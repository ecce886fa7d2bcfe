#include <gtest/gtest.h>

#include "fglkit/hopf/hopf_cp.hpp"
#include "fglkit/ring/errors.hpp"
#include "test_support.hpp"

using namespace fglkit;
using namespace fglkit::hopf;
using ring::GradedPoly;

namespace {

HopfAlgebra algebra(int D)
{
    auto fgl = std::make_shared<const lazard::FormalGroupLaw>(lazard::FormalGroupLaw::universal(D));
    return HopfAlgebra(std::make_shared<const lazard::LazardTables>(fgl));
}

GradedPoly P(const HopfAlgebra& h, const char* s) { return ring::parse_poly(h.table_ptr(), s); }

HopfClass hc(Basis b, std::map<int, GradedPoly> terms)
{
    HopfClass c{b, {}};
    for (auto& [n, t] : terms)
        c.add(n, t);
    return c;
}

} // namespace

TEST(Hopf, BasisChangeExamples)
{
    auto h = algebra(6);
    EXPECT_EQ(h.to_beta_basis(h.basis_element(Basis::p, 0)), h.basis_element(Basis::beta, 0));
    EXPECT_EQ(h.to_beta_basis(h.basis_element(Basis::p, 1)),
              hc(Basis::beta, {{1, P(h, "1")}, {0, P(h, "-2*b1")}}));
    EXPECT_EQ(h.to_p_basis(h.basis_element(Basis::beta, 1)), hc(Basis::p, {{1, P(h, "1")}, {0, P(h, "2*b1")}}));
    EXPECT_EQ(h.to_p_basis(h.basis_element(Basis::beta, 2)),
              hc(Basis::p, {{2, P(h, "1")}, {1, P(h, "2*b1")}, {0, P(h, "3*b2 - 2*b1^2")}}));
}

TEST(Hopf, RoundTrip)
{
    auto h = algebra(11);
    auto r = verify_basis_round_trip(h, 10);
    EXPECT_TRUE(r.passed) << (r.failures.empty() ? "" : r.failures.front());
}

TEST(Hopf, CoproductExamples)
{
    auto h = algebra(6);
    TensorClass expect{Basis::beta, {}};
    expect.add(0, 2, P(h, "1"));
    expect.add(1, 1, P(h, "1"));
    expect.add(2, 0, P(h, "1"));
    EXPECT_EQ(h.coproduct(h.basis_element(Basis::beta, 2)), expect);

    TensorClass p1{Basis::p, {}};
    p1.add(1, 0, P(h, "1"));
    p1.add(0, 1, P(h, "1"));
    p1.add(0, 0, P(h, "2*b1"));
    EXPECT_EQ(h.coproduct(h.basis_element(Basis::p, 1)), p1);
    EXPECT_EQ(h.coproduct_conjugated(h.basis_element(Basis::p, 1)), p1);
}

TEST(Hopf, CoproductIdentities)
{
    auto h = algebra(9);
    auto r = verify_coproduct(h, 8);
    EXPECT_TRUE(r.passed) << (r.failures.empty() ? "" : r.failures.front());
}

TEST(Hopf, ProductExamples)
{
    auto h = algebra(9);
    for (int m = 0; m <= 6; ++m) {
        EXPECT_EQ(h.product(h.basis_element(Basis::p, 0), h.basis_element(Basis::p, m)), h.basis_element(Basis::p, m));
        for (int r = 0; r <= m; ++r)
            EXPECT_EQ(h.segre_coefficient(r, 0, m), r == m ? h.tables().one() : h.tables().zero());
    }
    auto s = h.segre_decomposition(1, 1);
    ASSERT_FALSE(s.empty());
    EXPECT_EQ(s.back().r, 2);
    EXPECT_EQ(s.back().coefficient, P(h, "2"));
    for (const auto& t : s)
        EXPECT_EQ(t.coefficient.homogeneous_weight(), 2 - t.r);
    auto s0 = h.segre_decomposition(0, 3);
    ASSERT_EQ(s0.size(), 1u);
    EXPECT_EQ(s0[0].r, 3);
    EXPECT_EQ(s0[0].coefficient, P(h, "1"));
    EXPECT_THROW(h.segre_coefficient(0, 5, 5), BoundError);
}

TEST(Hopf, SegreOneOneByHand)
{
    // beta_1^2 = 2b1 beta_1 + 2 beta_2 and p_1 = beta_1 - 2b1 beta_0, so
    // p_1^2 = 2 beta_2 - 2b1 beta_1 + 4b1^2 beta_0 = 2 p_2 + 2b1 p_1 + (6b2 - 4b1^2) p_0.
    auto h = algebra(4);
    auto s = h.segre_decomposition(1, 1);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s[0].coefficient, P(h, "6*b2 - 4*b1^2"));
    EXPECT_EQ(s[1].coefficient, P(h, "2*b1"));
    EXPECT_EQ(s[2].coefficient, P(h, "2"));
}

TEST(Hopf, ProductIdentities)
{
    auto h = algebra(9);
    auto r = verify_product(h, 8);
    EXPECT_TRUE(r.passed) << (r.failures.empty() ? "" : r.failures.front());
}

TEST(Hopf, Compatibility)
{
    auto h = algebra(7);
    auto r = verify_hopf_compatibility(h, 6);
    EXPECT_TRUE(r.passed) << (r.failures.empty() ? "" : r.failures.front());
}

TEST(Hopf, MixedBasesRejected)
{
    auto h = algebra(4);
    EXPECT_THROW(h.product(h.basis_element(Basis::p, 1), h.basis_element(Basis::beta, 1)), StructuralError);
}

TEST(Hopf, MultiplicativeLaw)
{
    auto fgl = std::make_shared<const lazard::FormalGroupLaw>(lazard::FormalGroupLaw::multiplicative(7));
    HopfAlgebra h(std::make_shared<const lazard::LazardTables>(fgl));
    EXPECT_TRUE(verify_basis_round_trip(h, 6).passed);
    EXPECT_TRUE(verify_coproduct(h, 6).passed);
    EXPECT_TRUE(verify_product(h, 6).passed);
}
