#include <chrono>
#include <random>

#include <gtest/gtest.h>

#include "fglkit/gysin/gysin.hpp"
#include "fglkit/ring/errors.hpp"
#include "test_support.hpp"

using namespace fglkit;
using namespace fglkit::gysin;
using ring::GradedPoly;
using Tables = std::shared_ptr<const lazard::LazardTables>;

namespace {

Tables tables_for(lazard::FormalGroupLaw fgl)
{
    return std::make_shared<const lazard::LazardTables>(
        std::make_shared<const lazard::FormalGroupLaw>(std::move(fgl)));
}

Tables universal(int D) { return tables_for(lazard::FormalGroupLaw::universal(D)); }

GradedPoly P(const Tables& t, const char* s) { return ring::parse_poly(t->table_ptr(), s); }

// Random class in `model`: coefficient generators with weight <= 2 and
// axis exponents up to the axis order.
ModelClass random_class(const ModelPtr& model, std::mt19937& rng)
{
    const auto& table = model->table_ptr();
    std::uint32_t allowed = 0;
    for (std::size_t i = 0; i < table->size(); ++i)
        if (!(*table)[i].formal() && (*table)[i].weight <= 2)
            allowed |= 1u << i;
    for (const auto& a : model->axes())
        allowed |= 1u << table->index_of(a.name);
    return ModelClass(model, fglkit::testing::random_poly(table, rng, 6, 3, allowed));
}

} // namespace

TEST(Gysin, PushforwardDefinition)
{
    auto t = universal(6);
    auto m = OrientedRingModel::create(t, {{"x1", 3}});
    EXPECT_EQ(pushforward_projection(ModelClass::variable(m, "x1", 3), "x1").value(), P(t, "1"));
    EXPECT_EQ(pushforward_projection(ModelClass::one(m), "x1").value(), t->eta_prime(3));
    EXPECT_TRUE(pushforward_projection(ModelClass::variable(m, "x1", 4), "x1").value().is_zero());
    EXPECT_THROW(pushforward_projection(ModelClass::one(m), "x2"), StructuralError);
    auto alpha = ModelClass(m, P(t, "b2 - 3*b1"));
    EXPECT_EQ(pushforward_projection(alpha * ModelClass::variable(m, "x1", 3), "x1").value(), P(t, "b2 - 3*b1"));
}

TEST(Gysin, DiagonalClassExamples)
{
    auto t = universal(6);
    EXPECT_EQ(diagonal_class(t, 0).value(), P(t, "1"));
    EXPECT_EQ(diagonal_class(t, 1).value(), P(t, "x1 + x2 + 2*b1*x1*x2"));
    EXPECT_THROW(diagonal_class(universal(3), 4), BoundError);
}

TEST(Gysin, EulerClassMatchesDiagonal)
{
    for (int n = 1; n <= 4; ++n) {
        auto r = verify_diagonal_vs_euler(universal(n + 1), n);
        EXPECT_TRUE(r.passed) << (r.failures.empty() ? "" : r.failures.front());
    }
}

TEST(Gysin, EulerClassAtFiveWithinBudget)
{
    auto start = std::chrono::steady_clock::now();
    auto r = verify_diagonal_vs_euler(universal(6), 5);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_TRUE(r.passed) << (r.failures.empty() ? "" : r.failures.front());
    EXPECT_LT(secs, 120.0);
    std::cout << "[ info ] euler class n=5: " << secs << " s\n";
}

TEST(Gysin, EulerClassUnderOtherLaws)
{
    for (int n = 1; n <= 5; ++n) {
        EXPECT_TRUE(verify_diagonal_vs_euler(tables_for(lazard::FormalGroupLaw::additive(n + 1)), n).passed);
        EXPECT_TRUE(verify_diagonal_vs_euler(tables_for(lazard::FormalGroupLaw::multiplicative(n + 1)), n).passed);
    }
}

TEST(Gysin, SectionIdentity)
{
    for (int n = 0; n <= 6; ++n) {
        EXPECT_TRUE(verify_section_identity(universal(n + 1), n).passed) << n;
        EXPECT_TRUE(verify_section_identity(tables_for(lazard::FormalGroupLaw::additive(n + 1)), n).passed) << n;
        EXPECT_TRUE(verify_section_identity(tables_for(lazard::FormalGroupLaw::multiplicative(n + 1)), n).passed) << n;
    }
}

TEST(Gysin, SectionIdentityDetectsWrongPairing)
{
    // Pairing alpha_k with eta_{n-k} instead of eta'_{n-k} breaks the identity.
    auto t = universal(4);
    auto d = diagonal_class(t, 2);
    auto alpha = d.coefficients("x2");
    GradedPoly wrong(t->table_ptr());
    for (int k = 0; k <= 2; ++k)
        wrong += alpha[k] * t->eta(2 - k);
    EXPECT_NE(wrong, P(t, "1"));
}

TEST(Gysin, ProjectionPropertiesRandomized)
{
    std::mt19937 rng(2024);
    auto t = universal(6);
    auto [additive, images] = additive_specialization(*t);
    int runs = 0;
    for (int n1 = 0; n1 <= 4; ++n1)
        for (int n2 = 0; n2 <= 4; ++n2) {
            auto m = OrientedRingModel::create(t, {{"x1", n1}, {"x2", n2}});
            for (int k = 0; k < 5; ++k, ++runs) {
                auto a = random_class(m, rng), b = random_class(m, rng);
                auto r = verify_projection_properties(a, b, "x1");
                ASSERT_TRUE(r.passed) << r.failures.front();
                ASSERT_TRUE(verify_base_change(a, "x2", additive, images).passed);
            }
        }
    EXPECT_GE(runs, 100);
}

TEST(Gysin, ModelRejectsForeignVariables)
{
    auto t = universal(4);
    auto m = OrientedRingModel::create(t, {{"x1", 2}});
    EXPECT_THROW(ModelClass(m, P(t, "x2")), StructuralError);
    EXPECT_THROW(OrientedRingModel::create(t, {{"b1", 2}}), StructuralError);
    EXPECT_EQ(ModelClass(m, P(t, "x1^3 + x1")).value(), P(t, "x1"));
}
