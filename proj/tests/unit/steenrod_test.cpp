#include <chrono>

#include <gtest/gtest.h>

#include "fglkit/ring/errors.hpp"
#include "fglkit/steenrod/expression.hpp"
#include "test_support.hpp"

using namespace fglkit;
using namespace fglkit::steenrod;

namespace {

MotClass E(const MotRingPtr& ring, const char* text) { return evaluate(*parse_expression(text), ring); }

ring::GradedPoly P(const MotRingPtr& ring, const char* text) { return ring::parse_poly(ring->table_ptr(), text); }

} // namespace

TEST(Steenrod, BocksteinExamples)
{
    auto r = MotRing::create(3, 2);
    EXPECT_EQ(E(r, "beta(u1*u2)").value(), P(r, "v1*u2 - u1*v2"));
    EXPECT_TRUE(E(r, "beta(v1^3)").is_zero());
    EXPECT_TRUE(E(r, "beta(v1)").is_zero());
    EXPECT_EQ(E(r, "beta(u2)").value(), P(r, "v2"));
    auto r2 = MotRing::create(2, 2);
    EXPECT_EQ(E(r2, "beta(u1*u2)").value(), P(r2, "u1*v2 + u2*v1"));
}

TEST(Steenrod, PowerExamples)
{
    for (unsigned l : {2u, 3u, 5u}) {
        auto r = MotRing::create(l, 2);
        auto vl = MotClass::v(r, 1, l);
        EXPECT_EQ(E(r, "P1(v1)"), vl);
        EXPECT_TRUE(E(r, "P1(u1)").is_zero());
        EXPECT_EQ(E(r, "P0(u1)"), MotClass::u(r, 1));
        EXPECT_EQ(E(r, "P1(v1*u2 - u1*v2)"), vl * MotClass::u(r, 2) - MotClass::u(r, 1) * MotClass::v(r, 2, l));
    }
    // P^i(v^n) = C(n,i) v^{il+n-i}: C(4,2) = 6 = 1 mod 5
    auto r5 = MotRing::create(5, 1);
    EXPECT_EQ(E(r5, "P2(v1^4)").value(), P(r5, "v1^12"));
    // C(3,1) = 0 mod 3
    auto r3 = MotRing::create(3, 1);
    EXPECT_TRUE(E(r3, "P1(v1^3)").is_zero());
}

TEST(Steenrod, LucasBinomial)
{
    EXPECT_EQ(lucas_binomial(4, 2, 5), 1u);
    EXPECT_EQ(lucas_binomial(3, 1, 3), 0u);
    EXPECT_EQ(lucas_binomial(10, 3, 7), 1u);  // 120 = 1 mod 7
    // 1000003 = 0b11110100001001000011
    EXPECT_EQ(lucas_binomial(1000003, 3, 2), 1u);
    EXPECT_EQ(lucas_binomial(1000003, 16, 2), 0u);
    EXPECT_EQ(lucas_binomial(2, 3, 5), 0u);
}

TEST(Steenrod, MilnorExamples)
{
    for (unsigned l : {2u, 3u, 5u}) {
        auto r = MotRing::create(l, 2);
        EXPECT_EQ(E(r, "Q1(u1)"), MotClass::v(r, 1, l));
        EXPECT_TRUE(E(r, "Q1(v1^2)").is_zero());
    }
}

TEST(Steenrod, ObstructionClass)
{
    for (unsigned l : {2u, 3u, 5u}) {
        auto start = std::chrono::steady_clock::now();
        auto report = verify_obstruction_class(l);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        EXPECT_TRUE(report.passed) << (report.failures.empty() ? "" : report.failures.front());
        EXPECT_LT(secs, 1.0);
        EXPECT_TRUE(verify_truncation_nonvanishing(l).passed);
    }
    // The literal composite Q1 = q1 beta - beta q1 gives the negative of the stated class.
    auto r = MotRing::create(3, 2);
    EXPECT_EQ(E(r, "Q1(beta(u1*u2))").value(), P(r, "-v1^3*v2 + v1*v2^3"));
    EXPECT_EQ(E(r, "beta(P1(beta(u1*u2)))").value(), P(r, "v1^3*v2 - v1*v2^3"));
}

TEST(Steenrod, Truncation)
{
    auto r = MotRing::create(3, 2);
    EXPECT_TRUE(truncate_to_approximation(MotClass::v(r, 1, 4), {3, 3}).is_zero());
    auto c = E(r, "v1^3*v2 - v1*v2^3 + v1^5");
    auto t = truncate_to_approximation(c, {3, 3});
    EXPECT_EQ(t.value(), P(r, "v1^3*v2 - v1*v2^3"));
    EXPECT_EQ(truncate_to_approximation(t, {3, 3}), t);
    // operations descend to the quotient
    auto tr = r->truncated({3, 3});
    auto x = MotClass(tr, P(r, "u1*v1^2 + u2*v2^3"));
    EXPECT_EQ(truncate_to_approximation(milnor_q(1, MotClass(r, x.value())), {3, 3}).value(), milnor_q(1, x).value());
}

TEST(Steenrod, PropertySuites)
{
    for (unsigned l : {2u, 3u, 5u}) {
        for (const auto& report : {verify_bockstein_square(l, 200), verify_bockstein_derivation(l, 200),
                                   verify_cartan_associativity(l, 200), verify_bidegrees(l, 200)}) {
            EXPECT_TRUE(report.passed) << report.name << ": "
                                       << (report.failures.empty() ? "" : report.failures.front());
            EXPECT_GE(report.checked, 200);
        }
        auto q1 = verify_q1_derivation(l, 200);
        EXPECT_TRUE(q1.passed);
        std::cout << "[ info ] " << q1.name << (q1.warning ? ": " + q1.detail : ": holds") << "\n";
    }
}

TEST(Expression, Ast)
{
    EXPECT_EQ(to_string(*parse_expression("beta(u1)")), "beta(u1)");
    EXPECT_EQ(to_string(*parse_expression("Q1(beta(u1*u2))")), "Q1(beta(mul(u1,u2)))");
    EXPECT_EQ(to_string(*parse_expression(" 2*v1^3 - -u2 + P2( q1(v1) ) ")),
              "add(sub(mul(2,pow(v1,3)),neg(u2)),P2(q1(v1)))");
}

TEST(Expression, Diagnostics)
{
    try {
        parse_expression("beta(u1");
        FAIL() << "no error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 8u);
        EXPECT_EQ(e.expected(), std::vector<std::string>{"')'"});
    }
    try {
        parse_expression("u1 + w2");
        FAIL() << "no error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 6u);
    }
    EXPECT_THROW(parse_expression(""), ParseError);
    EXPECT_THROW(parse_expression("beta u1"), ParseError);
    EXPECT_THROW(parse_expression("u1 u2"), ParseError);
    auto r = MotRing::create(3, 2);
    try {
        E(r, "u1 * v3");
        FAIL() << "no error";
    } catch (const ExpressionError& e) {
        EXPECT_EQ(e.offset(), 6u);
    }
    EXPECT_THROW(E(r, "Q0(u1)"), ExpressionError);
    EXPECT_THROW(E(r, "q0(u1)"), ExpressionError);
}

TEST(Steenrod, RingValidation)
{
    EXPECT_THROW(MotRing::create(4, 2), DomainError);
    EXPECT_THROW(MotRing::create(3, 0), DomainError);
    EXPECT_THROW(MotRing::create(3, 2, std::vector<int>{1}), DomainError);
    auto r = MotRing::create(3, 2);
    EXPECT_EQ((MotClass::u(r, 1) * MotClass::u(r, 1)).is_zero(), true);
    EXPECT_EQ(E(r, "u1*v1").bidegree(), (Bidegree{3, 2}));
}
