#include <chrono>
#include <random>
#include <thread>

#include <gtest/gtest.h>

#include "../oracle/numeric_fgl.hpp"
#include "fglkit/lazard/lazard_tables.hpp"
#include "fglkit/ring/errors.hpp"
#include "fglkit/ring/text.hpp"
#include "test_support.hpp"

using namespace fglkit;
using namespace fglkit::lazard;
using ring::GradedPoly;

namespace {

std::shared_ptr<const FormalGroupLaw> universal(int D)
{
    return std::make_shared<const FormalGroupLaw>(FormalGroupLaw::universal(D));
}

GradedPoly P(const ring::TablePtr& t, const char* s) { return ring::parse_poly(t, s); }

// Value of p at b_n = point[n-1]; p must not involve formal variables.
mpq_class evaluate(const GradedPoly& p, const std::vector<long>& point)
{
    mpq_class total = 0;
    const auto& table = p.table();
    for (const auto& t : p.terms()) {
        mpz_class v = t.coefficient;
        for (std::size_t i = 0; i < table.size(); ++i) {
            unsigned e = t.monomial[i];
            if (!e)
                continue;
            const auto& name = table[i].name;
            EXPECT_EQ(name[0], 'b') << "unexpected generator " << name;
            long b = point.at(std::stoul(name.substr(1)) - 1);
            mpz_class power;
            mpz_pow_ui(power.get_mpz_t(), mpz_class(b).get_mpz_t(), e);
            v *= power;
        }
        total += v;
    }
    return total;
}

std::vector<long> random_point(std::mt19937& rng, int n)
{
    std::uniform_int_distribution<long> d(-7, 7);
    std::vector<long> out;
    for (int i = 0; i < n; ++i)
        out.push_back(d(rng));
    return out;
}

} // namespace

TEST(Fgl, UniversalLowDegreeCoefficients)
{
    auto f = universal(6);
    const auto& t = f->table_ptr();
    EXPECT_EQ(f->coefficient(1, 1), P(t, "2*b1"));
    EXPECT_EQ(f->coefficient(1, 2), P(t, "3*b2 - 2*b1^2"));
    EXPECT_EQ(f->coefficient(2, 1), f->coefficient(1, 2));
    EXPECT_EQ(f->coefficient(1, 0), P(t, "1"));
    EXPECT_TRUE(f->coefficient(2, 0).is_zero());
    EXPECT_TRUE(f->coefficient(-1, 3).is_zero());
    EXPECT_THROW(f->coefficient(4, 3), BoundError);
}

TEST(Fgl, CoefficientsMatchNumericOracle)
{
    const int D = 9;
    auto f = universal(D);
    std::mt19937 rng(17);
    for (int trial = 0; trial < 4; ++trial) {
        auto point = random_point(rng, D - 1);
        auto ref = oracle::numeric_universal(point, D);
        for (int i = 0; i <= D; ++i)
            for (int j = 0; i + j <= D; ++j)
                ASSERT_EQ(evaluate(f->coefficient(i, j), point), ref.F[i][j]) << "a_" << i << j;
    }
}

TEST(Fgl, LogSeries)
{
    auto f = universal(5);
    const auto& t = f->table_ptr();
    ASSERT_TRUE(f->log_series().has_value());
    EXPECT_EQ(f->log_series()->body(), P(t, "t - b1*t^2 + 2*b1^2*t^3 - b2*t^3 "
                                            "- 5*b1^3*t^4 + 5*b1*b2*t^4 - b3*t^4 + "
                                            "14*b1^4*t^5 - 21*b1^2*b2*t^5 + 3*b2^2*t^5 + 6*b1*b3*t^5 - b4*t^5"));
}

TEST(Fgl, AxiomsHoldForStandardLaws)
{
    for (int D : {2, 5, 8}) {
        auto u = verify_axioms(FormalGroupLaw::universal(D));
        EXPECT_TRUE(u.passed) << u.name << ": " << (u.failures.empty() ? "" : u.failures.front());
        EXPECT_TRUE(verify_axioms(FormalGroupLaw::additive(D)).passed);
        EXPECT_TRUE(verify_axioms(FormalGroupLaw::multiplicative(D)).passed);
    }
}

TEST(Fgl, AxiomsDetectBrokenLaw)
{
    auto table = fgl_table({{"c", 1}});
    auto c = GradedPoly::generator(table, "c");
    // x + y + c x^2 y is commutative-broken and not associative
    auto bad = FormalGroupLaw::from_coefficients(table, 4, {{{2, 1}, c}});
    auto r = verify_axioms(bad);
    EXPECT_FALSE(r.passed);
    EXPECT_FALSE(r.failures.empty());
}

TEST(Fgl, AxiomsAtDegreeTwelveWithinBudget)
{
    auto start = std::chrono::steady_clock::now();
    auto r = verify_axioms(FormalGroupLaw::universal(12));
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_TRUE(r.passed);
    EXPECT_LT(secs, 60.0);
    std::cout << "[ info ] D=12 axioms: " << secs << " s, " << r.detail << "\n";
}

TEST(Lazard, CpClasses)
{
    LazardTables tables(universal(6));
    const auto& t = tables.table_ptr();
    EXPECT_EQ(tables.cp_class(0), P(t, "1"));
    EXPECT_EQ(tables.cp_class(1), P(t, "-2*b1"));
    EXPECT_EQ(tables.cp_class(2), P(t, "6*b1^2 - 3*b2"));
    EXPECT_THROW(tables.cp_class(6), BoundError);
}

TEST(Lazard, CpClassesMatchRationalLog)
{
    const int D = 11;
    LazardTables tables(universal(D));
    EXPECT_TRUE(verify_cp_log_oracle(tables, 10).passed);
    EXPECT_TRUE(verify_cp_recursion(tables, 10).passed);
    std::mt19937 rng(5);
    auto point = random_point(rng, D - 1);
    auto ref = oracle::numeric_universal(point, D);
    for (int n = 0; n <= 10; ++n) {
        EXPECT_EQ(evaluate(tables.cp_class(n), point), (n + 1) * ref.log[n + 1]) << "n=" << n;
        EXPECT_EQ(tables.cp_class(n).homogeneous_weight(), n);
    }
}

TEST(Lazard, PowerCoefficients)
{
    const int D = 7;
    LazardTables tables(universal(D));
    const auto& t = tables.table_ptr();
    EXPECT_EQ(tables.power_coefficient(1, 1, 1), P(t, "2*b1"));
    EXPECT_TRUE(tables.power_coefficient(2, 1, 0).is_zero());
    EXPECT_EQ(tables.power_coefficient(0, 0, 0), P(t, "1"));
    EXPECT_TRUE(tables.power_coefficient(0, 1, 0).is_zero());
    for (int n = 0; n <= 3; ++n)
        for (int m = 0; n + m <= D; ++m) {
            auto c = tables.power_coefficient(n + m, n, m);
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), n + m, n);
            EXPECT_EQ(c.constant_term(), binom);
        }
    std::mt19937 rng(9);
    auto point = random_point(rng, D - 1);
    auto ref = oracle::numeric_universal(point, D);
    for (int k = 0; k <= 4; ++k) {
        auto pk = oracle::numeric_power(ref.F, k, D);
        for (int n = 0; n <= D; ++n)
            for (int m = 0; n + m <= D; ++m)
                ASSERT_EQ(evaluate(tables.power_coefficient(k, n, m), point), pk[n][m]) << k << n << m;
    }
}

TEST(Lazard, EtaPrimeAndMatrices)
{
    LazardTables tables(universal(8));
    const auto& t = tables.table_ptr();
    EXPECT_EQ(tables.eta_prime(0), P(t, "1"));
    EXPECT_EQ(tables.eta_prime(1), P(t, "-2*b1"));
    EXPECT_EQ(tables.eta(1), P(t, "2*b1"));
    auto prod = multiply(tables.matrix_m(3), tables.matrix_m_inverse(3));
    for (int r = 0; r <= 3; ++r)
        for (int c = 0; c <= 3; ++c)
            EXPECT_EQ(prod[r][c], r == c ? tables.one() : tables.zero());
    EXPECT_TRUE(verify_eta_pairing(tables, 7, 6).passed);
}

TEST(Lazard, FormalInverse)
{
    LazardTables tables(universal(7));
    EXPECT_TRUE(verify_formal_inverse(tables).passed);
    auto inv = tables.formal_inverse("x");
    const auto& t = tables.table_ptr();
    EXPECT_EQ(inv.coefficient(2), P(t, "2*b1"));

    LazardTables add(std::make_shared<const FormalGroupLaw>(FormalGroupLaw::additive(6)));
    EXPECT_EQ(add.formal_inverse("x").body(), P(add.table_ptr(), "-x"));
    LazardTables mult(std::make_shared<const FormalGroupLaw>(FormalGroupLaw::multiplicative(6)));
    EXPECT_TRUE(verify_formal_inverse(mult).passed);
    // -x / (1 + v x)
    EXPECT_EQ(mult.formal_inverse("x").body(),
              P(mult.table_ptr(), "-x + v*x^2 - v^2*x^3 + v^3*x^4 - v^4*x^5 + v^5*x^6"));
}

TEST(Lazard, SpecializationToAdditive)
{
    auto u = FormalGroupLaw::universal(6);
    auto target = fgl_table({});
    std::map<std::string, GradedPoly> images;
    for (int n = 1; n < 6; ++n)
        images.emplace("b" + std::to_string(n), GradedPoly(target));
    auto a = u.specialized(target, images, FglKind::additive);
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; i + j <= 6; ++j)
            EXPECT_EQ(a.coefficient(i, j), FormalGroupLaw::additive(6).coefficient(i, j));
}

TEST(Lazard, ThreadSafeLazyTables)
{
    LazardTables tables(universal(9));
    std::vector<std::thread> threads;
    std::vector<GradedPoly> out(4, tables.zero());
    for (int k = 0; k < 4; ++k)
        threads.emplace_back([&, k] { out[k] = tables.cp_class(8 - k) * tables.power_coefficient(k, 2, 3); });
    for (auto& th : threads)
        th.join();
    for (int k = 0; k < 4; ++k)
        EXPECT_EQ(out[k], tables.cp_class(8 - k) * tables.power_coefficient(k, 2, 3));
}
