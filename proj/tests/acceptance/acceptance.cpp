// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria (0 when all pass).

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <fmt/format.h>
#include <unistd.h>
#include <sys/wait.h>

#include "../oracle/numeric_fgl.hpp"
#include "fglkit/cache/table_cache.hpp"
#include "fglkit/gysin/gysin.hpp"
#include "fglkit/hopf/hopf_cp.hpp"
#include "fglkit/lazard/lazard_tables.hpp"
#include "fglkit/ring/text.hpp"
#include "fglkit/steenrod/expression.hpp"
#include "fglkit/steenrod/steenrod.hpp"

using namespace fglkit;
using lazard::FormalGroupLaw;
using lazard::LazardTables;
using ring::GradedPoly;
using Tables = std::shared_ptr<const LazardTables>;

namespace {

// Outcome of one criterion: ok plus a short reason shown on the line.
struct Verdict
{
    bool ok = true;
    std::string note;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            note = what;
        }
    }
    void absorb(const Report& r)
    {
        require(r.passed, r.name + (r.failures.empty() ? std::string() : ": " + r.failures.front()));
    }
};

Tables tables_for(FormalGroupLaw fgl)
{
    return std::make_shared<const LazardTables>(std::make_shared<const FormalGroupLaw>(std::move(fgl)));
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Value of a b-polynomial at b_n = point[n-1].
mpq_class evaluate(const GradedPoly& p, const std::vector<long>& point)
{
    mpq_class total = 0;
    const auto& table = p.table();
    for (const auto& t : p.terms()) {
        mpz_class v = t.coefficient;
        for (std::size_t i = 0; i < table.size(); ++i)
            if (unsigned e = t.monomial[i]) {
                mpz_class power;
                mpz_pow_ui(power.get_mpz_t(), mpz_class(point.at(std::stoul(table[i].name.substr(1)) - 1)).get_mpz_t(), e);
                v *= power;
            }
        total += v;
    }
    return total;
}

Verdict fgl_axioms()
{
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    v.absorb(lazard::verify_axioms(FormalGroupLaw::universal(12)));
    double t = seconds_since(start);
    v.require(t <= 60, fmt::format("took {:.1f} s", t));
    if (v.ok)
        v.note = fmt::format("{:.2f} s", t);
    return v;
}

Verdict cp_classes()
{
    Verdict v;
    LazardTables tables(std::make_shared<const FormalGroupLaw>(FormalGroupLaw::universal(11)));
    v.absorb(lazard::verify_cp_recursion(tables, 10));
    v.absorb(lazard::verify_cp_log_oracle(tables, 10));
    // Independent rational logarithm at sample points.
    std::mt19937 rng(31);
    std::uniform_int_distribution<long> d(-9, 9);
    for (int sample = 0; sample < 4; ++sample) {
        std::vector<long> point;
        for (int i = 0; i < 10; ++i)
            point.push_back(d(rng));
        auto ref = oracle::numeric_universal(point, 11);
        for (int n = 0; n <= 10; ++n)
            v.require(evaluate(tables.cp_class(n), point) == (n + 1) * ref.log[n + 1], fmt::format("[CP^{}] off the log", n));
    }
    return v;
}

Verdict eta_pairing()
{
    Verdict v;
    LazardTables tables(std::make_shared<const FormalGroupLaw>(FormalGroupLaw::universal(11)));
    v.absorb(lazard::verify_eta_pairing(tables, 10, 6));
    return v;
}

Verdict basis_round_trip()
{
    Verdict v;
    hopf::HopfAlgebra h(tables_for(FormalGroupLaw::universal(11)));
    v.absorb(hopf::verify_basis_round_trip(h, 10));
    return v;
}

Verdict coproduct()
{
    Verdict v;
    hopf::HopfAlgebra h(tables_for(FormalGroupLaw::universal(9)));
    v.absorb(hopf::verify_coproduct(h, 8));
    return v;
}

Verdict product()
{
    Verdict v;
    hopf::HopfAlgebra h(tables_for(FormalGroupLaw::universal(9)));
    v.absorb(hopf::verify_product(h, 8));
    const auto& t = h.table_ptr();
    for (int n = 0; n <= 8; ++n)
        for (int m = 0; n + m <= 8; ++m) {
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n + m), static_cast<unsigned long>(n));
            v.require(h.segre_coefficient(n + m, n, m) == GradedPoly::constant(t, binom),
                      fmt::format("leading coefficient of p_{} p_{}", n, m));
        }
    for (int m = 0; m <= 8; ++m) {
        auto pm = h.basis_element(hopf::Basis::p, m);
        v.require(h.product(h.basis_element(hopf::Basis::p, 0), pm) == pm, fmt::format("p_0 p_{} != p_{}", m, m));
    }
    return v;
}

Verdict diagonal_vs_euler()
{
    Verdict v;
    auto tables = tables_for(FormalGroupLaw::universal(6));
    double at5 = 0;
    for (int n = 1; n <= 5; ++n) {
        auto start = std::chrono::steady_clock::now();
        v.absorb(gysin::verify_diagonal_vs_euler(tables, n));
        if (n == 5)
            at5 = seconds_since(start);
    }
    v.require(at5 <= 120, fmt::format("n=5 took {:.1f} s", at5));
    if (v.ok)
        v.note = fmt::format("n=5 in {:.3f} s", at5);
    return v;
}

Verdict section_identity()
{
    Verdict v;
    for (auto fgl : {FormalGroupLaw::universal(7), FormalGroupLaw::additive(7), FormalGroupLaw::multiplicative(7)}) {
        auto tables = tables_for(std::move(fgl));
        for (int n = 0; n <= 6; ++n)
            v.absorb(gysin::verify_section_identity(tables, n));
    }
    return v;
}

Verdict projection_properties()
{
    Verdict v;
    auto universal = tables_for(FormalGroupLaw::universal(5));
    auto [additive, images] = gysin::additive_specialization(*universal);
    const auto& table = universal->table_ptr();
    std::mt19937 rng(4099);
    std::uniform_int_distribution<int> coef(-5, 5), terms(1, 6), bgen(0, 3);
    int runs = 0;
    for (int n1 = 0; n1 <= 4; ++n1)
        for (int n2 = 0; n2 <= 4; ++n2) {
            auto model = gysin::OrientedRingModel::create(universal, {{"x1", n1}, {"x2", n2}});
            std::uniform_int_distribution<unsigned> e1(0, static_cast<unsigned>(n1)), e2(0, static_cast<unsigned>(n2));
            auto random_class = [&] {
                std::vector<ring::Term> out;
                for (int k = terms(rng); k > 0; --k) {
                    ring::Monomial m;
                    m.set(table->index_of("x1"), e1(rng));
                    m.set(table->index_of("x2"), e2(rng));
                    if (int b = bgen(rng))
                        m.set(table->index_of(fmt::format("b{}", b)), 1);
                    out.push_back({m, coef(rng)});
                }
                return gysin::ModelClass(model, GradedPoly::from_terms(table, std::move(out)));
            };
            for (int k = 0; k < 100; ++k, ++runs) {
                auto a = random_class(), b = random_class();
                v.absorb(gysin::verify_projection_properties(a, b, "x1"));
                v.absorb(gysin::verify_projection_properties(a, b, "x2"));
                v.absorb(gysin::verify_base_change(a, "x2", additive, images));
            }
        }
    if (v.ok)
        v.note = fmt::format("{} inputs over 25 configurations", runs);
    return v;
}

// The expected class v1^l v2 - v1 v2^l built from generators.
steenrod::MotClass expected_obstruction(const steenrod::MotRingPtr& ring)
{
    unsigned l = ring->prime();
    return steenrod::MotClass::v(ring, 1, l) * steenrod::MotClass::v(ring, 2) -
           steenrod::MotClass::v(ring, 1) * steenrod::MotClass::v(ring, 2, l);
}

Verdict obstruction_class()
{
    Verdict v;
    auto start = std::chrono::steady_clock::now();
    std::string units;
    for (unsigned l : {2u, 3u, 5u}) {
        auto ring = steenrod::MotRing::create(l, 2);
        auto u1 = steenrod::MotClass::u(ring, 1), u2 = steenrod::MotClass::u(ring, 2);
        auto beta = steenrod::evaluate(*steenrod::parse_expression("beta(u1*u2)"), ring);
        v.require(beta == steenrod::MotClass::v(ring, 1) * u2 - u1 * steenrod::MotClass::v(ring, 2),
                  fmt::format("beta(u1*u2) at l={}", l));
        auto q = steenrod::evaluate(*steenrod::parse_expression("Q1(beta(u1*u2))"), ring);
        auto expected = expected_obstruction(ring);
        int unit = 0;
        for (long c = 1; c < static_cast<long>(l) && !unit; ++c)
            if (q == steenrod::MotClass::scalar(ring, c) * expected)
                unit = static_cast<int>(c);
        v.require(unit != 0, fmt::format("Q1(beta(u1*u2)) at l={} is {}", l, ring::to_string(q.value())));
        units += fmt::format("{}l={}: unit {}", units.empty() ? "" : ", ", l, unit);
    }
    double t = seconds_since(start);
    v.require(t <= 1, fmt::format("took {:.2f} s", t));
    if (v.ok)
        v.note = units;
    return v;
}

Verdict truncation_nonvanishing()
{
    Verdict v;
    for (unsigned l : {2u, 3u, 5u}) {
        auto ring = steenrod::MotRing::create(l, 2);
        auto q = steenrod::evaluate(*steenrod::parse_expression("Q1(beta(u1*u2))"), ring);
        int L = static_cast<int>(l);
        auto truncated = steenrod::truncate_to_approximation(q, {L, L});
        v.require(!truncated.is_zero(), fmt::format("vanishes after truncation at l={}", l));
        // Independent: the truncated ring still holds the expected class.
        auto small = ring->truncated({L, L});
        v.require(!expected_obstruction(small).is_zero(), fmt::format("expected class vanishes at l={}", l));
    }
    return v;
}

Verdict operation_suite()
{
    Verdict v;
    for (unsigned l : {2u, 3u, 5u}) {
        v.absorb(steenrod::verify_bockstein_square(l, 200));
        v.absorb(steenrod::verify_bockstein_derivation(l, 200));
        v.absorb(steenrod::verify_cartan_associativity(l, 200));
        v.absorb(steenrod::verify_bidegrees(l, 200));
    }
    return v;
}

struct Captured
{
    std::string out;
    int status = -1;
};

Captured run_cli(const std::string& args)
{
    Captured c;
    std::string cmd = std::string(FGLKIT_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe)
        return c;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        c.out.append(buf.data(), n);
    int raw = ::pclose(pipe);
    c.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return c;
}

std::vector<std::string> snapshot(const LazardTables& t)
{
    std::vector<std::string> out;
    for (int i = 0; i <= t.degree(); ++i)
        for (int j = 0; i + j <= t.degree(); ++j)
            out.push_back(ring::to_string(t.fgl().coefficient(i, j)));
    for (int n = 0; n < t.degree(); ++n) {
        out.push_back(ring::to_string(t.cp_class(n)));
        out.push_back(ring::to_string(t.eta_prime(n)));
    }
    return out;
}

Verdict cli_determinism()
{
    Verdict v;
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / fmt::format("fglkit-acceptance-{}", ::getpid());
    fs::remove_all(dir);
    ::setenv("FGLKIT_CACHE_DIR", dir.c_str(), 1);

    // First run fills the cache, second reads it.
    auto first = run_cli("verify-all --degree 8");
    auto second = run_cli("verify-all --degree 8");
    v.require(first.status == 0, fmt::format("first run exited {}", first.status));
    v.require(second.status == 0, fmt::format("second run exited {}", second.status));
    v.require(!first.out.empty() && first.out == second.out, "outputs differ");

    cache::TableCache store(dir / "roundtrip");
    LazardTables fresh(std::make_shared<const FormalGroupLaw>(FormalGroupLaw::universal(8)));
    store.store(fresh);
    auto loaded = store.load(8);
    v.require(loaded != nullptr, "cache load at D=8 failed");
    if (loaded)
        v.require(snapshot(*loaded) == snapshot(fresh), "restored tables differ");
    fs::remove_all(dir);
    if (v.ok)
        v.note = fmt::format("{} bytes identical", first.out.size());
    return v;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"FGL axioms for the universal law at D=12", fgl_axioms},
        {"[CP^n] recursion equals (n+1) times the log coefficient of t^(n+1), n <= 10", cp_classes},
        {"eta pairing for n <= 10 and M_n M_n^-1 = 1 for n <= 6", eta_pairing},
        {"basis change round trip for indices <= 10", basis_round_trip},
        {"coproduct two routes, coassociativity, counit for n <= 8", coproduct},
        {"product two routes, leading binomial, p_0 unit for n+m <= 8", product},
        {"diagonal class equals splitting-principle Euler class for n <= 5", diagonal_vs_euler},
        {"section identity for n <= 6 under universal, additive, multiplicative laws", section_identity},
        {"projection formula and projection commutation, 100 inputs per configuration", projection_properties},
        {"Q1(beta(u1*u2)) is a unit times v1^l v2 - v1 v2^l for l = 2, 3, 5", obstruction_class},
        {"obstruction class survives truncation by v_i^(l+1)", truncation_nonvanishing},
        {"beta^2, beta derivation, Cartan, bidegrees on 200 samples per prime", operation_suite},
        {"verify-all --degree 8 is byte-identical across runs; cache round trip at D=8", cli_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.ok = false;
            v.note = std::string("exception: ") + e.what();
        }
        failed += v.ok ? 0 : 1;
        std::cout << (v.ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first
                  << (v.note.empty() ? "" : " (" + v.note + ")") << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed;
}
