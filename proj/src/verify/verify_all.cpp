#include "fglkit/verify/verify_all.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>

#include <fmt/format.h>

#include "fglkit/gysin/gysin.hpp"
#include "fglkit/hopf/hopf_cp.hpp"
#include "fglkit/ring/errors.hpp"
#include "fglkit/steenrod/steenrod.hpp"

namespace fglkit::verify {

using lazard::FormalGroupLaw;
using lazard::LazardTables;
using Tables = std::shared_ptr<const LazardTables>;

namespace {

Tables make_tables(FormalGroupLaw fgl)
{
    return std::make_shared<const LazardTables>(std::make_shared<const FormalGroupLaw>(std::move(fgl)));
}

void run(std::vector<TimedReport>& out, const std::function<Report()>& check)
{
    auto start = std::chrono::steady_clock::now();
    Report r = check();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back({std::move(r), secs});
}

Report projection_suite(const Tables& universal, int max_order, int per_config)
{
    Report report(fmt::format("projection-properties[n_i<={},{} per config]", max_order, per_config));
    auto [additive, images] = gysin::additive_specialization(*universal);
    std::mt19937 rng(20240611);
    const auto& table = universal->table_ptr();
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<int> terms(1, 6);
    for (int n1 = 0; n1 <= max_order; ++n1)
        for (int n2 = 0; n2 <= max_order; ++n2) {
            auto model = gysin::OrientedRingModel::create(universal, {{"x1", n1}, {"x2", n2}});
            auto random_class = [&]() {
                std::vector<ring::Term> out;
                std::uniform_int_distribution<unsigned> e1(0, static_cast<unsigned>(n1)), e2(0, static_cast<unsigned>(n2));
                std::uniform_int_distribution<int> bgen(0, 2);
                int t = terms(rng);
                for (int k = 0; k < t; ++k) {
                    ring::Monomial m;
                    m.set(table->index_of("x1"), e1(rng));
                    m.set(table->index_of("x2"), e2(rng));
                    int b = bgen(rng);
                    if (b > 0 && table->contains(fmt::format("b{}", b)))
                        m.set(table->index_of(fmt::format("b{}", b)), 1);
                    out.push_back({m, coef(rng)});
                }
                return gysin::ModelClass(model, ring::GradedPoly::from_terms(table, std::move(out)));
            };
            for (int k = 0; k < per_config; ++k) {
                auto a = random_class(), b = random_class();
                report.merge(gysin::verify_projection_properties(a, b, "x1"));
                report.merge(gysin::verify_projection_properties(a, b, "x2"));
                report.merge(gysin::verify_base_change(a, "x1", additive, images));
            }
        }
    return report;
}

} // namespace

std::vector<TimedReport> verify_all(int degree, Tables universal)
{
    if (degree < 1)
        throw DomainError("verify-all needs degree >= 1");
    if (!universal || universal->degree() < degree + 1)
        throw BoundError(fmt::format("verify-all at degree {} needs the universal law at D >= {}", degree, degree + 1));
    std::vector<TimedReport> out;
    const int d = degree;

    run(out, [&] { return lazard::verify_axioms(universal->fgl().truncated(d)); });
    run(out, [&] { return lazard::verify_axioms(FormalGroupLaw::additive(d)); });
    run(out, [&] { return lazard::verify_axioms(FormalGroupLaw::multiplicative(d)); });
    run(out, [&] { return lazard::verify_cp_recursion(*universal, d); });
    run(out, [&] { return lazard::verify_cp_log_oracle(*universal, d); });
    run(out, [&] { return lazard::verify_eta_pairing(*universal, d, std::min(d, 6)); });
    run(out, [&] { return lazard::verify_formal_inverse(*universal); });

    hopf::HopfAlgebra h(universal);
    run(out, [&] { return hopf::verify_basis_round_trip(h, d); });
    run(out, [&] { return hopf::verify_coproduct(h, d); });
    run(out, [&] { return hopf::verify_product(h, d); });
    run(out, [&] { return hopf::verify_hopf_compatibility(h, std::min(d, 6)); });

    std::vector<Tables> laws = {universal, make_tables(FormalGroupLaw::additive(d + 1)),
                                make_tables(FormalGroupLaw::multiplicative(d + 1))};
    for (const auto& law : laws)
        run(out, [&] {
            Report r(fmt::format("diagonal-vs-euler[{},n<={}]", lazard::to_string(law->fgl().kind()), std::min(d, 5)));
            for (int n = 1; n <= std::min(d, 5); ++n)
                r.merge(gysin::verify_diagonal_vs_euler(law, n));
            return r;
        });
    for (const auto& law : laws)
        run(out, [&] {
            Report r(fmt::format("section-identity[{},n<={}]", lazard::to_string(law->fgl().kind()), std::min(d, 6)));
            for (int n = 0; n <= std::min(d, 6); ++n)
                r.merge(gysin::verify_section_identity(law, n));
            return r;
        });
    run(out, [&] { return projection_suite(universal, std::min(d, 4), 4); });

    for (unsigned l : {2u, 3u, 5u}) {
        run(out, [&] { return steenrod::verify_bockstein_square(l, 200); });
        run(out, [&] { return steenrod::verify_bockstein_derivation(l, 200); });
        run(out, [&] { return steenrod::verify_cartan_associativity(l, 200); });
        run(out, [&] { return steenrod::verify_bidegrees(l, 200); });
        run(out, [&] { return steenrod::verify_q1_derivation(l, 200); });
        run(out, [&] { return steenrod::verify_obstruction_class(l); });
        run(out, [&] { return steenrod::verify_truncation_nonvanishing(l); });
    }
    return out;
}

bool all_passed(const std::vector<TimedReport>& reports)
{
    return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.report.passed; });
}

} // namespace fglkit::verify
