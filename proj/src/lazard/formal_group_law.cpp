#include "fglkit/lazard/formal_group_law.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "fglkit/ring/errors.hpp"
#include "fglkit/ring/text.hpp"

namespace fglkit::lazard {

using ring::GradedPoly;
using ring::Monomial;
using ring::TruncatedSeries;
using ring::Truncation;

const std::vector<std::string>& formal_variables()
{
    static const std::vector<std::string> vars = {"t", "x", "y", "z", "x1", "x2", "x3", "x4"};
    return vars;
}

const char* to_string(FglKind kind)
{
    switch (kind) {
    case FglKind::universal:
        return "universal";
    case FglKind::additive:
        return "additive";
    case FglKind::multiplicative:
        return "multiplicative";
    case FglKind::custom:
        break;
    }
    return "custom";
}

ring::TablePtr fgl_table(std::vector<ring::Generator> coefficient_generators)
{
    for (const auto& v : formal_variables())
        coefficient_generators.push_back({v, 0, ring::Parity::even});
    return ring::make_table(std::move(coefficient_generators));
}

ring::TablePtr universal_table(int degree)
{
    if (degree < 1)
        throw DomainError("FGL truncation degree must be at least 1");
    std::vector<ring::Generator> gens;
    for (int n = 1; n < degree; ++n)
        gens.push_back({fmt::format("b{}", n), n, ring::Parity::even});
    if (gens.size() + formal_variables().size() > ring::kMaxGenerators)
        throw BoundError(fmt::format("FGL truncation degree {} exceeds the supported maximum", degree));
    return fgl_table(std::move(gens));
}

FormalGroupLaw::FormalGroupLaw(ring::TablePtr table, int degree, FglKind kind)
    : table_(std::move(table)), degree_(degree), kind_(kind), zero_(table_)
{
    if (degree_ < 1)
        throw DomainError("FGL truncation degree must be at least 1");
    coefficients_.assign(static_cast<std::size_t>(degree_ + 1) * (degree_ + 1), zero_);
}

namespace {

TruncatedSeries universal_exp(const ring::TablePtr& table, int degree)
{
    GradedPoly exp_body = GradedPoly::generator(table, "t");
    for (int n = 1; n < degree; ++n)
        exp_body += GradedPoly::generator(table, fmt::format("b{}", n)) *
                    GradedPoly::generator(table, "t", static_cast<unsigned>(n + 1));
    return TruncatedSeries(exp_body, std::vector<std::string>{"t"}, degree);
}

} // namespace

FormalGroupLaw FormalGroupLaw::universal(int degree)
{
    auto table = universal_table(degree);
    FormalGroupLaw fgl(table, degree, FglKind::universal);

    TruncatedSeries exp = universal_exp(table, degree);
    TruncatedSeries log = ring::reverse(exp);

    auto log_x = ring::compose(log, TruncatedSeries::variable(table, "x", degree));
    auto log_y = ring::compose(log, TruncatedSeries::variable(table, "y", degree));
    auto f = ring::compose(exp, log_x + log_y);

    std::size_t xi = table->index_of("x"), yi = table->index_of("y");
    for (const auto& [i, by_x] : f.body().collect(xi))
        for (const auto& [j, c] : by_x.collect(yi))
            fgl.coefficients_[fgl.cell(static_cast<int>(i), static_cast<int>(j))] = c;
    fgl.exp_ = std::move(exp);
    fgl.log_ = std::move(log);
    return fgl;
}

FormalGroupLaw FormalGroupLaw::universal_from_coefficients(int degree,
                                                           const std::map<std::pair<int, int>, GradedPoly>& coefficients)
{
    auto table = universal_table(degree);
    FormalGroupLaw fgl = from_coefficients(table, degree, coefficients, FglKind::universal);
    fgl.exp_ = universal_exp(table, degree);
    fgl.log_ = ring::reverse(*fgl.exp_);
    return fgl;
}

FormalGroupLaw FormalGroupLaw::additive(int degree)
{
    return from_coefficients(fgl_table({}), degree, {}, FglKind::additive);
}

FormalGroupLaw FormalGroupLaw::multiplicative(int degree)
{
    auto table = fgl_table({{"v", 1, ring::Parity::even}});
    std::map<std::pair<int, int>, GradedPoly> cells;
    if (degree >= 2)
        cells.emplace(std::pair{1, 1}, GradedPoly::generator(table, "v"));
    return from_coefficients(table, degree, cells, FglKind::multiplicative);
}

FormalGroupLaw FormalGroupLaw::from_coefficients(ring::TablePtr table, int degree,
                                                 const std::map<std::pair<int, int>, GradedPoly>& coefficients,
                                                 FglKind kind)
{
    FormalGroupLaw fgl(table, degree, kind);
    fgl.coefficients_[fgl.cell(1, 0)] = GradedPoly::constant(table, 1);
    fgl.coefficients_[fgl.cell(0, 1)] = GradedPoly::constant(table, 1);
    for (const auto& [ij, c] : coefficients) {
        auto [i, j] = ij;
        if (i < 0 || j < 0 || i + j > degree)
            throw BoundError(fmt::format("coefficient a_{{{},{}}} outside truncation degree {}", i, j, degree));
        if (!c.table().same_as(*table))
            throw StructuralError("FGL coefficient over a different generator table");
        fgl.coefficients_[fgl.cell(i, j)] = c;
    }
    return fgl;
}

const GradedPoly& FormalGroupLaw::coefficient(int i, int j) const
{
    if (i < 0 || j < 0)
        return zero_;
    if (i + j > degree_)
        throw BoundError(fmt::format("a_{{{},{}}} needs truncation degree {} (have {})", i, j, i + j, degree_));
    return coefficients_[cell(i, j)];
}

GradedPoly FormalGroupLaw::apply(const GradedPoly& p, const GradedPoly& q, const Truncation& trunc) const
{
    // Group by powers of the larger argument so the expensive products are
    // taken against small partial sums.
    bool by_p = p.size() >= q.size();
    const GradedPoly& big = by_p ? p : q;
    const GradedPoly& small = by_p ? q : p;

    std::vector<GradedPoly> big_pow{GradedPoly::constant(table_, 1)};
    std::vector<GradedPoly> small_pow{GradedPoly::constant(table_, 1)};
    for (int k = 1; k <= degree_; ++k) {
        big_pow.push_back(ring::multiply(big_pow.back(), big, trunc));
        small_pow.push_back(ring::multiply(small_pow.back(), small, trunc));
    }

    GradedPoly result(table_);
    for (int a = 0; a <= degree_; ++a) {
        if (big_pow[a].is_zero())
            continue;
        GradedPoly inner(table_);
        for (int b = 0; a + b <= degree_; ++b) {
            const GradedPoly& c = by_p ? coefficients_[cell(a, b)] : coefficients_[cell(b, a)];
            if (c.is_zero() || small_pow[b].is_zero())
                continue;
            inner += ring::multiply(c, small_pow[b], trunc);
        }
        if (!inner.is_zero())
            result += ring::multiply(big_pow[a], inner, trunc);
    }
    return result;
}

TruncatedSeries FormalGroupLaw::series(const std::string& x, const std::string& y) const
{
    std::size_t xi = table_->index_of(x), yi = table_->index_of(y);
    std::vector<ring::Term> terms;
    for (int i = 0; i <= degree_; ++i)
        for (int j = 0; i + j <= degree_; ++j)
            for (const auto& t : coefficients_[cell(i, j)].terms()) {
                Monomial m = t.monomial;
                m.set(xi, m[xi] + static_cast<unsigned>(i));
                m.set(yi, m[yi] + static_cast<unsigned>(j));
                terms.push_back(ring::Term{m, t.coefficient});
            }
    return TruncatedSeries(GradedPoly::from_terms(table_, std::move(terms)), std::vector<std::string>{x, y}, degree_);
}

FormalGroupLaw FormalGroupLaw::specialized(ring::TablePtr target, const std::map<std::string, GradedPoly>& images,
                                           FglKind kind) const
{
    FormalGroupLaw out(target, degree_, kind);
    for (int i = 0; i <= degree_; ++i)
        for (int j = 0; i + j <= degree_; ++j)
            out.coefficients_[out.cell(i, j)] = ring::specialize(coefficients_[cell(i, j)], target, images);
    return out;
}

FormalGroupLaw FormalGroupLaw::truncated(int degree) const
{
    if (degree > degree_)
        throw BoundError(fmt::format("cannot raise truncation degree from {} to {}", degree_, degree));
    FormalGroupLaw out(table_, degree, kind_);
    for (int i = 0; i <= degree; ++i)
        for (int j = 0; i + j <= degree; ++j)
            out.coefficients_[out.cell(i, j)] = coefficients_[cell(i, j)];
    if (exp_)
        out.exp_ = TruncatedSeries(exp_->body(), exp_->formal_mask(), degree);
    if (log_)
        out.log_ = TruncatedSeries(log_->body(), log_->formal_mask(), degree);
    return out;
}

Report verify_axioms(const FormalGroupLaw& fgl)
{
    Report report(fmt::format("fgl-axioms[{},D={}]", to_string(fgl.kind()), fgl.degree()));
    const int D = fgl.degree();
    auto one = GradedPoly::constant(fgl.table_ptr(), 1);
    GradedPoly zero(fgl.table_ptr());

    for (int i = 0; i <= D; ++i) {
        const auto& expect = i == 1 ? one : zero;
        ++report.checked;
        if (!(fgl.coefficient(i, 0) == expect))
            report.fail(fmt::format("unitality: a_{{{},0}} = {}", i, ring::to_string(fgl.coefficient(i, 0))));
        if (!(fgl.coefficient(0, i) == expect))
            report.fail(fmt::format("unitality: a_{{0,{}}} = {}", i, ring::to_string(fgl.coefficient(0, i))));
    }
    for (int i = 0; i <= D; ++i)
        for (int j = i + 1; i + j <= D; ++j) {
            ++report.checked;
            if (!(fgl.coefficient(i, j) == fgl.coefficient(j, i)))
                report.fail(fmt::format("commutativity: a_{{{},{}}} != a_{{{},{}}}", i, j, j, i));
        }

    const auto& table = fgl.table_ptr();
    auto trunc = Truncation::formal(table->mask_of({"x", "y", "z"}), D);
    auto x = GradedPoly::generator(table, "x");
    auto y = GradedPoly::generator(table, "y");
    auto z = GradedPoly::generator(table, "z");
    auto lhs = fgl.apply(fgl.apply(x, y, trunc), z, trunc);
    auto rhs = fgl.apply(x, fgl.apply(y, z, trunc), trunc);
    auto diff = lhs - rhs;
    report.checked += static_cast<int>(lhs.size());
    if (!diff.is_zero()) {
        std::size_t xi = table->index_of("x"), yi = table->index_of("y"), zi = table->index_of("z");
        std::map<std::tuple<unsigned, unsigned, unsigned>, int> cells;
        for (const auto& t : diff.terms())
            ++cells[{t.monomial[xi], t.monomial[yi], t.monomial[zi]}];
        for (const auto& [c, n] : cells)
            report.fail(fmt::format("associativity: coefficient of x^{} y^{} z^{} differs", std::get<0>(c),
                                    std::get<1>(c), std::get<2>(c)));
    }
    report.detail = fmt::format("{} associativity terms compared", lhs.size());
    return report;
}

} // namespace fglkit::lazard
