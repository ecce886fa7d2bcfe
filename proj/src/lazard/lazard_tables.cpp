#include "fglkit/lazard/lazard_tables.hpp"

#include <fmt/format.h>

#include "fglkit/ring/errors.hpp"
#include "fglkit/ring/text.hpp"

namespace fglkit::lazard {

using ring::GradedPoly;
using ring::Monomial;
using ring::TruncatedSeries;
using ring::Truncation;

LazardTables::LazardTables(std::shared_ptr<const FormalGroupLaw> fgl) : fgl_(std::move(fgl))
{
    if (!fgl_)
        throw StructuralError("LazardTables needs a formal group law");
}

void LazardTables::require(int needed, const char* what) const
{
    if (needed > fgl_->degree())
        throw BoundError(fmt::format("{} needs FGL truncation degree {} (have {})", what, needed, fgl_->degree()));
}

GradedPoly LazardTables::eta(int k) const
{
    if (k < 0)
        return zero();
    if (k == 0)
        return one();
    require(k + 1, "eta");
    return fgl_->coefficient(1, k);
}

GradedPoly LazardTables::eta_prime(int n) const
{
    if (n < 0)
        return zero();
    require(n + 1, "eta'");
    std::lock_guard lock(mutex_);
    if (eta_prime_.empty())
        eta_prime_.push_back(one());
    while (static_cast<int>(eta_prime_.size()) <= n) {
        int m = static_cast<int>(eta_prime_.size());
        GradedPoly acc = zero();
        for (int i = 1; i <= m; ++i)
            acc -= eta(i) * eta_prime_[static_cast<std::size_t>(m - i)];
        eta_prime_.push_back(std::move(acc));
    }
    return eta_prime_[static_cast<std::size_t>(n)];
}

GradedPoly LazardTables::cp_class(int n) const
{
    if (n < 0)
        throw DomainError("cp_class: negative index");
    require(n + 1, "cp_class");
    std::lock_guard lock(mutex_);
    if (cp_.empty())
        cp_.push_back(one());
    while (static_cast<int>(cp_.size()) <= n) {
        int k = static_cast<int>(cp_.size());
        // [CP^k] * a_{10} = - sum_{j=1}^k [CP^{k-j}] a_{1j}
        GradedPoly acc = zero();
        for (int j = 1; j <= k; ++j)
            acc -= cp_[static_cast<std::size_t>(k - j)] * eta(j);
        cp_.push_back(std::move(acc));
    }
    return cp_[static_cast<std::size_t>(n)];
}

const GradedPoly& LazardTables::power_series(int k) const
{
    auto it = powers_.find(k);
    if (it != powers_.end())
        return it->second;
    const auto& table = table_ptr();
    auto trunc = Truncation::formal(table->mask_of({"x", "y"}), fgl_->degree());
    GradedPoly value = one();
    if (k > 0) {
        int prev = k - 1;
        const GradedPoly& lower = power_series(prev);
        value = ring::multiply(lower, fgl_->series("x", "y").body(), trunc);
    }
    return powers_.emplace(k, std::move(value)).first->second;
}

GradedPoly LazardTables::power_coefficient(int k, int n, int m) const
{
    if (k < 0)
        throw DomainError("fgl_power: negative exponent");
    if (n < 0 || m < 0)
        return zero();
    require(n + m, "fgl_power");
    if (k > n + m)
        return zero();
    std::lock_guard lock(mutex_);
    const auto& table = table_ptr();
    const GradedPoly& fk = power_series(k);
    std::size_t xi = table->index_of("x"), yi = table->index_of("y");
    std::vector<ring::Term> terms;
    for (const auto& t : fk.terms()) {
        if (t.monomial[xi] != static_cast<unsigned>(n) || t.monomial[yi] != static_cast<unsigned>(m))
            continue;
        Monomial rest = t.monomial;
        rest.set(xi, 0);
        rest.set(yi, 0);
        terms.push_back(ring::Term{rest, t.coefficient});
    }
    return GradedPoly::from_terms(table, std::move(terms));
}

TruncatedSeries LazardTables::formal_inverse(const std::string& var) const
{
    std::lock_guard lock(mutex_);
    auto it = inverse_.find(var);
    if (it != inverse_.end())
        return it->second;

    const auto& table = table_ptr();
    std::size_t vi = table->index_of(var);
    std::uint32_t mask = 1u << vi;
    auto x = GradedPoly::generator(table, var);
    GradedPoly inv = -x;
    for (int d = 2; d <= fgl_->degree(); ++d) {
        auto value = fgl_->apply(x, inv, Truncation::formal(mask, d));
        GradedPoly err = zero();
        for (const auto& [e, c] : value.collect(vi))
            if (e == static_cast<unsigned>(d))
                err = c;
        if (!err.is_zero())
            inv -= err * GradedPoly::generator(table, var, static_cast<unsigned>(d));
    }
    TruncatedSeries result(inv, mask, fgl_->degree());
    inverse_.emplace(var, result);
    return result;
}

PolyMatrix LazardTables::matrix_m(int n) const
{
    PolyMatrix m(static_cast<std::size_t>(n + 1), std::vector<GradedPoly>(static_cast<std::size_t>(n + 1), zero()));
    for (int r = 0; r <= n; ++r)
        for (int c = 0; c <= n; ++c)
            m[r][c] = eta(r + c - n);
    return m;
}

PolyMatrix LazardTables::matrix_m_inverse(int n) const
{
    PolyMatrix m(static_cast<std::size_t>(n + 1), std::vector<GradedPoly>(static_cast<std::size_t>(n + 1), zero()));
    for (int r = 0; r <= n; ++r)
        for (int c = 0; c <= n; ++c)
            m[r][c] = eta_prime(n - r - c);
    return m;
}

void LazardTables::seed(std::vector<GradedPoly> cp_classes, std::vector<GradedPoly> eta_primes)
{
    for (const auto* list : {&cp_classes, &eta_primes})
        for (const auto& p : *list)
            if (!p.table().same_as(fgl_->table()))
                throw StructuralError("seeded table entry uses a different generator table");
    std::lock_guard lock(mutex_);
    cp_ = std::move(cp_classes);
    eta_prime_ = std::move(eta_primes);
}

PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b)
{
    std::size_t n = a.size();
    if (n == 0 || b.size() != a.front().size())
        throw StructuralError("matrix dimensions do not match");
    PolyMatrix out(n, std::vector<GradedPoly>(b.front().size(), GradedPoly(a[0][0].table_ptr())));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < b.front().size(); ++c)
            for (std::size_t k = 0; k < b.size(); ++k)
                out[r][c] += a[r][k] * b[k][c];
    return out;
}

Report verify_cp_recursion(const LazardTables& tables, int max_n)
{
    Report report(fmt::format("cp-recursion[n<={}]", max_n));
    for (int k = 0; k <= max_n; ++k) {
        GradedPoly sum = tables.zero();
        for (int i = 0; i <= k; ++i)
            sum += tables.cp_class(i) * tables.eta(k - i);
        ++report.checked;
        if (!(sum == (k == 0 ? tables.one() : tables.zero())))
            report.fail(fmt::format("k={}: sum = {}", k, ring::to_string(sum)));
        auto w = tables.cp_class(k).homogeneous_weight();
        if (tables.fgl().kind() != FglKind::custom && (!w || (*w != k && !tables.cp_class(k).is_zero())))
            report.fail(fmt::format("[CP^{}] is not homogeneous of weight {}", k, k));
    }
    return report;
}

Report verify_cp_log_oracle(const LazardTables& tables, int max_n)
{
    Report report(fmt::format("cp-log-oracle[n<={}]", max_n));
    const auto& log = tables.fgl().log_series();
    if (!log) {
        report.detail = "no logarithm for this law; skipped";
        return report;
    }
    for (int n = 0; n <= max_n; ++n) {
        GradedPoly expected = log->coefficient(static_cast<unsigned>(n + 1)).scaled(n + 1);
        ++report.checked;
        if (!(tables.cp_class(n) == expected))
            report.fail(fmt::format("n={}: recursion {} vs log {}", n, ring::to_string(tables.cp_class(n)),
                                    ring::to_string(expected)));
    }
    return report;
}

Report verify_eta_pairing(const LazardTables& tables, int max_n, int max_matrix)
{
    Report report(fmt::format("eta-pairing[n<={},M<={}]", max_n, max_matrix));
    for (int n = 0; n <= max_n; ++n) {
        GradedPoly sum = tables.zero();
        for (int i = 0; i <= n; ++i)
            sum += tables.eta(i) * tables.eta_prime(n - i);
        ++report.checked;
        if (!(sum == (n == 0 ? tables.one() : tables.zero())))
            report.fail(fmt::format("n={}: pairing = {}", n, ring::to_string(sum)));
    }
    for (int n = 0; n <= max_matrix; ++n) {
        auto prod = multiply(tables.matrix_m(n), tables.matrix_m_inverse(n));
        auto prod2 = multiply(tables.matrix_m_inverse(n), tables.matrix_m(n));
        for (int r = 0; r <= n; ++r)
            for (int c = 0; c <= n; ++c) {
                auto expect = r == c ? tables.one() : tables.zero();
                ++report.checked;
                if (!(prod[r][c] == expect) || !(prod2[r][c] == expect))
                    report.fail(fmt::format("M_{} * M_{}^-1 differs from identity at ({},{})", n, n, r, c));
            }
    }
    return report;
}

Report verify_formal_inverse(const LazardTables& tables)
{
    Report report(fmt::format("formal-inverse[D={}]", tables.degree()));
    auto inv = tables.formal_inverse("x");
    const auto& table = tables.table_ptr();
    auto x = GradedPoly::generator(table, "x");
    auto value = tables.fgl().apply(x, inv.body(), Truncation::formal(table->mask_of({"x"}), tables.degree()));
    ++report.checked;
    if (!value.is_zero())
        report.fail("F(x, iota(x)) = " + ring::to_string(value));
    if (!(inv.coefficient(1) == tables.one().scaled(-1)))
        report.fail("linear coefficient of iota is not -1");
    return report;
}

} // namespace fglkit::lazard
