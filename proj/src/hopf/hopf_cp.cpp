#include "fglkit/hopf/hopf_cp.hpp"

#include <random>
#include <tuple>

#include <fmt/format.h>

#include "fglkit/ring/errors.hpp"
#include "fglkit/ring/text.hpp"

namespace fglkit::hopf {

using ring::GradedPoly;

const char* to_string(Basis b) { return b == Basis::beta ? "beta" : "p"; }

void HopfClass::add(int index, const GradedPoly& c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = terms.try_emplace(index, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms.erase(it);
    }
}

bool HopfClass::operator==(const HopfClass& other) const
{
    return basis == other.basis && terms == other.terms;
}

std::optional<int> HopfClass::homogeneous_degree() const
{
    std::optional<int> degree;
    for (const auto& [n, c] : terms) {
        auto w = c.homogeneous_weight();
        if (!w || (degree && *degree != *w + n))
            return std::nullopt;
        degree = *w + n;
    }
    return degree ? degree : 0;
}

void TensorClass::add(int i, int j, const GradedPoly& c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = terms.try_emplace({i, j}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms.erase(it);
    }
}

bool TensorClass::operator==(const TensorClass& other) const
{
    return basis == other.basis && terms == other.terms;
}

std::optional<int> TensorClass::homogeneous_degree() const
{
    std::optional<int> degree;
    for (const auto& [ij, c] : terms) {
        auto w = c.homogeneous_weight();
        int d = w ? *w + ij.first + ij.second : -1;
        if (!w || (degree && *degree != d))
            return std::nullopt;
        degree = d;
    }
    return degree ? degree : 0;
}

HopfAlgebra::HopfAlgebra(std::shared_ptr<const lazard::LazardTables> tables) : tables_(std::move(tables))
{
    if (!tables_)
        throw StructuralError("HopfAlgebra needs Lazard tables");
}

HopfClass HopfAlgebra::basis_element(Basis basis, int n) const
{
    if (n < 0)
        throw DomainError("basis index must be non-negative");
    HopfClass c{basis, {}};
    c.add(n, tables_->one());
    return c;
}

HopfClass HopfAlgebra::to_beta_basis(const HopfClass& c) const
{
    if (c.basis == Basis::beta)
        return c;
    // p_n = sum_i [CP^i] beta_{n-i}
    HopfClass out{Basis::beta, {}};
    for (const auto& [n, coef] : c.terms)
        for (int i = 0; i <= n; ++i)
            out.add(n - i, coef * tables_->cp_class(i));
    return out;
}

HopfClass HopfAlgebra::to_p_basis(const HopfClass& c) const
{
    if (c.basis == Basis::p)
        return c;
    // beta_n = sum_i a_{1i} p_{n-i}
    HopfClass out{Basis::p, {}};
    for (const auto& [n, coef] : c.terms)
        for (int i = 0; i <= n; ++i)
            out.add(n - i, coef * tables_->eta(i));
    return out;
}

HopfClass HopfAlgebra::to_basis(const HopfClass& c, Basis basis) const
{
    return basis == Basis::beta ? to_beta_basis(c) : to_p_basis(c);
}

TensorClass HopfAlgebra::to_basis(const TensorClass& c, Basis basis) const
{
    if (c.basis == basis)
        return c;
    TensorClass out{basis, {}};
    std::map<int, HopfClass> images;
    auto image = [&](int n) -> const HopfClass& {
        auto it = images.find(n);
        if (it == images.end())
            it = images.emplace(n, to_basis(basis_element(c.basis, n), basis)).first;
        return it->second;
    };
    for (const auto& [ij, coef] : c.terms) {
        const auto& left = image(ij.first);
        const auto& right = image(ij.second);
        for (const auto& [a, ca] : left.terms)
            for (const auto& [b, cb] : right.terms)
                out.add(a, b, coef * ca * cb);
    }
    return out;
}

TensorClass HopfAlgebra::coproduct(const HopfClass& c) const
{
    TensorClass out{c.basis, {}};
    for (const auto& [n, coef] : c.terms) {
        if (c.basis == Basis::beta) {
            for (int i = 0; i <= n; ++i)
                out.add(i, n - i, coef);
        } else {
            // sum_{i,j <= n} a_{1,i+j-n} p_{n-i} x p_{n-j}
            for (int i = 0; i <= n; ++i)
                for (int j = 0; j <= n; ++j) {
                    if (i + j < n)
                        continue;
                    out.add(n - i, n - j, coef * tables_->eta(i + j - n));
                }
        }
    }
    return out;
}

TensorClass HopfAlgebra::coproduct_conjugated(const HopfClass& c) const
{
    return to_basis(coproduct(to_beta_basis(c)), c.basis);
}

void HopfAlgebra::require_same_basis(const HopfClass& a, const HopfClass& b) const
{
    if (a.basis != b.basis)
        throw StructuralError("product of classes in different bases");
}

HopfClass HopfAlgebra::product_beta(int i, int j) const
{
    // beta_i beta_j = sum_k a^{(k)}_{ij} beta_k
    HopfClass out{Basis::beta, {}};
    for (int k = 0; k <= i + j; ++k)
        out.add(k, tables_->power_coefficient(k, i, j));
    return out;
}

HopfClass HopfAlgebra::product(const HopfClass& a, const HopfClass& b) const
{
    require_same_basis(a, b);
    HopfClass out{a.basis, {}};
    for (const auto& [n, ca] : a.terms)
        for (const auto& [m, cb] : b.terms) {
            GradedPoly c = ca * cb;
            if (a.basis == Basis::beta) {
                for (const auto& [k, ck] : product_beta(n, m).terms)
                    out.add(k, c * ck);
            } else {
                for (int r = 0; r <= n + m; ++r)
                    out.add(r, c * segre_coefficient(r, n, m));
            }
        }
    return out;
}

HopfClass HopfAlgebra::product_conjugated(const HopfClass& a, const HopfClass& b) const
{
    require_same_basis(a, b);
    return to_basis(product(to_beta_basis(a), to_beta_basis(b)), a.basis);
}

TensorClass HopfAlgebra::product(const TensorClass& a, const TensorClass& b) const
{
    if (a.basis != b.basis)
        throw StructuralError("product of tensors in different bases");
    TensorClass out{a.basis, {}};
    for (const auto& [ij, ca] : a.terms)
        for (const auto& [kl, cb] : b.terms) {
            auto left = product(basis_element(a.basis, ij.first), basis_element(a.basis, kl.first));
            auto right = product(basis_element(a.basis, ij.second), basis_element(a.basis, kl.second));
            GradedPoly c = ca * cb;
            for (const auto& [r, cr] : left.terms)
                for (const auto& [s, cs] : right.terms)
                    out.add(r, s, c * cr * cs);
        }
    return out;
}

GradedPoly HopfAlgebra::counit(const HopfClass& c) const
{
    GradedPoly out = tables_->zero();
    for (const auto& [n, coef] : c.terms) {
        if (c.basis == Basis::beta) {
            if (n == 0)
                out += coef;
        } else {
            out += coef * tables_->cp_class(n);
        }
    }
    return out;
}

GradedPoly HopfAlgebra::segre_coefficient(int r, int n, int m) const
{
    if (n < 0 || m < 0 || r < 0)
        throw DomainError("segre indices must be non-negative");
    GradedPoly out = tables_->zero();
    if (r > n + m)
        return out;
    // a^{(r+k)}_{n-i,m-j} vanishes once r + k exceeds (n-i) + (m-j).
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= m; ++j) {
            int rest = (n - i) + (m - j);
            GradedPoly cc = tables_->cp_class(i) * tables_->cp_class(j);
            if (cc.is_zero())
                continue;
            for (int k = 0; r + k <= rest; ++k) {
                GradedPoly a = tables_->power_coefficient(r + k, n - i, m - j);
                if (a.is_zero())
                    continue;
                out += cc * a * tables_->eta(k);
            }
        }
    return out;
}

std::vector<SegreTerm> HopfAlgebra::segre_decomposition(int n, int m) const
{
    std::vector<SegreTerm> out;
    for (int r = 0; r <= n + m; ++r) {
        auto c = segre_coefficient(r, n, m);
        if (!c.is_zero())
            out.push_back({r, std::move(c)});
    }
    return out;
}

namespace {

std::string describe(const HopfClass& c)
{
    if (c.terms.empty())
        return "0";
    std::string out;
    for (const auto& [n, coef] : c.terms) {
        if (!out.empty())
            out += " + ";
        out += fmt::format("({})*{}_{}", ring::to_string(coef), to_string(c.basis), n);
    }
    return out;
}

using Triple = std::map<std::tuple<int, int, int>, GradedPoly>;

void add_to(Triple& t, int a, int b, int c, const GradedPoly& coef)
{
    if (coef.is_zero())
        return;
    auto [it, inserted] = t.try_emplace({a, b, c}, coef);
    if (!inserted) {
        it->second += coef;
        if (it->second.is_zero())
            t.erase(it);
    }
}

// Small random coefficients: integers times single coefficient generators.
GradedPoly random_coefficient(const ring::TablePtr& table, std::mt19937& rng)
{
    std::vector<std::size_t> gens;
    for (std::size_t i = 0; i < table->size(); ++i)
        if (!(*table)[i].formal())
            gens.push_back(i);
    std::uniform_int_distribution<int> coef(-3, 3);
    GradedPoly out = GradedPoly::constant(table, coef(rng));
    if (!gens.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
        out += GradedPoly::monomial(table, ring::Monomial::of(gens[pick(rng)]), coef(rng));
    }
    return out;
}

} // namespace

Report verify_basis_round_trip(const HopfAlgebra& h, int max_index)
{
    Report report(fmt::format("basis-round-trip[n<={}]", max_index));
    for (int n = 0; n <= max_index; ++n)
        for (Basis b : {Basis::beta, Basis::p}) {
            auto e = h.basis_element(b, n);
            Basis other = b == Basis::beta ? Basis::p : Basis::beta;
            auto back = h.to_basis(h.to_basis(e, other), b);
            ++report.checked;
            if (!(back == e))
                report.fail(fmt::format("{}_{} maps back to {}", to_string(b), n, describe(back)));
        }
    std::mt19937 rng(0x5eed);
    for (int trial = 0; trial < 20; ++trial) {
        HopfClass c{Basis::p, {}};
        for (int n = 0; n <= max_index; ++n)
            c.add(n, random_coefficient(h.table_ptr(), rng));
        ++report.checked;
        if (!(h.to_p_basis(h.to_beta_basis(c)) == c))
            report.fail(fmt::format("random class {} does not round trip", trial));
    }
    return report;
}

Report verify_coproduct(const HopfAlgebra& h, int max_index)
{
    Report report(fmt::format("coproduct[n<={}]", max_index));
    for (int n = 0; n <= max_index; ++n) {
        auto p = h.basis_element(Basis::p, n);
        auto direct = h.coproduct(p);
        auto conj = h.coproduct_conjugated(p);
        ++report.checked;
        if (!(direct == conj))
            report.fail(fmt::format("p_{}: direct and beta-route coproducts differ", n));
        if (direct.homogeneous_degree() != std::optional<int>(n))
            report.fail(fmt::format("p_{}: coproduct is not homogeneous of degree {}", n, n));

        for (Basis b : {Basis::beta, Basis::p}) {
            auto e = h.basis_element(b, n);
            auto delta = h.coproduct(e);
            Triple left, right;
            for (const auto& [ij, c] : delta.terms) {
                for (const auto& [ab, d] : h.coproduct(h.basis_element(b, ij.first)).terms)
                    add_to(left, ab.first, ab.second, ij.second, c * d);
                for (const auto& [ab, d] : h.coproduct(h.basis_element(b, ij.second)).terms)
                    add_to(right, ij.first, ab.first, ab.second, c * d);
            }
            ++report.checked;
            if (left != right)
                report.fail(fmt::format("{}_{}: coproduct is not coassociative", to_string(b), n));

            HopfClass counit_left{b, {}}, counit_right{b, {}};
            for (const auto& [ij, c] : delta.terms) {
                counit_left.add(ij.second, c * h.counit(h.basis_element(b, ij.first)));
                counit_right.add(ij.first, c * h.counit(h.basis_element(b, ij.second)));
            }
            ++report.checked;
            if (!(counit_left == e) || !(counit_right == e))
                report.fail(fmt::format("{}_{}: counit law fails", to_string(b), n));
        }
    }
    return report;
}

Report verify_product(const HopfAlgebra& h, int max_total)
{
    Report report(fmt::format("product[n+m<={}]", max_total));
    const auto& tables = h.tables();
    for (int n = 0; n <= max_total; ++n)
        for (int m = 0; n + m <= max_total; ++m) {
            auto pn = h.basis_element(Basis::p, n), pm = h.basis_element(Basis::p, m);
            auto direct = h.product(pn, pm);
            ++report.checked;
            if (!(direct == h.product_conjugated(pn, pm)))
                report.fail(fmt::format("p_{} * p_{}: direct and beta-route products differ", n, m));
            if (!(direct == h.product(pm, pn)))
                report.fail(fmt::format("p_{} * p_{} is not commutative", n, m));
            auto bn = h.basis_element(Basis::beta, n), bm = h.basis_element(Basis::beta, m);
            if (!(h.product(bn, bm) == h.product(bm, bn)))
                report.fail(fmt::format("beta_{} * beta_{} is not commutative", n, m));
            if (direct.homogeneous_degree() != std::optional<int>(n + m))
                report.fail(fmt::format("p_{} * p_{} is not homogeneous", n, m));

            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n + m), static_cast<unsigned long>(n));
            if (!(h.segre_coefficient(n + m, n, m) == GradedPoly::constant(tables.table_ptr(), binom)))
                report.fail(fmt::format("s^({})_{{{},{}}} is not binomial({}, {})", n + m, n, m, n + m, n));
            if (n == 0 && !(direct == pm))
                report.fail(fmt::format("p_0 * p_{} differs from p_{}", m, m));
        }

    for (int i = 0; i <= max_total; ++i)
        for (int j = 0; i + j <= max_total; ++j)
            for (int k = 0; i + j + k <= max_total; ++k)
                for (Basis b : {Basis::beta, Basis::p}) {
                    auto ei = h.basis_element(b, i), ej = h.basis_element(b, j), ek = h.basis_element(b, k);
                    ++report.checked;
                    if (!(h.product(h.product(ei, ej), ek) == h.product(ei, h.product(ej, ek))))
                        report.fail(fmt::format("{0}_{1} {0}_{2} {0}_{3}: product is not associative", to_string(b),
                                                i, j, k));
                }
    return report;
}

Report verify_hopf_compatibility(const HopfAlgebra& h, int max_total)
{
    Report report(fmt::format("hopf-compatibility[n+m<={}]", max_total));
    for (int n = 0; n <= max_total; ++n)
        for (int m = 0; n + m <= max_total; ++m) {
            auto a = h.basis_element(Basis::beta, n), b = h.basis_element(Basis::beta, m);
            auto lhs = h.coproduct(h.product(a, b));
            auto rhs = h.product(h.coproduct(a), h.coproduct(b));
            ++report.checked;
            if (!(lhs == rhs))
                report.fail(fmt::format("Delta(beta_{} beta_{}) differs from Delta(beta_{}) Delta(beta_{})", n, m, n,
                                        m));
        }
    return report;
}

} // namespace fglkit::hopf
