#include "fglkit/gysin/gysin.hpp"

#include <bit>
#include <functional>
#include <optional>

#include <fmt/format.h>

#include "fglkit/ring/errors.hpp"
#include "fglkit/ring/text.hpp"

namespace fglkit::gysin {

using ring::GradedPoly;
using ring::Truncation;
using Tables = std::shared_ptr<const lazard::LazardTables>;

OrientedRingModel::OrientedRingModel(Tables tables, std::vector<Axis> axes)
    : tables_(std::move(tables)), axes_(std::move(axes))
{
    const auto& table = *tables_->table_ptr();
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        const auto& a = axes_[i];
        auto g = table.find(a.name);
        if (!g || !table[*g].formal())
            throw StructuralError(fmt::format("'{}' is not a formal variable of the coefficient table", a.name));
        if (a.order < 0)
            throw DomainError(fmt::format("axis '{}' has negative order", a.name));
        for (std::size_t j = 0; j < i; ++j)
            if (axes_[j].name == a.name)
                throw StructuralError(fmt::format("axis '{}' listed twice", a.name));
        trunc_.with_cap(table.index_of(a.name), static_cast<unsigned>(a.order));
    }
}

ModelPtr OrientedRingModel::create(Tables tables, std::vector<Axis> axes)
{
    if (!tables)
        throw StructuralError("model needs Lazard tables");
    return ModelPtr(new OrientedRingModel(std::move(tables), std::move(axes)));
}

bool OrientedRingModel::has_axis(const std::string& name) const
{
    for (const auto& a : axes_)
        if (a.name == name)
            return true;
    return false;
}

int OrientedRingModel::order(const std::string& axis) const
{
    for (const auto& a : axes_)
        if (a.name == axis)
            return a.order;
    throw StructuralError(fmt::format("model has no axis '{}'", axis));
}

ModelPtr OrientedRingModel::without(const std::string& axis) const
{
    order(axis);
    std::vector<Axis> rest;
    for (const auto& a : axes_)
        if (a.name != axis)
            rest.push_back(a);
    return create(tables_, std::move(rest));
}

ModelClass::ModelClass(ModelPtr model, const GradedPoly& value) : model_(std::move(model)), value_(model_->table_ptr())
{
    const auto& table = *model_->table_ptr();
    if (!value.table().same_as(table))
        throw StructuralError("class is not over the model's coefficient table");
    std::uint32_t allowed = 0;
    for (const auto& a : model_->axes())
        allowed |= 1u << table.index_of(a.name);
    for (const auto& t : value.terms())
        if (t.monomial.support() & table.formal_mask() & ~allowed)
            throw StructuralError("class involves a variable that is not an axis of the model");
    value_ = value.truncated(model_->truncation());
}

ModelClass ModelClass::one(ModelPtr model)
{
    auto t = model->table_ptr();
    return ModelClass(std::move(model), GradedPoly::constant(t, 1));
}

ModelClass ModelClass::variable(ModelPtr model, const std::string& axis, unsigned exponent)
{
    model->order(axis);
    auto t = model->table_ptr();
    return ModelClass(std::move(model), GradedPoly::generator(t, axis, exponent));
}

std::vector<GradedPoly> ModelClass::coefficients(const std::string& axis) const
{
    int n = model_->order(axis);
    std::vector<GradedPoly> out(static_cast<std::size_t>(n + 1), GradedPoly(model_->table_ptr()));
    for (auto& [e, c] : value_.collect(model_->table_ptr()->index_of(axis)))
        out[e] = std::move(c);
    return out;
}

bool OrientedRingModel::same_as(const OrientedRingModel& other) const
{
    if (this == &other)
        return true;
    if (tables_ != other.tables_ || axes_.size() != other.axes_.size())
        return false;
    for (const auto& a : axes_)
        if (!other.has_axis(a.name) || other.order(a.name) != a.order)
            return false;
    return true;
}

ModelClass ModelClass::operator+(const ModelClass& other) const
{
    if (!model_->same_as(*other.model_))
        throw StructuralError("sum of classes from different models");
    return ModelClass(model_, value_ + other.value_);
}

ModelClass ModelClass::operator*(const ModelClass& other) const
{
    if (!model_->same_as(*other.model_))
        throw StructuralError("product of classes from different models");
    return ModelClass(model_, ring::multiply(value_, other.value_, model_->truncation()));
}

ModelClass pullback(ModelPtr target, const ModelClass& c)
{
    if (target->tables_ptr() != c.model()->tables_ptr())
        throw StructuralError("pullback between models over different laws");
    for (const auto& a : c.model()->axes())
        if (target->order(a.name) != a.order)
            throw StructuralError(fmt::format("axis '{}' has a different order in the target model", a.name));
    return ModelClass(std::move(target), c.value());
}

ModelClass pushforward_projection(const ModelClass& c, const std::string& axis)
{
    const auto& model = *c.model();
    int n = model.order(axis);
    auto alpha = c.coefficients(axis);
    GradedPoly out(model.table_ptr());
    for (int k = 0; k <= n; ++k)
        if (!alpha[k].is_zero())
            out += alpha[k] * model.tables().eta_prime(n - k);
    return ModelClass(model.without(axis), out);
}

namespace {

ModelPtr square_model(Tables tables, int n)
{
    return OrientedRingModel::create(std::move(tables), {{"x1", n}, {"x2", n}});
}

using Matrix = std::vector<std::vector<GradedPoly>>;

Matrix mat_mul(const Matrix& a, const Matrix& b, const Truncation& trunc)
{
    std::size_t n = a.size();
    Matrix out(n, std::vector<GradedPoly>(n, GradedPoly(a[0][0].table_ptr())));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[r][k].is_zero())
                continue;
            for (std::size_t c = 0; c < n; ++c)
                if (!b[k][c].is_zero())
                    out[r][c] += ring::multiply(a[r][k], b[k][c], trunc);
        }
    return out;
}

// Laplace expansion along rows, memoised on the set of used columns.
GradedPoly determinant(const Matrix& m, const Truncation& trunc)
{
    std::size_t n = m.size();
    const auto& table = m[0][0].table_ptr();
    std::vector<std::optional<GradedPoly>> memo(std::size_t{1} << n);
    std::function<GradedPoly(std::uint32_t)> minor = [&](std::uint32_t used) -> GradedPoly {
        std::size_t row = static_cast<std::size_t>(std::popcount(used));
        if (row == n)
            return GradedPoly::constant(table, 1);
        if (memo[used])
            return *memo[used];
        GradedPoly acc(table);
        int position = 0;  // index of column c among the unused columns
        for (std::size_t c = 0; c < n; ++c) {
            if (used & (1u << c))
                continue;
            if (!m[row][c].is_zero()) {
                auto term = ring::multiply(m[row][c], minor(used | (1u << c)), trunc);
                if (position % 2)
                    acc -= term;
                else
                    acc += term;
            }
            ++position;
        }
        memo[used] = acc;
        return acc;
    };
    return minor(0);
}

} // namespace

ModelClass diagonal_class(Tables tables, int n)
{
    if (n < 0)
        throw DomainError("diagonal_class: negative dimension");
    auto model = square_model(tables, n);
    const auto& table = tables->table_ptr();
    GradedPoly out(table);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            auto a = tables->eta(i + j - n);
            if (a.is_zero())
                continue;
            out += a * GradedPoly::generator(table, "x1", static_cast<unsigned>(i)) *
                   GradedPoly::generator(table, "x2", static_cast<unsigned>(j));
        }
    return ModelClass(model, out);
}

ModelClass euler_class_twisted_quotient(Tables tables, int n)
{
    if (n < 1)
        throw DomainError("euler_class_twisted_quotient needs n >= 1");
    if (tables->degree() < n + 1)
        throw BoundError(fmt::format("euler class at n={} needs FGL truncation degree {} (have {})", n, n + 1,
                                     tables->degree()));
    auto model = square_model(tables, n);
    const auto& table = tables->table_ptr();
    Truncation trunc = model->truncation();
    trunc.with_weight(n);
    const auto& fgl = tables->fgl();
    std::size_t x2 = table->index_of("x2");

    // c_j(Q) = (-iota(x1))^j
    GradedPoly minus_iota = -tables->formal_inverse("x1").body().truncated(trunc);
    std::vector<GradedPoly> e{GradedPoly::constant(table, 1)};
    for (int j = 1; j <= n; ++j)
        e.push_back(ring::multiply(e.back(), minus_iota, trunc));

    // Companion matrix of T^n - e1 T^{n-1} + ... + (-1)^n e_n.
    std::size_t N = static_cast<std::size_t>(n);
    Matrix C(N, std::vector<GradedPoly>(N, GradedPoly(table)));
    for (std::size_t i = 1; i < N; ++i)
        C[i][i - 1] = GradedPoly::constant(table, 1);
    for (std::size_t i = 0; i < N; ++i) {
        int k = n - static_cast<int>(i);
        C[i][N - 1] = k % 2 ? e[k] : -e[k];
    }

    // g(C) = sum_k phi_k(x2) C^k, phi_k = sum_j a_{kj} x2^j; a_{kj} has weight k+j-1.
    Matrix power(N, std::vector<GradedPoly>(N, GradedPoly(table)));
    for (std::size_t i = 0; i < N; ++i)
        power[i][i] = GradedPoly::constant(table, 1);
    Matrix g(N, std::vector<GradedPoly>(N, GradedPoly(table)));
    for (int k = 0; k <= n + 1; ++k) {
        GradedPoly phi(table);
        for (int j = 0; j <= n && k + j <= n + 1; ++j) {
            const auto& a = fgl.coefficient(k, j);
            if (!a.is_zero())
                phi += ring::multiply(a, GradedPoly::monomial(table, ring::Monomial::of(x2, static_cast<unsigned>(j))),
                                      trunc);
        }
        if (!phi.is_zero())
            for (std::size_t r = 0; r < N; ++r)
                for (std::size_t c = 0; c < N; ++c)
                    if (!power[r][c].is_zero())
                        g[r][c] += ring::multiply(phi, power[r][c], trunc);
        if (k <= n)
            power = mat_mul(power, C, trunc);
    }
    return ModelClass(model, determinant(g, trunc));
}

Report verify_section_identity(Tables tables, int n)
{
    Report report(fmt::format("section-identity[{},n={}]", lazard::to_string(tables->fgl().kind()), n));
    auto delta = diagonal_class(tables, n);
    for (const char* axis : {"x2", "x1"}) {
        auto pushed = pushforward_projection(delta, axis);
        ++report.checked;
        if (!(pushed == ModelClass::one(pushed.model())))
            report.fail(fmt::format("pushing the diagonal along {} gives {}", axis, ring::to_string(pushed.value())));
    }
    return report;
}

Report verify_projection_properties(const ModelClass& a, const ModelClass& b, const std::string& axis)
{
    Report report(fmt::format("projection-properties[{}]", axis));
    const auto& model = a.model();
    if (!b.model()->same_as(*model))
        throw StructuralError("projection check needs both classes in one model");

    ModelClass alpha(model, a.coefficients(axis)[0]);
    auto lhs = pushforward_projection(alpha * b, axis);
    auto rhs = ModelClass(lhs.model(), alpha.value()) * pushforward_projection(b, axis);
    ++report.checked;
    if (!(lhs == rhs))
        report.fail(fmt::format("projection formula: {} vs {}", ring::to_string(lhs.value()),
                                ring::to_string(rhs.value())));

    for (const auto& other : model->axes()) {
        if (other.name == axis)
            continue;
        auto one_way = pushforward_projection(pushforward_projection(a, axis), other.name);
        auto other_way = pushforward_projection(pushforward_projection(a, other.name), axis);
        ++report.checked;
        if (!(one_way.value() == other_way.value()))
            report.fail(fmt::format("pushforwards along {} and {} do not commute", axis, other.name));
    }
    return report;
}

Report verify_base_change(const ModelClass& a, const std::string& axis, Tables target,
                          const std::map<std::string, GradedPoly>& images)
{
    Report report(fmt::format("base-change[{}->{}]", lazard::to_string(a.model()->tables().fgl().kind()),
                              lazard::to_string(target->fgl().kind())));
    auto target_model = OrientedRingModel::create(target, a.model()->axes());
    auto theta = [&](const ModelClass& c, const ModelPtr& m) {
        return ModelClass(m, ring::specialize(c.value(), target->table_ptr(), images));
    };
    auto pushed = pushforward_projection(a, axis);
    auto lhs = theta(pushed, target_model->without(axis));
    auto rhs = pushforward_projection(theta(a, target_model), axis);
    ++report.checked;
    if (!(lhs.value() == rhs.value()))
        report.fail(fmt::format("specialize after push {} vs push after specialize {}", ring::to_string(lhs.value()),
                                ring::to_string(rhs.value())));
    return report;
}

Report verify_diagonal_vs_euler(Tables tables, int n)
{
    Report report(fmt::format("diagonal-vs-euler[{},n={}]", lazard::to_string(tables->fgl().kind()), n));
    auto diag = diagonal_class(tables, n);
    auto euler = euler_class_twisted_quotient(tables, n);
    ++report.checked;
    if (!(diag.value() == euler.value()))
        report.fail(fmt::format("diagonal {} vs euler {}", ring::to_string(diag.value()),
                                ring::to_string(euler.value())));
    const auto& table = *tables->table_ptr();
    std::uint32_t formal = table.mask_of({"x1", "x2"});
    for (const auto& t : euler.value().terms()) {
        int expected = static_cast<int>(t.monomial.degree_in(formal)) - n;
        ++report.checked;
        if (t.monomial.weight(table) != expected) {
            report.fail("euler class coefficient has the wrong weight");
            break;
        }
    }
    return report;
}

std::pair<Tables, std::map<std::string, GradedPoly>> additive_specialization(const lazard::LazardTables& universal)
{
    auto fgl = std::make_shared<const lazard::FormalGroupLaw>(lazard::FormalGroupLaw::additive(universal.degree()));
    auto target = std::make_shared<const lazard::LazardTables>(fgl);
    std::map<std::string, GradedPoly> images;
    for (const auto& g : universal.table_ptr()->generators())
        if (!g.formal())
            images.emplace(g.name, GradedPoly(target->table_ptr()));
    return {target, images};
}

} // namespace fglkit::gysin
