#include "fglkit/ring/series.hpp"

#include <algorithm>
#include <bit>

#include <fmt/format.h>

#include "fglkit/ring/errors.hpp"

namespace fglkit::ring {

TruncatedSeries::TruncatedSeries(GradedPoly body, std::uint32_t formal_mask, int degree, std::optional<int> weight_bound)
    : body_(std::move(body)), mask_(formal_mask), degree_(degree), weight_(weight_bound)
{
    if (degree_ < 1)
        throw DomainError("series degree bound must be positive");
    if ((mask_ & ~body_.table().formal_mask()) != 0)
        throw StructuralError("series variables must be formal (weight 0) generators");
    body_ = body_.truncated(truncation());
}

TruncatedSeries::TruncatedSeries(GradedPoly body, const std::vector<std::string>& formal_vars, int degree,
                                 std::optional<int> weight_bound)
    : TruncatedSeries(body, body.table().mask_of(formal_vars), degree, weight_bound)
{
}

TruncatedSeries TruncatedSeries::variable(const TablePtr& table, const std::string& name, int degree)
{
    return TruncatedSeries(GradedPoly::generator(table, name), std::vector<std::string>{name}, degree);
}

Truncation TruncatedSeries::truncation() const
{
    Truncation t = Truncation::formal(mask_, degree_);
    if (weight_)
        t.with_weight(*weight_);
    return t;
}

std::size_t TruncatedSeries::single_variable() const
{
    if (std::popcount(mask_) != 1)
        throw StructuralError("expected a series in exactly one formal variable");
    return static_cast<std::size_t>(std::countr_zero(mask_));
}

GradedPoly TruncatedSeries::coefficient(unsigned k) const
{
    auto parts = body_.collect(single_variable());
    auto it = parts.find(k);
    return it == parts.end() ? GradedPoly(body_.table_ptr()) : it->second;
}

GradedPoly TruncatedSeries::constant_part() const
{
    return body_.filtered([&](const Monomial& m) { return m.degree_in(mask_) == 0; });
}

TruncatedSeries TruncatedSeries::combine_bounds(const TruncatedSeries& a, const TruncatedSeries& b, GradedPoly body)
{
    std::optional<int> w;
    if (a.weight_ && b.weight_)
        w = std::min(*a.weight_, *b.weight_);
    else
        w = a.weight_ ? a.weight_ : b.weight_;
    return TruncatedSeries(std::move(body), a.mask_ | b.mask_, std::min(a.degree_, b.degree_), w);
}

TruncatedSeries TruncatedSeries::operator-() const
{
    return TruncatedSeries(-body_, mask_, degree_, weight_);
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b)
{
    return TruncatedSeries::combine_bounds(a, b, a.body_ + b.body_);
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b)
{
    return TruncatedSeries::combine_bounds(a, b, a.body_ - b.body_);
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b)
{
    auto shell = TruncatedSeries::combine_bounds(a, b, GradedPoly(a.body_.table_ptr()));
    return TruncatedSeries(multiply(a.body_, b.body_, shell.truncation()), shell.mask_, shell.degree_, shell.weight_);
}

bool TruncatedSeries::operator==(const TruncatedSeries& other) const
{
    return mask_ == other.mask_ && degree_ == other.degree_ && weight_ == other.weight_ && body_ == other.body_;
}

TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner)
{
    std::size_t var = outer.single_variable();
    if (!inner.constant_part().is_zero())
        throw DomainError("compose: inner series has a nonzero constant term");
    if (!outer.body().table().same_as(inner.body().table()))
        throw StructuralError("compose: series use different generator tables");

    int degree = std::min(outer.degree(), inner.degree());
    std::optional<int> weight = inner.weight_bound();
    if (outer.weight_bound())
        weight = weight ? std::min(*weight, *outer.weight_bound()) : outer.weight_bound();
    Truncation trunc = Truncation::formal(inner.formal_mask(), degree);
    if (weight)
        trunc.with_weight(*weight);

    GradedPoly value = substitute(outer.body(), var, inner.body(), trunc);
    return TruncatedSeries(std::move(value), inner.formal_mask(), degree, weight);
}

TruncatedSeries reverse(const TruncatedSeries& s)
{
    std::size_t var = s.single_variable();
    const auto& table = s.table_ptr();
    if (!s.constant_part().is_zero())
        throw DomainError("reverse: series has a nonzero constant term");
    GradedPoly linear = s.coefficient(1);
    if (!(linear == GradedPoly::constant(table, 1)))
        throw DomainError("reverse: linear coefficient must be 1");

    GradedPoly r = GradedPoly::monomial(table, Monomial::of(var));
    for (int d = 2; d <= s.degree(); ++d) {
        TruncatedSeries partial(r, s.formal_mask(), d, s.weight_bound());
        TruncatedSeries outer(s.body(), s.formal_mask(), d, s.weight_bound());
        GradedPoly err = compose(outer, partial).coefficient(static_cast<unsigned>(d));
        if (!err.is_zero())
            r -= multiply(err, GradedPoly::monomial(table, Monomial::of(var, static_cast<unsigned>(d))),
                          Truncation::none());
    }
    return TruncatedSeries(std::move(r), s.formal_mask(), s.degree(), s.weight_bound());
}

} // namespace fglkit::ring
