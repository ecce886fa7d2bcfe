#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fglkit/ring/graded_poly.hpp"

namespace fglkit::ring {

// A power series in a set of formal variables, stored as its truncation:
// every term has total formal degree <= degree() and, when a weight bound is
// set, weight <= weight_bound(). Products re-truncate, so truncating before
// or after a multiplication gives the same result.
class TruncatedSeries
{
public:
    TruncatedSeries(GradedPoly body, std::uint32_t formal_mask, int degree, std::optional<int> weight_bound = {});
    TruncatedSeries(GradedPoly body, const std::vector<std::string>& formal_vars, int degree,
                    std::optional<int> weight_bound = {});

    // The series consisting of the single variable `name`.
    static TruncatedSeries variable(const TablePtr& table, const std::string& name, int degree);

    const GradedPoly& body() const noexcept { return body_; }
    const TablePtr& table_ptr() const noexcept { return body_.table_ptr(); }
    std::uint32_t formal_mask() const noexcept { return mask_; }
    int degree() const noexcept { return degree_; }
    std::optional<int> weight_bound() const noexcept { return weight_; }
    Truncation truncation() const;

    // Coefficient of var^k for a series in one variable.
    GradedPoly coefficient(unsigned k) const;
    // Part of formal degree zero.
    GradedPoly constant_part() const;
    std::size_t single_variable() const;  // throws unless exactly one formal variable

    TruncatedSeries operator-() const;
    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

    bool operator==(const TruncatedSeries& other) const;

private:
    static TruncatedSeries combine_bounds(const TruncatedSeries& a, const TruncatedSeries& b, GradedPoly body);

    GradedPoly body_;
    std::uint32_t mask_;
    int degree_;
    std::optional<int> weight_;
};

// outer(inner): outer is a series in one variable, inner has no constant
// term. Result is truncated at the smaller of the two degree bounds.
TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner);

// Compositional inverse of t + (higher order terms), solved degree by degree.
TruncatedSeries reverse(const TruncatedSeries& s);

} // namespace fglkit::ring
