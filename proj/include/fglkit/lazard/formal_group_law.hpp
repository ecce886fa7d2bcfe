#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fglkit/report.hpp"
#include "fglkit/ring/graded_poly.hpp"
#include "fglkit/ring/series.hpp"

namespace fglkit::lazard {

// Formal variables present in every FGL table.
const std::vector<std::string>& formal_variables();

enum class FglKind { universal, additive, multiplicative, custom };

const char* to_string(FglKind kind);

// Table over the given coefficient generators plus the shared formal
// variables.
ring::TablePtr fgl_table(std::vector<ring::Generator> coefficient_generators);

// Generators b1..b{degree-1} with weight(b_n) = n: the polynomial ring that
// receives the Lazard ring through the Hurewicz embedding.
ring::TablePtr universal_table(int degree);

// A formal group law F(x, y) = sum a_ij x^i y^j truncated at total degree D.
// Coefficients a_ij are known for i + j <= D; a_00 = 0, a_10 = a_01 = 1, and
// any negative index reads as zero.
class FormalGroupLaw
{
public:
    // exp(t) = t + sum_{n>=1} b_n t^{n+1}, log = reverse(exp),
    // F(x, y) = exp(log x + log y).
    static FormalGroupLaw universal(int degree);
    // The universal law from stored coefficients over universal_table(degree);
    // exp and log are rebuilt, the composition is not redone.
    static FormalGroupLaw universal_from_coefficients(int degree,
                                                      const std::map<std::pair<int, int>, ring::GradedPoly>& coefficients);
    // F = x + y.
    static FormalGroupLaw additive(int degree);
    // F = x + y + v x y with v a weight-1 generator.
    static FormalGroupLaw multiplicative(int degree);
    // Arbitrary coefficient table; missing cells are zero. Unit cells are
    // forced to the convention values.
    static FormalGroupLaw from_coefficients(ring::TablePtr table, int degree,
                                            const std::map<std::pair<int, int>, ring::GradedPoly>& coefficients,
                                            FglKind kind = FglKind::custom);

    FglKind kind() const noexcept { return kind_; }
    int degree() const noexcept { return degree_; }
    const ring::TablePtr& table_ptr() const noexcept { return table_; }
    const ring::GeneratorTable& table() const noexcept { return *table_; }

    // a_ij; throws BoundError when i + j exceeds the truncation degree.
    const ring::GradedPoly& coefficient(int i, int j) const;

    // F(p, q) for polynomials without constant term, multiplied under `trunc`.
    ring::GradedPoly apply(const ring::GradedPoly& p, const ring::GradedPoly& q, const ring::Truncation& trunc) const;

    // F(x, y) in the named formal variables as a truncated series.
    ring::TruncatedSeries series(const std::string& x = "x", const std::string& y = "y") const;

    // exp and log series in t; only the universal law carries them.
    const std::optional<ring::TruncatedSeries>& exp_series() const noexcept { return exp_; }
    const std::optional<ring::TruncatedSeries>& log_series() const noexcept { return log_; }

    // Image under the coefficient ring map sending each named generator to
    // the given polynomial over `target` (other generators matched by name).
    FormalGroupLaw specialized(ring::TablePtr target, const std::map<std::string, ring::GradedPoly>& images,
                               FglKind kind = FglKind::custom) const;

    // Restriction to a smaller truncation degree.
    FormalGroupLaw truncated(int degree) const;

private:
    FormalGroupLaw(ring::TablePtr table, int degree, FglKind kind);

    std::size_t cell(int i, int j) const { return static_cast<std::size_t>(i) * (degree_ + 1) + j; }

    ring::TablePtr table_;
    int degree_;
    FglKind kind_;
    std::vector<ring::GradedPoly> coefficients_;  // (degree+1)^2 cells
    ring::GradedPoly zero_;
    std::optional<ring::TruncatedSeries> exp_;
    std::optional<ring::TruncatedSeries> log_;
};

// Unitality, commutativity and associativity, identically to degree D.
// Unitality and commutativity are read off the coefficient table,
// associativity by expanding F(F(x,y),z) - F(x,F(y,z)).
Report verify_axioms(const FormalGroupLaw& fgl);

} // namespace fglkit::lazard
