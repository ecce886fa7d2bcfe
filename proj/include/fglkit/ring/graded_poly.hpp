#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fglkit/ring/generator_table.hpp"

namespace fglkit::ring {

using Integer = mpz_class;

// Dense exponent vector indexed by generator position in a table.
class Monomial
{
public:
    Monomial() = default;

    static Monomial of(std::size_t index, unsigned exponent = 1);

    unsigned operator[](std::size_t i) const { return exps_[i]; }
    void set(std::size_t i, unsigned exponent);
    bool is_one() const;
    unsigned total_degree() const;
    unsigned degree_in(std::uint32_t mask) const;
    int weight(const GeneratorTable& table) const;
    std::uint32_t support() const;

    // Exponent-wise product; does not apply Koszul signs.
    Monomial times(const Monomial& other) const;

    bool operator==(const Monomial&) const = default;
    std::size_t hash() const noexcept;

private:
    std::array<std::uint16_t, kMaxGenerators> exps_{};
};

struct MonomialHash
{
    std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

// Canonical order: higher weight first, then higher total degree, then
// lexicographic (larger exponent of the earliest generator first).
// Returns <0, 0, >0.
int compare_monomials(const GeneratorTable& table, const Monomial& a, const Monomial& b);

// Constraint applied while multiplying: bound on total degree in the formal
// variables, bound on weight, and per-generator exponent caps.
struct Truncation
{
    std::uint32_t formal_mask = 0;
    int formal_degree = -1;  // -1: unbounded
    int weight = -1;         // -1: unbounded
    std::array<std::uint16_t, kMaxGenerators> caps;

    Truncation() { caps.fill(UINT16_MAX); }

    static Truncation none() { return {}; }
    static Truncation formal(std::uint32_t mask, int degree);

    Truncation& with_weight(int w)
    {
        weight = w;
        return *this;
    }
    Truncation& with_cap(std::size_t index, unsigned max_exponent);

    bool is_trivial() const;
    bool admits(const GeneratorTable& table, const Monomial& m) const;
};

struct Term
{
    Monomial monomial;
    Integer coefficient;
};

// Sparse graded-commutative polynomial. Terms are kept sorted in the
// canonical monomial order with no zero coefficients; odd generators
// anticommute with each other and square to zero. Values are immutable once
// built and safe to share across threads.
class GradedPoly
{
public:
    explicit GradedPoly(TablePtr table);

    static GradedPoly constant(TablePtr table, const Integer& c);
    static GradedPoly generator(TablePtr table, std::string_view name, unsigned exponent = 1);
    static GradedPoly monomial(TablePtr table, const Monomial& m, const Integer& c = 1);
    // Sums duplicates, reduces coefficients, drops zeros and sorts.
    static GradedPoly from_terms(TablePtr table, std::vector<Term> terms);

    const TablePtr& table_ptr() const noexcept { return table_; }
    const GeneratorTable& table() const noexcept { return *table_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;
    Integer constant_term() const;
    Integer coefficient(const Monomial& m) const;

    GradedPoly operator-() const;
    GradedPoly& operator+=(const GradedPoly& other);
    GradedPoly& operator-=(const GradedPoly& other);
    GradedPoly& operator*=(const GradedPoly& other);
    GradedPoly scaled(const Integer& c) const;

    friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
    friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
    friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);

    bool operator==(const GradedPoly& other) const;

    // Terms satisfying `trunc`.
    GradedPoly truncated(const Truncation& trunc) const;
    GradedPoly filtered(const std::function<bool(const Monomial&)>& keep) const;

    // Weight if every term has the same weight; 0 for the zero polynomial.
    std::optional<int> homogeneous_weight() const;

    // Splits by the exponent of generator `index`: p = sum_k result[k] * g^k.
    // Only valid for even generators (no sign bookkeeping).
    std::map<unsigned, GradedPoly> collect(std::size_t index) const;

    // Same polynomial over `target`, matching generators by name.
    GradedPoly embedded(TablePtr target) const;

private:
    friend GradedPoly multiply(const GradedPoly&, const GradedPoly&, const Truncation&);

    void check_same_table(const GradedPoly& other, const char* op) const;

    TablePtr table_;
    std::vector<Term> terms_;
};

GradedPoly multiply(const GradedPoly& a, const GradedPoly& b, const Truncation& trunc);
GradedPoly power(const GradedPoly& a, unsigned n, const Truncation& trunc = Truncation::none());

// Replaces the even generator `index` by `value` everywhere, multiplying
// under `trunc`.
GradedPoly substitute(const GradedPoly& p, std::size_t index, const GradedPoly& value,
                      const Truncation& trunc = Truncation::none());

// Ring map into `target`: generators with an entry in `images` are
// replaced by it, all others are matched by name. Every image must live over
// `target`.
GradedPoly specialize(const GradedPoly& p, TablePtr target, const std::map<std::string, GradedPoly>& images,
                      const Truncation& trunc = Truncation::none());

// Reduces an integer into the domain's canonical representative.
void normalize(Integer& c, const CoefficientDomain& domain);

} // namespace fglkit::ring
