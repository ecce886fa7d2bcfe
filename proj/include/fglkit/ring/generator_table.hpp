#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fglkit::ring {

// Hard cap on generators per table; monomials store a dense exponent array.
inline constexpr std::size_t kMaxGenerators = 32;

enum class Parity { even, odd };

struct Generator
{
    std::string name;
    int weight = 0;  // 0 marks a formal variable (x, y, t, ...)
    Parity parity = Parity::even;

    bool formal() const noexcept { return weight == 0; }
};

// Integers (modulus 0) or residues modulo a prime.
class CoefficientDomain
{
public:
    static CoefficientDomain integers() { return CoefficientDomain(0); }
    static CoefficientDomain modulo(unsigned prime);

    unsigned modulus() const noexcept { return modulus_; }
    bool is_integral() const noexcept { return modulus_ == 0; }

    bool operator==(const CoefficientDomain&) const = default;

private:
    explicit CoefficientDomain(unsigned m) : modulus_(m) {}
    unsigned modulus_;
};

// "b2" < "b10" < "t" < "x" < "x1" < "x2" < "y".
bool natural_name_less(std::string_view a, std::string_view b);

// An ordered, immutable list of generators. Generators are kept sorted by
// natural name order; that order is both the lexicographic tie-breaker of
// the monomial order and the Koszul reference order for odd generators.
class GeneratorTable
{
public:
    GeneratorTable(std::vector<Generator> generators, CoefficientDomain domain);

    std::size_t size() const noexcept { return generators_.size(); }
    const Generator& operator[](std::size_t i) const { return generators_[i]; }
    const std::vector<Generator>& generators() const noexcept { return generators_; }
    const CoefficientDomain& domain() const noexcept { return domain_; }

    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t index_of(std::string_view name) const;  // throws StructuralError
    bool contains(std::string_view name) const { return find(name).has_value(); }

    std::uint32_t odd_mask() const noexcept { return odd_mask_; }
    std::uint32_t formal_mask() const noexcept { return formal_mask_; }
    std::uint32_t mask_of(const std::vector<std::string>& names) const;

    bool same_as(const GeneratorTable& other) const;

private:
    std::vector<Generator> generators_;
    CoefficientDomain domain_;
    std::uint32_t odd_mask_ = 0;
    std::uint32_t formal_mask_ = 0;
};

using TablePtr = std::shared_ptr<const GeneratorTable>;

TablePtr make_table(std::vector<Generator> generators, CoefficientDomain domain = CoefficientDomain::integers());

} // namespace fglkit::ring
