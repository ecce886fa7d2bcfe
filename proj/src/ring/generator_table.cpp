#include "fglkit/ring/generator_table.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include <fmt/format.h>

#include "fglkit/ring/errors.hpp"

namespace fglkit::ring {

namespace {

bool is_prime(unsigned n)
{
    if (n < 2)
        return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

// Splits "b12" into ("b", 12); names without a numeric suffix get -1.
std::pair<std::string_view, long> split_suffix(std::string_view s)
{
    std::size_t k = s.size();
    while (k > 0 && std::isdigit(static_cast<unsigned char>(s[k - 1])))
        --k;
    if (k == s.size() || s.size() - k > 9)
        return {s, -1};
    long value = 0;
    for (std::size_t i = k; i < s.size(); ++i)
        value = value * 10 + (s[i] - '0');
    return {s.substr(0, k), value};
}

} // namespace

CoefficientDomain CoefficientDomain::modulo(unsigned prime)
{
    if (!is_prime(prime))
        throw DomainError(fmt::format("coefficient modulus {} is not prime", prime));
    return CoefficientDomain(prime);
}

bool natural_name_less(std::string_view a, std::string_view b)
{
    auto [pa, na] = split_suffix(a);
    auto [pb, nb] = split_suffix(b);
    if (pa != pb)
        return pa < pb;
    if (na != nb)
        return na < nb;
    return a < b;
}

GeneratorTable::GeneratorTable(std::vector<Generator> generators, CoefficientDomain domain)
    : generators_(std::move(generators)), domain_(domain)
{
    if (generators_.size() > kMaxGenerators)
        throw StructuralError(fmt::format("at most {} generators per table (got {})", kMaxGenerators, generators_.size()));
    std::sort(generators_.begin(), generators_.end(),
              [](const Generator& a, const Generator& b) { return natural_name_less(a.name, b.name); });
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        const auto& g = generators_[i];
        if (g.name.empty() || !std::isalpha(static_cast<unsigned char>(g.name.front())))
            throw StructuralError(fmt::format("invalid generator name '{}'", g.name));
        for (char c : g.name)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
                throw StructuralError(fmt::format("invalid generator name '{}'", g.name));
        if (!seen.insert(g.name).second)
            throw StructuralError(fmt::format("duplicate generator '{}'", g.name));
        if (g.weight < 0)
            throw StructuralError(fmt::format("generator '{}' has negative weight", g.name));
        if (g.parity == Parity::odd)
            odd_mask_ |= 1u << i;
        if (g.formal())
            formal_mask_ |= 1u << i;
    }
}

std::optional<std::size_t> GeneratorTable::find(std::string_view name) const
{
    for (std::size_t i = 0; i < generators_.size(); ++i)
        if (generators_[i].name == name)
            return i;
    return std::nullopt;
}

std::size_t GeneratorTable::index_of(std::string_view name) const
{
    if (auto i = find(name))
        return *i;
    throw StructuralError(fmt::format("unknown generator '{}'", name));
}

std::uint32_t GeneratorTable::mask_of(const std::vector<std::string>& names) const
{
    std::uint32_t mask = 0;
    for (const auto& n : names)
        mask |= 1u << index_of(n);
    return mask;
}

bool GeneratorTable::same_as(const GeneratorTable& other) const
{
    if (this == &other)
        return true;
    if (domain_ != other.domain_ || generators_.size() != other.generators_.size())
        return false;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        const auto& a = generators_[i];
        const auto& b = other.generators_[i];
        if (a.name != b.name || a.weight != b.weight || a.parity != b.parity)
            return false;
    }
    return true;
}

TablePtr make_table(std::vector<Generator> generators, CoefficientDomain domain)
{
    return std::make_shared<const GeneratorTable>(std::move(generators), domain);
}

} // namespace fglkit::ring
