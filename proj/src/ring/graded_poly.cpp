#include "fglkit/ring/graded_poly.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include <fmt/format.h>

#include "fglkit/ring/errors.hpp"

namespace fglkit::ring {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(std::size_t index, unsigned exponent)
{
    Monomial m;
    m.set(index, exponent);
    return m;
}

void Monomial::set(std::size_t i, unsigned exponent)
{
    if (i >= kMaxGenerators)
        throw StructuralError("generator index out of range");
    if (exponent > UINT16_MAX)
        throw DomainError(fmt::format("exponent {} exceeds the supported range", exponent));
    exps_[i] = static_cast<std::uint16_t>(exponent);
}

bool Monomial::is_one() const
{
    return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
}

unsigned Monomial::total_degree() const
{
    unsigned d = 0;
    for (auto e : exps_)
        d += e;
    return d;
}

unsigned Monomial::degree_in(std::uint32_t mask) const
{
    unsigned d = 0;
    for (std::size_t i = 0; mask != 0; ++i, mask >>= 1)
        if (mask & 1u)
            d += exps_[i];
    return d;
}

int Monomial::weight(const GeneratorTable& table) const
{
    int w = 0;
    for (std::size_t i = 0; i < table.size(); ++i)
        w += static_cast<int>(exps_[i]) * table[i].weight;
    return w;
}

std::uint32_t Monomial::support() const
{
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < kMaxGenerators; ++i)
        if (exps_[i] != 0)
            s |= 1u << i;
    return s;
}

Monomial Monomial::times(const Monomial& other) const
{
    Monomial r;
    for (std::size_t i = 0; i < kMaxGenerators; ++i) {
        unsigned e = unsigned(exps_[i]) + other.exps_[i];
        if (e > UINT16_MAX)
            throw DomainError("exponent overflow in monomial product");
        r.exps_[i] = static_cast<std::uint16_t>(e);
    }
    return r;
}

std::size_t Monomial::hash() const noexcept
{
    // FNV-1a over the exponent words.
    std::uint64_t h = 1469598103934665603ull;
    for (auto e : exps_) {
        h ^= e;
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

int compare_monomials(const GeneratorTable& table, const Monomial& a, const Monomial& b)
{
    int wa = a.weight(table), wb = b.weight(table);
    if (wa != wb)
        return wa > wb ? -1 : 1;
    unsigned da = a.total_degree(), db = b.total_degree();
    if (da != db)
        return da > db ? -1 : 1;
    for (std::size_t i = 0; i < table.size(); ++i)
        if (a[i] != b[i])
            return a[i] > b[i] ? -1 : 1;
    return 0;
}

// -------------------------------------------------------------- Truncation

Truncation Truncation::formal(std::uint32_t mask, int degree)
{
    Truncation t;
    t.formal_mask = mask;
    t.formal_degree = degree;
    return t;
}

Truncation& Truncation::with_cap(std::size_t index, unsigned max_exponent)
{
    caps[index] = static_cast<std::uint16_t>(std::min<unsigned>(max_exponent, UINT16_MAX));
    return *this;
}

bool Truncation::is_trivial() const
{
    return formal_degree < 0 && weight < 0 &&
           std::all_of(caps.begin(), caps.end(), [](auto c) { return c == UINT16_MAX; });
}

bool Truncation::admits(const GeneratorTable& table, const Monomial& m) const
{
    if (formal_degree >= 0 && m.degree_in(formal_mask) > static_cast<unsigned>(formal_degree))
        return false;
    if (weight >= 0 && m.weight(table) > weight)
        return false;
    for (std::size_t i = 0; i < table.size(); ++i)
        if (m[i] > caps[i])
            return false;
    return true;
}

// -------------------------------------------------------------- GradedPoly

void normalize(Integer& c, const CoefficientDomain& domain)
{
    if (domain.is_integral())
        return;
    mpz_fdiv_r_ui(c.get_mpz_t(), c.get_mpz_t(), domain.modulus());
}

namespace {

struct TermLess
{
    const GeneratorTable* table;
    bool operator()(const Term& a, const Term& b) const
    {
        return compare_monomials(*table, a.monomial, b.monomial) < 0;
    }
};

// Sign of a * b for monomials in canonical order: each odd generator of b
// must move past the odd generators of a with larger index.
// Returns 0 when an odd generator would appear twice.
int koszul_sign(std::uint32_t odd_a, std::uint32_t odd_b)
{
    if (odd_a & odd_b)
        return 0;
    unsigned swaps = 0;
    while (odd_b) {
        unsigned j = static_cast<unsigned>(std::countr_zero(odd_b));
        odd_b &= odd_b - 1;
        swaps += static_cast<unsigned>(std::popcount(odd_a >> (j + 1)));
    }
    return (swaps & 1u) ? -1 : 1;
}

GradedPoly from_accumulator(TablePtr table, std::unordered_map<Monomial, Integer, MonomialHash>& acc)
{
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc) {
        normalize(c, table->domain());
        if (c != 0)
            terms.push_back(Term{m, std::move(c)});
    }
    return GradedPoly::from_terms(std::move(table), std::move(terms));
}

} // namespace

GradedPoly::GradedPoly(TablePtr table) : table_(std::move(table))
{
    if (!table_)
        throw StructuralError("polynomial without generator table");
}

GradedPoly GradedPoly::constant(TablePtr table, const Integer& c)
{
    return monomial(std::move(table), Monomial{}, c);
}

GradedPoly GradedPoly::generator(TablePtr table, std::string_view name, unsigned exponent)
{
    auto idx = table->index_of(name);
    if ((*table)[idx].parity == Parity::odd && exponent > 1)
        return GradedPoly(std::move(table));
    return monomial(table, Monomial::of(idx, exponent));
}

GradedPoly GradedPoly::monomial(TablePtr table, const Monomial& m, const Integer& c)
{
    GradedPoly p(std::move(table));
    for (std::size_t i = 0; i < p.table().size(); ++i)
        if (p.table()[i].parity == Parity::odd && m[i] > 1)
            return p;
    for (std::size_t i = p.table().size(); i < kMaxGenerators; ++i)
        if (m[i] != 0)
            throw StructuralError("monomial refers to a generator outside its table");
    Integer v = c;
    normalize(v, p.table().domain());
    if (v != 0)
        p.terms_.push_back(Term{m, std::move(v)});
    return p;
}

GradedPoly GradedPoly::from_terms(TablePtr table, std::vector<Term> terms)
{
    GradedPoly p(std::move(table));
    const auto& t = p.table();
    TermLess less{&t};
    std::sort(terms.begin(), terms.end(), less);
    for (auto& term : terms) {
        bool dead = false;
        for (std::size_t i = 0; i < t.size(); ++i)
            if (t[i].parity == Parity::odd && term.monomial[i] > 1)
                dead = true;
        if (dead)
            continue;
        if (!p.terms_.empty() && p.terms_.back().monomial == term.monomial)
            p.terms_.back().coefficient += term.coefficient;
        else
            p.terms_.push_back(std::move(term));
    }
    std::vector<Term> kept;
    kept.reserve(p.terms_.size());
    for (auto& term : p.terms_) {
        normalize(term.coefficient, t.domain());
        if (term.coefficient != 0)
            kept.push_back(std::move(term));
    }
    p.terms_ = std::move(kept);
    return p;
}

bool GradedPoly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.is_one());
}

Integer GradedPoly::constant_term() const
{
    return coefficient(Monomial{});
}

Integer GradedPoly::coefficient(const Monomial& m) const
{
    TermLess less{table_.get()};
    Term probe{m, 0};
    auto it = std::lower_bound(terms_.begin(), terms_.end(), probe, less);
    if (it != terms_.end() && it->monomial == m)
        return it->coefficient;
    return 0;
}

void GradedPoly::check_same_table(const GradedPoly& other, const char* op) const
{
    if (!table_->same_as(*other.table_))
        throw StructuralError(fmt::format("{}: operands use different generator tables", op));
}

GradedPoly GradedPoly::operator-() const
{
    return scaled(-1);
}

GradedPoly GradedPoly::scaled(const Integer& c) const
{
    GradedPoly r(table_);
    Integer k = c;
    normalize(k, table_->domain());
    if (k == 0)
        return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        Integer v = t.coefficient * k;
        normalize(v, table_->domain());
        if (v != 0)
            r.terms_.push_back(Term{t.monomial, std::move(v)});
    }
    return r;
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& other)
{
    check_same_table(other, "add");
    std::vector<Term> merged;
    merged.reserve(terms_.size() + other.terms_.size());
    auto i = terms_.begin();
    auto j = other.terms_.begin();
    while (i != terms_.end() || j != other.terms_.end()) {
        int c;
        if (i == terms_.end())
            c = 1;
        else if (j == other.terms_.end())
            c = -1;
        else
            c = compare_monomials(*table_, i->monomial, j->monomial);
        if (c < 0) {
            merged.push_back(std::move(*i++));
        } else if (c > 0) {
            merged.push_back(*j++);
        } else {
            Integer v = i->coefficient + j->coefficient;
            normalize(v, table_->domain());
            if (v != 0)
                merged.push_back(Term{i->monomial, std::move(v)});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(merged);
    return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& other)
{
    return *this += -other;
}

GradedPoly& GradedPoly::operator*=(const GradedPoly& other)
{
    *this = multiply(*this, other, Truncation::none());
    return *this;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b)
{
    return multiply(a, b, Truncation::none());
}

bool GradedPoly::operator==(const GradedPoly& other) const
{
    if (!table_->same_as(*other.table_) || terms_.size() != other.terms_.size())
        return false;
    for (std::size_t k = 0; k < terms_.size(); ++k)
        if (!(terms_[k].monomial == other.terms_[k].monomial) || terms_[k].coefficient != other.terms_[k].coefficient)
            return false;
    return true;
}

GradedPoly GradedPoly::truncated(const Truncation& trunc) const
{
    if (trunc.is_trivial())
        return *this;
    return filtered([&](const Monomial& m) { return trunc.admits(*table_, m); });
}

GradedPoly GradedPoly::filtered(const std::function<bool(const Monomial&)>& keep) const
{
    GradedPoly r(table_);
    for (const auto& t : terms_)
        if (keep(t.monomial))
            r.terms_.push_back(t);
    return r;
}

std::optional<int> GradedPoly::homogeneous_weight() const
{
    if (terms_.empty())
        return 0;
    int w = terms_.front().monomial.weight(*table_);
    for (const auto& t : terms_)
        if (t.monomial.weight(*table_) != w)
            return std::nullopt;
    return w;
}

std::map<unsigned, GradedPoly> GradedPoly::collect(std::size_t index) const
{
    if (index >= table_->size())
        throw StructuralError("collect: generator index out of range");
    if ((*table_)[index].parity == Parity::odd)
        throw StructuralError("collect: odd generators are not supported");
    std::map<unsigned, std::vector<Term>> buckets;
    for (const auto& t : terms_) {
        Monomial m = t.monomial;
        unsigned e = m[index];
        m.set(index, 0);
        buckets[e].push_back(Term{m, t.coefficient});
    }
    std::map<unsigned, GradedPoly> out;
    for (auto& [e, terms] : buckets)
        out.emplace(e, from_terms(table_, std::move(terms)));
    return out;
}

GradedPoly GradedPoly::embedded(TablePtr target) const
{
    if (table_->same_as(*target))
        return GradedPoly::from_terms(target, terms_);
    std::array<std::size_t, kMaxGenerators> map{};
    for (std::size_t i = 0; i < table_->size(); ++i) {
        auto j = target->find((*table_)[i].name);
        map[i] = j ? *j : kMaxGenerators;
    }
    if (!(target->domain() == table_->domain()) && !table_->domain().is_integral())
        throw StructuralError("cannot embed modular coefficients into a different domain");
    std::vector<Term> terms;
    terms.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m;
        for (std::size_t i = 0; i < table_->size(); ++i) {
            if (t.monomial[i] == 0)
                continue;
            if (map[i] == kMaxGenerators)
                throw StructuralError(fmt::format("generator '{}' is missing from the target table", (*table_)[i].name));
            m.set(map[i], t.monomial[i]);
        }
        terms.push_back(Term{m, t.coefficient});
    }
    return from_terms(std::move(target), std::move(terms));
}

// ----------------------------------------------------------- free functions

GradedPoly multiply(const GradedPoly& a, const GradedPoly& b, const Truncation& trunc)
{
    a.check_same_table(b, "multiply");
    const auto& table = a.table();
    GradedPoly zero(a.table_);
    if (a.is_zero() || b.is_zero())
        return zero;

    struct Info
    {
        int weight;
        unsigned formal;
        std::uint32_t odd;
    };
    auto describe = [&](const GradedPoly& p) {
        std::vector<Info> info;
        info.reserve(p.terms_.size());
        for (const auto& t : p.terms_)
            info.push_back(Info{t.monomial.weight(table), t.monomial.degree_in(trunc.formal_mask),
                                t.monomial.support() & table.odd_mask()});
        return info;
    };
    const auto ia = describe(a);
    const auto ib = describe(b);
    bool has_caps = std::any_of(trunc.caps.begin(), trunc.caps.begin() + static_cast<long>(table.size()),
                                [](auto c) { return c != UINT16_MAX; });

    std::unordered_map<Monomial, Integer, MonomialHash> acc;
    acc.reserve(a.size() + b.size());
    Integer prod;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        for (std::size_t j = 0; j < b.terms_.size(); ++j) {
            if (trunc.formal_degree >= 0 && ia[i].formal + ib[j].formal > static_cast<unsigned>(trunc.formal_degree))
                continue;
            if (trunc.weight >= 0 && ia[i].weight + ib[j].weight > trunc.weight)
                continue;
            int sign = koszul_sign(ia[i].odd, ib[j].odd);
            if (sign == 0)
                continue;
            Monomial m = a.terms_[i].monomial.times(b.terms_[j].monomial);
            if (has_caps) {
                bool ok = true;
                for (std::size_t g = 0; g < table.size() && ok; ++g)
                    ok = m[g] <= trunc.caps[g];
                if (!ok)
                    continue;
            }
            mpz_mul(prod.get_mpz_t(), a.terms_[i].coefficient.get_mpz_t(), b.terms_[j].coefficient.get_mpz_t());
            auto& slot = acc[m];
            if (sign > 0)
                slot += prod;
            else
                slot -= prod;
        }
    }
    return from_accumulator(a.table_, acc);
}

GradedPoly power(const GradedPoly& a, unsigned n, const Truncation& trunc)
{
    GradedPoly result = GradedPoly::constant(a.table_ptr(), 1).truncated(trunc);
    GradedPoly base = a.truncated(trunc);
    while (n > 0) {
        if (n & 1u)
            result = multiply(result, base, trunc);
        n >>= 1;
        if (n > 0)
            base = multiply(base, base, trunc);
    }
    return result;
}

GradedPoly substitute(const GradedPoly& p, std::size_t index, const GradedPoly& value, const Truncation& trunc)
{
    auto parts = p.collect(index);
    GradedPoly result(p.table_ptr());
    GradedPoly pw = GradedPoly::constant(p.table_ptr(), 1);
    unsigned current = 0;
    for (const auto& [e, coeff] : parts) {
        while (current < e) {
            pw = multiply(pw, value, trunc);
            ++current;
        }
        result += multiply(coeff, pw, trunc);
    }
    return result;
}

GradedPoly specialize(const GradedPoly& p, TablePtr target, const std::map<std::string, GradedPoly>& images,
                      const Truncation& trunc)
{
    const auto& src = p.table();
    std::vector<std::optional<GradedPoly>> image(src.size());
    std::vector<std::size_t> rename(src.size(), kMaxGenerators);
    for (std::size_t i = 0; i < src.size(); ++i) {
        auto it = images.find(src[i].name);
        if (it != images.end()) {
            if (!it->second.table().same_as(*target))
                throw StructuralError(fmt::format("image of '{}' is not over the target table", src[i].name));
            image[i] = it->second;
        } else if (auto j = target->find(src[i].name)) {
            rename[i] = *j;
        }
    }
    GradedPoly result(target);
    for (const auto& t : p.terms()) {
        GradedPoly factor = GradedPoly::constant(target, t.coefficient);
        for (std::size_t i = 0; i < src.size(); ++i) {
            unsigned e = t.monomial[i];
            if (e == 0)
                continue;
            if (image[i]) {
                factor = multiply(factor, power(*image[i], e, trunc), trunc);
            } else if (rename[i] != kMaxGenerators) {
                factor = multiply(factor, GradedPoly::monomial(target, Monomial::of(rename[i], e)), trunc);
            } else {
                throw StructuralError(fmt::format("generator '{}' has no image in the target table", src[i].name));
            }
            if (factor.is_zero())
                break;
        }
        result += factor;
    }
    return result;
}

} // namespace fglkit::ring
