#include "fglkit/steenrod/steenrod.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include <fmt/format.h>

#include "fglkit/ring/errors.hpp"
#include "fglkit/ring/text.hpp"

namespace fglkit::steenrod {

using ring::GradedPoly;
using ring::Monomial;
using ring::Term;

MotRing::MotRing(unsigned l, int k, std::optional<std::vector<int>> bounds) : l_(l), k_(k), bounds_(std::move(bounds))
{
    auto domain = ring::CoefficientDomain::modulo(l);
    if (k < 1 || 2 * static_cast<std::size_t>(k) > ring::kMaxGenerators)
        throw DomainError(fmt::format("generator count must be between 1 and {}", ring::kMaxGenerators / 2));
    std::vector<ring::Generator> gens;
    for (int i = 1; i <= k; ++i) {
        gens.push_back({fmt::format("u{}", i), 1, ring::Parity::odd});
        gens.push_back({fmt::format("v{}", i), 2, ring::Parity::even});
    }
    table_ = ring::make_table(std::move(gens), domain);
    for (int i = 1; i <= k; ++i) {
        u_.push_back(table_->index_of(fmt::format("u{}", i)));
        v_.push_back(table_->index_of(fmt::format("v{}", i)));
    }
    if (bounds_) {
        if (static_cast<int>(bounds_->size()) != k)
            throw DomainError(fmt::format("expected {} truncation bounds, got {}", k, bounds_->size()));
        for (int i = 0; i < k; ++i) {
            if ((*bounds_)[i] < 0)
                throw DomainError("truncation bounds must be non-negative");
            trunc_.with_cap(v_[i], static_cast<unsigned>((*bounds_)[i]));
        }
    }
}

MotRingPtr MotRing::create(unsigned l, int k, std::optional<std::vector<int>> bounds)
{
    return MotRingPtr(new MotRing(l, k, std::move(bounds)));
}

MotRingPtr MotRing::truncated(std::vector<int> bounds) const
{
    return create(l_, k_, std::move(bounds));
}

MotClass::MotClass(MotRingPtr ring, const GradedPoly& value) : ring_(std::move(ring)), value_(ring_->table_ptr())
{
    if (!value.table().same_as(*ring_->table_ptr()))
        throw StructuralError("class is not over the ring's generator table");
    value_ = value.truncated(ring_->truncation());
}

MotClass MotClass::zero(MotRingPtr ring)
{
    auto t = ring->table_ptr();
    return MotClass(std::move(ring), GradedPoly(t));
}

MotClass MotClass::u(MotRingPtr ring, int i)
{
    if (i < 1 || i > ring->generators())
        throw StructuralError(fmt::format("no generator u{}", i));
    auto t = ring->table_ptr();
    auto m = Monomial::of(ring->u_index(i));
    return MotClass(std::move(ring), GradedPoly::monomial(t, m));
}

MotClass MotClass::v(MotRingPtr ring, int i, unsigned exponent)
{
    if (i < 1 || i > ring->generators())
        throw StructuralError(fmt::format("no generator v{}", i));
    auto t = ring->table_ptr();
    auto m = Monomial::of(ring->v_index(i), exponent);
    return MotClass(std::move(ring), GradedPoly::monomial(t, m));
}

MotClass MotClass::scalar(MotRingPtr ring, long c)
{
    auto t = ring->table_ptr();
    return MotClass(std::move(ring), GradedPoly::constant(t, c));
}

std::optional<Bidegree> MotClass::bidegree() const
{
    std::optional<Bidegree> out;
    for (const auto& t : value_.terms()) {
        Bidegree b{t.monomial.weight(*ring_->table_ptr()), static_cast<int>(t.monomial.total_degree())};
        if (out && !(*out == b))
            return std::nullopt;
        out = b;
    }
    return out;
}

namespace {

void require_same(const MotClass& a, const MotClass& b)
{
    if (a.ring() != b.ring() && !a.value().table().same_as(b.value().table()))
        throw StructuralError("classes from different rings");
}

} // namespace

MotClass MotClass::operator-() const { return MotClass(ring_, -value_); }

MotClass MotClass::operator+(const MotClass& other) const
{
    require_same(*this, other);
    return MotClass(ring_, value_ + other.value_);
}

MotClass MotClass::operator-(const MotClass& other) const
{
    require_same(*this, other);
    return MotClass(ring_, value_ - other.value_);
}

MotClass MotClass::operator*(const MotClass& other) const
{
    require_same(*this, other);
    return MotClass(ring_, ring::multiply(value_, other.value_, ring_->truncation()));
}

MotClass bockstein(const MotClass& c)
{
    const auto& ring = *c.ring();
    std::vector<Term> out;
    for (const auto& t : c.value().terms()) {
        // u's are odd and sit in table order; passing one flips the sign.
        int passed = 0;
        for (std::size_t idx = 0; idx < ring.table_ptr()->size(); ++idx) {
            if ((*ring.table_ptr())[idx].parity != ring::Parity::odd || t.monomial[idx] == 0)
                continue;
            int gen = std::stoi((*ring.table_ptr())[idx].name.substr(1));
            std::size_t vi = ring.v_index(gen);
            Monomial m = t.monomial;
            m.set(idx, 0);
            m.set(vi, m[vi] + 1);
            out.push_back(Term{m, passed % 2 ? ring::Integer(-t.coefficient) : t.coefficient});
            ++passed;
        }
    }
    return MotClass(c.ring(), GradedPoly::from_terms(c.ring()->table_ptr(), std::move(out)));
}

unsigned lucas_binomial(unsigned long n, unsigned long k, unsigned l)
{
    unsigned long result = 1;
    while (n || k) {
        unsigned long ni = n % l, ki = k % l;
        if (ki > ni)
            return 0;
        // small binomial mod l by the multiplicative formula over the residue field
        unsigned long num = 1, den = 1;
        for (unsigned long j = 0; j < ki; ++j) {
            num = num * ((ni - j) % l) % l;
            den = den * ((j + 1) % l) % l;
        }
        // den is invertible: all factors are below l
        unsigned long inv = 1, base = den, e = l - 2;
        while (e) {
            if (e & 1)
                inv = inv * base % l;
            base = base * base % l;
            e >>= 1;
        }
        result = result * (num * inv % l) % l;
        n /= l;
        k /= l;
    }
    return static_cast<unsigned>(result);
}

MotClass power_op(int i, const MotClass& c)
{
    if (i < 0)
        throw DomainError("P^i needs i >= 0");
    if (i == 0)
        return c;
    const auto& ring = *c.ring();
    unsigned l = ring.prime();
    int k = ring.generators();
    std::vector<Term> out;
    for (const auto& t : c.value().terms()) {
        std::vector<unsigned> n(static_cast<std::size_t>(k));
        for (int g = 0; g < k; ++g)
            n[g] = t.monomial[ring.v_index(g + 1)];
        // Cartan: distribute i over the v-factors; P^a(v^n) = C(n,a) v^{n + a(l-1)}.
        std::function<void(int, int, Monomial, ring::Integer)> spread = [&](int g, int left, Monomial m,
                                                                            ring::Integer coef) {
            if (g == k) {
                if (left == 0)
                    out.push_back(Term{m, coef});
                return;
            }
            for (int a = 0; a <= left && a <= static_cast<int>(n[g]); ++a) {
                unsigned b = lucas_binomial(n[g], static_cast<unsigned long>(a), l);
                if (b == 0)
                    continue;
                Monomial next = m;
                next.set(ring.v_index(g + 1), n[g] + static_cast<unsigned>(a) * (l - 1));
                spread(g + 1, left - a, next, coef * b);
            }
        };
        spread(0, i, t.monomial, t.coefficient);
    }
    return MotClass(c.ring(), GradedPoly::from_terms(c.ring()->table_ptr(), std::move(out)));
}

MotClass q_composite(int i, const MotClass& c)
{
    if (i < 1)
        throw DomainError("q_i needs i >= 1");
    unsigned l = c.ring()->prime();
    MotClass out = c;
    long step = 1;
    for (int j = 0; j < i; ++j) {
        out = power_op(static_cast<int>(step), out);
        step *= l;
    }
    return out;
}

MotClass milnor_q(int i, const MotClass& c)
{
    if (i < 1)
        throw DomainError("Q_i needs i >= 1");
    return q_composite(i, bockstein(c)) - bockstein(q_composite(i, c));
}

MotClass truncate_to_approximation(const MotClass& c, const std::vector<int>& bounds)
{
    auto target = c.ring()->truncated(bounds);
    return MotClass(target, c.value());
}

namespace {

// Random class of bidegree (2w - a, w): a distinct u's and w - a v-factors.
MotClass random_homogeneous(const MotRingPtr& ring, std::mt19937& rng, int w, int a)
{
    int k = ring->generators();
    std::uniform_int_distribution<int> gen(1, k);
    std::uniform_int_distribution<int> coef(1, static_cast<int>(ring->prime()) - 1);
    std::uniform_int_distribution<int> count(1, 4);
    MotClass out = MotClass::zero(ring);
    int terms = count(rng);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> us(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            us[i] = i + 1;
        std::shuffle(us.begin(), us.end(), rng);
        MotClass m = MotClass::scalar(ring, coef(rng));
        for (int j = 0; j < a; ++j)
            m = m * MotClass::u(ring, us[j]);
        for (int j = 0; j < w - a; ++j)
            m = m * MotClass::v(ring, gen(rng));
        out = out + m;
    }
    return out;
}

MotClass random_sample(const MotRingPtr& ring, std::mt19937& rng)
{
    std::uniform_int_distribution<int> weight(1, 4);
    int w = weight(rng);
    std::uniform_int_distribution<int> odd(0, std::min(w, ring->generators()));
    return random_homogeneous(ring, rng, w, odd(rng));
}

// A nonzero random sample; a draw can cancel to zero mod l.
MotClass nonzero_sample(const MotRingPtr& ring, std::mt19937& rng)
{
    for (;;) {
        auto c = random_sample(ring, rng);
        if (!c.is_zero())
            return c;
    }
}

int sign_of_degree(const MotClass& c) { return c.bidegree() && c.bidegree()->degree % 2 ? -1 : 1; }

std::string show(const MotClass& c) { return ring::to_string(c.value()); }

MotRingPtr sample_ring(unsigned l) { return MotRing::create(l, 3); }

} // namespace

Report verify_bockstein_square(unsigned l, int samples, unsigned seed)
{
    Report report(fmt::format("bockstein-square[l={}]", l));
    auto ring = sample_ring(l);
    std::mt19937 rng(seed);
    for (int s = 0; s < samples; ++s) {
        auto c = nonzero_sample(ring, rng);
        ++report.checked;
        auto bb = bockstein(bockstein(c));
        if (!bb.is_zero())
            report.fail(fmt::format("beta^2({}) = {}", show(c), show(bb)));
    }
    return report;
}

Report verify_bockstein_derivation(unsigned l, int samples, unsigned seed)
{
    Report report(fmt::format("bockstein-derivation[l={}]", l));
    auto ring = sample_ring(l);
    std::mt19937 rng(seed);
    for (int s = 0; s < samples; ++s) {
        auto x = nonzero_sample(ring, rng), y = nonzero_sample(ring, rng);
        auto lhs = bockstein(x * y);
        auto rhs = bockstein(x) * y;
        rhs = sign_of_degree(x) < 0 ? rhs - x * bockstein(y) : rhs + x * bockstein(y);
        ++report.checked;
        if (!(lhs == rhs))
            report.fail(fmt::format("beta(({}) * ({})) breaks the derivation law", show(x), show(y)));
    }
    return report;
}

Report verify_cartan_associativity(unsigned l, int samples, unsigned seed)
{
    Report report(fmt::format("cartan-associativity[l={}]", l));
    auto ring = sample_ring(l);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> degree(1, 3);
    for (int s = 0; s < samples; ++s) {
        auto x = nonzero_sample(ring, rng), y = nonzero_sample(ring, rng), z = nonzero_sample(ring, rng);
        int i = degree(rng);
        auto cartan = [&](const MotClass& a, const MotClass& b) {
            MotClass acc = MotClass::zero(ring);
            for (int j = 0; j <= i; ++j)
                acc = acc + power_op(j, a) * power_op(i - j, b);
            return acc;
        };
        auto direct = power_op(i, (x * y) * z);
        auto left = cartan(x * y, z);
        auto right = cartan(x, y * z);
        ++report.checked;
        if (!(direct == left) || !(left == right))
            report.fail(fmt::format("P^{} on ({})({})({}) depends on the bracketing", i, show(x), show(y), show(z)));
    }
    return report;
}

Report verify_bidegrees(unsigned l, int samples, unsigned seed)
{
    Report report(fmt::format("bidegrees[l={}]", l));
    auto ring = sample_ring(l);
    std::mt19937 rng(seed);
    const int L = static_cast<int>(l);
    auto expect = [&](const char* what, const MotClass& in, const MotClass& out, Bidegree shift) {
        ++report.checked;
        if (out.is_zero())
            return;
        auto a = in.bidegree(), b = out.bidegree();
        if (!a || !b || b->degree != a->degree + shift.degree || b->weight != a->weight + shift.weight)
            report.fail(fmt::format("{} of ({}) has the wrong bidegree", what, show(in)));
    };
    for (int s = 0; s < samples; ++s) {
        auto c = nonzero_sample(ring, rng);
        expect("beta", c, bockstein(c), {1, 0});
        for (int i = 1; i <= 2; ++i)
            expect("P^i", c, power_op(i, c), {2 * i * (L - 1), i * (L - 1)});
        expect("Q_1", c, milnor_q(1, c), {2 * L - 1, L - 1});
    }
    return report;
}

Report verify_q1_derivation(unsigned l, int samples, unsigned seed)
{
    Report report(fmt::format("q1-derivation[l={}]", l));
    auto ring = sample_ring(l);
    std::mt19937 rng(seed);
    int broken = 0;
    for (int s = 0; s < samples; ++s) {
        auto x = nonzero_sample(ring, rng), y = nonzero_sample(ring, rng);
        auto lhs = milnor_q(1, x * y);
        auto rhs = milnor_q(1, x) * y;
        rhs = sign_of_degree(x) < 0 ? rhs - x * milnor_q(1, y) : rhs + x * milnor_q(1, y);
        ++report.checked;
        if (!(lhs == rhs))
            ++broken;
    }
    if (broken) {
        report.warning = true;
        report.detail = fmt::format("Q_1 fails the derivation law on {} of {} pairs", broken, samples);
    }
    return report;
}

Report verify_obstruction_class(unsigned l)
{
    Report report(fmt::format("obstruction-class[l={}]", l));
    auto ring = MotRing::create(l, 2);
    auto u1 = MotClass::u(ring, 1), u2 = MotClass::u(ring, 2);
    auto v1 = MotClass::v(ring, 1), v2 = MotClass::v(ring, 2);

    auto b = bockstein(u1 * u2);
    ++report.checked;
    if (!(b == v1 * u2 - u1 * v2))
        report.fail("beta(u1*u2) = " + show(b));

    auto q = milnor_q(1, b);
    auto expected = MotClass::v(ring, 1, l) * v2 - v1 * MotClass::v(ring, 2, l);
    ++report.checked;
    std::optional<unsigned> unit;
    for (unsigned lambda = 1; lambda < l; ++lambda)
        if (q == MotClass::scalar(ring, lambda) * expected)
            unit = lambda;
    if (!unit)
        report.fail(fmt::format("Q1(beta(u1*u2)) = {} is not a unit multiple of {}", show(q), show(expected)));
    else
        report.detail = fmt::format("Q1(beta(u1*u2)) = {} ({} times the expected class)", show(q),
                                    *unit == l - 1 ? std::string("-1") : std::to_string(*unit));
    return report;
}

Report verify_truncation_nonvanishing(unsigned l)
{
    Report report(fmt::format("truncation-nonvanishing[l={}]", l));
    auto ring = MotRing::create(l, 2);
    auto q = milnor_q(1, bockstein(MotClass::u(ring, 1) * MotClass::u(ring, 2)));
    int L = static_cast<int>(l);
    auto t = truncate_to_approximation(q, {L, L});
    ++report.checked;
    if (t.is_zero())
        report.fail("Q1(beta(u1*u2)) vanishes modulo (v1^(l+1), v2^(l+1))");
    else if (t.value() != q.value())
        report.fail("truncation changed the class");
    report.detail = show(t);
    return report;
}

} // namespace fglkit::steenrod
