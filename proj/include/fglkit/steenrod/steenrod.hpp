#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "fglkit/report.hpp"
#include "fglkit/ring/graded_poly.hpp"

namespace fglkit::steenrod {

// odd_prime: l odd, where tau = 0 and rho is an l-th power.
// two_simplified: l = 2 with tau = rho = 0 imposed.
enum class Mode { odd_prime, two_simplified };

// H^{*,*}(B mu_l^k; Z/l) with tau = rho = 0: exterior generators u_1..u_k in
// bidegree (1,1) and polynomial generators v_1..v_k in bidegree (2,1), with
// coefficients mod l. Optional bounds n_i impose v_i^{n_i+1} = 0.
class MotRing
{
public:
    static std::shared_ptr<const MotRing> create(unsigned l, int k, std::optional<std::vector<int>> bounds = {});

    unsigned prime() const noexcept { return l_; }
    int generators() const noexcept { return k_; }
    Mode mode() const noexcept { return l_ == 2 ? Mode::two_simplified : Mode::odd_prime; }
    const ring::TablePtr& table_ptr() const noexcept { return table_; }
    const std::optional<std::vector<int>>& bounds() const noexcept { return bounds_; }
    const ring::Truncation& truncation() const noexcept { return trunc_; }

    std::size_t u_index(int i) const { return u_[static_cast<std::size_t>(i - 1)]; }
    std::size_t v_index(int i) const { return v_[static_cast<std::size_t>(i - 1)]; }

    // Same prime and generator count, with the given bounds.
    std::shared_ptr<const MotRing> truncated(std::vector<int> bounds) const;

private:
    MotRing(unsigned l, int k, std::optional<std::vector<int>> bounds);

    unsigned l_;
    int k_;
    std::optional<std::vector<int>> bounds_;
    ring::TablePtr table_;
    ring::Truncation trunc_;
    std::vector<std::size_t> u_, v_;
};

using MotRingPtr = std::shared_ptr<const MotRing>;

struct Bidegree
{
    int degree;
    int weight;
    bool operator==(const Bidegree&) const = default;
};

class MotClass
{
public:
    MotClass(MotRingPtr ring, const ring::GradedPoly& value);

    static MotClass zero(MotRingPtr ring);
    static MotClass u(MotRingPtr ring, int i);
    static MotClass v(MotRingPtr ring, int i, unsigned exponent = 1);
    static MotClass scalar(MotRingPtr ring, long c);

    const MotRingPtr& ring() const noexcept { return ring_; }
    const ring::GradedPoly& value() const noexcept { return value_; }
    bool is_zero() const noexcept { return value_.is_zero(); }

    std::optional<Bidegree> bidegree() const;  // nullopt for zero or inhomogeneous classes

    MotClass operator-() const;
    MotClass operator+(const MotClass& other) const;
    MotClass operator-(const MotClass& other) const;
    MotClass operator*(const MotClass& other) const;
    bool operator==(const MotClass& other) const { return value_ == other.value_; }

private:
    MotRingPtr ring_;
    ring::GradedPoly value_;
};

// beta(u_i) = v_i, beta(v_i) = 0, extended as a graded derivation.
MotClass bockstein(const MotClass& c);

// P^i from P(v) = v + v^l, P(u) = u and the Cartan formula.
MotClass power_op(int i, const MotClass& c);

// q_i = P^{l^{i-1}} ... P^l P^1 (i >= 1; P^1 applied first).
MotClass q_composite(int i, const MotClass& c);

// Q_i = q_i beta - beta q_i (i >= 1).
MotClass milnor_q(int i, const MotClass& c);

// Image in the quotient by (v_j^{bounds_j + 1}).
MotClass truncate_to_approximation(const MotClass& c, const std::vector<int>& bounds);

// n choose k mod l by Lucas' theorem.
unsigned lucas_binomial(unsigned long n, unsigned long k, unsigned l);

// Identity suites over `samples` random homogeneous classes (fixed seed).
Report verify_bockstein_square(unsigned l, int samples, unsigned seed = 1);
Report verify_bockstein_derivation(unsigned l, int samples, unsigned seed = 2);
Report verify_cartan_associativity(unsigned l, int samples, unsigned seed = 3);
Report verify_bidegrees(unsigned l, int samples, unsigned seed = 4);
// Reported as a warning, never a failure.
Report verify_q1_derivation(unsigned l, int samples, unsigned seed = 5);

// Q_1 beta(u1 u2) against v1^l v2 - v1 v2^l up to a unit, and
// beta(u1 u2) = v1 u2 - u1 v2.
Report verify_obstruction_class(unsigned l);
// The class above stays nonzero modulo (v1^{l+1}, v2^{l+1}).
Report verify_truncation_nonvanishing(unsigned l);

} // namespace fglkit::steenrod
