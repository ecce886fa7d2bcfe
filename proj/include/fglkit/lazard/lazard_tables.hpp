#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "fglkit/lazard/formal_group_law.hpp"

namespace fglkit::lazard {

using PolyMatrix = std::vector<std::vector<ring::GradedPoly>>;

// Coefficient families derived from one formal group law: [CP^n], eta,
// eta', the coefficients of F^k, the formal inverse, and the matrices M_n.
// Lookups are lazy and cached; the cache is filled under a lock, so one
// instance may be shared between threads.
class LazardTables
{
public:
    explicit LazardTables(std::shared_ptr<const FormalGroupLaw> fgl);

    const FormalGroupLaw& fgl() const noexcept { return *fgl_; }
    std::shared_ptr<const FormalGroupLaw> fgl_ptr() const noexcept { return fgl_; }
    const ring::TablePtr& table_ptr() const noexcept { return fgl_->table_ptr(); }
    int degree() const noexcept { return fgl_->degree(); }

    ring::GradedPoly zero() const { return ring::GradedPoly(table_ptr()); }
    ring::GradedPoly one() const { return ring::GradedPoly::constant(table_ptr(), 1); }

    // a_{1,k} with a_{1,0} = 1 and a_{1,k} = 0 for k < 0.
    ring::GradedPoly eta(int k) const;

    // eta'_0 = 1, sum_{i=0}^n eta_i eta'_{n-i} = 0 for n >= 1.
    ring::GradedPoly eta_prime(int n) const;

    // [CP^n] from sum_{i+j=k} [CP^i] a_{1j} = delta_{k0}. Needs degree >= n+1.
    ring::GradedPoly cp_class(int n) const;

    // a^{(k)}_{nm}: coefficient of x^n y^m in F(x,y)^k. Needs n + m <= degree.
    ring::GradedPoly power_coefficient(int k, int n, int m) const;

    // iota(x) with F(x, iota(x)) = 0, as a series in `var`.
    ring::TruncatedSeries formal_inverse(const std::string& var = "x") const;

    // The (n+1)x(n+1) matrices with entries eta_{r+c-n} and eta'_{n-r-c}.
    PolyMatrix matrix_m(int n) const;
    PolyMatrix matrix_m_inverse(int n) const;

    // Pre-seeds the caches with externally stored values (cache files).
    void seed(std::vector<ring::GradedPoly> cp_classes, std::vector<ring::GradedPoly> eta_primes);

private:
    void require(int needed, const char* what) const;
    const ring::GradedPoly& power_series(int k) const;  // F^k, caller holds lock

    std::shared_ptr<const FormalGroupLaw> fgl_;
    mutable std::mutex mutex_;
    mutable std::vector<ring::GradedPoly> cp_;
    mutable std::vector<ring::GradedPoly> eta_prime_;
    mutable std::map<int, ring::GradedPoly> powers_;
    mutable std::map<std::string, ring::TruncatedSeries> inverse_;
};

PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b);

// Lazard-module identities: the [CP^n] recursion, the logarithm oracle
// [CP^n] = (n+1) * (coefficient of t^{n+1} in log) (universal law only),
// the eta pairing, M_n * M_n^{-1} = 1, and F(x, iota(x)) = 0.
Report verify_cp_recursion(const LazardTables& tables, int max_n);
Report verify_cp_log_oracle(const LazardTables& tables, int max_n);
Report verify_eta_pairing(const LazardTables& tables, int max_n, int max_matrix);
Report verify_formal_inverse(const LazardTables& tables);

} // namespace fglkit::lazard
