#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "fglkit/lazard/lazard_tables.hpp"
#include "fglkit/report.hpp"

namespace fglkit::hopf {

// beta: the basis dual to powers of the orientation class.
// p: classes of the linear subspaces CP^n.
enum class Basis { beta, p };

const char* to_string(Basis b);

// Finite combination sum_n c_n e_n. Zero coefficients are never stored.
struct HopfClass
{
    Basis basis = Basis::beta;
    std::map<int, ring::GradedPoly> terms;

    void add(int index, const ring::GradedPoly& c);
    bool operator==(const HopfClass& other) const;
    int max_index() const { return terms.empty() ? -1 : terms.rbegin()->first; }

    // d with weight(c_n) + n = d for all terms; nullopt if inhomogeneous.
    std::optional<int> homogeneous_degree() const;
};

struct TensorClass
{
    Basis basis = Basis::beta;
    std::map<std::pair<int, int>, ring::GradedPoly> terms;

    void add(int i, int j, const ring::GradedPoly& c);
    bool operator==(const TensorClass& other) const;
    std::optional<int> homogeneous_degree() const;
};

struct SegreTerm
{
    int r;
    ring::GradedPoly coefficient;
};

// MU_*(CP^infinity) over the coefficient ring of one formal group law.
// Operations that need a coefficient beyond the truncation degree throw
// BoundError. Index n needs degree >= n + 1; a product of indices n and m
// needs degree >= n + m + 1.
class HopfAlgebra
{
public:
    explicit HopfAlgebra(std::shared_ptr<const lazard::LazardTables> tables);

    const lazard::LazardTables& tables() const noexcept { return *tables_; }
    const ring::TablePtr& table_ptr() const noexcept { return tables_->table_ptr(); }

    HopfClass basis_element(Basis basis, int n) const;

    HopfClass to_beta_basis(const HopfClass& c) const;
    HopfClass to_p_basis(const HopfClass& c) const;
    HopfClass to_basis(const HopfClass& c, Basis basis) const;
    TensorClass to_basis(const TensorClass& c, Basis basis) const;

    // Direct formula in the basis of the input.
    TensorClass coproduct(const HopfClass& c) const;
    // p-basis input: change to beta, take the beta coproduct, change back.
    TensorClass coproduct_conjugated(const HopfClass& c) const;

    // Direct formula in the common basis of the inputs.
    HopfClass product(const HopfClass& a, const HopfClass& b) const;
    // p-basis inputs: multiply in the beta basis and change back.
    HopfClass product_conjugated(const HopfClass& a, const HopfClass& b) const;
    // Componentwise product (a1 x a2)(b1 x b2) = a1 b1 x a2 b2.
    TensorClass product(const TensorClass& a, const TensorClass& b) const;

    ring::GradedPoly counit(const HopfClass& c) const;

    // s^{(r)}_{n,m}: coefficient of p_r in p_n * p_m.
    ring::GradedPoly segre_coefficient(int r, int n, int m) const;
    // Nonzero s^{(r)}_{n,m}, r ascending.
    std::vector<SegreTerm> segre_decomposition(int n, int m) const;

private:
    void require_same_basis(const HopfClass& a, const HopfClass& b) const;
    HopfClass product_beta(int i, int j) const;

    std::shared_ptr<const lazard::LazardTables> tables_;
};

// Identities over all basis elements up to the given index bound.
Report verify_basis_round_trip(const HopfAlgebra& h, int max_index);
Report verify_coproduct(const HopfAlgebra& h, int max_index);  // two routes, coassociativity, counit
Report verify_product(const HopfAlgebra& h, int max_total);    // two routes, leading term, unit, associativity, commutativity
Report verify_hopf_compatibility(const HopfAlgebra& h, int max_total);

} // namespace fglkit::hopf
