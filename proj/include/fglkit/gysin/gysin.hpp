#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fglkit/lazard/lazard_tables.hpp"
#include "fglkit/report.hpp"

namespace fglkit::gysin {

// E^*(P^{n_1} x ... x P^{n_k}) as coeff[x_1..x_k]/(x_i^{n_i+1}), where
// coeff is the coefficient ring of the formal group law behind `tables`.
// Axes are formal variables of the law's table (x1..x4 by default).
class OrientedRingModel
{
public:
    struct Axis
    {
        std::string name;
        int order;  // n: x^{n+1} = 0
    };

    static std::shared_ptr<const OrientedRingModel> create(std::shared_ptr<const lazard::LazardTables> tables,
                                                           std::vector<Axis> axes);

    const lazard::LazardTables& tables() const noexcept { return *tables_; }
    const std::shared_ptr<const lazard::LazardTables>& tables_ptr() const noexcept { return tables_; }
    const ring::TablePtr& table_ptr() const noexcept { return tables_->table_ptr(); }
    const std::vector<Axis>& axes() const noexcept { return axes_; }

    bool has_axis(const std::string& name) const;
    int order(const std::string& axis) const;  // StructuralError for unknown axes
    const ring::Truncation& truncation() const noexcept { return trunc_; }

    // Same law and the same axes with the same orders.
    bool same_as(const OrientedRingModel& other) const;

    // Model with `axis` dropped.
    std::shared_ptr<const OrientedRingModel> without(const std::string& axis) const;

private:
    OrientedRingModel(std::shared_ptr<const lazard::LazardTables> tables, std::vector<Axis> axes);

    std::shared_ptr<const lazard::LazardTables> tables_;
    std::vector<Axis> axes_;
    ring::Truncation trunc_;
};

using ModelPtr = std::shared_ptr<const OrientedRingModel>;

// An element of a model, reduced modulo the nilpotency relations.
class ModelClass
{
public:
    ModelClass(ModelPtr model, const ring::GradedPoly& value);

    static ModelClass one(ModelPtr model);
    static ModelClass variable(ModelPtr model, const std::string& axis, unsigned exponent = 1);

    const ModelPtr& model() const noexcept { return model_; }
    const ring::GradedPoly& value() const noexcept { return value_; }

    // alpha_0..alpha_n with the class equal to sum alpha_k axis^k.
    std::vector<ring::GradedPoly> coefficients(const std::string& axis) const;

    ModelClass operator+(const ModelClass& other) const;
    ModelClass operator*(const ModelClass& other) const;
    bool operator==(const ModelClass& other) const { return value_ == other.value_; }

private:
    ModelPtr model_;
    ring::GradedPoly value_;
};

// Pullback along the projection that forgets the axes absent from `c`'s
// model: the same polynomial read in `target`.
ModelClass pullback(ModelPtr target, const ModelClass& c);

// p_!(sum alpha_k x^k) = sum_k alpha_k eta'_{n-k}, landing in the model
// without `axis`.
ModelClass pushforward_projection(const ModelClass& c, const std::string& axis);

// sum_{i,j <= n} a_{1,i+j-n} x1^i x2^j in the model {x1: n, x2: n}.
ModelClass diagonal_class(std::shared_ptr<const lazard::LazardTables> tables, int n);

// Top Chern class of the rank-n bundle Q with c(Q) (1 + iota(x1)) = 1,
// twisted by O(0,1): prod_i F(y_i, x2) over the Chern roots y_i of Q,
// evaluated as det(g(C)) for the companion matrix C of the Chern
// polynomial and g(y) = F(y, x2). Weights above n are dropped throughout.
ModelClass euler_class_twisted_quotient(std::shared_ptr<const lazard::LazardTables> tables, int n);

// p'_! Delta_!(1) = 1.
Report verify_section_identity(std::shared_ptr<const lazard::LazardTables> tables, int n);

// Projection formula p_!(p^*(alpha) b) = alpha p_!(b) with alpha the part of
// `a` free of `axis`, and, when the model has a second axis, commutation of
// the two pushforwards applied to `a`.
Report verify_projection_properties(const ModelClass& a, const ModelClass& b, const std::string& axis);

// Pushing forward commutes with the coefficient map given by `images` into
// the law of `target`.
Report verify_base_change(const ModelClass& a, const std::string& axis,
                          std::shared_ptr<const lazard::LazardTables> target,
                          const std::map<std::string, ring::GradedPoly>& images);

Report verify_diagonal_vs_euler(std::shared_ptr<const lazard::LazardTables> tables, int n);

// The universal-to-additive coefficient map b_n -> 0 together with the
// additive tables it lands in.
std::pair<std::shared_ptr<const lazard::LazardTables>, std::map<std::string, ring::GradedPoly>>
additive_specialization(const lazard::LazardTables& universal);

} // namespace fglkit::gysin
