#pragma once

#include "ihskit/graded.hpp"

#include <array>
#include <complex>
#include <vector>

namespace ihskit {

/// Taylor coefficients (exact) of x / (1 - e^{-x}) up to x^order.
std::vector<Rational> todd_scalar_coefficients(int order);
/// Taylor coefficients (exact) of 1 / (1 + e^{-x}) up to x^order.
std::vector<Rational> sigmoid_scalar_coefficients(int order);

/// Td of a rank-2 bundle with Chern classes (c1, c2): 1 + c1/2 + (c1² + c2)/12 + c1 c2/24 + …
GradedElement todd_series(Gen c1, Gen c2, int max_weight = kMaxWeight);

/// ch of a rank-2 bundle, or of its dual when `dual` is set (c_i ↦ (-1)^i c_i).
GradedElement ch_bundle(Gen c1, Gen c2, int rank, bool dual, int max_weight = kMaxWeight);

/// det(I / (I + exp(-A))) on a rank-2 bundle: 1/4 + c1/8 + c2/16 - (c1³ - 3 c1 c2)/96 + …
GradedElement sigmoid_det_factor(Gen c1, Gen c2, int max_weight = kMaxWeight);

/// Td_ι of the relative tangent bundle: Td(fixed surface) · sigmoid factor of the normal bundle.
GradedElement equivariant_todd(int max_weight = kMaxWeight);

/// ch_ι of the relative cotangent bundle: ch(Ω¹ of the fixed surface) - ch(N^∨).
GradedElement equivariant_ch_cotangent(int max_weight = kMaxWeight);

/// c1N ↦ -c1F + c1X, c2N ↦ c1F² - c2F - c1F c1X + c2X (splitting of TX|fix = TF ⊕ N).
GradedElement substitute_normal_relations(const GradedElement& x);

/// c(TX)|fix - c(TF)·c(N), after substitution; vanishes through weight 2.
GradedElement total_chern_residual(int max_weight = kMaxWeight);

/// Ω = c1F² - 8 c2F - c1X² + 3 c2X.
GradedElement omega_form(int max_weight = kMaxWeight);

struct ToddChIdentityCheck {
    bool holds = false;
    GradedElement lhs;      // [Td_ι · ch_ι] in weight 3
    GradedElement rhs;      // 2 [Td(TF)] in weight 3 + c1X Ω / 48
    GradedElement residual; // lhs - rhs
};

/// Weight-3 identity between the equivariant Todd/Chern-character product and
/// 2 Td(TF) + c1X·Ω/48. With apply_normal_relations = false the normal-bundle
/// classes are left free, and the identity fails.
ToddChIdentityCheck verify_todd_ch_identity(bool apply_normal_relations = true);

/// Numeric values for formal Chern roots: two for the fixed surface, two for the normal bundle.
struct ChernRootAssignment {
    std::array<double, 2> fixed_roots{};
    std::array<double, 2> normal_roots{};

    /// (c1F, c2F, c1X, c2X, c1N, c2N), with X's classes those of TF ⊕ N.
    std::array<double, kGenCount> values() const;
};

using Matrix4c = std::array<std::array<std::complex<double>, 4>, 4>;

struct PointwiseNorms {
    double lhs = 0.0; // h(θ∧α, θ∧α)
    double rhs = 0.0; // |μ|² h(α, α)
};

/// Evaluates both sides of the pointwise quaternionic identity in the exterior
/// algebra of a 4-dimensional complex space, with h(v^i, v^j) = 2δ_ij,
/// θ = (μ/2)·conj(σ_I), σ_I = i v¹∧v² + i v³∧v⁴, α = ½ Σ α_ij v^i ∧ v̄^j, and
/// Gram-determinant metrics on wedge products.
PointwiseNorms quaternionic_pointwise_norms(const Matrix4c& alpha, std::complex<double> mu);

} // namespace ihskit
