#pragma once

#include "ihskit/numeric.hpp"

#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace ihskit {

/// Nonzero eigenvalues λ with trace weights w = Tr(g | E(λ)).
struct FiniteSpectrum {
    std::vector<std::pair<double, double>> entries; // (λ, w)
};

/// λ_n = a·n^p for n >= 1, each with trace weight w.
struct PowerSpectrum {
    double a = 1.0;
    double p = 1.0;
    double w = 1.0;
};

class WeightedSpectrum {
public:
    /// Throws DomainError unless every λ > 0 (finite) or a, p > 0 (power).
    explicit WeightedSpectrum(FiniteSpectrum s);
    explicit WeightedSpectrum(PowerSpectrum s);

    bool is_finite() const { return std::holds_alternative<FiniteSpectrum>(data_); }
    const FiniteSpectrum& finite() const { return std::get<FiniteSpectrum>(data_); }
    const PowerSpectrum& power() const { return std::get<PowerSpectrum>(data_); }

private:
    std::variant<FiniteSpectrum, PowerSpectrum> data_;
};

/// ζ_R(0) and ζ_R'(0) used by the power-law continuation.
inline constexpr double kRiemannZetaAtZero = -0.5;
double riemann_zeta_prime_at_zero(); // -(1/2) log 2π

/// ζ'(0) of the weighted spectral zeta function Σ w λ^{-s}.
/// Finite: -Σ w log λ. Power: w((1/2) log a - (p/2) log 2π).
double zeta_prime_zero(const WeightedSpectrum& s);

/// τ_g = exp(-Σ_q (-1)^q q ζ'_{q}(0)) over the supplied degrees q ∈ [0, n].
double equivariant_torsion(const std::map<int, WeightedSpectrum>& spectra, int n);

/// τ_g · (‖α+‖ / ‖α-‖)², the squared equivariant Quillen norm.
double quillen_combination(double tau_g, double l2_plus, double l2_minus);

/// Fixed-locus numerology and invariant exponents as exact functions of t.
struct Numerology {
    int t = 0;
    Integer c1sq;       // ∫ c1(fix)²        = t² - 1
    Integer chi;        // χ(O_fix)          = (t² + 7)/8
    Integer c2;         // ∫ c2(fix)         = (t² + 23)/2
    Integer dim_def;    // dim Def(X, ι)     = (21 - t)/2
    Integer omega_int;  // ∫ Ω               = -3(t² + 7)
    Rational exp_vol;        // (t-1)(t-7)/16
    Rational coef_curv16;    // (t+1)(t+7)/16
    Rational coef_curv8;     // (t+1)(t+7)/8
    Rational coef_prop32;    // -t/2
    Rational coef_l34_plus;  // -(21+t)/4
    Rational coef_l34_minus; // -(21-t)/4

    friend bool operator==(const Numerology&, const Numerology&) = default;
};

/// Throws DomainError unless t is odd with -19 <= t <= 21.
void check_t(long t);
Numerology numerology(long t);

/// ∫Ω rebuilt from ∫c1(fix)², ∫c2(fix), ∫c1(X)|² = 0 and ∫c2(X)| = 24.
Integer omega_integral_from_parts(long t);

/// det of the Gram table ⟨e_i, e_j⟩.
Rational gram_covolume(const RatMatrix& pairing);
double gram_covolume(const std::vector<std::vector<double>>& pairing);
/// det(⟨v_i, v_j⟩) with ⟨x, y⟩ = xᵀ P y.
Rational gram_covolume(const std::vector<RatVector>& vectors, const RatMatrix& pairing);

struct TorsionIngredients {
    double tau_iota = 1.0;   // τ_ι(Ω¹_X)
    double vol_X = 1.0;      // Vol(X, ω_X)
    double A = 1.0;          // A(X, ι, h_X); 1 for Ricci-flat metrics
    double tau_O_fix = 1.0;  // τ(O_{X^ι})
    double vol_fix = 1.0;    // Vol(X^ι) as the product over components
    double vol_L2_H1 = 1.0;  // covolume of H¹(X^ι, Z)
    int t = 1;
};

void validate(const TorsionIngredients& in);

/// τ_{M,K} = τ_ι · Vol(X)^{(t-1)(t-7)/16} · A · τ(O_fix)^{-2} · Vol(fix)^{-2} · Vol_L2(H¹).
double assemble_invariant(const TorsionIngredients& in);

} // namespace ihskit
