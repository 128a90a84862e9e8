#include "ihskit/torsion.hpp"

#include "ihskit/normal_forms.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ihskit {

WeightedSpectrum::WeightedSpectrum(FiniteSpectrum s)
{
    for (const auto& [lambda, w] : s.entries)
        if (!(lambda > 0.0) || !std::isfinite(lambda) || !std::isfinite(w))
            throw DomainError("spectrum entries must have finite positive eigenvalues");
    data_ = std::move(s);
}

WeightedSpectrum::WeightedSpectrum(PowerSpectrum s)
{
    if (!(s.a > 0.0) || !(s.p > 0.0) || !std::isfinite(s.a) || !std::isfinite(s.p) || !std::isfinite(s.w))
        throw DomainError("power spectrum needs a > 0 and p > 0");
    data_ = s;
}

double riemann_zeta_prime_at_zero() { return -0.5 * std::log(2.0 * std::numbers::pi); }

double zeta_prime_zero(const WeightedSpectrum& s)
{
    if (s.is_finite()) {
        double acc = 0.0;
        for (const auto& [lambda, w] : s.finite().entries) acc -= w * std::log(lambda);
        return acc;
    }
    // Σ w (a n^p)^{-s} = w a^{-s} ζ_R(p s)
    const PowerSpectrum& p = s.power();
    return p.w * (-std::log(p.a) * kRiemannZetaAtZero + p.p * riemann_zeta_prime_at_zero());
}

double equivariant_torsion(const std::map<int, WeightedSpectrum>& spectra, int n)
{
    if (n < 0) throw DomainError("dimension must be nonnegative");
    double exponent = 0.0;
    for (const auto& [q, spectrum] : spectra) {
        if (q < 0 || q > n) throw DomainError("degree q = " + std::to_string(q) + " outside [0, " + std::to_string(n) + "]");
        const double sign = (q % 2 == 0) ? 1.0 : -1.0;
        exponent -= sign * q * zeta_prime_zero(spectrum);
    }
    return std::exp(exponent);
}

double quillen_combination(double tau_g, double l2_plus, double l2_minus)
{
    if (!(tau_g > 0.0) || !(l2_plus > 0.0) || !(l2_minus > 0.0))
        throw DomainError("torsion and L2 norms must be positive");
    const double ratio = l2_plus / l2_minus;
    return tau_g * ratio * ratio;
}

void check_t(long t)
{
    if (t % 2 == 0 || t < -19 || t > 21)
        throw DomainError("t must be an odd integer in [-19, 21], got " + std::to_string(t));
}

Numerology numerology(long t)
{
    check_t(t);
    const Integer tt(t);
    const Integer t2 = tt * tt;
    Numerology n;
    n.t = static_cast<int>(t);
    n.c1sq = t2 - 1;
    n.chi = (t2 + 7) / 8;
    n.c2 = (t2 + 23) / 2;
    n.dim_def = (21 - tt) / 2;
    n.omega_int = -3 * (t2 + 7);
    n.exp_vol = Rational((tt - 1) * (tt - 7), 16);
    n.coef_curv16 = Rational((tt + 1) * (tt + 7), 16);
    n.coef_curv8 = Rational((tt + 1) * (tt + 7), 8);
    n.coef_prop32 = Rational(-tt, 2);
    n.coef_l34_plus = Rational(-(21 + tt), 4);
    n.coef_l34_minus = Rational(-(21 - tt), 4);
    for (Rational* q : {&n.exp_vol, &n.coef_curv16, &n.coef_curv8, &n.coef_prop32, &n.coef_l34_plus, &n.coef_l34_minus})
        q->canonicalize();
    return n;
}

Integer omega_integral_from_parts(long t)
{
    check_t(t);
    const Integer tt(t);
    const Integer c1_fix_sq = tt * tt - 1;
    const Integer c2_fix = (tt * tt + 23) / 2;
    const Integer c1_ambient_sq = 0; // canonical bundle is trivial
    // c2(TX)| = 2 c2(fix) - c1(fix)², whose integral is 24 for every t
    const Integer c2_ambient = 2 * c2_fix - c1_fix_sq;
    return c1_fix_sq - 8 * c2_fix - c1_ambient_sq + 3 * c2_ambient;
}

Rational gram_covolume(const RatMatrix& pairing)
{
    if (!pairing.square()) throw DomainError("pairing table must be square");
    if (!(pairing == pairing.transposed())) throw DomainError("pairing table must be symmetric");
    return determinant(pairing);
}

double gram_covolume(const std::vector<std::vector<double>>& pairing)
{
    const std::size_t n = pairing.size();
    for (const auto& row : pairing)
        if (row.size() != n) throw DomainError("pairing table must be square");
    std::vector<std::vector<double>> a = pairing;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(a[i][j] - a[j][i]) > 1e-12 * (1.0 + std::abs(a[i][j])))
                throw DomainError("pairing table must be symmetric");
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
        if (a[p][k] == 0.0) return 0.0;
        if (p != k) {
            std::swap(a[p], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return det;
}

Rational gram_covolume(const std::vector<RatVector>& vectors, const RatMatrix& pairing)
{
    if (!pairing.square()) throw DomainError("pairing table must be square");
    RatMatrix gram(vectors.size(), vectors.size());
    for (const auto& v : vectors)
        if (v.size() != pairing.rows()) throw DomainError("vector length does not match the pairing table");
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = 0; j < vectors.size(); ++j)
            gram(i, j) = bilinear(pairing, std::span<const Rational>(vectors[i]), std::span<const Rational>(vectors[j]));
    return gram_covolume(gram);
}

void validate(const TorsionIngredients& in)
{
    const std::pair<const char*, double> fields[] = {{"tau_iota", in.tau_iota}, {"vol_X", in.vol_X},
                                                     {"A", in.A},               {"tau_O_fix", in.tau_O_fix},
                                                     {"vol_fix", in.vol_fix},   {"vol_L2_H1", in.vol_L2_H1}};
    for (const auto& [name, value] : fields)
        if (!(value > 0.0) || !std::isfinite(value)) throw DomainError(std::string(name) + " must be a finite positive number");
    check_t(in.t);
}

double assemble_invariant(const TorsionIngredients& in)
{
    validate(in);
    const double exponent = numerology(in.t).exp_vol.get_d();
    return in.tau_iota * std::pow(in.vol_X, exponent) * in.A / (in.tau_O_fix * in.tau_O_fix) /
           (in.vol_fix * in.vol_fix) * in.vol_L2_H1;
}

} // namespace ihskit
