#include "ihskit/char_forms.hpp"

namespace ihskit {

namespace {

Rational factorial(int n)
{
    Integer f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return Rational(f);
}

/// 1 / b as a power series through x^order; b[0] ≠ 0.
std::vector<Rational> invert_series(const std::vector<Rational>& b, int order)
{
    std::vector<Rational> c(static_cast<std::size_t>(order) + 1);
    c[0] = 1 / b[0];
    for (int n = 1; n <= order; ++n) {
        Rational acc = 0;
        for (int k = 1; k <= n; ++k) acc += b[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(n - k)];
        c[static_cast<std::size_t>(n)] = -acc / b[0];
    }
    return c;
}

void check_weight(int w)
{
    if (w < 0 || w > kMaxWeight)
        throw DomainError("series are tabulated through weight " + std::to_string(kMaxWeight) + " only");
}

/// Power sums p_k = x1^k + x2^k of the two Chern roots, k = 0..W, via Newton's identities.
std::vector<GradedElement> power_sums(Gen c1, Gen c2, int w)
{
    const GradedElement e1 = GradedElement::generator(c1, w);
    const GradedElement e2 = GradedElement::generator(c2, w);
    std::vector<GradedElement> p;
    p.push_back(GradedElement::constant(2, w));
    p.push_back(e1);
    for (int k = 2; k <= w; ++k) p.push_back(e1 * p[static_cast<std::size_t>(k - 1)] - e2 * p[static_cast<std::size_t>(k - 2)]);
    return p;
}

/// Q(x1) Q(x2) for Q(x) = Σ a_k x^k, in terms of c1 = x1 + x2, c2 = x1 x2.
GradedElement multiplicative_rank2(const std::vector<Rational>& a, Gen c1, Gen c2, int w)
{
    const std::vector<GradedElement> p = power_sums(c1, c2, w);
    const GradedElement e2 = GradedElement::generator(c2, w);
    GradedElement out(w);
    for (int i = 0; i <= w; ++i)
        for (int j = 0; j <= i && i + j <= w; ++j) {
            const Rational coeff = a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(j)];
            if (coeff == 0) continue;
            // x1^i x2^j + x1^j x2^i = c2^j p_{i-j} (a single term when i == j)
            GradedElement sym = (i == j) ? e2.pow(static_cast<unsigned>(i))
                                         : e2.pow(static_cast<unsigned>(j)) * p[static_cast<std::size_t>(i - j)];
            out += coeff * sym;
        }
    return out;
}

/// Σ_k b_k (x1^k + x2^k).
GradedElement additive_rank2(const std::vector<Rational>& b, Gen c1, Gen c2, int w)
{
    const std::vector<GradedElement> p = power_sums(c1, c2, w);
    GradedElement out(w);
    for (int k = 0; k <= w; ++k) out += b[static_cast<std::size_t>(k)] * p[static_cast<std::size_t>(k)];
    return out;
}

const std::vector<Rational>& cached_todd()
{
    static const std::vector<Rational> table = todd_scalar_coefficients(kMaxWeight);
    return table;
}

const std::vector<Rational>& cached_sigmoid()
{
    static const std::vector<Rational> table = sigmoid_scalar_coefficients(kMaxWeight);
    return table;
}

GradedElement gen(Gen g, int w = kMaxWeight) { return GradedElement::generator(g, w); }

} // namespace

std::vector<Rational> todd_scalar_coefficients(int order)
{
    // (1 - e^{-x}) / x = Σ (-1)^k x^k / (k+1)!
    std::vector<Rational> b;
    for (int k = 0; k <= order; ++k) b.push_back(Rational(k % 2 == 0 ? 1 : -1) / factorial(k + 1));
    return invert_series(b, order);
}

std::vector<Rational> sigmoid_scalar_coefficients(int order)
{
    // 1 + e^{-x} = 2 + Σ_{k>=1} (-1)^k x^k / k!
    std::vector<Rational> b;
    b.push_back(2);
    for (int k = 1; k <= order; ++k) b.push_back(Rational(k % 2 == 0 ? 1 : -1) / factorial(k));
    return invert_series(b, order);
}

GradedElement todd_series(Gen c1, Gen c2, int max_weight)
{
    check_weight(max_weight);
    return multiplicative_rank2(cached_todd(), c1, c2, max_weight);
}

GradedElement ch_bundle(Gen c1, Gen c2, int rank, bool dual, int max_weight)
{
    check_weight(max_weight);
    if (rank != 2) throw DomainError("only rank-2 bundles are supported");
    std::vector<Rational> b;
    for (int k = 0; k <= max_weight; ++k) b.push_back(Rational(dual && k % 2 == 1 ? -1 : 1) / factorial(k));
    return additive_rank2(b, c1, c2, max_weight);
}

GradedElement sigmoid_det_factor(Gen c1, Gen c2, int max_weight)
{
    check_weight(max_weight);
    return multiplicative_rank2(cached_sigmoid(), c1, c2, max_weight);
}

GradedElement equivariant_todd(int max_weight)
{
    return todd_series(Gen::c1F, Gen::c2F, max_weight) * sigmoid_det_factor(Gen::c1N, Gen::c2N, max_weight);
}

GradedElement equivariant_ch_cotangent(int max_weight)
{
    return ch_bundle(Gen::c1F, Gen::c2F, 2, true, max_weight) - ch_bundle(Gen::c1N, Gen::c2N, 2, true, max_weight);
}

GradedElement substitute_normal_relations(const GradedElement& x)
{
    const int w = x.max_weight();
    const GradedElement c1F = gen(Gen::c1F, w), c2F = gen(Gen::c2F, w);
    const GradedElement c1X = gen(Gen::c1X, w), c2X = gen(Gen::c2X, w);
    std::map<Gen, GradedElement> rules;
    rules.emplace(Gen::c1N, c1X - c1F);
    rules.emplace(Gen::c2N, c1F * c1F - c2F - c1F * c1X + c2X);
    return x.substitute(rules);
}

GradedElement total_chern_residual(int max_weight)
{
    const int w = max_weight;
    const GradedElement one = GradedElement::constant(1, w);
    const GradedElement cx = one + gen(Gen::c1X, w) + gen(Gen::c2X, w);
    const GradedElement cf = one + gen(Gen::c1F, w) + gen(Gen::c2F, w);
    const GradedElement cn = one + gen(Gen::c1N, w) + gen(Gen::c2N, w);
    return substitute_normal_relations(cx - cf * cn);
}

GradedElement omega_form(int max_weight)
{
    const int w = max_weight;
    return gen(Gen::c1F, w).pow(2) - Rational(8) * gen(Gen::c2F, w) - gen(Gen::c1X, w).pow(2) +
           Rational(3) * gen(Gen::c2X, w);
}

ToddChIdentityCheck verify_todd_ch_identity(bool apply_normal_relations)
{
    ToddChIdentityCheck check;
    GradedElement product = (equivariant_todd() * equivariant_ch_cotangent()).component(3);
    check.lhs = apply_normal_relations ? substitute_normal_relations(product) : product;
    check.rhs = Rational(2) * todd_series(Gen::c1F, Gen::c2F).component(3) +
                Rational(1, 48) * (gen(Gen::c1X) * omega_form());
    check.residual = check.lhs - check.rhs;
    check.holds = check.residual.is_zero();
    return check;
}

std::array<double, kGenCount> ChernRootAssignment::values() const
{
    const double c1F = fixed_roots[0] + fixed_roots[1];
    const double c2F = fixed_roots[0] * fixed_roots[1];
    const double c1N = normal_roots[0] + normal_roots[1];
    const double c2N = normal_roots[0] * normal_roots[1];
    return {c1F, c2F, c1F + c1N, c2F + c2N + c1F * c1N, c1N, c2N};
}

} // namespace ihskit
