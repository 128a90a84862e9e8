#include "ihskit/cli.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <sstream>

namespace ihskit::cli {

namespace {

using C = std::complex<double>;

GradedElement g(Gen x) { return GradedElement::generator(x); }
GradedElement k(const Rational& c) { return GradedElement::constant(c); }

IntVector vec(std::initializer_list<long> xs)
{
    IntVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

IntVector l2_unit(std::size_t i)
{
    IntVector v(23, 0);
    v[i] = 1;
    return v;
}

std::string sci(double x)
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

/// Runs one check, turning any exception into a failure.
Check guarded(std::string name, const std::function<std::pair<bool, std::string>()>& body)
{
    try {
        auto [pass, detail] = body();
        return {std::move(name), pass, std::move(detail)};
    } catch (const std::exception& e) {
        return {std::move(name), false, std::string("threw: ") + e.what()};
    }
}

struct Expected {
    const char* name;
    std::function<GradedElement()> computed;
    std::function<GradedElement()> expected;
};

std::vector<Expected> expansion_table()
{
    const Gen c1F = Gen::c1F, c2F = Gen::c2F, c1N = Gen::c1N, c2N = Gen::c2N;
    return {
        {"Td(F) weight 2", [=] { return todd_series(c1F, c2F).component(2); },
         [=] { return Rational(1, 12) * (g(c1F).pow(2) + g(c2F)); }},
        {"Td(F) weight 3", [=] { return todd_series(c1F, c2F).component(3); },
         [=] { return Rational(1, 24) * g(c1F) * g(c2F); }},
        {"Td(F) weight 4", [=] { return todd_series(c1F, c2F).component(4); },
         [=] { return Rational(1, 720) * (-g(c1F).pow(4) + k(4) * g(c1F).pow(2) * g(c2F) + k(3) * g(c2F).pow(2)); }},
        {"sigmoid factor of N", [=] { return sigmoid_det_factor(c1N, c2N).truncated(3); },
         [=] {
             return k(Rational(1, 4)) + Rational(1, 8) * g(c1N) + Rational(1, 16) * g(c2N) -
                    Rational(1, 96) * (g(c1N).pow(3) - k(3) * g(c1N) * g(c2N));
         }},
        {"ch of the dual of F", [=] { return ch_bundle(c1F, c2F, 2, true).truncated(3); },
         [=] {
             return k(2) - g(c1F) + Rational(1, 2) * (g(c1F).pow(2) - k(2) * g(c2F)) -
                    Rational(1, 6) * (g(c1F).pow(3) - k(3) * g(c1F) * g(c2F));
         }},
        {"equivariant Td weights 0-2", [=] { return equivariant_todd().truncated(2); },
         [=] {
             return k(Rational(1, 4)) + Rational(1, 8) * (g(c1F) + g(c1N)) +
                    Rational(1, 48) * (g(c1F).pow(2) + g(c2F) + k(3) * g(c1F) * g(c1N) + k(3) * g(c2N));
         }},
        {"equivariant ch weights 0-3", [=] { return equivariant_ch_cotangent().truncated(3); },
         [=] {
             return -g(c1F) + g(c1N) + Rational(1, 2) * (g(c1F).pow(2) - k(2) * g(c2F) - g(c1N).pow(2) + k(2) * g(c2N)) -
                    Rational(1, 6) * (g(c1F).pow(3) - k(3) * g(c1F) * g(c2F) - g(c1N).pow(3) + k(3) * g(c1N) * g(c2N));
         }},
        {"weight-3 product before relations", [=] { return (equivariant_todd() * equivariant_ch_cotangent()).component(3); },
         [=] {
             return Rational(1, 48) * (g(c1F).pow(2) * g(c1N) - g(c1N).pow(3) - g(c1F) * g(c2F) + k(3) * g(c1F) * g(c2N) +
                                       k(3) * g(c1N) * g(c2N) - k(5) * g(c1N) * g(c2F));
         }},
    };
}

} // namespace

EmbeddedSublattice example_zh_ze()
{
    IntVector h = l2_unit(16);
    h[17] = 1;
    return EmbeddedSublattice(build_standard("L2"), {h, l2_unit(22)}, "Zh+Ze");
}

std::vector<Check> verify_all(double tol)
{
    std::vector<Check> checks;

    checks.push_back(guarded("weight-3 identity, exact", [] {
        const ToddChIdentityCheck c = verify_todd_ch_identity();
        return std::pair{c.holds && c.residual.is_zero(), "residual " + to_string(c.residual)};
    }));
    checks.push_back(guarded("weight-3 identity needs the normal relations", [] {
        const ToddChIdentityCheck c = verify_todd_ch_identity(false);
        return std::pair{!c.holds, "residual " + to_string(c.residual)};
    }));
    checks.push_back(guarded("weight-3 identity at random Chern roots", [tol] {
        const ToddChIdentityCheck c = verify_todd_ch_identity();
        std::mt19937_64 rng(2035);
        std::uniform_real_distribution<double> u(-0.1, 0.1);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const ChernRootAssignment r{{u(rng), u(rng)}, {u(rng), u(rng)}};
            const auto v = r.values();
            worst = std::max(worst, std::abs(c.lhs.evaluate(v) - c.rhs.evaluate(v)));
        }
        return std::pair{worst < tol, "max deviation " + sci(worst)};
    }));

    for (const auto& e : expansion_table())
        checks.push_back(guarded(std::string("expansion: ") + e.name, [&e] {
            const GradedElement got = e.computed();
            return std::pair{got == e.expected(), to_string(got)};
        }));

    checks.push_back(guarded("walls of Zh+Ze", [] {
        const DeltaSet d = enumerate_delta(example_zh_ze());
        std::vector<IntVector> got;
        for (const auto& v : d.vectors) got.push_back(v.coords);
        const std::vector<IntVector> want{vec({-2, -3}), vec({-2, 3}), vec({0, -1}), vec({0, 1}), vec({2, -3}), vec({2, 3})};
        return std::pair{d.exact && got == want, std::to_string(got.size()) + (d.exact ? " vectors, exact" : " vectors, bounded")};
    }));
    checks.push_back(guarded("chambers of Zh+Ze", [] {
        const EmbeddedSublattice m = example_zh_ze();
        const auto ch = chambers_rank2(m.lattice(), enumerate_delta(m), vec({1, 0}));
        const std::vector<std::pair<IntVector, IntVector>> want{
            {vec({1, -1}), vec({3, -2})}, {vec({3, -2}), vec({1, 0})}, {vec({1, 0}), vec({3, 2})}, {vec({3, 2}), vec({1, 1})}};
        bool ok = ch.size() == want.size();
        for (std::size_t i = 0; ok && i < ch.size(); ++i)
            ok = ch[i].low.direction == want[i].first && ch[i].high.direction == want[i].second;
        std::vector<bool> natural;
        for (const auto& c : ch) natural.push_back(is_natural({vec({1, 0})}, c));
        ok = ok && natural == std::vector<bool>{false, true, true, false};
        const auto orbits = chamber_orbits(m.lattice(), ch, {reflection_isometry(m.lattice(), vec({0, 1}))});
        ok = ok && orbits == std::vector<std::vector<std::size_t>>{{0, 3}, {1, 2}};
        return std::pair{ok, std::to_string(ch.size()) + " chambers, " + std::to_string(orbits.size()) + " orbits"};
    }));

    checks.push_back(guarded("fiber integral of Omega for all admissible t", [] {
        int bad = 0;
        for (long t = -19; t <= 21; t += 2) {
            const Numerology n = numerology(t);
            const Integer want = -3 * (t * t + 7);
            bad += omega_integral_from_parts(t) != want || n.omega_int != want || n.dim_def < 0;
        }
        return std::pair{bad == 0, std::to_string(21 - bad) + "/21 values of t"};
    }));

    checks.push_back(guarded("pointwise quaternionic identity", [tol] {
        std::mt19937_64 rng(31);
        std::normal_distribution<double> nd;
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            Matrix4c a{};
            for (auto& row : a)
                for (auto& x : row) x = C(nd(rng), nd(rng));
            const C mu(nd(rng), nd(rng));
            const PointwiseNorms p = quaternionic_pointwise_norms(a, mu);
            worst = std::max(worst, std::abs(p.lhs / p.rhs - 1.0));
        }
        return std::pair{worst < tol, "max |ratio - 1| " + sci(worst)};
    }));

    checks.push_back(guarded("admissible involution for M0 = Zh", [] {
        const CatalogInvolution c = catalog_involution("Zh");
        const AdmissibleSublattice a = make_admissible(nikulin_extension(build_standard("L_K3"), c.m0_basis, c.candidate));
        const auto m = example_zh_ze();
        const bool ok = a.t == -17 && spinor_norm(a.iota) == 1 && a.m_basis == m.basis() && numerology(a.t).chi == 37;
        return std::pair{ok, "t = " + std::to_string(a.t)};
    }));

    return checks;
}

} // namespace ihskit::cli
