#include "ihskit/torsion.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ihskit;

namespace {

WeightedSpectrum finite(std::vector<std::pair<double, double>> e) { return WeightedSpectrum(FiniteSpectrum{std::move(e)}); }

} // namespace

TEST_SUITE("zeta constants")
{
    TEST_CASE("Riemann zeta constants match the Euler-Maclaurin evaluator")
    {
        const oracle::Dual z = oracle::riemann_zeta({0.0L, 1.0L});
        CHECK(std::abs(static_cast<double>(z.v) - kRiemannZetaAtZero) < 1e-12);
        CHECK(std::abs(static_cast<double>(z.d) - riemann_zeta_prime_at_zero()) < 1e-12);
        // the evaluator itself: ζ(2) = π²/6 and ζ(-1) = -1/12
        CHECK(std::abs(static_cast<double>(oracle::riemann_zeta({2.0L, 0.0L}).v) - std::numbers::pi * std::numbers::pi / 6) < 1e-12);
        CHECK(std::abs(static_cast<double>(oracle::riemann_zeta({-1.0L, 0.0L}).v) + 1.0 / 12) < 1e-12);
    }
}

TEST_SUITE("torsion_kit")
{
    TEST_CASE("finite spectra")
    {
        CHECK(zeta_prime_zero(finite({{1.0, 1.0}})) == doctest::Approx(0.0));
        CHECK(zeta_prime_zero(finite({{std::numbers::e, 1.0}})) == doctest::Approx(-1.0));
        CHECK_THROWS_AS(finite({{0.0, 1.0}}), DomainError);
        CHECK_THROWS_AS(finite({{-2.0, 1.0}}), DomainError);
    }

    TEST_CASE("power spectra against the oracle")
    {
        // Σ w (a n^p)^{-s} = w a^{-s} ζ(p s); differentiate at s = 0 with the oracle
        const double cases[][3] = {{1, 2, 2}, {1, 1, 1}, {3.5, 2, -1}, {0.25, 0.5, 4}, {7, 3, 0.5}};
        for (const auto& c : cases) {
            const double a = c[0], p = c[1], w = c[2];
            const oracle::Dual z = oracle::riemann_zeta({0.0L, static_cast<long double>(p)});
            const double expected = w * (-std::log(a) * static_cast<double>(z.v) + static_cast<double>(z.d));
            CHECK(std::abs(zeta_prime_zero(WeightedSpectrum(PowerSpectrum{a, p, w})) - expected) < 1e-12);
        }
        const double v = zeta_prime_zero(WeightedSpectrum(PowerSpectrum{1, 2, 2}));
        CHECK(std::abs(v + 2 * std::log(2 * std::numbers::pi)) < 1e-9);
        CHECK_THROWS_AS(WeightedSpectrum(PowerSpectrum{0, 1, 1}), DomainError);
        CHECK_THROWS_AS(WeightedSpectrum(PowerSpectrum{1, -1, 1}), DomainError);
    }

    TEST_CASE("equivariant torsion")
    {
        CHECK(equivariant_torsion({}, 4) == 1.0);
        std::map<int, WeightedSpectrum> one;
        one.emplace(1, finite({{std::numbers::e, 1.0}}));
        CHECK(equivariant_torsion(one, 2) == doctest::Approx(std::exp(-1.0)));

        const WeightedSpectrum s = finite({{2.0, 1.5}, {5.0, -0.5}});
        std::map<int, WeightedSpectrum> pair;
        pair.emplace(1, s);
        pair.emplace(2, s);
        CHECK(equivariant_torsion(pair, 2) == doctest::Approx(std::exp(-zeta_prime_zero(s))));

        std::map<int, WeightedSpectrum> bad;
        bad.emplace(3, s);
        CHECK_THROWS_AS(equivariant_torsion(bad, 2), DomainError);
    }

    TEST_CASE("Quillen combination")
    {
        CHECK(quillen_combination(1, 1, 1) == 1.0);
        CHECK(quillen_combination(2.5, 3, 3) == doctest::Approx(2.5));
        CHECK(quillen_combination(2, 3, 1) == doctest::Approx(18.0));
        CHECK_THROWS_AS(quillen_combination(0, 1, 1), DomainError);
        CHECK_THROWS_AS(quillen_combination(1, -1, 1), DomainError);
    }

    TEST_CASE("numerology values")
    {
        const Numerology one = numerology(1);
        CHECK(one.c1sq == 0);
        CHECK(one.chi == 1);
        CHECK(one.c2 == 12);
        CHECK(one.dim_def == 10);
        CHECK(one.omega_int == -24);
        CHECK(one.exp_vol == 0);

        const Numerology m17 = numerology(-17);
        CHECK(m17.c1sq == 288);
        CHECK(m17.chi == 37);
        CHECK(m17.chi == 1 + 36);
        CHECK(m17.c2 == 156);
        CHECK(m17.dim_def == 19);
        CHECK(m17.omega_int == -888);
        CHECK(m17.exp_vol == 27);

        const Numerology top = numerology(21);
        CHECK(top.dim_def == 0);
        CHECK(top.chi == 56);

        const Numerology m1 = numerology(-1);
        CHECK(m1.exp_vol == 1);
        CHECK(m1.coef_curv16 == 0);
        CHECK(m1.coef_prop32 == Rational(1, 2));
        CHECK(m1.coef_l34_plus == -5);
        CHECK(m1.coef_l34_minus == Rational(-11, 2));

        CHECK_THROWS_AS(numerology(2), DomainError);
        CHECK_THROWS_AS(numerology(23), DomainError);
        CHECK_THROWS_AS(numerology(-21), DomainError);
    }

    TEST_CASE("Gram covolumes")
    {
        CHECK(gram_covolume(RatMatrix::identity(2)) == 1);
        RatMatrix single(1, 1);
        single(0, 0) = 2;
        CHECK(gram_covolume(single) == 2);
        const RatMatrix t = to_rational(IntMatrix::from_rows({{2, 1}, {1, 2}}));
        CHECK(gram_covolume(t) == 3);
        CHECK(gram_covolume(std::vector<std::vector<double>>{{2, 1}, {1, 2}}) == doctest::Approx(3.0));
        CHECK_THROWS_AS(gram_covolume(to_rational(IntMatrix::from_rows({{2, 1}, {0, 2}}))), DomainError);
        CHECK_THROWS_AS(gram_covolume(std::vector<std::vector<double>>{{1, 0}}), DomainError);
        CHECK_THROWS_AS(gram_covolume(std::vector<RatVector>{{1, 0, 0}}, t), DomainError);
    }

    TEST_CASE("assembly")
    {
        CHECK(assemble_invariant({}) == 1.0);
        TorsionIngredients in;
        in.tau_iota = 2;
        in.vol_X = 16;
        in.t = -1;
        CHECK(assemble_invariant(in) == doctest::Approx(32.0));
        TorsionIngredients scaled = in;
        scaled.tau_O_fix = 3;
        CHECK(assemble_invariant(scaled) == doctest::Approx(32.0 / 9));
        TorsionIngredients bad;
        bad.A = 0;
        CHECK_THROWS_AS(assemble_invariant(bad), DomainError);
        bad = {};
        bad.t = 4;
        CHECK_THROWS_AS(assemble_invariant(bad), DomainError);
    }
}

TEST_SUITE("torsion_kit properties")
{
    TEST_CASE("zeta derivative is additive over disjoint unions")
    {
        auto g = oracle::rng(61);
        std::uniform_real_distribution<double> lam(0.1, 50), w(-3, 3);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<std::pair<double, double>> a, b;
            for (long i = oracle::uniform(g, 0, 6); i > 0; --i) a.push_back({lam(g), w(g)});
            for (long i = oracle::uniform(g, 0, 6); i > 0; --i) b.push_back({lam(g), w(g)});
            std::vector<std::pair<double, double>> ab = a;
            ab.insert(ab.end(), b.begin(), b.end());
            CHECK(std::abs(zeta_prime_zero(finite(ab)) - zeta_prime_zero(finite(a)) - zeta_prime_zero(finite(b))) < 1e-12);
        }
    }

    TEST_CASE("flipping every weight inverts the torsion")
    {
        auto g = oracle::rng(62);
        std::uniform_real_distribution<double> lam(0.1, 50), w(-3, 3);
        for (int trial = 0; trial < 100; ++trial) {
            const int n = static_cast<int>(oracle::uniform(g, 1, 4));
            std::map<int, WeightedSpectrum> plus, minus;
            for (int q = 0; q <= n; ++q) {
                std::vector<std::pair<double, double>> e;
                for (long i = oracle::uniform(g, 0, 4); i > 0; --i) e.push_back({lam(g), w(g)});
                std::vector<std::pair<double, double>> f = e;
                for (auto& x : f) x.second = -x.second;
                plus.emplace(q, finite(e));
                minus.emplace(q, finite(f));
            }
            CHECK(std::abs(equivariant_torsion(plus, n) * equivariant_torsion(minus, n) - 1.0) < 1e-12);
        }
    }

    TEST_CASE("numerology integrality over every admissible t")
    {
        int count = 0;
        for (long t = -19; t <= 21; t += 2) {
            CAPTURE(t);
            const Numerology n = numerology(t);
            const Integer t2 = Integer(t) * t;
            CHECK(n.chi * 8 == t2 + 7);
            CHECK(n.c2 * 2 == t2 + 23);
            CHECK(n.dim_def * 2 == 21 - t);
            CHECK(n.dim_def >= 0);
            CHECK(mpz_divisible_ui_p(n.omega_int.get_mpz_t(), 3) != 0);
            CHECK(omega_integral_from_parts(t) == n.omega_int);
            CHECK(omega_integral_from_parts(t) == -3 * (t2 + 7));
            ++count;
        }
        CHECK(count == 21);
    }

    TEST_CASE("assembly is monotone in each ingredient")
    {
        auto g = oracle::rng(63);
        std::uniform_real_distribution<double> pos(0.1, 10), bump(1.01, 3);
        for (int trial = 0; trial < 100; ++trial) {
            TorsionIngredients in{pos(g), pos(g), pos(g), pos(g), pos(g), pos(g), static_cast<int>(2 * oracle::uniform(g, -10, 10) + 1)};
            const double base = assemble_invariant(in);
            const double f = bump(g);
            TorsionIngredients x = in;
            x.tau_iota *= f;
            CHECK(assemble_invariant(x) > base);
            x = in;
            x.vol_L2_H1 *= f;
            CHECK(assemble_invariant(x) > base);
            x = in;
            x.tau_O_fix *= f;
            CHECK(assemble_invariant(x) < base);
            CHECK(assemble_invariant(x) == doctest::Approx(base / (f * f)).epsilon(1e-12));
            x = in;
            x.vol_fix *= f;
            CHECK(assemble_invariant(x) < base);
        }
    }

    TEST_CASE("Gram covolume is invariant under unimodular change of basis")
    {
        auto g = oracle::rng(64);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t n = static_cast<std::size_t>(oracle::uniform(g, 1, 4));
            RatMatrix p(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) p(i, j) = p(j, i) = Rational(oracle::uniform(g, -5, 5));
            std::vector<RatVector> basis;
            for (std::size_t i = 0; i < n; ++i) {
                RatVector e(n, 0);
                e[i] = 1;
                basis.push_back(e);
            }
            // random unimodular transform as a product of elementary operations
            std::vector<RatVector> moved = basis;
            for (int step = 0; step < 8 && n > 1; ++step) {
                const std::size_t i = static_cast<std::size_t>(oracle::uniform(g, 0, static_cast<long>(n) - 1));
                std::size_t j = static_cast<std::size_t>(oracle::uniform(g, 0, static_cast<long>(n) - 2));
                if (j >= i) ++j;
                const long c = oracle::uniform(g, -2, 2);
                for (std::size_t k = 0; k < n; ++k) moved[i][k] += c * moved[j][k];
            }
            CHECK(gram_covolume(moved, p) == gram_covolume(basis, p));
            CHECK(gram_covolume(basis, p) == gram_covolume(p));
        }
    }
}
