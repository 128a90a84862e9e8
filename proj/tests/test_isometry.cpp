#include "ihskit/isometry.hpp"
#include "ihskit/normal_forms.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace ihskit;

namespace {

IntVector vec(std::initializer_list<long> xs)
{
    IntVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

IntVector l2_vector(std::initializer_list<std::pair<std::size_t, long>> entries)
{
    IntVector v(23, 0);
    for (auto [i, x] : entries) v[i] = x;
    return v;
}

IntMatrix negated_identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = -1;
    return m;
}

/// Random lattice of rank <= 4 together with vectors whose reflections are integral.
struct ReflectionSupply {
    Lattice lattice;
    std::vector<IntVector> roots;
};

ReflectionSupply random_supply(std::mt19937_64& g)
{
    while (true) {
        const std::size_t n = static_cast<std::size_t>(oracle::uniform(g, 1, 4));
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = oracle::uniform(g, -3, 3);
        if (oracle::laplace_det(m) == 0) continue;
        Lattice l("R", m);
        std::vector<IntVector> roots;
        for (int attempt = 0; attempt < 200 && roots.size() < 6; ++attempt) {
            IntVector v(n);
            for (auto& x : v) x = oracle::uniform(g, -2, 2);
            if (norm(l, v) == 0) continue;
            if (reflection(l, v).integral) roots.push_back(v);
        }
        if (roots.size() >= 2) return {l, roots};
    }
}

struct Word {
    Isometry g;
    ReflectionFactorization factors;
};

Word random_word(std::mt19937_64& g, const ReflectionSupply& s)
{
    const long len = oracle::uniform(g, 0, 6);
    Isometry acc = Isometry::identity(s.lattice);
    ReflectionFactorization f;
    for (long i = 0; i < len; ++i) {
        const IntVector& v = s.roots[static_cast<std::size_t>(oracle::uniform(g, 0, static_cast<long>(s.roots.size()) - 1))];
        acc = acc * reflection_isometry(s.lattice, v);
        f.vectors.push_back(to_rational(v));
    }
    return {acc, f};
}

} // namespace

TEST_SUITE("isometry")
{
    TEST_CASE("reflection in e on L2 is integral and negates e")
    {
        const Lattice l2 = build_standard("L2");
        const IntVector e = l2_vector({{22, 1}});
        const Reflection r = reflection(l2, e);
        CHECK(r.integral);
        const Isometry s = reflection_isometry(l2, e);
        CHECK(s.apply(e) == l2_vector({{22, -1}}));
        for (std::size_t i = 0; i < 22; ++i) {
            IntVector x(23, 0);
            x[i] = 1;
            CHECK(s.apply(x) == x);
        }
    }

    TEST_CASE("reflection in a -10 vector of Zh+Ze is not integral")
    {
        const Lattice m("M", IntMatrix::from_rows({vec({2, 0}), vec({0, -2})}));
        const Reflection r = reflection(m, vec({2, 3}));
        CHECK_FALSE(r.integral);
        // image of h: h - 2·4/(-10)·(2h+3e), so the h-coordinate is 1 + 8/5
        CHECK(r.matrix(0, 0) == Rational(13, 5));
        CHECK(r.matrix(1, 0) == Rational(12, 5));
        CHECK_THROWS_AS(reflection_isometry(m, vec({2, 3})), DomainError);
        CHECK_THROWS_AS(reflection(m, vec({1, 1})), DomainError);
        CHECK(r.matrix * r.matrix == RatMatrix::identity(2));
    }

    TEST_CASE("isometry validation")
    {
        const Lattice u = build_standard("U");
        CHECK_THROWS_AS(Isometry(u, IntMatrix::from_rows({vec({1, 1}), vec({0, 1})})), DomainError);
        const Isometry swap(u, IntMatrix::from_rows({vec({0, 1}), vec({1, 0})}));
        CHECK(swap.is_involution());
        CHECK(swap.trace() == 0);
    }

    TEST_CASE("Cartan-Dieudonne on simple cases")
    {
        const Lattice u = build_standard("U");
        CHECK(cartan_dieudonne(Isometry::identity(u)).vectors.empty());

        const Isometry swap(u, IntMatrix::from_rows({vec({0, 1}), vec({1, 0})}));
        const auto f = cartan_dieudonne(swap);
        CHECK(compose(u, f) == to_rational(swap.matrix()));
        CHECK(f.vectors.size() <= 4);

        const Lattice l2 = build_standard("L2");
        const Isometry se = reflection_isometry(l2, l2_vector({{22, 1}}));
        const auto fe = cartan_dieudonne(se);
        REQUIRE(fe.vectors.size() == 1);
        const IntVector line = primitive_direction(fe.vectors[0]);
        CHECK((line == l2_vector({{22, 1}}) || line == l2_vector({{22, -1}})));
    }

    TEST_CASE("spinor norms and O+")
    {
        const Lattice u = build_standard("U");
        CHECK(spinor_norm(Isometry::identity(u)) == 1);
        const Lattice l2 = build_standard("L2");
        const Isometry se = reflection_isometry(l2, l2_vector({{22, 1}}));
        CHECK(spinor_norm(se) == 1);
        CHECK(in_O_plus(se));
        const Isometry minus(u, negated_identity(2));
        CHECK(spinor_norm(minus) == -1);
        CHECK_FALSE(in_O_plus(minus));
        // s_{f+g} s_{f-g} = -id, norms 2 and -2
        ReflectionFactorization f{{to_rational(vec({1, 1})), to_rational(vec({1, -1}))}};
        CHECK(compose(u, f) == to_rational(negated_identity(2)));
        CHECK(spinor_norm(u, f) == -1);
        CHECK(in_O_plus(se * se));
    }

    TEST_CASE("invariant lattices")
    {
        const Lattice u = build_standard("U");
        CHECK(invariant_lattice(Isometry::identity(u)).size() == 2);
        CHECK(invariant_lattice(Isometry(u, negated_identity(2))).empty());
        const Isometry swap(u, IntMatrix::from_rows({vec({0, 1}), vec({1, 0})}));
        CHECK(invariant_lattice(swap) == std::vector<IntVector>{vec({1, 1})});
    }

    TEST_CASE("catalog involutions extend and validate")
    {
        const Lattice lk3 = build_standard("L_K3");
        for (const auto& key : catalog_involution_keys()) {
            CAPTURE(key);
            const CatalogInvolution c = catalog_involution(key);
            const Isometry iota = nikulin_extension(lk3, c.m0_basis, c.candidate);
            CHECK(iota.is_involution());
            CHECK(canonical_basis(invariant_lattice(iota)) == canonical_basis(c.m0_basis));
        }
        const CatalogInvolution zh = catalog_involution("Zh");
        const Isometry iota = nikulin_extension(lk3, zh.m0_basis, zh.candidate);
        CHECK(iota.matrix()(16, 17) == 1);
        CHECK(iota.matrix()(17, 16) == 1);
        CHECK(iota.matrix()(0, 0) == -1);
        CHECK(iota.trace() == -20);

        const CatalogInvolution uc = catalog_involution("U");
        const Isometry iu = nikulin_extension(lk3, uc.m0_basis, uc.candidate);
        for (std::size_t i = 0; i < 22; ++i) CHECK(iu.matrix()(i, i) == ((i == 16 || i == 17) ? 1 : -1));
        CHECK_THROWS_AS(catalog_involution("nope"), InputError);
    }

    TEST_CASE("nikulin_extension rejects bad candidates")
    {
        const Lattice lk3 = build_standard("L_K3");
        const CatalogInvolution zh = catalog_involution("Zh");
        RatMatrix glue = zh.candidate;
        glue(0, 16) = Rational(1, 2);
        CHECK_THROWS_WITH_AS(nikulin_extension(lk3, zh.m0_basis, glue), doctest::Contains("non-integral"), DomainError);
        CHECK_THROWS_AS(nikulin_extension(lk3, zh.m0_basis, RatMatrix::identity(22)), DomainError);
        // M0 = Z(2f) is not primitive
        IntVector twof(22, 0);
        twof[16] = 2;
        CHECK_THROWS_AS(nikulin_extension(lk3, {twof}, zh.candidate), DomainError);
    }

    TEST_CASE("make_admissible on M0 = Zh")
    {
        const Lattice lk3 = build_standard("L_K3");
        const CatalogInvolution zh = catalog_involution("Zh");
        const AdmissibleSublattice a = make_admissible(nikulin_extension(lk3, zh.m0_basis, zh.candidate));
        CHECK(a.iota.trace() == -19);
        CHECK(a.t == -17);
        CHECK(spinor_norm(a.iota) == 1);
        const std::vector<IntVector> expected{l2_vector({{16, 1}, {17, 1}}), l2_vector({{22, 1}})};
        CHECK(canonical_basis(a.m_basis) == canonical_basis(expected));
        CHECK(is_primitive_sublattice(a.ambient, a.m_basis));
    }

    TEST_CASE("admissibility failures are reported together")
    {
        const Lattice l2 = build_standard("L2");
        try {
            validate_admissible(Isometry::identity(l2));
            FAIL("identity accepted");
        } catch (const AdmissibilityError& err) {
            CHECK(err.violations().size() >= 1);
            bool hyperbolic = false;
            for (const auto& v : err.violations())
                if (v.find("hyperbolic") != std::string::npos) hyperbolic = true;
            CHECK(hyperbolic);
        }
        CHECK_THROWS_AS(validate_admissible(Isometry(l2, negated_identity(23))), AdmissibilityError);
        const Lattice u = build_standard("U");
        CHECK_THROWS_AS(validate_admissible(Isometry::identity(u)), AdmissibilityError);
    }

    TEST_CASE("every catalog admissible sublattice has odd t in [-19, 21]")
    {
        const Lattice lk3 = build_standard("L_K3");
        for (const auto& key : catalog_involution_keys()) {
            CAPTURE(key);
            const CatalogInvolution c = catalog_involution(key);
            const AdmissibleSublattice a = make_admissible(nikulin_extension(lk3, c.m0_basis, c.candidate));
            CHECK(a.t % 2 != 0);
            CHECK(a.t >= -19);
            CHECK(a.t <= 21);
        }
        const CatalogInvolution u = catalog_involution("U");
        CHECK(make_admissible(nikulin_extension(lk3, u.m0_basis, u.candidate)).t == -15);
        const CatalogInvolution w = catalog_involution("U(2)+E8(2)");
        CHECK(make_admissible(nikulin_extension(lk3, w.m0_basis, w.candidate)).t == 1);
    }
}

TEST_SUITE("isometry properties")
{
    TEST_CASE("Cartan-Dieudonne roundtrip on random reflection words")
    {
        auto g = oracle::rng(31);
        for (int trial = 0; trial < 100; ++trial) {
            const ReflectionSupply s = random_supply(g);
            const Word w = random_word(g, s);
            const auto f = cartan_dieudonne(w.g);
            CHECK(compose(s.lattice, f) == to_rational(w.g.matrix()));
            CHECK(f.vectors.size() <= 2 * s.lattice.rank());
            for (const auto& v : f.vectors) CHECK(inner(s.lattice, v, v) != 0);
        }
    }

    TEST_CASE("sn(s_v) = +1 iff v^2 < 0")
    {
        auto g = oracle::rng(32);
        int positive = 0, negative = 0;
        for (int trial = 0; trial < 100;) {
            const std::size_t n = static_cast<std::size_t>(oracle::uniform(g, 1, 4));
            IntMatrix m(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = oracle::uniform(g, -4, 4);
            if (oracle::laplace_det(m) == 0) continue;
            const Lattice l("R", m);
            IntVector v(n);
            for (auto& x : v) x = oracle::uniform(g, -3, 3);
            const Integer v2 = norm(l, v);
            if (v2 == 0) continue;
            ++trial;
            const RatMatrix s = reflection(l, v).matrix;
            const int sn = spinor_norm(l, cartan_dieudonne(l, s));
            CHECK((sn == 1) == (v2 < 0));
            (v2 < 0 ? negative : positive)++;
        }
        CHECK(positive > 10);
        CHECK(negative > 10);
    }

    TEST_CASE("spinor norm is multiplicative and factorization independent")
    {
        auto g = oracle::rng(33);
        for (int trial = 0; trial < 100; ++trial) {
            const ReflectionSupply s = random_supply(g);
            const Word a = random_word(g, s), b = random_word(g, s);
            CHECK(spinor_norm(a.g * b.g) == spinor_norm(a.g) * spinor_norm(b.g));
            CHECK(spinor_norm(s.lattice, a.factors) == spinor_norm(a.g));
        }
    }

    TEST_CASE("invariant lattices are primitive")
    {
        auto g = oracle::rng(34);
        for (int trial = 0; trial < 100; ++trial) {
            const ReflectionSupply s = random_supply(g);
            const Word w = random_word(g, s);
            const auto inv = invariant_lattice(w.g);
            if (inv.empty()) continue;
            CHECK(is_primitive_sublattice(s.lattice, inv));
            for (const auto& v : inv) CHECK(w.g.apply(v) == v);
        }
    }
}
