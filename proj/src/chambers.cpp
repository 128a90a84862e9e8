#include "ihskit/chambers.hpp"

#include "ihskit/normal_forms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace ihskit {

EmbeddedSublattice::EmbeddedSublattice(Lattice ambient, std::vector<LatticeVector> basis, std::string label)
    : ambient_(std::move(ambient)), basis_(std::move(basis)), lattice_([&] {
          if (basis_.empty()) throw DomainError("sublattice basis is empty");
          if (basis_.size() > ambient_.rank()) throw DomainError("sublattice rank exceeds ambient rank");
          for (const auto& v : basis_)
              if (v.size() != ambient_.rank()) throw DomainError("basis vector length does not match ambient rank");
          if (ihskit::rank(IntMatrix::from_rows(basis_)) != basis_.size()) throw DomainError("sublattice basis is linearly dependent");
          return Lattice(label, induced_gram(ambient_, basis_));
      }())
{
}

EmbeddedSublattice EmbeddedSublattice::self(const Lattice& lattice)
{
    return {lattice, IntMatrix::identity(lattice.rank()).to_rows(), lattice.label()};
}

LatticeVector EmbeddedSublattice::to_ambient(std::span<const Integer> coords) const
{
    if (coords.size() != basis_.size()) throw DomainError("coordinate length does not match sublattice rank");
    LatticeVector v(ambient_.rank(), 0);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] += coords[i] * basis_[i][j];
    }
    return v;
}

Integer EmbeddedSublattice::ambient_divisibility(std::span<const Integer> coords) const
{
    return divisibility(ambient_, to_ambient(coords));
}

bool is_wall_vector(const EmbeddedSublattice& m, std::span<const Integer> coords)
{
    if (is_zero(coords)) return false;
    const Integer n = norm(m.lattice(), coords);
    if (n == -2) return true;
    return n == -10 && m.ambient_divisibility(coords) == 2;
}

namespace {

void sort_delta(std::vector<DeltaVector>& v)
{
    std::sort(v.begin(), v.end(), [](const DeltaVector& a, const DeltaVector& b) { return a.coords < b.coords; });
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

void keep_if_wall(const EmbeddedSublattice& m, const LatticeVector& x, std::vector<DeltaVector>& out)
{
    if (!is_wall_vector(m, x)) return;
    out.push_back({x, static_cast<int>(norm(m.lattice(), x).get_si())});
}

/// All positive divisors of |n| (n ≠ 0), ascending.
std::vector<Integer> positive_divisors(const Integer& n)
{
    Integer a = abs(n);
    std::vector<Integer> small, large;
    for (Integer d = 1; d * d <= a; ++d) {
        if (!mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t())) continue;
        small.push_back(d);
        Integer q = a / d;
        if (q != d) large.push_back(q);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

/// Integer solutions of a x² + 2 b x y + c y² = n with b² - ac = s² > 0.
std::vector<LatticeVector> solve_split_binary(const Integer& a, const Integer& b, const Integer& c, const Integer& s,
                                              const Integer& n)
{
    std::vector<LatticeVector> sols;
    auto accept = [&](const Integer& x, const Integer& y) {
        if (a * x * x + 2 * b * x * y + c * y * y == n) sols.push_back({x, y});
    };
    if (a != 0) {
        // a·Q = (a x + (b - s) y)(a x + (b + s) y) = u v
        const Integer an = a * n;
        for (const Integer& d : positive_divisors(an)) {
            for (int sign : {1, -1}) {
                const Integer u = sign * d;
                const Integer v = an / u;
                const Integer twos_y = v - u;
                if (!mpz_divisible_p(twos_y.get_mpz_t(), Integer(2 * s).get_mpz_t())) continue;
                const Integer y = twos_y / (2 * s);
                const Integer ax = u - (b - s) * y;
                if (!mpz_divisible_p(ax.get_mpz_t(), a.get_mpz_t())) continue;
                accept(Integer(ax / a), y);
            }
        }
    } else {
        // Q = y (2 b x + c y)
        for (const Integer& d : positive_divisors(n)) {
            for (int sign : {1, -1}) {
                const Integer y = sign * d;
                const Integer rest = n / y - c * y;
                if (!mpz_divisible_p(rest.get_mpz_t(), Integer(2 * b).get_mpz_t())) continue;
                accept(Integer(rest / (2 * b)), y);
            }
        }
    }
    return sols;
}

} // namespace

DeltaSet enumerate_delta_box(const EmbeddedSublattice& m, long bound)
{
    if (bound <= 0) throw DomainError("box bound must be positive");
    const std::size_t r = m.rank();
    const double points = std::pow(2.0 * static_cast<double>(bound) + 1.0, static_cast<double>(r));
    if (points > 2e8) throw DomainError("box of half-width " + std::to_string(bound) + " in rank " + std::to_string(r) +
                                        " is too large to enumerate");
    DeltaSet out;
    out.bound = bound;
    LatticeVector x(r, -bound);
    while (true) {
        keep_if_wall(m, x, out.vectors);
        std::size_t i = 0;
        while (i < r && x[i] == bound) x[i++] = -bound;
        if (i == r) break;
        x[i] += 1;
    }
    sort_delta(out.vectors);
    return out;
}

DeltaSet enumerate_delta(const EmbeddedSublattice& m, long bound)
{
    const IntMatrix& g = m.lattice().gram();
    if (m.rank() == 1) {
        DeltaSet out;
        out.exact = true;
        for (int n : {-2, -10}) {
            if (!mpz_divisible_p(Integer(n).get_mpz_t(), g(0, 0).get_mpz_t())) continue;
            const Integer sq = Integer(n) / g(0, 0);
            if (sq <= 0 || !mpz_perfect_square_p(sq.get_mpz_t())) continue;
            const Integer root = sqrt(sq);
            keep_if_wall(m, {root}, out.vectors);
            keep_if_wall(m, {Integer(-root)}, out.vectors);
        }
        sort_delta(out.vectors);
        return out;
    }
    if (m.rank() == 2) {
        const Integer disc = g(0, 1) * g(0, 1) - g(0, 0) * g(1, 1);
        if (disc > 0 && mpz_perfect_square_p(disc.get_mpz_t())) {
            const Integer s = sqrt(disc);
            DeltaSet out;
            out.exact = true;
            for (int n : {-2, -10})
                for (const auto& x : solve_split_binary(g(0, 0), g(0, 1), g(1, 1), s, n)) keep_if_wall(m, x, out.vectors);
            sort_delta(out.vectors);
            return out;
        }
    }
    return enumerate_delta_box(m, bound);
}

DeltaCase classify_delta(const EmbeddedSublattice& m, std::span<const Integer> delta)
{
    const std::size_t k = m.rank();
    if (k < 2) throw DomainError("M must be M0 ⊕ Ze with M0 nonzero");
    if (!is_wall_vector(m, delta)) throw DomainError("vector is not in Δ(M)");
    const IntMatrix& g = m.lattice().gram();
    const std::size_t e = k - 1;
    if (g(e, e) != -2) throw DomainError("last basis vector of M must satisfy e² = -2");
    for (std::size_t i = 0; i < e; ++i)
        if (g(i, e) != 0) throw DomainError("last basis vector of M must be orthogonal to M0");

    LatticeVector d(delta.begin(), delta.end());
    d[e] = 0;
    const Integer d2 = norm(m.lattice(), d);
    if (d2 >= 0) return DeltaCase::nonnegative;
    if (d2 == -2) return DeltaCase::root;
    bool even = true;
    for (const auto& x : d)
        if (!mpz_even_p(x.get_mpz_t())) even = false;
    if (even) {
        LatticeVector half = d;
        for (auto& x : half) x /= 2;
        if (norm(m.lattice(), half) == -2) return DeltaCase::half_root;
    }
    return DeltaCase::none;
}

namespace {

Integer cross(std::span<const Integer> a, std::span<const Integer> b) { return a[0] * b[1] - a[1] * b[0]; }

LatticeVector make_primitive(LatticeVector v)
{
    const Integer c = content(v);
    for (auto& x : v) x /= c;
    return v;
}

LatticeVector negated(LatticeVector v)
{
    for (auto& x : v) x = -x;
    return v;
}

/// δ up to sign, normalized so the first nonzero coordinate is positive.
LatticeVector canonical_sign(LatticeVector v)
{
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0) v = negated(std::move(v));
        break;
    }
    return v;
}

/// The two primitive isotropic directions of a rank-2 form with square discriminant.
std::vector<LatticeVector> isotropic_directions(const IntMatrix& g)
{
    const Integer a = g(0, 0), b = g(0, 1), c = g(1, 1);
    const Integer disc = b * b - a * c;
    if (disc <= 0 || !mpz_perfect_square_p(disc.get_mpz_t()))
        throw DomainError("isotropic rays are irrational; exact chamber decomposition needs a square discriminant");
    const Integer s = sqrt(disc);
    if (a == 0) return {make_primitive({1, 0}), make_primitive({Integer(-c), Integer(2 * b)})};
    // a x + (b ∓ s) y = 0
    return {make_primitive({Integer(s - b), a}), make_primitive({Integer(-(b + s)), a})};
}

} // namespace

LatticeVector Chamber2::interior_sample() const
{
    return {low.direction[0] + high.direction[0], low.direction[1] + high.direction[1]};
}

std::vector<Chamber2> chambers_rank2(const Lattice& m, const DeltaSet& delta, std::span<const Integer> anchor)
{
    if (m.rank() != 2) throw DomainError("chamber decomposition is implemented for rank 2 only");
    if (!delta.exact) throw DomainError("refusing to decompose with a Δ(M) that is only complete inside a bounded box");
    if (!is_hyperbolic(m)) throw DomainError("M must have signature (1,1)");
    if (anchor.size() != 2) throw DomainError("anchor must have 2 coordinates");
    if (norm(m, anchor) <= 0) throw DomainError("anchor must have positive norm");

    auto in_component = [&](std::span<const Integer> x) { return inner(m, x, anchor) > 0; };

    std::vector<LatticeVector> iso;
    for (auto r : isotropic_directions(m.gram())) iso.push_back(in_component(r) ? r : negated(r));
    if (cross(iso[0], iso[1]) < 0) std::swap(iso[0], iso[1]);

    std::vector<BoundaryRay> walls;
    for (const auto& dv : delta.vectors) {
        const LatticeVector d = canonical_sign(dv.coords);
        const IntVector p = m.gram() * d;
        LatticeVector w = make_primitive({Integer(-p[1]), p[0]});
        if (norm(m, w) <= 0) continue; // δ^⊥ misses the positive cone
        if (!in_component(w)) w = negated(std::move(w));
        const bool seen = std::any_of(walls.begin(), walls.end(),
                                      [&](const BoundaryRay& r) { return r.direction == w; });
        if (!seen) walls.push_back({w, d});
    }
    std::sort(walls.begin(), walls.end(),
              [](const BoundaryRay& x, const BoundaryRay& y) { return cross(x.direction, y.direction) > 0; });

    std::vector<BoundaryRay> rays;
    rays.push_back({iso[0], std::nullopt});
    rays.insert(rays.end(), walls.begin(), walls.end());
    rays.push_back({iso[1], std::nullopt});

    std::vector<Chamber2> chambers;
    for (std::size_t i = 0; i + 1 < rays.size(); ++i) chambers.push_back({rays[i], rays[i + 1]});

    for (const auto& c : chambers) {
        const LatticeVector s = c.interior_sample();
        if (norm(m, s) <= 0) throw std::logic_error("chamber sample outside the positive cone");
        for (const auto& dv : delta.vectors)
            if (inner(m, s, dv.coords) == 0) throw std::logic_error("chamber sample lies on a wall");
    }
    return chambers;
}

bool is_natural(const std::vector<LatticeVector>& m0_basis, const Chamber2& chamber)
{
    if (m0_basis.size() != 1) throw DomainError("M0 must be a hyperplane (a line) in the rank-2 lattice M");
    const LatticeVector& h = m0_basis.front();
    if (h.size() != 2) throw DomainError("M0 generator must have 2 coordinates");
    if (is_zero(h)) throw DomainError("M0 generator is zero");
    return cross(chamber.low.direction, h) == 0 || cross(chamber.high.direction, h) == 0;
}

std::optional<std::size_t> locate_chamber(const std::vector<Chamber2>& chambers, std::span<const Integer> x)
{
    for (std::size_t i = 0; i < chambers.size(); ++i)
        if (cross(chambers[i].low.direction, x) > 0 && cross(x, chambers[i].high.direction) > 0) return i;
    return std::nullopt;
}

std::vector<std::vector<std::size_t>> chamber_orbits(const Lattice& m, const std::vector<Chamber2>& chambers,
                                                     const std::vector<Isometry>& generators)
{
    std::set<LatticeVector> wall_lines;
    for (const auto& c : chambers)
        for (const auto* r : {&c.low, &c.high})
            if (!r->isotropic()) wall_lines.insert(r->direction);

    std::vector<std::size_t> parent(chambers.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };

    for (const auto& g : generators) {
        if (!g.lattice().same_form(m)) throw DomainError("generator acts on a different lattice");
        for (const auto& line : wall_lines) {
            LatticeVector image = g.apply(line);
            if (!wall_lines.count(image) && !wall_lines.count(negated(image)))
                throw DomainError("generator does not preserve the wall set Δ(M)");
        }
        for (std::size_t i = 0; i < chambers.size(); ++i) {
            const LatticeVector s = chambers[i].interior_sample();
            const LatticeVector gs = g.apply(s);
            if (inner(m, s, gs) <= 0) throw DomainError("generator exchanges the two components of the positive cone");
            auto j = locate_chamber(chambers, gs);
            if (!j) throw DomainError("image of a chamber is not a chamber");
            std::size_t a = find(i), b = find(*j);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }

    std::vector<std::vector<std::size_t>> orbits;
    std::vector<long> slot(chambers.size(), -1);
    for (std::size_t i = 0; i < chambers.size(); ++i) {
        std::size_t root = find(i);
        if (slot[root] < 0) {
            slot[root] = static_cast<long>(orbits.size());
            orbits.emplace_back();
        }
        orbits[static_cast<std::size_t>(slot[root])].push_back(i);
    }
    return orbits;
}

} // namespace ihskit
