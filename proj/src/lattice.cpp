#include "ihskit/lattice.hpp"

#include "ihskit/normal_forms.hpp"

#include <regex>

namespace ihskit {

Lattice::Lattice(std::string label, IntMatrix gram) : label_(std::move(label)), gram_(std::move(gram))
{
    if (gram_.rows() == 0) throw DomainError("lattice '" + label_ + "': rank 0 lattices are not allowed");
    if (!gram_.square()) throw DomainError("lattice '" + label_ + "': Gram matrix is not square");
    if (!gram_.is_symmetric()) throw DomainError("lattice '" + label_ + "': Gram matrix is not symmetric");
    det_ = ihskit::determinant(gram_);
    if (det_ == 0) throw DomainError("lattice '" + label_ + "': Gram matrix is degenerate");
    for (std::size_t i = 0; i < gram_.rows(); ++i)
        if (!mpz_even_p(gram_(i, i).get_mpz_t())) even_ = false;
}

namespace {

IntMatrix e8_gram()
{
    // Bourbaki labels 1..8 mapped to indices 0..7.
    static constexpr int edges[][2] = {{1, 3}, {3, 4}, {4, 2}, {4, 5}, {5, 6}, {6, 7}, {7, 8}};
    IntMatrix g(8, 8);
    for (std::size_t i = 0; i < 8; ++i) g(i, i) = -2;
    for (const auto& e : edges) {
        g(e[0] - 1, e[1] - 1) = 1;
        g(e[1] - 1, e[0] - 1) = 1;
    }
    return g;
}

IntMatrix u_gram()
{
    IntMatrix g(2, 2);
    g(0, 1) = 1;
    g(1, 0) = 1;
    return g;
}

IntMatrix diagonal_gram(std::size_t plus, std::size_t minus)
{
    IntMatrix g(plus + minus, plus + minus);
    for (std::size_t i = 0; i < plus + minus; ++i) g(i, i) = i < plus ? 1 : -1;
    return g;
}

IntMatrix scaled(IntMatrix g, const Integer& k)
{
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= k;
    return g;
}

IntMatrix lk3_gram()
{
    IntMatrix g = block_diagonal(e8_gram(), e8_gram());
    for (int i = 0; i < 3; ++i) g = block_diagonal(g, u_gram());
    return g;
}

IntMatrix standard_gram(const std::string& name)
{
    if (name == "U") return u_gram();
    if (name == "E8") return e8_gram();
    if (name == "L_K3") return lk3_gram();
    if (name == "L2") {
        IntMatrix e(1, 1);
        e(0, 0) = -2;
        return block_diagonal(lk3_gram(), e);
    }
    if (name == "U(2)+E8(2)") return block_diagonal(scaled(u_gram(), 2), scaled(e8_gram(), 2));
    if (name == "Lambda_8U") return block_diagonal(u_gram(), u_gram());

    static const std::regex rank_one(R"(Z\((-?[0-9]+)\))");
    static const std::regex lambda(R"(Lambda_([0-9]))");
    std::smatch m;
    if (std::regex_match(name, m, rank_one)) {
        Integer n(m[1].str());
        if (n == 0) throw DomainError("Z(0) is degenerate");
        IntMatrix g(1, 1);
        g(0, 0) = n;
        return g;
    }
    if (std::regex_match(name, m, lambda)) {
        int k = std::stoi(m[1].str());
        return diagonal_gram(2, static_cast<std::size_t>(10 - k));
    }
    throw InputError("unknown catalog lattice '" + name + "'");
}

} // namespace

std::vector<std::string> standard_names()
{
    std::vector<std::string> names = {"U", "E8", "L_K3", "L2", "U(2)+E8(2)"};
    for (int k = 0; k <= 9; ++k) names.push_back("Lambda_" + std::to_string(k));
    names.push_back("Lambda_8U");
    return names;
}

Lattice build_standard(const std::string& name, const Integer& scale)
{
    if (scale == 0) throw DomainError("scale must be nonzero");
    IntMatrix g = standard_gram(name);
    if (scale == 1) return Lattice(name, std::move(g));
    return Lattice(name + "(" + scale.get_str() + ")", scaled(std::move(g), scale));
}

Lattice rescale(const Lattice& lattice, const Integer& k)
{
    if (k == 0) throw DomainError("scale must be nonzero");
    return Lattice(lattice.label() + "(" + k.get_str() + ")", scaled(lattice.gram(), k));
}

Integer inner(const Lattice& lattice, std::span<const Integer> x, std::span<const Integer> y)
{
    if (x.size() != lattice.rank() || y.size() != lattice.rank())
        throw DomainError("vector length does not match lattice rank " + std::to_string(lattice.rank()));
    return bilinear(lattice.gram(), x, y);
}

Integer norm(const Lattice& lattice, std::span<const Integer> x) { return inner(lattice, x, x); }

Rational inner(const Lattice& lattice, std::span<const Rational> x, std::span<const Rational> y)
{
    if (x.size() != lattice.rank() || y.size() != lattice.rank())
        throw DomainError("vector length does not match lattice rank " + std::to_string(lattice.rank()));
    const IntMatrix& g = lattice.gram();
    Rational acc = 0;
    for (std::size_t i = 0; i < g.rows(); ++i) {
        if (x[i] == 0) continue;
        Rational row = 0;
        for (std::size_t j = 0; j < g.cols(); ++j)
            if (g(i, j) != 0) row += Rational(g(i, j)) * y[j];
        acc += x[i] * row;
    }
    return acc;
}

Lattice direct_sum(const Lattice& a, const Lattice& b)
{
    return Lattice(a.label() + "+" + b.label(), block_diagonal(a.gram(), b.gram()));
}

Diagonalization diagonalize(const RatMatrix& gram)
{
    const std::size_t n = gram.rows();
    // Working basis (rows, ambient coordinates) and its Gram matrix; eliminated entries are dropped.
    std::vector<RatVector> basis(n, RatVector(n));
    for (std::size_t i = 0; i < n; ++i) basis[i][i] = 1;
    RatMatrix a = gram;
    std::vector<bool> alive(n, true);
    Diagonalization out;

    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pivot = n;
        for (std::size_t i = 0; i < n && pivot == n; ++i)
            if (alive[i] && a(i, i) != 0) pivot = i;
        if (pivot == n) {
            // All remaining diagonal entries vanish: x_i -> x_i + x_j makes (i,i) = 2 a(i,j).
            for (std::size_t i = 0; i < n && pivot == n; ++i) {
                if (!alive[i]) continue;
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (!alive[j] || a(i, j) == 0) continue;
                    for (std::size_t k = 0; k < n; ++k) basis[i][k] += basis[j][k];
                    for (std::size_t k = 0; k < n; ++k) a(i, k) += a(j, k);
                    for (std::size_t k = 0; k < n; ++k) a(k, i) += a(k, j);
                    pivot = i;
                    break;
                }
            }
        }
        if (pivot == n) throw DomainError("degenerate bilinear form");

        // Schur complement of the pivot; the surviving basis vectors become orthogonal to it.
        const Rational d = a(pivot, pivot);
        const RatVector col = a.column(pivot);
        for (std::size_t k = 0; k < n; ++k) {
            if (!alive[k] || k == pivot || col[k] == 0) continue;
            const Rational f = col[k] / d;
            for (std::size_t c = 0; c < n; ++c) basis[k][c] -= f * basis[pivot][c];
            for (std::size_t c = 0; c < n; ++c)
                if (alive[c] && c != pivot) a(k, c) -= f * col[c];
        }
        out.basis.push_back(basis[pivot]);
        out.norms.push_back(d);
        alive[pivot] = false;
    }
    return out;
}

Signature signature(const Lattice& lattice)
{
    Diagonalization d = diagonalize(to_rational(lattice.gram()));
    Signature s;
    for (const auto& x : d.norms) (x > 0 ? s.positive : s.negative)++;
    return s;
}

DiscriminantGroup discriminant_group(const Lattice& lattice)
{
    DiscriminantGroup group;
    for (const auto& d : smith_diagonal(lattice.gram())) {
        if (d > 1) {
            group.elementary_divisors.push_back(d);
            group.order *= d;
        }
    }
    return group;
}

TwoElementary is_2_elementary(const Lattice& lattice)
{
    DiscriminantGroup group = discriminant_group(lattice);
    for (const auto& d : group.elementary_divisors)
        if (d != 2) return {};
    return {true, group.elementary_divisors.size()};
}

Integer divisibility(const Lattice& lattice, std::span<const Integer> v)
{
    if (v.size() != lattice.rank()) throw DomainError("vector length does not match lattice rank");
    if (is_zero(v)) throw DomainError("divisibility of the zero vector is undefined");
    IntVector pairings = lattice.gram() * IntVector(v.begin(), v.end());
    return content(pairings);
}

bool is_primitive_sublattice(const Lattice& lattice, const std::vector<LatticeVector>& basis)
{
    if (basis.empty()) return true;
    for (const auto& v : basis)
        if (v.size() != lattice.rank()) throw DomainError("basis vector length does not match lattice rank");
    IntMatrix coords = IntMatrix::from_rows(basis);
    if (rank(coords) != basis.size()) throw DomainError("sublattice basis is linearly dependent");
    for (const auto& d : smith_diagonal(coords))
        if (d != 1) return false;
    return true;
}

bool is_hyperbolic(const Lattice& lattice)
{
    Signature s = signature(lattice);
    return s.positive == 1 && s.negative == lattice.rank() - 1;
}

IntMatrix induced_gram(const Lattice& ambient, const std::vector<LatticeVector>& basis)
{
    IntMatrix g(basis.size(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) {
            g(i, j) = inner(ambient, basis[i], basis[j]);
            g(j, i) = g(i, j);
        }
    return g;
}

std::vector<LatticeVector> orthogonal_complement(const Lattice& ambient, const std::vector<LatticeVector>& basis)
{
    if (basis.empty()) return IntMatrix::identity(ambient.rank()).to_rows();
    IntMatrix pairing = IntMatrix::from_rows(basis) * ambient.gram();
    return integer_kernel(pairing);
}

} // namespace ihskit
