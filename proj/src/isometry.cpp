#include "ihskit/isometry.hpp"

#include "ihskit/normal_forms.hpp"

#include <sstream>

namespace ihskit {

Isometry::Isometry(Lattice lattice, IntMatrix matrix) : lattice_(std::move(lattice)), matrix_(std::move(matrix))
{
    const std::size_t n = lattice_.rank();
    if (matrix_.rows() != n || matrix_.cols() != n)
        throw DomainError("isometry matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    if (matrix_.transposed() * lattice_.gram() * matrix_ != lattice_.gram())
        throw DomainError("matrix does not preserve the bilinear form of '" + lattice_.label() + "'");
}

Isometry Isometry::identity(const Lattice& lattice) { return {lattice, IntMatrix::identity(lattice.rank())}; }

LatticeVector Isometry::apply(std::span<const Integer> v) const
{
    if (v.size() != lattice_.rank()) throw DomainError("vector length does not match lattice rank");
    return matrix_ * IntVector(v.begin(), v.end());
}

Integer Isometry::trace() const
{
    Integer t = 0;
    for (std::size_t i = 0; i < matrix_.rows(); ++i) t += matrix_(i, i);
    return t;
}

bool Isometry::is_involution() const { return matrix_ * matrix_ == IntMatrix::identity(matrix_.rows()); }

Isometry operator*(const Isometry& a, const Isometry& b)
{
    if (!a.lattice_.same_form(b.lattice_)) throw DomainError("composing isometries of different lattices");
    return {a.lattice_, a.matrix_ * b.matrix_};
}

Reflection reflection(const Lattice& lattice, std::span<const Rational> l)
{
    const Rational ll = inner(lattice, l, l);
    if (ll == 0) throw DomainError("reflection in an isotropic vector");
    const std::size_t n = lattice.rank();
    // column j: b_j - 2 (b_j, l)/(l,l) l, and (b_j, l) = (G l)_j
    RatVector gl(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (lattice.gram()(j, k) != 0) gl[j] += Rational(lattice.gram()(j, k)) * l[k];
    Reflection r{RatMatrix::identity(n), true};
    for (std::size_t j = 0; j < n; ++j) {
        if (gl[j] == 0) continue;
        const Rational f = 2 * gl[j] / ll;
        for (std::size_t i = 0; i < n; ++i) r.matrix(i, j) -= f * l[i];
    }
    r.integral = is_integral(r.matrix);
    return r;
}

Reflection reflection(const Lattice& lattice, std::span<const Integer> l)
{
    RatVector q = to_rational(l);
    return reflection(lattice, std::span<const Rational>(q));
}

Isometry reflection_isometry(const Lattice& lattice, std::span<const Integer> l)
{
    Reflection r = reflection(lattice, l);
    if (!r.integral) throw DomainError("reflection is not integral on '" + lattice.label() + "'");
    return {lattice, to_integer(r.matrix)};
}

RatMatrix compose(const Lattice& lattice, const ReflectionFactorization& f)
{
    RatMatrix acc = RatMatrix::identity(lattice.rank());
    for (const auto& v : f.vectors) acc = acc * reflection(lattice, std::span<const Rational>(v)).matrix;
    return acc;
}

ReflectionFactorization cartan_dieudonne(const Lattice& lattice, const RatMatrix& g)
{
    const std::size_t n = lattice.rank();
    if (g.rows() != n || g.cols() != n) throw DomainError("isometry matrix has the wrong size");
    const RatMatrix gram = to_rational(lattice.gram());
    if (g.transposed() * gram * g != gram) throw DomainError("matrix is not an isometry over Q");

    const Diagonalization orth = diagonalize(gram);
    RatMatrix h = g;
    std::vector<RatVector> applied;
    auto reflect = [&](const RatVector& w) {
        h = reflection(lattice, std::span<const Rational>(w)).matrix * h;
        applied.push_back(w);
    };

    for (const RatVector& u : orth.basis) {
        RatVector y = h * u;
        if (y == u) continue;
        RatVector diff(n), sum(n);
        for (std::size_t i = 0; i < n; ++i) {
            diff[i] = y[i] - u[i];
            sum[i] = y[i] + u[i];
        }
        if (bilinear(gram, std::span<const Rational>(diff), std::span<const Rational>(diff)) != 0) {
            reflect(diff);
        } else {
            // (y - u)² = 0 forces (y + u)² = 4 u² ≠ 0; s_{y+u} y = -u, then s_u(-u) = u.
            reflect(sum);
            reflect(u);
        }
    }
    if (h != RatMatrix::identity(n)) throw std::logic_error("Cartan-Dieudonne walk did not reach the identity");

    // h_final = s_{w_m} … s_{w_1} g = id, hence g = s_{w_1} … s_{w_m}.
    ReflectionFactorization f;
    for (const auto& w : applied) f.vectors.push_back(to_rational(primitive_direction(w)));
    return f;
}

ReflectionFactorization cartan_dieudonne(const Isometry& g)
{
    return cartan_dieudonne(g.lattice(), to_rational(g.matrix()));
}

int spinor_norm(const Lattice& lattice, const ReflectionFactorization& f)
{
    int sign = 1;
    for (const auto& v : f.vectors) {
        const Rational vv = inner(lattice, std::span<const Rational>(v), std::span<const Rational>(v));
        if (vv == 0) throw DomainError("factorization contains an isotropic vector");
        if (vv > 0) sign = -sign; // -(v,v) < 0
    }
    return sign;
}

int spinor_norm(const Isometry& g) { return spinor_norm(g.lattice(), cartan_dieudonne(g)); }

bool in_O_plus(const Isometry& g) { return spinor_norm(g) == 1; }

std::vector<LatticeVector> invariant_lattice(const Isometry& g)
{
    return integer_kernel(g.matrix() - IntMatrix::identity(g.lattice().rank()));
}

namespace {

bool same_span(const std::vector<LatticeVector>& a, const std::vector<LatticeVector>& b)
{
    return canonical_basis(a) == canonical_basis(b);
}

std::string describe(const Signature& s)
{
    return "(" + std::to_string(s.positive) + "," + std::to_string(s.negative) + ")";
}

} // namespace

Isometry nikulin_extension(const Lattice& lk3, const std::vector<LatticeVector>& m0_basis, const RatMatrix& candidate)
{
    if (!lk3.same_form(build_standard("L_K3"))) throw DomainError("ambient lattice must be L_K3");
    if (m0_basis.empty()) throw DomainError("M0 basis is empty");
    if (!is_primitive_sublattice(lk3, m0_basis)) throw DomainError("M0 is not primitive in L_K3");
    const Lattice m0("M0", induced_gram(lk3, m0_basis));
    if (!is_hyperbolic(m0)) throw DomainError("M0 is not hyperbolic, signature " + describe(signature(m0)));
    if (!is_2_elementary(m0).holds) throw DomainError("M0 is not 2-elementary");

    if (!is_integral(candidate)) throw DomainError("candidate involution has non-integral glue entries");
    const Isometry iota(lk3, to_integer(candidate));
    if (!iota.is_involution()) throw DomainError("candidate is not an involution");
    for (const auto& v : m0_basis)
        if (iota.apply(v) != v) throw DomainError("candidate does not fix M0 pointwise");
    for (const auto& y : orthogonal_complement(lk3, m0_basis)) {
        IntVector minus_y = y;
        for (auto& x : minus_y) x = -x;
        if (iota.apply(y) != minus_y) throw DomainError("candidate is not -1 on the orthogonal complement of M0");
    }
    if (!same_span(invariant_lattice(iota), m0_basis)) throw DomainError("invariant lattice of the candidate is not M0");
    return iota;
}

namespace {

constexpr std::size_t kLk3Rank = 22;
constexpr std::size_t kFirstU = 16; // L_K3 = E8 (0..7) ⊕ E8 (8..15) ⊕ U (16,17) ⊕ U (18,19) ⊕ U (20,21)

LatticeVector unit(std::size_t i)
{
    LatticeVector v(kLk3Rank, 0);
    v[i] = 1;
    return v;
}

LatticeVector sum_of(std::initializer_list<std::size_t> idx)
{
    LatticeVector v(kLk3Rank, 0);
    for (auto i : idx) v[i] += 1;
    return v;
}

void set_swap(RatMatrix& m, std::size_t i, std::size_t j)
{
    m(i, i) = 0;
    m(j, j) = 0;
    m(i, j) = 1;
    m(j, i) = 1;
}

} // namespace

std::vector<std::string> catalog_involution_keys() { return {"Zh", "U", "U(2)+E8(2)"}; }

CatalogInvolution catalog_involution(const std::string& key)
{
    RatMatrix m = RatMatrix::identity(kLk3Rank);
    for (std::size_t i = 0; i < kLk3Rank; ++i) m(i, i) = -1;

    if (key == "Zh") {
        set_swap(m, kFirstU, kFirstU + 1);
        return {key, "h = f + g in the first U; swap f, g there and -1 elsewhere", {sum_of({kFirstU, kFirstU + 1})}, m};
    }
    if (key == "U") {
        m(kFirstU, kFirstU) = 1;
        m(kFirstU + 1, kFirstU + 1) = 1;
        return {key, "identity on the first U and -1 elsewhere", {unit(kFirstU), unit(kFirstU + 1)}, m};
    }
    if (key == "U(2)+E8(2)") {
        std::vector<LatticeVector> basis;
        for (std::size_t i = 0; i < 8; ++i) {
            set_swap(m, i, i + 8);
            basis.push_back(sum_of({i, i + 8}));
        }
        set_swap(m, kFirstU, kFirstU + 2);
        set_swap(m, kFirstU + 1, kFirstU + 3);
        basis.push_back(sum_of({kFirstU, kFirstU + 2}));
        basis.push_back(sum_of({kFirstU + 1, kFirstU + 3}));
        return {key, "swap the two E8 and the first two U factors, -1 on the third U", basis, m};
    }
    throw InputError("unknown catalog involution '" + key + "'");
}

AdmissibilityError::AdmissibilityError(std::vector<std::string> violations)
    : DomainError([&] {
          std::ostringstream os;
          os << "not an admissible sublattice:";
          for (const auto& v : violations) os << " [" << v << "]";
          return os.str();
      }()),
      violations_(std::move(violations))
{
}

AdmissibleSublattice validate_admissible(const Isometry& iota, const std::optional<std::vector<LatticeVector>>& expected_m)
{
    std::vector<std::string> violations;
    const Lattice& l2 = iota.lattice();
    if (!l2.same_form(build_standard("L2"))) violations.push_back("ambient lattice is not L2");
    if (!iota.is_involution()) violations.push_back("iota is not an involution");

    std::vector<LatticeVector> m = invariant_lattice(iota);
    if (expected_m && !same_span(saturate(*expected_m, l2.rank()), m))
        violations.push_back("invariant lattice differs from the primitive span of the given M basis");
    if (m.empty()) {
        violations.push_back("invariant lattice is zero, hence not hyperbolic");
    } else {
        const Lattice ml("M", induced_gram(l2, m));
        if (!is_hyperbolic(ml)) violations.push_back("invariant lattice is not hyperbolic, signature " + describe(signature(ml)));
    }
    if (spinor_norm(iota) != 1) violations.push_back("real spinor norm is -1, so iota is not in O+(L2)");

    const Integer trace = iota.trace();
    const long t = trace.get_si() + 2;
    if (t % 2 == 0 || t < -19 || t > 21)
        violations.push_back("t = Tr(iota) + 2 = " + std::to_string(t) + " is not an odd integer in [-19, 21]");

    if (!violations.empty()) throw AdmissibilityError(std::move(violations));
    return {l2, std::move(m), iota, static_cast<int>(t)};
}

AdmissibleSublattice make_admissible(const Isometry& iota_m0)
{
    if (!iota_m0.lattice().same_form(build_standard("L_K3"))) throw DomainError("iota_M0 must act on L_K3");
    IntMatrix fix_e(1, 1);
    fix_e(0, 0) = 1;
    const Isometry iota(build_standard("L2"), block_diagonal(iota_m0.matrix(), fix_e));
    return validate_admissible(iota);
}

} // namespace ihskit
