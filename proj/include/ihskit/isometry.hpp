#pragma once

#include "ihskit/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ihskit {

/// Integral isometry of a lattice. Columns of the matrix are the images of the basis vectors.
class Isometry {
public:
    /// Throws DomainError unless matrixᵀ·gram·matrix == gram.
    Isometry(Lattice lattice, IntMatrix matrix);

    static Isometry identity(const Lattice& lattice);

    const Lattice& lattice() const { return lattice_; }
    const IntMatrix& matrix() const { return matrix_; }

    LatticeVector apply(std::span<const Integer> v) const;
    Integer trace() const;
    bool is_involution() const;

    /// (a * b)(x) = a(b(x)).
    friend Isometry operator*(const Isometry& a, const Isometry& b);
    friend bool operator==(const Isometry& a, const Isometry& b) { return a.matrix_ == b.matrix_; }

private:
    Lattice lattice_;
    IntMatrix matrix_;
};

struct Reflection {
    RatMatrix matrix;
    bool integral = false;
};

/// s_l(x) = x - 2(x,l)/(l,l) l over the rationals.
Reflection reflection(const Lattice& lattice, std::span<const Rational> l);
Reflection reflection(const Lattice& lattice, std::span<const Integer> l);

/// Integral reflection as an Isometry; throws if s_l is not integral.
Isometry reflection_isometry(const Lattice& lattice, std::span<const Integer> l);

/// g = s_{v_1} ∘ … ∘ s_{v_m}.
struct ReflectionFactorization {
    std::vector<RatVector> vectors;
};

RatMatrix compose(const Lattice& lattice, const ReflectionFactorization& f);

/// Constructive Cartan–Dieudonné factorization over Q with at most 2·rank reflections.
///
/// Walks an orthogonal basis u_1..u_n of L ⊗ Q. If the current map h moves u_k,
/// one reflection in h(u_k) - u_k sends it home; when that difference is isotropic,
/// h(u_k) + u_k is anisotropic and s_{u_k}∘s_{h(u_k)+u_k} does it with two. Each
/// reflection fixes u_1..u_{k-1}, so after the walk h is the identity.
/// Vectors are returned scaled to primitive integer directions.
ReflectionFactorization cartan_dieudonne(const Lattice& lattice, const RatMatrix& g);
ReflectionFactorization cartan_dieudonne(const Isometry& g);

/// Sign of ∏ -(v_i, v_i).
int spinor_norm(const Lattice& lattice, const ReflectionFactorization& f);
int spinor_norm(const Isometry& g);
bool in_O_plus(const Isometry& g);

/// Primitive basis (HNF rows) of {x : g(x) = x}; empty when only 0 is fixed.
std::vector<LatticeVector> invariant_lattice(const Isometry& g);

/// Validates a candidate involution of L_K3 that is +1 on M0 and -1 on M0^⊥.
///
/// The glue is not solved for; the candidate is checked (M0 primitive, hyperbolic,
/// 2-elementary; candidate integral, isometric, involutive, with invariant lattice M0).
Isometry nikulin_extension(const Lattice& lk3, const std::vector<LatticeVector>& m0_basis, const RatMatrix& candidate);

/// Explicit involutions of L_K3 shipped with the catalog.
struct CatalogInvolution {
    std::string key;
    std::string description;
    std::vector<LatticeVector> m0_basis;
    RatMatrix candidate;
};

/// Keys: "Zh" (h = f+g in the first U), "U" (first U factor), "U(2)+E8(2)".
CatalogInvolution catalog_involution(const std::string& key);
std::vector<std::string> catalog_involution_keys();

/// (M, ι_M) inside L2 with the data every downstream computation needs.
struct AdmissibleSublattice {
    Lattice ambient;
    std::vector<LatticeVector> m_basis;
    Isometry iota;
    int t = 0;
};

/// Raised when a candidate fails one or more admissibility conditions.
class AdmissibilityError : public DomainError {
public:
    explicit AdmissibilityError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Checks every admissibility invariant for an involution of L2 and reports all failures at once.
/// When expected_m is given, the invariant lattice must equal its primitive span.
AdmissibleSublattice validate_admissible(const Isometry& iota,
                                         const std::optional<std::vector<LatticeVector>>& expected_m = std::nullopt);

/// ι_M(x0 + a e) = ι_M0(x0) + a e on L2 = L_K3 ⊕ Ze, then validated.
AdmissibleSublattice make_admissible(const Isometry& iota_m0);

} // namespace ihskit
