#pragma once

#include "ihskit/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ihskit {

/// Coordinates of a lattice element in the lattice's fixed basis.
using LatticeVector = IntVector;

/// Free Z-module of finite rank with an integral, symmetric, nondegenerate Gram matrix.
///
/// Immutable once constructed; the constructor enforces every invariant, so a
/// Lattice value is always valid.
class Lattice {
public:
    Lattice(std::string label, IntMatrix gram);

    const std::string& label() const { return label_; }
    std::size_t rank() const { return gram_.rows(); }
    const IntMatrix& gram() const { return gram_; }
    const Integer& determinant() const { return det_; }
    bool is_even() const { return even_; }

    /// Same Gram matrix (labels are not compared).
    bool same_form(const Lattice& other) const { return gram_ == other.gram_; }

private:
    std::string label_;
    IntMatrix gram_;
    Integer det_;
    bool even_ = true;
};

struct Signature {
    std::size_t positive = 0;
    std::size_t negative = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};

struct DiscriminantGroup {
    std::vector<Integer> elementary_divisors; // each > 1, each divides the next
    Integer order = 1;

    bool trivial() const { return elementary_divisors.empty(); }
};

/// Catalog names: U, E8, L_K3, L2, Z(n), Lambda_k (k = 0..9), Lambda_8U, U(2)+E8(2).
///
/// E8 is the negative of the Cartan matrix in Bourbaki node order
/// (chain 1-3-4-5-6-7-8, node 2 attached to node 4). L_K3 = E8 ⊕ E8 ⊕ U ⊕ U ⊕ U,
/// L2 = L_K3 ⊕ Ze with e² = -2 as the last basis vector. Lambda_k = I_2 ⊕ -I_{10-k};
/// Lambda_8U is the alternative U ⊕ U form for k = 8. A nonunit scale k yields L(k).
Lattice build_standard(const std::string& name, const Integer& scale = 1);

/// Every name accepted by build_standard, in catalog order.
std::vector<std::string> standard_names();

Lattice rescale(const Lattice& lattice, const Integer& k);

Integer inner(const Lattice& lattice, std::span<const Integer> x, std::span<const Integer> y);
Integer norm(const Lattice& lattice, std::span<const Integer> x);
Rational inner(const Lattice& lattice, std::span<const Rational> x, std::span<const Rational> y);

Lattice direct_sum(const Lattice& a, const Lattice& b);

/// Exact inertia via rational congruence diagonalization.
Signature signature(const Lattice& lattice);

/// Orthogonal basis of L ⊗ Q produced by Lagrange reduction, with the norms of its vectors.
struct Diagonalization {
    std::vector<RatVector> basis;
    std::vector<Rational> norms;
};
Diagonalization diagonalize(const RatMatrix& gram);

DiscriminantGroup discriminant_group(const Lattice& lattice);

struct TwoElementary {
    bool holds = false;
    std::size_t length = 0; // l(L) when holds
};
TwoElementary is_2_elementary(const Lattice& lattice);

/// Positive generator of the ideal (v, L).
Integer divisibility(const Lattice& lattice, std::span<const Integer> v);

/// True iff L / span(basis) is torsion free.
bool is_primitive_sublattice(const Lattice& lattice, const std::vector<LatticeVector>& basis);

bool is_hyperbolic(const Lattice& lattice);

/// Gram matrix of the sublattice spanned by `basis` (rows are ambient coordinates).
IntMatrix induced_gram(const Lattice& ambient, const std::vector<LatticeVector>& basis);

/// Basis of the orthogonal complement of span(basis) inside the ambient lattice.
std::vector<LatticeVector> orthogonal_complement(const Lattice& ambient, const std::vector<LatticeVector>& basis);

} // namespace ihskit
