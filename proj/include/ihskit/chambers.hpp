#pragma once

#include "ihskit/isometry.hpp"
#include "ihskit/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ihskit {

/// A sublattice M given by basis vectors in ambient coordinates, with its induced form.
class EmbeddedSublattice {
public:
    /// Throws DomainError on a dependent basis, wrong vector length, or degenerate induced form.
    EmbeddedSublattice(Lattice ambient, std::vector<LatticeVector> basis, std::string label = "M");

    /// M as a sublattice of itself (divisibility then refers to M).
    static EmbeddedSublattice self(const Lattice& lattice);

    const Lattice& ambient() const { return ambient_; }
    const std::vector<LatticeVector>& basis() const { return basis_; }
    const Lattice& lattice() const { return lattice_; }
    std::size_t rank() const { return basis_.size(); }

    /// Ambient coordinates of the element with the given M-coordinates.
    LatticeVector to_ambient(std::span<const Integer> coords) const;

    /// Generator of (v, ambient) for v given in M-coordinates.
    Integer ambient_divisibility(std::span<const Integer> coords) const;

private:
    Lattice ambient_;
    std::vector<LatticeVector> basis_;
    Lattice lattice_;
};

struct DeltaVector {
    LatticeVector coords; // in the M basis
    int norm = 0;         // -2 or -10
    friend bool operator==(const DeltaVector&, const DeltaVector&) = default;
};

/// Δ(M) with an honest completeness certificate.
struct DeltaSet {
    std::vector<DeltaVector> vectors; // sorted lexicographically by coordinates
    bool exact = false;
    long bound = 0; // box half-width when not exact
};

/// δ² = -2, or δ² = -10 with (δ, ambient) = 2Z.
bool is_wall_vector(const EmbeddedSublattice& m, std::span<const Integer> coords);

/// Exact for rank 1 and for rank-2 forms of square discriminant; a bounded box search otherwise.
DeltaSet enumerate_delta(const EmbeddedSublattice& m, long bound = 50);

/// Search of the box |x_i| <= bound regardless of rank or form.
DeltaSet enumerate_delta_box(const EmbeddedSublattice& m, long bound);

enum class DeltaCase {
    none = 0,            // no case applies: the hypotheses on M0 are violated
    nonnegative = 1,     // d² >= 0
    root = 2,            // d ∈ Δ(M0), i.e. d² = -2
    half_root = 3,       // d/2 ∈ Δ(M0)
};

/// For M = M0 ⊕ Ze with e the last basis vector of M, splits δ = d + a e and
/// returns the first applicable case. Throws if δ ∉ Δ(M).
DeltaCase classify_delta(const EmbeddedSublattice& m, std::span<const Integer> delta);

struct BoundaryRay {
    LatticeVector direction;            // primitive, inside the closure of the chosen component
    std::optional<LatticeVector> wall;  // δ with direction ∈ δ^⊥; empty for an isotropic ray
    bool isotropic() const { return !wall.has_value(); }
};

struct Chamber2 {
    BoundaryRay low;
    BoundaryRay high;
    LatticeVector interior_sample() const;
};

/// Chambers of the positive-cone component containing `anchor`, in angular order
/// from one isotropic boundary ray to the other.
std::vector<Chamber2> chambers_rank2(const Lattice& m, const DeltaSet& delta, std::span<const Integer> anchor);

/// True iff one boundary ray of the chamber spans M0 ⊗ R (M0 is a line in M).
bool is_natural(const std::vector<LatticeVector>& m0_basis, const Chamber2& chamber);

/// Index of the chamber whose interior contains x, if any.
std::optional<std::size_t> locate_chamber(const std::vector<Chamber2>& chambers, std::span<const Integer> x);

/// Orbits of the chambers under the group generated by the given isometries of M,
/// each sorted, ordered by least member.
std::vector<std::vector<std::size_t>> chamber_orbits(const Lattice& m, const std::vector<Chamber2>& chambers,
                                                     const std::vector<Isometry>& generators);

} // namespace ihskit
