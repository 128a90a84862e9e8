#pragma once

#include "ihskit/numeric.hpp"

namespace ihskit {

/// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& m);
Rational determinant(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);

/// Diagonal of the Smith normal form, in divisibility order, length min(rows, cols).
///
/// Pivot is the entry of least nonzero absolute value, ties broken by lowest
/// (row, column) index, so the reduction sequence is reproducible.
std::vector<Integer> smith_diagonal(const IntMatrix& m);

struct HermiteForm {
    IntMatrix h;          // row-style HNF: pivots positive, entries above each pivot reduced
    IntMatrix transform;  // unimodular, transform * input == h
    std::size_t rank = 0; // nonzero rows of h (they come first)
};

HermiteForm hermite_normal_form(const IntMatrix& m);

/// Basis (as rows) of the integer solutions of m·x = 0, in Hermite normal form.
/// The result is automatically primitive in Z^cols.
std::vector<IntVector> integer_kernel(const IntMatrix& m);

/// Canonical basis (HNF rows) of the Z-span of the given vectors.
std::vector<IntVector> canonical_basis(const std::vector<IntVector>& vectors);

/// Basis of the primitive hull (span ⊗ Q) ∩ Z^n of the given vectors.
std::vector<IntVector> saturate(const std::vector<IntVector>& vectors, std::size_t dim);

} // namespace ihskit
