#pragma once

#include "ihskit/numeric.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>

namespace ihskit {

/// Chern-class generators on the fixed surface: c_i of its tangent bundle (F),
/// of the ambient relative tangent bundle restricted to it (X), and of the normal bundle (N).
enum class Gen : std::uint8_t { c1F = 0, c2F, c1X, c2X, c1N, c2N };

inline constexpr std::size_t kGenCount = 6;
inline constexpr int kMaxWeight = 4;

constexpr int weight_of(Gen g) { return (static_cast<int>(g) % 2 == 0) ? 1 : 2; }
const char* name_of(Gen g);

using Exponents = std::array<std::uint8_t, kGenCount>;

int weight_of(const Exponents& e);

/// Polynomial over Q in the six generators, truncated above a fixed weight.
///
/// All generators have even form degree, so the ring is commutative. Every
/// operation re-truncates; the truncation of a binary result is the smaller of
/// the two operands' truncations.
class GradedElement {
public:
    explicit GradedElement(int max_weight = kMaxWeight);

    static GradedElement constant(const Rational& c, int max_weight = kMaxWeight);
    static GradedElement generator(Gen g, int max_weight = kMaxWeight);

    int max_weight() const { return max_weight_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const Exponents& e) const;
    /// Homogeneous part of the given weight.
    GradedElement component(int weight) const;
    GradedElement truncated(int max_weight) const;

    /// Replaces generators by elements (generators without a replacement stay).
    GradedElement substitute(const std::map<Gen, GradedElement>& replacements) const;

    double evaluate(const std::array<double, kGenCount>& values) const;

    GradedElement& operator+=(const GradedElement& other);
    GradedElement& operator-=(const GradedElement& other);
    GradedElement& operator*=(const Rational& c);

    friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
    friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
    friend GradedElement operator*(const GradedElement& a, const GradedElement& b);
    friend GradedElement operator*(GradedElement a, const Rational& c) { return a *= c; }
    friend GradedElement operator*(const Rational& c, GradedElement a) { return a *= c; }
    friend GradedElement operator-(GradedElement a) { return a *= Rational(-1); }

    /// Same terms (truncation levels are not compared).
    friend bool operator==(const GradedElement& a, const GradedElement& b) { return a.terms_ == b.terms_; }

    GradedElement pow(unsigned n) const;

private:
    void add_term(const Exponents& e, const Rational& c);

    int max_weight_;
    std::map<Exponents, Rational> terms_;
};

/// Monomial from (generator, exponent) pairs, e.g. monomial({{Gen::c1F, 2}, {Gen::c2N, 1}}).
Exponents monomial(std::initializer_list<std::pair<Gen, int>> factors);

/// Sorted by weight, then by generator order; e.g. "1/4 + 1/8*c1F + 1/16*c2N".
std::string to_string(const GradedElement& x);

} // namespace ihskit
