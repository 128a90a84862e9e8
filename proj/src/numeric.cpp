#include "ihskit/numeric.hpp"

namespace ihskit {

RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

RatVector to_rational(std::span<const Integer> v)
{
    RatVector r;
    r.reserve(v.size());
    for (const auto& x : v) r.emplace_back(x);
    return r;
}

bool is_integral(const RatMatrix& m)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j).get_den() != 1) return false;
    return true;
}

IntMatrix to_integer(const RatMatrix& m)
{
    if (!is_integral(m)) throw DomainError("matrix has non-integral entries");
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).get_num();
    return r;
}

Integer content(std::span<const Integer> v)
{
    Integer g = 0;
    for (const auto& x : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntVector primitive_direction(std::span<const Rational> v)
{
    Integer lcm = 1;
    for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    IntVector out;
    out.reserve(v.size());
    for (const auto& x : v) {
        Rational scaled = x * lcm;
        out.push_back(scaled.get_num());
    }
    Integer g = content(out);
    if (g == 0) throw DomainError("zero vector has no direction");
    for (auto& x : out) x /= g;
    return out;
}

bool is_zero(std::span<const Integer> v)
{
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) { return x.get_str(); }

} // namespace ihskit
