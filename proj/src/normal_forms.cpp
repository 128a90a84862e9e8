#include "ihskit/normal_forms.hpp"

#include <utility>

namespace ihskit {

Integer determinant(const IntMatrix& input)
{
    if (!input.square()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = input.rows();
    if (n == 0) return 1;
    IntMatrix a = input;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && a(swap, k) == 0) ++swap;
            if (swap == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    Integer d = a(n - 1, n - 1);
    return sign > 0 ? d : Integer(-d);
}

Rational determinant(const RatMatrix& input)
{
    if (!input.square()) throw std::invalid_argument("determinant of a non-square matrix");
    RatMatrix a = input;
    const std::size_t n = a.rows();
    Rational det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rational f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

std::size_t rank(const RatMatrix& input)
{
    RatMatrix a = input;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(p, j));
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (a(i, c) == 0) continue;
            Rational f = a(i, c) / a(r, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return r;
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

namespace {

void swap_rows(IntMatrix& a, std::size_t i, std::size_t k)
{
    if (i == k) return;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(i, j), a(k, j));
}

void swap_cols(IntMatrix& a, std::size_t j, std::size_t k)
{
    if (j == k) return;
    for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a(i, j), a(i, k));
}

Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

} // namespace

std::vector<Integer> smith_diagonal(const IntMatrix& input)
{
    IntMatrix a = input;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    const std::size_t n = std::min(rows, cols);
    std::vector<Integer> diag(n, 0);

    std::size_t t = 0;
    while (t < n) {
        // Least nonzero |entry| in the trailing block, first in row-major order.
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (a(i, j) == 0) continue;
                if (pi == rows || abs(a(i, j)) < abs(a(pi, pj))) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi == rows) break;
        swap_rows(a, t, pi);
        swap_cols(a, t, pj);

        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i) {
            if (a(i, t) == 0) continue;
            Integer q = floor_div(a(i, t), a(t, t));
            for (std::size_t j = t; j < cols; ++j) a(i, j) -= q * a(t, j);
            if (a(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
            if (a(t, j) == 0) continue;
            Integer q = floor_div(a(t, j), a(t, t));
            for (std::size_t i = t; i < rows; ++i) a(i, j) -= q * a(i, t);
            if (a(t, j) != 0) clean = false;
        }
        if (!clean) continue;

        bool divides = true;
        for (std::size_t i = t + 1; i < rows && divides; ++i)
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                    for (std::size_t k = t; k < cols; ++k) a(t, k) += a(i, k);
                    divides = false;
                    break;
                }
            }
        if (!divides) continue;

        diag[t] = abs(a(t, t));
        ++t;
    }
    return diag;
}

HermiteForm hermite_normal_form(const IntMatrix& input)
{
    HermiteForm out;
    out.h = input;
    out.transform = IntMatrix::identity(input.rows());
    IntMatrix& a = out.h;
    IntMatrix& u = out.transform;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();

    auto combine = [&](IntMatrix& m, std::size_t r, std::size_t i, const Integer& s, const Integer& t,
                       const Integer& p, const Integer& q) {
        // (row_r, row_i) <- (s row_r + t row_i, p row_r + q row_i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Integer x = m(r, j);
            Integer y = m(i, j);
            m(r, j) = s * x + t * y;
            m(i, j) = p * x + q * y;
        }
    };

    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a(i, c) == 0) continue;
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a(r, c).get_mpz_t(), a(i, c).get_mpz_t());
            Integer p = -(a(i, c) / g);
            Integer q = a(r, c) / g;
            combine(a, r, i, s, t, p, q);
            combine(u, r, i, s, t, p, q);
        }
        if (a(r, c) == 0) continue;
        if (a(r, c) < 0) {
            for (std::size_t j = 0; j < cols; ++j) a(r, j) = -a(r, j);
            for (std::size_t j = 0; j < u.cols(); ++j) u(r, j) = -u(r, j);
        }
        for (std::size_t k = 0; k < r; ++k) {
            if (a(k, c) == 0) continue;
            Integer q = floor_div(a(k, c), a(r, c));
            for (std::size_t j = 0; j < cols; ++j) a(k, j) -= q * a(r, j);
            for (std::size_t j = 0; j < u.cols(); ++j) u(k, j) -= q * u(r, j);
        }
        ++r;
    }
    out.rank = r;
    return out;
}

std::vector<IntVector> canonical_basis(const std::vector<IntVector>& vectors)
{
    if (vectors.empty()) return {};
    HermiteForm hnf = hermite_normal_form(IntMatrix::from_rows(vectors));
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < hnf.rank; ++i) out.push_back(hnf.h.row_vector(i));
    return out;
}

std::vector<IntVector> integer_kernel(const IntMatrix& m)
{
    const std::size_t n = m.cols();
    if (m.rows() == 0) return IntMatrix::identity(n).to_rows();
    HermiteForm hnf = hermite_normal_form(m.transposed());
    std::vector<IntVector> kernel;
    for (std::size_t i = hnf.rank; i < hnf.transform.rows(); ++i) kernel.push_back(hnf.transform.row_vector(i));
    return canonical_basis(kernel);
}

std::vector<IntVector> saturate(const std::vector<IntVector>& vectors, std::size_t dim)
{
    if (vectors.empty()) return {};
    std::vector<IntVector> annihilator = integer_kernel(IntMatrix::from_rows(vectors));
    if (annihilator.empty()) return IntMatrix::identity(dim).to_rows();
    return integer_kernel(IntMatrix::from_rows(annihilator));
}

} // namespace ihskit
