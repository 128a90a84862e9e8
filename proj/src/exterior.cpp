#include "ihskit/char_forms.hpp"

#include <bit>
#include <map>

namespace ihskit {

namespace {

using Complex = std::complex<double>;

// Covector slots: 0..3 are v^1..v^4, 4..7 their conjugates.
constexpr int kSlots = 8;
constexpr unsigned bar(int i) { return 4u + static_cast<unsigned>(i); }

/// Element of the exterior algebra on the 8 covectors, keyed by slot bitmask.
using Form = std::map<unsigned, Complex>;

Form basis_form(std::initializer_list<unsigned> slots, Complex c)
{
    unsigned mask = 0;
    int sign = 1;
    for (unsigned s : slots) {
        // moving the new factor past every higher slot already present
        if (mask & (1u << s)) return {};
        if (std::popcount(mask >> (s + 1)) % 2 == 1) sign = -sign;
        mask |= 1u << s;
    }
    return {{mask, c * static_cast<double>(sign)}};
}

Form& accumulate(Form& into, const Form& x, Complex scale = 1.0)
{
    for (const auto& [m, c] : x) into[m] += scale * c;
    return into;
}

Form wedge(const Form& a, const Form& b)
{
    Form out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            if (ma & mb) continue;
            // sign of sorting the concatenation: count pairs (i in a, j in b) with i > j
            int inversions = 0;
            for (int j = 0; j < kSlots; ++j)
                if (mb & (1u << j)) inversions += std::popcount(ma >> (j + 1));
            out[ma | mb] += (inversions % 2 ? -1.0 : 1.0) * ca * cb;
        }
    return out;
}

/// Hermitian metric on covectors: h(v^i, v^j) = h(v̄^i, v̄^j) = 2δ_ij, types orthogonal.
Complex covector_metric(int i, int j) { return i == j ? Complex(2.0) : Complex(0.0); }

Complex det(std::vector<std::vector<Complex>> m)
{
    const std::size_t n = m.size();
    Complex d = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m[i][k]) > std::abs(m[p][k])) p = i;
        if (std::abs(m[p][k]) == 0.0) return 0.0;
        if (p != k) {
            std::swap(m[p], m[k]);
            d = -d;
        }
        d *= m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return d;
}

std::vector<int> slots_of(unsigned mask)
{
    std::vector<int> s;
    for (int i = 0; i < kSlots; ++i)
        if (mask & (1u << i)) s.push_back(i);
    return s;
}

/// Induced metric on wedge products: h(a_1∧…∧a_k, b_1∧…∧b_k) = det h(a_p, b_q).
Complex inner(const Form& a, const Form& b)
{
    Complex acc = 0.0;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            if (std::popcount(ma) != std::popcount(mb)) continue;
            const std::vector<int> sa = slots_of(ma), sb = slots_of(mb);
            std::vector<std::vector<Complex>> gram(sa.size(), std::vector<Complex>(sb.size()));
            for (std::size_t p = 0; p < sa.size(); ++p)
                for (std::size_t q = 0; q < sb.size(); ++q) gram[p][q] = covector_metric(sa[p], sb[q]);
            acc += ca * std::conj(cb) * det(gram);
        }
    return acc;
}

} // namespace

PointwiseNorms quaternionic_pointwise_norms(const Matrix4c& alpha, std::complex<double> mu)
{
    const Complex i(0.0, 1.0);
    // conj(σ_I) = -i v̄¹∧v̄² - i v̄³∧v̄⁴
    Form sigma_bar;
    accumulate(sigma_bar, basis_form({bar(0), bar(1)}, -i));
    accumulate(sigma_bar, basis_form({bar(2), bar(3)}, -i));
    Form theta;
    accumulate(theta, sigma_bar, mu / 2.0);

    Form a;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            accumulate(a, basis_form({static_cast<unsigned>(r), bar(c)}, 0.5 * alpha[r][c]));

    const Form theta_alpha = wedge(theta, a);
    PointwiseNorms out;
    out.lhs = inner(theta_alpha, theta_alpha).real();
    out.rhs = std::norm(mu) * inner(a, a).real();
    return out;
}

} // namespace ihskit
