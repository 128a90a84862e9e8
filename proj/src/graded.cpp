#include "ihskit/graded.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace ihskit {

const char* name_of(Gen g)
{
    static constexpr const char* names[kGenCount] = {"c1F", "c2F", "c1X", "c2X", "c1N", "c2N"};
    return names[static_cast<std::size_t>(g)];
}

int weight_of(const Exponents& e)
{
    int w = 0;
    for (std::size_t i = 0; i < kGenCount; ++i) w += e[i] * weight_of(static_cast<Gen>(i));
    return w;
}

Exponents monomial(std::initializer_list<std::pair<Gen, int>> factors)
{
    Exponents e{};
    for (const auto& [g, k] : factors) e[static_cast<std::size_t>(g)] += static_cast<std::uint8_t>(k);
    return e;
}

GradedElement::GradedElement(int max_weight) : max_weight_(max_weight)
{
    if (max_weight < 0 || max_weight > kMaxWeight)
        throw DomainError("truncation weight must lie in [0, " + std::to_string(kMaxWeight) + "]");
}

GradedElement GradedElement::constant(const Rational& c, int max_weight)
{
    GradedElement x(max_weight);
    x.add_term(Exponents{}, c);
    return x;
}

GradedElement GradedElement::generator(Gen g, int max_weight)
{
    GradedElement x(max_weight);
    x.add_term(monomial({{g, 1}}), 1);
    return x;
}

void GradedElement::add_term(const Exponents& e, const Rational& c)
{
    if (c == 0 || weight_of(e) > max_weight_) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (inserted) {
        it->second.canonicalize();
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Rational GradedElement::coefficient(const Exponents& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

GradedElement GradedElement::component(int weight) const
{
    GradedElement out(max_weight_);
    for (const auto& [e, c] : terms_)
        if (weight_of(e) == weight) out.terms_.emplace(e, c);
    return out;
}

GradedElement GradedElement::truncated(int max_weight) const
{
    GradedElement out(std::min(max_weight, max_weight_));
    for (const auto& [e, c] : terms_) out.add_term(e, c);
    return out;
}

GradedElement& GradedElement::operator+=(const GradedElement& other)
{
    max_weight_ = std::min(max_weight_, other.max_weight_);
    *this = truncated(max_weight_);
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
}

GradedElement& GradedElement::operator-=(const GradedElement& other)
{
    max_weight_ = std::min(max_weight_, other.max_weight_);
    *this = truncated(max_weight_);
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
}

GradedElement& GradedElement::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, coeff] : terms_) coeff *= c;
    return *this;
}

GradedElement operator*(const GradedElement& a, const GradedElement& b)
{
    GradedElement out(std::min(a.max_weight_, b.max_weight_));
    for (const auto& [ea, ca] : a.terms_) {
        const int wa = weight_of(ea);
        for (const auto& [eb, cb] : b.terms_) {
            if (wa + weight_of(eb) > out.max_weight_) continue;
            Exponents e;
            for (std::size_t i = 0; i < kGenCount; ++i) e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

GradedElement GradedElement::pow(unsigned n) const
{
    GradedElement acc = constant(1, max_weight_);
    for (unsigned i = 0; i < n; ++i) acc = acc * *this;
    return acc;
}

GradedElement GradedElement::substitute(const std::map<Gen, GradedElement>& replacements) const
{
    GradedElement out(max_weight_);
    for (const auto& [e, c] : terms_) {
        GradedElement term = constant(c, max_weight_);
        for (std::size_t i = 0; i < kGenCount; ++i) {
            if (e[i] == 0) continue;
            const Gen g = static_cast<Gen>(i);
            auto it = replacements.find(g);
            const GradedElement base = it == replacements.end() ? generator(g, max_weight_) : it->second.truncated(max_weight_);
            term = term * base.pow(e[i]);
        }
        out += term;
    }
    return out;
}

double GradedElement::evaluate(const std::array<double, kGenCount>& values) const
{
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c.get_d();
        for (std::size_t i = 0; i < kGenCount; ++i) t *= std::pow(values[i], e[i]);
        acc += t;
    }
    return acc;
}

std::string to_string(const GradedElement& x)
{
    if (x.is_zero()) return "0";
    std::vector<std::pair<Exponents, Rational>> terms(x.terms().begin(), x.terms().end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        const int wa = weight_of(a.first), wb = weight_of(b.first);
        if (wa != wb) return wa < wb;
        return a.first > b.first; // c1F^2 before c1F*c1N before c1N^2
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms) {
        Rational mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool constant = weight_of(e) == 0;
        bool wrote = false;
        if (constant || mag != 1) {
            os << mag.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < kGenCount; ++i) {
            if (e[i] == 0) continue;
            if (wrote) os << "*";
            os << name_of(static_cast<Gen>(i));
            if (e[i] > 1) os << "^" << int(e[i]);
            wrote = true;
        }
    }
    return os.str();
}

} // namespace ihskit
