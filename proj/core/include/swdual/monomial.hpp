#pragma once

#include <cstdint>
#include <vector>

namespace swdual {

/// Exponent vector over the presentation's generators (j excluded: powers
/// of j live in the series coefficient).  Invertible generators may carry
/// negative exponents.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t ngens) : e_(ngens, 0) {}

    std::size_t size() const { return e_.size(); }
    int exp(std::size_t g) const { return e_[g]; }
    void set_exp(std::size_t g, int v) { e_[g] = static_cast<std::int16_t>(v); }

    bool is_one() const {
        for (auto v : e_)
            if (v != 0) return false;
        return true;
    }

    /// Divisibility test for a divisor with nonnegative exponents.
    /// Generators absent from the divisor impose no constraint, so
    /// negative exponents on invertible generators do not block a match.
    bool divisible_by(const Monomial& d) const {
        for (std::size_t g = 0; g < e_.size(); ++g)
            if (d.e_[g] > 0 && d.e_[g] > e_[g]) return false;
        return true;
    }

    Monomial operator/(const Monomial& d) const {
        Monomial r = *this;
        for (std::size_t g = 0; g < e_.size(); ++g)
            r.e_[g] -= d.e_[g];
        return r;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r = *this;
        for (std::size_t g = 0; g < e_.size(); ++g)
            r.e_[g] += o.e_[g];
        return r;
    }

    friend bool operator==(const Monomial& x, const Monomial& y) { return x.e_ == y.e_; }
    friend bool operator!=(const Monomial& x, const Monomial& y) { return !(x == y); }
    friend bool operator<(const Monomial& x, const Monomial& y) { return x.e_ < y.e_; }

private:
    std::vector<std::int16_t> e_;
};

}  // namespace swdual
