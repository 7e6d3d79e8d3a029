#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace swdual {

/// Element of the Galois ring W(F4)/2^N = (Z/2^N)[w]/(w^2+w+1),
/// stored as a + b*w with a, b residues mod 2^N.
///
/// Values are immutable after construction and safe to share across
/// threads.
class GaloisRingElement {
public:
    GaloisRingElement() : a_(0), b_(0), n_(0) {}
    GaloisRingElement(std::uint32_t a, std::uint32_t b, int n)
        : a_(a & mask(n)), b_(b & mask(n)), n_(n) {}

    static GaloisRingElement zero(int n) { return {0, 0, n}; }
    static GaloisRingElement one(int n) { return {1, 0, n}; }
    static GaloisRingElement omega(int n) { return {0, 1, n}; }
    static GaloisRingElement from_int(std::int64_t v, int n) {
        return {static_cast<std::uint32_t>(v & mask(n)), 0, n};
    }

    std::uint32_t a() const { return a_; }
    std::uint32_t b() const { return b_; }
    int precision() const { return n_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }

    /// Unit test: nonzero mod 2, i.e. a or b odd.
    bool is_unit() const { return ((a_ | b_) & 1u) != 0; }

    /// Lies in the prime subring Z/2^N (no w component).
    bool is_rational() const { return b_ == 0; }

    friend GaloisRingElement operator+(const GaloisRingElement& x,
                                       const GaloisRingElement& y) {
        x.check(y);
        return {x.a_ + y.a_, x.b_ + y.b_, x.n_};
    }
    friend GaloisRingElement operator-(const GaloisRingElement& x,
                                       const GaloisRingElement& y) {
        x.check(y);
        return {x.a_ - y.a_, x.b_ - y.b_, x.n_};
    }
    GaloisRingElement operator-() const { return {0u - a_, 0u - b_, n_}; }

    /// (a+bw)(c+dw) with w^2 = -1-w:
    ///   = (ac - bd) + (ad + bc - bd) w
    friend GaloisRingElement operator*(const GaloisRingElement& x,
                                       const GaloisRingElement& y) {
        x.check(y);
        std::uint32_t ac = x.a_ * y.a_;
        std::uint32_t bd = x.b_ * y.b_;
        std::uint32_t ad_bc = x.a_ * y.b_ + x.b_ * y.a_;
        return {ac - bd, ad_bc - bd, x.n_};
    }

    GaloisRingElement& operator+=(const GaloisRingElement& y) { return *this = *this + y; }
    GaloisRingElement& operator-=(const GaloisRingElement& y) { return *this = *this - y; }
    GaloisRingElement& operator*=(const GaloisRingElement& y) { return *this = *this * y; }

    friend bool operator==(const GaloisRingElement& x, const GaloisRingElement& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.n_ == y.n_;
    }
    friend bool operator!=(const GaloisRingElement& x, const GaloisRingElement& y) {
        return !(x == y);
    }

    /// Frobenius lift: a + bw -> (a-b) - bw.  Involution fixing Z/2^N.
    GaloisRingElement frobenius() const { return {a_ - b_, 0u - b_, n_}; }

    /// x * frobenius(x) = a^2 - ab + b^2, always in the prime subring.
    std::uint32_t norm() const { return (a_ * a_ - a_ * b_ + b_ * b_) & mask(n_); }

    /// Multiplicative inverse; throws if not a unit.
    GaloisRingElement inverse() const {
        if (!is_unit()) throw std::domain_error("GaloisRingElement: not a unit");
        // x^-1 = phi(x) / norm(x), norm odd since x is a unit.
        std::uint32_t inv = invert_odd(norm(), n_);
        return frobenius() * GaloisRingElement(inv, 0, n_);
    }

    /// Reduce to a smaller precision.
    GaloisRingElement truncated(int n) const { return {a_, b_, n}; }

    std::string to_string() const;

    static std::uint32_t mask(int n) {
        return n >= 32 ? 0xffffffffu : ((1u << n) - 1u);
    }

    /// Inverse of an odd residue mod 2^n by Newton iteration.
    static std::uint32_t invert_odd(std::uint32_t v, int n) {
        std::uint32_t x = v;  // correct mod 8 for odd v
        for (int i = 0; i < 5; ++i) x *= 2u - v * x;
        return x & mask(n);
    }

private:
    void check(const GaloisRingElement& y) const {
        if (n_ != y.n_)
            throw std::invalid_argument("GaloisRingElement: precision mismatch");
    }

    std::uint32_t a_, b_;
    int n_;
};

inline GaloisRingElement frobenius(const GaloisRingElement& x) { return x.frobenius(); }

}  // namespace swdual
