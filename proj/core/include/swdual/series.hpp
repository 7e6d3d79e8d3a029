#pragma once

#include "swdual/galois_ring.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace swdual {

/// Power series in j over W(F4)/2^N, truncated at j^M.
class TruncatedSeries {
public:
    TruncatedSeries() : n_(0) {}
    TruncatedSeries(int n, int m) : c_(m, GaloisRingElement::zero(n)), n_(n) {}

    static TruncatedSeries constant(const GaloisRingElement& v, int m) {
        TruncatedSeries s(v.precision(), m);
        if (m > 0) s.c_[0] = v;
        return s;
    }
    static TruncatedSeries one(int n, int m) {
        return constant(GaloisRingElement::one(n), m);
    }
    /// j^k with unit coefficient; zero series when k >= M.
    static TruncatedSeries power_of_j(int k, int n, int m) {
        TruncatedSeries s(n, m);
        if (k >= 0 && k < m) s.c_[k] = GaloisRingElement::one(n);
        return s;
    }

    int precision() const { return n_; }
    int truncation() const { return static_cast<int>(c_.size()); }

    const GaloisRingElement& coeff(int k) const { return c_[k]; }
    GaloisRingElement& coeff(int k) { return c_[k]; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    /// Unit iff the constant term is a unit of W(F4)/2^N.
    bool is_unit() const { return !c_.empty() && c_[0].is_unit(); }

    /// Smallest k with nonzero j^k coefficient, or truncation() if zero.
    int valuation() const {
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (!c_[k].is_zero()) return static_cast<int>(k);
        return truncation();
    }

    friend TruncatedSeries operator+(const TruncatedSeries& f, const TruncatedSeries& g) {
        f.check(g);
        TruncatedSeries r = f;
        for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] += g.c_[k];
        return r;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& f, const TruncatedSeries& g) {
        f.check(g);
        TruncatedSeries r = f;
        for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] -= g.c_[k];
        return r;
    }
    TruncatedSeries operator-() const {
        TruncatedSeries r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend TruncatedSeries operator*(const TruncatedSeries& f, const TruncatedSeries& g) {
        f.check(g);
        TruncatedSeries r(f.n_, f.truncation());
        for (std::size_t i = 0; i < f.c_.size(); ++i) {
            if (f.c_[i].is_zero()) continue;
            for (std::size_t k = i; k < r.c_.size(); ++k)
                r.c_[k] += f.c_[i] * g.c_[k - i];
        }
        return r;
    }
    friend TruncatedSeries operator*(const GaloisRingElement& v, const TruncatedSeries& f) {
        TruncatedSeries r = f;
        for (auto& x : r.c_) x = v * x;
        return r;
    }

    TruncatedSeries& operator+=(const TruncatedSeries& g) { return *this = *this + g; }
    TruncatedSeries& operator-=(const TruncatedSeries& g) { return *this = *this - g; }
    TruncatedSeries& operator*=(const TruncatedSeries& g) { return *this = *this * g; }

    friend bool operator==(const TruncatedSeries& f, const TruncatedSeries& g) {
        return f.n_ == g.n_ && f.c_ == g.c_;
    }
    friend bool operator!=(const TruncatedSeries& f, const TruncatedSeries& g) {
        return !(f == g);
    }

    /// Multiply by j^k (shift), dropping coefficients past the truncation.
    TruncatedSeries shifted(int k) const {
        TruncatedSeries r(n_, truncation());
        for (int i = 0; i < truncation(); ++i)
            if (i + k >= 0 && i + k < truncation()) r.c_[i + k] = c_[i];
        return r;
    }

    /// Inverse to precision (N, M); requires is_unit().
    TruncatedSeries inverse() const {
        if (!is_unit()) throw std::domain_error("TruncatedSeries: not a unit");
        TruncatedSeries r(n_, truncation());
        GaloisRingElement c0inv = c_[0].inverse();
        r.c_[0] = c0inv;
        for (int k = 1; k < truncation(); ++k) {
            GaloisRingElement acc = GaloisRingElement::zero(n_);
            for (int i = 1; i <= k; ++i) acc += c_[i] * r.c_[k - i];
            r.c_[k] = -(c0inv * acc);
        }
        return r;
    }

    /// Reduce every coefficient mod 2^k (keeping the ambient precision).
    TruncatedSeries reduced_mod_pow2(int k) const {
        TruncatedSeries r = *this;
        if (k >= n_) return r;
        std::uint32_t m = GaloisRingElement::mask(k);
        for (auto& x : r.c_)
            x = GaloisRingElement(x.a() & m, x.b() & m, n_);
        return r;
    }

    std::string to_string() const;

private:
    void check(const TruncatedSeries& g) const {
        if (n_ != g.n_ || c_.size() != g.c_.size())
            throw std::invalid_argument("TruncatedSeries: precision mismatch");
    }

    std::vector<GaloisRingElement> c_;
    int n_;
};

inline bool is_unit_series(const TruncatedSeries& f) { return f.is_unit(); }
inline TruncatedSeries invert_series(const TruncatedSeries& f) { return f.inverse(); }

}  // namespace swdual
