#pragma once

#include "swdual/monomial.hpp"
#include "swdual/series.hpp"

#include <map>

namespace swdual {

/// Formal sum of monomials with TruncatedSeries coefficients.  Zero
/// coefficients are pruned on mutation.  Homogeneity is a property of
/// the presentation, checked there.
class AlgebraElement {
public:
    using TermMap = std::map<Monomial, TruncatedSeries>;

    AlgebraElement() = default;

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& m, const TruncatedSeries& f) {
        if (f.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, f);
        } else {
            it->second += f;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    AlgebraElement& operator+=(const AlgebraElement& o) {
        for (const auto& [m, f] : o.terms_) add_term(m, f);
        return *this;
    }
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) {
        return a += b;
    }
    AlgebraElement operator-() const {
        AlgebraElement r;
        for (const auto& [m, f] : terms_) r.terms_.emplace(m, -f);
        return r;
    }
    AlgebraElement& operator-=(const AlgebraElement& o) { return *this += -o; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) {
        return a -= b;
    }

    friend AlgebraElement operator*(const TruncatedSeries& f, const AlgebraElement& x) {
        AlgebraElement r;
        for (const auto& [m, g] : x.terms_) r.add_term(m, f * g);
        return r;
    }

    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) {
        return !(a == b);
    }

private:
    TermMap terms_;
};

}  // namespace swdual
