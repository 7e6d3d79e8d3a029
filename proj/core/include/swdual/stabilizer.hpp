#pragma once

#include "swdual/galois_ring.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace swdual {

/// Element (a + b*S, phi^e) of the extended truncated quaternionic order
/// over W(F4)/2^N: S^2 = 2, a*S = S*phi(a) with phi the Frobenius, and an
/// optional Galois component phi^e acting coordinatewise.  Immutable
/// value type; safe to share across threads.
struct StabilizerElement {
    GaloisRingElement a;
    GaloisRingElement b;
    int galois = 0;  // exponent of phi, 0 or 1

    static StabilizerElement identity(int n) {
        return {GaloisRingElement::one(n), GaloisRingElement::zero(n), 0};
    }
    static StabilizerElement scalar(const GaloisRingElement& a, int galois = 0) {
        return {a, GaloisRingElement::zero(a.precision()), galois & 1};
    }
    /// The uniformizer S itself (a = 0, b = 1).
    static StabilizerElement s_element(int n) {
        return {GaloisRingElement::zero(n), GaloisRingElement::one(n), 0};
    }

    int precision() const { return a.precision(); }

    /// A unit of the order iff the S-free coordinate is a unit.
    bool is_unit() const { return a.is_unit(); }

    StabilizerElement operator-() const { return {-a, -b, galois}; }

    /// Reduce both coordinates to a smaller precision.
    StabilizerElement truncated(int n) const {
        return {a.truncated(n), b.truncated(n), galois};
    }

    friend bool operator==(const StabilizerElement& x, const StabilizerElement& y) {
        return x.a == y.a && x.b == y.b && x.galois == y.galois;
    }
    friend bool operator!=(const StabilizerElement& x, const StabilizerElement& y) {
        return !(x == y);
    }
    friend bool operator<(const StabilizerElement& x, const StabilizerElement& y) {
        auto key = [](const StabilizerElement& e) {
            return std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t,
                              int>{e.a.a(), e.a.b(), e.b.a(), e.b.b(), e.galois};
        };
        return key(x) < key(y);
    }

    std::string to_string() const;
};

/// Twisted multiplication: with x = (a + bS, phi^e), y = (c + dS, phi^f),
/// the Galois component of x first acts on y's coordinates, then
///   (a + bS)(c + dS) = (ac + 2*b*phi(d)) + (ad + b*phi(c)) S,
/// and the Galois exponents add mod 2.
StabilizerElement operator*(const StabilizerElement& x, const StabilizerElement& y);

/// Inverse of a unit: (a + bS)^-1 computed from the norm; throws on
/// non-units.
StabilizerElement inverse(const StabilizerElement& x);

/// Value of the norm map: a scalar in the prime subring Z/2^N together
/// with the untouched Galois component.
struct NormValue {
    GaloisRingElement scalar;
    int galois = 0;
};

/// norm(a + bS, phi^e) = (a*phi(a) - 2*b*phi(b), phi^e).  The scalar is
/// always rational; multiplicative in the extended group.
NormValue norm(const StabilizerElement& x);

/// All solutions of x^2 = -1 found by exhausting the two low 2-adic
/// digits of each coordinate and lifting digit by digit, together with
/// the canonical anticommuting pair from quaternion_pair.  Requires
/// n >= 2; every returned x satisfies x*x == -1 at precision n.
std::vector<StabilizerElement> find_order4(int n);

/// The canonical pair (i, j) with i^2 = j^2 = -1, j = w*i*w^-1 and
/// ij = -ji, so that {i, j} generates a group of order 8 and {i, j, w}
/// one of order 24.  The trace-zero part of i is (1/3)(1 + 2w); the
/// S-coefficient solves the norm equation N(b) = -1/3 by a digit lift.
std::pair<StabilizerElement, StabilizerElement> quaternion_pair(int n);

/// Closure of a generating set under multiplication, up to `bound`
/// elements.  stabilized is true iff a full pass added nothing within
/// the bound.
struct ClosureResult {
    std::vector<StabilizerElement> elements;
    bool stabilized = false;
    std::size_t order() const { return elements.size(); }
};
ClosureResult subgroup_closure(const std::vector<StabilizerElement>& gens,
                               std::size_t bound);

/// A Galois-twisted unit (c, phi) whose conjugation action maps the
/// order-24 subgroup generated by quaternion_pair and w to itself,
/// extending it to a group of order 48.  The untwisted (1, phi) does not
/// normalize that copy of the subgroup; the coordinates of c are found by
/// exhausting two 2-adic digits of the normalizing condition and lifting
/// digit by digit, then filtering by the closure actually stabilizing at
/// order 48.  Requires n >= 2; throws if no section lifts.
StabilizerElement galois_section(int n);

/// Class of the norm scalar in (Z/2^N)^x modulo {+-1}, represented by
/// the member of {u, -u} congruent to 1 mod 4.  Trivial iff that
/// representative is 1, i.e. the element lies in the norm-1 subgroup to
/// precision N.
struct NormClass {
    std::uint32_t representative = 0;
    int precision = 0;
    bool trivial = false;
    std::string digits;  // binary expansion of the representative, LSB first
};
NormClass reduced_norm_class(const StabilizerElement& x);

}  // namespace swdual
