#include "swdual/stabilizer.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <stdexcept>

namespace swdual {

StabilizerElement operator*(const StabilizerElement& x, const StabilizerElement& y) {
    int n = x.precision();
    GaloisRingElement c = x.galois ? y.a.frobenius() : y.a;
    GaloisRingElement d = x.galois ? y.b.frobenius() : y.b;
    GaloisRingElement two = GaloisRingElement::from_int(2, n);
    StabilizerElement out;
    out.a = x.a * c + two * x.b * d.frobenius();
    out.b = x.a * d + x.b * c.frobenius();
    out.galois = (x.galois + y.galois) & 1;
    return out;
}

StabilizerElement inverse(const StabilizerElement& x) {
    if (!x.is_unit()) throw std::domain_error("StabilizerElement: not a unit");
    int n = x.precision();
    // Quaternionic conjugate: (a + bS)(phi(a) - bS) = a*phi(a) - 2*b*phi(b).
    StabilizerElement conj{x.a.frobenius(), -x.b, 0};
    GaloisRingElement nu = norm(StabilizerElement{x.a, x.b, 0}).scalar;
    GaloisRingElement ninv(GaloisRingElement::invert_odd(nu.a(), n), 0, n);
    StabilizerElement inv = conj * StabilizerElement::scalar(ninv);
    // Undo the Galois component: (y, phi^e)^-1 = (phi^-e(y^-1), phi^-e).
    if (x.galois) inv = {inv.a.frobenius(), inv.b.frobenius(), 1};
    return inv;
}

NormValue norm(const StabilizerElement& x) {
    int n = x.precision();
    GaloisRingElement two = GaloisRingElement::from_int(2, n);
    GaloisRingElement s = x.a * x.a.frobenius() - two * x.b * x.b.frobenius();
    if (!s.is_rational())
        throw std::logic_error("norm scalar left the prime subring");
    return {s, x.galois};
}

namespace {

bool squares_to_minus_one(const StabilizerElement& x) {
    int n = x.precision();
    return x * x == StabilizerElement::scalar(GaloisRingElement::from_int(-1, n));
}

}  // namespace

std::pair<StabilizerElement, StabilizerElement> quaternion_pair(int n) {
    if (n < 2) throw std::invalid_argument("quaternion_pair requires precision >= 2");
    // Trace-zero part: a = (1/3)(1 + 2w), so a^2 = -1/3 and the
    // anticommutator identity i(wiw^-1) + (wiw^-1)i = 2(a^2 - N(b))
    // vanishes exactly when N(b) = -1/3.
    std::uint32_t inv3 = GaloisRingElement::invert_odd(3, n);
    GaloisRingElement a = GaloisRingElement(inv3, 0, n) * GaloisRingElement(1, 2, n);
    // Solve N(b) = b0^2 - b0*b1 + b1^2 = -1/3 with b1 = 1: the seed
    // b0 = 4 works mod 8 and the derivative 2*b0 - 1 is odd, so each
    // further digit of b0 is forced.
    std::uint32_t mask = GaloisRingElement::mask(n);
    std::uint32_t target = (0u - inv3) & mask;
    std::uint32_t b0 = 4;
    for (int k = 3; k < n; ++k) {
        std::uint32_t f = (b0 * b0 - b0 + 1 - target) & GaloisRingElement::mask(k + 1);
        if ((f >> k) & 1u) b0 += (1u << k);
    }
    StabilizerElement i{a, GaloisRingElement(b0, 1, n), 0};
    StabilizerElement w = StabilizerElement::scalar(GaloisRingElement::omega(n));
    StabilizerElement j = w * i * inverse(w);
    if (!squares_to_minus_one(i) || !squares_to_minus_one(j) || !(i * j == -(j * i)))
        throw std::logic_error("quaternion_pair: lifted pair failed verification");
    return {i, j};
}

std::vector<StabilizerElement> find_order4(int n) {
    if (n < 2) throw std::invalid_argument("find_order4 requires precision >= 2");
    // Exhaust the two low digits of every coordinate, then lift one digit
    // at a time; each surviving branch keeps its first successful lift.
    std::vector<std::array<std::uint32_t, 4>> sols;
    for (std::uint32_t a0 = 0; a0 < 4; ++a0)
        for (std::uint32_t a1 = 0; a1 < 4; ++a1)
            for (std::uint32_t b0 = 0; b0 < 4; ++b0)
                for (std::uint32_t b1 = 0; b1 < 4; ++b1) {
                    StabilizerElement x{GaloisRingElement(a0, a1, 2),
                                        GaloisRingElement(b0, b1, 2), 0};
                    if (squares_to_minus_one(x)) sols.push_back({a0, a1, b0, b1});
                }
    for (int k = 2; k < n; ++k) {
        std::vector<std::array<std::uint32_t, 4>> next;
        for (const auto& s : sols) {
            for (std::uint32_t bits = 0; bits < 16; ++bits) {
                std::array<std::uint32_t, 4> c = s;
                for (int t = 0; t < 4; ++t) c[t] |= ((bits >> t) & 1u) << k;
                StabilizerElement x{GaloisRingElement(c[0], c[1], k + 1),
                                    GaloisRingElement(c[2], c[3], k + 1), 0};
                if (squares_to_minus_one(x)) {
                    next.push_back(c);
                    break;
                }
            }
        }
        sols = std::move(next);
    }
    if (sols.empty())
        throw std::logic_error("find_order4: no solution lifted to full precision");
    std::vector<StabilizerElement> out;
    for (const auto& s : sols)
        out.push_back({GaloisRingElement(s[0], s[1], n), GaloisRingElement(s[2], s[3], n), 0});
    auto [i, j] = quaternion_pair(n);
    out.push_back(i);
    out.push_back(j);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ClosureResult subgroup_closure(const std::vector<StabilizerElement>& gens,
                               std::size_t bound) {
    if (gens.empty()) throw std::invalid_argument("subgroup_closure: empty generating set");
    int n = gens.front().precision();
    for (const auto& g : gens) {
        if (g.precision() != n)
            throw std::invalid_argument("subgroup_closure: precision mismatch");
        if (!g.is_unit())
            throw std::invalid_argument("subgroup_closure: generators must be units");
    }
    std::set<StabilizerElement> elems;
    elems.insert(StabilizerElement::identity(n));
    for (const auto& g : gens) elems.insert(g);
    ClosureResult res;
    bool grew = true;
    while (grew && elems.size() <= bound) {
        grew = false;
        std::vector<StabilizerElement> snapshot(elems.begin(), elems.end());
        for (const auto& x : snapshot) {
            for (const auto& y : snapshot) {
                if (elems.insert(x * y).second) grew = true;
                if (elems.size() > bound) break;
            }
            if (elems.size() > bound) break;
        }
    }
    res.stabilized = !grew && elems.size() <= bound;
    res.elements.assign(elems.begin(), elems.end());
    return res;
}

StabilizerElement galois_section(int n) {
    if (n < 2) throw std::invalid_argument("galois_section requires precision >= 2");
    auto [i, j] = quaternion_pair(n);
    StabilizerElement w = StabilizerElement::scalar(GaloisRingElement::omega(n));
    ClosureResult g24 = subgroup_closure({i, j, w}, 24);
    if (!g24.stabilized) throw std::logic_error("galois_section: base closure failed");
    auto phi = [](const StabilizerElement& x) {
        return StabilizerElement{x.a.frobenius(), x.b.frobenius(), x.galois};
    };
    // Necessary condition mod 2^k: c conjugates phi(i) and phi(j) into the
    // subgroup, i.e. c*phi(i) = t*c and c*phi(j) = u*c for some t, u.
    auto normalizes = [&](const std::array<std::uint32_t, 4>& cc, int k) {
        StabilizerElement c{GaloisRingElement(cc[0], cc[1], k),
                            GaloisRingElement(cc[2], cc[3], k), 0};
        StabilizerElement pi = phi(i).truncated(k), pj = phi(j).truncated(k);
        bool fi = false, fj = false;
        for (const auto& g : g24.elements) {
            StabilizerElement t = g.truncated(k);
            fi = fi || c * pi == t * c;
            fj = fj || c * pj == t * c;
            if (fi && fj) return true;
        }
        return false;
    };
    std::vector<std::array<std::uint32_t, 4>> level;
    for (std::uint32_t a0 = 0; a0 < 4; ++a0)
        for (std::uint32_t a1 = 0; a1 < 4; ++a1)
            for (std::uint32_t b0 = 0; b0 < 4; ++b0)
                for (std::uint32_t b1 = 0; b1 < 4; ++b1) {
                    if (!((a0 | a1) & 1u)) continue;  // c must be a unit
                    std::array<std::uint32_t, 4> cc{a0, a1, b0, b1};
                    if (normalizes(cc, 2)) level.push_back(cc);
                }
    for (int k = 2; k < n; ++k) {
        std::vector<std::array<std::uint32_t, 4>> next;
        for (const auto& s : level)
            for (std::uint32_t bits = 0; bits < 16; ++bits) {
                std::array<std::uint32_t, 4> cc = s;
                for (int t = 0; t < 4; ++t) cc[t] |= ((bits >> t) & 1u) << k;
                if (normalizes(cc, k + 1)) next.push_back(cc);
            }
        level = std::move(next);
    }
    for (const auto& cc : level) {
        StabilizerElement gal{GaloisRingElement(cc[0], cc[1], n),
                              GaloisRingElement(cc[2], cc[3], n), 1};
        // Conjugating i and j is necessary but not sufficient (w itself
        // need not conjugate back in); keep only a section whose closure
        // with the subgroup genuinely stabilizes at order 48.
        if (std::count(g24.elements.begin(), g24.elements.end(), gal * gal) != 1)
            continue;
        ClosureResult g48 = subgroup_closure({i, j, w, gal}, 48);
        if (g48.stabilized && g48.order() == 48) return gal;
    }
    throw std::logic_error("galois_section: no section lifted to full precision");
}

NormClass reduced_norm_class(const StabilizerElement& x) {
    if (!x.is_unit())
        throw std::invalid_argument("reduced_norm_class requires a unit");
    int n = x.precision();
    if (n < 2)
        throw std::invalid_argument("reduced_norm_class requires precision >= 2");
    std::uint32_t mask = GaloisRingElement::mask(n);
    std::uint32_t u = norm(x).scalar.a();
    std::uint32_t rep = ((u & 3u) == 1u) ? u : (0u - u) & mask;
    NormClass cls;
    cls.representative = rep;
    cls.precision = n;
    cls.trivial = rep == 1u;
    for (int k = 0; k < n; ++k) cls.digits.push_back(((rep >> k) & 1u) ? '1' : '0');
    return cls;
}

std::string StabilizerElement::to_string() const {
    std::ostringstream os;
    os << "(" << a.to_string() << ")";
    if (!b.is_zero()) os << " + (" << b.to_string() << ")*S";
    if (galois) os << ", phi";
    return os.str();
}

}  // namespace swdual
