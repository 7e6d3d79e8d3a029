#pragma once

#include "swdual/differential.hpp"
#include "swdual/f2.hpp"
#include "swdual/presentation.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace swdual {

/// One basis class of a slice together with the offset of its first F2
/// symbol.  A class of additive order 2^k over W(F4) contributes 2k
/// symbols: the elements 2^p * w^q * (class) for p in 0..k-1, q in 0..1.
struct SliceClass {
    Monomial m;
    int jexp = 0;
    int order_exp = 0;
    std::size_t symbol_base = 0;
};

/// A bidegree slice.  The symbol basis is fixed on E2; later pages are
/// tracked as surviving-cycle representatives plus the accumulated span
/// of differential images, both in E2 symbol coordinates.
struct Slice {
    int s = 0;
    int t = 0;
    std::vector<SliceClass> classes;
    std::size_t num_symbols = 0;
    std::vector<F2Vector> reps;
    F2Span boundaries;
    bool edge_unreliable = false;

    std::size_t dimension() const { return reps.size(); }
};

struct Contribution {
    int filtration = 0;
    std::string name;
    int order_exp = 0;  // 2-power order of the class; == N means free at precision
};

struct DetectionReport {
    int stem = 0;
    int page = 0;
    std::string assumption;
    std::vector<Contribution> contributions;
    std::size_t dimension = 0;
    std::vector<int> excluded_filtrations;

    std::string to_json() const;
    static DetectionReport from_json(const std::string& text);
};

struct PermanentCycleCertificate {
    std::string name;
    bool permanent = false;
    std::vector<std::string> evaluations;
};

struct PeriodicityResult {
    int tested = 0;
    int bijective = 0;
    int edge_excused = 0;
    std::vector<std::string> failures;

    bool clean() const { return tested == bijective + edge_excused && failures.empty(); }
};

/// The homotopy fixed point spectral sequence over a fixed window.
/// Construct, then run_to_einfty(); queries afterward are read-only.
class SpectralSequence {
public:
    SpectralSequence(const Presentation& p, const DifferentialSet& diffs, Window w);

    const Presentation& presentation() const { return pres_; }
    const Window& window() const { return w_; }
    int page() const { return r_; }

    const Slice* slice(int s, int t) const;

    /// Turn pages through every configured differential; d_r = 0 is
    /// assumed beyond the last configured page (recorded in reports).
    void run_to_einfty(int jobs = 1);

    DetectionReport detect(int stem) const;

    /// Evaluates every configured d_r on the element and reports whether
    /// all vanish; the certificate lists each page's evaluation.
    PermanentCycleCertificate check_permanent_cycle(const AlgebraElement& x) const;

    /// The d3 identity behind the j-divisibility contradiction: for
    /// g(j) = j^a G(j) with G a unit, d3 of D^2*c4*c6*eta^2*j^(a-1)*G
    /// equals D^2*kbar*eta*j^a*G.  Returns both sides; throws on
    /// inequality.
    std::pair<AlgebraElement, AlgebraElement> verify_lemma54(int a,
                                                             const TruncatedSeries& G) const;

    /// Multiplication by D is a class bijection (s,t) -> (s,t+24) on E2
    /// interior slices.
    PeriodicityResult delta_periodicity_e2() const;

    /// Multiplication by D^8 is a bijection on surviving classes between
    /// interior E-infinity slices 192 apart.
    PeriodicityResult delta8_periodicity_einfty(int jobs = 1) const;

    /// True if the element's class is nonzero on the current page: its
    /// coordinates lie in the surviving-cycle span but not in the
    /// accumulated boundary span.  Throws if the slice is edge-unreliable
    /// or lies outside the window.
    bool nonzero_on_page(const AlgebraElement& x) const;

    /// True if the element's class on the current page lies in j times
    /// the slice, i.e. in the span of the j-multiples of all slice
    /// symbols modulo boundaries.  Rewrite rules may present a j-multiple
    /// without any visible j factor, so this is a span test, not a
    /// valuation test.  Same preconditions as nonzero_on_page.
    bool j_multiple_on_page(const AlgebraElement& x) const;

    std::string encoded_assumption() const;

    /// Element represented by one symbol: 2^p * w^q * j^jexp * monomial.
    AlgebraElement symbol_element(const SliceClass& c, int p, int q) const;
    AlgebraElement rep_element(const Slice& sl, const F2Vector& v) const;
    std::string rep_name(const Slice& sl, const F2Vector& v) const;

private:
    struct SliceKey {
        int s, t;
        bool operator<(const SliceKey& o) const {
            return s != o.s ? s < o.s : t < o.t;
        }
    };

    void build_e2();
    void page_turn(const DifferentialSpec& spec, int jobs);
    std::optional<F2Vector> coords(const Slice& target, const AlgebraElement& x) const;
    Slice* find(int s, int t);
    const Slice* find(int s, int t) const;

    const Presentation& pres_;
    const DifferentialSet& diffs_;
    Window w_;
    int r_ = 2;
    std::map<SliceKey, Slice> slices_;
};

}  // namespace swdual
