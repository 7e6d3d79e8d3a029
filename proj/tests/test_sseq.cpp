#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swdual/page.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

using namespace swdual;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const Presentation& g24() {
    static Presentation p =
        Presentation::load_json(slurp(std::string(SWDUAL_DATA_DIR) + "/g24.json"), 4, 16);
    return p;
}

const DifferentialSet& diffs() {
    static DifferentialSet d = DifferentialSet::load_json(
        slurp(std::string(SWDUAL_DATA_DIR) + "/differentials.json"), g24());
    return d;
}

AlgebraElement nf(const std::string& expr) {
    return g24().normal_form(g24().parse(expr));
}

AlgebraElement d(int r, const std::string& expr) {
    const DifferentialSpec* spec = diffs().spec_for(r);
    REQUIRE(spec != nullptr);
    return apply_differential(g24(), *spec, nf(expr));
}

/// Coefficient series of an expression that normal-forms to a multiple of
/// the unit monomial.
TruncatedSeries series(const std::string& expr) {
    AlgebraElement x = nf(expr);
    REQUIRE(x.terms().size() == 1);
    REQUIRE(x.terms().begin()->first == g24().unit_monomial());
    return x.terms().begin()->second;
}

/// The full-window spectral sequence, run to the last configured page.
/// Shared across test cases; queries after run_to_einfty are read-only.
const SpectralSequence& einfty() {
    static SpectralSequence* s = [] {
        auto* ss = new SpectralSequence(g24(), diffs(), Window{});
        ss->run_to_einfty(4);
        return ss;
    }();
    return *s;
}

/// Random monomial within small exponent caps; D-exponent drawn even when
/// `even_delta` is set (the page-7 differential is a derivation with
/// respect to D^2, so raw-operator identities hold on the even part).
/// `no_mu` additionally avoids the generator whose j-multiple rewrites to
/// an odd D-power.
AlgebraElement random_element(std::mt19937_64& rng, bool even_delta, bool no_mu = false) {
    const Presentation& p = g24();
    auto pick = [&](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
    };
    Monomial m = p.unit_monomial();
    int dexp = pick(-2, 3);
    if (even_delta && (dexp & 1)) dexp += 1;
    m.set_exp(p.generator_checked("D"), dexp);
    m.set_exp(p.generator_checked("c4"), pick(0, 2));
    m.set_exp(p.generator_checked("c6"), pick(0, 1));
    m.set_exp(p.generator_checked("eta"), pick(0, 3));
    m.set_exp(p.generator_checked("nu"), pick(0, 2));
    m.set_exp(p.generator_checked("mu"), no_mu ? 0 : pick(0, 1));
    m.set_exp(p.generator_checked("eps"), pick(0, 1));
    m.set_exp(p.generator_checked("kappa"), pick(0, 1));
    m.set_exp(p.generator_checked("kbar"), pick(0, 2));
    TruncatedSeries f = TruncatedSeries::constant(
        GaloisRingElement(static_cast<std::uint32_t>(rng()), static_cast<std::uint32_t>(rng()),
                          p.precision()),
        p.truncation());
    f = f + TruncatedSeries::power_of_j(static_cast<int>(rng() % 3), p.precision(),
                                        p.truncation());
    AlgebraElement x;
    x.add_term(m, f);
    return x;
}

}  // namespace

TEST_CASE("differential configuration loads and validates") {
    const auto& ds = diffs();
    CHECK(ds.max_page() == 13);
    CHECK(ds.specs().size() == 6);
    for (int r : {3, 5, 7, 9, 11, 13}) REQUIRE(ds.spec_for(r) != nullptr);
    CHECK(ds.spec_for(4) == nullptr);
    CHECK(ds.spec_for(7)->values.at(0).power == 2);
    CHECK(ds.spec_for(9)->exceptional.size() == 4);
    CHECK(ds.spec_for(11)->exceptional.size() == 1);
    CHECK(ds.spec_for(13)->exceptional.size() == 3);

    // A value of the wrong bidegree is rejected.
    DifferentialSpec bad;
    bad.r = 3;
    bad.values.push_back({"c6", 1, nf("eta^3"), "d3(c6) = eta^3"});
    CHECK_THROWS_AS(DifferentialSet({bad}, g24()), std::invalid_argument);
}

TEST_CASE("class-level differential entries validate") {
    auto make = [](int r, AlgebraElement src, AlgebraElement val) {
        DifferentialSpec spec;
        spec.r = r;
        spec.exceptional.push_back({std::move(src), std::move(val), "test entry"});
        return DifferentialSet({spec}, g24());
    };
    // The configured page-13 entry is accepted on its own.
    CHECK_NOTHROW(make(13, nf("2*nu*kbar*D^3"), nf("kappa*kbar^4")));
    // Wrong value bidegree for the page.
    CHECK_THROWS_AS(make(13, nf("2*nu*kbar*D^3"), nf("kappa*kbar^4*D")),
                    std::invalid_argument);
    // Source must be one additive symbol: homogeneous ...
    CHECK_THROWS_AS(make(13, nf("2*nu*kbar*D^3") + nf("eta"), nf("kappa*kbar^4")),
                    std::invalid_argument);
    // ... carrying a single j-power ...
    CHECK_THROWS_AS(make(11, nf("eta*kappa*D^2 + j*eta*kappa*D^2"), nf("eta^2*kbar^3")),
                    std::invalid_argument);
    // ... with coefficient 2^p or 2^p*w.
    CHECK_THROWS_AS(make(13, nf("3*nu*kbar*D^3"), nf("3*kappa*kbar^4")),
                    std::invalid_argument);
    CHECK_NOTHROW(make(13, nf("2*w*nu*kbar*D^3"), nf("w*kappa*kbar^4")));
}

TEST_CASE("page-3 differential on generators and small products") {
    CHECK(d(3, "c6") == nf("c4*eta^3"));
    CHECK(d(3, "mu") == nf("eta^4"));
    // Consistency of d3 with the relation mu*c4 = eta*c6.
    CHECK(d(3, "mu*c4") == d(3, "eta*c6"));
    CHECK(d(3, "c4").is_zero());
    CHECK(d(3, "D").is_zero());
    CHECK(d(3, "eta").is_zero());
    CHECK(d(3, "kbar").is_zero());
    CHECK(d(3, "c6^2") == nf("2*c6*c4*eta^3"));
    // The j-divisibility identity: d3(c6*c4*eta) lands on j*kbar, whose
    // normal form is c4^2*eta^4.
    CHECK(d(3, "c6*c4*eta") == nf("j*kbar"));
    CHECK(d(3, "c6*c4*eta") == nf("c4^2*eta^4"));
    CHECK_FALSE(d(3, "c6*c4*eta").is_zero());
}

TEST_CASE("page-5 and page-7 differentials follow the power convention") {
    CHECK(d(5, "D") == nf("kbar*nu"));
    CHECK(d(5, "D^-1") == nf("-D^-2*kbar*nu"));
    CHECK(d(5, "D^2") == nf("2*D*kbar*nu"));
    CHECK_FALSE(d(5, "D^2").is_zero());  // 2*nu*kbar has order 4
    CHECK(d(5, "D*eta") == nf("kbar*nu*eta"));
    CHECK(d(5, "D*eta").is_zero());  // eta*nu = 0

    CHECK(d(7, "D^2") == nf("D*kbar*eta^3"));
    CHECK(d(7, "D^3") == nf("D^2*kbar*eta^3"));
    CHECK(d(7, "D").is_zero());
    CHECK(d(7, "D*eta").is_zero());
    CHECK(d(7, "D^-1") == nf("-D^-2*kbar*eta^3"));
    CHECK(d(7, "D^-2") == nf("-D^-3*kbar*eta^3"));
    // Consistency with Leibniz on the even part: d7(D^2 * D^-2) = 0.
    // Comparison must be in normal form: the two raw terms carry
    // coefficients 1 and -1 = 1 on the 2-torsion class D^-1*eta^3*kbar,
    // so they accumulate to 2*(...) and only the rewrite 2*eta = 0
    // cancels them.
    CHECK(g24()
              .normal_form(g24().multiply(d(7, "D^2"), nf("D^-2")) +
                           g24().multiply(nf("D^2"), d(7, "D^-2")))
              .is_zero());
}

TEST_CASE("Leibniz rule holds on random pairs for every page") {
    const Presentation& p = g24();
    std::mt19937_64 rng(0x5eed);
    for (const auto& spec : diffs().specs()) {
        bool even_delta = false;
        for (const auto& gd : spec.values) even_delta |= gd.power > 1;
        for (int i = 0; i < 300; ++i) {
            AlgebraElement x = random_element(rng, even_delta);
            AlgebraElement y = random_element(rng, even_delta);
            AlgebraElement lhs = apply_differential(p, spec, p.multiply(x, y));
            AlgebraElement rhs = p.multiply(apply_differential(p, spec, x), y) +
                                 p.multiply(x, apply_differential(p, spec, y));
            CHECK(lhs == p.normal_form(rhs));
        }
    }
}

TEST_CASE("differentials are j-linear") {
    const Presentation& p = g24();
    AlgebraElement j = p.parse("j");
    std::mt19937_64 rng(0x10b);
    for (const auto& spec : diffs().specs()) {
        bool even_delta = false;
        for (const auto& gd : spec.values) even_delta |= gd.power > 1;
        for (int i = 0; i < 200; ++i) {
            AlgebraElement x = random_element(rng, even_delta, even_delta);
            CHECK(apply_differential(p, spec, p.multiply(j, x)) ==
                  p.multiply(j, apply_differential(p, spec, x)));
        }
    }
}

TEST_CASE("d squared vanishes on random elements") {
    const Presentation& p = g24();
    std::mt19937_64 rng(0xdd);
    for (const auto& spec : diffs().specs()) {
        bool power_page = false;
        for (const auto& gd : spec.values) power_page |= gd.power > 1;
        // When a value is attached to a generator power, the raw Leibniz
        // operator squares to zero only modulo boundaries of earlier
        // pages (witness: on c4*D^2 the page-7 operator squares to
        // kbar*eta^10*D, a page-3 boundary).  That containment is
        // checked slice by slice inside the page engine, so the raw
        // identity is only asserted for derivations.
        if (power_page) continue;
        for (int i = 0; i < 200; ++i) {
            AlgebraElement x = random_element(rng, false);
            CHECK(apply_differential(p, spec, apply_differential(p, spec, x)).is_zero());
        }
    }
}

TEST_CASE("E2 slices agree with basis enumeration") {
    Window w;
    SpectralSequence e2(g24(), diffs(), w);
    CHECK(e2.page() == 2);
    for (auto [s, t] : std::vector<std::pair<int, int>>{
             {0, 0}, {1, 2}, {1, 4}, {2, 16}, {4, 32}, {5, 50}, {3, 2}}) {
        auto want = g24().basis(s, t, w);
        const Slice* sl = e2.slice(s, t);
        REQUIRE(sl != nullptr);
        REQUIRE(sl->classes.size() == want.size());
        std::sort(want.begin(), want.end(), [](const BasisClass& a, const BasisClass& b) {
            if (a.m != b.m) return a.m < b.m;
            return a.jexp < b.jexp;
        });
        for (std::size_t i = 0; i < want.size(); ++i) {
            CHECK(sl->classes[i].m == want[i].m);
            CHECK(sl->classes[i].jexp == want[i].jexp);
            CHECK(sl->classes[i].order_exp == want[i].order_exp);
        }
    }
    // The (0,0) slice is the free rank-1 module over the coefficient
    // series ring: 16 j-powers, each with 8 F2 symbols at precision 4.
    const Slice* origin = e2.slice(0, 0);
    REQUIRE(origin != nullptr);
    CHECK(origin->classes.size() == 16);
    CHECK(origin->num_symbols == 128);
    CHECK(origin->reps.size() == 128);
    CHECK_FALSE(origin->edge_unreliable);
}

TEST_CASE("stem 45 detects exactly the two expected classes in filtration 5") {
    DetectionReport rep = einfty().detect(45);
    CHECK(rep.dimension == 2);
    REQUIRE(rep.contributions.size() == 2);
    std::vector<std::string> names;
    for (const auto& c : rep.contributions) {
        CHECK(c.filtration == 5);
        CHECK(c.order_exp == 1);
        names.push_back(c.name);
    }
    std::sort(names.begin(), names.end());
    CHECK(names == std::vector<std::string>{"D*eta*kbar", "w*D*eta*kbar"});
}

TEST_CASE("stems -1, 63 and 127 detect nothing") {
    for (int stem : {-1, 63, 127}) {
        DetectionReport rep = einfty().detect(stem);
        CHECK(rep.dimension == 0);
        CHECK(rep.contributions.empty());
    }
}

TEST_CASE("stem 0 keeps the full filtration-0 coefficient module") {
    DetectionReport rep = einfty().detect(0);
    std::size_t filt0 = 0;
    bool unit_seen = false;
    for (const auto& c : rep.contributions) {
        if (c.filtration != 0) continue;
        ++filt0;
        if (c.name == "1") {
            unit_seen = true;
            CHECK(c.order_exp == 4);
        }
    }
    CHECK(filt0 == 128);
    CHECK(unit_seen);
    CHECK(rep.assumption == einfty().encoded_assumption());
}

TEST_CASE("products with kbar*eta survive while d3 boundaries die") {
    // (D*eta*kbar) * (eta*kbar) is nonzero at the last page.
    CHECK(einfty().nonzero_on_page(nf("D*kbar^2*eta^2")));
    // c4^2*eta^5*D is the d3 image of c4*c6*eta^2*D, hence a boundary.
    CHECK_FALSE(einfty().nonzero_on_page(nf("c4^2*eta^5*D")));
    CHECK_FALSE(einfty().nonzero_on_page(nf("0")));
    CHECK_THROWS_AS(einfty().nonzero_on_page(nf("1") + nf("eta")), std::invalid_argument);
}

TEST_CASE("the d3 source/target identity holds for unit coefficient series") {
    auto [lhs, rhs] = einfty().verify_lemma54(1, series("1"));
    CHECK(lhs == rhs);
    CHECK(lhs == nf("c4^2*eta^5*D^2"));

    einfty().verify_lemma54(2, series("1+j"));
    einfty().verify_lemma54(3, series("w"));
    einfty().verify_lemma54(4, series("w^2 + 3*j + 5*j^2"));

    CHECK_THROWS_AS(einfty().verify_lemma54(0, series("1")), std::invalid_argument);
    CHECK_THROWS_AS(einfty().verify_lemma54(1, series("j")), std::invalid_argument);
    CHECK_THROWS_AS(einfty().verify_lemma54(1, series("2")), std::invalid_argument);
}

TEST_CASE("permanent cycle certificates") {
    auto unit = einfty().check_permanent_cycle(nf("1"));
    CHECK(unit.permanent);
    CHECK(unit.evaluations.size() == diffs().specs().size());

    CHECK(einfty().check_permanent_cycle(nf("D^8")).permanent);
    CHECK(einfty().check_permanent_cycle(nf("D*eta*kbar")).permanent);

    // A class-level differential makes its source non-permanent even
    // though the Leibniz extension vanishes on it.
    auto exc = einfty().check_permanent_cycle(nf("eta*kappa*D^2"));
    CHECK_FALSE(exc.permanent);
    bool d11_nonzero = false;
    for (const auto& e : exc.evaluations)
        if (e.rfind("d11(", 0) == 0 && e.find("= 0") == std::string::npos) d11_nonzero = true;
    CHECK(d11_nonzero);

    auto delta = einfty().check_permanent_cycle(nf("D"));
    CHECK_FALSE(delta.permanent);
    bool d5_nonzero = false;
    for (const auto& e : delta.evaluations)
        if (e.rfind("d5(", 0) == 0 && e.find("= 0") == std::string::npos) d5_nonzero = true;
    CHECK(d5_nonzero);
}

TEST_CASE("D-periodicity of E2 and D^8-periodicity of the last page") {
    PeriodicityResult e2 = einfty().delta_periodicity_e2();
    CHECK(e2.clean());
    CHECK(e2.tested > 100);
    CHECK(e2.bijective > 0);

    PeriodicityResult inf = einfty().delta8_periodicity_einfty();
    CHECK(inf.clean());
    CHECK(inf.tested > 0);
    CHECK(inf.bijective > 0);
}

TEST_CASE("edge flags appear at the stem boundary but not at tested stems") {
    CHECK_FALSE(einfty().detect(208).excluded_filtrations.empty());
    // Filtration 15 at stem 45 carries a class whose page-9 image has
    // D-exponent below the window, so it is excluded rather than
    // certified; the higher entries are its downstream propagation.
    CHECK(einfty().detect(45).excluded_filtrations == std::vector<int>{15, 17, 21, 25});
    for (int stem : {44, 46, 0, 3}) {
        DetectionReport rep = einfty().detect(stem);
        CHECK(rep.page == 14);
        // Low filtrations at nearby stems stay certified.
        for (int f : rep.excluded_filtrations) CHECK(f >= 3);
        CHECK((rep.excluded_filtrations.empty() || rep.excluded_filtrations.front() >= 3));
    }
}

TEST_CASE("detection reports round-trip through JSON") {
    DetectionReport rep = einfty().detect(45);
    DetectionReport back = DetectionReport::from_json(rep.to_json());
    CHECK(back.stem == rep.stem);
    CHECK(back.page == rep.page);
    CHECK(back.assumption == rep.assumption);
    CHECK(back.dimension == rep.dimension);
    CHECK(back.excluded_filtrations == rep.excluded_filtrations);
    REQUIRE(back.contributions.size() == rep.contributions.size());
    for (std::size_t i = 0; i < rep.contributions.size(); ++i) {
        CHECK(back.contributions[i].filtration == rep.contributions[i].filtration);
        CHECK(back.contributions[i].name == rep.contributions[i].name);
        CHECK(back.contributions[i].order_exp == rep.contributions[i].order_exp);
    }
}
