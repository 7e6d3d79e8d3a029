#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swdual/presentation.hpp"

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

AlgebraElement nf(const std::string& expr) {
    return g24().normal_form(g24().parse(expr));
}

}  // namespace

TEST_CASE("bidegree inference recovers the three inferred generators") {
    const auto& p = g24();
    auto deg = [&](const char* name) {
        return p.bidegree(p.generator_monomial(p.generator_checked(name)));
    };
    CHECK(deg("mu") == Bidegree{1, 6});
    CHECK(deg("eps") == Bidegree{2, 10});
    CHECK(deg("kappa") == Bidegree{2, 16});
    CHECK(deg("kbar") == Bidegree{4, 24});
}

TEST_CASE("defining relations hold as normal-form identities") {
    CHECK(nf("c4^3") == nf("j*D"));
    CHECK(nf("c6^2") == nf("j*D - 1728*D"));
    CHECK(nf("eta*nu").is_zero());
    CHECK(nf("nu^3") == nf("eta*eps"));
    CHECK(nf("nu^4").is_zero());
    CHECK(nf("nu^2*kappa") == nf("4*kbar"));
    CHECK(nf("mu^2") == nf("eta^2*c4"));
    CHECK(nf("mu*c4") == nf("eta*c6"));
    CHECK(nf("mu*c6") == nf("eta*c4^2"));
    CHECK(nf("c4*kbar") == nf("eta^4*D"));
    CHECK(nf("c6*kbar") == nf("eta^3*mu*D"));
    CHECK(nf("j*kbar") == nf("eta^4*c4^2"));
    CHECK(nf("j*mu") == nf("eta*c4^2*c6*D^-1"));
    CHECK(nf("j*nu").is_zero());
    CHECK(nf("j*eps").is_zero());
    CHECK(nf("j*kappa").is_zero());
}

TEST_CASE("additive torsion orders") {
    CHECK(nf("2*eta").is_zero());
    CHECK(nf("2*mu").is_zero());
    CHECK(nf("2*eps").is_zero());
    CHECK(nf("2*kappa").is_zero());
    CHECK(!nf("2*nu").is_zero());
    CHECK(nf("4*nu").is_zero());
    CHECK(nf("2*nu^2").is_zero());
    CHECK(!nf("4*kbar").is_zero());
    CHECK(nf("8*kbar").is_zero());
    CHECK(nf("2*nu*kbar").is_zero() == false);
    CHECK(nf("4*nu*kbar").is_zero());
    CHECK(!nf("8*c4").is_zero());
}

TEST_CASE("normal form is independent of rewrite order") {
    const auto& p = g24();
    std::mt19937_64 rng(101);
    auto rand_range = [&](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    const int caps[9][2] = {{0, 4}, {0, 3}, {-2, 2}, {0, 6}, {0, 5},
                            {0, 3}, {0, 3}, {0, 3}, {0, 3}};
    for (int trial = 0; trial < 500; ++trial) {
        Monomial m(p.num_generators());
        for (std::size_t g = 0; g < p.num_generators(); ++g)
            m.set_exp(g, rand_range(caps[g][0], caps[g][1]));
        AlgebraElement x;
        TruncatedSeries c =
            TruncatedSeries::constant(GaloisRingElement(static_cast<std::uint32_t>(rng()),
                                                        static_cast<std::uint32_t>(rng()), 4),
                                      16)
                .shifted(rand_range(0, 3));
        x.add_term(m, c);
        auto det = p.normal_form(x, RewriteStrategy::Deterministic);
        for (std::uint64_t seed = 1; seed <= 4; ++seed)
            CHECK(det == p.normal_form(x, RewriteStrategy::Randomized, seed));
        // Idempotence.
        CHECK(det == p.normal_form(det));
    }
}

TEST_CASE("normal form preserves bidegree and irreducibility") {
    const auto& p = g24();
    auto check_one = [&](const std::string& expr) {
        auto x = p.parse(expr);
        auto n = p.normal_form(x);
        auto dx = p.bidegree(x);
        REQUIRE(dx.has_value());
        if (!n.is_zero()) {
            auto dn = p.bidegree(n);
            REQUIRE(dn.has_value());
            CHECK(*dx == *dn);
        }
        for (const auto& [m, f] : n.terms()) CHECK(p.is_irreducible(m));
    };
    check_one("c4^5*c6^3*D^-2");
    check_one("nu^2*kappa*kbar^2");
    check_one("mu^3*c4*c6");
    check_one("j^3*mu*kbar*D");
    check_one("eta^7*c6*kbar^2");
}

TEST_CASE("normal form is multiplicative") {
    const auto& p = g24();
    auto pairs = {
        std::pair<std::string, std::string>{"c4^2", "c4*kbar"},
        {"mu*c6", "mu*c4"},
        {"nu^2", "nu*kappa"},
        {"j*D + eta^2*c4*D", "c6*kbar"},
        {"c6", "c6*kbar^2"},
    };
    for (const auto& [a, b] : pairs) {
        auto x = p.parse(a), y = p.parse(b);
        auto lhs = p.multiply(x, y);
        auto rhs = p.multiply(p.normal_form(x), p.normal_form(y));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("basis in low bidegrees") {
    const auto& p = g24();
    Window w;
    auto names = [&](int s, int t) {
        std::vector<std::string> out;
        for (const auto& b : p.basis(s, t, w)) {
            std::string n = p.monomial_name(b.m);
            if (b.jexp > 0) n = "j^" + std::to_string(b.jexp) + "*" + n;
            out.push_back(n);
        }
        return out;
    };

    auto b00 = p.basis(0, 0, w);
    REQUIRE(b00.size() == static_cast<std::size_t>(w.j_max));
    CHECK(b00[0].m.is_one());
    CHECK(b00[0].order_exp == 4);

    auto b12 = names(1, 2);
    REQUIRE(b12.size() == static_cast<std::size_t>(w.j_max));
    CHECK(b12[0] == "eta");

    auto b14 = p.basis(1, 4, w);
    REQUIRE(b14.size() == 1);  // nu has no j ladder
    CHECK(p.monomial_name(b14[0].m) == "nu");
    CHECK(b14[0].order_exp == 2);

    auto b424 = names(4, 24);
    CHECK(std::count(b424.begin(), b424.end(), "kbar") == 1);

    // c4*kbar rewrites to eta^4*D, so only the latter is a basis class.
    auto b432 = names(4, 32);
    CHECK(std::count(b432.begin(), b432.end(), "D*eta^4") == 1);
    CHECK(std::count(b432.begin(), b432.end(), "c4*kbar") == 0);

    // kappa appears in (2,16) with no j ladder (j*kappa = 0); the
    // polynomial class eta^2*c6 in the same bidegree keeps its ladder.
    auto b216 = names(2, 16);
    CHECK(std::count(b216.begin(), b216.end(), "kappa") == 1);
    CHECK(std::count_if(b216.begin(), b216.end(), [](const std::string& n) {
              return n.find("kappa") != std::string::npos;
          }) == 1);
    CHECK(std::count(b216.begin(), b216.end(), "j^3*c6*eta^2") == 1);
}

TEST_CASE("basis is periodic under multiplication by the invertible generator") {
    const auto& p = g24();
    Window w;
    w.d_min = -1;
    w.d_max = 4;
    int d = p.generator_checked("D");
    for (auto [s, t] : {std::pair<int, int>{0, 8}, {1, 2}, {2, 16}, {4, 24}, {3, 30}}) {
        auto a = p.basis(s, t, w);
        auto b = p.basis(s, t + 24, w);
        std::size_t matched = 0;
        for (const auto& ca : a) {
            if (ca.m.exp(d) + 1 > w.d_max) continue;
            Monomial shifted = ca.m * p.generator_monomial(d);
            for (const auto& cb : b)
                if (cb.m == shifted && cb.jexp == ca.jexp && cb.order_exp == ca.order_exp)
                    ++matched;
        }
        std::size_t expected = 0;
        for (const auto& ca : a)
            if (ca.m.exp(d) + 1 <= w.d_max) ++expected;
        CHECK(matched == expected);
    }
}

TEST_CASE("malformed inputs are rejected") {
    CHECK_THROWS_AS(Presentation({{"x", 0, 2, false, -1, false}}, {"x^2 = x"}, 4, 8),
                    std::invalid_argument);  // inhomogeneous
    CHECK_THROWS_AS(Presentation({{"x", 0, 2, false, -1, false}}, {"x^2"}, 4, 8),
                    std::invalid_argument);  // missing '='
    CHECK_THROWS_AS(Presentation({{"x", 0, 2, false, -1, false}}, {"x + x^2 = 0"}, 4, 8),
                    std::invalid_argument);  // lhs not a single term
    CHECK_THROWS_AS(Presentation({{"j", 0, 0, false, -1, false}}, {}, 4, 8),
                    std::invalid_argument);  // reserved name
    // Generator with no bounding relation and s = 0 cannot be enumerated.
    Presentation flat({{"x", 0, 2, false, -1, false}}, {}, 4, 8);
    CHECK_THROWS_AS(flat.basis(0, 4, Window{}), std::invalid_argument);
}

TEST_CASE("rewrite budget bounds runaway reductions") {
    auto p = Presentation::load_json(
        slurp(std::string(SWDUAL_DATA_DIR) + "/g24.json"), 4, 16);
    p.set_rewrite_budget(2);
    CHECK_THROWS_AS(p.normal_form(p.parse("c4^5*c6^3*kbar^2")), std::runtime_error);
}
