#include "swdual/presentation.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace swdual {
namespace {

// Exact rationals for the (tiny) bidegree-inference solve.
struct Frac {
    long long n = 0, d = 1;

    Frac() = default;
    Frac(long long v) : n(v), d(1) {}
    Frac(long long nn, long long dd) : n(nn), d(dd) { norm(); }

    void norm() {
        if (d < 0) { n = -n; d = -d; }
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n == 0) d = 1;
    }
    bool is_zero() const { return n == 0; }
    Frac operator+(const Frac& o) const { return {n * o.d + o.n * d, d * o.d}; }
    Frac operator-(const Frac& o) const { return {n * o.d - o.n * d, d * o.d}; }
    Frac operator*(const Frac& o) const { return {n * o.n, d * o.d}; }
    Frac operator/(const Frac& o) const { return {n * o.d, d * o.n}; }
};

bool is_power_of_two(std::uint32_t v) { return v != 0 && (v & (v - 1)) == 0; }

int log2_exact(std::uint32_t v) {
    int k = 0;
    while (v > 1) { v >>= 1; ++k; }
    return k;
}

}  // namespace

int Presentation::find_generator(const std::string& name) const {
    for (std::size_t g = 0; g < gens_.size(); ++g)
        if (gens_[g].name == name) return static_cast<int>(g);
    return -1;
}

int Presentation::generator_checked(const std::string& name) const {
    int g = find_generator(name);
    if (g < 0) throw std::invalid_argument("unknown generator '" + name + "'");
    return g;
}

ExpressionContext Presentation::expression_context() const {
    ExpressionContext ctx;
    ctx.find_generator = [this](const std::string& s) { return find_generator(s); };
    ctx.is_invertible = [this](int g) { return gens_[g].invertible; };
    ctx.num_generators = gens_.size();
    ctx.precision = n_;
    ctx.truncation = m_;
    return ctx;
}

AlgebraElement Presentation::parse(const std::string& text) const {
    return parse_expression(text, expression_context());
}

Presentation::Presentation(std::vector<GeneratorSpec> gens,
                           const std::vector<std::string>& relations, int N, int M)
    : gens_(std::move(gens)), n_(N), m_(M) {
    if (N < 2 || M < 1) throw std::invalid_argument("precision out of range (N >= 2, M >= 1)");
    for (const auto& g : gens_) {
        if (g.name == "j" || g.name == "w")
            throw std::invalid_argument("'" + g.name + "' is a reserved symbol");
        if (g.order_exp >= 0 && g.order_exp > N)
            throw std::invalid_argument("generator order exceeds 2^N: " + g.name);
    }
    // Generator additive orders become single-generator torsion rules.
    for (std::size_t g = 0; g < gens_.size(); ++g) {
        if (gens_[g].order_exp >= 0)
            torsion_.push_back({generator_monomial(static_cast<int>(g)), gens_[g].order_exp});
    }
    classify_relations(relations);
    infer_bidegrees();
    validate_homogeneity();
    compute_power_caps();
}

void Presentation::classify_relations(const std::vector<std::string>& relations) {
    for (const auto& rel : relations) {
        auto eq = rel.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("relation missing '=': " + rel);
        AlgebraElement lhs = parse(rel.substr(0, eq));
        AlgebraElement rhs = parse(rel.substr(eq + 1));
        if (lhs.terms().size() != 1)
            throw std::invalid_argument("relation lhs must be a single term: " + rel);
        const auto& [m, f] = *lhs.terms().begin();
        int v = f.valuation();
        // The lhs coefficient must be c * j^v with nothing above j^v.
        GaloisRingElement c = v < f.truncation() ? f.coeff(v) : GaloisRingElement::zero(n_);
        for (int k = v + 1; k < f.truncation(); ++k)
            if (!f.coeff(k).is_zero())
                throw std::invalid_argument("relation lhs coefficient not a monomial: " + rel);
        if (!c.is_rational())
            throw std::invalid_argument("relation lhs coefficient must be rational: " + rel);

        if (c.a() == 1 && v == 0) {
            rules_.push_back({m, false, rhs, rel});
        } else if (c.a() == 1 && v == 1) {
            jrules_.push_back({m, true, rhs, rel});
        } else if (v == 0 && is_power_of_two(c.a()) && rhs.is_zero()) {
            // 2^e * m = 0: coefficients on multiples of m live mod 2^e.
            torsion_.push_back({m, log2_exact(c.a())});
        } else {
            throw std::invalid_argument("unsupported relation orientation: " + rel);
        }
    }
}

void Presentation::infer_bidegrees() {
    std::vector<int> unknown;  // generator indices
    for (std::size_t g = 0; g < gens_.size(); ++g)
        if (gens_[g].infer) unknown.push_back(static_cast<int>(g));
    if (unknown.empty()) return;

    const std::size_t nu = unknown.size();
    std::vector<int> col(gens_.size(), -1);
    for (std::size_t i = 0; i < nu; ++i) col[unknown[i]] = static_cast<int>(i);

    // One equation per (rule, rhs-term): coefficients on unknown bidegrees,
    // separate right-hand sides for s and t.
    struct Eq {
        std::vector<Frac> a;
        Frac bs, bt;
    };
    std::vector<Eq> eqs;
    auto add_rule = [&](const RewriteRule& r) {
        for (const auto& [rm, rf] : r.rhs.terms()) {
            Eq e;
            e.a.assign(nu, Frac(0));
            long long ks = 0, kt = 0;
            for (std::size_t g = 0; g < gens_.size(); ++g) {
                int diff = r.lhs.exp(g) - rm.exp(g);
                if (diff == 0) continue;
                if (col[g] >= 0) {
                    e.a[col[g]] = e.a[col[g]] + Frac(diff);
                } else {
                    ks -= static_cast<long long>(diff) * gens_[g].s;
                    kt -= static_cast<long long>(diff) * gens_[g].t;
                }
            }
            e.bs = Frac(ks);
            e.bt = Frac(kt);
            eqs.push_back(std::move(e));
        }
    };
    for (const auto& r : rules_) add_rule(r);
    for (const auto& r : jrules_) add_rule(r);

    // Gaussian elimination; the same coefficient matrix serves both the
    // s-system and the t-system.
    std::size_t rank = 0;
    std::vector<int> pivot_col;
    for (std::size_t c = 0; c < nu && rank < eqs.size(); ++c) {
        std::size_t p = rank;
        while (p < eqs.size() && eqs[p].a[c].is_zero()) ++p;
        if (p == eqs.size()) continue;
        std::swap(eqs[p], eqs[rank]);
        Frac inv = Frac(1) / eqs[rank].a[c];
        for (auto& x : eqs[rank].a) x = x * inv;
        eqs[rank].bs = eqs[rank].bs * inv;
        eqs[rank].bt = eqs[rank].bt * inv;
        for (std::size_t r = 0; r < eqs.size(); ++r) {
            if (r == rank || eqs[r].a[c].is_zero()) continue;
            Frac f = eqs[r].a[c];
            for (std::size_t cc = 0; cc < nu; ++cc)
                eqs[r].a[cc] = eqs[r].a[cc] - f * eqs[rank].a[cc];
            eqs[r].bs = eqs[r].bs - f * eqs[rank].bs;
            eqs[r].bt = eqs[r].bt - f * eqs[rank].bt;
        }
        pivot_col.push_back(static_cast<int>(c));
        ++rank;
    }
    if (rank < nu) {
        std::string missing;
        for (std::size_t c = 0; c < nu; ++c)
            if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(c)) ==
                pivot_col.end())
                missing += (missing.empty() ? "" : ", ") + gens_[unknown[c]].name;
        throw std::invalid_argument("bidegree inference underdetermined for: " + missing);
    }
    for (std::size_t r = rank; r < eqs.size(); ++r)
        if (!eqs[r].bs.is_zero() || !eqs[r].bt.is_zero())
            throw std::invalid_argument(
                "bidegree inference inconsistent (check the relation list)");
    for (std::size_t r = 0; r < rank; ++r) {
        int g = unknown[pivot_col[r]];
        if (eqs[r].bs.d != 1 || eqs[r].bt.d != 1 || eqs[r].bs.n < 0)
            throw std::invalid_argument("bidegree inference produced a non-integral degree for " +
                                        gens_[g].name);
        gens_[g].s = static_cast<int>(eqs[r].bs.n);
        gens_[g].t = static_cast<int>(eqs[r].bt.n);
        gens_[g].infer = false;
    }
}

void Presentation::validate_homogeneity() const {
    auto check = [&](const RewriteRule& r) {
        Bidegree dl = bidegree(r.lhs);
        for (const auto& [rm, rf] : r.rhs.terms()) {
            Bidegree dr = bidegree(rm);
            if (dl != dr)
                throw std::invalid_argument("relation not bidegree-homogeneous: " + r.text);
        }
    };
    for (const auto& r : rules_) check(r);
    for (const auto& r : jrules_) check(r);
}

void Presentation::compute_power_caps() {
    power_cap_.assign(gens_.size(), -1);
    for (const auto& r : rules_) {
        // Pure power lhs g^k bounds the irreducible exponent of g to k-1.
        int g = -1, k = 0;
        bool pure = true;
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (r.lhs.exp(i) == 0) continue;
            if (g >= 0) { pure = false; break; }
            g = static_cast<int>(i);
            k = r.lhs.exp(i);
        }
        if (pure && g >= 0) {
            int cap = k - 1;
            if (power_cap_[g] < 0 || cap < power_cap_[g]) power_cap_[g] = cap;
        }
    }
}

Bidegree Presentation::bidegree(const Monomial& m) const {
    Bidegree d;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
        d.s += m.exp(g) * gens_[g].s;
        d.t += m.exp(g) * gens_[g].t;
    }
    return d;
}

std::optional<Bidegree> Presentation::bidegree(const AlgebraElement& x) const {
    std::optional<Bidegree> d;
    for (const auto& [m, f] : x.terms()) {
        Bidegree dm = bidegree(m);
        if (!d) d = dm;
        else if (*d != dm) return std::nullopt;
    }
    return d;
}

int Presentation::order_exp(const Monomial& m) const {
    int e = n_;
    for (const auto& tr : torsion_)
        if (m.divisible_by(tr.m)) e = std::min(e, tr.k);
    return e;
}

TruncatedSeries Presentation::reduced(const Monomial& m, const TruncatedSeries& f) const {
    return f.reduced_mod_pow2(order_exp(m));
}

bool Presentation::is_irreducible(const Monomial& m) const {
    for (const auto& r : rules_)
        if (m.divisible_by(r.lhs)) return false;
    return true;
}

AlgebraElement Presentation::normal_form(const AlgebraElement& x, RewriteStrategy strategy,
                                         std::uint64_t seed) const {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    const bool randomized = strategy == RewriteStrategy::Randomized;

    std::vector<std::pair<Monomial, TruncatedSeries>> work(x.terms().begin(),
                                                           x.terms().end());
    AlgebraElement out;
    std::uint64_t steps = 0;

    while (!work.empty()) {
        std::size_t pick = work.size() - 1;
        if (randomized) pick = rng() % work.size();
        Monomial m = work[pick].first;
        TruncatedSeries f = reduced(m, work[pick].second);
        work.erase(work.begin() + pick);
        if (f.is_zero()) continue;
        if (++steps > budget_)
            throw std::runtime_error(
                "normal_form exceeded rewrite step budget (suspected non-terminating "
                "rule configuration)");

        int hit = -1;
        if (randomized) {
            std::vector<int> applicable;
            for (std::size_t i = 0; i < rules_.size(); ++i)
                if (m.divisible_by(rules_[i].lhs)) applicable.push_back(static_cast<int>(i));
            if (!applicable.empty()) hit = applicable[rng() % applicable.size()];
        } else {
            for (std::size_t i = 0; i < rules_.size(); ++i)
                if (m.divisible_by(rules_[i].lhs)) { hit = static_cast<int>(i); break; }
        }
        if (hit >= 0) {
            Monomial q = m / rules_[hit].lhs;
            for (const auto& [rm, rf] : rules_[hit].rhs.terms())
                work.emplace_back(rm * q, rf * f);
            continue;
        }

        if (f.valuation() >= 1) {
            int jhit = -1;
            for (std::size_t i = 0; i < jrules_.size(); ++i)
                if (m.divisible_by(jrules_[i].lhs)) { jhit = static_cast<int>(i); break; }
            if (jhit >= 0) {
                // f = f(0) + j*f1; consume one factor of j.
                TruncatedSeries c0 =
                    TruncatedSeries::constant(f.coeff(0), f.truncation());
                TruncatedSeries f1 = (f - c0).shifted(-1);
                if (!c0.is_zero()) out.add_term(m, c0);
                Monomial q = m / jrules_[jhit].lhs;
                for (const auto& [rm, rf] : jrules_[jhit].rhs.terms())
                    work.emplace_back(rm * q, rf * f1);
                continue;
            }
        }
        out.add_term(m, f);
    }

    AlgebraElement result;
    for (const auto& [m, f] : out.terms()) result.add_term(m, reduced(m, f));
    return result;
}

AlgebraElement Presentation::multiply_raw(const AlgebraElement& x,
                                          const AlgebraElement& y) const {
    AlgebraElement r;
    for (const auto& [mx, fx] : x.terms()) {
        int tx = bidegree(mx).t;
        for (const auto& [my, fy] : y.terms()) {
            int ty = bidegree(my).t;
            TruncatedSeries f = fx * fy;
            // Koszul sign on internal degree; all generators here are even,
            // so this branch is never taken for the shipped presentation.
            if ((tx & 1) && (ty & 1)) f = -f;
            r.add_term(mx * my, f);
        }
    }
    return r;
}

AlgebraElement Presentation::multiply(const AlgebraElement& x, const AlgebraElement& y) const {
    return normal_form(multiply_raw(x, y));
}

std::vector<BasisClass> Presentation::basis(int s, int t, const Window& w) const {
    if (w.d_min > w.d_max)
        throw std::invalid_argument("window has empty range for invertible generators");

    std::vector<int> inv, fin;
    for (std::size_t g = 0; g < gens_.size(); ++g)
        (gens_[g].invertible ? inv : fin).push_back(static_cast<int>(g));
    for (int g : fin)
        if (gens_[g].s == 0 && power_cap_[g] < 0)
            throw std::invalid_argument("basis enumeration unbounded for generator " +
                                        gens_[g].name);

    std::vector<BasisClass> out;
    Monomial m(gens_.size());

    auto emit = [&](const Monomial& mono) {
        if (!is_irreducible(mono)) return;
        int ord = order_exp(mono);
        out.push_back({mono, 0, ord});
        bool j_free = true;
        for (const auto& r : jrules_)
            if (mono.divisible_by(r.lhs)) { j_free = false; break; }
        if (j_free)
            for (int a = 1; a < w.j_max; ++a) out.push_back({mono, a, ord});
    };

    // Invertible generators range over the window; the rest have positive
    // s or a finite power cap, so the search is finite.
    std::function<void(std::size_t, int, int)> rec_fin = [&](std::size_t i, int cs, int ct) {
        if (cs > s || ct > t) return;
        if (i == fin.size()) {
            if (cs == s && ct == t) emit(m);
            return;
        }
        int g = fin[i];
        int cap;
        if (gens_[g].s > 0)
            cap = (s - cs) / gens_[g].s;
        else
            cap = power_cap_[g];
        if (gens_[g].t > 0) cap = std::min(cap, (t - ct) / gens_[g].t);
        for (int e = 0; e <= cap; ++e) {
            m.set_exp(g, e);
            rec_fin(i + 1, cs + e * gens_[g].s, ct + e * gens_[g].t);
        }
        m.set_exp(g, 0);
    };
    std::function<void(std::size_t, int, int)> rec_inv = [&](std::size_t i, int cs, int ct) {
        if (i == inv.size()) {
            rec_fin(0, cs, ct);
            return;
        }
        int g = inv[i];
        for (int e = w.d_min; e <= w.d_max; ++e) {
            m.set_exp(g, e);
            rec_inv(i + 1, cs + e * gens_[g].s, ct + e * gens_[g].t);
        }
        m.set_exp(g, 0);
    };
    rec_inv(0, 0, 0);

    std::sort(out.begin(), out.end(), [](const BasisClass& a, const BasisClass& b) {
        if (a.m != b.m) return a.m < b.m;
        return a.jexp < b.jexp;
    });
    return out;
}

Monomial Presentation::generator_monomial(int g, int e) const {
    Monomial m(gens_.size());
    m.set_exp(g, e);
    return m;
}

AlgebraElement Presentation::generator_element(const std::string& name, int e) const {
    AlgebraElement x;
    x.add_term(generator_monomial(generator_checked(name), e),
               TruncatedSeries::one(n_, m_));
    return x;
}

AlgebraElement Presentation::monomial_element(const Monomial& m) const {
    AlgebraElement x;
    x.add_term(m, TruncatedSeries::one(n_, m_));
    return x;
}

std::string Presentation::monomial_name(const Monomial& m) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
        if (m.exp(g) == 0) continue;
        if (!first) os << "*";
        first = false;
        os << gens_[g].name;
        if (m.exp(g) != 1) os << "^" << m.exp(g);
    }
    if (first) os << "1";
    return os.str();
}

std::string Presentation::to_string(const AlgebraElement& x) const {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, f] : x.terms()) {
        if (!first) os << " + ";
        first = false;
        std::string coef = f.to_string();
        std::string name = monomial_name(m);
        if (coef == "1") {
            os << name;
        } else if (name == "1") {
            os << coef;
        } else {
            bool composite = coef.find('+') != std::string::npos ||
                             coef.find(' ') != std::string::npos;
            os << (composite ? "(" + coef + ")" : coef) << "*" << name;
        }
    }
    return os.str();
}

Presentation Presentation::load_json(const std::string& json_text, int N, int M) {
    nlohmann::json doc = nlohmann::json::parse(json_text);
    std::vector<GeneratorSpec> gens;
    for (const auto& g : doc.at("generators")) {
        GeneratorSpec spec;
        spec.name = g.at("name").get<std::string>();
        if (g.at("s").is_string()) {
            if (g.at("s").get<std::string>() != "infer")
                throw std::invalid_argument("generator s must be an integer or \"infer\"");
            spec.infer = true;
        } else {
            spec.s = g.at("s").get<int>();
            if (g.at("t").is_string()) throw std::invalid_argument("partial infer for " + spec.name);
            spec.t = g.at("t").get<int>();
        }
        if (g.contains("order") && !g.at("order").is_string()) {
            int ord = g.at("order").get<int>();
            if (!is_power_of_two(static_cast<std::uint32_t>(ord)))
                throw std::invalid_argument("additive order must be a power of 2: " + spec.name);
            spec.order_exp = log2_exact(static_cast<std::uint32_t>(ord));
        }
        spec.invertible = g.value("invertible", false);
        gens.push_back(std::move(spec));
    }
    std::vector<std::string> rels;
    for (const auto& r : doc.at("relations")) rels.push_back(r.get<std::string>());
    if (doc.contains("derived_relations"))
        for (const auto& r : doc.at("derived_relations")) rels.push_back(r.get<std::string>());
    return Presentation(std::move(gens), rels, N, M);
}

}  // namespace swdual
