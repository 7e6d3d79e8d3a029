#include "swdual/differential.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <stdexcept>

namespace swdual {

DifferentialSet::DifferentialSet(std::vector<DifferentialSpec> specs, const Presentation& p)
    : specs_(std::move(specs)) {
    std::sort(specs_.begin(), specs_.end(),
              [](const DifferentialSpec& a, const DifferentialSpec& b) { return a.r < b.r; });
    validate(p);
}

void DifferentialSet::validate(const Presentation& p) const {
    for (const auto& spec : specs_) {
        if (spec.r < 2) throw std::invalid_argument("differential page number must be >= 2");
        for (const auto& gd : spec.values) {
            int g = p.generator_checked(gd.generator);
            if (gd.power < 1)
                throw std::invalid_argument("differential power must be positive: " + gd.text);
            if (gd.value.is_zero()) continue;
            auto dv = p.bidegree(gd.value);
            if (!dv)
                throw std::invalid_argument("differential value not homogeneous: " + gd.text);
            const auto& gen = p.generator(static_cast<std::size_t>(g));
            Bidegree expect{gen.s * gd.power + spec.r, gen.t * gd.power + spec.r - 1};
            if (*dv != expect)
                throw std::invalid_argument("differential value has wrong bidegree: " + gd.text);
        }
        for (const auto& name : spec.linear) {
            if (name == "j") continue;
            p.generator_checked(name);
        }
        for (const auto& ex : spec.exceptional) {
            if (ex.source.is_zero() || ex.value.is_zero())
                throw std::invalid_argument("exceptional differential must be nonzero: " +
                                            ex.text);
            auto sb = p.bidegree(ex.source);
            auto vb = p.bidegree(ex.value);
            if (!sb || !vb)
                throw std::invalid_argument("exceptional differential not homogeneous: " +
                                            ex.text);
            Bidegree expect{sb->s + spec.r, sb->t + spec.r - 1};
            if (*vb != expect)
                throw std::invalid_argument(
                    "exceptional differential value has wrong bidegree: " + ex.text);
            if (ex.source.terms().size() != 1)
                throw std::invalid_argument(
                    "exceptional differential source must be a single additive symbol: " +
                    ex.text);
            const auto& f = ex.source.terms().begin()->second;
            int nonzero = 0;
            for (int a = 0; a < f.truncation(); ++a) {
                GaloisRingElement c = f.coeff(a);
                if (c.is_zero()) continue;
                ++nonzero;
                bool pow2_real = c.b() == 0 && c.a() != 0 && (c.a() & (c.a() - 1)) == 0;
                bool pow2_omega = c.a() == 0 && c.b() != 0 && (c.b() & (c.b() - 1)) == 0;
                if (!pow2_real && !pow2_omega)
                    throw std::invalid_argument(
                        "exceptional differential source must be a single additive "
                        "symbol: " + ex.text);
            }
            if (nonzero != 1)
                throw std::invalid_argument(
                    "exceptional differential source must sit at a single j-power: " +
                    ex.text);
        }
    }
}

const DifferentialSpec* DifferentialSet::spec_for(int r) const {
    for (const auto& s : specs_)
        if (s.r == r) return &s;
    return nullptr;
}

int DifferentialSet::max_page() const {
    int m = 2;
    for (const auto& s : specs_) m = std::max(m, s.r);
    return m;
}

DifferentialSet DifferentialSet::load_json(const std::string& json_text,
                                           const Presentation& p) {
    nlohmann::json doc = nlohmann::json::parse(json_text);
    std::vector<DifferentialSpec> specs;
    for (const auto& page : doc.at("pages")) {
        DifferentialSpec spec;
        spec.r = page.at("r").get<int>();
        for (const auto& v : page.at("values")) {
            GeneratorDifferential gd;
            gd.generator = v.at("generator").get<std::string>();
            gd.power = v.value("power", 1);
            std::string expr = v.at("value").get<std::string>();
            gd.value = p.normal_form(p.parse(expr));
            gd.text = "d" + std::to_string(spec.r) + "(" + gd.generator +
                      (gd.power != 1 ? "^" + std::to_string(gd.power) : "") + ") = " + expr;
            spec.values.push_back(std::move(gd));
        }
        if (page.contains("linear"))
            for (const auto& n : page.at("linear")) spec.linear.push_back(n.get<std::string>());
        if (page.contains("exceptional"))
            for (const auto& e : page.at("exceptional")) {
                ExceptionalDifferential ex;
                std::string src = e.at("source").get<std::string>();
                std::string val = e.at("value").get<std::string>();
                ex.source = p.normal_form(p.parse(src));
                ex.value = p.normal_form(p.parse(val));
                ex.text = "d" + std::to_string(spec.r) + "(" + src + ") = " + val;
                spec.exceptional.push_back(std::move(ex));
            }
        specs.push_back(std::move(spec));
    }
    return DifferentialSet(std::move(specs), p);
}

AlgebraElement apply_differential(const Presentation& p, const DifferentialSpec& spec,
                                  const AlgebraElement& x) {
    if (!x.is_zero() && !p.bidegree(x))
        throw std::invalid_argument("apply_differential requires homogeneous input");
    AlgebraElement out;
    for (const auto& [m, f] : x.terms()) {
        for (const auto& gd : spec.values) {
            int g = p.generator_checked(gd.generator);
            int e = m.exp(static_cast<std::size_t>(g));
            // Floor division so negative exponents of invertible
            // generators follow the same Leibniz count.
            int q = (e >= 0) ? e / gd.power
                             : -((-e + gd.power - 1) / gd.power);
            if (q == 0) continue;
            Monomial rest = m;
            rest.set_exp(static_cast<std::size_t>(g), e - gd.power);
            TruncatedSeries c = GaloisRingElement::from_int(q, p.precision()) * f;
            for (const auto& [vm, vf] : gd.value.terms())
                out.add_term(vm * rest, vf * c);
        }
    }
    return p.normal_form(out);
}

}  // namespace swdual
