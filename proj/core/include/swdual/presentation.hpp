#pragma once

#include "swdual/element.hpp"
#include "swdual/expression.hpp"
#include "swdual/monomial.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace swdual {

struct GeneratorSpec {
    std::string name;
    int s = 0;
    int t = 0;
    bool infer = false;   // bidegree to be solved from homogeneity
    int order_exp = -1;   // 2^k annihilates the generator; -1 = free
    bool invertible = false;
};

struct RewriteRule {
    Monomial lhs;
    bool lhs_has_j = false;  // lhs is j * (monomial)
    AlgebraElement rhs;
    std::string text;
};

/// 2^k * (any multiple of m) = 0.
struct TorsionRule {
    Monomial m;
    int k = 0;
};

struct Window {
    int stem_min = -8;
    int stem_max = 208;
    int s_max = 28;
    int j_max = 16;  // j-exponents 0 .. j_max-1
    int d_min = -2;  // exponent range for invertible generators
    int d_max = 9;

    bool contains(int s, int t) const {
        int stem = t - s;
        return s >= 0 && s <= s_max && stem >= stem_min && stem <= stem_max;
    }
};

struct BasisClass {
    Monomial m;
    int jexp = 0;
    int order_exp = 0;  // min(k, N); == N means free at this precision
};

enum class RewriteStrategy { Deterministic, Randomized };

struct Bidegree {
    int s = 0;
    int t = 0;
    friend bool operator==(const Bidegree&, const Bidegree&) = default;
    int stem() const { return t - s; }
};

/// A bigraded-commutative algebra given by generators with bidegrees and
/// additive orders plus an oriented rewriting system for the relation
/// ideal.  Immutable after load; all queries are pure functions.
class Presentation {
public:
    /// Build from parsed JSON text (see data/g24.json for the format).
    /// Runs bidegree inference and homogeneity validation.
    static Presentation load_json(const std::string& json_text, int N, int M);

    Presentation(std::vector<GeneratorSpec> gens,
                 const std::vector<std::string>& relations, int N, int M);

    int precision() const { return n_; }
    int truncation() const { return m_; }

    std::size_t num_generators() const { return gens_.size(); }
    const GeneratorSpec& generator(std::size_t g) const { return gens_[g]; }
    int find_generator(const std::string& name) const;
    int generator_checked(const std::string& name) const;

    const std::vector<RewriteRule>& rules() const { return rules_; }
    const std::vector<TorsionRule>& torsion_rules() const { return torsion_; }

    ExpressionContext expression_context() const;
    AlgebraElement parse(const std::string& text) const;

    Bidegree bidegree(const Monomial& m) const;
    /// Bidegree of a homogeneous element; nullopt for 0 or mixed degrees.
    std::optional<Bidegree> bidegree(const AlgebraElement& x) const;

    /// 2^k annihilating the monomial's coefficient line, capped at N.
    int order_exp(const Monomial& m) const;

    bool is_irreducible(const Monomial& m) const;

    /// Largest irreducible pure power of g, or -1 if no pure-power rule
    /// bounds it.
    int power_cap(std::size_t g) const { return power_cap_[g]; }

    AlgebraElement normal_form(const AlgebraElement& x,
                               RewriteStrategy strategy = RewriteStrategy::Deterministic,
                               std::uint64_t seed = 0) const;

    /// Product followed by normal_form.  Koszul signs are applied on
    /// internal degree (trivially, since every generator here is even).
    AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) const;
    AlgebraElement multiply_raw(const AlgebraElement& x, const AlgebraElement& y) const;

    /// All irreducible classes of bidegree (s,t) inside the window,
    /// including the j-power ladder where j-multiplication is free.
    std::vector<BasisClass> basis(int s, int t, const Window& w) const;

    Monomial unit_monomial() const { return Monomial(gens_.size()); }
    Monomial generator_monomial(int g, int e = 1) const;
    AlgebraElement generator_element(const std::string& name, int e = 1) const;
    AlgebraElement monomial_element(const Monomial& m) const;

    std::string monomial_name(const Monomial& m) const;
    std::string to_string(const AlgebraElement& x) const;

    std::uint64_t rewrite_budget() const { return budget_; }
    void set_rewrite_budget(std::uint64_t b) { budget_ = b; }

private:
    void classify_relations(const std::vector<std::string>& relations);
    void infer_bidegrees();
    void validate_homogeneity() const;
    void compute_power_caps();

    TruncatedSeries reduced(const Monomial& m, const TruncatedSeries& f) const;

    std::vector<GeneratorSpec> gens_;
    std::vector<RewriteRule> rules_;    // monomial-lhs rules
    std::vector<RewriteRule> jrules_;   // lhs of the form j * monomial
    std::vector<TorsionRule> torsion_;
    std::vector<int> power_cap_;        // max irreducible pure power per generator
    int n_ = 4;
    int m_ = 16;
    std::uint64_t budget_ = 1u << 20;
};

}  // namespace swdual
