#pragma once

#include "swdual/presentation.hpp"

#include <string>
#include <vector>

namespace swdual {

/// d_r value on a generator power: d_r(g^power) = value.  Exponents of g
/// are consumed `power` at a time by the Leibniz extension; leftover
/// exponent below `power` is carried as a passive factor.
struct GeneratorDifferential {
    std::string generator;
    int power = 1;
    AlgebraElement value;
    std::string text;
};

/// A class-level differential on one additive class.  On late pages a
/// surviving class need not be a product of surviving classes, so the
/// Leibniz extension of the generator values does not determine its
/// image; such differentials are imported as chart data.  The source
/// must be a single additive symbol, i.e. a monomial times 2^p, times
/// omega or not, times a j-power.  The engine extends each entry to the
/// Galois twist and the j-ladder of the source class.
struct ExceptionalDifferential {
    AlgebraElement source;
    AlgebraElement value;
    std::string text;
};

/// One page's differential data.  Generators not listed in `values` have
/// d_r = 0; `linear` documents which of them the source declares linear
/// (the engine treats every unlisted generator that way regardless).
struct DifferentialSpec {
    int r = 0;
    std::vector<GeneratorDifferential> values;
    std::vector<std::string> linear;
    std::vector<ExceptionalDifferential> exceptional;
};

/// The full differential configuration, ordered by page number.
class DifferentialSet {
public:
    static DifferentialSet load_json(const std::string& json_text, const Presentation& p);

    DifferentialSet() = default;
    DifferentialSet(std::vector<DifferentialSpec> specs, const Presentation& p);

    const std::vector<DifferentialSpec>& specs() const { return specs_; }
    const DifferentialSpec* spec_for(int r) const;
    int max_page() const;

private:
    void validate(const Presentation& p) const;
    std::vector<DifferentialSpec> specs_;
};

/// Leibniz extension of the page's generator values to a homogeneous
/// element, followed by normal_form.  Differentials are linear with
/// respect to j (coefficients pass through) and all generators without a
/// declared value.
AlgebraElement apply_differential(const Presentation& p, const DifferentialSpec& spec,
                                  const AlgebraElement& x);

}  // namespace swdual
