#include "swdual/galois_ring.hpp"
#include "swdual/series.hpp"

#include <sstream>

namespace swdual {

std::string GaloisRingElement::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    if (a_ != 0) os << a_;
    if (b_ != 0) {
        if (a_ != 0) os << "+";
        if (b_ != 1) os << b_ << "*";
        os << "w";
    }
    return os.str();
}

std::string TruncatedSeries::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < truncation(); ++k) {
        if (c_[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        std::string coef = c_[k].to_string();
        if (k == 0) {
            os << coef;
        } else {
            bool composite = coef.find('+') != std::string::npos;
            if (coef == "1") {
                // bare power of j
            } else if (composite) {
                os << "(" << coef << ")*";
            } else {
                os << coef << "*";
            }
            os << "j";
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

}  // namespace swdual
