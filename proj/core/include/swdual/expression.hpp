#pragma once

#include "swdual/element.hpp"

#include <functional>
#include <stdexcept>
#include <string>

namespace swdual {

/// Parse failure with 1-based line/column of the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line, int col)
        : std::runtime_error(what + " at line " + std::to_string(line) +
                             ", column " + std::to_string(col)),
          line_(line), col_(col) {}
    int line() const { return line_; }
    int column() const { return col_; }

private:
    int line_, col_;
};

/// Symbol table handed to the expression parser: generator name -> index,
/// plus the ambient sizes.  "j" and "w" are resolved by the parser itself.
struct ExpressionContext {
    std::function<int(const std::string&)> find_generator;  // -1 if unknown
    std::function<bool(int)> is_invertible;
    std::size_t num_generators = 0;
    int precision = 4;   // N
    int truncation = 16; // M
};

/// Grammar (infix, explicit '*'):
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := INTEGER | SYMBOL ['^' ['-'] INTEGER]
/// Symbols are generator names plus 'j' (series variable) and 'w'
/// (the Galois-ring generator).  Only invertible generators may carry
/// negative exponents.
AlgebraElement parse_expression(const std::string& text, const ExpressionContext& ctx);

}  // namespace swdual
