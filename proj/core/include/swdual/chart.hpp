#pragma once

#include "swdual/page.hpp"

#include <string>
#include <utility>
#include <vector>

namespace swdual {

/// Rendering window and page selector for a chart.  Axes are stem = t - s
/// horizontally and filtration s vertically.
struct ChartSpec {
    int page = 2;  // must match the page the engine currently holds
    int stem_min = 0;
    int stem_max = 48;
    int s_max = 28;
};

/// One plotted class: a tower base (smallest surviving j-power of its
/// monomial) classified by its additive order on the page and the shape
/// of its j-ladder.
///   box          free over W(F4)[[j]]
///   circle       F4[[j]] (order 2, free j-ladder)
///   otimes       W(F4)[[j]]/(8, 2j) (order 8, 2x killed by j)
///   bullet       order 2, finite j-ladder
///   circled dot  order 4
/// Anything else is flagged with symbol "?" rather than silently forced
/// into the legend.
struct ChartGlyph {
    int stem = 0;
    int filtration = 0;
    std::string symbol;  // "box", "circle", "otimes", "bullet", "dot4", "?"
    std::string name;    // monomial name, with its j-power when jexp > 0
    int order_exp = 0;   // additive order 2^k on the page
    int jexp = 0;        // j-power of the tower base
    bool flagged = false;
};

/// Multiplication line between chart cells: eta has slope 1, nu slope
/// 1/3.  Dashed marks an eta-product landing in j times the target tower
/// (the jy = x*eta convention).
struct ChartLine {
    int stem = 0, filtration = 0;    // source cell
    int stem2 = 0, filtration2 = 0;  // target cell
    std::string kind;                // "eta" or "nu"
    bool dashed = false;
};

/// Deterministic chart of one page of the spectral sequence.  Glyphs and
/// lines are derived solely from slice data and the multiplication
/// operators; edge-unreliable slices are listed separately and drawn as
/// "?" cells.
class Chart {
public:
    /// Throws std::out_of_range when spec.page differs from the page the
    /// engine holds, std::invalid_argument on an ill-formed window.
    static Chart build(const SpectralSequence& engine, const ChartSpec& spec);

    const ChartSpec& spec() const { return spec_; }
    const std::vector<ChartGlyph>& glyphs() const { return glyphs_; }
    const std::vector<ChartLine>& lines() const { return lines_; }
    /// (stem, filtration) of every edge-unreliable slice in the window.
    const std::vector<std::pair<int, int>>& flagged_cells() const { return flagged_; }

    /// Byte-deterministic renderings.
    std::string to_ascii() const;
    std::string to_svg() const;

private:
    ChartSpec spec_;
    std::vector<ChartGlyph> glyphs_;
    std::vector<ChartLine> lines_;
    std::vector<std::pair<int, int>> flagged_;
};

}  // namespace swdual
