#include "swdual/chart.hpp"

#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace swdual {

namespace {

/// True when the element's class is nonzero on the engine's page.  The
/// caller guarantees the slice is inside the window and not flagged.
bool alive(const SpectralSequence& eng, const AlgebraElement& x) {
    return !x.is_zero() && eng.nonzero_on_page(x);
}

const char* utf8_symbol(const std::string& key) {
    if (key == "box") return "□";     // hollow square
    if (key == "circle") return "○";  // hollow circle
    if (key == "otimes") return "⊗";  // circled times
    if (key == "bullet") return "•";  // filled dot
    if (key == "dot4") return "⊙";    // circled dot
    return "?";
}

}  // namespace

Chart Chart::build(const SpectralSequence& eng, const ChartSpec& spec) {
    if (spec.page != eng.page())
        throw std::out_of_range("chart page " + std::to_string(spec.page) +
                                " out of range: engine holds page " +
                                std::to_string(eng.page()));
    if (spec.stem_min > spec.stem_max || spec.s_max < 0)
        throw std::invalid_argument("chart window is empty or inverted");

    const Presentation& p = eng.presentation();
    const AlgebraElement eta = p.generator_element("eta");
    const AlgebraElement nu = p.generator_element("nu");
    const TruncatedSeries jvar =
        TruncatedSeries::power_of_j(1, p.precision(), p.truncation());
    // j-ladders longer than this are treated as free; shorter ones are
    // genuinely finite inside the window.
    const int ladder_horizon = 3;

    Chart ch;
    ch.spec_ = spec;
    std::vector<AlgebraElement> bases;  // parallel to ch.glyphs_
    for (int stem = spec.stem_min; stem <= spec.stem_max; ++stem) {
        for (int s = 0; s <= spec.s_max; ++s) {
            const Slice* sl = eng.slice(s, s + stem);
            if (!sl) continue;
            if (sl->edge_unreliable) {
                ch.flagged_.push_back({stem, s});
                continue;
            }
            std::vector<bool> live(sl->classes.size());
            for (std::size_t i = 0; i < sl->classes.size(); ++i)
                live[i] = alive(eng, eng.symbol_element(sl->classes[i], 0, 0));
            for (std::size_t i = 0; i < sl->classes.size(); ++i) {
                if (!live[i]) continue;
                const SliceClass& c = sl->classes[i];
                // A tower base is the smallest surviving j-power of its
                // monomial; higher rungs are part of the same glyph.
                bool base = true;
                for (std::size_t k = 0; k < sl->classes.size(); ++k)
                    if (live[k] && sl->classes[k].m == c.m &&
                        sl->classes[k].jexp == c.jexp - 1)
                        base = false;
                if (!base) continue;

                ChartGlyph g;
                g.stem = stem;
                g.filtration = s;
                g.jexp = c.jexp;
                g.name = p.monomial_name(c.m);
                if (c.jexp > 0) g.name = "j^" + std::to_string(c.jexp) + "*" + g.name;

                int order = c.order_exp;
                for (int pw = 1; pw < c.order_exp; ++pw)
                    if (!alive(eng, eng.symbol_element(c, pw, 0))) {
                        order = pw;
                        break;
                    }
                g.order_exp = order;

                int jlen = 0;
                AlgebraElement rung = eng.symbol_element(c, 0, 0);
                for (int e = 1; e <= ladder_horizon; ++e) {
                    rung = p.normal_form(jvar * rung);
                    if (!alive(eng, rung)) break;
                    ++jlen;
                }
                bool jfree = jlen >= ladder_horizon;

                if (order == p.precision() && jfree) {
                    g.symbol = "box";
                } else if (order == 1 && jfree) {
                    g.symbol = "circle";
                } else if (order == 3 && jfree) {
                    AlgebraElement twice_j =
                        p.normal_form(jvar * eng.symbol_element(c, 1, 0));
                    g.symbol = alive(eng, twice_j) ? "?" : "otimes";
                } else if (order == 2) {
                    g.symbol = "dot4";
                } else if (order == 1) {
                    g.symbol = "bullet";
                } else {
                    g.symbol = "?";
                }
                g.flagged = g.symbol == "?";
                ch.glyphs_.push_back(std::move(g));
                bases.push_back(eng.symbol_element(c, 0, 0));
            }
        }
    }

    // Multiplication lines out of each tower base.
    struct Op {
        const char* kind;
        const AlgebraElement* x;
        int dstem;
    };
    const Op ops[2] = {{"eta", &eta, 1}, {"nu", &nu, 3}};
    for (std::size_t gi = 0; gi < ch.glyphs_.size(); ++gi) {
        const ChartGlyph& g = ch.glyphs_[gi];
        const AlgebraElement& x = bases[gi];
        for (const Op& op : ops) {
            int ts = g.filtration + 1;
            int tstem = g.stem + op.dstem;
            if (tstem > spec.stem_max || ts > spec.s_max) continue;
            const Slice* tgt = eng.slice(ts, ts + tstem);
            if (!tgt || tgt->edge_unreliable) continue;
            AlgebraElement z = p.multiply(*op.x, x);
            if (!alive(eng, z)) continue;
            ChartLine line;
            line.stem = g.stem;
            line.filtration = g.filtration;
            line.stem2 = tstem;
            line.filtration2 = ts;
            line.kind = op.kind;
            line.dashed = op.kind == std::string("eta") && eng.j_multiple_on_page(z);
            ch.lines_.push_back(std::move(line));
        }
    }
    return ch;
}

std::string Chart::to_ascii() const {
    std::ostringstream os;
    os << "page " << spec_.page << "  stems " << spec_.stem_min << ".." << spec_.stem_max
       << "  filtration 0.." << spec_.s_max << "\n";

    std::map<std::pair<int, int>, std::vector<const ChartGlyph*>> cells;
    for (const auto& g : glyphs_) cells[{g.stem, g.filtration}].push_back(&g);
    std::map<std::pair<int, int>, bool> flagged;
    for (const auto& c : flagged_) flagged[c] = true;

    int ncols = spec_.stem_max - spec_.stem_min + 1;
    for (int s = spec_.s_max; s >= 0; --s) {
        char label[8];
        std::snprintf(label, sizeof label, "%3d |", s);
        os << label;
        for (int col = 0; col < ncols; ++col) {
            int stem = spec_.stem_min + col;
            auto it = cells.find({stem, s});
            if (flagged.count({stem, s})) {
                os << "? ";
            } else if (it == cells.end()) {
                os << ". ";
            } else {
                os << utf8_symbol(it->second.front()->symbol);
                std::size_t n = it->second.size();
                os << (n > 1 ? static_cast<char>('0' + (n > 9 ? 9 : n)) : ' ');
            }
        }
        os << "\n";
    }
    os << "    +";
    for (int col = 0; col < ncols; ++col) os << "--";
    os << "\n     ";
    std::string axis(static_cast<std::size_t>(2 * ncols), ' ');
    for (int col = 0; col < ncols; ++col) {
        int stem = spec_.stem_min + col;
        if (stem % 8 != 0) continue;
        std::string lbl = std::to_string(stem);
        if (2 * col + lbl.size() <= axis.size()) lbl.copy(&axis[2 * col], lbl.size());
    }
    os << axis << "\n";
    os << "legend: " << utf8_symbol("box") << " free  " << utf8_symbol("circle")
       << " order 2, free j-ladder  " << utf8_symbol("otimes")
       << " order 8 with 2x j-torsion  " << utf8_symbol("bullet") << " order 2  "
       << utf8_symbol("dot4") << " order 4  ? flagged\n";
    os << "lines: eta slope 1, nu slope 1/3 (dashed: eta-product lands in j times "
          "the target)\n";
    return os.str();
}

std::string Chart::to_svg() const {
    const int cell = 16, margin = 48;
    int ncols = spec_.stem_max - spec_.stem_min + 1;
    int nrows = spec_.s_max + 1;
    int width = 2 * margin + ncols * cell;
    int height = 2 * margin + nrows * cell;
    auto cx = [&](int stem) { return margin + (stem - spec_.stem_min) * cell + cell / 2; };
    auto cy = [&](int s) { return height - margin - s * cell - cell / 2; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    // Axes with ticks every fourth stem / filtration.
    int x0 = margin, y0 = height - margin, x1 = margin + ncols * cell,
        y1 = height - margin - nrows * cell;
    os << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1
       << "\" stroke=\"black\"/>\n";
    for (int stem = spec_.stem_min; stem <= spec_.stem_max; ++stem) {
        if (stem % 4 != 0) continue;
        os << "<text x=\"" << cx(stem) << "\" y=\"" << y0 + 16
           << "\" font-size=\"10\" text-anchor=\"middle\">" << stem << "</text>\n";
    }
    for (int s = 0; s <= spec_.s_max; ++s) {
        if (s % 4 != 0) continue;
        os << "<text x=\"" << x0 - 8 << "\" y=\"" << cy(s) + 4
           << "\" font-size=\"10\" text-anchor=\"end\">" << s << "</text>\n";
    }
    os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << height - 12
       << "\" font-size=\"11\" text-anchor=\"middle\">t - s (page " << spec_.page
       << ")</text>\n";

    for (const auto& l : lines_) {
        os << "<line x1=\"" << cx(l.stem) << "\" y1=\"" << cy(l.filtration) << "\" x2=\""
           << cx(l.stem2) << "\" y2=\"" << cy(l.filtration2) << "\" stroke=\""
           << (l.kind == "nu" ? "#3060c0" : "#808080") << "\"";
        if (l.dashed) os << " stroke-dasharray=\"3 2\"";
        os << "/>\n";
    }

    std::map<std::pair<int, int>, int> seen;
    for (const auto& g : glyphs_) {
        int idx = seen[{g.stem, g.filtration}]++;
        int x = cx(g.stem) + 6 * idx;
        int y = cy(g.filtration);
        os << "<g>";
        if (g.symbol == "box") {
            os << "<rect x=\"" << x - 4 << "\" y=\"" << y - 4
               << "\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"black\"/>";
        } else if (g.symbol == "circle") {
            os << "<circle cx=\"" << x << "\" cy=\"" << y
               << "\" r=\"4\" fill=\"none\" stroke=\"black\"/>";
        } else if (g.symbol == "otimes") {
            os << "<circle cx=\"" << x << "\" cy=\"" << y
               << "\" r=\"4\" fill=\"none\" stroke=\"black\"/>"
               << "<line x1=\"" << x - 3 << "\" y1=\"" << y - 3 << "\" x2=\"" << x + 3
               << "\" y2=\"" << y + 3 << "\" stroke=\"black\"/>"
               << "<line x1=\"" << x - 3 << "\" y1=\"" << y + 3 << "\" x2=\"" << x + 3
               << "\" y2=\"" << y - 3 << "\" stroke=\"black\"/>";
        } else if (g.symbol == "bullet") {
            os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"2\" fill=\"black\"/>";
        } else if (g.symbol == "dot4") {
            os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"2\" fill=\"black\"/>"
               << "<circle cx=\"" << x << "\" cy=\"" << y
               << "\" r=\"5\" fill=\"none\" stroke=\"black\"/>";
        } else {
            os << "<text x=\"" << x << "\" y=\"" << y + 4
               << "\" font-size=\"10\" text-anchor=\"middle\" fill=\"#c03030\">?</text>";
        }
        os << "<title>" << g.name << " (order 2^" << g.order_exp << ")</title></g>\n";
    }
    for (const auto& c : flagged_) {
        os << "<text x=\"" << cx(c.first) << "\" y=\"" << cy(c.second) + 4
           << "\" font-size=\"10\" text-anchor=\"middle\" fill=\"#b0b0b0\">?</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace swdual
