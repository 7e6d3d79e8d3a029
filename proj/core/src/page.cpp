#include "swdual/page.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace swdual {
namespace {

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body) {
    if (jobs <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::size_t workers = std::min(static_cast<std::size_t>(jobs), n);
    for (std::size_t k = 0; k < workers; ++k)
        pool.emplace_back([&] {
            try {
                for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

SpectralSequence::SpectralSequence(const Presentation& p, const DifferentialSet& diffs,
                                   Window w)
    : pres_(p), diffs_(diffs), w_(w) {
    if (w_.d_min > w_.d_max || w_.stem_min > w_.stem_max || w_.s_max < 0 || w_.j_max < 1)
        throw std::invalid_argument("empty truncation window");
    build_e2();
}

Slice* SpectralSequence::find(int s, int t) {
    auto it = slices_.find({s, t});
    return it == slices_.end() ? nullptr : &it->second;
}
const Slice* SpectralSequence::find(int s, int t) const {
    auto it = slices_.find({s, t});
    return it == slices_.end() ? nullptr : &it->second;
}
const Slice* SpectralSequence::slice(int s, int t) const { return find(s, t); }

void SpectralSequence::build_e2() {
    const std::size_t ng = pres_.num_generators();

    // Rules whose lhs only involves generators up to g, for early pruning.
    std::vector<std::vector<const RewriteRule*>> rules_by_max(ng);
    for (const auto& r : pres_.rules()) {
        int top = -1;
        for (std::size_t g = 0; g < ng; ++g)
            if (r.lhs.exp(g) > 0) top = static_cast<int>(g);
        if (top >= 0) rules_by_max[top].push_back(&r);
    }

    Monomial m(ng);
    std::function<void(std::size_t, int, int)> rec = [&](std::size_t g, int cs, int ct) {
        if (cs > w_.s_max) return;
        if (g == ng) {
            int stem = ct - cs;
            if (stem < w_.stem_min || stem > w_.stem_max) return;
            Slice& sl = slices_[{cs, ct}];
            sl.s = cs;
            sl.t = ct;
            int ord = pres_.order_exp(m);
            bool ladder = true;
            {
                AlgebraElement probe;
                probe.add_term(m, TruncatedSeries::power_of_j(1, pres_.precision(),
                                                              pres_.truncation()));
                ladder = !pres_.normal_form(probe).terms().empty() &&
                         pres_.normal_form(probe).terms().begin()->first == m;
            }
            int jcap = ladder ? w_.j_max : 1;
            for (int a = 0; a < jcap; ++a) sl.classes.push_back({m, a, ord, 0});
            return;
        }
        const auto& gen = pres_.generator(g);
        int lo = 0, hi = 0;
        if (gen.invertible) {
            lo = w_.d_min;
            hi = w_.d_max;
        } else if (gen.s > 0) {
            hi = (w_.s_max - cs) / gen.s;
        } else {
            hi = pres_.power_cap(g);
            if (hi < 0)
                throw std::invalid_argument("window enumeration unbounded for generator " +
                                            gen.name);
        }
        for (int e = lo; e <= hi; ++e) {
            m.set_exp(g, e);
            if (e > 0) {
                bool reducible = false;
                for (const auto* r : rules_by_max[g])
                    if (m.divisible_by(r->lhs)) { reducible = true; break; }
                if (reducible) break;  // higher exponents stay reducible
            }
            rec(g + 1, cs + e * gen.s, ct + e * gen.t);
        }
        m.set_exp(g, 0);
    };
    rec(0, 0, 0);

    // Drop empty slices, order classes, lay out symbols, seed page data.
    for (auto it = slices_.begin(); it != slices_.end();) {
        Slice& sl = it->second;
        if (sl.classes.empty()) {
            it = slices_.erase(it);
            continue;
        }
        std::sort(sl.classes.begin(), sl.classes.end(),
                  [](const SliceClass& a, const SliceClass& b) {
                      if (a.m != b.m) return a.m < b.m;
                      return a.jexp < b.jexp;
                  });
        std::size_t base = 0;
        for (auto& c : sl.classes) {
            c.symbol_base = base;
            base += 2 * static_cast<std::size_t>(c.order_exp);
        }
        sl.num_symbols = base;
        sl.boundaries = F2Span(base);
        sl.reps.clear();
        for (std::size_t i = 0; i < base; ++i) {
            F2Vector v(base);
            v.set(i, true);
            sl.reps.push_back(v);
        }
        ++it;
    }
}

AlgebraElement SpectralSequence::symbol_element(const SliceClass& c, int p, int q) const {
    GaloisRingElement unit =
        q ? GaloisRingElement::omega(pres_.precision()) : GaloisRingElement::one(pres_.precision());
    GaloisRingElement scale = GaloisRingElement::from_int(1 << p, pres_.precision()) * unit;
    AlgebraElement x;
    x.add_term(c.m, TruncatedSeries::constant(scale, pres_.truncation()).shifted(c.jexp));
    return x;
}

AlgebraElement SpectralSequence::rep_element(const Slice& sl, const F2Vector& v) const {
    AlgebraElement x;
    for (const auto& c : sl.classes)
        for (int p = 0; p < c.order_exp; ++p)
            for (int q = 0; q < 2; ++q)
                if (v.get(c.symbol_base + 2 * static_cast<std::size_t>(p) + q))
                    x += symbol_element(c, p, q);
    return x;
}

std::string SpectralSequence::rep_name(const Slice& sl, const F2Vector& v) const {
    std::ostringstream os;
    bool first = true;
    for (const auto& c : sl.classes) {
        for (int p = 0; p < c.order_exp; ++p) {
            for (int q = 0; q < 2; ++q) {
                if (!v.get(c.symbol_base + 2 * static_cast<std::size_t>(p) + q)) continue;
                if (!first) os << " + ";
                first = false;
                if (p == 1) os << "2*";
                else if (p > 1) os << "2^" << p << "*";
                if (q) os << "w*";
                if (c.jexp == 1) os << "j*";
                else if (c.jexp > 1) os << "j^" << c.jexp << "*";
                os << pres_.monomial_name(c.m);
            }
        }
    }
    return first ? "0" : os.str();
}

std::optional<F2Vector> SpectralSequence::coords(const Slice& target,
                                                 const AlgebraElement& x) const {
    F2Vector v(target.num_symbols);
    for (const auto& [m, f] : x.terms()) {
        for (int a = 0; a < f.truncation(); ++a) {
            GaloisRingElement c = f.coeff(a);
            if (c.is_zero()) continue;
            SliceClass key{m, a, 0, 0};
            auto it = std::lower_bound(
                target.classes.begin(), target.classes.end(), key,
                [](const SliceClass& x, const SliceClass& y) {
                    if (x.m != y.m) return x.m < y.m;
                    return x.jexp < y.jexp;
                });
            if (it == target.classes.end() || it->m != m || it->jexp != a) return std::nullopt;
            if ((c.a() >> it->order_exp) || (c.b() >> it->order_exp))
                throw std::logic_error("coordinate extraction on a non-normal element");
            for (int p = 0; p < it->order_exp; ++p) {
                if ((c.a() >> p) & 1u) v.flip(it->symbol_base + 2 * static_cast<std::size_t>(p));
                if ((c.b() >> p) & 1u)
                    v.flip(it->symbol_base + 2 * static_cast<std::size_t>(p) + 1);
            }
        }
    }
    return v;
}

void SpectralSequence::page_turn(const DifferentialSpec& spec, int jobs) {
    const int r = spec.r;

    struct Work {
        Slice* s = nullptr;
        Slice* target = nullptr;
        std::vector<F2Vector> images;        // one per rep, in target coords
        std::vector<F2Vector> kernel_combos; // in rep-index coords
        bool out_of_window = false;          // nonzero differential left the window
        bool target_incomplete = false;      // image could not be coordinatized
    };
    std::vector<Work> work;
    work.reserve(slices_.size());
    for (auto& [key, sl] : slices_) {
        Work wk;
        wk.s = &sl;
        wk.target = find(key.s + r, key.t + r - 1);
        work.push_back(wk);
    }

    parallel_for(work.size(), jobs, [&](std::size_t wi) {
        Work& wk = work[wi];
        Slice& S = *wk.s;
        std::size_t cols = wk.target ? wk.target->num_symbols : 0;
        F2Matrix D(S.num_symbols, cols);

        // Only symbols appearing in a surviving representative feed the
        // page map; differentials of already-dead classes are skipped and
        // never raise edge flags.
        std::vector<char> used(S.num_symbols, 0);
        for (const auto& rep : S.reps)
            for (std::size_t i = 0; i < S.num_symbols; ++i)
                if (rep.get(i)) used[i] = 1;

        AlgebraElement dm;
        int dm_top = -1;  // highest j-power carrying a nonzero coefficient
        const Monomial* cached = nullptr;
        for (const auto& c : S.classes) {
            if (!cached || !(*cached == c.m)) {
                dm = apply_differential(pres_, spec, pres_.monomial_element(c.m));
                cached = &c.m;
                dm_top = -1;
                for (const auto& [tm, tf] : dm.terms())
                    for (int k = tf.truncation() - 1; k > dm_top; --k)
                        if (!tf.coeff(k).is_zero()) {
                            dm_top = k;
                            break;
                        }
            }
            if (dm.is_zero()) continue;
            // Shifting by the class's j-exponent would push part of the
            // image beyond the j-truncation: the slice crosses the window
            // boundary in the j direction.
            bool j_truncated = c.jexp + dm_top >= pres_.truncation();
            for (int p = 0; p < c.order_exp; ++p) {
                for (int q = 0; q < 2; ++q) {
                    if (!used[c.symbol_base + 2 * static_cast<std::size_t>(p) + q]) continue;
                    if (j_truncated) wk.out_of_window = true;
                    GaloisRingElement u = q ? GaloisRingElement::omega(pres_.precision())
                                            : GaloisRingElement::one(pres_.precision());
                    GaloisRingElement scale =
                        GaloisRingElement::from_int(1 << p, pres_.precision()) * u;
                    TruncatedSeries cs =
                        TruncatedSeries::constant(scale, pres_.truncation()).shifted(c.jexp);
                    AlgebraElement y = pres_.normal_form(cs * dm);
                    if (y.is_zero()) continue;

                    // d o d must vanish on the current page: the second
                    // image may be nonzero in the algebra but must lie in
                    // the boundary span accumulated on earlier pages.
                    // Slices already marked unreliable can carry spurious
                    // survivors (truncated images), so d^2 is only
                    // verifiable on clean slices.
                    AlgebraElement z = apply_differential(pres_, spec, y);
                    if (!z.is_zero() && !j_truncated && !S.edge_unreliable) {
                        const Slice* dd = find(S.s + 2 * r, S.t + 2 * r - 2);
                        std::optional<F2Vector> zv;
                        if (dd) zv = coords(*dd, z);
                        if (!zv) {
                            wk.out_of_window = true;  // unverifiable at the edge
                        } else if (!dd->boundaries.contains(*zv)) {
                            throw std::runtime_error(
                                "d^2 != 0 at d" + std::to_string(r) + " on " +
                                pres_.monomial_name(c.m) + ": " + pres_.to_string(z));
                        }
                    }

                    if (!wk.target) {
                        wk.out_of_window = true;
                        continue;
                    }
                    auto v = coords(*wk.target, y);
                    if (!v) {
                        wk.out_of_window = true;
                        wk.target_incomplete = true;
                        continue;
                    }
                    D.row(c.symbol_base + 2 * static_cast<std::size_t>(p) + q) = *v;
                }
            }
        }

        // Class-level differentials: surviving classes that are not
        // products of surviving classes have images the Leibniz extension
        // cannot see; those are imported per class and extended here to
        // the Galois twist and the j-ladder of the source class.
        for (const auto& ex : spec.exceptional) {
            auto sb = pres_.bidegree(ex.source);
            if (!sb || sb->s != S.s || sb->t != S.t) continue;
            AlgebraElement src = ex.source;
            AlgebraElement val = ex.value;
            for (int step = 0; step < pres_.truncation() && !src.is_zero(); ++step) {
                if (src.terms().size() != 1) break;  // ladder left symbol form
                const auto& sterm = *src.terms().begin();
                const Monomial& m = sterm.first;
                int jexp = -1, p = 0, q = 0;
                for (int a = 0; a < sterm.second.truncation(); ++a) {
                    GaloisRingElement c = sterm.second.coeff(a);
                    if (c.is_zero()) continue;
                    if (jexp >= 0) { jexp = -2; break; }  // two j-powers
                    jexp = a;
                    std::uint32_t bits = c.a() ? c.a() : c.b();
                    q = c.a() ? 0 : 1;
                    p = 0;
                    while (bits > 1) { bits >>= 1; ++p; }
                }
                if (jexp < 0) break;
                SliceClass key{m, jexp, 0, 0};
                auto it = std::lower_bound(
                    S.classes.begin(), S.classes.end(), key,
                    [](const SliceClass& x, const SliceClass& y) {
                        if (x.m != y.m) return x.m < y.m;
                        return x.jexp < y.jexp;
                    });
                if (it == S.classes.end() || !(it->m == m) || it->jexp != jexp ||
                    p >= it->order_exp)
                    break;
                GaloisRingElement w2 = GaloisRingElement::omega(pres_.precision()) *
                                       GaloisRingElement::omega(pres_.precision());
                TruncatedSeries uinv = TruncatedSeries::constant(
                    q ? w2 : GaloisRingElement::one(pres_.precision()),
                    pres_.truncation());
                AlgebraElement y0 = pres_.normal_form(uinv * val);
                AlgebraElement y1 = pres_.normal_form(
                    TruncatedSeries::constant(GaloisRingElement::omega(pres_.precision()),
                                              pres_.truncation()) *
                    y0);
                AlgebraElement ys[2] = {y0, y1};
                for (int qq = 0; qq < 2; ++qq) {
                    std::size_t idx =
                        it->symbol_base + 2 * static_cast<std::size_t>(p) +
                        static_cast<std::size_t>(qq);
                    if (!used[idx]) continue;
                    const AlgebraElement& y = ys[qq];
                    if (y.is_zero()) continue;
                    AlgebraElement z = apply_differential(pres_, spec, y);
                    if (!z.is_zero() && !S.edge_unreliable) {
                        const Slice* dd = find(S.s + 2 * r, S.t + 2 * r - 2);
                        std::optional<F2Vector> zv;
                        if (dd) zv = coords(*dd, z);
                        if (!zv) {
                            wk.out_of_window = true;
                        } else if (!dd->boundaries.contains(*zv)) {
                            throw std::runtime_error("d^2 != 0 at " + ex.text + ": " +
                                                     pres_.to_string(z));
                        }
                    }
                    if (!wk.target) {
                        wk.out_of_window = true;
                        continue;
                    }
                    auto v = coords(*wk.target, y);
                    if (!v) {
                        wk.out_of_window = true;
                        wk.target_incomplete = true;
                        continue;
                    }
                    D.row(idx) ^= *v;
                }
                TruncatedSeries jmul =
                    TruncatedSeries::constant(GaloisRingElement::one(pres_.precision()),
                                              pres_.truncation())
                        .shifted(1);
                src = pres_.normal_form(jmul * src);
                val = pres_.normal_form(jmul * val);
            }
        }

        // Induced map on the current page: image vectors per representative,
        // reduced against boundaries accumulated on earlier pages.
        F2Matrix M(S.reps.size(), cols);
        for (std::size_t i = 0; i < S.reps.size(); ++i) {
            F2Vector img = D.apply_left(S.reps[i]);
            wk.images.push_back(img);
            M.row(i) = wk.target ? wk.target->boundaries.reduce(img) : img;
        }
        wk.kernel_combos = M.kernel();
    });

    // Propagate edge flags from high stems downward: a slice is unreliable
    // if its differential leaves the window, if its source lies beyond the
    // stem bound, or if its source slice is itself unreliable.
    std::sort(work.begin(), work.end(), [](const Work& a, const Work& b) {
        return (a.s->t - a.s->s) > (b.s->t - b.s->s);
    });
    for (Work& wk : work) {
        Slice& S = *wk.s;
        if (wk.out_of_window) S.edge_unreliable = true;
        int src_s = S.s - r, src_t = S.t - r + 1;
        if (src_s >= 0) {
            int src_stem = src_t - src_s;
            if (src_stem > w_.stem_max) S.edge_unreliable = true;
            const Slice* U = find(src_s, src_t);
            if (U && U->edge_unreliable) S.edge_unreliable = true;
        }
        if (wk.target && (wk.target_incomplete || S.edge_unreliable))
            wk.target->edge_unreliable = true;
    }

    // Accumulate boundaries, then cut each slice down to the kernel of the
    // induced differential modulo the enlarged boundary span.
    for (Work& wk : work)
        if (wk.target)
            for (const auto& img : wk.images) wk.target->boundaries.insert(img);

    for (Work& wk : work) {
        Slice& S = *wk.s;
        std::vector<F2Vector> new_reps;
        F2Span tmp = S.boundaries;
        for (const auto& combo : wk.kernel_combos) {
            F2Vector vec(S.num_symbols);
            for (std::size_t i = 0; i < S.reps.size(); ++i)
                if (combo.get(i)) vec ^= S.reps[i];
            F2Vector red = tmp.reduce(vec);
            if (red.is_zero()) continue;
            tmp.insert(red);
            new_reps.push_back(red);
        }
        S.reps = std::move(new_reps);
    }

    r_ = r + 1;
}

void SpectralSequence::run_to_einfty(int jobs) {
    for (const auto& spec : diffs_.specs()) {
        if (spec.r < r_)
            throw std::logic_error("differential pages must be applied in increasing order");
        page_turn(spec, jobs);
    }
}

bool SpectralSequence::nonzero_on_page(const AlgebraElement& x) const {
    AlgebraElement y = pres_.normal_form(x);
    if (y.is_zero()) return false;
    auto d = pres_.bidegree(y);
    if (!d) throw std::invalid_argument("nonzero_on_page requires homogeneous input");
    const Slice* sl = find(d->s, d->t);
    if (!sl || !w_.contains(d->s, d->t))
        throw std::invalid_argument("nonzero_on_page: class outside the window");
    if (sl->edge_unreliable)
        throw std::invalid_argument("nonzero_on_page: slice is edge-unreliable");
    auto v = coords(*sl, y);
    if (!v) throw std::invalid_argument("nonzero_on_page: class leaves the window");
    if (sl->boundaries.contains(*v)) return false;
    // Not a boundary; it must also lie in the surviving-cycle span, else
    // the element supported a differential and has no class on this page.
    F2Span cycles = sl->boundaries;
    for (const auto& r : sl->reps) cycles.insert(r);
    return cycles.contains(*v);
}

bool SpectralSequence::j_multiple_on_page(const AlgebraElement& x) const {
    AlgebraElement y = pres_.normal_form(x);
    if (y.is_zero()) return true;
    auto d = pres_.bidegree(y);
    if (!d) throw std::invalid_argument("j_multiple_on_page requires homogeneous input");
    const Slice* sl = find(d->s, d->t);
    if (!sl || !w_.contains(d->s, d->t))
        throw std::invalid_argument("j_multiple_on_page: class outside the window");
    if (sl->edge_unreliable)
        throw std::invalid_argument("j_multiple_on_page: slice is edge-unreliable");
    auto v = coords(*sl, y);
    if (!v) throw std::invalid_argument("j_multiple_on_page: class leaves the window");
    F2Span span = sl->boundaries;
    TruncatedSeries jv =
        TruncatedSeries::power_of_j(1, pres_.precision(), pres_.truncation());
    for (const auto& c : sl->classes)
        for (int p = 0; p < c.order_exp; ++p)
            for (int q = 0; q < 2; ++q) {
                AlgebraElement m = pres_.normal_form(jv * symbol_element(c, p, q));
                if (m.is_zero()) continue;
                if (auto mv = coords(*sl, m)) span.insert(*mv);
            }
    return span.contains(*v);
}

std::string SpectralSequence::encoded_assumption() const {
    return "d_r = 0 assumed for r > " + std::to_string(diffs_.max_page()) +
           " within the window";
}

DetectionReport SpectralSequence::detect(int stem) const {
    DetectionReport rep;
    rep.stem = stem;
    rep.page = r_;
    rep.assumption = encoded_assumption();
    for (int s = 0; s <= w_.s_max; ++s) {
        const Slice* sl = find(s, stem + s);
        if (!sl) continue;
        if (sl->edge_unreliable) {
            rep.excluded_filtrations.push_back(s);
            continue;
        }
        for (const auto& v : sl->reps) {
            Contribution c;
            c.filtration = s;
            c.name = rep_name(*sl, v);
            int order = 0;
            for (const auto& cls : sl->classes)
                for (int p = 0; p < cls.order_exp; ++p)
                    for (int q = 0; q < 2; ++q)
                        if (v.get(cls.symbol_base + 2 * static_cast<std::size_t>(p) + q))
                            order = std::max(order, cls.order_exp - p);
            c.order_exp = order;
            rep.contributions.push_back(c);
            ++rep.dimension;
        }
    }
    std::stable_sort(rep.contributions.begin(), rep.contributions.end(),
                     [](const Contribution& a, const Contribution& b) {
                         return a.filtration < b.filtration;
                     });
    return rep;
}

PermanentCycleCertificate SpectralSequence::check_permanent_cycle(
    const AlgebraElement& x) const {
    PermanentCycleCertificate cert;
    cert.name = pres_.to_string(pres_.normal_form(x));
    cert.permanent = true;
    AlgebraElement xn = pres_.normal_form(x);
    for (const auto& spec : diffs_.specs()) {
        AlgebraElement v = apply_differential(pres_, spec, x);
        for (const auto& ex : spec.exceptional)
            if (xn == ex.source) v = pres_.normal_form(v + ex.value);
        cert.evaluations.push_back("d" + std::to_string(spec.r) + "(" + cert.name +
                                   ") = " + pres_.to_string(v));
        if (!v.is_zero()) cert.permanent = false;
    }
    return cert;
}

std::pair<AlgebraElement, AlgebraElement> SpectralSequence::verify_lemma54(
    int a, const TruncatedSeries& G) const {
    if (a < 1) throw std::invalid_argument("verify_lemma54 requires a >= 1");
    if (!G.is_unit()) throw std::invalid_argument("verify_lemma54 requires a unit series");
    if (G.truncation() != pres_.truncation())
        throw std::invalid_argument("verify_lemma54: series truncation mismatch");
    const DifferentialSpec* d3 = diffs_.spec_for(3);
    if (!d3) throw std::logic_error("no d3 configured");

    AlgebraElement source;
    {
        Monomial m = pres_.unit_monomial();
        m.set_exp(pres_.generator_checked("D"), 2);
        m.set_exp(pres_.generator_checked("c4"), 1);
        m.set_exp(pres_.generator_checked("c6"), 1);
        m.set_exp(pres_.generator_checked("eta"), 2);
        source.add_term(m, G.shifted(a - 1));
    }
    AlgebraElement lhs = apply_differential(pres_, *d3, source);

    AlgebraElement rhs;
    {
        Monomial m = pres_.unit_monomial();
        m.set_exp(pres_.generator_checked("D"), 2);
        m.set_exp(pres_.generator_checked("kbar"), 1);
        m.set_exp(pres_.generator_checked("eta"), 1);
        rhs.add_term(m, G.shifted(a));
    }
    rhs = pres_.normal_form(rhs);

    if (!(lhs == rhs))
        throw std::runtime_error("d3 source/target mismatch in the j-divisibility check: " +
                                 pres_.to_string(lhs) + " vs " + pres_.to_string(rhs));
    return {lhs, rhs};
}

PeriodicityResult SpectralSequence::delta_periodicity_e2() const {
    PeriodicityResult res;
    int d = pres_.generator_checked("D");
    for (const auto& [key, S] : slices_) {
        const Slice* T = find(key.s, key.t + 24);
        bool t_in_window = w_.contains(key.s, key.t + 24);
        if (!t_in_window) continue;

        bool interior = true;
        for (const auto& c : S.classes)
            if (c.m.exp(d) + 1 > w_.d_max) interior = false;
        if (T)
            for (const auto& c : T->classes)
                if (c.m.exp(d) - 1 < w_.d_min) interior = false;
        res.tested += 1;
        if (!interior) {
            res.edge_excused += 1;
            continue;
        }
        std::vector<std::tuple<Monomial, int, int>> mapped, target;
        Monomial dm = pres_.generator_monomial(d);
        for (const auto& c : S.classes) mapped.emplace_back(c.m * dm, c.jexp, c.order_exp);
        if (T)
            for (const auto& c : T->classes) target.emplace_back(c.m, c.jexp, c.order_exp);
        std::sort(mapped.begin(), mapped.end());
        std::sort(target.begin(), target.end());
        if (mapped == target) {
            res.bijective += 1;
        } else {
            res.failures.push_back("(" + std::to_string(key.s) + "," + std::to_string(key.t) +
                                   ") -> (+24): class sets differ");
        }
    }
    return res;
}

PeriodicityResult SpectralSequence::delta8_periodicity_einfty(int jobs) const {
    PeriodicityResult res;
    (void)jobs;
    int d = pres_.generator_checked("D");
    AlgebraElement d8 = pres_.generator_element("D", 8);
    for (const auto& [key, S] : slices_) {
        int stem = key.t - key.s;
        if (stem + 192 > w_.stem_max || !w_.contains(key.s, key.t + 192)) continue;
        const Slice* T = find(key.s, key.t + 192);
        if (S.reps.empty() && (!T || T->reps.empty())) continue;
        res.tested += 1;
        if (S.edge_unreliable || (T && T->edge_unreliable)) {
            res.edge_excused += 1;
            continue;
        }
        std::size_t tdim = T ? T->reps.size() : 0;
        if (S.reps.size() != tdim) {
            res.failures.push_back("(" + std::to_string(key.s) + "," + std::to_string(key.t) +
                                   "): dimension " + std::to_string(S.reps.size()) + " vs " +
                                   std::to_string(tdim));
            continue;
        }
        bool excused = false, ok = true;
        F2Span span = T->boundaries;
        for (const auto& v : S.reps) {
            AlgebraElement y = pres_.multiply(d8, rep_element(S, v));
            auto cv = coords(*T, y);
            if (!cv) {
                // D-exponent left the window's range.
                bool cap = false;
                for (const auto& c : S.classes)
                    if (c.m.exp(d) + 8 > w_.d_max) cap = true;
                if (cap) { excused = true; break; }
                ok = false;
                break;
            }
            if (!span.insert(*cv)) { ok = false; break; }
        }
        if (excused) res.edge_excused += 1;
        else if (ok) res.bijective += 1;
        else
            res.failures.push_back("(" + std::to_string(key.s) + "," + std::to_string(key.t) +
                                   "): D^8 image not bijective");
    }
    return res;
}

std::string DetectionReport::to_json() const {
    nlohmann::json j;
    j["stem"] = stem;
    j["page"] = page;
    j["assumption"] = assumption;
    j["dimension"] = dimension;
    j["contributions"] = nlohmann::json::array();
    for (const auto& c : contributions)
        j["contributions"].push_back({{"filtration", c.filtration},
                                      {"name", c.name},
                                      {"order_exp", c.order_exp}});
    j["excluded_filtrations"] = excluded_filtrations;
    return j.dump(2);
}

DetectionReport DetectionReport::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    DetectionReport rep;
    rep.stem = j.at("stem").get<int>();
    rep.page = j.at("page").get<int>();
    rep.assumption = j.at("assumption").get<std::string>();
    rep.dimension = j.at("dimension").get<std::size_t>();
    for (const auto& c : j.at("contributions"))
        rep.contributions.push_back({c.at("filtration").get<int>(),
                                     c.at("name").get<std::string>(),
                                     c.at("order_exp").get<int>()});
    for (const auto& e : j.at("excluded_filtrations"))
        rep.excluded_filtrations.push_back(e.get<int>());
    return rep;
}

}  // namespace swdual
