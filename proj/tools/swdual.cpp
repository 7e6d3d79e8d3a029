// Command-line surface over the spectral sequence engine, the chart
// emitter, the quaternionic-order arithmetic and the duality ledger.
//
// Exit codes: 0 success, 1 assertion failure, 2 input/parse error.

#include "swdual/chart.hpp"
#include "swdual/page.hpp"
#include "swdual/stabilizer.hpp"
#include "swdual/tower.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace swdual;

constexpr int kExitAssert = 1;
constexpr int kExitInput = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AssertError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Engine inputs and window, shared by the sseq / chart / dual commands.
struct RunConfig {
    int N = 4;
    int M = 16;
    Window window;
    std::string presentation_path = std::string(SWDUAL_DATA_DIR) + "/g24.json";
    std::string differentials_path = std::string(SWDUAL_DATA_DIR) + "/differentials.json";
    std::string out_dir = ".";
    int jobs = 1;

    void validate() const {
        if (N < 2 || M < 1) throw InputError("require N >= 2 and M >= 1");
        if (window.stem_min > window.stem_max || window.s_max < 0)
            throw InputError("window is empty");
    }
};

void add_engine_flags(CLI::App& cmd, RunConfig& cfg) {
    cmd.add_option("-N", cfg.N, "coefficient precision (2-adic digits)");
    cmd.add_option("-M", cfg.M, "j-adic truncation");
    cmd.add_option("--stem-min", cfg.window.stem_min, "window lower stem");
    cmd.add_option("--stem-max", cfg.window.stem_max, "window upper stem");
    cmd.add_option("--smax", cfg.window.s_max, "window filtration bound");
    cmd.add_option("--jobs", cfg.jobs, "worker threads for page turns");
    cmd.add_option("--out", cfg.out_dir, "output directory");
    cmd.add_option("--presentation", cfg.presentation_path, "presentation JSON");
    cmd.add_option("--differentials", cfg.differentials_path, "differential JSON");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw InputError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out.good()) throw InputError("cannot write " + path.string());
    out << text;
}

struct Engine {
    std::unique_ptr<Presentation> pres;
    std::unique_ptr<DifferentialSet> diffs;
    std::unique_ptr<SpectralSequence> ss;
};

Engine make_engine(const RunConfig& cfg, bool run) {
    cfg.validate();
    Engine e;
    e.pres = std::make_unique<Presentation>(
        Presentation::load_json(slurp(cfg.presentation_path), cfg.N, cfg.M));
    e.diffs = std::make_unique<DifferentialSet>(
        DifferentialSet::load_json(slurp(cfg.differentials_path), *e.pres));
    e.ss = std::make_unique<SpectralSequence>(*e.pres, *e.diffs, cfg.window);
    if (run) e.ss->run_to_einfty(cfg.jobs);
    return e;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw InputError("bad integer '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw InputError("empty integer list");
    return out;
}

/// "stem:dimension" or "stem:dimension:filtration" assertion strings.
struct Assertion {
    int stem = 0;
    std::size_t dimension = 0;
    int filtration = -1;  // -1: any
};

Assertion parse_assertion(const std::string& text) {
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(std::stoi(tok));
    if (parts.size() < 2 || parts.size() > 3)
        throw InputError("assertion must be stem:dimension[:filtration]");
    Assertion a;
    a.stem = parts[0];
    a.dimension = static_cast<std::size_t>(parts[1]);
    if (parts.size() == 3) a.filtration = parts[2];
    return a;
}

/// Galois-ring coordinate: integers a, b from "a", "w", "b*w", "a+b*w"
/// (also with '-' signs and 'bw' without the star).
GaloisRingElement parse_galois(const std::string& text, int n) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw InputError("empty coordinate");
    long a = 0, b = 0;
    std::size_t i = 0;
    while (i < s.size()) {
        long sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        }
        long mag = 1;
        bool have_digits = false;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            if (!have_digits) mag = 0;
            have_digits = true;
            mag = mag * 10 + (s[i] - '0');
            ++i;
        }
        if (i < s.size() && s[i] == '*') ++i;
        if (i < s.size() && s[i] == 'w') {
            b += sign * mag;
            ++i;
        } else if (have_digits) {
            a += sign * mag;
        } else {
            throw InputError("bad coordinate '" + text + "'");
        }
    }
    GaloisRingElement r = GaloisRingElement::from_int(static_cast<int>(a), n);
    GaloisRingElement wpart =
        GaloisRingElement(0, 1, n) * GaloisRingElement::from_int(static_cast<int>(b), n);
    return r + wpart;
}

std::string format_rational(std::uint32_t v, int n) {
    // Small negative values read better in their signed form.
    std::uint32_t mod = n >= 32 ? 0 : (1u << n);
    if (n < 32 && v > mod - 16 && v != 0)
        return std::to_string(static_cast<long>(v) - static_cast<long>(mod));
    return std::to_string(v);
}

int cmd_sseq_run(const RunConfig& cfg, const std::vector<int>& stems,
                 const std::vector<std::string>& assert_texts) {
    std::vector<Assertion> asserts;
    for (const auto& t : assert_texts) asserts.push_back(parse_assertion(t));

    Engine e = make_engine(cfg, true);
    for (int stem : stems) {
        DetectionReport rep = e.ss->detect(stem);
        std::string json = rep.to_json();
        DetectionReport::from_json(json);  // round-trip guarantee
        spit(std::filesystem::path(cfg.out_dir) /
                 ("stem_" + std::to_string(stem) + ".json"),
             json + "\n");
        std::cout << "stem " << stem << ": dimension " << rep.dimension << "\n";
    }
    bool ok = true;
    for (const Assertion& a : asserts) {
        DetectionReport rep = e.ss->detect(a.stem);
        bool pass = rep.dimension == a.dimension;
        if (pass && a.filtration >= 0)
            for (const auto& c : rep.contributions)
                if (c.filtration != a.filtration) pass = false;
        std::cout << "assert stem " << a.stem << " dimension " << a.dimension
                  << (a.filtration >= 0
                          ? " filtration " + std::to_string(a.filtration)
                          : "")
                  << ": " << (pass ? "pass" : "FAIL") << "\n";
        ok = ok && pass;
    }
    return ok ? 0 : kExitAssert;
}

int cmd_chart(const RunConfig& cfg, bool einfty, int chart_stem_min,
              int chart_stem_max, int chart_smax) {
    Engine e = make_engine(cfg, einfty);
    ChartSpec spec;
    spec.page = e.ss->page();
    spec.stem_min = chart_stem_min;
    spec.stem_max = chart_stem_max;
    spec.s_max = chart_smax;
    Chart ch = Chart::build(*e.ss, spec);
    std::string base = "chart_p" + std::to_string(spec.page);
    spit(std::filesystem::path(cfg.out_dir) / (base + ".svg"), ch.to_svg());
    spit(std::filesystem::path(cfg.out_dir) / (base + ".txt"), ch.to_ascii());
    std::cout << ch.to_ascii();
    return 0;
}

StabilizerElement named_element(const std::string& name, int n) {
    if (name == "1") return StabilizerElement::identity(n);
    if (name == "-1")
        return StabilizerElement::scalar(GaloisRingElement::from_int(-1, n));
    if (name == "w") return StabilizerElement::scalar(GaloisRingElement::omega(n));
    if (name == "-w") return -StabilizerElement::scalar(GaloisRingElement::omega(n));
    if (name == "S") return StabilizerElement::s_element(n);
    if (name == "i") return quaternion_pair(n).first;
    if (name == "j") return quaternion_pair(n).second;
    if (name == "gal") return galois_section(n);
    throw InputError("unknown element '" + name + "' (use 1, -1, w, -w, S, i, j, gal)");
}

int cmd_stab_norm(const std::string& a, const std::string& b, bool galois, int n) {
    StabilizerElement x{parse_galois(a, n), parse_galois(b, n), galois ? 1 : 0};
    NormValue v = norm(x);
    std::cout << format_rational(v.scalar.a(), n);
    if (v.galois) std::cout << " * phi";
    std::cout << "\n";
    return 0;
}

int cmd_stab_find_order4(int n) {
    auto sols = find_order4(n);
    for (const auto& x : sols) {
        std::cout << x.to_string() << "\n";
        StabilizerElement sq = x * x;
        StabilizerElement m1 =
            StabilizerElement::scalar(GaloisRingElement::from_int(-1, n));
        std::cout << "  x^2 = -1 mod 2^" << n << ": " << (sq == m1 ? "verified" : "FAIL")
                  << "\n";
    }
    std::cout << sols.size() << " solutions\n";
    return 0;
}

int cmd_stab_closure(const std::string& gens_text, int n, std::size_t bound) {
    std::vector<StabilizerElement> gens;
    std::stringstream ss(gens_text);
    std::string tok;
    while (std::getline(ss, tok, ',')) gens.push_back(named_element(tok, n));
    ClosureResult res = subgroup_closure(gens, bound);
    std::cout << "order " << res.order() << ", "
              << (res.stabilized ? "stabilized" : "not stabilized within bound") << "\n";
    return res.stabilized ? 0 : kExitAssert;
}

int cmd_dual_ledger(const RunConfig& cfg, int k) {
    // The k = 2 case needs the engine's survival certificate; any other k
    // is bookkeeping only, so the engine can stay on its first page.
    Engine e = make_engine(cfg, k == 2);
    ShiftLedger ledger;
    try {
        ledger = duality_ledger(*e.ss, k);
    } catch (const std::runtime_error& ex) {
        std::cerr << ex.what() << "\n";
        return kExitAssert;
    }
    for (const auto& s : ledger.steps)
        std::cout << (s.contribution >= 0 ? "+" : "") << s.contribution << "  "
                  << s.description << "  [" << s.anchor << "]\n";
    std::cout << "total " << ledger.total << "\n";
    return 0;
}

int cmd_dual_restrict(const std::string& group) {
    RestrictResult r = restrict_shift(group);
    std::cout << r.shift << "\n";
    std::cout << "certificate: " << r.certificate << "\n";
    if (r.flagged) std::cout << "note: " << r.note << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic spectral sequence engine and duality ledger"};
    app.require_subcommand(1);

    RunConfig cfg;

    // sseq run / sseq chart
    CLI::App* sseq = app.add_subcommand("sseq", "spectral sequence computations");
    sseq->require_subcommand(1);
    CLI::App* run = sseq->add_subcommand("run", "run to the last page and report stems");
    std::string stems_text = "45,-1,63,127";
    std::vector<std::string> assert_texts;
    add_engine_flags(*run, cfg);
    run->add_option("--stems", stems_text, "comma-separated stems to report");
    run->add_option("--assert", assert_texts,
                    "stem:dimension[:filtration] assertion (repeatable)");

    CLI::App* chart = sseq->add_subcommand("chart", "emit SVG and ASCII charts");
    bool einfty = false;
    int chart_stem_min = 0, chart_stem_max = 48, chart_smax = 28;
    add_engine_flags(*chart, cfg);
    chart->add_flag("--einfty", einfty, "chart the last page instead of the second");
    chart->add_option("--chart-stem-min", chart_stem_min, "chart window lower stem");
    chart->add_option("--chart-stem-max", chart_stem_max, "chart window upper stem");
    chart->add_option("--chart-smax", chart_smax, "chart filtration bound");

    // stab
    CLI::App* stab = app.add_subcommand("stab", "quaternionic order arithmetic");
    stab->require_subcommand(1);
    int stab_n = 8;
    CLI::App* nrm = stab->add_subcommand("norm", "norm of a + b*S");
    std::string a_text = "1", b_text = "0";
    bool galois = false;
    nrm->add_option("-N", stab_n, "precision");
    nrm->add_option("--a", a_text, "S-free coordinate, e.g. '1+2w'");
    nrm->add_option("--b", b_text, "S coordinate");
    nrm->add_flag("--galois", galois, "attach the Galois twist");

    CLI::App* fo4 = stab->add_subcommand("find-order4", "solutions of x^2 = -1");
    fo4->add_option("-N", stab_n, "precision");

    CLI::App* clo = stab->add_subcommand("closure", "multiplicative closure");
    std::string gens_text = "i,j,w";
    std::size_t bound = 100;
    clo->add_option("-N", stab_n, "precision");
    clo->add_option("--gens", gens_text, "generators from {1,-1,w,-w,S,i,j,gal}");
    clo->add_option("--bound", bound, "closure size bound");

    // dual
    CLI::App* dual = app.add_subcommand("dual", "duality shift bookkeeping");
    dual->require_subcommand(1);
    CLI::App* ledger = dual->add_subcommand("ledger", "suspension-shift ledger");
    int k = 2;
    add_engine_flags(*ledger, cfg);
    ledger->add_option("--k", k, "permanent-cycle degree parameter");

    CLI::App* restrict_cmd = dual->add_subcommand("restrict", "restricted shift");
    std::string group = "G24";
    restrict_cmd->add_option("--group", group, "registered subgroup name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints help or the diagnostic
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (run->parsed()) return cmd_sseq_run(cfg, parse_int_list(stems_text), assert_texts);
        if (chart->parsed())
            return cmd_chart(cfg, einfty, chart_stem_min, chart_stem_max, chart_smax);
        if (nrm->parsed()) return cmd_stab_norm(a_text, b_text, galois, stab_n);
        if (fo4->parsed()) return cmd_stab_find_order4(stab_n);
        if (clo->parsed()) return cmd_stab_closure(gens_text, stab_n, bound);
        if (ledger->parsed()) return cmd_dual_ledger(cfg, k);
        if (restrict_cmd->parsed()) return cmd_dual_restrict(group);
    } catch (const AssertError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAssert;
    } catch (const std::exception& e) {
        // Parse and input problems: malformed expressions carry their
        // line/column in the message.
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
