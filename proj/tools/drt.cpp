// drt: command-line front end over algebra spec files.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "drt/classify.hpp"
#include "drt/spec.hpp"

using namespace drt;
using json = nlohmann::json;

namespace {

struct Options {
    std::string file, action;
    std::vector<std::string> names;
    std::string emit = "table";
    std::string out;
    bool assume_irreducible = false;
    int at = 0;
    std::size_t depth = 4;
    int m = 1;
    std::size_t max_mult = 1, max_dim = 0, bound = 2;
    std::uint64_t cap = 1ull << 24;
    unsigned jobs = 1;
    std::string family;
};

// Collects the three renderings; only the requested one is printed.
class Report {
public:
    Report(const spec::Spec& s, const Options& o) : s_(s), o_(o) {}

    void line(const std::string& l) { table_ << l << "\n"; }
    void record(json r) { records_.push_back(std::move(r)); }
    void complex(const std::string& name, const ProjComplex& x, bool large) {
        repr_ << "\n" << spec::format_complex_section(name, x, large);
    }
    void flag(const std::string& what) { flags_.push_back(what); }

    int finish() const {
        std::ostringstream os;
        if (o_.emit == "table") {
            os << table_.str();
        } else if (o_.emit == "records") {
            for (const auto& r : records_) os << r.dump() << "\n";
        } else {
            os << s_.header() << repr_.str();
        }
        if (o_.out.empty()) {
            std::cout << os.str();
        } else {
            std::ofstream f(o_.out);
            require(f.good(), "cannot write '" + o_.out + "'");
            f << os.str();
        }
        for (const auto& f : flags_) std::cerr << "invariant flag: " << f << "\n";
        return flags_.empty() ? 0 : 3;
    }

private:
    const spec::Spec& s_;
    const Options& o_;
    std::ostringstream table_, repr_;
    std::vector<json> records_;
    std::vector<std::string> flags_;
};

std::string indent(const std::string& text, const std::string& pad = "  ") {
    std::string out;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) out += pad + l + "\n";
    if (!out.empty()) out.pop_back();
    return out;
}

json complex_json(const ProjComplex& x) {
    json j = json::object();
    if (x.empty()) {
        j["terms"] = json::array();
        return j;
    }
    const Algebra& a = x.algebra();
    j["lo"] = x.lo();
    json terms = json::array();
    json diffs = json::array();
    for (int i = x.lo(); i <= x.hi(); ++i) {
        json t = json::array();
        for (auto u : x.components(i)) t.push_back(a.proj(u).name);
        terms.push_back(t);
        if (i == x.hi()) continue;
        const AMatrix d = x.differential(i);
        json rows = json::array();
        for (std::size_t r = 0; r < d.rows; ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < d.cols; ++c) row.push_back(a.format_element(d(r, c)));
            rows.push_back(row);
        }
        diffs.push_back(rows);
    }
    j["terms"] = terms;
    j["differentials"] = diffs;
    return j;
}

json cohomology_json(const std::map<int, std::size_t>& h) {
    json j = json::object();
    for (const auto& [i, n] : h)
        if (n) j[std::to_string(i)] = n;
    return j;
}

std::string vec_text(const std::vector<std::size_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

std::string shape_text(const ShapeVector& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + vec_text(s[i]);
    return out + "]";
}

// r/l as an exact fraction
std::string frac(std::size_t r, std::size_t l) {
    if (l == 0 || r % l == 0) return std::to_string(l ? r / l : 0);
    return std::to_string(r) + "/" + std::to_string(l);
}

const ProjComplex& named_complex(const spec::Spec& s, const Options& o, std::size_t i) {
    require(o.names.size() > i, o.action + " needs " + std::to_string(i + 1) + " complex name(s)");
    return s.complex(o.names[i]);
}

void range_lines(Report& rep, const std::string& name, const ProjComplex& x) {
    auto r = range_stats(x);
    rep.line("hl=" + std::to_string(r.hl) + " hw=" + std::to_string(r.hw) + " hr=" + std::to_string(r.hr));
    rep.record({{"kind", "range"}, {"complex", name}, {"hl", r.hl}, {"hw", r.hw}, {"hr", r.hr},
                {"cohomology", cohomology_json(r.cohomology_dims)}});
}

// ---------------------------------------------------------------- validate

void cmd_validate(const spec::Spec& s, Report& rep) {
    const Algebra& a = *s.algebra();
    rep.line("algebra " + (s.name().empty() ? s.source() : s.name()));
    std::istringstream is(a.describe());
    for (std::string l; std::getline(is, l);) rep.line(l);
    json rec{{"kind", "algebra"}, {"name", s.name()}, {"field", a.field().name()}, {"dim", a.dim()},
             {"radical_dim", a.radical_basis().size()}, {"loewy_length", a.loewy_length()}};
    json projs = json::array();
    for (std::size_t u = 0; u < a.num_projectives(); ++u)
        projs.push_back({{"name", a.proj(u).name}, {"dim", a.proj(u).basis.size()}});
    rec["projectives"] = projs;
    rep.record(rec);
    if (s.has_extension()) {
        const auto& c = s.extension();
        std::string line = "extension " + c.large_field().name() + ", degree " + std::to_string(c.degree()) + ", A_K projectives:";
        json pk = json::array();
        for (std::size_t u = 0; u < c.large()->num_projectives(); ++u) {
            line += " " + c.large()->proj(u).name + "(dim " + std::to_string(c.large()->proj(u).basis.size()) + ")";
            pk.push_back(c.large()->proj(u).name);
        }
        rep.line(line);
        rep.record({{"kind", "extension"}, {"field", c.large_field().name()}, {"degree", c.degree()}, {"projectives", pk}});
    }
    for (const auto& n : s.complex_names()) {
        const auto& x = s.complex(n);
        const bool minimal = is_homotopy_minimal(x);
        std::string l = "complex " + n + (s.complex_over_large(n) ? " (over K)" : "") + ": ";
        l += x.empty() ? "zero" : "degrees " + std::to_string(x.lo()) + ".." + std::to_string(x.hi());
        l += minimal ? ", minimal" : ", not minimal";
        rep.line(l);
        rep.record({{"kind", "complex"}, {"name", n}, {"over", s.complex_over_large(n) ? "K" : "k"}, {"minimal", minimal},
                    {"complex", complex_json(x)}});
        rep.complex(n, x, s.complex_over_large(n));
    }
    for (const auto& n : s.module_names()) {
        const auto& m = s.module(n);
        rep.line("module " + n + ": dim " + std::to_string(m.dim()) + ", dimension vector " + vec_text(m.dimension_vector()));
        rep.record({{"kind", "module"}, {"name", n}, {"dim", m.dim()}, {"dimension_vector", m.dimension_vector()}});
    }
    for (const auto& n : s.family_names()) {
        rep.line("family " + n + ": " + std::to_string(s.family_samples(n).size()) + " samples");
        rep.record({{"kind", "family"}, {"name", n}, {"samples", s.family_samples(n).size()}});
    }
}

// ---------------------------------------------------------------- complex

void cmd_complex(const spec::Spec& s, const Options& o, Report& rep) {
    const std::string& act = o.action;
    if (act == "resolve") {
        require(!o.names.empty(), "resolve needs a complex or module name");
        const std::string& n = o.names[0];
        Resolution r = s.has_module(n) ? projective_resolution(s.module(n), o.depth)
                                       : projective_resolution(s.complex(n), o.depth);
        rep.line(format_complex(r.complex));
        rep.line(std::string("complete: ") + (r.complete ? "yes" : "no"));
        rep.record({{"kind", "resolution"}, {"source", n}, {"depth", o.depth}, {"complete", r.complete}, {"complex", complex_json(r.complex)}});
        rep.complex(n + "_res", r.complex, false);
        return;
    }
    const ProjComplex& x = named_complex(s, o, 0);
    const std::string& xn = o.names[0];
    const bool large = s.complex_over_large(xn);
    if (act == "minimize") {
        auto r = minimize(x);
        invariant(verify_minimize(x, r), "minimize certificate failed");
        rep.line(format_complex(r.minimal));
        rep.line("cancellations: " + std::to_string(r.cancellations));
        rep.line("certificate: verified");
        rep.record({{"kind", "minimize"}, {"complex", xn}, {"cancellations", r.cancellations}, {"verified", true},
                    {"minimal", complex_json(r.minimal)}});
        rep.complex(xn + "_min", r.minimal, large);
    } else if (act == "cohomology") {
        auto h = cohomology(x);
        bool any = false;
        for (const auto& [i, n] : h)
            if (n) {
                rep.line("H^" + std::to_string(i) + " = " + std::to_string(n));
                any = true;
            }
        if (!any) rep.line("acyclic");
        rep.record({{"kind", "cohomology"}, {"complex", xn}, {"dims", cohomology_json(h)}});
    } else if (act == "range") {
        range_lines(rep, xn, x);
    } else if (act == "truncate") {
        auto t = brutal_truncate(x, o.at);
        rep.line(format_complex(t));
        rep.record({{"kind", "truncate"}, {"complex", xn}, {"at", o.at}, {"result", complex_json(t)}});
        rep.complex(xn + "_trunc", t, large);
    } else if (act == "hom") {
        const ProjComplex& y = named_complex(s, o, 1);
        auto h = hom_space(x, y, true);
        rep.line("chain maps: " + std::to_string(h.chain_maps.size()) + ", null-homotopic: " +
                 std::to_string(h.null_homotopic.size()) + ", homotopy classes: " + std::to_string(h.homotopy_dim()));
        rep.record({{"kind", "hom"}, {"source", xn}, {"target", o.names[1]}, {"chain_maps", h.chain_maps.size()},
                    {"null_homotopic", h.null_homotopic.size()}, {"homotopy_classes", h.homotopy_dim()}});
    } else if (act == "iso") {
        const ProjComplex& y = named_complex(s, o, 1);
        require(x.algebra_ptr() == y.algebra_ptr(), "iso needs two complexes over the same algebra");
        // compared in the homotopy category: minimal forms first
        auto mx = minimize(x).minimal;
        auto my = minimize(y).minimal;
        auto r = is_isomorphic(mx, my);
        if (r.isomorphic)
            rep.line("isomorphic (certificate verified)");
        else
            rep.line("not isomorphic: " + r.reason);
        rep.record({{"kind", "iso"}, {"left", xn}, {"right", o.names[1]}, {"isomorphic", r.isomorphic}, {"reason", r.reason}});
    } else if (act == "decompose") {
        auto mx = minimize(x).minimal;
        auto parts = decompose_complex(mx);
        if (parts.empty()) rep.line("zero complex");
        else rep.line(std::to_string(parts.size()) + " indecomposable summand(s)");
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const auto& p = parts[i].complex;
            const auto hr = range_stats(p).hr;
            rep.line("summand " + std::to_string(i + 1) + ": hr=" + std::to_string(hr));
            rep.line(indent(format_complex(p)));
            rep.record({{"kind", "summand"}, {"complex", xn}, {"index", i + 1}, {"hr", hr}, {"summand", complex_json(p)}});
            rep.complex(xn + "_" + std::to_string(i + 1), p, large);
        }
    } else {
        fail(ErrorKind::Precondition, "unknown complex action '" + act + "'");
    }
}

// ---------------------------------------------------------------- extension

void cmd_extension(const spec::Spec& s, const Options& o, Report& rep) {
    require(s.has_extension(), "spec has no extension section");
    const auto& ctx = s.extension();
    const ProjComplex& x = named_complex(s, o, 0);
    const std::string& xn = o.names[0];
    const bool large = s.complex_over_large(xn);
    const std::size_t l = ctx.degree();
    const std::string& act = o.action;
    if (act == "tensor") {
        require(!large, "tensor needs a complex over k");
        auto y = tensor_complex(x, ctx);
        rep.line(format_complex(y));
        rep.line("hr: " + std::to_string(range_stats(x).hr) + " -> " + std::to_string(range_stats(y).hr));
        rep.record({{"kind", "tensor"}, {"complex", xn}, {"l", l}, {"hr_k", range_stats(x).hr}, {"hr_K", range_stats(y).hr},
                    {"result", complex_json(y)}});
        rep.complex(xn + "_K", y, true);
    } else if (act == "restrict") {
        require(large, "restrict needs a complex over K (over = \"K\")");
        auto y = restrict_complex(x, ctx);
        rep.line(format_complex(y));
        rep.line("hr: " + std::to_string(range_stats(x).hr) + " -> " + std::to_string(range_stats(y).hr));
        rep.record({{"kind", "restrict"}, {"complex", xn}, {"l", l}, {"hr_K", range_stats(x).hr}, {"hr_k", range_stats(y).hr},
                    {"result", complex_json(y)}});
        rep.complex(xn + "_k", y, false);
    } else if (act == "unit-iso") {
        require(!large, "unit-iso needs a complex over k");
        auto u = unit_iso(x, ctx);
        invariant(u.verified, "unit isomorphism certificate failed");
        rep.line("F(X⊗K) ≅ X^l: verified (l = " + std::to_string(l) + ")");
        rep.record({{"kind", "unit_iso"}, {"complex", xn}, {"l", l}, {"verified", true}});
    } else if (act == "witnesses") {
        if (l == 1) {
            rep.line("identity witnesses (l = 1)");
            rep.record({{"kind", "witness"}, {"complex", xn}, {"l", 1}, {"identity", true}});
            return;
        }
        if (!large) {
            auto w = summand_witness_up(x, ctx);
            rep.line("X⊗K has " + std::to_string(w.summands_up) + " indecomposable summand(s); Y = one of them:");
            rep.line(indent(format_complex(w.y)));
            rep.line("F(Y) has " + std::to_string(w.summands_down) + " summand(s); X is one of them: " +
                     (w.match.isomorphic ? "verified" : "not found"));
            if (!w.match.isomorphic) rep.flag("up witness for " + xn + " not found");
            rep.record({{"kind", "witness"}, {"direction", "up"}, {"complex", xn}, {"summands_up", w.summands_up},
                        {"summands_down", w.summands_down}, {"found", w.match.isomorphic}, {"y", complex_json(w.y)}});
            rep.complex(xn + "_Y", w.y, true);
        } else {
            auto w = summand_witness_down(x, ctx);
            rep.line("F(Y) has " + std::to_string(w.summands_down) + " indecomposable summand(s); X = one of them:");
            rep.line(indent(format_complex(w.x)));
            rep.line("X⊗K has " + std::to_string(w.summands_up) + " summand(s); Y is one of them: " +
                     (w.match.isomorphic ? "verified" : "not found"));
            if (!w.match.isomorphic) rep.flag("down witness for " + xn + " not found");
            rep.record({{"kind", "witness"}, {"direction", "down"}, {"complex", xn}, {"summands_down", w.summands_down},
                        {"summands_up", w.summands_up}, {"found", w.match.isomorphic}, {"x", complex_json(w.x)}});
            rep.complex(xn + "_X", w.x, false);
        }
    } else if (act == "bounds") {
        auto r = large ? range_bound_report_down(x, ctx) : range_bound_report_up(x, ctx);
        std::string ranges = "[";
        for (std::size_t i = 0; i < r.summand_ranges.size(); ++i) ranges += (i ? "," : "") + std::to_string(r.summand_ranges[i]);
        ranges += "]";
        const std::string lo = large ? std::to_string(r.r) : frac(r.r, l);
        const std::string hi = large ? std::to_string(l * r.r) : std::to_string(r.r);
        const bool ok = r.bounds_ok && r.certificates_ok;
        rep.line("summand ranges " + ranges + " ⊆ [" + lo + "," + hi + "]: " + (ok ? "ok" : "VIOLATED"));
        if (!ok) rep.flag("range bounds for " + xn);
        rep.record({{"kind", "bounds"}, {"direction", r.direction}, {"complex", xn}, {"l", l}, {"r", r.r},
                    {"summand_ranges", r.summand_ranges}, {"interval", {lo, hi}}, {"ok", ok}});
    } else {
        fail(ErrorKind::Precondition, "unknown extension action '" + act + "'");
    }
}

// ---------------------------------------------------------------- classify

EnumerationBounds bounds_of(const Options& o) {
    EnumerationBounds b;
    b.m = o.m;
    b.max_mult = o.max_mult;
    b.max_dim = o.max_dim;
    b.cap = o.cap;
    b.jobs = o.jobs;
    return b;
}

std::string pick_family(const spec::Spec& s, const Options& o) {
    if (!o.family.empty()) return o.family;
    require(!s.family_names().empty(), "spec has no [family.NAME] section");
    return s.family_names().front();
}

void family_lines(Report& rep, const std::string& name, const std::string& side, const FamilyReport& f) {
    const std::size_t good = f.samples - f.degenerate.size();
    std::string l = side + std::to_string(f.witnesses) + "/" + std::to_string(f.samples) + " pairwise non-isomorphic";
    l += f.common_hr ? ", hr constant (hr=" + std::to_string(*f.common_hr) + ")" : ", hr not constant";
    rep.line(l);
    for (const auto& d : f.degenerate) rep.line("  degenerate " + d);
    for (const auto& [i, j] : f.collisions) rep.line("  isomorphic samples " + std::to_string(i) + " and " + std::to_string(j));
    json rec{{"kind", "family"}, {"family", name}, {"side", side.empty() ? "k" : side.substr(0, side.find(':'))},
             {"samples", f.samples}, {"usable", good}, {"witnesses", f.witnesses}, {"ranges", f.ranges},
             {"degenerate", f.degenerate}, {"collisions", f.collisions.size()}};
    rec["common_hr"] = f.common_hr ? json(*f.common_hr) : json(nullptr);
    rep.record(rec);
}

void cmd_classify(const spec::Spec& s, const Options& o, Report& rep) {
    const auto& act = o.action;
    const AlgebraPtr& a = s.algebra();
    if (act == "family") {
        const std::string n = pick_family(s, o);
        auto f = family_probe(s.family_algebra(n), s.family(n), s.family_samples(n));
        family_lines(rep, n, "", f);
        return;
    }
    if (act == "dichotomy" && !a->field().finite()) {
        require(s.has_extension(), "dichotomy over an infinite field needs an extension section and a family");
        const std::string n = pick_family(s, o);
        auto d = c_dichotomy_family(s.extension(), s.family(n), s.family_samples(n));
        family_lines(rep, n, "k: ", *d.family_small);
        family_lines(rep, n, "K: ", *d.family_large);
        rep.line(std::string("verdicts agree: ") + (d.family_ranges_ok ? "yes" : "no"));
        rep.record({{"kind", "dichotomy"}, {"mode", "family"}, {"agree", d.family_ranges_ok}});
        if (!d.family_ranges_ok) rep.flag("family ranges differ across the extension");
        return;
    }
    const EnumerationBounds b = bounds_of(o);
    if (act == "dichotomy") {
        auto d = c_dichotomy_report(a, s.has_extension() ? &s.extension() : nullptr, 0, o.m, b);
        auto level_line = [&](const std::string& side, const DichotomyLevel& lv) {
            std::string h;
            for (const auto& [hr, n] : lv.histogram) h += (h.empty() ? "" : " ") + std::to_string(hr) + ":" + std::to_string(n);
            rep.line(side + " m=" + std::to_string(lv.m) + ": " + std::to_string(lv.indecomposables) + " indecomposables, hr {" + h + "}");
            json hist = json::object();
            for (const auto& [hr, n] : lv.histogram) hist[std::to_string(hr)] = n;
            rep.record({{"kind", "dichotomy_level"}, {"side", side}, {"m", lv.m}, {"indecomposables", lv.indecomposables}, {"histogram", hist}});
        };
        for (const auto& lv : d.small) level_line("k", lv);
        for (const auto& lv : d.large) level_line("K", lv);
        rep.line(std::string("monotone in m: ") + (d.monotone ? "yes" : "no"));
        if (s.has_extension()) rep.line(std::string("coherent under base change: ") + (d.coherent ? "yes" : "no"));
        rep.record({{"kind", "dichotomy"}, {"mode", "enumeration"}, {"monotone", d.monotone}, {"coherent", d.coherent}});
        if (!d.monotone) rep.flag("enumeration is not monotone in m");
        if (!d.coherent) rep.flag("enumerations over k and K disagree");
        return;
    }
    auto r = enumerate_indecomposables(a, b);
    if (act == "enumerate") {
        rep.line(std::to_string(r.reps.size()) + " representatives (m=" + std::to_string(b.m) + ", max-mult=" +
                 std::to_string(b.max_mult) + ", " + std::to_string(r.shapes) + " shapes, " + std::to_string(r.candidates) +
                 " candidates)");
        for (std::size_t i = 0; i < r.reps.size(); ++i) {
            const auto& x = r.reps[i];
            rep.line("#" + std::to_string(i + 1) + " shape " + shape_text(x.shape) + " H " + vec_text(x.cohomology) +
                     " hr=" + std::to_string(x.hr));
            rep.line(indent(format_complex(x.complex)));
            rep.record({{"kind", "representative"}, {"index", i + 1}, {"shape", x.shape}, {"cohomology", x.cohomology},
                        {"hr", x.hr}, {"complex", complex_json(x.complex)}});
            rep.complex("R" + std::to_string(i + 1), x.complex, false);
        }
        json by_shape = json::array();
        for (const auto& [sh, n] : r.by_shape) by_shape.push_back({{"shape", sh}, {"count", n}});
        json by_coh = json::array();
        for (const auto& [v, n] : r.by_cohomology) by_coh.push_back({{"cohomology", v}, {"count", n}});
        json hist = json::object();
        for (const auto& [hr, n] : r.histogram) hist[std::to_string(hr)] = n;
        rep.record({{"kind", "summary"}, {"m", b.m}, {"max_mult", b.max_mult}, {"max_dim", b.max_dim}, {"representatives", r.reps.size()},
                    {"shapes", r.shapes}, {"candidates", r.candidates}, {"by_shape", by_shape}, {"by_cohomology", by_coh},
                    {"histogram", hist}});
    } else if (act == "histogram") {
        for (const auto& e : range_histogram(r)) {
            rep.line("hr=" + std::to_string(e.hr) + ": " + std::to_string(e.count) +
                     (e.at_boundary ? " (" + std::to_string(e.at_boundary) + " at the multiplicity bound)" : ""));
            rep.record({{"kind", "histogram"}, {"hr", e.hr}, {"count", e.count}, {"at_boundary", e.at_boundary}});
        }
    } else if (act == "discreteness") {
        auto t = discreteness_probe(r, o.bound);
        rep.line("cohomology vectors with entries <= " + std::to_string(o.bound) + ":");
        for (const auto& [v, n] : t.objects) {
            auto it = t.indecomposables.find(v);
            const std::size_t k = it == t.indecomposables.end() ? 0 : it->second;
            rep.line("H " + vec_text(v) + ": " + std::to_string(n) + " objects, " + std::to_string(k) + " indecomposable");
            rep.record({{"kind", "discreteness"}, {"cohomology", v}, {"objects", n}, {"indecomposables", k}});
        }
    } else {
        fail(ErrorKind::Precondition, "unknown classify action '" + act + "'");
    }
}

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::Precondition:
        case ErrorKind::Parse:
        case ErrorKind::Unsupported: return 1;
        case ErrorKind::SearchCap: return 2;
        case ErrorKind::Invariant: return 3;
    }
    return 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"drt: derived representation type workbench"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--emit", o.emit, "output form")->check(CLI::IsMember({"table", "records", "repr"}));
    app.add_option("--out", o.out, "write the report to a file");
    app.add_flag("--assume-irreducible", o.assume_irreducible, "skip irreducibility checks of minimal polynomials");

    auto* validate = app.add_subcommand("validate", "build the algebra, extension and every declared object");
    validate->add_option("file", o.file, "spec file")->required();

    auto* cx = app.add_subcommand("complex", "operations on declared complexes");
    cx->add_option("action", o.action, "minimize|cohomology|range|truncate|resolve|hom|iso|decompose")
        ->required()
        ->check(CLI::IsMember({"minimize", "cohomology", "range", "truncate", "resolve", "hom", "iso", "decompose"}));
    cx->add_option("file", o.file, "spec file")->required();
    cx->add_option("names", o.names, "complex (or module) names");
    cx->add_option("--at", o.at, "truncation degree");
    cx->add_option("--depth", o.depth, "resolution depth");

    auto* ext = app.add_subcommand("extension", "base change and restriction");
    ext->add_option("action", o.action, "tensor|restrict|unit-iso|witnesses|bounds")
        ->required()
        ->check(CLI::IsMember({"tensor", "restrict", "unit-iso", "witnesses", "bounds"}));
    ext->add_option("file", o.file, "spec file")->required();
    ext->add_option("names", o.names, "complex name")->required();

    auto* cl = app.add_subcommand("classify", "enumeration and representation-type probes");
    cl->add_option("action", o.action, "enumerate|discreteness|histogram|family|dichotomy")
        ->required()
        ->check(CLI::IsMember({"enumerate", "discreteness", "histogram", "family", "dichotomy"}));
    cl->add_option("file", o.file, "spec file")->required();
    cl->add_option("--m", o.m, "degrees 0..m")->check(CLI::Range(0, 16));
    cl->add_option("--max-mult", o.max_mult, "multiplicity bound per projective per degree");
    cl->add_option("--max-dim", o.max_dim, "bound on the total dimension (0 = none)");
    cl->add_option("--cap", o.cap, "largest number of candidate differentials");
    cl->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1u, 256u));
    cl->add_option("--bound", o.bound, "cohomology bound for discreteness");
    cl->add_option("--family", o.family, "family name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    try {
        spec::LoadOptions lo;
        lo.assume_irreducible = o.assume_irreducible;
        const auto s = spec::Spec::load(o.file, lo);
        Report rep(s, o);
        if (validate->parsed())
            cmd_validate(s, rep);
        else if (cx->parsed())
            cmd_complex(s, o, rep);
        else if (ext->parsed())
            cmd_extension(s, o, rep);
        else
            cmd_classify(s, o, rep);
        return rep.finish();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
