// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
//   acceptance [criterion ...]    run only the listed criteria

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <thread>

#include "algebras.hpp"
#include "drt/classify.hpp"
#include "drt/functors.hpp"
#include "drt/module.hpp"
#include "oracles.hpp"
#include "random_complex.hpp"

using namespace drt;
using namespace drt::testing;

namespace {

// pinned sizes and expected values
constexpr std::size_t kCorpus = 50;        // criteria 1-5
constexpr std::size_t kRandom = 200;       // criterion 9
constexpr std::size_t kFamily = 100;       // criterion 8
constexpr std::size_t kA2Reps = 5;         // criterion 6
constexpr std::size_t kKronecker11 = 3;    // criterion 6, |P^1(F_2)|
constexpr std::size_t kMaxTotalMult = 3;   // criterion 7
constexpr std::size_t kSliceHr = 2;        // criterion 10
constexpr std::size_t kBruteDim = 6;       // criterion 10, dimension cap for the brute sweep at multiplicity 2
constexpr unsigned kSeed = 20240611;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::vector<std::size_t> coh_vector(const ProjComplex& x, int m) {
    std::vector<std::size_t> v(static_cast<std::size_t>(m) + 1, 0);
    for (const auto& [i, n] : cohomology(x)) v[static_cast<std::size_t>(i)] = n;
    return v;
}

std::map<int, std::size_t> nonzero(const std::map<int, std::size_t>& h) {
    std::map<int, std::size_t> out;
    for (const auto& [i, n] : h)
        if (n) out[i] = n;
    return out;
}

// ---------------------------------------------------------------- corpus for 1-5

struct Instance {
    ProjComplex x;
    std::size_t ctx;  // index into Corpus::ctxs
};

struct Corpus {
    std::vector<AlgebraPtr> algs;
    std::vector<std::unique_ptr<ExtensionContext>> ctxs;  // per algebra: F4, F8
    std::vector<Instance> items;
};

const Corpus& corpus() {
    static const Corpus c = [] {
        Corpus c;
        auto f2 = Field::prime(2);
        c.algs = {dual_numbers(f2), a2(f2), kronecker(f2)};
        for (const auto& a : c.algs) {
            c.ctxs.push_back(std::make_unique<ExtensionContext>(a, gf4()));
            c.ctxs.push_back(std::make_unique<ExtensionContext>(a, gf8()));
        }
        std::mt19937 rng(kSeed);
        while (c.items.size() < kCorpus) {
            const std::size_t ai = rng() % c.algs.size();
            RandomComplexSpec spec;
            spec.degrees = 1 + static_cast<int>(rng() % 3);  // m <= 2
            spec.max_mult = 1 + rng() % 2;
            auto x = minimize(random_complex(c.algs[ai], rng, spec)).minimal;
            if (x.empty()) continue;
            c.items.push_back({std::move(x), 2 * ai + c.items.size() % 2});
        }
        return c;
    }();
    return c;
}

// indecomposable X over k with their contexts, and the summands Y of X (x) K
struct Pieces {
    std::vector<std::pair<ProjComplex, const ExtensionContext*>> xs, ys;
};

const Pieces& pieces() {
    static const Pieces p = [] {
        Pieces p;
        for (const auto& it : corpus().items) {
            const auto* ctx = corpus().ctxs[it.ctx].get();
            for (auto& s : decompose_complex(it.x)) p.xs.emplace_back(std::move(s.complex), ctx);
        }
        for (const auto& [x, ctx] : p.xs)
            for (auto& s : decompose_complex(minimize(tensor_complex(x, *ctx)).minimal)) p.ys.emplace_back(std::move(s.complex), ctx);
        return p;
    }();
    return p;
}

Outcome criterion1() {
    std::size_t ok[2] = {0, 0}, total[2] = {0, 0};
    for (const auto& it : corpus().items) {
        const std::size_t which = it.ctx % 2;
        ++total[which];
        if (unit_iso(it.x, *corpus().ctxs[it.ctx]).verified) ++ok[which];
    }
    Outcome o;
    o.pass = ok[0] == total[0] && ok[1] == total[1] && total[0] + total[1] == kCorpus;
    o.detail = "F4/F2 " + std::to_string(ok[0]) + "/" + std::to_string(total[0]) + ", F8/F2 " + std::to_string(ok[1]) + "/" +
               std::to_string(total[1]);
    return o;
}

Outcome criterion2() {
    std::size_t checks = 0, bad = 0;
    for (const auto& it : corpus().items) {
        const auto& ctx = *corpus().ctxs[it.ctx];
        const std::size_t l = ctx.degree();
        const auto y = tensor_complex(it.x, ctx);
        const auto rx = range_stats(it.x), ry = range_stats(y);
        ++checks;
        if (ry.hr != rx.hr || nonzero(ry.cohomology_dims) != nonzero(rx.cohomology_dims)) ++bad;
        // F on every summand of X (x) K, and on X (x) K itself
        std::vector<ProjComplex> ys{y};
        for (auto& s : decompose_complex(minimize(y).minimal)) ys.push_back(std::move(s.complex));
        for (const auto& z : ys) {
            const auto rz = range_stats(z), rf = range_stats(restrict_complex(z, ctx));
            auto scaled = nonzero(rz.cohomology_dims);
            for (auto& [i, n] : scaled) n *= l;
            ++checks;
            if (rf.hr != l * rz.hr || nonzero(rf.cohomology_dims) != scaled) ++bad;
        }
    }
    return {bad == 0, std::to_string(checks) + " equalities, " + std::to_string(bad) + " failures"};
}

Outcome criterion3() {
    std::size_t bad = 0;
    for (const auto& [x, ctx] : pieces().xs)
        if (decompose_complex(minimize(tensor_complex(x, *ctx)).minimal).size() > ctx->degree()) ++bad;
    for (const auto& [y, ctx] : pieces().ys)
        if (decompose_complex(minimize(restrict_complex(y, *ctx)).minimal).size() > ctx->degree()) ++bad;
    return {bad == 0, std::to_string(pieces().xs.size()) + " X, " + std::to_string(pieces().ys.size()) + " Y, " +
                          std::to_string(bad) + " violations"};
}

Outcome criterion4() {
    std::size_t bad = 0;
    for (const auto& [x, ctx] : pieces().xs) {
        auto r = range_bound_report_up(x, *ctx);
        if (!r.bounds_ok || !r.certificates_ok) ++bad;
    }
    for (const auto& [y, ctx] : pieces().ys) {
        auto r = range_bound_report_down(y, *ctx);
        if (!r.bounds_ok || !r.certificates_ok) ++bad;
    }
    // F_2[t]/(t^2+t+1) = F_4 splits over F_4: the stalk A (hr 2) becomes two stalks of hr 1 = 2/2
    auto f2 = Field::prime(2);
    auto split = univariate(f2, {1, 1, 1});
    ExtensionContext ctx(split, gf4());
    auto stalk = ProjComplex(split, 0, {{0}}, {});
    auto r = range_bound_report_up(stalk, ctx);
    const bool lower = r.r == 2 && r.summand_ranges == std::vector<std::size_t>{1, 1} && r.bounds_ok && r.certificates_ok;
    return {bad == 0 && lower, std::to_string(bad) + " violations; split case ranges [" +
                                   (r.summand_ranges.size() == 2 ? std::to_string(r.summand_ranges[0]) + "," +
                                                                       std::to_string(r.summand_ranges[1])
                                                                 : std::string("?")) +
                                   "] at r/l = " + std::to_string(r.r) + "/" + std::to_string(ctx.degree())};
}

Outcome criterion5() {
    std::size_t up = 0, down = 0;
    for (const auto& [x, ctx] : pieces().xs)
        if (summand_witness_up(x, *ctx).match.isomorphic) ++up;
    for (const auto& [y, ctx] : pieces().ys)
        if (summand_witness_down(y, *ctx).match.isomorphic) ++down;
    return {up == pieces().xs.size() && down == pieces().ys.size(),
            "up " + std::to_string(up) + "/" + std::to_string(pieces().xs.size()) + ", down " + std::to_string(down) + "/" +
                std::to_string(pieces().ys.size())};
}

// ---------------------------------------------------------------- 6

Outcome criterion6() {
    auto f2 = Field::prime(2);
    auto a = a2(f2);
    EnumerationBounds b;
    b.m = 1;
    b.max_mult = 1;
    auto r = enumerate_indecomposables(a, b);
    std::size_t brute = 0, matched = 0;
    for (const auto& x : brute_minimal_complexes(a, 1, 1))
        if (!x.empty() && brute_summand_count(x) == 1) {
            ++brute;
            std::size_t hits = 0;
            for (const auto& y : r.reps)
                if (brute_isomorphic(x, y.complex)) ++hits;
            if (hits == 1) ++matched;
        }

    // modules of dimension vector (1,1) over the Kronecker quiver: every (s, t) in F_2^2
    auto k = kronecker(f2);
    std::vector<Module> classes;
    for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t t = 0; t < 2; ++t) {
            auto m = Module::from_quiver(k, {1, 1},
                                         {Matrix::from_rows(*f2, {{f2->element(s)}}, 1), Matrix::from_rows(*f2, {{f2->element(t)}}, 1)});
            if (!is_indecomposable(m)) continue;
            if (std::none_of(classes.begin(), classes.end(), [&](const Module& c) { return modules_isomorphic(c, m); }))
                classes.push_back(m);
        }
    const bool ok = r.reps.size() == kA2Reps && brute == kA2Reps && matched == kA2Reps && classes.size() == kKronecker11;
    return {ok, "A2/F2 " + std::to_string(r.reps.size()) + " representatives, brute " + std::to_string(brute) + ", matched " +
                    std::to_string(matched) + "; Kronecker (1,1) modules " + std::to_string(classes.size())};
}

// ---------------------------------------------------------------- 7

// every minimal complex on ap in degrees 0..m with total multiplicity <= cap (no deduplication)
std::vector<ProjComplex> all_minimal(const AlgebraPtr& ap, int m, std::size_t cap) {
    const Algebra& a = *ap;
    const std::size_t np = a.num_projectives(), deg = static_cast<std::size_t>(m) + 1;
    std::vector<ProjComplex> out;
    std::vector<std::size_t> flat(np * deg, 0);
    auto next = [&] {
        for (auto& v : flat) {
            if (++v <= cap) return true;
            v = 0;
        }
        return false;
    };
    do {
        std::size_t total = 0;
        for (auto v : flat) total += v;
        if (total == 0 || total > cap) continue;
        std::vector<std::vector<std::size_t>> comps(deg);
        for (std::size_t i = 0; i < deg; ++i)
            for (std::size_t u = 0; u < np; ++u) comps[i].insert(comps[i].end(), flat[i * np + u], u);
        std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::vector<Vec>>> slots;
        for (std::size_t i = 0; i + 1 < deg; ++i)
            for (std::size_t t = 0; t < comps[i + 1].size(); ++t)
                for (std::size_t s = 0; s < comps[i].size(); ++s) {
                    std::vector<Vec> els;
                    for (auto& e : brute_hom_elements(a, comps[i][s], comps[i + 1][t]))
                        if (a.in_radical(e)) els.push_back(std::move(e));
                    slots.emplace_back(i, t, s, std::move(els));
                }
        std::vector<AMatrix> diffs;
        for (std::size_t i = 0; i + 1 < deg; ++i) diffs.emplace_back(a, comps[i + 1].size(), comps[i].size());
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (k == slots.size()) {
                for (std::size_t i = 0; i + 2 < deg; ++i) {
                    const AMatrix dd = compose(a, diffs[i + 1], diffs[i]);
                    for (const auto& e : dd.e)
                        for (const auto& c : e)
                            if (!c.is_zero()) return;
                }
                out.emplace_back(ap, 0, comps, diffs);
                return;
            }
            auto& [i, t, s, els] = slots[k];
            for (const auto& e : els) {
                diffs[i](t, s) = e;
                rec(k + 1);
            }
        };
        rec(0);
    } while (next());
    return out;
}

Outcome criterion7() {
    auto d = dual_numbers(Field::prime(2));
    std::size_t instances = 0, pairs = 0, disagree = 0;
    for (int m = 0; m <= 2; ++m) {
        auto all = all_minimal(d, m, kMaxTotalMult);
        for (const auto& x : all) {
            ++instances;
            if (decompose_complex(x).size() != brute_summand_count(x)) ++disagree;
        }
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i; j < all.size(); ++j) {
                const auto& x = all[i];
                const auto& y = all[j];
                if (x.lo() != y.lo() || x.hi() != y.hi()) continue;
                ++pairs;
                if (is_isomorphic(x, y).isomorphic != brute_isomorphic(x, y)) ++disagree;
            }
    }
    return {disagree == 0, std::to_string(instances) + " complexes, " + std::to_string(pairs) + " pairs, " +
                               std::to_string(disagree) + " disagreements"};
}

// ---------------------------------------------------------------- 8

Outcome criterion8() {
    auto q = Field::rationals();
    auto k = kronecker(q);
    std::size_t s = 0, t = 0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            if (k->hom(i, j).size() == 2) s = i, t = j;
    FamilyTemplate fam = [k, s, t](const Scalar& c) {
        AMatrix d(*k, 1, 1);
        d(0, 0) = add(k->arrow_element(0), scale(k->arrow_element(1), c));
        return ProjComplex(k, 0, {{s}, {t}}, {d});
    };
    std::vector<Scalar> samples;
    for (std::size_t i = 0; i < kFamily; ++i) samples.push_back(q->from_int(static_cast<long long>(i)));
    ExtensionContext ctx(k, gaussian());
    auto d = c_dichotomy_family(ctx, fam, samples);
    const auto& lo = *d.family_small;
    const auto& hi = *d.family_large;
    const bool ok = lo.witnesses == kFamily && hi.witnesses == kFamily && lo.common_hr && hi.common_hr &&
                    *lo.common_hr == *hi.common_hr && d.family_ranges_ok;
    auto hr = [](const FamilyReport& f) { return f.common_hr ? std::to_string(*f.common_hr) : std::string("none"); };
    return {ok, "Q " + std::to_string(lo.witnesses) + "/" + std::to_string(kFamily) + " hr " + hr(lo) + ", Q(i) " +
                    std::to_string(hi.witnesses) + "/" + std::to_string(kFamily) + " hr " + hr(hi) + ", verdicts " +
                    (d.family_ranges_ok ? "agree" : "differ")};
}

// ---------------------------------------------------------------- 9

Outcome criterion9() {
    auto f2 = Field::prime(2);
    auto f3 = Field::prime(3);
    std::vector<AlgebraPtr> algs{dual_numbers(f2), a2(f2), kronecker(f2), dual_numbers(f3), a2(f3)};
    std::mt19937 rng(kSeed + 9);
    std::size_t failures = 0, nonminimal = 0, homotopies = 0;
    for (std::size_t trial = 0; trial < kRandom; ++trial) {
        const auto& a = algs[trial % algs.size()];
        RandomComplexSpec spec;
        spec.degrees = 1 + static_cast<int>(rng() % 3);
        spec.max_mult = 1 + rng() % 2;
        spec.minimal_only = trial % 2 == 0;
        auto x = random_complex(a, rng, spec);
        if (!is_homotopy_minimal(x)) ++nonminimal;
        auto r = minimize(x);
        bool ok = verify_minimize(x, r);
        ok = ok && minimize(r.minimal).minimal == r.minimal;
        ok = ok && nonzero(cohomology(x)) == nonzero(cohomology(r.minimal));
        ok = ok && range_stats(x).hr == range_stats(r.minimal).hr;
        const int n = static_cast<int>(rng() % 5) - 2;
        auto shifted = nonzero(cohomology(shift(x, n)));
        std::map<int, std::size_t> expect;
        for (const auto& [i, c] : nonzero(cohomology(x))) expect[i - n] = c;
        ok = ok && shifted == expect && range_stats(shift(x, n)).hr == range_stats(x).hr;
        const auto& mx = r.minimal;
        if (!mx.empty()) {
            auto end = complex_end(mx);
            for (const auto& h : hom_space(mx, mx).null_homotopic) {
                ++homotopies;
                if (!end.algebra.inverse(sub(end.algebra.one(), end.coords_of(mx, h))).has_value()) ok = false;
            }
        }
        if (!ok) ++failures;
    }
    return {failures == 0, std::to_string(kRandom) + " complexes (" + std::to_string(nonminimal) + " non-minimal), " +
                               std::to_string(homotopies) + " null-homotopic endomorphisms, " + std::to_string(failures) +
                               " failures"};
}

// ---------------------------------------------------------------- 10

std::size_t hr_of(const std::vector<std::size_t>& v) {
    std::size_t hl = 0, first = v.size(), last = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) {
            hl = std::max(hl, v[i]);
            first = std::min(first, i);
            last = i;
        }
    return hl ? hl * (last - first + 1) : 0;
}

std::map<std::vector<std::size_t>, std::size_t> brute_objects(const std::vector<ProjComplex>& all, int m, std::size_t bound) {
    std::map<std::vector<std::size_t>, std::size_t> out;
    for (const auto& x : all) {
        auto v = coh_vector(x, m);
        if (std::all_of(v.begin(), v.end(), [&](std::size_t n) { return n <= bound; })) ++out[v];
    }
    return out;
}

Outcome criterion10() {
    auto k = kronecker(Field::prime(2));
    const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::size_t> slice, indec;
    std::size_t compared = 0, mismatched = 0;
    for (std::size_t mult = 1; mult <= 3; ++mult) {
        EnumerationBounds b;
        b.m = 1;
        b.max_mult = mult;
        b.jobs = jobs;
        b.cap = std::uint64_t{1} << 32;
        auto r = enumerate_indecomposables(k, b);
        auto t = discreteness_probe(r, kSliceHr);  // every vector of range 2 has entries <= 2
        std::size_t n = 0;
        for (const auto& [v, c] : t.objects)
            if (hr_of(v) == kSliceHr) n += c;
        slice.push_back(n);
        indec.push_back(r.reps.size());

        // brute force: the full sweep at multiplicity 1, a dimension-capped sweep at multiplicity 2
        if (mult <= 2) {
            EnumerationBounds bb = b;
            bb.max_dim = mult == 1 ? 0 : kBruteDim;
            auto rb = mult == 1 ? r : enumerate_indecomposables(k, bb);
            auto brute = brute_minimal_complexes(k, 1, mult, bb.max_dim);
            for (std::size_t bound = 0; bound <= 3; ++bound) {
                ++compared;
                if (discreteness_probe(rb, bound).objects != brute_objects(brute, 1, bound)) ++mismatched;
            }
        }
    }
    const bool grows = slice[0] < slice[1] && slice[1] < slice[2] && indec[0] < indec[1] && indec[1] < indec[2];
    auto list = [](const std::vector<std::size_t>& v) {
        return std::to_string(v[0]) + " < " + std::to_string(v[1]) + " < " + std::to_string(v[2]);
    };
    return {grows && mismatched == 0, "hr=2 objects " + list(slice) + ", indecomposables " + list(indec) + "; brute tables " +
                                          std::to_string(compared - mismatched) + "/" + std::to_string(compared) + " match"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"unit isomorphisms F(X (x) K) ~ X^l", criterion1},
        {"range transfer under base change and restriction", criterion2},
        {"at most l indecomposable summands", criterion3},
        {"summand ranges in [r/l, r] and [r, l r]", criterion4},
        {"summand witnesses in both directions", criterion5},
        {"enumeration ground truth", criterion6},
        {"decomposition and isomorphism against exhaustive search", criterion7},
        {"strongly unbounded family over Q and Q(i)", criterion8},
        {"minimization and homotopy invariants", criterion9},
        {"discreteness probe, Kronecker over F2", criterion10},
    };
    std::set<std::size_t> only;
    for (int i = 1; i < argc; ++i) only.insert(static_cast<std::size_t>(std::stoul(argv[i])));
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (!only.empty() && !only.count(i + 1)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %2zu: %s  %s (%s) [%.1fs]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return failed ? 1 : 0;
}
