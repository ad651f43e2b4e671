#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "golden.hpp"
#include "conformance.hpp"
#include "structure.hpp"

using namespace rmc;
using namespace testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects the first few failures of a criterion.
class Tally {
public:
    void check(bool ok, const std::string& what) {
        ++checks_;
        if (ok) return;
        if (failures_.size() < 5) failures_.push_back(what);
        ++failed_;
    }
    Outcome done(const std::string& summary) const {
        std::ostringstream os;
        os << summary << "; " << checks_ << " checks";
        if (failed_) {
            os << ", " << failed_ << " failed:";
            for (const auto& f : failures_) os << " [" << f << "]";
        }
        return {failed_ == 0, os.str()};
    }

private:
    std::size_t checks_ = 0, failed_ = 0;
    std::vector<std::string> failures_;
};

std::string seq_str(const std::vector<std::size_t>& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + ")";
}

std::vector<std::uint64_t> code_key(const LinearCode& c) {
    std::vector<std::uint64_t> key;
    for (std::size_t i = 0; i < c.k(); ++i)
        for (Elem x : c.gen().row(i)) key.push_back(x.v);
    return key;
}

bool all_criteria(const GabidulinCheck& c, bool expect) {
    if (!c.consistent || c.is_gabidulin != expect) return false;
    for (const auto& cr : c.criteria)
        if (cr.value && *cr.value != expect) return false;
    return true;
}

// every invertible n x n matrix with entries in the prime field F_2, embedded in f
std::vector<Matrix> binary_gl(const FieldPtr& f, std::size_t n) {
    std::vector<Matrix> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << (n * n)); ++bits) {
        Matrix a(f, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = f->element((bits >> (i * n + j)) & 1);
        if (rank(a) == n) out.push_back(std::move(a));
    }
    return out;
}

Outcome golden_rows() {
    Tally t;
    const auto gab = golden_gabidulin(), tw = golden_twisted();
    for (unsigned r = 1; r <= 14; ++r) {
        const GaloisAut sigma(r, 15);
        const Seq sg = s_sequence(gab, sigma), stw = s_sequence(tw, sigma);
        t.check(listed_form(sg) == golden_gabidulin_rows()[r - 1],
                "gabidulin r=" + std::to_string(r) + " got " + seq_str(listed_form(sg)));
        t.check(listed_form(stw) == golden_twisted_rows()[r - 1],
                "twisted r=" + std::to_string(r) + " got " + seq_str(listed_form(stw)));
        t.check(fast_s_sequence(gab, sigma) == sg && fast_s_sequence(tw, sigma) == stw,
                "fast path r=" + std::to_string(r));
    }
    return t.done("gabidulin r=1 " + seq_str(listed_form(s_sequence(gab, GaloisAut(1, 15)))) + ", twisted r=7 " +
                  seq_str(listed_form(s_sequence(tw, GaloisAut(7, 15)))));
}

Outcome census_ub_table() {
    Tally t;
    const std::map<std::size_t, std::vector<std::size_t>> table{
        {6, {16, 18, 16}}, {7, {30, 36, 36, 30}}, {8, {48, 60, 64, 60, 48}}};
    std::string summary;
    for (const auto& [n, row] : table) {
        std::vector<std::size_t> got;
        for (std::size_t k = 2; k + 2 <= n; ++k) got.push_back(census_upper_bound(n, k));
        t.check(got == row, "n=" + std::to_string(n) + " got " + seq_str(got));
        summary += (summary.empty() ? "" : " ") + std::string("n=") + std::to_string(n) + " " + seq_str(got);
    }
    return t.done(summary);
}

Outcome closed_forms() {
    Tally t;
    Stream st(1003, "closed-form");
    struct P {
        unsigned p, m;
        std::size_t n, k;
    };
    std::size_t codes = 0;
    for (P par : {P{2, 15, 8, 3}, P{2, 12, 6, 2}, P{3, 10, 5, 2}}) {
        auto f = make_field(par.p, 1, par.m);
        const auto gens = galois_generators(par.m);
        const std::string tag = "(" + std::to_string(par.p) + "," + std::to_string(par.m) + "," +
                                std::to_string(par.n) + "," + std::to_string(par.k) + ")";
        for (int it = 0; it < 20; ++it) {
            const long long th = gens[st.below(gens.size())];
            const Vec g = random_full_rank(*f, par.n, st);
            // the norm condition is unsatisfiable in characteristic 2
            const bool odd = par.p != 2;
            const Elem eta = odd ? random_valid_eta(*f, par.k, st) : random_nonzero(*f, st);
            const std::string where = tag + " it=" + std::to_string(it) + " ";
            auto gv = gabidulin_violations(build(f, gab_spec(g, par.k, th)), th);
            t.check(gv.empty(), where + "gabidulin " + join(gv));
            auto tv = twisted_violations(build(f, tw_spec(g, par.k, eta, th, odd)), th);
            t.check(tv.empty(), where + "twisted " + join(tv));
            codes += 2;
            for (long long tw = 2; tw <= static_cast<long long>(par.n - par.k); ++tw) {
                auto c = build(f, gtw_spec(g, par.k, {random_nonzero(*f, st)}, {tw}, {0}, th));
                auto sv = single_twist_violations(c, th, tw, false);
                t.check(sv.empty(), where + "twist " + std::to_string(tw) + " " + join(sv));
                ++codes;
            }
        }
    }
    // g spanning a subfield, 2 < twist < n-k-1, 1 < hook < k-2
    for (auto [m, reps] : {std::pair{10u, 20}, std::pair{20u, 10}}) {
        auto f = make_field(2, 1, m);
        for (int it = 0; it < reps; ++it) {
            auto c = build(f, gtw_spec(random_subfield_basis(*f, 10, st), 5, {random_nonzero(*f, st)}, {3}, {2}));
            auto v = subfield_violations(c, 1);
            t.check(v.empty(), "subfield m=" + std::to_string(m) + " " + join(v));
            ++codes;
        }
    }
    return t.done(std::to_string(codes) + " codes");
}

Outcome structure_suite() {
    Tally t;
    Stream st(1004, "structure");
    std::size_t codes = 0;
    for (auto f : {make_field(2, 1, 6), make_field(3, 1, 4), make_field(2, 2, 3), make_field(2, 1, 8),
                   make_field(5, 1, 3)}) {
        for (int it = 0; it < 30; ++it) {
            const std::size_t n = 2 + st.below(f->m() - 1), k = 1 + st.below(n - 1);
            const auto c = random_code(f, n, k, st);
            const GaloisAut sigma(st.below(f->m()), f->m());
            const std::string where = "q^m=" + std::to_string(f->order()) + " n=" + std::to_string(n) +
                                      " k=" + std::to_string(k) + " sigma=" + std::to_string(sigma.i) + " ";
            const auto sv = structure_violation(c, sigma);
            t.check(sv.empty(), where + sv);
            const auto gv = semigroup_violation(c, sigma, st.below(3), st.below(3));
            t.check(gv.empty(), where + gv);
            ++codes;
        }
    }
    return t.done(std::to_string(codes) + " random codes over 5 fields");
}

Outcome fast_vs_naive() {
    Tally t;
    Stream st(1005, "differential");
    const std::vector<FieldPtr> fields{make_field(2, 1, 7), make_field(3, 1, 5), make_field(2, 2, 4),
                                       make_field(5, 1, 4), make_field(2, 1, 12), make_field(7, 1, 3)};
    std::size_t pairs = 0;
    for (int it = 0; it < 600; ++it) {
        const auto& f = fields[st.below(fields.size())];
        const std::size_t n = 1 + st.below(f->m()), k = 1 + st.below(n);
        const auto c = random_code(f, n, k, st);
        const GaloisAut sigma(st.below(f->m()), f->m());
        const std::size_t extra = st.below(4);
        t.check(fast_s_sequence(c, sigma) == s_sequence(c, sigma) &&
                    fast_s_sequence(c, sigma, n - k + extra) == s_sequence(c, sigma, n - k + extra),
                "q^m=" + std::to_string(f->order()) + " n=" + std::to_string(n) + " k=" + std::to_string(k));
        ++pairs;
    }
    return t.done(std::to_string(pairs) + " (code, sigma) pairs");
}

Outcome enumeration() {
    Tally t;
    auto f = make_field(2, 1, 4);
    std::set<std::vector<std::uint64_t>> gab1, gab3;
    std::size_t full_rank = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t(1) << 16); ++x) {
        const Vec g{f->element(x & 15), f->element((x >> 4) & 15), f->element((x >> 8) & 15), f->element(x >> 12)};
        if (rank_q(*f, g) != 4) continue;
        ++full_rank;
        gab1.insert(code_key(build(f, gab_spec(g, 2, 1))));
        gab3.insert(code_key(build(f, gab_spec(g, 2, 3))));
    }
    const auto formula = counting(2, 2, 4, 4);
    t.check(gab1.size() == 1344, "theta=sigma count " + std::to_string(gab1.size()));
    t.check(gab3.size() == 1344, "theta=sigma^3 count " + std::to_string(gab3.size()));
    t.check(formula.gab_theta.value == mpq_class(static_cast<unsigned long>(gab1.size())), "product formula");

    // one semilinear orbit covers every theta-Gabidulin code, for both generators
    std::set<std::vector<std::uint64_t>> all = gab1;
    all.insert(gab3.begin(), gab3.end());
    const auto gl = binary_gl(f, 4);
    t.check(gl.size() == 20160, "|GL_4(2)| = " + std::to_string(gl.size()));
    const Vec g0{f->element(1), f->element(2), f->element(4), f->element(8)};
    const LinearCode seed_code = build(f, gab_spec(g0, 2, 1));
    std::set<std::vector<std::uint64_t>> orbit;
    for (const auto& a : gl)
        for (long long tau = 0; tau < 4; ++tau) orbit.insert(code_key(apply_semilinear(seed_code, {f->one(), a, tau})));
    t.check(orbit == all, "orbit size " + std::to_string(orbit.size()) + " vs " + std::to_string(all.size()));
    const std::size_t classes = orbit == all ? 1 : 0;
    t.check(mpq_class(static_cast<unsigned long>(classes)) == mpq_class(euler_phi(4)) / 2, "phi(4)/2 classes");

    // pairwise brute-force spot checks with verified witnesses
    Stream st(1006, "pairs");
    std::vector<std::vector<std::uint64_t>> list(all.begin(), all.end());
    auto decode = [&](const std::vector<std::uint64_t>& key) {
        Matrix m(f, 2, 4);
        for (std::size_t i = 0; i < 8; ++i) m(i / 4, i % 4) = f->element(key[i]);
        return LinearCode(m);
    };
    for (int it = 0; it < 20; ++it) {
        const auto a = decode(list[st.below(list.size())]), b = decode(list[st.below(list.size())]);
        const Verdict v = bruteforce_equivalent(a, b);
        t.check(v.status == Status::Equivalent && verify(v, a, b), "pairwise brute force");
    }

    auto f9 = make_field(3, 1, 2);
    const auto x = norm_orbit_count(f9, 1);
    t.check(x == 3, "X_3(2,1) = " + x.get_str());
    const auto r3 = counting(3, 1, 2, 2);
    t.check(r3.norm_orbits && *r3.norm_orbits == 3, "counting X_3(2,1)");

    std::ostringstream os;
    os << full_rank << " vectors of q-rank 4 give " << gab1.size() << " codes (formula "
       << formula.gab_theta.value.get_str() << "); " << classes << " class under GL_4(2) x Aut(F_16), phi(4)/2 = 1"
       << (formula.classes_exact.applicable ? " (inside" : " (outside") << " the range where the class count is proved)"
       << "; X_3(2,1) = " << x.get_str();
    return t.done(os.str());
}

Outcome characterization() {
    Tally t;
    Stream st(1007, "characterization");
    std::size_t gab = 0, newgab = 0, twisted = 0;
    for (auto f : {make_field(2, 1, 4), make_field(3, 1, 5), make_field(2, 1, 9), make_field(2, 2, 3),
                   make_field(5, 1, 3)}) {
        const auto gens = galois_generators(f->m());
        for (int it = 0; it < 6; ++it) {
            const std::size_t n = 2 + st.below(f->m() - 1), k = 1 + st.below(n - 1);
            const long long th = gens[st.below(gens.size())];
            const auto c = build(f, gab_spec(random_full_rank(*f, n, st), k, th));
            t.check(all_criteria(is_theta_gabidulin(c, GaloisAut(th, f->m())), true),
                    "gabidulin q^m=" + std::to_string(f->order()) + " n=" + std::to_string(n) +
                        " k=" + std::to_string(k));
            ++gab;
        }
    }
    struct NG {
        unsigned p, m;
        std::size_t n, k;
        Family fam;
    };
    const std::vector<NG> newgabs{
        {3, 5, 5, 1, Family::NewGabI},  {3, 5, 5, 2, Family::NewGabI},  {3, 5, 4, 2, Family::NewGabI},
        {3, 7, 6, 3, Family::NewGabI},  {3, 7, 7, 2, Family::NewGabI},  {5, 5, 5, 2, Family::NewGabI},
        {3, 6, 6, 2, Family::NewGabI},  {3, 5, 5, 3, Family::NewGabII}, {3, 5, 5, 4, Family::NewGabII},
        {3, 6, 6, 3, Family::NewGabII}, {3, 6, 5, 4, Family::NewGabII}, {5, 4, 4, 2, Family::NewGabII},
        {5, 5, 5, 3, Family::NewGabII}, {3, 7, 6, 4, Family::NewGabII}};
    for (const auto& ng : newgabs) {
        auto f = make_field(ng.p, 1, ng.m);
        const auto gens = galois_generators(ng.m);
        for (int it = 0; it < 2; ++it) {
            const long long th = gens[st.below(gens.size())];
            CodeSpec s = tw_spec(random_full_rank(*f, ng.n, st), ng.k, random_valid_eta(*f, ng.k, st, ng.fam), th);
            s.family = ng.fam;
            t.check(all_criteria(is_theta_gabidulin(build(f, s), GaloisAut(th, ng.m)), true),
                    family_name(ng.fam) + " q=" + std::to_string(ng.p) + " m=" + std::to_string(ng.m) +
                        " n=" + std::to_string(ng.n) + " k=" + std::to_string(ng.k));
            ++newgab;
        }
    }
    // twisted: m < 2n-2, 1 < k < n-1; every generator
    struct TW {
        unsigned p, m;
        std::size_t n, k;
    };
    for (TW p : {TW{3, 5, 5, 2}, TW{2, 8, 8, 3}, TW{2, 10, 7, 3}, TW{3, 6, 6, 3}}) {
        auto f = make_field(p.p, 1, p.m);
        const bool odd = p.p != 2;
        for (int it = 0; it < 2; ++it) {
            const Elem eta = odd ? random_valid_eta(*f, p.k, st) : random_nonzero(*f, st);
            const auto c = build(f, tw_spec(random_full_rank(*f, p.n, st), p.k, eta, 1, odd));
            for (unsigned r : galois_generators(p.m))
                t.check(all_criteria(is_theta_gabidulin(c, GaloisAut(r, p.m)), false),
                        "twisted m=" + std::to_string(p.m) + " n=" + std::to_string(p.n) + " r=" + std::to_string(r));
            ++twisted;
        }
    }
    // hook 0, twist 2, 1 < k < n-2 < n-1, m < 2n-4
    {
        auto f = make_field(2, 1, 9);
        for (int it = 0; it < 2; ++it) {
            const auto c = build(f, gtw_spec(random_full_rank(*f, 8, st), 3, {random_nonzero(*f, st)}, {2}, {0}));
            for (unsigned r : galois_generators(9))
                t.check(all_criteria(is_theta_gabidulin(c, GaloisAut(r, 9)), false), "single twist r=" + std::to_string(r));
            ++twisted;
        }
    }
    // subfield evaluation points
    for (unsigned m : {10u, 20u}) {
        auto f = make_field(2, 1, m);
        const auto c = build(f, gtw_spec(random_subfield_basis(*f, 10, st), 5, {random_nonzero(*f, st)}, {3}, {2}));
        for (unsigned r : galois_generators(m))
            t.check(all_criteria(is_theta_gabidulin(c, GaloisAut(r, m), 0), false),
                    "subfield m=" + std::to_string(m) + " r=" + std::to_string(r));
        ++twisted;
    }

    // every [3,2] code over F_8: MRD exactly when Gabidulin for some generator
    auto f8 = make_field(2, 1, 3);
    std::set<std::vector<std::uint64_t>> seen;
    std::size_t mrd = 0;
    for (std::uint64_t x = 1; x < 512; ++x) {
        const Vec v{f8->element(x & 7), f8->element((x >> 3) & 7), f8->element(x >> 6)};
        const LinearCode c = dual(LinearCode(Matrix::from_rows(f8, {v}, 3)));
        if (!seen.insert(code_key(c)).second) continue;
        const bool is_mrd = min_distance_bruteforce(c) == 2;
        bool any = false;
        for (unsigned r : galois_generators(3)) {
            const auto chk = is_theta_gabidulin(c, GaloisAut(r, 3));
            t.check(chk.consistent, "payne consistency");
            any = any || chk.is_gabidulin;
        }
        t.check(any == is_mrd, "payne: MRD iff Gabidulin");
        mrd += is_mrd;
    }
    t.check(seen.size() == 73, "payne enumerated " + std::to_string(seen.size()) + " codes");

    std::ostringstream os;
    os << gab << " Gabidulin and " << newgab << " new-kind codes pass, " << twisted
       << " twisted-type codes fail; Payne: " << mrd << " of " << seen.size() << " [3,2] codes over F_8 are MRD, all Gabidulin";
    return t.done(os.str());
}

Outcome soundness() {
    Tally t;
    std::size_t pairs = 0;
    // every code in F_8^3 against every distinct semilinear image
    auto f = make_field(2, 1, 3);
    const auto gl = binary_gl(f, 3);
    std::set<std::vector<std::uint64_t>> codes;
    for (std::uint64_t x = 1; x < 512; ++x) {
        const Vec v{f->element(x & 7), f->element((x >> 3) & 7), f->element(x >> 6)};
        const LinearCode line(Matrix::from_rows(f, {v}, 3));
        codes.insert(code_key(line));
        codes.insert(code_key(dual(line)));
    }
    std::uint64_t seed = 0;
    for (const auto& key : codes) {
        const std::size_t k = key.size() / 3;
        Matrix m(f, k, 3);
        for (std::size_t i = 0; i < key.size(); ++i) m(i / 3, i % 3) = f->element(key[i]);
        const LinearCode c(m);
        std::set<std::vector<std::uint64_t>> images;
        for (const auto& a : gl)
            for (long long tau = 0; tau < 3; ++tau) {
                const LinearCode img = apply_semilinear(c, {f->one(), a, tau});
                if (!images.insert(code_key(img)).second) continue;
                const Verdict v = distinguish(c, img, {20, seed++});
                t.check(v.status != Status::Inequivalent, "exhaustive: " + v.describe());
                ++pairs;
            }
    }
    const std::size_t exhaustive = pairs;
    Stream st(1008, "semilinear");
    const std::vector<FieldPtr> fields{make_field(2, 1, 6), make_field(3, 1, 4), make_field(2, 2, 3),
                                       make_field(5, 1, 3), make_field(2, 1, 8), make_field(3, 1, 5)};
    for (int it = 0; it < 200; ++it) {
        const auto& F = fields[st.below(fields.size())];
        const std::size_t n = 3 + st.below(F->m() - 2), k = 1 + st.below(n - 1);
        const auto c = random_code(F, n, k, st);
        const auto img = apply_semilinear(c, random_semilinear(F, n, st));
        const Verdict v = distinguish(c, img, {50, static_cast<std::uint64_t>(it)});
        t.check(v.status != Status::Inequivalent, "random: " + v.describe());
        ++pairs;
    }
    return t.done(std::to_string(codes.size()) + " codes, " + std::to_string(exhaustive) +
                  " exhaustive pairs, " + std::to_string(pairs - exhaustive) + " random pairs, no false separation");
}

Outcome census_rerun() {
    Tally t;
    const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string summary;
    for (std::uint64_t q : {2u, 3u}) {
        for (std::size_t n : {6u, 7u}) {
            std::map<std::size_t, std::size_t> ub;
            for (std::size_t k = 2; k + 2 <= n; ++k) {
                const auto rep = census(q, n, k, 20240901, 100, jobs);
                const std::string where = "q=" + std::to_string(q) + " n=" + std::to_string(n) + " k=" + std::to_string(k);
                t.check(rep.lb1 >= 1 && rep.lb1 <= rep.ub, where + " LB1=" + std::to_string(rep.lb1));
                t.check(rep.lb2 >= 1 && rep.lb2 <= rep.ub, where + " LB2=" + std::to_string(rep.lb2));
                ub[k] = rep.ub;
                summary += (summary.empty() ? "" : " ") + where + ":" + std::to_string(rep.lb1) + "/" +
                           std::to_string(rep.lb2) + "/" + std::to_string(rep.ub);
            }
            for (const auto& [k, u] : ub) t.check(u == ub.at(n - k), "UB symmetry n=" + std::to_string(n));
        }
    }
    return t.done("LB1/LB2/UB " + summary);
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "golden sequence rows", 5, golden_rows},
        {2, "census upper bounds", 1, census_ub_table},
        {3, "closed-form sequence laws", 120, closed_forms},
        {4, "duality and structure laws", 120, structure_suite},
        {5, "fast vs naive s-sequence", 120, fast_vs_naive},
        {6, "enumeration cross-checks", 600, enumeration},
        {7, "Gabidulin characterization", 600, characterization},
        {8, "distinguisher soundness", 600, soundness},
        {9, "census rerun at n = 6, 7", 600, census_rerun},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s) {
            o.pass = false;
            o.detail += "; over time budget";
        }
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2f s / %.0f s", secs, c.budget_s);
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ": " << o.detail << " ("
                  << timing << ")" << std::endl;
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
