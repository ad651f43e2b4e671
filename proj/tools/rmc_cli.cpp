#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "rmc/classify.hpp"
#include "rmc/code_io.hpp"
#include "rmc/rng.hpp"

using namespace rmc;

namespace {

enum class Format { Pretty, Csv, Json };

const std::map<std::string, Format> format_names{{"pretty", Format::Pretty}, {"csv", Format::Csv}, {"json", Format::Json}};

std::string join_seq(const Seq& s, std::size_t from = 0, char sep = ',') {
    std::string out;
    for (std::size_t i = from; i < s.size(); ++i) out += (i > from ? std::string(1, sep) : "") + std::to_string(s[i]);
    return out;
}

std::string hex64(std::uint64_t x) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

// Resolved configuration echoed at the top of every output.
class Header {
public:
    explicit Header(std::string command) { add("command", std::move(command)); }
    void add(const std::string& key, Json value) { config_[key] = std::move(value); }
    void print(std::ostream& os, Format fmt) const {
        if (fmt == Format::Json) return;
        for (const auto& [k, v] : config_.items()) os << "# " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
    const Json& json() const { return config_; }

private:
    Json config_ = Json::object();
};

std::vector<unsigned> parse_modulus(const std::string& s) {
    std::vector<unsigned> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(static_cast<unsigned>(v));
        } catch (const std::exception&) {
            throw DomainError("invalid modulus coefficient: " + tok);
        }
    }
    return out;
}

std::vector<long long> parse_ints(const std::string& s) {
    std::vector<long long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw DomainError("invalid integer: " + tok);
        }
    }
    return out;
}

Vec random_full_rank(const FieldTower& f, std::size_t n, std::uint64_t seed) {
    if (n > f.m()) throw DomainError("need n <= m for a full-rank evaluation vector");
    Stream st(seed, "cli-g");
    while (true) {
        Vec g(n);
        for (auto& x : g) x = f.element(st.below(f.order()));
        if (rank_q(f, g) == n) return g;
    }
}

Elem random_valid_eta(const FieldTower& f, Family fam, std::size_t k, std::uint64_t seed) {
    Stream st(seed, "cli-eta");
    for (int tries = 0; tries < 1 << 16; ++tries) {
        const Elem e = f.element(1 + st.below(f.order() - 1));
        if (eta_condition_holds(f, fam, e, k)) return e;
    }
    throw DomainError("no eta satisfying the norm condition in this field");
}

struct BuildOpts {
    std::uint64_t q = 0;
    unsigned m = 0;
    std::string modulus, family = "gabidulin", g, eta, t, h, out;
    std::size_t k = 0, n = 0;
    long long theta = 1;
    bool no_norm_check = false;
    std::uint64_t seed = 0;
};

struct FileOpts {
    std::string file, out;
};

struct InvOpts {
    std::string file, sigma = "all", format = "pretty";
};

struct CompareOpts {
    std::string a, b;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    bool bruteforce = false;
    double cap = 1e9;
};

struct ClassifyOpts {
    std::string file;
    long long theta = 1;
    std::uint64_t mrd_cap = std::uint64_t(1) << 16;
    bool decompose = false;
};

struct CountOpts {
    std::uint64_t q = 0, field_cap = std::uint64_t(1) << 22;
    std::size_t k = 0, n = 0, m = 0;
    std::string format = "pretty";
};

struct CensusOpts {
    std::uint64_t q = 3, seed = 0;
    std::size_t n = 0, k = 0, trials = 100;
    unsigned jobs = 1;
    std::string csv, format = "pretty";
    bool timing = false;
};

int run_build(const BuildOpts& o) {
    const auto [p, e] = split_prime_power(o.q);
    std::optional<std::vector<unsigned>> mod;
    if (!o.modulus.empty()) mod = parse_modulus(o.modulus);
    const FieldPtr f = make_field(p, e, o.m, mod);
    CodeSpec s;
    s.family = parse_family(o.family);
    s.k = o.k;
    s.theta = o.theta;
    if (o.g.empty() || o.g == "random") {
        if (o.n == 0) throw DomainError("--n is required with a random evaluation vector");
        s.g = random_full_rank(*f, o.n, o.seed);
    } else {
        s.g = parse_vec(*f, o.g);
        if (o.n != 0 && o.n != s.g.size()) throw DomainError("--n disagrees with the length of --g");
    }
    const bool needs_eta = s.family != Family::Gabidulin;
    if (needs_eta) {
        if (o.eta.empty() || o.eta == "random") {
            if (s.family == Family::GeneralizedTwisted)
                throw DomainError("generalized twisted codes need explicit --eta values");
            s.eta = {random_valid_eta(*f, s.family, s.k, o.seed)};
        } else {
            s.eta = parse_vec(*f, o.eta);
        }
    }
    if (!o.t.empty()) s.t = parse_ints(o.t);
    if (!o.h.empty()) s.h = parse_ints(o.h);
    s.enforce_norm_condition = !o.no_norm_check && s.family != Family::GeneralizedTwisted;
    const LinearCode c = build(f, s);
    const Json j = code_to_json(c, s);
    if (o.out.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        write_code_file(o.out, c, s);
        std::cout << "wrote " << o.out << ": " << family_name(s.family) << " code, q = " << o.q << ", m = " << o.m
                  << ", n = " << c.n() << ", k = " << c.k() << '\n';
    }
    return 0;
}

int run_dual(const FileOpts& o) {
    const LinearCode c = dual(read_code_file(o.file).code);
    if (o.out.empty()) {
        std::cout << code_to_json(c).dump(2) << '\n';
    } else {
        write_code_file(o.out, c);
        std::cout << "wrote " << o.out << ": dual code, n = " << c.n() << ", k = " << c.k() << '\n';
    }
    return 0;
}

int run_invariants(const InvOpts& o) {
    const Format fmt = format_names.at(o.format);
    const LinearCode c = read_code_file(o.file).code;
    const unsigned m = c.field()->m();
    std::vector<unsigned> sigmas;
    if (o.sigma == "all") {
        for (unsigned r = 0; r < m; ++r) sigmas.push_back(r);
    } else {
        for (long long r : parse_ints(o.sigma)) {
            if (r < 0 || r >= static_cast<long long>(m)) throw DomainError("--sigma must lie in [0, m)");
            sigmas.push_back(static_cast<unsigned>(r));
        }
    }
    Header hdr("invariants");
    hdr.add("file", o.file);
    hdr.add("field", field_to_json(*c.field()));
    hdr.add("n", c.n());
    hdr.add("k", c.k());
    hdr.add("sigma", o.sigma);
    hdr.print(std::cout, fmt);
    Json rows = Json::array();
    if (fmt == Format::Csv) std::cout << "sigma,sequence,index,value\n";
    for (unsigned r : sigmas) {
        const InvariantProfile p = profile(c, GaloisAut(r, m));
        switch (fmt) {
            case Format::Pretty:
                std::cout << "sigma = " << r << "\n  s: " << join_seq(p.s, 1) << "\n  t: " << join_seq(p.t, 1) << '\n';
                break;
            case Format::Csv:
                for (std::size_t i = 0; i < p.s.size(); ++i) std::cout << r << ",s," << i << ',' << p.s[i] << '\n';
                for (std::size_t i = 0; i < p.t.size(); ++i) std::cout << r << ",t," << i << ',' << p.t[i] << '\n';
                break;
            case Format::Json:
                rows.push_back(Json{{"sigma", r}, {"s", p.s}, {"t", p.t}, {"delta", p.delta}, {"lambda", p.lambda}});
                break;
        }
    }
    if (fmt == Format::Json) std::cout << Json{{"config", hdr.json()}, {"rows", rows}}.dump(2) << '\n';
    return 0;
}

int run_compare(const CompareOpts& o) {
    const LinearCode a = read_code_file(o.a).code, b = read_code_file(o.b).code;
    Header hdr("compare");
    hdr.add("a", o.a);
    hdr.add("b", o.b);
    hdr.add("trials", o.trials);
    hdr.add("seed", o.seed);
    hdr.add("bruteforce", o.bruteforce);
    hdr.print(std::cout, Format::Pretty);
    Verdict v = distinguish(a, b, {o.trials, o.seed});
    if (v.status == Status::Unknown && o.bruteforce) v = bruteforce_equivalent(a, b, o.cap);
    std::cout << v.describe() << '\n';
    if (v.status != Status::Unknown) std::cout << "witness verified: " << (verify(v, a, b) ? "yes" : "no") << '\n';
    return 0;
}

int run_classify(const ClassifyOpts& o) {
    const LinearCode c = read_code_file(o.file).code;
    const GaloisAut theta(o.theta, c.field()->m());
    Header hdr("classify gabidulin");
    hdr.add("file", o.file);
    hdr.add("theta", o.theta);
    hdr.add("mrd_cap", o.mrd_cap);
    hdr.print(std::cout, Format::Pretty);
    const GabidulinCheck chk = is_theta_gabidulin(c, theta, o.mrd_cap);
    for (const auto& cr : chk.criteria)
        std::cout << "criterion " << cr.id << " (" << cr.name << "): " << (cr.value ? (*cr.value ? "holds" : "fails") : "not evaluated")
                  << '\n';
    std::cout << "consistent: " << (chk.consistent ? "yes" : "no") << '\n';
    std::cout << "theta^" << theta.i << "-Gabidulin: " << (chk.is_gabidulin ? "yes" : "no") << '\n';
    if (o.decompose) {
        const RankOneDecomposition d = rank_one_decomposition(c, theta);
        std::cout << "rank-one part dimension: " << d.rank_one_basis.rows() << "\nGabidulin part dimension: " << d.t
                  << '\n';
        if (!d.g.empty()) {
            std::cout << "evaluation vector:";
            for (Elem x : d.g) std::cout << ' ' << c.field()->to_string(x);
            std::cout << '\n';
        }
    }
    return 0;
}

std::string count_str(const CountValue& v) {
    return v.value.get_str() + (v.applicable ? "" : " (outside the proved range)");
}

int run_count(const CountOpts& o) {
    const Format fmt = format_names.at(o.format);
    if (fmt == Format::Csv) throw DomainError("count supports pretty and json output");
    const CountResult r = counting(o.q, o.k, o.n, o.m, o.field_cap);
    Header hdr("count");
    hdr.add("q", o.q);
    hdr.add("k", o.k);
    hdr.add("n", o.n);
    hdr.add("m", o.m);
    hdr.print(std::cout, fmt);
    const std::vector<std::pair<std::string, const CountValue*>> rows{
        {"gabidulin_theta", &r.gab_theta},         {"gabidulin_upper", &r.gab_upper},
        {"gabidulin_lower", &r.gab_lower},         {"classes_square", &r.classes_exact},
        {"classes_lower", &r.classes_lower},       {"classes_upper", &r.classes_upper},
        {"schmidt_zhou", &r.schmidt_zhou},         {"twisted_theta", &r.tgab_theta},
        {"twisted_upper", &r.tgab_upper}};
    if (fmt == Format::Json) {
        Json j{{"config", hdr.json()}};
        for (const auto& [name, v] : rows) j[name] = Json{{"value", v->value.get_str()}, {"applicable", v->applicable}};
        j["norm_orbits"] = r.norm_orbits ? Json(r.norm_orbits->get_str()) : Json(nullptr);
        j["twisted_classes"] = r.twisted_classes
                                   ? Json{{"value", r.twisted_classes->value.get_str()},
                                          {"applicable", r.twisted_classes->applicable}}
                                   : Json(nullptr);
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    for (const auto& [name, v] : rows) std::cout << name << " = " << count_str(*v) << '\n';
    std::cout << "norm_orbits = " << (r.norm_orbits ? r.norm_orbits->get_str() : "above field cap") << '\n';
    std::cout << "twisted_classes = " << (r.twisted_classes ? count_str(*r.twisted_classes) : "above field cap") << '\n';
    return 0;
}

int run_census(const CensusOpts& o) {
    const Format fmt = format_names.at(o.format);
    const auto t0 = std::chrono::steady_clock::now();
    const CensusReport rep = census(o.q, o.n, o.k, o.seed, o.trials, o.jobs);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Header hdr("census");
    hdr.add("q", o.q);
    hdr.add("n", o.n);
    hdr.add("m", rep.m);
    hdr.add("k", o.k);
    hdr.add("seed", o.seed);
    hdr.add("trials", o.trials);
    hdr.add("jobs", o.jobs);
    Json g = Json::array();
    for (Elem x : rep.g) g.push_back(elem_to_json(*rep.field, x));
    hdr.add("g", g);
    hdr.add("eta", elem_to_json(*rep.field, rep.eta));
    if (!o.csv.empty()) {
        std::ofstream out(o.csv);
        if (!out) throw DomainError("cannot write csv file: " + o.csv);
        out << "theta,t,h,consecutive_hash,triple_hash\n";
        for (const auto& r : rep.rows)
            out << r.theta << ',' << r.t << ',' << r.h << ',' << hex64(r.consecutive_hash) << ','
                << hex64(r.triple_hash) << '\n';
    }
    if (fmt == Format::Json) {
        Json rows = Json::array();
        for (const auto& r : rep.rows)
            rows.push_back(Json{{"theta", r.theta},
                                {"t", r.t},
                                {"h", r.h},
                                {"consecutive_hash", hex64(r.consecutive_hash)},
                                {"triple_hash", hex64(r.triple_hash)}});
        Json j{{"config", hdr.json()}, {"LB1", rep.lb1}, {"LB2", rep.lb2}, {"UB", rep.ub}, {"rows", rows}};
        if (o.timing) j["seconds"] = secs;
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    hdr.print(std::cout, fmt);
    if (fmt == Format::Csv) {
        std::cout << "theta,t,h,consecutive_hash,triple_hash\n";
        for (const auto& r : rep.rows)
            std::cout << r.theta << ',' << r.t << ',' << r.h << ',' << hex64(r.consecutive_hash) << ','
                      << hex64(r.triple_hash) << '\n';
    }
    std::cout << "LB1 = " << rep.lb1 << "\nLB2 = " << rep.lb2 << "\nUB = " << rep.ub << '\n';
    if (o.timing) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", secs);
        std::cout << "seconds = " << buf << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rank-metric code construction, invariants and classification"};
    app.require_subcommand(1);
    std::function<int()> action;

    auto* code = app.add_subcommand("code", "Build codes and duals");
    code->require_subcommand(1);
    BuildOpts bo;
    auto* cb = code->add_subcommand("build", "Build a code from a family and parameters");
    cb->add_option("--q", bo.q, "Base field size (prime power)")->required();
    cb->add_option("--m", bo.m, "Extension degree")->required();
    cb->add_option("--modulus", bo.modulus, "Modulus coefficients over F_q's prime field, low degree first");
    cb->add_option("--family", bo.family, "gabidulin, twisted, gtw, newgab1 or newgab2");
    cb->add_option("--k", bo.k, "Dimension")->required();
    cb->add_option("--n", bo.n, "Length (with --g random)");
    cb->add_option("--g", bo.g, "Evaluation points: comma list (a^i or coefficient notation) or 'random'");
    cb->add_option("--theta", bo.theta, "Frobenius exponent of the generator");
    cb->add_option("--eta", bo.eta, "Twist coefficient(s), comma list, or 'random'");
    cb->add_option("--twists", bo.t, "Twist offsets, comma list");
    cb->add_option("--hooks", bo.h, "Hook rows, comma list");
    cb->add_flag("--no-norm-check", bo.no_norm_check, "Skip the norm condition on eta");
    cb->add_option("--seed", bo.seed, "Seed for random g and eta");
    cb->add_option("--out", bo.out, "Output code file");
    cb->callback([&] { action = [&] { return run_build(bo); }; });

    FileOpts fo;
    auto* cd = code->add_subcommand("dual", "Dual code of a code file");
    cd->add_option("--file", fo.file, "Input code file")->required();
    cd->add_option("--out", fo.out, "Output code file");
    cd->callback([&] { action = [&] { return run_dual(fo); }; });

    InvOpts io;
    auto* inv = app.add_subcommand("invariants", "s- and t-sequences per automorphism");
    inv->add_option("--file", io.file, "Code file")->required();
    inv->add_option("--sigma", io.sigma, "Exponent r (a -> a^{q^r}), comma list, or 'all'");
    inv->add_option("--format", io.format)->check(CLI::IsMember({"pretty", "csv", "json"}));
    inv->callback([&] { action = [&] { return run_invariants(io); }; });

    CompareOpts co;
    auto* cmp = app.add_subcommand("compare", "Separate two codes by invariants, optionally by exhaustive search");
    cmp->add_option("a", co.a, "First code file")->required();
    cmp->add_option("b", co.b, "Second code file")->required();
    cmp->add_option("--trials", co.trials, "Random triples to try");
    cmp->add_option("--seed", co.seed, "Seed for the random triples");
    cmp->add_flag("--bruteforce", co.bruteforce, "Exhaustive equivalence search when invariants agree");
    cmp->add_option("--cap", co.cap, "Search size limit for --bruteforce");
    cmp->callback([&] { action = [&] { return run_compare(co); }; });

    auto* cls = app.add_subcommand("classify", "Classification tests");
    cls->require_subcommand(1);
    ClassifyOpts clo;
    auto* gab = cls->add_subcommand("gabidulin", "Test whether a code is theta-Gabidulin");
    gab->add_option("--file", clo.file, "Code file")->required();
    gab->add_option("--theta", clo.theta, "Frobenius exponent of the generator");
    gab->add_option("--mrd-cap", clo.mrd_cap, "Largest code size for the exhaustive MRD check (0 skips it)");
    gab->add_flag("--decompose", clo.decompose, "Also split off the rank-one part");
    gab->callback([&] { action = [&] { return run_classify(clo); }; });

    CountOpts cto;
    auto* cnt = app.add_subcommand("count", "Counting formulas for Gabidulin and twisted codes");
    cnt->add_option("--q", cto.q)->required();
    cnt->add_option("--k", cto.k)->required();
    cnt->add_option("--n", cto.n)->required();
    cnt->add_option("--m", cto.m)->required();
    cnt->add_option("--field-cap", cto.field_cap, "Largest field for the norm-orbit enumeration");
    cnt->add_option("--format", cto.format)->check(CLI::IsMember({"pretty", "json"}));
    cnt->callback([&] { action = [&] { return run_count(cto); }; });

    CensusOpts ceo;
    auto* cen = app.add_subcommand("census", "Generalized twisted census with lower and upper class bounds");
    cen->add_option("--q", ceo.q, "Base field size");
    cen->add_option("--n", ceo.n)->required();
    cen->add_option("--k", ceo.k)->required();
    cen->add_option("--seed", ceo.seed);
    cen->add_option("--trials", ceo.trials, "Random automorphism triples");
    cen->add_option("--jobs", ceo.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
    cen->add_option("--csv", ceo.csv, "Write per-class rows to this file");
    cen->add_flag("--timing", ceo.timing, "Report wall-clock time");
    cen->add_option("--format", ceo.format)->check(CLI::IsMember({"pretty", "csv", "json"}));
    cen->callback([&] { action = [&] { return run_census(ceo); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        return action();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
