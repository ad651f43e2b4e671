#include "rmc/classify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "rmc/rng.hpp"

namespace rmc {

std::string status_name(Status s) {
    switch (s) {
        case Status::Inequivalent: return "Inequivalent";
        case Status::Equivalent: return "Equivalent";
        case Status::Unknown: return "Unknown";
    }
    return "?";
}

std::string Verdict::describe() const {
    std::ostringstream os;
    switch (status) {
        case Status::Unknown: os << "Unknown (no invariant separates)"; break;
        case Status::Inequivalent:
            os << "Inequivalent";
            if (quantity == "exhaustive") {
                os << " (exhaustive search found no map)";
            } else {
                os << " (automorphisms";
                for (unsigned a : autos) os << " theta^" << a;
                os << ": " << quantity << " = " << left << " vs " << right << ")";
            }
            break;
        case Status::Equivalent:
            os << "Equivalent";
            if (map) os << " (tau = p^" << map->tau << ")";
            break;
    }
    return os.str();
}

namespace {

void check_same_space(const LinearCode& a, const LinearCode& b) {
    if (a.field() != b.field() || a.n() != b.n()) throw DomainError("codes must share field and length");
}

Verdict inequivalent(std::vector<unsigned> autos, std::string what, long long l, long long r) {
    Verdict v;
    v.status = Status::Inequivalent;
    v.autos = std::move(autos);
    v.quantity = std::move(what);
    v.left = l;
    v.right = r;
    return v;
}

}  // namespace

Verdict distinguish(const LinearCode& a, const LinearCode& b, const Budget& budget) {
    check_same_space(a, b);
    if (a.k() != b.k()) throw DomainError("codes must have the same dimension");
    const unsigned m = a.field()->m();
    for (unsigned r = 0; r < m; ++r) {
        const GaloisAut s(r, m);
        const Seq sa = fast_s_sequence(a, s), sb = fast_s_sequence(b, s);
        for (std::size_t i = 0; i < sa.size(); ++i)
            if (sa[i] != sb[i]) return inequivalent({r}, "s_" + std::to_string(i), sa[i], sb[i]);
        const Seq ta = t_sequence_via_dual(a, s), tb = t_sequence_via_dual(b, s);
        for (std::size_t i = 0; i < ta.size(); ++i)
            if (ta[i] != tb[i]) return inequivalent({r}, "t_" + std::to_string(i), ta[i], tb[i]);
    }
    if (m >= 3 && budget.trials > 0) {
        for (const Triple& tr : random_triples(m, budget.trials, budget.seed)) {
            const GaloisAut au[3] = {GaloisAut(tr.a, m), GaloisAut(tr.b, m), GaloisAut(tr.c, m)};
            const auto sa = sum_codes(a, au).k(), sb = sum_codes(b, au).k();
            if (sa != sb) return inequivalent({tr.a, tr.b, tr.c}, "sum", sa, sb);
            const auto ia = intersect_codes(a, au).k(), ib = intersect_codes(b, au).k();
            if (ia != ib) return inequivalent({tr.a, tr.b, tr.c}, "intersection", ia, ib);
        }
    }
    return Verdict{};
}

bool verify(const Verdict& v, const LinearCode& a, const LinearCode& b) {
    switch (v.status) {
        case Status::Unknown: return true;
        case Status::Equivalent: return v.map && apply_semilinear(a, *v.map) == b;
        case Status::Inequivalent: break;
    }
    if (v.quantity == "exhaustive") return true;  // nothing shorter than redoing the search
    const unsigned m = a.field()->m();
    std::vector<GaloisAut> au;
    for (unsigned x : v.autos) au.emplace_back(x, m);
    auto value = [&](const LinearCode& c) -> long long {
        if (v.quantity == "sum") return static_cast<long long>(sum_codes(c, au).k());
        if (v.quantity == "intersection") return static_cast<long long>(intersect_codes(c, au).k());
        const std::size_t i = std::stoul(v.quantity.substr(2));
        if (v.quantity[0] == 's') return static_cast<long long>(sigma_sum(c, au.at(0), i).k());
        return static_cast<long long>(sigma_intersection(c, au.at(0), i).k());
    };
    const long long l = value(a), r = value(b);
    return l == v.left && r == v.right && l != r;
}

namespace {

Matrix full_frobenius(const Matrix& m, long long j) {
    Matrix out = m;
    const FieldTower& F = *m.field();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (auto& x : out.row(r)) x = F.full_frobenius(x, j);
    return out;
}

struct EquivSearch {
    const FieldTower& F;
    std::size_t n, k;
    std::vector<Vec> vecs;            // all of F_q^n
    std::vector<Vec> imgs;            // G_tau * v, per vector
    std::map<Vec, std::vector<std::size_t>> by_image;
    std::vector<std::size_t> pivots, others;
    const Matrix& r2;
    std::vector<std::size_t> chosen;  // vector index per column of A
    Matrix cols;                      // chosen columns as rows, for independence checks

    bool independent_with(std::size_t idx) {
        Matrix probe = cols;
        probe.append_row(vecs[idx]);
        return rank(probe) == probe.rows();
    }

    bool place_others(std::size_t pos) {
        if (pos == others.size()) return true;
        const std::size_t j = others[pos];
        Vec target(k, F.zero());
        for (std::size_t l = 0; l < k; ++l) {
            const Elem c = r2(l, j);
            if (!c.v) continue;
            const Vec& col = imgs[chosen[pivots[l]]];
            for (std::size_t i = 0; i < k; ++i) target[i] = F.add(target[i], F.mul(c, col[i]));
        }
        auto it = by_image.find(target);
        if (it == by_image.end()) return false;
        for (std::size_t idx : it->second) {
            if (!independent_with(idx)) continue;
            chosen[j] = idx;
            cols.append_row(vecs[idx]);
            if (place_others(pos + 1)) return true;
            cols = row_prefix(cols.rows() - 1);
        }
        return false;
    }

    Matrix row_prefix(std::size_t r) const {
        Matrix out(cols.field(), 0, n);
        for (std::size_t i = 0; i < r; ++i) out.append_row(cols.row(i));
        return out;
    }

    bool place_pivots(std::size_t l, Matrix& bcols) {
        if (l == k) return place_others(0);
        for (std::size_t idx = 1; idx < vecs.size(); ++idx) {
            Matrix probe = bcols;
            probe.append_row(imgs[idx]);
            if (rank(probe) != l + 1) continue;
            chosen[pivots[l]] = idx;
            cols.append_row(vecs[idx]);
            if (place_pivots(l + 1, probe)) return true;
            cols = row_prefix(cols.rows() - 1);
        }
        return false;
    }
};

}  // namespace

Verdict bruteforce_equivalent(const LinearCode& a, const LinearCode& b, double cap) {
    check_same_space(a, b);
    const FieldTower& F = *a.field();
    const std::size_t n = a.n(), k = a.k();
    double gl = 1;
    for (std::size_t i = 0; i < n; ++i) gl *= std::pow(double(F.q()), double(n)) - std::pow(double(F.q()), double(i));
    if (gl * F.degree() > cap) throw DomainError("brute-force equivalence search exceeds cap");
    if (a.k() != b.k()) return inequivalent({}, "exhaustive", a.k(), b.k());
    if (k == 0 || k == n) {
        Verdict v;
        v.status = Status::Equivalent;
        v.map = SemilinearMap{F.one(), Matrix::identity(a.field(), n), 0};
        return v;
    }
    const auto fq = F.subfield_elements();
    std::vector<Vec> vecs;
    {
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < n; ++i) total *= fq.size();
        for (std::uint64_t x = 0; x < total; ++x) {
            Vec v(n);
            std::uint64_t y = x;
            for (std::size_t i = 0; i < n; ++i, y /= fq.size()) v[i] = fq[y % fq.size()];
            vecs.push_back(std::move(v));
        }
    }
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t c = 0;
        while (b.gen()(i, c).v == 0) ++c;
        pivots.push_back(c);
    }
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < n; ++j)
        if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) others.push_back(j);

    for (unsigned tau = 0; tau < F.degree(); ++tau) {
        const Matrix g = full_frobenius(a.gen(), tau);
        EquivSearch s{F, n, k, vecs, {}, {}, pivots, others, b.gen(), std::vector<std::size_t>(n, 0),
                      Matrix(a.field(), 0, n)};
        for (const Vec& v : vecs) {
            Vec img(k, F.zero());
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < n; ++j) img[i] = F.add(img[i], F.mul(g(i, j), v[j]));
            s.by_image[img].push_back(s.imgs.size());
            s.imgs.push_back(std::move(img));
        }
        Matrix bcols(a.field(), 0, k);
        if (!s.place_pivots(0, bcols)) continue;
        Matrix A(a.field(), n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) A(i, j) = vecs[s.chosen[j]][i];
        Verdict v;
        v.status = Status::Equivalent;
        v.map = SemilinearMap{F.one(), A, tau};
        if (apply_semilinear(a, *v.map) != b) throw DomainError("internal: equivalence witness failed to verify");
        return v;
    }
    return inequivalent({}, "exhaustive", 0, 0);
}

GabidulinCheck is_theta_gabidulin(const LinearCode& c, GaloisAut theta, std::uint64_t mrd_cap) {
    const FieldTower& F = *c.field();
    const std::size_t n = c.n(), k = c.k();
    if (!theta.is_generator()) throw DomainError("theta must generate the Galois group");
    if (k < 1 || k >= n) throw DomainError("characterization needs 1 <= k < n");
    const InvariantProfile p = profile(c, theta);
    const LinearCode d = dual(c);
    const bool d_ok = !has_rank_one_codeword(c);
    const bool dual_ok = !has_rank_one_codeword(d);

    GabidulinCheck out;
    auto put = [&](int id, const char* name, std::optional<bool> v) { out.criteria.push_back({id, name, v}); };

    std::optional<bool> mrd;
    {
        const std::uint64_t Q = F.order();
        unsigned __int128 total = 0, pw = 1;
        bool small = true;
        for (std::size_t i = 0; i < k && small; ++i) {
            total += pw;
            pw *= Q;
            small = total <= mrd_cap;
        }
        if (small) mrd = min_distance_bruteforce(c, mrd_cap) == n - k + 1;
    }
    put(3, "MRD and s_1 = k+1", mrd ? std::optional<bool>(*mrd && p.s[1] == k + 1) : std::nullopt);
    put(4, "MRD and t_1 = k-1", mrd ? std::optional<bool>(*mrd && p.t[1] == k - 1) : std::nullopt);

    bool s_lin = true, t_lin = true, delta_ones = true, lambda_ones = true;
    for (std::size_t i = 0; i <= n - k; ++i) s_lin = s_lin && p.s[i] == k + i;
    for (std::size_t i = 0; i <= k; ++i) t_lin = t_lin && p.t[i] == k - i;
    for (std::size_t i = 0; i <= n - k; ++i) delta_ones = delta_ones && p.delta[i] == (i < n - k ? 1u : 0u);
    for (std::size_t i = 0; i <= k; ++i) lambda_ones = lambda_ones && p.lambda[i] == (i < k ? 1u : 0u);
    put(5, "s_i = k+i, no rank-one codeword", s_lin && d_ok);
    put(6, "t_i = k-i, dual has no rank-one codeword", t_lin && dual_ok);
    put(7, "s_1 = k+1 and s_{n-k} = n, no rank-one codeword", p.s[1] == k + 1 && p.s[n - k] == n && d_ok);
    put(8, "t_1 = k-1 and t_k = 0, dual has no rank-one codeword", p.t[1] == k - 1 && p.t[k] == 0 && dual_ok);
    put(9, "every delta_i = 1, no rank-one codeword", delta_ones && d_ok);
    put(10, "every lambda_i = 1, dual has no rank-one codeword", lambda_ones && dual_ok);
    put(11, "delta_0 = delta_{n-k-1} = 1, no rank-one codeword", p.delta[0] == 1 && p.delta[n - k - 1] == 1 && d_ok);
    put(12, "lambda_0 = lambda_{k-1} = 1, dual has no rank-one codeword", p.lambda[0] == 1 && p.lambda[k - 1] == 1 && dual_ok);

    {
        // systematic form after moving the pivot columns to the front
        const Matrix& R = c.gen();
        std::vector<std::size_t> piv, rest;
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t col = 0;
            while (R(i, col).v == 0) ++col;
            piv.push_back(col);
        }
        for (std::size_t j = 0; j < n; ++j)
            if (std::find(piv.begin(), piv.end(), j) == piv.end()) rest.push_back(j);
        Matrix Y(c.field(), k, n - k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n - k; ++j) {
                const Elem x = R(i, rest[j]);
                Y(i, j) = F.sub(F.frobenius(x, theta.i), x);
            }
        Vec col0(k);
        for (std::size_t i = 0; i < k; ++i) col0[i] = Y(i, 0);
        put(13, "theta(X) - X has rank one and full q-ranks, X the systematic part", rank(Y) == 1 && rank_q(F, Y.row(0)) == n - k && rank_q(F, col0) == k);
    }

    std::optional<bool> first;
    for (const auto& cr : out.criteria) {
        if (!cr.value) continue;
        if (!first) first = cr.value;
        else if (*first != *cr.value) out.consistent = false;
    }
    out.is_gabidulin = first.value_or(false);
    return out;
}

RankOneDecomposition rank_one_decomposition(const LinearCode& c, GaloisAut theta) {
    const FieldTower& F = *c.field();
    const std::size_t k = c.k();
    if (!theta.is_generator()) throw DomainError("theta must generate the Galois group");
    const std::size_t s1 = fast_s_sequence(c, theta, 1).at(1);
    if (s1 != k && s1 != k + 1) throw DomainError("rank-one decomposition needs s_1 <= k + 1");
    RankOneDecomposition out{subfield_subcode(c), 0, {}};
    const std::size_t r = out.rank_one_basis.rows();
    out.t = k - r;
    if (out.t == 0) return out;
    const LinearCode inter = sigma_intersection(c, theta, out.t - 1);
    const long long back = -static_cast<long long>(theta.i) * static_cast<long long>(out.t - 1);
    for (std::size_t i = 0; i < inter.k(); ++i) {
        if (in_row_space(out.rank_one_basis, inter.gen().row(i)) && r > 0) continue;
        Vec g = frobenius(F, inter.gen().row(i), back);
        Matrix rebuilt = out.rank_one_basis;
        rebuilt.append_rows(moore_matrix(c.field(), g, out.t, theta));
        if (rank(rebuilt) != k || LinearCode(rebuilt) != c || rank_q(F, g) <= out.t) continue;
        out.g = std::move(g);
        return out;
    }
    throw DomainError("internal: no Gabidulin part reconstructs the code");
}

std::pair<unsigned, unsigned> split_prime_power(std::uint64_t q) {
    if (q < 2) throw DomainError("q must be a prime power");
    std::uint64_t p = 2;
    while (p * p <= q && q % p) ++p;
    if (q % p) p = q;
    unsigned e = 0;
    std::uint64_t x = q;
    while (x % p == 0) {
        x /= p;
        ++e;
    }
    if (x != 1) throw DomainError("q must be a prime power");
    return {static_cast<unsigned>(p), e};
}

namespace {

mpz_class zpow(std::uint64_t q, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), q, e);
    return r;
}

}  // namespace

mpz_class gaussian_binomial(std::uint64_t q, unsigned m, unsigned n) {
    if (n > m) return 0;
    mpq_class r = 1;
    for (unsigned i = 0; i < n; ++i) r *= mpq_class(zpow(q, m - i) - 1, zpow(q, i + 1) - 1);
    r.canonicalize();
    return r.get_num();
}

mpz_class norm_orbit_count(const FieldPtr& f, std::size_t k) {
    const FieldTower& F = *f;
    const Elem target = (k * F.m()) % 2 == 0 ? F.one() : F.neg(F.one());
    std::vector<bool> seen(F.order(), false);
    mpz_class orbits = 0;
    for (std::uint64_t v = 0; v < F.order(); ++v) {
        if (seen[v] || F.norm(Elem{v}) == target) continue;
        ++orbits;
        for (unsigned j = 0; j < F.degree(); ++j) seen[F.full_frobenius(Elem{v}, j).v] = true;
    }
    return orbits;
}

CountResult counting(std::uint64_t q, std::size_t k, std::size_t n, std::size_t m, std::uint64_t field_cap) {
    const auto [p, e] = split_prime_power(q);
    if (k < 1 || k > n || n > m || m == 0) throw DomainError("need 1 <= k <= n <= m");
    CountResult r{q, k, n, m, {}, {}, {}, {}, {}, {}, {}, {}, {}, std::nullopt, std::nullopt};
    const mpz_class qm = zpow(q, m);
    const long long K = static_cast<long long>(k), N = static_cast<long long>(n);
    const mpq_class phi = euler_phi(static_cast<unsigned>(m));

    mpz_class prod1 = 1, prod0 = 1;
    for (std::size_t i = 1; i < n; ++i) prod1 *= qm - zpow(q, i);
    for (std::size_t i = 0; i < n; ++i) prod0 *= qm - zpow(q, i);
    mpq_class ratio = 1;
    for (std::size_t i = 2; i <= n; ++i) ratio *= mpq_class(zpow(q, m - i + 1) - 1, zpow(q, i) - 1);
    ratio.canonicalize();

    const bool wide = 2 <= K && K <= N - 2;
    const bool narrow = 2 < K && K < N - 2;
    r.gab_theta = {mpq_class(prod1), wide};
    r.gab_upper = {phi / 2 * prod1, wide};
    if (n >= 2) {
        const mpq_class fl(static_cast<unsigned long>(2 * m / (n - 1)));
        r.gab_lower = {phi / fl * prod1, narrow};
    } else {
        r.gab_lower = {0, false};
    }
    r.classes_exact = {phi / 2, narrow && m == n};
    r.classes_lower = {mpq_class((n - 1) * phi) / (2 * m * m * e) * ratio, narrow && n < m};
    r.classes_upper = {phi / 2 * ratio, narrow && n < m};
    r.schmidt_zhou = {mpq_class(gaussian_binomial(q, m, n)) / m * mpq_class(q - 1) / mpq_class(qm - 1),
                      k <= n - 1 && n >= 2 && n + 2 <= m};
    const mpq_class frac = q == 2 ? mpq_class(0) : mpq_class(1) - mpq_class(1, q - 1);
    r.tgab_theta = {frac * prod0, wide};
    r.tgab_upper = {phi / 2 * frac * prod0, wide};
    for (auto* v : {&r.gab_upper, &r.gab_lower, &r.classes_exact, &r.classes_lower, &r.classes_upper,
                    &r.schmidt_zhou, &r.tgab_theta, &r.tgab_upper})
        v->value.canonicalize();
    if (mpz_class(qm) <= mpz_class(static_cast<unsigned long>(field_cap))) {
        const auto f = make_field(p, e, static_cast<unsigned>(m));
        r.norm_orbits = norm_orbit_count(f, k);
        CountValue tc{phi / 2 * mpq_class(*r.norm_orbits), narrow && m == n};
        tc.value.canonicalize();
        r.twisted_classes = tc;
    }
    return r;
}

namespace {

struct ParamTriple {
    unsigned theta;
    long long t, h;
    friend auto operator<=>(const ParamTriple&, const ParamTriple&) = default;
};

std::vector<ParamTriple> census_classes(std::size_t n, std::size_t k) {
    const unsigned m = static_cast<unsigned>(2 * n);
    std::set<ParamTriple> reps;
    const long long N = static_cast<long long>(n), K = static_cast<long long>(k);
    for (unsigned r : galois_generators(m))
        for (long long t = 1; t <= N - K; ++t)
            for (long long h = 0; h < K; ++h) {
                ParamTriple a{r, t, h};
                ParamTriple b{(m - r) % m, N - K + 1 - t, K - 1 - h};
                reps.insert(std::min(a, b));
            }
    return {reps.begin(), reps.end()};
}

}  // namespace

std::size_t census_upper_bound(std::size_t n, std::size_t k) { return census_classes(n, k).size(); }

CensusReport census(std::uint64_t q, std::size_t n, std::size_t k, std::uint64_t seed, std::size_t trials,
                    unsigned jobs) {
    if (n < 6) throw DomainError("census needs n >= 6");
    if (k < 2 || k + 2 > n) throw DomainError("census needs 2 <= k <= n-2");
    const auto [p, e] = split_prime_power(q);
    const std::size_t m = 2 * n;
    CensusReport rep;
    rep.q = q;
    rep.n = n;
    rep.m = m;
    rep.k = k;
    rep.seed = seed;
    rep.trials = trials;
    rep.field = make_field(p, e, static_cast<unsigned>(m));
    const FieldTower& F = *rep.field;

    const Elem beta = F.subfield_generator(static_cast<unsigned>(n));
    std::uint64_t sub_order = 1;  // |F_{q^n}|
    for (std::size_t i = 0; i < n; ++i) sub_order *= q;
    {
        Stream st(seed, "census-g");
        for (std::size_t attempt = 0;; ++attempt) {
            if (attempt > 10000) throw DomainError("failed to sample a full-rank evaluation vector");
            Vec g(n);
            for (auto& x : g) {
                const std::uint64_t idx = st.below(sub_order);
                x = idx == 0 ? F.zero() : F.pow(beta, idx - 1);
            }
            if (rank_q(F, g) == n) {
                rep.g = std::move(g);
                break;
            }
        }
        Stream se(seed, "census-eta");
        for (std::size_t attempt = 0;; ++attempt) {
            if (attempt > 10000) throw DomainError("failed to sample eta outside the subfield");
            const Elem x = F.element(se.below(F.order()));
            if (!F.in_intermediate(x, static_cast<unsigned>(n))) {
                rep.eta = x;
                break;
            }
        }
    }

    const auto classes = census_classes(n, k);
    rep.ub = classes.size();
    const auto triples = random_triples(static_cast<unsigned>(m), trials, seed);
    std::vector<Fingerprint> cons(classes.size()), trip(classes.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr err;
    auto work = [&] {
        try {
            for (std::size_t i = next++; i < classes.size(); i = next++) {
                CodeSpec s;
                s.family = Family::GeneralizedTwisted;
                s.k = k;
                s.theta = classes[i].theta;
                s.g = rep.g;
                s.eta = {rep.eta};
                s.t = {classes[i].t};
                s.h = {classes[i].h};
                s.enforce_norm_condition = false;
                const LinearCode c = build(rep.field, s);
                cons[i] = consecutive_fingerprint(c);
                trip[i] = triple_fingerprint(c, triples);
            }
        } catch (...) {
            std::lock_guard lock(err_mu);
            if (!err) err = std::current_exception();
            next = classes.size();
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(classes.size())));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (err) std::rethrow_exception(err);
    std::set<std::vector<std::vector<long long>>> d1, d2;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        rep.rows.push_back({classes[i].theta, classes[i].t, classes[i].h, cons[i].hash(), trip[i].hash()});
        d1.insert(cons[i].records);
        d2.insert(trip[i].records);
    }
    rep.lb1 = d1.size();
    rep.lb2 = d2.size();
    return rep;
}

}  // namespace rmc
