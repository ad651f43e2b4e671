#include "rmc/codes.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace rmc {

LinearCode::LinearCode(FieldPtr f, std::size_t n) : gen_(std::move(f), 0, n) {}

LinearCode::LinearCode(const Matrix& generators) : gen_(row_basis(generators)) {}

std::string family_name(Family f) {
    switch (f) {
        case Family::Gabidulin: return "gabidulin";
        case Family::Twisted: return "twisted";
        case Family::GeneralizedTwisted: return "generalized-twisted";
        case Family::NewGabI: return "new-gabidulin-1";
        case Family::NewGabII: return "new-gabidulin-2";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    for (Family f : {Family::Gabidulin, Family::Twisted, Family::GeneralizedTwisted, Family::NewGabI, Family::NewGabII})
        if (family_name(f) == s) return f;
    if (s == "gtw") return Family::GeneralizedTwisted;
    if (s == "newgab1") return Family::NewGabI;
    if (s == "newgab2") return Family::NewGabII;
    throw DomainError("unknown code family: " + s);
}

bool norm_condition_holds(const FieldTower& f, Elem eta, std::size_t k) {
    const Elem target = (k * f.m()) % 2 == 0 ? f.one() : f.neg(f.one());
    return f.norm(eta) != target;
}

bool eta_condition_holds(const FieldTower& f, Family family, Elem eta, std::size_t k) {
    switch (family) {
        case Family::NewGabI: return f.norm(eta) != (f.m() % 2 == 0 ? f.one() : f.neg(f.one()));
        case Family::NewGabII: return f.norm(eta) != f.one();
        default: return norm_condition_holds(f, eta, k);
    }
}

namespace {

Vec add_scaled(const FieldTower& F, const Vec& x, Elem c, const Vec& y) {
    Vec out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = F.add(x[j], F.mul(c, y[j]));
    return out;
}

void check_common(const FieldTower& F, const CodeSpec& s) {
    const std::size_t n = s.g.size();
    if (s.b != 0) throw DomainError("only b = 0 (F_{q^m}-linear) twisted codes are supported");
    if (s.k < 1 || s.k > n || n > F.m()) throw DomainError("need 1 <= k <= n <= m");
    if (!GaloisAut(s.theta, F.m()).is_generator()) throw DomainError("theta exponent must be coprime to m");
    if (rank_q(F, s.g) != n) throw DomainError("evaluation vector g must have q-rank n");
}

void check_eta(const FieldTower& F, const CodeSpec& s) {
    if (s.eta.size() != 1) throw DomainError("this family takes exactly one eta");
    if (!s.enforce_norm_condition || eta_condition_holds(F, s.family, s.eta[0], s.k)) return;
    switch (s.family) {
        case Family::NewGabI: throw DomainError("norm condition violated: N(eta) = (-1)^m");
        case Family::NewGabII: throw DomainError("norm condition violated: N(eta) = 1");
        default: throw DomainError("norm condition violated: N(eta) = (-1)^{km}");
    }
}

}  // namespace

LinearCode build(const FieldPtr& f, const CodeSpec& s) {
    const FieldTower& F = *f;
    check_common(F, s);
    const std::size_t n = s.g.size(), k = s.k, m = F.m();
    auto th = [&](long long j) { return frobenius(F, s.g, s.theta * j); };
    std::vector<Vec> rows;
    switch (s.family) {
        case Family::Gabidulin:
            for (std::size_t j = 0; j < k; ++j) rows.push_back(th(j));
            break;
        case Family::Twisted:
            check_eta(F, s);
            for (std::size_t j = 0; j < k; ++j) rows.push_back(th(j));
            rows[0] = add_scaled(F, rows[0], s.eta[0], th(k));
            break;
        case Family::GeneralizedTwisted: {
            const std::size_t l = s.eta.size();
            if (s.t.size() != l || s.h.size() != l) throw DomainError("eta, t and h must have equal length");
            std::set<long long> hs(s.h.begin(), s.h.end()), ts(s.t.begin(), s.t.end());
            if (hs.size() != l || ts.size() != l) throw DomainError("hooks and twists must be distinct");
            for (long long h : s.h)
                if (h < 0 || h >= static_cast<long long>(k)) throw DomainError("hook out of range [0, k)");
            for (long long t : s.t) {
                const bool low = t >= 1 && t <= static_cast<long long>(n - k);
                const bool high = t >= static_cast<long long>(m) - static_cast<long long>(n) + 1 &&
                                  t <= static_cast<long long>(m - k);
                if (!low && !high) throw DomainError("twist out of range [1, n-k] u [m-n+1, m-k]");
            }
            for (std::size_t j = 0; j < k; ++j) rows.push_back(th(j));
            for (std::size_t i = 0; i < l; ++i) {
                const auto h = static_cast<std::size_t>(s.h[i]);
                rows[h] = add_scaled(F, th(s.h[i]), s.eta[i], th(static_cast<long long>(k) - 1 + s.t[i]));
            }
            break;
        }
        case Family::NewGabI:
        case Family::NewGabII: {
            check_eta(F, s);
            const bool first = s.family == Family::NewGabI;
            if (first && !(m - k > k)) throw DomainError("first new kind needs m - k > k");
            if (!first && !(m - k <= k)) throw DomainError("second new kind needs m - k <= k");
            const std::size_t twisted_rows = first ? k : m - k;
            for (std::size_t i = 0; i < k; ++i) {
                if (i < twisted_rows) {
                    const Elem c = F.frobenius(s.eta[0], s.theta * static_cast<long long>(i));
                    rows.push_back(add_scaled(F, th(i), c, th(k + i)));
                } else {
                    rows.push_back(th(i));
                }
            }
            break;
        }
    }
    LinearCode c(Matrix::from_rows(f, rows, n));
    if (c.k() != k) throw DomainError("construction produced dimension " + std::to_string(c.k()) + " instead of k");
    return c;
}

LinearCode dual(const LinearCode& c) { return LinearCode(kernel(c.gen())); }

bool code_equal(const LinearCode& a, const LinearCode& b) {
    if (a.field() != b.field() || a.n() != b.n()) throw DomainError("codes live in different ambient spaces");
    return a == b;
}

namespace {

Vec dual_evaluation_vector(const FieldPtr& f, const CodeSpec& s) {
    const std::size_t n = s.g.size();
    const Vec v = frobenius(*f, s.g, -s.theta * static_cast<long long>(n - s.k - 1));
    Matrix ker = kernel(moore_matrix(f, v, n - 1, GaloisAut(s.theta, f->m())));
    if (ker.rows() != 1) throw DomainError("dual evaluation space is not one-dimensional");
    Vec gp = ker.row_vec(0);
    if (rank_q(*f, gp) != n) throw DomainError("dual evaluation vector lost q-rank");
    return gp;
}

}  // namespace

CodeSpec gabidulin_dual_params(const FieldPtr& f, const CodeSpec& s) {
    if (s.family != Family::Gabidulin) throw DomainError("expected a Gabidulin spec");
    check_common(*f, s);
    if (s.k >= s.g.size()) throw DomainError("dual of the full space is the zero code");
    CodeSpec out = s;
    out.k = s.g.size() - s.k;
    out.g = dual_evaluation_vector(f, s);
    return out;
}

CodeSpec twisted_dual_params(const FieldPtr& f, const CodeSpec& s) {
    const FieldTower& F = *f;
    if (s.family != Family::Twisted) throw DomainError("expected a twisted spec");
    check_common(F, s);
    check_eta(F, s);
    const std::size_t n = s.g.size(), k = s.k;
    if (k < 2 || k + 2 > n) throw DomainError("twisted dual formula needs 2 <= k <= n-2");
    const long long th = s.theta, kn = static_cast<long long>(k) - static_cast<long long>(n);
    const Vec gp = dual_evaluation_vector(f, s);
    const Elem D = determinant(moore_matrix(f, s.g, n, GaloisAut(th, F.m())));
    const Vec shifted = frobenius(F, gp, th * static_cast<long long>(n - k));
    Elem c = F.zero();
    for (std::size_t j = 0; j < n; ++j) c = F.add(c, F.mul(shifted[j], s.g[j]));
    if (c.v == 0) throw DomainError("degenerate inner product in twisted dual formula");
    Elem eta = s.eta[0];
    if (n % 2 == 1) eta = F.neg(eta);
    eta = F.mul(eta, F.div(F.frobenius(D, th * (kn + 1)), F.frobenius(D, th * kn)));
    eta = F.mul(eta, F.div(F.frobenius(c, th * kn), c));
    CodeSpec out = s;
    out.k = n - k;
    out.g = gp;
    out.eta = {eta};
    return out;
}

LinearCode apply_galois(const LinearCode& c, GaloisAut sigma) { return LinearCode(frobenius(c.gen(), sigma.i)); }

namespace {

void check_map(const FieldTower& F, const SemilinearMap& map, std::size_t n) {
    if (map.a.rows() != n || map.a.cols() != n) throw DomainError("semilinear map matrix must be n x n");
    if (map.lambda.v == 0) throw DomainError("semilinear map needs nonzero lambda");
    for (std::size_t i = 0; i < n; ++i)
        for (Elem x : map.a.row(i))
            if (!F.in_subfield(x)) throw DomainError("semilinear map matrix must have entries in F_q");
    if (determinant(map.a).v == 0) throw DomainError("semilinear map matrix is singular");
}

}  // namespace

Vec apply_semilinear(const FieldTower& F, std::span<const Elem> v, const SemilinearMap& map) {
    Vec w(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) w[j] = F.full_frobenius(F.mul(map.lambda, v[j]), map.tau);
    return vec_mul(w, map.a);
}

LinearCode apply_semilinear(const LinearCode& c, const SemilinearMap& map) {
    const FieldTower& F = *c.field();
    check_map(F, map, c.n());
    Matrix img(c.field(), 0, c.n());
    for (std::size_t i = 0; i < c.k(); ++i) img.append_row(apply_semilinear(F, c.gen().row(i), map));
    return LinearCode(img);
}

namespace {

std::vector<Elem> subfield_basis(const FieldTower& F) {
    std::vector<Elem> basis{F.one()};
    if (F.e() > 1) {
        const Elem g = F.subfield_generator(1);
        for (unsigned j = 1; j < F.e(); ++j) basis.push_back(F.mul(basis.back(), g));
    }
    return basis;
}

}  // namespace

Matrix subfield_subcode(const LinearCode& c) {
    const FieldTower& F = *c.field();
    const std::size_t n = c.n();
    const Matrix H = kernel(c.gen());
    const auto beta = subfield_basis(F);
    const std::size_t e = beta.size(), d = F.degree();
    // unknown (j, l): coefficient of beta_l in u_j; one F_p equation per (row of H, coefficient).
    PrimeMatrix sys(F.p(), H.rows() * d, n * e);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < e; ++l)
            for (std::size_t i = 0; i < H.rows(); ++i) {
                auto co = F.coeffs(F.mul(beta[l], H(i, j)));
                for (std::size_t r = 0; r < d; ++r) sys.at(i * d + r, j * e + l) = co[r];
            }
    Matrix out(c.field(), 0, n);
    for (const auto& x : prime_kernel(std::move(sys))) {
        Vec u(n, F.zero());
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < e; ++l) u[j] = F.add(u[j], F.mul(F.from_int(x[j * e + l]), beta[l]));
        out.append_row(u);
    }
    return row_basis(out);
}

bool has_rank_one_codeword(const LinearCode& c) { return subfield_subcode(c).rows() > 0; }

bool has_rank_one_codeword_hilbert90(const LinearCode& c, std::uint64_t cap) {
    const FieldTower& F = *c.field();
    if (c.k() == 0) return false;
    const std::uint64_t count = (F.order() - 1) / (F.q() - 1);
    if (count > cap) throw DomainError("norm-one scan exceeds cap");
    const std::size_t n = c.n(), k = c.k(), d = F.degree();
    std::vector<Elem> powers{F.one()};
    for (std::size_t r = 1; r < d; ++r) powers.push_back(F.mul(powers.back(), F.alpha()));
    const Elem step = F.pow(F.alpha(), F.q() - 1);  // generates the norm-one subgroup
    Elem mu = F.one();
    for (std::uint64_t idx = 0; idx < count; ++idx, mu = F.mul(mu, step)) {
        PrimeMatrix sys(F.p(), n * d, k * d);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t r = 0; r < d; ++r) {
                const std::size_t col = i * d + r;
                for (std::size_t j = 0; j < n; ++j) {
                    const Elem x = F.mul(powers[r], c.gen()(i, j));
                    auto co = F.coeffs(F.sub(F.frobenius(x, 1), F.mul(mu, x)));
                    for (std::size_t b = 0; b < d; ++b) sys.at(j * d + b, col) = co[b];
                }
            }
        if (prime_rank(std::move(sys)) < k * d) return true;
    }
    return false;
}

std::size_t min_distance_bruteforce(const LinearCode& c, std::uint64_t cap) {
    const FieldTower& F = *c.field();
    const std::size_t k = c.k(), n = c.n();
    if (k == 0) throw DomainError("minimum distance of the zero code is undefined");
    const std::uint64_t Q = F.order();
    unsigned __int128 total = 0, pw = 1;
    for (std::size_t i = 0; i < k; ++i) {
        total += pw;
        pw *= Q;
        if (total > cap) throw DomainError("codeword enumeration exceeds cap");
    }
    std::size_t best = n;
    // Projective enumeration: first nonzero coefficient is 1.
    for (std::size_t lead = 0; lead < k && best > 1; ++lead) {
        const std::size_t free = k - 1 - lead;
        std::vector<std::uint64_t> idx(free, 0);
        while (true) {
            Vec w = c.gen().row_vec(lead);
            for (std::size_t j = 0; j < free; ++j) {
                if (!idx[j]) continue;
                const Elem a = F.element(idx[j]);
                for (std::size_t col = 0; col < n; ++col) w[col] = F.add(w[col], F.mul(a, c.gen()(lead + 1 + j, col)));
            }
            best = std::min(best, rank_q(F, w));
            if (best == 1) break;
            std::size_t pos = 0;
            while (pos < free && ++idx[pos] == Q) idx[pos++] = 0;
            if (pos == free) break;
        }
    }
    return best;
}

}  // namespace rmc
