#pragma once

#include <algorithm>
#include <vector>

#include "rmc/classify.hpp"
#include "rmc/code_io.hpp"
#include "rmc/rng.hpp"

namespace testing {

using namespace rmc;

inline FieldPtr golden_field() {
    // x^15 + x^5 + x^4 + x^2 + 1
    std::vector<unsigned> mod(16, 0);
    for (int i : {0, 2, 4, 5, 15}) mod[i] = 1;
    return make_field(2, 1, 15, mod);
}

inline Vec golden_g(const FieldTower& f) {
    Vec g;
    for (long long k : {16474, 23822, 10386, 28105, 21661, 2599, 30721, 198}) g.push_back(f.alpha_pow(k));
    return g;
}

inline Elem golden_eta(const FieldTower& f) { return f.alpha_pow(22859); }

inline CodeSpec gab_spec(Vec g, std::size_t k, long long theta = 1) {
    CodeSpec s;
    s.family = Family::Gabidulin;
    s.k = k;
    s.theta = theta;
    s.g = std::move(g);
    return s;
}

inline CodeSpec tw_spec(Vec g, std::size_t k, Elem eta, long long theta = 1, bool norm = true) {
    CodeSpec s = gab_spec(std::move(g), k, theta);
    s.family = Family::Twisted;
    s.eta = {eta};
    s.enforce_norm_condition = norm;
    return s;
}

inline CodeSpec gtw_spec(Vec g, std::size_t k, Vec eta, std::vector<long long> t, std::vector<long long> h,
                         long long theta = 1) {
    CodeSpec s = gab_spec(std::move(g), k, theta);
    s.family = Family::GeneralizedTwisted;
    s.eta = std::move(eta);
    s.t = std::move(t);
    s.h = std::move(h);
    s.enforce_norm_condition = false;
    return s;
}

inline Elem random_elem(const FieldTower& f, Stream& st) { return f.element(st.below(f.order())); }

inline Elem random_nonzero(const FieldTower& f, Stream& st) { return f.element(1 + st.below(f.order() - 1)); }

inline Vec random_full_rank(const FieldTower& f, std::size_t n, Stream& st) {
    while (true) {
        Vec g(n);
        for (auto& x : g) x = random_elem(f, st);
        if (rank_q(f, g) == n) return g;
    }
}

// g with entries spanning the subfield F_{q^r}, rank n = r
inline Vec random_subfield_basis(const FieldTower& f, unsigned r, Stream& st) {
    const Elem beta = f.subfield_generator(r);
    std::uint64_t size = 1;
    for (unsigned i = 0; i < r; ++i) size *= f.q();
    while (true) {
        Vec g(r);
        for (auto& x : g) {
            auto idx = st.below(size);
            x = idx == 0 ? f.zero() : f.pow(beta, idx - 1);
        }
        if (rank_q(f, g) == r) return g;
    }
}

inline Elem random_valid_eta(const FieldTower& f, std::size_t k, Stream& st, Family fam = Family::Twisted) {
    while (true) {
        Elem e = random_nonzero(f, st);
        if (eta_condition_holds(f, fam, e, k)) return e;
    }
}

inline Elem element_with_norm(const FieldTower& f, Elem target) {
    for (std::uint64_t x = 1; x < f.order(); ++x)
        if (f.norm(f.element(x)) == target) return f.element(x);
    throw DomainError("no element with the requested norm");
}

inline Matrix random_matrix(const FieldPtr& f, std::size_t r, std::size_t c, Stream& st) {
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (auto& x : m.row(i)) x = random_elem(*f, st);
    return m;
}

inline LinearCode random_code(const FieldPtr& f, std::size_t n, std::size_t k, Stream& st) {
    while (true) {
        LinearCode c(random_matrix(f, k, n, st));
        if (c.k() == k) return c;
    }
}

inline Matrix random_invertible_fq(const FieldPtr& f, std::size_t n, Stream& st) {
    const auto fq = f->subfield_elements();
    while (true) {
        Matrix a(f, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (auto& x : a.row(i)) x = fq[st.below(fq.size())];
        if (rank(a) == n) return a;
    }
}

inline SemilinearMap random_semilinear(const FieldPtr& f, std::size_t n, Stream& st) {
    return {random_nonzero(*f, st), random_invertible_fq(f, n, st),
            static_cast<long long>(st.below(f->degree()))};
}

// Zassenhaus: rows (a|a) and (b|0); rows of the echelon form with zero left half span the intersection.
inline Matrix zassenhaus_intersection(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.cols();
    Matrix z(a.field(), 0, 2 * n);
    Vec row(2 * n);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) row[j] = row[n + j] = a(i, j);
        z.append_row(row);
    }
    for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = b(i, j);
            row[n + j] = Elem{0};
        }
        z.append_row(row);
    }
    Echelon e = rref(z);
    Matrix out(a.field(), 0, n);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] < n) continue;
        out.append_row(e.reduced.row(i).subspan(n));
    }
    return row_basis(out);
}

}  // namespace testing
