#include "rmc/invariants.hpp"

#include <algorithm>

#include "rmc/rng.hpp"

namespace rmc {

LinearCode sum_codes(const LinearCode& c, std::span<const GaloisAut> autos) {
    if (autos.empty()) throw DomainError("automorphism set must be non-empty");
    Matrix all(c.field(), 0, c.n());
    for (GaloisAut s : autos) all.append_rows(frobenius(c.gen(), s.i));
    return LinearCode(all);
}

LinearCode intersect_codes(const LinearCode& c, std::span<const GaloisAut> autos) {
    if (autos.empty()) throw DomainError("automorphism set must be non-empty");
    // sigma commutes with the standard inner product, so sigma(C)^perp = sigma(C^perp)
    const Matrix h = kernel(c.gen());
    Matrix all(c.field(), 0, c.n());
    for (GaloisAut s : autos) all.append_rows(frobenius(h, s.i));
    return LinearCode(kernel(all));
}

namespace {

std::vector<GaloisAut> powers(GaloisAut sigma, std::size_t i) {
    std::vector<GaloisAut> out;
    for (std::size_t j = 0; j <= i; ++j) out.push_back(sigma.power(static_cast<long long>(j)));
    return out;
}

std::size_t default_s_max(const LinearCode& c) { return c.n() - c.k(); }

}  // namespace

LinearCode sigma_sum(const LinearCode& c, GaloisAut sigma, std::size_t i) {
    auto a = powers(sigma, i);
    return sum_codes(c, a);
}

LinearCode sigma_intersection(const LinearCode& c, GaloisAut sigma, std::size_t i) {
    auto a = powers(sigma, i);
    return intersect_codes(c, a);
}

Seq s_sequence(const LinearCode& c, GaloisAut sigma, std::optional<std::size_t> i_max) {
    const std::size_t top = i_max.value_or(default_s_max(c));
    Seq s;
    for (std::size_t i = 0; i <= top; ++i) {
        if (i >= 2 && s[i - 1] == s[i - 2]) {
            s.push_back(s.back());
            continue;
        }
        Matrix stacked(c.field(), 0, c.n());
        for (std::size_t j = 0; j <= i; ++j) stacked.append_rows(frobenius(c.gen(), sigma.power(j).i));
        s.push_back(rank(stacked));
    }
    return s;
}

Seq fast_s_sequence(const LinearCode& c, GaloisAut sigma, std::optional<std::size_t> i_max) {
    const std::size_t top = i_max.value_or(default_s_max(c));
    const std::size_t k = c.k();
    Matrix stacked(c.field(), 0, c.n());
    Matrix block = c.gen();
    for (std::size_t j = 0; j <= top; ++j) {
        stacked.append_rows(block);
        block = frobenius(block, sigma.i);
    }
    const auto profile = column_rank_profile(stacked);
    Seq s(top + 1, 0);
    for (std::size_t i = 0; i <= top; ++i)
        s[i] = static_cast<std::size_t>(std::count_if(profile.begin(), profile.end(),
                                                      [&](std::size_t r) { return r < (i + 1) * k; }));
    return s;
}

Seq t_sequence(const LinearCode& c, GaloisAut sigma, std::optional<std::size_t> i_max) {
    const std::size_t top = i_max.value_or(c.k());
    Seq t{c.k()};
    Matrix cur = c.gen();
    for (std::size_t i = 1; i <= top; ++i) {
        if (i >= 2 && t[i - 1] == t[i - 2]) {
            t.push_back(t.back());
            continue;
        }
        cur = row_space_intersection(cur, frobenius(c.gen(), sigma.power(i).i));
        t.push_back(cur.rows());
    }
    return t;
}

Seq t_sequence_via_dual(const LinearCode& c, GaloisAut sigma, std::optional<std::size_t> i_max) {
    const std::size_t top = i_max.value_or(c.k());
    Seq s = fast_s_sequence(dual(c), sigma, top);
    Seq t;
    for (std::size_t x : s) t.push_back(c.n() - x);
    return t;
}

InvariantProfile profile(const LinearCode& c, GaloisAut sigma) {
    InvariantProfile p{sigma, fast_s_sequence(c, sigma), t_sequence_via_dual(c, sigma), {}, {}};
    for (std::size_t i = 0; i < p.s.size(); ++i) p.delta.push_back(i + 1 < p.s.size() ? p.s[i + 1] - p.s[i] : 0);
    for (std::size_t i = 0; i < p.t.size(); ++i) p.lambda.push_back(i + 1 < p.t.size() ? p.t[i] - p.t[i + 1] : 0);
    return p;
}

std::vector<Triple> random_triples(unsigned m, std::size_t trials, std::uint64_t seed) {
    if (m < 3) throw DomainError("random triples need at least three automorphisms (m >= 3)");
    std::vector<Triple> out;
    for (std::size_t i = 0; i < trials; ++i) {
        Stream st(seed, "automorphism-triple", i);
        unsigned v[3];
        for (int j = 0; j < 3; ++j) {
            unsigned x;
            do x = static_cast<unsigned>(st.below(m));
            while (std::find(v, v + j, x) != v + j);
            v[j] = x;
        }
        std::sort(v, v + 3);
        out.push_back({v[0], v[1], v[2]});
    }
    return out;
}

std::uint64_t Fingerprint::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto eat = [&](std::uint64_t x) {
        for (int b = 0; b < 8; ++b) {
            h ^= (x >> (8 * b)) & 0xff;
            h *= 0x100000001b3ull;
        }
    };
    for (const auto& r : records) {
        eat(r.size());
        for (long long x : r) eat(static_cast<std::uint64_t>(x));
    }
    return h;
}

Fingerprint consecutive_fingerprint(const LinearCode& c) {
    Fingerprint fp;
    const unsigned m = c.field()->m();
    for (unsigned r = 0; r < m; ++r) {
        const GaloisAut sigma(r, m);
        std::vector<long long> rec{static_cast<long long>(r)};
        for (auto x : fast_s_sequence(c, sigma)) rec.push_back(static_cast<long long>(x));
        for (auto x : t_sequence_via_dual(c, sigma)) rec.push_back(static_cast<long long>(x));
        fp.records.push_back(std::move(rec));
    }
    std::sort(fp.records.begin(), fp.records.end());
    return fp;
}

Fingerprint triple_fingerprint(const LinearCode& c, std::span<const Triple> triples) {
    Fingerprint fp;
    const unsigned m = c.field()->m();
    for (const Triple& tr : triples) {
        const GaloisAut a[3] = {GaloisAut(tr.a, m), GaloisAut(tr.b, m), GaloisAut(tr.c, m)};
        fp.records.push_back({tr.a, tr.b, tr.c, static_cast<long long>(sum_codes(c, a).k()),
                              static_cast<long long>(intersect_codes(c, a).k())});
    }
    std::sort(fp.records.begin(), fp.records.end());
    return fp;
}

}  // namespace rmc
