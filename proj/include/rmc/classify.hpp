#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rmc/invariants.hpp"

namespace rmc {

enum class Status { Inequivalent, Equivalent, Unknown };
std::string status_name(Status s);

struct Verdict {
    Status status = Status::Unknown;
    // Inequivalent by invariants: the automorphism exponents used and the two differing values.
    std::vector<unsigned> autos;
    std::string quantity;  // e.g. "s_1", "t_2", "sum", "intersection"
    long long left = 0, right = 0;
    // Equivalent: the map sending the first code to the second.
    std::optional<SemilinearMap> map;
    std::string describe() const;
};

struct Budget {
    std::size_t trials = 100;
    std::uint64_t seed = 0;
};

Verdict distinguish(const LinearCode& a, const LinearCode& b, const Budget& budget = {});
// Recomputes the witness of a verdict; true if it holds.
bool verify(const Verdict& v, const LinearCode& a, const LinearCode& b);

// Exact search over A in GL_n(q) and field automorphisms. Throws when
// |GL_n(q)| * e * m exceeds cap.
Verdict bruteforce_equivalent(const LinearCode& a, const LinearCode& b, double cap = 1e9);

struct CriterionOutcome {
    int id;
    std::string name;
    std::optional<bool> value;  // empty: not evaluated (e.g. above enumeration cap)
};

struct GabidulinCheck {
    bool is_gabidulin = false;
    bool consistent = true;  // all evaluated criteria agree
    std::vector<CriterionOutcome> criteria;
};

GabidulinCheck is_theta_gabidulin(const LinearCode& c, GaloisAut theta, std::uint64_t mrd_cap = std::uint64_t(1) << 16);

struct RankOneDecomposition {
    Matrix rank_one_basis;  // rows in F_q^n
    std::size_t t = 0;
    Vec g;  // empty when t = 0
};

RankOneDecomposition rank_one_decomposition(const LinearCode& c, GaloisAut theta);

struct CountValue {
    mpq_class value;
    bool applicable = true;  // parameters inside the range where the formula is proved
};

struct CountResult {
    std::uint64_t q;
    std::size_t k, n, m;
    CountValue gab_theta;        // |Gab_q(k,n,m,theta)|
    CountValue gab_upper;        // |Gab_q(k,n,m)| upper bound
    CountValue gab_lower;        // |Gab_q(k,n,m)| lower bound
    CountValue classes_exact;    // N_q(k,m,m)
    CountValue classes_lower;    // N_q(k,n,m), n < m
    CountValue classes_upper;
    CountValue schmidt_zhou;
    CountValue tgab_theta;       // |TGab_q(k,n,m,theta)|
    CountValue tgab_upper;       // |TGab_q(k,n,m)| upper bound
    std::optional<mpz_class> norm_orbits;      // X_q(m,k); empty above the enumeration cap
    std::optional<CountValue> twisted_classes;
};

mpz_class gaussian_binomial(std::uint64_t q, unsigned m, unsigned n);
// X_q(m,k): Aut(F_{q^m})-orbits on {a : N(a) != (-1)^{km}}
mpz_class norm_orbit_count(const FieldPtr& f, std::size_t k);
CountResult counting(std::uint64_t q, std::size_t k, std::size_t n, std::size_t m,
                     std::uint64_t field_cap = std::uint64_t(1) << 22);

struct CensusRow {
    unsigned theta;
    long long t, h;
    std::uint64_t consecutive_hash, triple_hash;
};

struct CensusReport {
    std::uint64_t q;
    std::size_t n, m, k;
    std::uint64_t seed;
    std::size_t trials;
    Vec g;
    Elem eta;
    FieldPtr field;
    std::size_t lb1 = 0, lb2 = 0, ub = 0;
    std::vector<CensusRow> rows;
};

// Number of classes of (theta, t, h) under (theta, t, h) ~ (theta^-1, n-k+1-t, k-1-h), m = 2n.
std::size_t census_upper_bound(std::size_t n, std::size_t k);
CensusReport census(std::uint64_t q, std::size_t n, std::size_t k, std::uint64_t seed, std::size_t trials = 100,
                    unsigned jobs = 1);

// q = p^e
std::pair<unsigned, unsigned> split_prime_power(std::uint64_t q);

}  // namespace rmc
