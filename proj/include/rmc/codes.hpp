#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rmc/linalg.hpp"

namespace rmc {

// F_{q^m}-linear subspace of F_{q^m}^n, stored by its RREF basis.
class LinearCode {
public:
    LinearCode(FieldPtr f, std::size_t n);  // the zero code
    explicit LinearCode(const Matrix& generators);

    const FieldPtr& field() const { return gen_.field(); }
    std::size_t n() const { return gen_.cols(); }
    std::size_t k() const { return gen_.rows(); }
    const Matrix& gen() const { return gen_; }

    friend bool operator==(const LinearCode& a, const LinearCode& b) { return a.gen_ == b.gen_; }

private:
    Matrix gen_;
};

enum class Family { Gabidulin, Twisted, GeneralizedTwisted, NewGabI, NewGabII };

std::string family_name(Family f);
Family parse_family(const std::string& s);

struct CodeSpec {
    Family family = Family::Gabidulin;
    std::size_t k = 1;
    long long theta = 1;       // theta = a -> a^{q^theta}
    Vec g;                     // evaluation points, rank_q(g) = n
    Vec eta;                   // one entry, or one per twist
    std::vector<long long> t;  // twists (generalized twisted only)
    std::vector<long long> h;  // hooks (generalized twisted only)
    long long b = 0;           // nonlinear twist exponent; only 0 is supported
    bool enforce_norm_condition = true;
};

LinearCode build(const FieldPtr& f, const CodeSpec& spec);
LinearCode dual(const LinearCode& c);
bool code_equal(const LinearCode& a, const LinearCode& b);

CodeSpec gabidulin_dual_params(const FieldPtr& f, const CodeSpec& spec);
CodeSpec twisted_dual_params(const FieldPtr& f, const CodeSpec& spec);

LinearCode apply_galois(const LinearCode& c, GaloisAut sigma);

// v -> (tau(lambda v_1), ..., tau(lambda v_n)) A with A in GL_n(q), tau = a -> a^{p^tau}.
struct SemilinearMap {
    Elem lambda{1};
    Matrix a;
    long long tau = 0;
};
LinearCode apply_semilinear(const LinearCode& c, const SemilinearMap& map);
Vec apply_semilinear(const FieldTower& f, std::span<const Elem> v, const SemilinearMap& map);

// Basis (RREF, entries in F_q) of C intersected with F_q^n.
Matrix subfield_subcode(const LinearCode& c);
bool has_rank_one_codeword(const LinearCode& c);
// Same answer via theta(c) = mu c, N(mu) = 1, scanning all norm-one mu.
bool has_rank_one_codeword_hilbert90(const LinearCode& c, std::uint64_t cap = std::uint64_t(1) << 20);

std::size_t min_distance_bruteforce(const LinearCode& c, std::uint64_t cap = std::uint64_t(1) << 24);

// True iff the Frobenius-power constraint N(eta) != (-1)^{km} holds.
bool norm_condition_holds(const FieldTower& f, Elem eta, std::size_t k);
// Family-specific condition making 1 + eta theta^k injective (first new kind: N(eta) != (-1)^m)
// or its dual counterpart invertible (second new kind: N(eta) != 1); twisted uses the one above.
bool eta_condition_holds(const FieldTower& f, Family family, Elem eta, std::size_t k);

}  // namespace rmc
