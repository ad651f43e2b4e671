#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmc {

// Thrown for mathematically invalid input (bad field, bad code parameters, caps).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Field element: base-p digits of the coefficient vector packed into one word,
// coefficient of x^i at weight p^i. For p = 2 this is the usual bit vector.
struct Elem {
    std::uint64_t v = 0;
    friend constexpr auto operator<=>(const Elem&, const Elem&) = default;
};

// a -> a^{q^i} on F_{q^m}; i is kept reduced mod m.
struct GaloisAut {
    unsigned i = 0;
    unsigned m = 1;

    GaloisAut() = default;
    GaloisAut(long long exp, unsigned mod);
    GaloisAut compose(GaloisAut o) const { return {static_cast<long long>(i) + o.i, m}; }
    GaloisAut inverse() const { return {static_cast<long long>(m) - i, m}; }
    GaloisAut power(long long j) const { return {static_cast<long long>(i) * (j % m), m}; }
    bool is_generator() const;
    friend bool operator==(const GaloisAut&, const GaloisAut&) = default;
};

// {i in [1, m-1] : gcd(i, m) = 1}; for m = 1 the trivial group, returned as {0}.
std::vector<unsigned> galois_generators(unsigned m);
unsigned euler_phi(unsigned m);

class FieldTower;
using FieldPtr = std::shared_ptr<const FieldTower>;

// F_{q^m} over F_q, q = p^e, realized as F_p[x]/(modulus). Fields are cached: equal
// parameters return the same instance. Without a modulus the default is the monic
// primitive polynomial of degree e*m with the smallest packed low-coefficient value.
FieldPtr make_field(unsigned p, unsigned e, unsigned m,
                    std::optional<std::vector<unsigned>> modulus = std::nullopt,
                    bool require_primitive = true);

std::vector<unsigned> default_modulus(unsigned p, unsigned degree);

class FieldTower {
public:
    unsigned p() const { return p_; }
    unsigned e() const { return e_; }
    unsigned m() const { return m_; }
    unsigned degree() const { return d_; }
    std::uint64_t q() const { return q_; }
    std::uint64_t order() const { return N_; }
    const std::vector<unsigned>& modulus() const { return mod_; }
    bool alpha_is_primitive() const { return primitive_; }

    Elem zero() const { return {0}; }
    Elem one() const { return {1}; }
    Elem alpha() const;
    Elem alpha_pow(long long k) const;
    Elem from_int(long long c) const;
    Elem from_coeffs(std::span<const unsigned> c) const;
    std::vector<unsigned> coeffs(Elem a) const;
    // Packed values enumerate the field: index i < order() <-> Elem{i}.
    Elem element(std::uint64_t index) const { return {index}; }

    Elem add(Elem a, Elem b) const {
        if (p_ == 2) return {a.v ^ b.v};
        if (!zech_.empty()) return zech_add(a, b);
        return slow_add(a, b);
    }
    Elem neg(Elem a) const;
    Elem sub(Elem a, Elem b) const { return p_ == 2 ? Elem{a.v ^ b.v} : add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        if (a.v == 0 || b.v == 0) return {0};
        if (!exp_.empty()) {
            std::uint64_t s = std::uint64_t(log_[a.v]) + log_[b.v];
            if (s >= N_ - 1) s -= N_ - 1;
            return {exp_[s]};
        }
        return slow_mul(a, b);
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t k) const;
    Elem pow_signed(Elem a, long long k) const;

    // a^{q^i}, i any integer.
    Elem frobenius(Elem a, long long i) const;
    // a^{p^j}, j any integer.
    Elem full_frobenius(Elem a, long long j) const;
    Elem apply(GaloisAut s, Elem a) const { return frobenius(a, s.i); }
    Elem norm(Elem a) const;
    bool in_subfield(Elem a) const { return frobenius(a, 1) == a; }
    // Subfield F_{q^r}, r | m.
    bool in_intermediate(Elem a, unsigned r) const { return frobenius(a, r) == a; }
    Elem subfield_generator(unsigned r) const;  // generator of F_{q^r}^*
    std::vector<Elem> subfield_elements() const;  // F_q, in a fixed order

    // Discrete log to base alpha (requires primitive alpha).
    std::uint64_t log(Elem a) const;

    std::string to_string(Elem a) const;

private:
    FieldTower(unsigned p, unsigned e, unsigned m, std::vector<unsigned> modulus, bool require_primitive);
    friend FieldPtr make_field(unsigned, unsigned, unsigned, std::optional<std::vector<unsigned>>, bool);

    Elem slow_add(Elem a, Elem b) const;
    Elem slow_mul(Elem a, Elem b) const;
    Elem zech_add(Elem a, Elem b) const {
        if (a.v == 0) return b;
        if (b.v == 0) return a;
        std::uint64_t la = log_[a.v], lb = log_[b.v];
        std::uint64_t diff = lb >= la ? lb - la : lb + (N_ - 1) - la;
        std::int32_t z = zech_[diff];
        if (z < 0) return {0};
        std::uint64_t s = la + std::uint64_t(z);
        if (s >= N_ - 1) s -= N_ - 1;
        return {exp_[s]};
    }
    Elem times_x(Elem a) const;

    unsigned p_, e_, m_, d_;
    std::uint64_t q_, N_;
    std::vector<unsigned> mod_;
    bool primitive_ = false;
    std::vector<std::uint64_t> pw_;  // p^i, i <= d
    std::vector<std::uint32_t> exp_, log_;
    std::vector<std::int32_t> zech_;
};

}  // namespace rmc

template <>
struct std::hash<rmc::Elem> {
    std::size_t operator()(const rmc::Elem& a) const noexcept { return std::hash<std::uint64_t>{}(a.v); }
};
