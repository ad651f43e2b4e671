#include "rmc/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace rmc {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 n) { return static_cast<u64>(u128(a) * b % n); }

u64 powmod(u64 a, u64 k, u64 n) {
    u64 r = 1 % n;
    a %= n;
    while (k) {
        if (k & 1) r = mulmod(r, a, n);
        a = mulmod(a, a, n);
        k >>= 1;
    }
    return r;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % sp == 0) return n == sp;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u64 rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_into(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    for (u64 sp = 2; sp < 1000 && sp * sp <= n; ++sp) {
        if (n % sp == 0) {
            out.push_back(sp);
            while (n % sp == 0) n /= sp;
            factor_into(n, out);
            return;
        }
    }
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    u64 d = rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

std::vector<u64> prime_divisors(u64 n) {
    std::vector<u64> out;
    factor_into(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Dense polynomials over F_p, little-endian, no trailing zeros (zero poly = empty).
using Poly = std::vector<unsigned>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

unsigned inv_mod(unsigned a, unsigned p) { return static_cast<unsigned>(powmod(a, p - 2, p)); }

Poly poly_mod(Poly a, const Poly& f, unsigned p) {
    trim(a);
    const std::size_t df = f.size() - 1;
    const unsigned lead_inv = inv_mod(f.back(), p);
    while (a.size() > df) {
        unsigned c = static_cast<unsigned>(u64(a.back()) * lead_inv % p);
        std::size_t shift = a.size() - 1 - df;
        for (std::size_t j = 0; j <= df; ++j) {
            a[shift + j] = static_cast<unsigned>((a[shift + j] + u64(p - c) * f[j]) % p);
        }
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, unsigned p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = static_cast<unsigned>((r[i + j] + u64(a[i]) * b[j]) % p);
    }
    return poly_mod(std::move(r), f, p);
}

Poly poly_powmod(Poly a, u64 k, const Poly& f, unsigned p) {
    Poly r{1};
    a = poly_mod(std::move(a), f, p);
    while (k) {
        if (k & 1) r = poly_mulmod(r, a, f, p);
        a = poly_mulmod(a, a, f, p);
        k >>= 1;
    }
    return r;
}

Poly poly_sub(Poly a, const Poly& b, unsigned p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

Poly poly_gcd(Poly a, Poly b, unsigned p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Rabin's test: f | x^{p^d} - x and gcd(x^{p^{d/r}} - x, f) = 1 for primes r | d.
bool irreducible(const Poly& f, unsigned p) {
    const unsigned d = static_cast<unsigned>(f.size() - 1);
    if (d == 0) return false;
    if (d == 1) return true;
    std::vector<Poly> frob(d + 1);
    frob[0] = Poly{0, 1};
    for (unsigned i = 1; i <= d; ++i) frob[i] = poly_powmod(frob[i - 1], p, f, p);
    const Poly x{0, 1};
    if (!poly_sub(frob[d], x, p).empty()) return false;
    for (u64 r : prime_divisors(d)) {
        Poly g = poly_gcd(f, poly_sub(frob[d / r], x, p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

bool x_is_primitive(const Poly& f, unsigned p, u64 N) {
    const Poly x{0, 1};
    if (poly_powmod(x, N - 1, f, p) != Poly{1}) return false;
    for (u64 r : prime_divisors(N - 1)) {
        if (poly_powmod(x, (N - 1) / r, f, p) == Poly{1}) return false;
    }
    return true;
}

u64 checked_power(unsigned p, unsigned d) {
    u128 v = 1;
    for (unsigned i = 0; i < d; ++i) {
        v *= p;
        if (v >= (u128(1) << 62)) throw DomainError("field too large: p^(e*m) must stay below 2^62");
    }
    return static_cast<u64>(v);
}

constexpr u64 kTableLimit = u64(1) << 23;

}  // namespace

GaloisAut::GaloisAut(long long exp, unsigned mod) : m(mod) {
    if (mod == 0) throw DomainError("Galois group of degree 0");
    long long r = exp % static_cast<long long>(mod);
    if (r < 0) r += mod;
    i = static_cast<unsigned>(r);
}

bool GaloisAut::is_generator() const { return std::gcd(i, m) == 1 || m == 1; }

std::vector<unsigned> galois_generators(unsigned m) {
    if (m == 1) return {0};
    std::vector<unsigned> out;
    for (unsigned i = 1; i < m; ++i)
        if (std::gcd(i, m) == 1) out.push_back(i);
    return out;
}

unsigned euler_phi(unsigned m) {
    if (m == 1) return 1;
    return static_cast<unsigned>(galois_generators(m).size());
}

std::vector<unsigned> default_modulus(unsigned p, unsigned degree) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>> cache;
    std::lock_guard lock(mu);
    auto key = std::make_pair(p, degree);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    if (!is_prime_u64(p)) throw DomainError("p is not prime");
    if (degree == 0) throw DomainError("degree must be positive");
    const u64 N = checked_power(p, degree);
    for (u64 low = 1; low < N; ++low) {
        Poly f(degree + 1, 0);
        u64 v = low;
        for (unsigned i = 0; i < degree; ++i, v /= p) f[i] = static_cast<unsigned>(v % p);
        f[degree] = 1;
        if (f[0] == 0 && degree > 1) continue;
        if (!irreducible(f, p)) continue;
        if (!x_is_primitive(f, p, N)) continue;
        cache[key] = f;
        return f;
    }
    throw DomainError("no primitive polynomial found");
}

FieldPtr make_field(unsigned p, unsigned e, unsigned m, std::optional<std::vector<unsigned>> modulus,
                    bool require_primitive) {
    if (!is_prime_u64(p)) throw DomainError("p is not prime: " + std::to_string(p));
    if (e == 0 || m == 0) throw DomainError("e and m must be at least 1");
    const unsigned d = e * m;
    checked_power(p, d);
    std::vector<unsigned> f = modulus ? *modulus : default_modulus(p, d);
    if (f.size() != d + 1) throw DomainError("modulus must have degree e*m = " + std::to_string(d));
    for (unsigned c : f)
        if (c >= p) throw DomainError("modulus coefficient out of range [0, p)");
    if (f.back() == 0) throw DomainError("modulus leading coefficient is zero");
    if (f.back() != 1) {
        unsigned li = inv_mod(f.back(), p);
        for (unsigned& c : f) c = static_cast<unsigned>(u64(c) * li % p);
    }

    static std::mutex mu;
    static std::map<std::tuple<unsigned, unsigned, unsigned, std::vector<unsigned>, bool>,
                    std::weak_ptr<const FieldTower>>
        registry;
    std::lock_guard lock(mu);
    auto key = std::make_tuple(p, e, m, f, require_primitive);
    if (auto it = registry.find(key); it != registry.end()) {
        if (auto sp = it->second.lock()) return sp;
    }
    FieldPtr sp(new FieldTower(p, e, m, f, require_primitive));
    registry[key] = sp;
    return sp;
}

FieldTower::FieldTower(unsigned p, unsigned e, unsigned m, std::vector<unsigned> modulus, bool require_primitive)
    : p_(p), e_(e), m_(m), d_(e * m), mod_(std::move(modulus)) {
    N_ = checked_power(p, d_);
    q_ = checked_power(p, e);
    pw_.resize(d_ + 1);
    pw_[0] = 1;
    for (unsigned i = 1; i <= d_; ++i) pw_[i] = pw_[i - 1] * p;
    if (!irreducible(mod_, p)) throw DomainError("modulus is reducible over F_p");
    primitive_ = x_is_primitive(mod_, p, N_);
    if (!primitive_ && require_primitive) throw DomainError("modulus is not primitive: x does not generate the multiplicative group");
    if (primitive_ && N_ <= kTableLimit) {
        exp_.resize(N_ - 1);
        log_.assign(N_, 0);
        Elem x{1};
        for (u64 i = 0; i + 1 < N_; ++i) {
            exp_[i] = static_cast<std::uint32_t>(x.v);
            log_[x.v] = static_cast<std::uint32_t>(i);
            x = times_x(x);
        }
        if (p_ != 2) {
            zech_.resize(N_ - 1);
            for (u64 l = 0; l + 1 < N_; ++l) {
                Elem s = slow_add(Elem{1}, Elem{exp_[l]});
                zech_[l] = s.v == 0 ? -1 : static_cast<std::int32_t>(log_[s.v]);
            }
        }
    }
}

Elem FieldTower::times_x(Elem a) const {
    const u64 top = a.v / pw_[d_ - 1];
    u64 shifted = (a.v % pw_[d_ - 1]) * p_;
    if (top == 0) return {shifted};
    if (p_ == 2) {
        u64 low = 0;
        for (unsigned j = 0; j < d_; ++j)
            if (mod_[j]) low |= u64(1) << j;
        return {shifted ^ low};
    }
    // x^d = -sum_{j<d} f_j x^j
    u64 out = 0;
    for (unsigned j = 0; j < d_; ++j) {
        u64 digit = (shifted / pw_[j]) % p_;
        digit = (digit + u64(p_ - top) * mod_[j]) % p_;
        out += digit * pw_[j];
    }
    return {out};
}

Elem FieldTower::slow_add(Elem a, Elem b) const {
    if (p_ == 2) return {a.v ^ b.v};
    u64 out = 0, x = a.v, y = b.v;
    for (unsigned j = 0; j < d_; ++j) {
        u64 s = x % p_ + y % p_;
        if (s >= p_) s -= p_;
        out += s * pw_[j];
        x /= p_;
        y /= p_;
    }
    return {out};
}

Elem FieldTower::slow_mul(Elem a, Elem b) const {
    if (p_ == 2) {
        Elem acc{0}, cur = a;
        u64 bv = b.v;
        while (bv) {
            if (bv & 1) acc.v ^= cur.v;
            bv >>= 1;
            if (bv) cur = times_x(cur);
        }
        return acc;
    }
    Poly x = coeffs(a), y = coeffs(b);
    trim(x);
    trim(y);
    Poly r = poly_mulmod(x, y, Poly(mod_.begin(), mod_.end()), p_);
    r.resize(d_, 0);
    return from_coeffs(r);
}

Elem FieldTower::neg(Elem a) const {
    if (p_ == 2 || a.v == 0) return a;
    if (!exp_.empty()) {
        u64 s = log_[a.v] + (N_ - 1) / 2;
        if (s >= N_ - 1) s -= N_ - 1;
        return {exp_[s]};
    }
    u64 out = 0, x = a.v;
    for (unsigned j = 0; j < d_; ++j, x /= p_) {
        u64 c = x % p_;
        out += (c ? p_ - c : 0) * pw_[j];
    }
    return {out};
}

Elem FieldTower::pow(Elem a, u64 k) const {
    if (k == 0) return one();
    if (a.v == 0) return zero();
    if (!exp_.empty()) return {exp_[mulmod(log_[a.v], k % (N_ - 1), N_ - 1)]};
    k %= (N_ - 1);
    Elem r = one();
    while (k) {
        if (k & 1) r = mul(r, a);
        a = mul(a, a);
        k >>= 1;
    }
    return r;
}

Elem FieldTower::pow_signed(Elem a, long long k) const {
    if (k >= 0) return pow(a, static_cast<u64>(k));
    if (a.v == 0) throw DomainError("negative power of zero");
    const long long order = static_cast<long long>(N_ - 1);
    long long r = k % order;
    if (r < 0) r += order;
    return pow(a, static_cast<u64>(r));
}

Elem FieldTower::inv(Elem a) const {
    if (a.v == 0) throw DomainError("inverse of zero");
    if (!exp_.empty()) return {exp_[log_[a.v] == 0 ? 0 : N_ - 1 - log_[a.v]]};
    return pow(a, N_ - 2);
}

Elem FieldTower::full_frobenius(Elem a, long long j) const {
    long long r = j % static_cast<long long>(d_);
    if (r < 0) r += d_;
    if (r == 0 || a.v == 0) return a;
    if (!exp_.empty()) return {exp_[mulmod(log_[a.v], pw_[r] % (N_ - 1), N_ - 1)]};
    return pow(a, pw_[r]);
}

Elem FieldTower::frobenius(Elem a, long long i) const {
    long long r = i % static_cast<long long>(m_);
    if (r < 0) r += m_;
    return full_frobenius(a, r * e_);
}

Elem FieldTower::norm(Elem a) const { return pow(a, (N_ - 1) / (q_ - 1)); }

Elem FieldTower::alpha() const { return times_x(one()); }

Elem FieldTower::alpha_pow(long long k) const { return pow_signed(alpha(), k); }

Elem FieldTower::from_int(long long c) const {
    long long r = c % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return {static_cast<u64>(r)};
}

Elem FieldTower::from_coeffs(std::span<const unsigned> c) const {
    if (c.size() > d_) throw DomainError("too many coefficients for field element");
    u64 v = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] >= p_) throw DomainError("coefficient out of range [0, p)");
        v += c[j] * pw_[j];
    }
    return {v};
}

std::vector<unsigned> FieldTower::coeffs(Elem a) const {
    std::vector<unsigned> c(d_);
    u64 v = a.v;
    for (unsigned j = 0; j < d_; ++j, v /= p_) c[j] = static_cast<unsigned>(v % p_);
    return c;
}

std::uint64_t FieldTower::log(Elem a) const {
    if (a.v == 0) throw DomainError("log of zero");
    if (!exp_.empty()) return log_[a.v];
    if (!primitive_) throw DomainError("log needs a primitive modulus");
    // Pohlig-Hellman is overkill at desk scale; baby-step giant-step on the cyclic group.
    const u64 n = N_ - 1;
    u64 s = 1;
    while (s * s < n) ++s;
    std::map<u64, u64> baby;
    Elem x = one();
    const Elem al = alpha();
    for (u64 j = 0; j < s; ++j) {
        baby.emplace(x.v, j);
        x = mul(x, al);
    }
    const Elem giant = inv(pow(al, s));
    Elem y = a;
    for (u64 i = 0; i <= s; ++i) {
        if (auto it = baby.find(y.v); it != baby.end()) return (i * s + it->second) % n;
        y = mul(y, giant);
    }
    throw DomainError("log failed");
}

Elem FieldTower::subfield_generator(unsigned r) const {
    if (r == 0 || m_ % r != 0) throw DomainError("intermediate degree must divide m");
    if (!primitive_) throw DomainError("subfield generator needs a primitive modulus");
    const u64 sub = checked_power(p_, e_ * r);
    return pow(alpha(), (N_ - 1) / (sub - 1));
}

std::vector<Elem> FieldTower::subfield_elements() const {
    std::vector<Elem> out{zero()};
    if (primitive_) {
        const Elem g = subfield_generator(1);
        Elem x = one();
        for (u64 i = 0; i + 1 < q_; ++i) {
            out.push_back(x);
            x = mul(x, g);
        }
        return out;
    }
    for (u64 v = 1; v < N_ && out.size() < q_; ++v)
        if (in_subfield(Elem{v})) out.push_back(Elem{v});
    return out;
}

std::string FieldTower::to_string(Elem a) const {
    std::ostringstream os;
    os << '[';
    auto c = coeffs(a);
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << ']';
    return os.str();
}

}  // namespace rmc
