#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rmc/codes.hpp"

namespace rmc {

using Seq = std::vector<std::size_t>;

// sum / intersection of sigma(C) over the given automorphisms
LinearCode sum_codes(const LinearCode& c, std::span<const GaloisAut> autos);
LinearCode intersect_codes(const LinearCode& c, std::span<const GaloisAut> autos);

// S_i = C + sigma(C) + ... + sigma^i(C), T_i = C n sigma(C) n ... n sigma^i(C)
LinearCode sigma_sum(const LinearCode& c, GaloisAut sigma, std::size_t i);
LinearCode sigma_intersection(const LinearCode& c, GaloisAut sigma, std::size_t i);

// s_0..s_{i_max} (default i_max = n-k), one rank computation per index, plateau early exit.
Seq s_sequence(const LinearCode& c, GaloisAut sigma, std::optional<std::size_t> i_max = std::nullopt);
// Same values from one column rank profile of the stacked matrix [G; sigma(G); ...].
Seq fast_s_sequence(const LinearCode& c, GaloisAut sigma, std::optional<std::size_t> i_max = std::nullopt);
// t_0..t_{i_max} (default i_max = k) by iterated intersection.
Seq t_sequence(const LinearCode& c, GaloisAut sigma, std::optional<std::size_t> i_max = std::nullopt);
// t_i = n - s_i(C^perp).
Seq t_sequence_via_dual(const LinearCode& c, GaloisAut sigma, std::optional<std::size_t> i_max = std::nullopt);

struct InvariantProfile {
    GaloisAut sigma;
    Seq s;       // s_0..s_{n-k}
    Seq t;       // t_0..t_k
    Seq delta;   // delta_i = s_{i+1} - s_i, i = 0..n-k (last entry is 0)
    Seq lambda;  // lambda_i = t_i - t_{i+1}, i = 0..k (last entry is 0)
};

InvariantProfile profile(const LinearCode& c, GaloisAut sigma);

struct Triple {
    unsigned a, b, c;
    friend auto operator<=>(const Triple&, const Triple&) = default;
};

// `trials` triples of pairwise distinct exponents in [0, m), triple i drawn from its own sub-stream.
std::vector<Triple> random_triples(unsigned m, std::size_t trials, std::uint64_t seed);

struct Fingerprint {
    std::vector<std::vector<long long>> records;  // sorted
    std::uint64_t hash() const;
    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

// records (sigma exponent, s_0..s_{n-k}, t_0..t_k) for every sigma in Gal(F_{q^m}/F_q)
Fingerprint consecutive_fingerprint(const LinearCode& c);
// records (a, b, c, dim sum, dim intersection) for each triple
Fingerprint triple_fingerprint(const LinearCode& c, std::span<const Triple> triples);

}  // namespace rmc
