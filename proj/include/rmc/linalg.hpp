#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rmc/gf.hpp"

namespace rmc {

using Vec = std::vector<Elem>;

// Dense row-major matrix over F_{q^m}.
class Matrix {
public:
    Matrix() = default;
    Matrix(FieldPtr f, std::size_t rows, std::size_t cols);
    static Matrix from_rows(FieldPtr f, const std::vector<Vec>& rows, std::size_t cols);
    static Matrix identity(FieldPtr f, std::size_t n);

    const FieldPtr& field() const { return f_; }
    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Elem& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    Elem operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    std::span<const Elem> row(std::size_t i) const { return {a_.data() + i * c_, c_}; }
    std::span<Elem> row(std::size_t i) { return {a_.data() + i * c_, c_}; }
    Vec row_vec(std::size_t i) const { return Vec(row(i).begin(), row(i).end()); }
    void append_row(std::span<const Elem> v);
    void append_rows(const Matrix& other);

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_ && (x.f_ == y.f_ || x.r_ * x.c_ == 0);
    }

private:
    FieldPtr f_;
    std::size_t r_ = 0, c_ = 0;
    std::vector<Elem> a_;
};

struct Echelon {
    Matrix reduced;                    // full RREF, zero rows kept at the bottom
    std::vector<std::size_t> pivots;  // strictly increasing
};

Echelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);
// RREF with zero rows dropped: the canonical basis of the row space.
Matrix row_basis(const Matrix& m);
// Canonical basis of {x : m x^T = 0}.
Matrix kernel(const Matrix& m);
Matrix stack(const Matrix& a, const Matrix& b);
Matrix row_space_sum(const Matrix& a, const Matrix& b);
Matrix row_space_intersection(const Matrix& a, const Matrix& b);
// Row indices that introduce a new pivot when eliminating top-down.
std::vector<std::size_t> column_rank_profile(const Matrix& m);
Elem determinant(const Matrix& m);
Matrix multiply(const Matrix& a, const Matrix& b);
Vec vec_mul(std::span<const Elem> v, const Matrix& m);
Matrix transpose(const Matrix& m);
bool in_row_space(const Matrix& basis, std::span<const Elem> v);

// Entrywise a -> a^{q^i}.
Matrix frobenius(const Matrix& m, long long i);
Vec frobenius(const FieldTower& f, std::span<const Elem> v, long long i);
// Rows v, tau(v), ..., tau^{k-1}(v).
Matrix moore_matrix(const FieldPtr& f, std::span<const Elem> v, std::size_t k, GaloisAut tau);

// F_q-dimension of the span of the entries of v.
std::size_t rank_q(const FieldTower& f, std::span<const Elem> v);

// Dense matrices over the prime field F_p, used for subfield computations.
struct PrimeMatrix {
    unsigned p = 2;
    std::size_t rows = 0, cols = 0;
    std::vector<unsigned> a;

    PrimeMatrix(unsigned prime, std::size_t r, std::size_t c) : p(prime), rows(r), cols(c), a(r * c, 0) {}
    unsigned& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    unsigned at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

std::size_t prime_rank(PrimeMatrix m);
// Basis of {x in F_p^cols : m x = 0}, one vector per row.
std::vector<std::vector<unsigned>> prime_kernel(PrimeMatrix m);

}  // namespace rmc
