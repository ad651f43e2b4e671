#include "rmc/linalg.hpp"

#include <algorithm>
#include <utility>

namespace rmc {

Matrix::Matrix(FieldPtr f, std::size_t rows, std::size_t cols)
    : f_(std::move(f)), r_(rows), c_(cols), a_(rows * cols, Elem{0}) {}

Matrix Matrix::from_rows(FieldPtr f, const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(std::move(f), rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw DomainError("ragged matrix rows");
        std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
}

Matrix Matrix::identity(FieldPtr f, std::size_t n) {
    Matrix m(std::move(f), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Elem{1};
    return m;
}

void Matrix::append_row(std::span<const Elem> v) {
    if (v.size() != c_) throw DomainError("row length mismatch");
    a_.insert(a_.end(), v.begin(), v.end());
    ++r_;
}

void Matrix::append_rows(const Matrix& other) {
    if (other.c_ != c_) throw DomainError("column count mismatch");
    a_.insert(a_.end(), other.a_.begin(), other.a_.end());
    r_ += other.r_;
}

namespace {

// row_i -= c * row_j, starting at column `from`.
inline void axpy(const FieldTower& F, std::span<Elem> dst, std::span<const Elem> src, Elem c, std::size_t from) {
    const Elem nc = F.neg(c);
    for (std::size_t j = from; j < dst.size(); ++j) {
        if (src[j].v) dst[j] = F.add(dst[j], F.mul(nc, src[j]));
    }
}

inline void scale(const FieldTower& F, std::span<Elem> row, Elem c, std::size_t from) {
    for (std::size_t j = from; j < row.size(); ++j) row[j] = F.mul(row[j], c);
}

}  // namespace

Echelon rref(const Matrix& m) {
    Echelon out{m, {}};
    Matrix& R = out.reduced;
    if (R.rows() == 0) return out;
    const FieldTower& F = *R.field();
    std::size_t r = 0;
    for (std::size_t c = 0; c < R.cols() && r < R.rows(); ++c) {
        std::size_t piv = r;
        while (piv < R.rows() && R(piv, c).v == 0) ++piv;
        if (piv == R.rows()) continue;
        if (piv != r) std::swap_ranges(R.row(piv).begin(), R.row(piv).end(), R.row(r).begin());
        scale(F, R.row(r), F.inv(R(r, c)), c);
        for (std::size_t i = 0; i < R.rows(); ++i) {
            if (i != r && R(i, c).v) axpy(F, R.row(i), R.row(r), R(i, c), c);
        }
        out.pivots.push_back(c);
        ++r;
    }
    return out;
}

std::size_t rank(const Matrix& m) { return column_rank_profile(m).size(); }

Matrix row_basis(const Matrix& m) {
    Echelon e = rref(m);
    Matrix out(m.field(), e.pivots.size(), m.cols());
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
        std::copy(e.reduced.row(i).begin(), e.reduced.row(i).end(), out.row(i).begin());
    return out;
}

Matrix kernel(const Matrix& m) {
    const std::size_t n = m.cols();
    Echelon e = rref(m);
    const FieldTower& F = *m.field();
    std::vector<bool> is_pivot(n, false);
    for (auto c : e.pivots) is_pivot[c] = true;
    Matrix out(m.field(), 0, n);
    Vec x(n);
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::fill(x.begin(), x.end(), Elem{0});
        x[f] = Elem{1};
        for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = F.neg(e.reduced(i, f));
        out.append_row(x);
    }
    return row_basis(out);
}

Matrix stack(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw DomainError("dimension mismatch in stack");
    Matrix out = a;
    out.append_rows(b);
    return out;
}

Matrix row_space_sum(const Matrix& a, const Matrix& b) { return row_basis(stack(a, b)); }

Matrix row_space_intersection(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw DomainError("dimension mismatch in intersection");
    return kernel(stack(kernel(a), kernel(b)));
}

std::vector<std::size_t> column_rank_profile(const Matrix& m) {
    std::vector<std::size_t> profile;
    if (m.rows() == 0) return profile;
    const FieldTower& F = *m.field();
    // Echelon basis kept sorted by pivot column; each row is monic at its pivot.
    std::vector<std::pair<std::size_t, Vec>> basis;
    Vec v;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (basis.size() == m.cols()) break;
        v.assign(m.row(i).begin(), m.row(i).end());
        for (const auto& [c, b] : basis) {
            if (v[c].v) axpy(F, v, b, v[c], c);
        }
        auto it = std::find_if(v.begin(), v.end(), [](Elem x) { return x.v != 0; });
        if (it == v.end()) continue;
        std::size_t c = static_cast<std::size_t>(it - v.begin());
        scale(F, v, F.inv(v[c]), c);
        auto pos = std::lower_bound(basis.begin(), basis.end(), c,
                                    [](const auto& entry, std::size_t col) { return entry.first < col; });
        basis.insert(pos, {c, v});
        profile.push_back(i);
    }
    return profile;
}

Elem determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw DomainError("determinant of non-square matrix");
    const FieldTower& F = *m.field();
    Matrix a = m;
    Elem det = F.one();
    const std::size_t n = a.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a(piv, c).v == 0) ++piv;
        if (piv == n) return F.zero();
        if (piv != c) {
            std::swap_ranges(a.row(piv).begin(), a.row(piv).end(), a.row(c).begin());
            det = F.neg(det);
        }
        det = F.mul(det, a(c, c));
        const Elem ip = F.inv(a(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c).v) axpy(F, a.row(i), a.row(c), F.mul(a(i, c), ip), c);
        }
    }
    return det;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DomainError("dimension mismatch in multiply");
    const FieldTower& F = *a.field();
    Matrix out(a.field(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const Elem x = a(i, l);
            if (!x.v) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = F.add(out(i, j), F.mul(x, b(l, j)));
        }
    return out;
}

Vec vec_mul(std::span<const Elem> v, const Matrix& m) {
    if (v.size() != m.rows()) throw DomainError("dimension mismatch in vec_mul");
    const FieldTower& F = *m.field();
    Vec out(m.cols(), Elem{0});
    for (std::size_t l = 0; l < v.size(); ++l) {
        if (!v[l].v) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] = F.add(out[j], F.mul(v[l], m(l, j)));
    }
    return out;
}

Matrix transpose(const Matrix& m) {
    Matrix out(m.field(), m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
    return out;
}

bool in_row_space(const Matrix& basis, std::span<const Elem> v) {
    Matrix probe = basis;
    probe.append_row(v);
    return rank(probe) == rank(basis);
}

Matrix frobenius(const Matrix& m, long long i) {
    Matrix out = m;
    if (m.rows() == 0) return out;
    const FieldTower& F = *m.field();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (auto& x : out.row(r)) x = F.frobenius(x, i);
    return out;
}

Vec frobenius(const FieldTower& f, std::span<const Elem> v, long long i) {
    Vec out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) out[j] = f.frobenius(v[j], i);
    return out;
}

Matrix moore_matrix(const FieldPtr& f, std::span<const Elem> v, std::size_t k, GaloisAut tau) {
    Matrix out(f, 0, v.size());
    Vec cur(v.begin(), v.end());
    for (std::size_t j = 0; j < k; ++j) {
        out.append_row(cur);
        cur = frobenius(*f, cur, tau.i);
    }
    return out;
}

std::size_t rank_q(const FieldTower& f, std::span<const Elem> v) {
    if (f.p() == 2 && f.e() == 1) {
        std::vector<std::uint64_t> basis;  // kept with distinct leading bits
        for (Elem x : v) {
            std::uint64_t y = x.v;
            for (std::uint64_t b : basis) y = std::min(y, y ^ b);
            if (y) {
                basis.push_back(y);
                std::sort(basis.rbegin(), basis.rend());
            }
        }
        return basis.size();
    }
    // The F_q-span of v is the F_p-span of {c v_i : c in an F_p-basis of F_q}.
    std::vector<Elem> scalars{f.one()};
    if (f.e() > 1) {
        const Elem g = f.subfield_generator(1);
        for (unsigned j = 1; j < f.e(); ++j) scalars.push_back(f.mul(scalars.back(), g));
    }
    PrimeMatrix pm(f.p(), v.size() * scalars.size(), f.degree());
    std::size_t r = 0;
    for (Elem x : v)
        for (Elem c : scalars) {
            auto co = f.coeffs(f.mul(c, x));
            for (std::size_t j = 0; j < co.size(); ++j) pm.at(r, j) = co[j];
            ++r;
        }
    return prime_rank(std::move(pm)) / f.e();
}

namespace {

unsigned inv_p(unsigned a, unsigned p) {
    std::uint64_t r = 1, b = a, k = p - 2;
    while (k) {
        if (k & 1) r = r * b % p;
        b = b * b % p;
        k >>= 1;
    }
    return static_cast<unsigned>(r);
}

std::vector<std::size_t> prime_rref(PrimeMatrix& m) {
    std::vector<std::size_t> piv;
    const unsigned p = m.p;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t i = r;
        while (i < m.rows && m.at(i, c) == 0) ++i;
        if (i == m.rows) continue;
        if (i != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(i, j), m.at(r, j));
        const unsigned iv = inv_p(m.at(r, c), p);
        for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) = static_cast<unsigned>(std::uint64_t(m.at(r, j)) * iv % p);
        for (std::size_t i2 = 0; i2 < m.rows; ++i2) {
            if (i2 == r || m.at(i2, c) == 0) continue;
            const std::uint64_t f = p - m.at(i2, c);
            for (std::size_t j = c; j < m.cols; ++j)
                m.at(i2, j) = static_cast<unsigned>((m.at(i2, j) + f * m.at(r, j)) % p);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

}  // namespace

std::size_t prime_rank(PrimeMatrix m) { return prime_rref(m).size(); }

std::vector<std::vector<unsigned>> prime_kernel(PrimeMatrix m) {
    auto piv = prime_rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<std::vector<unsigned>> out;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<unsigned> x(m.cols, 0);
        x[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = (m.p - m.at(i, f)) % m.p;
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace rmc
