#include "stabglue/linalg.hpp"

#include <stdexcept>

namespace stabglue {

qmat qmat::identity(size_t n)
{
    qmat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

qmat qmat::from_rows(const std::vector<qvec>& rows, size_t cols)
{
    qmat m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("qmat::from_rows: ragged rows");
        for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

bool qmat::is_zero() const
{
    for (const auto& x : a_)
        if (sgn(x) != 0) return false;
    return true;
}

qmat qmat::transpose() const
{
    qmat t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

qvec qmat::row(size_t i) const { return qvec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

qvec qmat::col(size_t j) const
{
    qvec v(rows_);
    for (size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

qvec qmat::apply(const qvec& v) const
{
    if (v.size() != cols_) throw std::invalid_argument("qmat::apply: size mismatch");
    qvec r(rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if (sgn(v[j]) != 0 && sgn((*this)(i, j)) != 0) r[i] += (*this)(i, j) * v[j];
    return r;
}

qmat qmat::hcat(const qmat& o) const
{
    if (rows_ != o.rows_) throw std::invalid_argument("qmat::hcat: row mismatch");
    qmat m(rows_, cols_ + o.cols_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
        for (size_t j = 0; j < o.cols_; ++j) m(i, cols_ + j) = o(i, j);
    }
    return m;
}

qmat qmat::vcat(const qmat& o) const
{
    if (cols_ != o.cols_) throw std::invalid_argument("qmat::vcat: column mismatch");
    qmat m(rows_ + o.rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (size_t i = 0; i < o.rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) m(rows_ + i, j) = o(i, j);
    return m;
}

qmat qmat::select_rows(const std::vector<size_t>& idx) const
{
    qmat m(idx.size(), cols_);
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
    return m;
}

qmat qmat::select_cols(const std::vector<size_t>& idx) const
{
    qmat m(rows_, idx.size());
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
}

qmat operator*(const qmat& x, const qmat& y)
{
    if (x.cols_ != y.rows_) throw std::invalid_argument("qmat product: shape mismatch");
    qmat m(x.rows_, y.cols_);
    for (size_t i = 0; i < x.rows_; ++i)
        for (size_t k = 0; k < x.cols_; ++k) {
            const rational& s = x(i, k);
            if (sgn(s) == 0) continue;
            for (size_t j = 0; j < y.cols_; ++j)
                if (sgn(y(k, j)) != 0) m(i, j) += s * y(k, j);
        }
    return m;
}

qmat operator+(const qmat& x, const qmat& y)
{
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("qmat sum: shape mismatch");
    qmat m = x;
    for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += y.a_[i];
    return m;
}

qmat operator-(const qmat& x, const qmat& y)
{
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("qmat difference: shape mismatch");
    qmat m = x;
    for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] -= y.a_[i];
    return m;
}

qmat operator*(const rational& s, const qmat& x)
{
    qmat m = x;
    for (auto& v : m.a_) v *= s;
    return m;
}

bool operator==(const qmat& x, const qmat& y) { return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_; }

echelon rref(const qmat& m)
{
    qmat a = m;
    std::vector<size_t> piv;
    size_t r = 0;
    for (size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        size_t p = r;
        while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != r)
            for (size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        rational inv = 1 / a(r, c);
        for (size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
        for (size_t i = 0; i < a.rows(); ++i) {
            if (i == r || sgn(a(i, c)) == 0) continue;
            rational f = a(i, c);
            for (size_t j = c; j < a.cols(); ++j)
                if (sgn(a(r, j)) != 0) a(i, j) -= f * a(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    std::vector<size_t> keep(r);
    for (size_t i = 0; i < r; ++i) keep[i] = i;
    return {a.select_rows(keep), piv};
}

size_t rank(const qmat& m)
{
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return rref(m).pivots.size();
}

std::vector<qvec> nullspace(const qmat& m)
{
    echelon e = rref(m);
    std::vector<bool> is_piv(m.cols(), false);
    for (size_t p : e.pivots) is_piv[p] = true;
    std::vector<qvec> basis;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        qvec v(m.cols());
        v[f] = 1;
        for (size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.r(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<qvec> solve(const qmat& m, const qvec& b)
{
    if (b.size() != m.rows()) throw std::invalid_argument("solve: size mismatch");
    qmat bm(b.size(), 1);
    for (size_t i = 0; i < b.size(); ++i) bm(i, 0) = b[i];
    echelon e = rref(m.hcat(bm));
    qvec x(m.cols());
    for (size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == m.cols()) return std::nullopt;
        x[e.pivots[i]] = e.r(i, m.cols());
    }
    return x;
}

qvec reduce_mod(const echelon& e, const qvec& v)
{
    qvec r = v;
    for (size_t i = 0; i < e.pivots.size(); ++i) {
        rational f = r[e.pivots[i]];
        if (sgn(f) == 0) continue;
        for (size_t j = 0; j < r.size(); ++j)
            if (sgn(e.r(i, j)) != 0) r[j] -= f * e.r(i, j);
    }
    return r;
}

bool is_zero(const qvec& v)
{
    for (const auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

}  // namespace stabglue
