#pragma once

#include "stabglue/scalar.hpp"

#include <optional>
#include <vector>

namespace stabglue {

using qvec = std::vector<rational>;

/* dense rational matrix, row major */
class qmat {
public:
    qmat() = default;
    qmat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static qmat identity(size_t n);
    static qmat from_rows(const std::vector<qvec>& rows, size_t cols);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    rational& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const rational& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const;
    qmat transpose() const;
    qvec row(size_t i) const;
    qvec col(size_t j) const;
    qvec apply(const qvec& v) const;
    qmat hcat(const qmat& o) const;
    qmat vcat(const qmat& o) const;
    qmat select_rows(const std::vector<size_t>& idx) const;
    qmat select_cols(const std::vector<size_t>& idx) const;

    friend qmat operator*(const qmat& x, const qmat& y);
    friend qmat operator+(const qmat& x, const qmat& y);
    friend qmat operator-(const qmat& x, const qmat& y);
    friend qmat operator*(const rational& s, const qmat& x);
    friend bool operator==(const qmat& x, const qmat& y);

private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<rational> a_;
};

struct echelon {
    qmat r;                     /* reduced row echelon form, zero rows dropped */
    std::vector<size_t> pivots; /* pivot column per row of r */
};

echelon rref(const qmat& m);
size_t rank(const qmat& m);
/* basis of {v : m v = 0}, one vector per free column */
std::vector<qvec> nullspace(const qmat& m);
/* some x with m x = b, if any */
std::optional<qvec> solve(const qmat& m, const qvec& b);
/* canonical representative of v modulo the row space encoded by e */
qvec reduce_mod(const echelon& e, const qvec& v);
bool is_zero(const qvec& v);

}  // namespace stabglue
