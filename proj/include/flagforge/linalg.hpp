#ifndef FLAGFORGE_LINALG_HPP
#define FLAGFORGE_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "flagforge/scalar.hpp"

namespace flagforge {

// Dense matrix over an exact field. All elimination below is deterministic:
// pivots are chosen leftmost-column-first, topmost-row-first, never by magnitude.
class Mat {
public:
    Mat() = default;
    Mat(FieldSpec f, std::size_t rows, std::size_t cols)
        : f_(f), nr_(rows), nc_(cols), e_(rows * cols, Scalar(f)) {}

    static Mat identity(FieldSpec f, std::size_t n);

    FieldSpec field() const { return f_; }
    std::size_t rows() const { return nr_; }
    std::size_t cols() const { return nc_; }

    Scalar& at(std::size_t r, std::size_t c) { return e_[r * nc_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return e_[r * nc_ + c]; }

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;

    bool operator==(const Mat& o) const;
    bool is_zero() const;

    std::vector<Scalar> col(std::size_t c) const;
    void set_col(std::size_t c, const std::vector<Scalar>& v);

private:
    FieldSpec f_;
    std::size_t nr_ = 0, nc_ = 0;
    std::vector<Scalar> e_;
};

// Reduced row echelon form in place; returns the pivot columns in increasing order.
std::vector<std::size_t> rref_in_place(Mat& m);

std::size_t rank(Mat m);

// Columns form a basis of the right kernel. Basis vectors are indexed by the
// free columns in increasing order; each has a 1 in its free coordinate.
Mat kernel_basis(const Mat& m);

// Particular solution of A x = b with every free variable set to zero;
// nullopt when the system is inconsistent.
std::optional<std::vector<Scalar>> solve(const Mat& a, const std::vector<Scalar>& b);

bool in_column_span(const Mat& a, const std::vector<Scalar>& v);

// Indices of columns of z that extend the column span of b to span(b) + span(z),
// scanning z left to right.
std::vector<std::size_t> extend_basis(const Mat& b, const Mat& z);

} // namespace flagforge

#endif
