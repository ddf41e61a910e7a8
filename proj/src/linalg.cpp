#include "flagforge/linalg.hpp"

#include <algorithm>

namespace flagforge {

Mat Mat::identity(FieldSpec f, std::size_t n) {
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    require(nc_ == o.nr_, "ShapeMismatch", "matrix product shape");
    Mat r(f_, nr_, o.nc_);
    for (std::size_t i = 0; i < nr_; ++i)
        for (std::size_t k = 0; k < nc_; ++k) {
            const Scalar& a = at(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < o.nc_; ++j) {
                const Scalar& b = o.at(k, j);
                if (!b.is_zero()) r.at(i, j) += a * b;
            }
        }
    return r;
}

Mat Mat::operator+(const Mat& o) const {
    require(nr_ == o.nr_ && nc_ == o.nc_, "ShapeMismatch", "matrix sum shape");
    Mat r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    require(nr_ == o.nr_ && nc_ == o.nc_, "ShapeMismatch", "matrix difference shape");
    Mat r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
    return r;
}

bool Mat::operator==(const Mat& o) const {
    return nr_ == o.nr_ && nc_ == o.nc_ && e_ == o.e_;
}

bool Mat::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::vector<Scalar> Mat::col(std::size_t c) const {
    std::vector<Scalar> v;
    v.reserve(nr_);
    for (std::size_t r = 0; r < nr_; ++r) v.push_back(at(r, c));
    return v;
}

void Mat::set_col(std::size_t c, const std::vector<Scalar>& v) {
    require(v.size() == nr_, "ShapeMismatch", "column length");
    for (std::size_t r = 0; r < nr_; ++r) at(r, c) = v[r];
}

std::vector<std::size_t> rref_in_place(Mat& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
        std::size_t sel = row;
        while (sel < m.rows() && m.at(sel, c).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
        Scalar inv = m.at(row, c).inverse();
        for (std::size_t j = c; j < m.cols(); ++j) m.at(row, j) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, c).is_zero()) continue;
            Scalar factor = m.at(r, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m.at(r, j) -= factor * m.at(row, j);
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

std::size_t rank(Mat m) { return rref_in_place(m).size(); }

Mat kernel_basis(const Mat& m) {
    Mat r(m);
    std::vector<std::size_t> pivots = rref_in_place(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : pivots) is_pivot[p] = true;

    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    Mat k(m.field(), m.cols(), free_cols.size());
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        std::size_t fc = free_cols[j];
        k.at(fc, j) = Scalar::one(m.field());
        for (std::size_t i = 0; i < pivots.size(); ++i)
            k.at(pivots[i], j) = -r.at(i, fc);
    }
    return k;
}

std::optional<std::vector<Scalar>> solve(const Mat& a, const std::vector<Scalar>& b) {
    require(b.size() == a.rows(), "ShapeMismatch", "rhs length");
    Mat aug(a.field(), a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r];
    }
    std::vector<std::size_t> pivots = rref_in_place(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    std::vector<Scalar> x(a.cols(), Scalar(a.field()));
    for (std::size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = aug.at(i, a.cols());
    return x;
}

bool in_column_span(const Mat& a, const std::vector<Scalar>& v) {
    return solve(a, v).has_value();
}

std::vector<std::size_t> extend_basis(const Mat& b, const Mat& z) {
    require(b.rows() == z.rows(), "ShapeMismatch", "ambient dimensions differ");
    Mat joint(b.field(), b.rows(), b.cols() + z.cols());
    for (std::size_t r = 0; r < b.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) joint.at(r, c) = b.at(r, c);
        for (std::size_t c = 0; c < z.cols(); ++c) joint.at(r, b.cols() + c) = z.at(r, c);
    }
    std::vector<std::size_t> pivots = rref_in_place(joint);
    std::vector<std::size_t> picked;
    for (std::size_t p : pivots)
        if (p >= b.cols()) picked.push_back(p - b.cols());
    return picked;
}

} // namespace flagforge
