#pragma once

#include <gmpxx.h>

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace rtns {

using Rat = mpq_class;

// canonicalized rational p/q
Rat rat(long num, long den = 1);
Rat rat_from_strings(const std::string& num, const std::string& den);
double to_double(const Rat& r);

// Dense matrix over arbitrary-precision rationals. Row-major.
class RationalMatrix {
  public:
    RationalMatrix() : rows_(0), cols_(0) {}
    RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        data_.resize(static_cast<size_t>(rows) * static_cast<size_t>(cols), Rat(0));
    }
    static RationalMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& operator()(int r, int c) { return data_[idx(r, c)]; }
    const Rat& operator()(int r, int c) const { return data_[idx(r, c)]; }
    bool operator==(const RationalMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    RationalMatrix operator*(const RationalMatrix& o) const;
    RationalMatrix operator+(const RationalMatrix& o) const;
    RationalMatrix operator-(const RationalMatrix& o) const;
    RationalMatrix scaled(const Rat& s) const;
    RationalMatrix transposed() const;
    std::vector<Rat> apply(const std::vector<Rat>& v) const;  // this * v

    // exact inverse by Gauss-Jordan with full pivoting; throws if singular
    RationalMatrix inverse() const;
    // rank over the rationals
    int rank() const;

    Eigen::MatrixXd to_double() const;

  private:
    size_t idx(int r, int c) const {
        return static_cast<size_t>(r) * static_cast<size_t>(cols_) + static_cast<size_t>(c);
    }
    int rows_, cols_;
    std::vector<Rat> data_;
};

std::vector<Rat> dot_lhs(const std::vector<Rat>& v, const RationalMatrix& m);  // v^T * m
Rat inner(const std::vector<Rat>& a, const std::vector<Rat>& b);

}  // namespace rtns
