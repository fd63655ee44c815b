#include "rtns/rational.hpp"

#include <stdexcept>

namespace rtns {

Rat rat(long num, long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat rat_from_strings(const std::string& num, const std::string& den) {
    Rat r{mpz_class(num), mpz_class(den)};
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
    r.canonicalize();
    return r;
}

double to_double(const Rat& r) { return r.get_d(); }

RationalMatrix RationalMatrix::identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch");
    RationalMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& a = (*this)(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const Rat& b = o(k, j);
                if (b != 0) r(i, j) += a * b;
            }
        }
    return r;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    RationalMatrix r(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
    return r;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    RationalMatrix r(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
    return r;
}

RationalMatrix RationalMatrix::scaled(const Rat& s) const {
    RationalMatrix r(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * s;
    return r;
}

RationalMatrix RationalMatrix::transposed() const {
    RationalMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

std::vector<Rat> RationalMatrix::apply(const std::vector<Rat>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("shape mismatch");
    std::vector<Rat> r(static_cast<size_t>(rows_), Rat(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            const Rat& a = (*this)(i, j);
            if (a != 0 && v[static_cast<size_t>(j)] != 0) r[static_cast<size_t>(i)] += a * v[static_cast<size_t>(j)];
        }
    return r;
}

RationalMatrix RationalMatrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("not square");
    int n = rows_;
    RationalMatrix a(*this), inv = identity(n);
    std::vector<int> colperm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) colperm[static_cast<size_t>(i)] = i;

    for (int step = 0; step < n; ++step) {
        // full pivot: largest |entry| in the remaining block
        int pr = -1, pc = -1;
        Rat best(0);
        for (int i = step; i < n; ++i)
            for (int j = step; j < n; ++j) {
                Rat v = abs(a(i, j));
                if (v > best) { best = v; pr = i; pc = j; }
            }
        if (pr < 0) throw std::runtime_error("singular matrix");
        if (pr != step)
            for (int j = 0; j < n; ++j) {
                std::swap(a(step, j), a(pr, j));
                std::swap(inv(step, j), inv(pr, j));
            }
        if (pc != step) {
            for (int i = 0; i < n; ++i) std::swap(a(i, step), a(i, pc));
            std::swap(colperm[static_cast<size_t>(step)], colperm[static_cast<size_t>(pc)]);
        }
        Rat piv = a(step, step);
        for (int j = 0; j < n; ++j) {
            a(step, j) /= piv;
            inv(step, j) /= piv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == step || a(i, step) == 0) continue;
            Rat f = a(i, step);
            for (int j = 0; j < n; ++j) {
                if (a(step, j) != 0) a(i, j) -= f * a(step, j);
                if (inv(step, j) != 0) inv(i, j) -= f * inv(step, j);
            }
        }
    }
    // undo column permutation: rows of inv get permuted back
    RationalMatrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(colperm[static_cast<size_t>(i)], j) = inv(i, j);
    return out;
}

int RationalMatrix::rank() const {
    RationalMatrix a(*this);
    int n = rows_, m = cols_, r = 0;
    for (int col = 0; col < m && r < n; ++col) {
        int piv = -1;
        for (int i = r; i < n; ++i)
            if (a(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m; ++j) std::swap(a(r, j), a(piv, j));
        Rat pv = a(r, col);
        for (int i = r + 1; i < n; ++i) {
            if (a(i, col) == 0) continue;
            Rat f = a(i, col) / pv;
            for (int j = col; j < m; ++j) a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return r;
}

Eigen::MatrixXd RationalMatrix::to_double() const {
    Eigen::MatrixXd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).get_d();
    return m;
}

std::vector<Rat> dot_lhs(const std::vector<Rat>& v, const RationalMatrix& m) {
    if (static_cast<int>(v.size()) != m.rows()) throw std::invalid_argument("shape mismatch");
    std::vector<Rat> r(static_cast<size_t>(m.cols()), Rat(0));
    for (int i = 0; i < m.rows(); ++i) {
        if (v[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) r[static_cast<size_t>(j)] += v[static_cast<size_t>(i)] * m(i, j);
    }
    return r;
}

Rat inner(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("shape mismatch");
    Rat s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace rtns
