#pragma once

// Dense n-dimensional vectors and small square matrices.

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

#include "ccm/error.hpp"

namespace ccm {

class Vec {
public:
    Vec() = default;
    explicit Vec(std::size_t n) : c_(n, 0.0) {}
    Vec(std::initializer_list<double> xs) : c_(xs) {}
    explicit Vec(std::vector<double> xs) : c_(std::move(xs)) {}

    std::size_t size() const { return c_.size(); }
    double& operator[](std::size_t i) { return c_[i]; }
    double operator[](std::size_t i) const { return c_[i]; }

    const std::vector<double>& coords() const { return c_; }

    auto begin() const { return c_.begin(); }
    auto end() const { return c_.end(); }

    Vec& operator+=(const Vec& o) {
        check_same_size(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        check_same_size(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Vec& operator*=(double s) {
        for (double& x : c_) x *= s;
        return *this;
    }
    Vec& operator/=(double s) { return *this *= 1.0 / s; }

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(Vec a, double s) { return a *= s; }
    friend Vec operator*(double s, Vec a) { return a *= s; }
    friend Vec operator/(Vec a, double s) { return a /= s; }
    friend Vec operator-(Vec a) { return a *= -1.0; }

    friend bool operator==(const Vec& a, const Vec& b) { return a.c_ == b.c_; }

    double squared_norm() const {
        double s = 0.0;
        for (double x : c_) s += x * x;
        return s;
    }
    double norm() const { return std::sqrt(squared_norm()); }

    bool all_finite() const {
        for (double x : c_)
            if (!std::isfinite(x)) return false;
        return true;
    }

    friend std::ostream& operator<<(std::ostream& os, const Vec& v) {
        os << '(';
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) os << ", ";
            os << v[i];
        }
        return os << ')';
    }

private:
    void check_same_size(const Vec& o) const {
        if (c_.size() != o.c_.size())
            throw DimensionMismatch("vector sizes differ");
    }

    std::vector<double> c_;
};

// Points and displacement vectors share the representation; the distinction
// is carried by the operation signatures.
using Point = Vec;

inline double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: sizes differ");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double squared_distance(const Point& a, const Point& b) {
    return (a - b).squared_norm();
}

inline double distance(const Point& a, const Point& b) {
    return (a - b).norm();
}

class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {a_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }

    double max_abs() const {
        double m = 0.0;
        for (double x : a_) m = std::max(m, std::abs(x));
        return m;
    }

    friend Vec operator*(const Matrix& m, const Vec& v) {
        if (m.cols() != v.size()) throw DimensionMismatch("matrix-vector sizes differ");
        Vec r(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
            r[i] = s;
        }
        return r;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> a_;
};

} // namespace ccm
