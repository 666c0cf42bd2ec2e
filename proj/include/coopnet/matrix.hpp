#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "coopnet/errors.hpp"

namespace coopnet {

/// Dense row-major real matrix. All channel/covariance algebra in this
/// library runs on matrices of dimension <= 16, so everything here is the
/// plain O(n^3) textbook version.
class Mat {
  public:
    Mat() = default;

    Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Mat transposed() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        Mat c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const double aik = a(i, k);
                if (aik == 0.0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Symmetric real matrix; symmetry is maintained by construction (set()
/// mirrors both triangles, so reads never see an asymmetric state).
class SymMat {
  public:
    SymMat() = default;

    explicit SymMat(std::size_t dim, double fill = 0.0) : dim_(dim), data_(dim * dim, fill) {}

    static SymMat identity(std::size_t n) { return scaled_identity(n, 1.0); }

    static SymMat scaled_identity(std::size_t n, double s) {
        SymMat m(n);
        for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = s;
        return m;
    }

    static SymMat diagonal(std::span<const double> d) {
        SymMat m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m.data_[i * d.size() + i] = d[i];
        return m;
    }

    std::size_t dim() const { return dim_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

    void set(std::size_t i, std::size_t j, double v) {
        data_[i * dim_ + j] = v;
        data_[j * dim_ + i] = v;
    }

    void add(std::size_t i, std::size_t j, double v) { set(i, j, (*this)(i, j) + v); }

    double max_diagonal() const {
        double m = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) m = std::max(m, (*this)(i, i));
        return m;
    }

    friend SymMat operator+(const SymMat& a, const SymMat& b) {
        SymMat c(a.dim_);
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = a.data_[i] + b.data_[i];
        return c;
    }

    friend SymMat operator-(const SymMat& a, const SymMat& b) {
        SymMat c(a.dim_);
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = a.data_[i] - b.data_[i];
        return c;
    }

    SymMat scaled(double s) const {
        SymMat c(dim_);
        for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] = data_[i] * s;
        return c;
    }

    Mat as_mat() const {
        Mat m(dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
        return m;
    }

  private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

/// a * q * a^T, symmetrized against rounding.
inline SymMat gram(const Mat& a, const SymMat& q) {
    const Mat aq = a * q.as_mat();
    SymMat out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.rows(); ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += aq(i, k) * a(j, k);
            out.set(i, j, s);
        }
    return out;
}

/// Lower Cholesky factor of a positive definite matrix. A pivot at or below
/// 1e-12 times the largest diagonal entry is treated as loss of definiteness.
inline Mat cholesky(const SymMat& m) {
    const std::size_t n = m.dim();
    const double tol = 1e-12 * std::max(m.max_diagonal(), 0.0);
    Mat l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = m(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > tol))
            throw NotPositiveDefinite("cholesky: pivot " + std::to_string(d) + " at index " +
                                      std::to_string(j));
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = m(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

/// ln det(m) for positive definite m, in nats.
inline double logdet_pd(const SymMat& m) {
    const Mat l = cholesky(m);
    double s = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i) s += std::log(l(i, i));
    return 2.0 * s;
}

/// Solves m * x = b for positive definite m.
inline Mat solve_pd(const SymMat& m, const Mat& b) {
    const std::size_t n = m.dim();
    const Mat l = cholesky(m);
    Mat x = b;
    for (std::size_t c = 0; c < b.cols(); ++c) {
        // forward: L y = b
        for (std::size_t i = 0; i < n; ++i) {
            double s = x(i, c);
            for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x(k, c);
            x(i, c) = s / l(i, i);
        }
        // back: L^T x = y
        for (std::size_t ii = n; ii-- > 0;) {
            double s = x(ii, c);
            for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x(k, c);
            x(ii, c) = s / l(ii, ii);
        }
    }
    return x;
}

inline SymMat inverse_pd(const SymMat& m) {
    const Mat inv = solve_pd(m, Mat::identity(m.dim()));
    SymMat out(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = i; j < m.dim(); ++j)
            out.set(i, j, 0.5 * (inv(i, j) + inv(j, i)));
    return out;
}

struct EigenSym {
    std::vector<double> values;  // ascending
    Mat vectors;                 // column i pairs with values[i]
};

/// Cyclic Jacobi eigendecomposition. Deterministic sweep order; plenty for
/// dim <= 16.
inline EigenSym jacobi_eigen(const SymMat& m) {
    const std::size_t n = m.dim();
    Mat a = m.as_mat();
    Mat v = Mat::identity(n);

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
    const double stop = std::max(scale, 1.0) * 1e-15;

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= stop) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= stop) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }

    EigenSym out;
    out.values.resize(n);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
    out.vectors = Mat(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out.values[i] = a(order[i], order[i]);
        for (std::size_t k = 0; k < n; ++k) out.vectors(k, i) = v(k, order[i]);
    }
    return out;
}

/// Maps a symmetric matrix into the feasible set {PSD, diag(m) <= caps}:
/// negative eigenvalues are clipped at zero, then a diagonal congruence
/// d*m*d with d_k = min(1, sqrt(cap_k / m_kk)) pulls every diagonal entry
/// under its cap while preserving semidefiniteness. Feasible inputs pass
/// through unchanged. Not the Euclidean projection onto the intersection.
inline SymMat project_psd_capped(const SymMat& m, std::span<const double> caps) {
    const std::size_t n = m.dim();

    SymMat psd = m;
    const EigenSym eg = jacobi_eigen(m);
    if (!eg.values.empty() && eg.values.front() < -1e-14 * std::max(1.0, std::abs(eg.values.back()))) {
        psd = SymMat(n);
        for (std::size_t e = 0; e < n; ++e) {
            const double lam = std::max(eg.values[e], 0.0);
            if (lam == 0.0) continue;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j)
                    psd.add(i, j, lam * eg.vectors(i, e) * eg.vectors(j, e));
        }
    }

    std::vector<double> d(n, 1.0);
    bool needs_cap = false;
    for (std::size_t i = 0; i < n; ++i) {
        const double dii = psd(i, i);
        if (dii > caps[i]) {
            d[i] = std::sqrt(caps[i] / dii);
            needs_cap = true;
        }
    }
    if (!needs_cap) return psd;

    SymMat out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) out.set(i, j, d[i] * d[j] * psd(i, j));
    return out;
}

}  // namespace coopnet
