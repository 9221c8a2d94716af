#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qre/error.hpp"

namespace qre {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major. Entries are always finite.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, cplx{0.0, 0.0}) {}

    ComplexMatrix(std::size_t dim, std::vector<cplx> entries) : dim_(dim), data_(std::move(entries)) {
        if (data_.size() != dim_ * dim_)
            throw Error(Errc::NotSquare, "expected " + std::to_string(dim_ * dim_) + " entries, got "
                                             + std::to_string(data_.size()));
        check_finite();
    }

    // Nested rows, e.g. {{1, 0}, {0, 1}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) : dim_(rows.size()) {
        data_.reserve(dim_ * dim_);
        for (const auto& r : rows) {
            if (r.size() != dim_) throw Error(Errc::NotSquare, "ragged or non-square initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
        check_finite();
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const double> d) {
        ComplexMatrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        m.check_finite();
        return m;
    }

    static ComplexMatrix diagonal(std::initializer_list<double> d) {
        return diagonal(std::span<const double>(d.begin(), d.size()));
    }

    // |v><w|
    static ComplexMatrix outer(std::span<const cplx> v, std::span<const cplx> w) {
        if (v.size() != w.size()) throw Error(Errc::DimensionMismatch, "outer product of unequal vectors");
        ComplexMatrix m(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * std::conj(w[j]);
        return m;
    }

    std::size_t dim() const noexcept { return dim_; }

    cplx& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * dim_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * dim_ + c]; }

    std::span<const cplx> entries() const noexcept { return data_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    cplx trace() const noexcept {
        cplx t{0.0, 0.0};
        for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    // (M + M^dagger) / 2
    ComplexMatrix hermitian_part() const {
        ComplexMatrix out(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                out(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
        return out;
    }

    // max_ij |M_ij - M_ji^*|
    double hermiticity_residual() const noexcept {
        double r = 0.0;
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i; j < dim_; ++j)
                r = std::max(r, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return r;
    }

    double frobenius_norm() const noexcept {
        double s = 0.0;
        for (const auto& z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_dim(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_dim(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }

    ComplexMatrix& operator*=(cplx s) {
        for (auto& z : data_) z *= s;
        check_finite();
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.require_same_dim(b);
        const std::size_t n = a.dim_;
        ComplexMatrix out(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{0.0, 0.0}) continue;
                for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    std::vector<cplx> apply(std::span<const cplx> v) const {
        if (v.size() != dim_) throw Error(Errc::DimensionMismatch, "matrix-vector size mismatch");
        std::vector<cplx> out(dim_, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    // <v|M|w>
    cplx sandwich(std::span<const cplx> v, std::span<const cplx> w) const {
        const auto mw = apply(w);
        cplx s{0.0, 0.0};
        for (std::size_t i = 0; i < dim_; ++i) s += std::conj(v[i]) * mw[i];
        return s;
    }

    void require_same_dim(const ComplexMatrix& o) const {
        if (o.dim_ != dim_)
            throw Error(Errc::DimensionMismatch,
                        "dimensions " + std::to_string(dim_) + " and " + std::to_string(o.dim_));
    }

private:
    void check_finite() const {
        for (const auto& z : data_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw Error(Errc::NonFinite, "matrix entry is NaN or infinite");
    }

    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.require_same_dim(b);
    double r = 0.0;
    const auto ea = a.entries();
    const auto eb = b.entries();
    for (std::size_t k = 0; k < ea.size(); ++k) r = std::max(r, std::abs(ea[k] - eb[k]));
    return r;
}

inline cplx inner(std::span<const cplx> v, std::span<const cplx> w) {
    if (v.size() != w.size()) throw Error(Errc::DimensionMismatch, "inner product of unequal vectors");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * w[i];
    return s;
}

// Kronecker product; composite index (ia, ib) -> ia * dim(b) + ib.
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t i1 = 0; i1 < na; ++i1)
        for (std::size_t j1 = 0; j1 < na; ++j1) {
            const cplx aij = a(i1, j1);
            for (std::size_t i2 = 0; i2 < nb; ++i2)
                for (std::size_t j2 = 0; j2 < nb; ++j2) out(i1 * nb + i2, j1 * nb + j2) = aij * b(i2, j2);
        }
    return out;
}

inline std::vector<cplx> tensor(std::span<const cplx> a, std::span<const cplx> b) {
    std::vector<cplx> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) out.push_back(x * y);
    return out;
}

enum class Subsystem { System, Environment };

// Reduced operator on the kept factor of a (dim_s * dim_e)-dimensional operator.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_s, std::size_t dim_e, Subsystem keep) {
    if (dim_s == 0 || dim_e == 0 || m.dim() != dim_s * dim_e)
        throw Error(Errc::DimensionMismatch, "operator of dimension " + std::to_string(m.dim())
                                                 + " is not " + std::to_string(dim_s) + " x "
                                                 + std::to_string(dim_e));
    if (keep == Subsystem::System) {
        ComplexMatrix out(dim_s);
        for (std::size_t i = 0; i < dim_s; ++i)
            for (std::size_t j = 0; j < dim_s; ++j)
                for (std::size_t k = 0; k < dim_e; ++k) out(i, j) += m(i * dim_e + k, j * dim_e + k);
        return out;
    }
    ComplexMatrix out(dim_e);
    for (std::size_t i = 0; i < dim_e; ++i)
        for (std::size_t j = 0; j < dim_e; ++j)
            for (std::size_t k = 0; k < dim_s; ++k) out(i, j) += m(k * dim_e + i, k * dim_e + j);
    return out;
}

namespace pauli {
inline ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix y() { return {{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}}; }
inline ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
} // namespace pauli

} // namespace qre
