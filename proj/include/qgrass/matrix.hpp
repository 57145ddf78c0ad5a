#pragma once

#include <cstddef>
#include <vector>

#include "qgrass/error.hpp"
#include "qgrass/radical.hpp"

namespace qgrass {

/// Square matrix of exact RadicalScalar entries; the container behind both the
/// Fock-space operators and the representation-space operators.
class ScalarMatrix {
public:
    ScalarMatrix(QContext ctx, long n)
        : ctx_(std::move(ctx)), n_(n), e_(static_cast<std::size_t>(n * n), RadicalScalar(ctx_.zero())) {}

    static ScalarMatrix identity(const QContext& ctx, long n) {
        ScalarMatrix m(ctx, n);
        for (long i = 0; i < n; ++i) m.set(i, i, RadicalScalar(ctx.one()));
        return m;
    }

    long size() const noexcept { return n_; }
    const QContext& context() const noexcept { return ctx_; }

    const RadicalScalar& at(long i, long j) const { return e_[idx(i, j)]; }
    void set(long i, long j, RadicalScalar v) { e_[idx(i, j)] = std::move(v); }

    friend ScalarMatrix operator+(const ScalarMatrix& a, const ScalarMatrix& b) {
        a.check(b);
        ScalarMatrix r(a.ctx_, a.n_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }

    friend ScalarMatrix operator-(const ScalarMatrix& a, const ScalarMatrix& b) {
        a.check(b);
        ScalarMatrix r(a.ctx_, a.n_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
        return r;
    }

    friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
        a.check(b);
        ScalarMatrix r(a.ctx_, a.n_);
        for (long i = 0; i < a.n_; ++i)
            for (long l = 0; l < a.n_; ++l) {
                if (a.at(i, l).is_zero()) continue;
                for (long j = 0; j < a.n_; ++j) {
                    if (b.at(l, j).is_zero()) continue;
                    r.set(i, j, r.at(i, j) + a.at(i, l) * b.at(l, j));
                }
            }
        return r;
    }

    friend ScalarMatrix operator*(const RadicalScalar& s, const ScalarMatrix& a) {
        ScalarMatrix r(a.ctx_, a.n_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = s * a.e_[i];
        return r;
    }

    friend bool operator==(const ScalarMatrix& a, const ScalarMatrix& b) {
        a.check(b);
        return a.e_ == b.e_;
    }
    friend bool operator!=(const ScalarMatrix& a, const ScalarMatrix& b) { return !(a == b); }

    bool is_zero() const {
        for (const auto& v : e_)
            if (!v.is_zero()) return false;
        return true;
    }

    ScalarMatrix pow(long m) const {
        ScalarMatrix r = identity(ctx_, n_);
        for (long i = 0; i < m; ++i) r = r * *this;
        return r;
    }

private:
    std::size_t idx(long i, long j) const {
        if (i < 0 || i >= n_ || j < 0 || j >= n_) throw error("ScalarMatrix: index out of range");
        return static_cast<std::size_t>(i * n_ + j);
    }

    void check(const ScalarMatrix& b) const {
        if (n_ != b.n_ || ctx_ != b.ctx_) throw context_mismatch("ScalarMatrix: mixed shapes or contexts");
    }

    QContext ctx_;
    long n_;
    std::vector<RadicalScalar> e_;
};

}  // namespace qgrass
