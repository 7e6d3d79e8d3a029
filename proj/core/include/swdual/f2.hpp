#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace swdual {

/// Bit-packed vector over F2.
class F2Vector {
public:
    F2Vector() : size_(0) {}
    explicit F2Vector(std::size_t n) : w_((n + 63) / 64, 0), size_(n) {}

    std::size_t size() const { return size_; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    bool is_zero() const {
        for (auto x : w_) if (x) return false;
        return true;
    }

    F2Vector& operator^=(const F2Vector& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }
    friend F2Vector operator^(F2Vector a, const F2Vector& b) { return a ^= b; }

    friend bool operator==(const F2Vector& a, const F2Vector& b) {
        return a.size_ == b.size_ && a.w_ == b.w_;
    }

    int lowest_set() const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return static_cast<int>(k * 64 + __builtin_ctzll(w_[k]));
        return -1;
    }

private:
    std::vector<std::uint64_t> w_;
    std::size_t size_;
};

/// Row-echelon span of F2 vectors; supports rank queries, membership,
/// and reduction of a vector modulo the span.
class F2Span {
public:
    F2Span() : dim_(0) {}
    explicit F2Span(std::size_t dim) : dim_(dim) {}

    std::size_t ambient_dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }

    /// Reduce v by current rows (eliminating each row's pivot bit).
    F2Vector reduce(F2Vector v) const {
        for (std::size_t k = 0; k < rows_.size(); ++k)
            if (v.get(static_cast<std::size_t>(pivots_[k]))) v ^= rows_[k];
        return v;
    }

    bool contains(const F2Vector& v) const { return reduce(v).is_zero(); }

    /// Insert v; returns true if it enlarged the span.
    bool insert(const F2Vector& v) {
        F2Vector r = reduce(v);
        int p = r.lowest_set();
        if (p < 0) return false;
        rows_.push_back(r);
        pivots_.push_back(p);
        return true;
    }

    const std::vector<F2Vector>& rows() const { return rows_; }

private:
    std::size_t dim_;
    std::vector<F2Vector> rows_;
    std::vector<int> pivots_;
};

/// Dense F2 matrix with row-major bit-packed storage.
class F2Matrix {
public:
    F2Matrix() : rows_(0), cols_(0) {}
    F2Matrix(std::size_t rows, std::size_t cols)
        : data_(rows, F2Vector(cols)), rows_(rows), cols_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return data_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool v) { data_[r].set(c, v); }

    const F2Vector& row(std::size_t r) const { return data_[r]; }
    F2Vector& row(std::size_t r) { return data_[r]; }

    /// v * M, treating v as a row vector of length rows().
    F2Vector apply_left(const F2Vector& v) const {
        F2Vector out(cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            if (v.get(r)) out ^= data_[r];
        return out;
    }

    std::size_t rank() const {
        F2Span span(cols_);
        for (const auto& r : data_) span.insert(r);
        return span.rank();
    }

    /// Basis of { v : v * M = 0 } (left kernel over the rows).
    std::vector<F2Vector> kernel() const {
        // Gaussian elimination on [M | I].
        std::vector<F2Vector> m = data_;
        std::vector<F2Vector> id(rows_, F2Vector(rows_));
        for (std::size_t r = 0; r < rows_; ++r) id[r].set(r, true);

        std::size_t lead = 0;
        for (std::size_t c = 0; c < cols_ && lead < rows_; ++c) {
            std::size_t piv = lead;
            while (piv < rows_ && !m[piv].get(c)) ++piv;
            if (piv == rows_) continue;
            std::swap(m[piv], m[lead]);
            std::swap(id[piv], id[lead]);
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r != lead && m[r].get(c)) {
                    m[r] ^= m[lead];
                    id[r] ^= id[lead];
                }
            }
            ++lead;
        }
        std::vector<F2Vector> ker;
        for (std::size_t r = lead; r < rows_; ++r) ker.push_back(id[r]);
        return ker;
    }

    bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }

private:
    std::vector<F2Vector> data_;
    std::size_t rows_, cols_;
};

}  // namespace swdual
