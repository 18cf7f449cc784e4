#pragma once

// Bit-packed GF(2) vectors and matrices. Fixed 512-bit capacity so that
// values are plain structs and orbit searches never allocate.

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hitmono {

inline constexpr int kMaxBits = 512;
inline constexpr int kWords = kMaxBits / 64;

class BitVec {
public:
    BitVec() : dim_(0) { w_.fill(0); }

    explicit BitVec(int dim) : dim_(dim) {
        if (dim < 0 || dim > kMaxBits) throw std::invalid_argument("BitVec: dimension out of range");
        w_.fill(0);
    }

    // Low `dim` bits of `bits`, bit k of the word = coordinate k.
    static BitVec from_bits(int dim, std::uint64_t bits) {
        BitVec v(dim);
        v.w_[0] = (dim >= 64) ? bits : (bits & ((dim == 0) ? 0 : ((~0ULL) >> (64 - dim))));
        return v;
    }

    static BitVec unit(int dim, int k) {
        BitVec v(dim);
        v.set(k, true);
        return v;
    }

    static BitVec ones(int dim) {
        BitVec v(dim);
        for (int i = 0; i < dim; i++) v.set(i, true);
        return v;
    }

    int dim() const { return dim_; }
    int nwords() const { return (dim_ + 63) / 64; }

    bool get(int k) const {
        check_index(k);
        return (w_[k >> 6] >> (k & 63)) & 1;
    }

    void set(int k, bool bit) {
        check_index(k);
        std::uint64_t mask = 1ULL << (k & 63);
        if (bit) w_[k >> 6] |= mask;
        else w_[k >> 6] &= ~mask;
    }

    void flip(int k) {
        check_index(k);
        w_[k >> 6] ^= 1ULL << (k & 63);
    }

    BitVec& operator^=(const BitVec& o) {
        check_same_dim(o);
        for (int i = 0; i < nwords(); i++) w_[i] ^= o.w_[i];
        return *this;
    }

    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
    friend BitVec operator+(BitVec a, const BitVec& b) { return a ^= b; }

    BitVec& operator&=(const BitVec& o) {
        check_same_dim(o);
        for (int i = 0; i < nwords(); i++) w_[i] &= o.w_[i];
        return *this;
    }

    friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }

    int popcount() const {
        int n = 0;
        for (int i = 0; i < nwords(); i++) n += std::popcount(w_[i]);
        return n;
    }

    int parity() const { return popcount() & 1; }

    bool is_zero() const {
        for (int i = 0; i < nwords(); i++)
            if (w_[i]) return false;
        return true;
    }

    // Index of the lowest set bit, or -1.
    int lowest_bit() const {
        for (int i = 0; i < nwords(); i++)
            if (w_[i]) return 64 * i + std::countr_zero(w_[i]);
        return -1;
    }

    friend bool operator==(const BitVec& a, const BitVec& b) {
        if (a.dim_ != b.dim_) return false;
        for (int i = 0; i < a.nwords(); i++)
            if (a.w_[i] != b.w_[i]) return false;
        return true;
    }

    friend bool operator!=(const BitVec& a, const BitVec& b) { return !(a == b); }

    // Numeric comparison of the packed value (coordinate 0 least significant).
    friend bool operator<(const BitVec& a, const BitVec& b) {
        a.check_same_dim(b);
        for (int i = a.nwords() - 1; i >= 0; i--)
            if (a.w_[i] != b.w_[i]) return a.w_[i] < b.w_[i];
        return false;
    }

    std::uint64_t low_word() const { return w_[0]; }

    // Fixed-width lowercase hex of the packed bits, most significant nibble first.
    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        int nnib = (dim_ + 3) / 4;
        if (nnib == 0) nnib = 1;
        std::string s(nnib, '0');
        for (int n = 0; n < nnib; n++) {
            int v = 0;
            for (int b = 0; b < 4; b++) {
                int k = 4 * n + b;
                if (k < dim_ && get(k)) v |= 1 << b;
            }
            s[nnib - 1 - n] = digits[v];
        }
        return s;
    }

    static BitVec from_hex(int dim, const std::string& s) {
        BitVec v(dim);
        int n = static_cast<int>(s.size());
        for (int idx = 0; idx < n; idx++) {
            char ch = s[n - 1 - idx];
            int d;
            if (ch >= '0' && ch <= '9') d = ch - '0';
            else if (ch >= 'a' && ch <= 'f') d = ch - 'a' + 10;
            else throw std::invalid_argument("BitVec::from_hex: bad digit");
            for (int b = 0; b < 4; b++) {
                int k = 4 * idx + b;
                if (d & (1 << b)) {
                    if (k >= dim) throw std::invalid_argument("BitVec::from_hex: value exceeds dimension");
                    v.set(k, true);
                }
            }
        }
        return v;
    }

private:
    void check_index(int k) const {
        if (k < 0 || k >= dim_) throw std::out_of_range("BitVec: index out of range");
    }
    void check_same_dim(const BitVec& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("BitVec: dimension mismatch");
    }

    std::array<std::uint64_t, kWords> w_;
    int dim_;
};

// Parity of the AND of the two bit patterns.
inline int dot(const BitVec& u, const BitVec& v) {
    if (u.dim() != v.dim()) throw std::invalid_argument("dot: dimension mismatch");
    return (u & v).parity();
}

class BitMat {
public:
    BitMat() : nrows_(0), ncols_(0) {}

    BitMat(int nrows, int ncols) : nrows_(nrows), ncols_(ncols), rows_(nrows, BitVec(ncols)) {
        if (nrows < 0 || ncols < 0 || ncols > kMaxBits || nrows > kMaxBits)
            throw std::invalid_argument("BitMat: dimensions out of range");
    }

    static BitMat identity(int n) {
        BitMat m(n, n);
        for (int i = 0; i < n; i++) m.set(i, i, true);
        return m;
    }

    int nrows() const { return nrows_; }
    int ncols() const { return ncols_; }

    const BitVec& row(int i) const { return rows_.at(i); }
    BitVec& row(int i) { return rows_.at(i); }

    bool get(int i, int j) const { return rows_.at(i).get(j); }
    void set(int i, int j, bool b) { rows_.at(i).set(j, b); }

    bool is_zero() const {
        for (const auto& r : rows_)
            if (!r.is_zero()) return false;
        return true;
    }

    BitMat& operator^=(const BitMat& o) {
        if (nrows_ != o.nrows_ || ncols_ != o.ncols_) throw std::invalid_argument("BitMat: shape mismatch");
        for (int i = 0; i < nrows_; i++) rows_[i] ^= o.rows_[i];
        return *this;
    }

    friend BitMat operator^(BitMat a, const BitMat& b) { return a ^= b; }
    friend BitMat operator+(BitMat a, const BitMat& b) { return a ^= b; }

    friend bool operator==(const BitMat& a, const BitMat& b) {
        return a.nrows_ == b.nrows_ && a.ncols_ == b.ncols_ && a.rows_ == b.rows_;
    }
    friend bool operator!=(const BitMat& a, const BitMat& b) { return !(a == b); }

    // Matrix-vector product over GF(2).
    BitVec mul(const BitVec& x) const {
        if (x.dim() != ncols_) throw std::invalid_argument("BitMat::mul: dimension mismatch");
        BitVec y(nrows_);
        for (int i = 0; i < nrows_; i++)
            if (dot(rows_[i], x)) y.set(i, true);
        return y;
    }

    BitMat mul(const BitMat& o) const {
        if (ncols_ != o.nrows_) throw std::invalid_argument("BitMat::mul: shape mismatch");
        BitMat t = o.transposed();
        BitMat out(nrows_, o.ncols_);
        for (int i = 0; i < nrows_; i++)
            for (int j = 0; j < o.ncols_; j++)
                if (dot(rows_[i], t.rows_[j])) out.set(i, j, true);
        return out;
    }

    BitMat transposed() const {
        BitMat t(ncols_, nrows_);
        for (int i = 0; i < nrows_; i++)
            for (int j = 0; j < ncols_; j++)
                if (get(i, j)) t.set(j, i, true);
        return t;
    }

private:
    int nrows_, ncols_;
    std::vector<BitVec> rows_;
};

// GF(2) row rank by elimination with leftmost pivoting.
inline int rank(BitMat m) {
    int r = 0;
    for (int col = 0; col < m.ncols() && r < m.nrows(); col++) {
        int piv = -1;
        for (int i = r; i < m.nrows(); i++) {
            if (m.get(i, col)) { piv = i; break; }
        }
        if (piv < 0) continue;
        std::swap(m.row(r), m.row(piv));
        for (int i = 0; i < m.nrows(); i++) {
            if (i != r && m.get(i, col)) m.row(i) ^= m.row(r);
        }
        r++;
    }
    return r;
}

// Some x with m*x = rhs, or nullopt if the system is inconsistent. Pivots are
// chosen leftmost and free variables are set to zero, so the output is
// reproducible across runs.
inline std::optional<BitVec> solve(const BitMat& m, const BitVec& rhs) {
    if (m.nrows() != rhs.dim()) throw std::invalid_argument("solve: dimension mismatch");
    const int nr = m.nrows(), nc = m.ncols();

    // Augmented elimination; column nc holds the right hand side.
    BitMat aug(nr, nc + 1);
    for (int i = 0; i < nr; i++) {
        BitVec r(nc + 1);
        for (int j = 0; j < nc; j++)
            if (m.get(i, j)) r.set(j, true);
        if (rhs.get(i)) r.set(nc, true);
        aug.row(i) = r;
    }

    std::vector<int> pivot_col;
    int r = 0;
    for (int col = 0; col < nc && r < nr; col++) {
        int piv = -1;
        for (int i = r; i < nr; i++) {
            if (aug.get(i, col)) { piv = i; break; }
        }
        if (piv < 0) continue;
        std::swap(aug.row(r), aug.row(piv));
        for (int i = 0; i < nr; i++)
            if (i != r && aug.get(i, col)) aug.row(i) ^= aug.row(r);
        pivot_col.push_back(col);
        r++;
    }
    for (int i = r; i < nr; i++)
        if (aug.get(i, nc)) return std::nullopt;

    BitVec x(nc);
    for (int i = 0; i < r; i++)
        if (aug.get(i, nc)) x.set(pivot_col[i], true);
    return x;
}

}  // namespace hitmono
