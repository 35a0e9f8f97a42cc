#pragma once

#include <optional>
#include <vector>

#include "meroq/rational.hpp"

namespace meroq {

using VecQ = std::vector<Rat>;

Rat dot(const VecQ& u, const VecQ& v);
bool is_zero(const VecQ& v);
VecQ padded(VecQ v, int n);

// Dense exact rational matrix, row-major.
class MatQ {
public:
    MatQ() = default;
    MatQ(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
    static MatQ identity(int n);
    static MatQ from_rows(const std::vector<VecQ>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
    VecQ row(int i) const;
    std::vector<VecQ> row_list() const;

    MatQ transpose() const;
    MatQ operator*(const MatQ& rhs) const;
    VecQ apply(const VecQ& v) const;
    bool operator==(const MatQ&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rat> a_;
};

// Reduced row echelon form; pivot column indices go to *pivots if given.
MatQ rref(MatQ m, std::vector<int>* pivots = nullptr);
Rat determinant(MatQ m);
MatQ inverse(const MatQ& m);
VecQ solve(const MatQ& m, const VecQ& b);

// Subspace of Q^ambient in canonical form: the basis rows are the RREF of any
// spanning set, so equal subspaces compare equal componentwise.
class Subspace {
public:
    static Subspace zero(int ambient) { return Subspace(ambient, {}); }
    static Subspace full(int ambient);
    static Subspace span(int ambient, const std::vector<VecQ>& vectors);

    int ambient() const { return ambient_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<VecQ>& basis() const { return basis_; }
    bool contains(const VecQ& v) const;
    bool contains(const Subspace& other) const;
    Subspace sum(const Subspace& other) const;
    // Covectors (identified with vectors) annihilating this subspace.
    Subspace annihilator() const;
    bool operator==(const Subspace&) const = default;

private:
    Subspace(int ambient, std::vector<VecQ> basis) : ambient_(ambient), basis_(std::move(basis)) {}
    int ambient_ = 0;
    std::vector<VecQ> basis_;
};

// Null space {x : m·x = 0} as a canonical Subspace of Q^cols.
Subspace kernel(const MatQ& m);

// A minimal linearly dependent subset of a list of covectors, with the
// (unique up to sign) vanishing combination as certificate: sum of
// coeffs[i]·forms[indices[i]] = 0. Coefficients are primitive integers with
// the first one positive; indices are 0-based and strictly increasing.
struct Circuit {
    std::vector<int> indices;
    std::vector<Int> coeffs;
};

// Lexicographically smallest circuit of the list, if any subset is dependent.
std::optional<Circuit> find_circuit(const std::vector<VecQ>& forms);

// Compatible family of inner products Q_k on Q^k, realized as a finite SPD
// block extended by the identity with zero coupling: gram(k) agrees with the
// leading principal k-block of gram(k+1) for every k.
class InnerProductFamily {
public:
    static InnerProductFamily identity() { return InnerProductFamily(MatQ(0, 0)); }
    // Throws NotSPD unless every leading principal minor of block is positive.
    static InnerProductFamily with_block(MatQ block);

    int block_size() const { return block_.rows(); }
    MatQ gram(int k) const;
    Rat inner(const VecQ& u, const VecQ& v) const;
    // v with Q_k(x, v) = L(x) for all x, where k = L.size().
    VecQ riesz_vector(const VecQ& covector) const;
    // Dual inner product of two covectors of equal size.
    Rat dual_inner(const VecQ& l1, const VecQ& l2) const;
    // Dual-orthogonal complement of a covector subspace inside (Q^k)*.
    Subspace orth_complement_dual(const Subspace& covectors) const;

private:
    explicit InnerProductFamily(MatQ block) : block_(std::move(block)) {}
    MatQ block_;
};

}  // namespace meroq
