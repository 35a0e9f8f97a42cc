#include "meroq/qlinalg.hpp"

#include <algorithm>

#include "meroq/errors.hpp"

namespace meroq {

Rat dot(const VecQ& u, const VecQ& v) {
    if (u.size() != v.size()) throw DimensionMismatch("dot: size mismatch");
    Rat s = 0;
    for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

bool is_zero(const VecQ& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

VecQ padded(VecQ v, int n) {
    if (static_cast<int>(v.size()) > n) throw DimensionMismatch("padded: shrinking");
    v.resize(n, Rat(0));
    return v;
}

MatQ MatQ::identity(int n) {
    MatQ m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

MatQ MatQ::from_rows(const std::vector<VecQ>& rows) {
    if (rows.empty()) return MatQ(0, 0);
    MatQ m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i) {
        if (static_cast<int>(rows[i].size()) != m.cols())
            throw DimensionMismatch("from_rows: ragged rows");
        for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

VecQ MatQ::row(int i) const {
    VecQ r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

std::vector<VecQ> MatQ::row_list() const {
    std::vector<VecQ> rows;
    rows.reserve(rows_);
    for (int i = 0; i < rows_; ++i) rows.push_back(row(i));
    return rows;
}

MatQ MatQ::transpose() const {
    MatQ t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

MatQ MatQ::operator*(const MatQ& rhs) const {
    if (cols_ != rhs.rows_) throw DimensionMismatch("matrix product: inner sizes differ");
    MatQ p(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int l = 0; l < cols_; ++l) {
            const Rat& x = at(i, l);
            if (x == 0) continue;
            for (int j = 0; j < rhs.cols_; ++j) p.at(i, j) += x * rhs.at(l, j);
        }
    return p;
}

VecQ MatQ::apply(const VecQ& v) const {
    if (static_cast<int>(v.size()) != cols_) throw DimensionMismatch("apply: size mismatch");
    VecQ out(rows_);
    for (int i = 0; i < rows_; ++i) {
        Rat s = 0;
        for (int j = 0; j < cols_; ++j) s += at(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

MatQ rref(MatQ m, std::vector<int>* pivots) {
    if (pivots) pivots->clear();
    int lead = 0;
    for (int col = 0; col < m.cols() && lead < m.rows(); ++col) {
        int p = -1;
        for (int i = lead; i < m.rows(); ++i)
            if (m.at(i, col) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != lead)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(lead, j));
        Rat inv = 1 / m.at(lead, col);
        for (int j = col; j < m.cols(); ++j) m.at(lead, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == lead || m.at(i, col) == 0) continue;
            Rat f = m.at(i, col);
            for (int j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(lead, j);
        }
        if (pivots) pivots->push_back(col);
        ++lead;
    }
    return m;
}

Rat determinant(MatQ m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant: not square");
    Rat det = 1;
    int n = m.rows();
    for (int col = 0; col < n; ++col) {
        int p = -1;
        for (int i = col; i < n; ++i)
            if (m.at(i, col) != 0) {
                p = i;
                break;
            }
        if (p < 0) return Rat(0);
        if (p != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(col, j));
            det = -det;
        }
        det *= m.at(col, col);
        Rat inv = 1 / m.at(col, col);
        for (int i = col + 1; i < n; ++i) {
            if (m.at(i, col) == 0) continue;
            Rat f = m.at(i, col) * inv;
            for (int j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return det;
}

MatQ inverse(const MatQ& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse: not square");
    int n = m.rows();
    MatQ aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    std::vector<int> pivots;
    aug = rref(std::move(aug), &pivots);
    if (static_cast<int>(pivots.size()) != n || pivots.back() != n - 1)
        throw Error("inverse: singular matrix");
    MatQ inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

VecQ solve(const MatQ& m, const VecQ& b) {
    if (m.rows() != m.cols() || static_cast<int>(b.size()) != m.rows())
        throw DimensionMismatch("solve: shape mismatch");
    int n = m.rows();
    MatQ aug(n, n + 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n) = b[i];
    }
    std::vector<int> pivots;
    aug = rref(std::move(aug), &pivots);
    if (static_cast<int>(pivots.size()) != n || (n > 0 && pivots.back() != n - 1))
        throw Error("solve: singular matrix");
    VecQ x(n);
    for (int i = 0; i < n; ++i) x[i] = aug.at(i, n);
    return x;
}

Subspace Subspace::full(int ambient) {
    return span(ambient, MatQ::identity(ambient).row_list());
}

Subspace Subspace::span(int ambient, const std::vector<VecQ>& vectors) {
    for (const VecQ& v : vectors)
        if (static_cast<int>(v.size()) != ambient)
            throw DimensionMismatch("span: vector size differs from ambient");
    if (vectors.empty()) return zero(ambient);
    std::vector<int> pivots;
    MatQ r = rref(MatQ::from_rows(vectors), &pivots);
    std::vector<VecQ> basis;
    for (int i = 0; i < static_cast<int>(pivots.size()); ++i) basis.push_back(r.row(i));
    return Subspace(ambient, std::move(basis));
}

bool Subspace::contains(const VecQ& v) const {
    if (static_cast<int>(v.size()) != ambient_)
        throw DimensionMismatch("contains: size differs from ambient");
    VecQ r = v;
    for (const VecQ& b : basis_) {
        int p = 0;
        while (b[p] == 0) ++p;  // canonical rows have a pivot 1
        if (r[p] == 0) continue;
        Rat f = r[p];
        for (int j = 0; j < ambient_; ++j) r[j] -= f * b[j];
    }
    return is_zero(r);
}

bool Subspace::contains(const Subspace& other) const {
    return std::all_of(other.basis_.begin(), other.basis_.end(),
                       [&](const VecQ& v) { return contains(v); });
}

Subspace Subspace::sum(const Subspace& other) const {
    if (ambient_ != other.ambient_) throw DimensionMismatch("sum: ambient mismatch");
    std::vector<VecQ> all = basis_;
    all.insert(all.end(), other.basis_.begin(), other.basis_.end());
    return span(ambient_, all);
}

Subspace Subspace::annihilator() const {
    if (basis_.empty()) return full(ambient_);
    return kernel(MatQ::from_rows(basis_));
}

Subspace kernel(const MatQ& m) {
    if (m.rows() == 0) return Subspace::full(m.cols());
    std::vector<int> pivots;
    MatQ r = rref(m, &pivots);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<VecQ> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        VecQ v(m.cols(), Rat(0));
        v[f] = 1;
        for (int i = 0; i < static_cast<int>(pivots.size()); ++i) v[pivots[i]] = -r.at(i, f);
        basis.push_back(std::move(v));
    }
    return Subspace::span(m.cols(), basis);
}

namespace {

// Scales a rational vector to primitive integers with positive first nonzero.
std::vector<Int> primitive_certificate(const VecQ& v) {
    Int den = 1;
    for (const Rat& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Int> out;
    out.reserve(v.size());
    Int gcd = 0;
    for (const Rat& x : v) {
        Rat scaled = x * Rat(den);
        out.push_back(scaled.get_num());
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), out.back().get_mpz_t());
    }
    if (gcd == 0) throw ZeroForm("certificate of a zero combination");
    int sign = 0;
    for (const Int& x : out)
        if (x != 0) {
            sign = (x > 0) ? 1 : -1;
            break;
        }
    for (Int& x : out) x /= sign > 0 ? gcd : -gcd;
    return out;
}

// Pre-order DFS over increasing index sequences. P is independent; extending
// it by q either stays independent (recurse) or yields a unique dependency,
// which is a circuit exactly when its certificate has full support. Pre-order
// on supports is lexicographic order, and no superset of a dependent set is a
// circuit, so the first hit is the lexicographically smallest circuit.
struct CircuitSearch {
    const std::vector<VecQ>& forms;
    int n;
    std::vector<int> stack;
    std::optional<Circuit> found;

    explicit CircuitSearch(const std::vector<VecQ>& f)
        : forms(f), n(static_cast<int>(f.size())) {}

    bool descend() {
        int start = stack.empty() ? 0 : stack.back() + 1;
        for (int q = start; q < n; ++q) {
            stack.push_back(q);
            std::vector<VecQ> rows;
            rows.reserve(stack.size());
            for (int i : stack) rows.push_back(forms[i]);
            Subspace ker = kernel(MatQ::from_rows(rows).transpose());
            if (ker.dim() == 0) {
                if (descend()) return true;
            } else {
                const VecQ& cert = ker.basis().front();
                bool full_support =
                    std::none_of(cert.begin(), cert.end(), [](const Rat& c) { return c == 0; });
                if (full_support) {
                    found = Circuit{stack, primitive_certificate(cert)};
                    return true;
                }
            }
            stack.pop_back();
        }
        return false;
    }
};

}  // namespace

std::optional<Circuit> find_circuit(const std::vector<VecQ>& forms) {
    if (forms.empty()) return std::nullopt;
    size_t width = forms.front().size();
    for (const VecQ& f : forms)
        if (f.size() != width) throw DimensionMismatch("find_circuit: ragged covectors");
    CircuitSearch search(forms);
    search.descend();
    return search.found;
}

InnerProductFamily InnerProductFamily::with_block(MatQ block) {
    if (block.rows() != block.cols()) throw DimensionMismatch("Gram block must be square");
    for (int i = 0; i < block.rows(); ++i)
        for (int j = 0; j < i; ++j)
            if (block.at(i, j) != block.at(j, i)) throw NotSPD("Gram block not symmetric");
    for (int m = 1; m <= block.rows(); ++m) {
        MatQ lead(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) lead.at(i, j) = block.at(i, j);
        if (determinant(lead) <= 0)
            throw NotSPD("leading principal minor " + std::to_string(m) + " not positive");
    }
    return InnerProductFamily(std::move(block));
}

MatQ InnerProductFamily::gram(int k) const {
    if (k < 0) throw DimensionMismatch("gram: negative dimension");
    MatQ g = MatQ::identity(k);
    int b = std::min(k, block_.rows());
    for (int i = 0; i < b; ++i)
        for (int j = 0; j < b; ++j) g.at(i, j) = block_.at(i, j);
    return g;
}

Rat InnerProductFamily::inner(const VecQ& u, const VecQ& v) const {
    if (u.size() != v.size()) throw DimensionMismatch("inner: size mismatch");
    return dot(u, gram(static_cast<int>(u.size())).apply(v));
}

VecQ InnerProductFamily::riesz_vector(const VecQ& covector) const {
    int k = static_cast<int>(covector.size());
    return solve(gram(k), covector);
}

Rat InnerProductFamily::dual_inner(const VecQ& l1, const VecQ& l2) const {
    if (l1.size() != l2.size()) throw DimensionMismatch("dual_inner: size mismatch");
    return dot(l1, riesz_vector(l2));
}

Subspace InnerProductFamily::orth_complement_dual(const Subspace& covectors) const {
    if (covectors.dim() == 0) return Subspace::full(covectors.ambient());
    std::vector<VecQ> rows;
    rows.reserve(covectors.dim());
    for (const VecQ& w : covectors.basis()) rows.push_back(riesz_vector(w));
    return kernel(MatQ::from_rows(rows));
}

}  // namespace meroq
