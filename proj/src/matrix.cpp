#include "katofan/matrix.hpp"

namespace katofan {

IntegerMatrix IntegerMatrix::identity(int n) {
    IntegerMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<VecI>& rs) {
    if (rs.empty()) return IntegerMatrix(0, 0);
    IntegerMatrix m(int(rs.size()), int(rs[0].size()));
    for (int i = 0; i < m.rows; ++i) {
        if (int(rs[i].size()) != m.cols) throw std::invalid_argument("ragged rows");
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = rs[i][j];
    }
    return m;
}

IntegerMatrix IntegerMatrix::from_cols(const std::vector<VecI>& cs) {
    if (cs.empty()) return IntegerMatrix(0, 0);
    IntegerMatrix m(int(cs[0].size()), int(cs.size()));
    for (int j = 0; j < m.cols; ++j) {
        if (int(cs[j].size()) != m.rows) throw std::invalid_argument("ragged cols");
        for (int i = 0; i < m.rows; ++i) m.at(i, j) = cs[j][i];
    }
    return m;
}

VecI IntegerMatrix::row(int i) const {
    VecI r(cols);
    for (int j = 0; j < cols; ++j) r[j] = at(i, j);
    return r;
}

VecI IntegerMatrix::col(int j) const {
    VecI c(rows);
    for (int i = 0; i < rows; ++i) c[i] = at(i, j);
    return c;
}

std::vector<VecI> IntegerMatrix::row_list() const {
    std::vector<VecI> rs;
    rs.reserve(rows);
    for (int i = 0; i < rows; ++i) rs.push_back(row(i));
    return rs;
}

std::vector<VecI> IntegerMatrix::col_list() const {
    std::vector<VecI> cs;
    cs.reserve(cols);
    for (int j = 0; j < cols; ++j) cs.push_back(col(j));
    return cs;
}

IntegerMatrix IntegerMatrix::transpose() const {
    IntegerMatrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

VecI IntegerMatrix::apply(const VecI& v) const {
    if (int(v.size()) != cols) throw std::invalid_argument("dimension mismatch");
    VecI r(rows, Int(0));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r[i] += at(i, j) * v[j];
    return r;
}

VecQ IntegerMatrix::apply_q(const VecQ& v) const {
    if (int(v.size()) != cols) throw std::invalid_argument("dimension mismatch");
    VecQ r(rows, Rat(0));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r[i] += Rat(at(i, j)) * v[j];
    return r;
}

IntegerMatrix mul(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("dimension mismatch");
    IntegerMatrix c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols; ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

Int determinant(const IntegerMatrix& a) {
    if (a.rows != a.cols) throw std::invalid_argument("determinant of non-square");
    int n = a.rows;
    if (n == 0) return 1;
    IntegerMatrix m = a;
    Int prev = 1;
    int sgn = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sgn = -sgn;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = num / prev;  // exact by Bareiss
            }
        prev = m.at(k, k);
    }
    return sgn > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

namespace {

struct SNFWork {
    IntegerMatrix m, L, R, Linv, Rinv;

    // row i <- row i + c * row j  (L tracks it, Linv gets the inverse column op)
    void row_add(int i, int j, const Int& c) {
        for (int k = 0; k < m.cols; ++k) m.at(i, k) += c * m.at(j, k);
        for (int k = 0; k < L.cols; ++k) L.at(i, k) += c * L.at(j, k);
        for (int k = 0; k < Linv.rows; ++k) Linv.at(k, j) -= c * Linv.at(k, i);
    }
    void col_add(int j, int i, const Int& c) {
        for (int k = 0; k < m.rows; ++k) m.at(k, j) += c * m.at(k, i);
        for (int k = 0; k < R.rows; ++k) R.at(k, j) += c * R.at(k, i);
        for (int k = 0; k < Rinv.cols; ++k) Rinv.at(i, k) -= c * Rinv.at(j, k);
    }
    void row_swap(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < m.cols; ++k) std::swap(m.at(i, k), m.at(j, k));
        for (int k = 0; k < L.cols; ++k) std::swap(L.at(i, k), L.at(j, k));
        for (int k = 0; k < Linv.rows; ++k) std::swap(Linv.at(k, i), Linv.at(k, j));
    }
    void col_swap(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < m.rows; ++k) std::swap(m.at(k, i), m.at(k, j));
        for (int k = 0; k < R.rows; ++k) std::swap(R.at(k, i), R.at(k, j));
        for (int k = 0; k < Rinv.cols; ++k) std::swap(Rinv.at(i, k), Rinv.at(j, k));
    }
    void row_negate(int i) {
        for (int k = 0; k < m.cols; ++k) m.at(i, k) = -m.at(i, k);
        for (int k = 0; k < L.cols; ++k) L.at(i, k) = -L.at(i, k);
        for (int k = 0; k < Linv.rows; ++k) Linv.at(k, i) = -Linv.at(k, i);
    }
};

}  // namespace

SNFDecomposition smith_normal_form(const IntegerMatrix& a) {
    SNFWork w;
    w.m = a;
    w.L = IntegerMatrix::identity(a.rows);
    w.Linv = IntegerMatrix::identity(a.rows);
    w.R = IntegerMatrix::identity(a.cols);
    w.Rinv = IntegerMatrix::identity(a.cols);

    int n = std::min(a.rows, a.cols);
    for (int t = 0; t < n; ++t) {
        for (;;) {
            // smallest nonzero pivot in the trailing block
            int pi = -1, pj = -1;
            Int best = 0;
            for (int i = t; i < a.rows; ++i)
                for (int j = t; j < a.cols; ++j) {
                    Int v = abs_int(w.m.at(i, j));
                    if (v != 0 && (pi < 0 || v < best)) { best = v; pi = i; pj = j; }
                }
            if (pi < 0) break;  // trailing block zero: done, diag entries stay 0
            w.row_swap(t, pi);
            w.col_swap(t, pj);
            if (w.m.at(t, t) < 0) w.row_negate(t);

            bool clean = true;
            for (int i = t + 1; i < a.rows; ++i) {
                Int q = w.m.at(i, t) / w.m.at(t, t);
                if (q != 0) w.row_add(i, t, -q);
                if (w.m.at(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < a.cols; ++j) {
                Int q = w.m.at(t, j) / w.m.at(t, t);
                if (q != 0) w.col_add(j, t, -q);
                if (w.m.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;  // remainders became new smaller pivots

            // enforce divisibility of the rest of the block by the pivot
            bool divides = true;
            for (int i = t + 1; i < a.rows && divides; ++i)
                for (int j = t + 1; j < a.cols; ++j)
                    if (w.m.at(i, j) % w.m.at(t, t) != 0) {
                        w.row_add(t, i, Int(1));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
    }

    SNFDecomposition out;
    out.left = std::move(w.L);
    out.left_inv = std::move(w.Linv);
    out.right = std::move(w.R);
    out.right_inv = std::move(w.Rinv);
    out.diag.resize(n);
    for (int t = 0; t < n; ++t) out.diag[t] = w.m.at(t, t);
    return out;
}

IntegerMatrix kernel_basis(const IntegerMatrix& a) {
    SNFDecomposition s = smith_normal_form(a);
    int n = std::min(a.rows, a.cols);
    std::vector<VecI> cols;
    for (int j = 0; j < a.cols; ++j)
        if (j >= n || s.diag[j] == 0) cols.push_back(s.right.col(j));
    if (cols.empty()) return IntegerMatrix(a.cols, 0);
    return IntegerMatrix::from_cols(cols);
}

CokernelInvariants cokernel_invariants(const IntegerMatrix& a) {
    SNFDecomposition s = smith_normal_form(a);
    CokernelInvariants out;
    int nonzero = 0;
    for (const Int& d : s.diag)
        if (d != 0) {
            ++nonzero;
            if (d > 1) out.torsion.push_back(d);
        }
    out.free_rank = a.rows - nonzero;
    return out;
}

int rank_q(const IntegerMatrix& a) {
    SNFDecomposition s = smith_normal_form(a);
    int r = 0;
    for (const Int& d : s.diag)
        if (d != 0) ++r;
    return r;
}

std::optional<VecQ> solve_q(const IntegerMatrix& a, const VecQ& b) {
    SNFDecomposition s = smith_normal_form(a);
    int n = std::min(a.rows, a.cols);
    VecQ lb(a.rows, Rat(0));
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.rows; ++j) lb[i] += Rat(s.left.at(i, j)) * b[j];
    VecQ y(a.cols, Rat(0));
    for (int i = 0; i < a.rows; ++i) {
        Rat di = (i < n) ? Rat(s.diag[i]) : Rat(0);
        if (di == 0) {
            if (lb[i] != 0) return std::nullopt;
        } else {
            y[i] = lb[i] / di;
        }
    }
    VecQ x(a.cols, Rat(0));
    for (int i = 0; i < a.cols; ++i)
        for (int j = 0; j < a.cols; ++j) x[i] += Rat(s.right.at(i, j)) * y[j];
    return x;
}

std::optional<VecI> solve_z(const IntegerMatrix& a, const VecI& b) {
    SNFDecomposition s = smith_normal_form(a);
    int n = std::min(a.rows, a.cols);
    VecI lb = s.left.apply(b);
    VecI y(a.cols, Int(0));
    for (int i = 0; i < a.rows; ++i) {
        Int di = (i < n) ? s.diag[i] : Int(0);
        if (di == 0) {
            if (lb[i] != 0) return std::nullopt;
        } else {
            if (lb[i] % di != 0) return std::nullopt;
            y[i] = lb[i] / di;
        }
    }
    return s.right.apply(y);
}

bool lattice_contains(const std::vector<VecI>& basis, const VecI& v) {
    if (basis.empty()) return is_zero(v);
    return solve_z(IntegerMatrix::from_cols(basis), v).has_value();
}

std::vector<VecI> saturation_basis(const std::vector<VecI>& vectors, int n) {
    if (vectors.empty()) return {};
    IntegerMatrix m = IntegerMatrix::from_cols(vectors);
    SNFDecomposition s = smith_normal_form(m);
    int k = std::min(m.rows, m.cols);
    std::vector<VecI> basis;
    for (int i = 0; i < k; ++i)
        if (s.diag[i] != 0) basis.push_back(s.left_inv.col(i));
    (void)n;
    return basis;
}

LatticeQuotient lattice_quotient(const std::vector<VecI>& saturated_basis, int n) {
    LatticeQuotient q;
    if (saturated_basis.empty()) {
        q.proj = IntegerMatrix::identity(n);
        q.section = IntegerMatrix::identity(n);
        return q;
    }
    IntegerMatrix m = IntegerMatrix::from_cols(saturated_basis);
    SNFDecomposition s = smith_normal_form(m);
    int k = int(saturated_basis.size());
    for (int i = 0; i < k; ++i)
        if (s.diag[i] != 1)
            throw std::invalid_argument("lattice_quotient: basis not saturated");
    q.proj = IntegerMatrix(n - k, n);
    for (int i = 0; i < n - k; ++i)
        for (int j = 0; j < n; ++j) q.proj.at(i, j) = s.left.at(k + i, j);
    q.section = IntegerMatrix(n, n - k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n - k; ++j) q.section.at(i, j) = s.left_inv.at(i, k + j);
    return q;
}

}  // namespace katofan
