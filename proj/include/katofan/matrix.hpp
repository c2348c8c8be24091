#pragma once

#include "katofan/numeric.hpp"

#include <optional>
#include <stdexcept>

namespace katofan {

/// Dense integer matrix, row-major, exact arbitrary-precision entries.
struct IntegerMatrix {
    int rows = 0;
    int cols = 0;
    VecI entries;  // rows*cols, row-major

    IntegerMatrix() = default;
    IntegerMatrix(int r, int c) : rows(r), cols(c), entries(size_t(r) * c, Int(0)) {}

    static IntegerMatrix identity(int n);
    static IntegerMatrix from_rows(const std::vector<VecI>& rs);
    static IntegerMatrix from_cols(const std::vector<VecI>& cs);

    Int& at(int i, int j) { return entries[size_t(i) * cols + j]; }
    const Int& at(int i, int j) const { return entries[size_t(i) * cols + j]; }

    VecI row(int i) const;
    VecI col(int j) const;
    std::vector<VecI> row_list() const;
    std::vector<VecI> col_list() const;

    IntegerMatrix transpose() const;
    VecI apply(const VecI& v) const;       // A*v
    VecQ apply_q(const VecQ& v) const;     // A*v over the rationals

    bool operator==(const IntegerMatrix& o) const {
        return rows == o.rows && cols == o.cols && entries == o.entries;
    }
};

IntegerMatrix mul(const IntegerMatrix& a, const IntegerMatrix& b);

/// Determinant by fraction-free (Bareiss) elimination. Square input.
Int determinant(const IntegerMatrix& a);

/// Smith normal form data: left*A*right is diagonal with diag[i] | diag[i+1].
/// left, right are unimodular; inverses are tracked alongside.
struct SNFDecomposition {
    IntegerMatrix left;        // rows x rows
    IntegerMatrix right;       // cols x cols
    IntegerMatrix left_inv;    // left^-1
    IntegerMatrix right_inv;   // right^-1
    VecI diag;                 // min(rows,cols) nonnegative entries
};

SNFDecomposition smith_normal_form(const IntegerMatrix& a);

/// Basis of the integer kernel lattice {x : A x = 0}, as matrix columns.
/// The lattice is saturated (cokernel of the basis matrix is torsion-free).
IntegerMatrix kernel_basis(const IntegerMatrix& a);

struct CokernelInvariants {
    int free_rank = 0;
    VecI torsion;  // invariant factors > 1, each dividing the next
};

/// Structure of coker(A) = Z^rows / column span of A.
CokernelInvariants cokernel_invariants(const IntegerMatrix& a);

/// Rank over Q.
int rank_q(const IntegerMatrix& a);

/// One rational solution of A x = b, if the system is consistent.
std::optional<VecQ> solve_q(const IntegerMatrix& a, const VecQ& b);

/// One integer solution of A x = b, if any exists.
std::optional<VecI> solve_z(const IntegerMatrix& a, const VecI& b);

/// Does v lie in the lattice spanned by the given vectors?
bool lattice_contains(const std::vector<VecI>& basis, const VecI& v);

/// Basis of the saturation span_Q(vectors) ∩ Z^n.
std::vector<VecI> saturation_basis(const std::vector<VecI>& vectors, int n);

/// Projection data for the quotient Z^n -> Z^n / L where L is a saturated
/// sublattice: proj is (n-k) x n with kernel exactly L, and proj*section = I.
struct LatticeQuotient {
    IntegerMatrix proj;
    IntegerMatrix section;
};

LatticeQuotient lattice_quotient(const std::vector<VecI>& saturated_basis, int n);

}  // namespace katofan
