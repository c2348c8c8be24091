#pragma once

#include "katofan/matrix.hpp"

#include <vector>

namespace katofan {

/// V-representation computed by the double description method:
/// the set {x : <h,x> >= 0 for all h} equals cone(rays) + span(lineality).
struct DDResult {
    std::vector<VecI> rays;       // extreme rays, primitive
    std::vector<VecI> lineality;  // lattice basis of the lineality space
};

DDResult dd_from_inequalities(int n, const std::vector<VecI>& ineqs);

/// Rational polyhedral cone in Z^rank, kept in both representations.
/// rays are the extreme rays of the pointed part; a nonempty lineality
/// basis means the cone is not strictly convex.
struct Cone {
    int rank = 0;
    std::vector<VecI> rays;
    std::vector<VecI> lineality;
    std::vector<VecI> ineqs;  // equations of the span appear as +/- pairs

    static Cone from_rays(int rank, std::vector<VecI> generators);
    static Cone from_inequalities(int rank, std::vector<VecI> ineqs);
    static Cone zero(int rank) { return from_rays(rank, {}); }

    bool is_pointed() const { return lineality.empty(); }
    int dim() const;

    bool contains(const VecI& x) const;
    bool contains_q(const VecQ& x) const;
    /// generator list with lineality expanded to +/- pairs
    std::vector<VecI> generator_list() const;
};

bool cone_eq(const Cone& a, const Cone& b);

/// sigma^vee = {v : <u,v> >= 0 for all u in sigma}
Cone dual_cone(const Cone& sigma);

/// Face lattice of a pointed cone; each face is the sorted list of indices
/// of the extreme rays it contains. faces[0] is the apex once present.
struct FaceLattice {
    std::vector<std::vector<int>> faces;  // sorted by (size, lex)
    int face_index(const std::vector<int>& rays) const;
    bool leq(int a, int b) const;  // face a contained in face b
};

FaceLattice face_lattice(const Cone& sigma);

int face_dim(const Cone& sigma, const std::vector<int>& face);

/// A strictly positive integer grading on cone(gens): <w, g> > 0 for every
/// nonzero generator. Requires cone(gens) pointed.
VecI positive_grading(int n, const std::vector<VecI>& gens);

/// Hilbert basis of the saturated monoid C ∩ Z^n for a pointed cone C.
/// Gordon-style: lattice points of fundamental parallelepipeds of a
/// triangulation, then reduction to irreducibles.
std::vector<VecI> hilbert_basis_of_cone(const Cone& c);

}  // namespace katofan
