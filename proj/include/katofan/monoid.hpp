#pragma once

#include "katofan/cone.hpp"
#include "katofan/error.hpp"

#include <functional>
#include <optional>

namespace katofan {

/// Fine monoid presented by lattice generators plus split-off free units and
/// a torsion group given by invariant factors. The lattice part lives in
/// Z^ambient_rank; the represented monoid is
///   <generators>  (+)  Z^unit_rank  (+)  Z/d_1 x ... x Z/d_t .
struct AffineMonoid {
    int ambient_rank = 0;
    std::vector<VecI> generators;  // canonical: nonzero, primitive-kept-as-given, lex sorted
    VecI torsion;                  // invariant factors > 1
    int unit_rank = 0;

    static AffineMonoid from_generators(int rank, std::vector<VecI> gens,
                                        VecI torsion = {}, int unit_rank = 0);
    static AffineMonoid free_monoid(int rank);  // N^rank
    static AffineMonoid zero();                 // the trivial monoid

    bool operator==(const AffineMonoid& o) const {
        return ambient_rank == o.ambient_rank && generators == o.generators &&
               torsion == o.torsion && unit_rank == o.unit_rank;
    }
};

struct MonoidElement {
    VecI lattice_part;
    VecI torsion_part;  // residues, one per invariant factor
    VecI unit_part;
};

/// Prime ideal stored by its complementary face: the indices of the
/// generators that lie on the face.
struct PrimeIdeal {
    std::vector<int> face_gens;  // sorted generator indices
    bool operator==(const PrimeIdeal& o) const { return face_gens == o.face_gens; }
};

/// Homomorphism of split monoids; lattice_map carries the source lattice
/// part into the target lattice coordinates, unit_map into the target's
/// free unit coordinates, torsion_map into the target torsion residues.
struct MonoidHom {
    IntegerMatrix lattice_map;
    IntegerMatrix unit_map;
    IntegerMatrix torsion_map;

    static MonoidHom lattice_only(IntegerMatrix m);
};

bool is_zero_hom_data(const MonoidHom& h);

/// v in <generators of P> as a nonnegative combination? Lattice part only.
bool contains(const AffineMonoid& p, const VecI& v);

/// Enumerate nonnegative representations of v over the lattice generators,
/// feeding each coefficient vector to the callback; stops when it returns
/// true. Returns whether any callback accepted.
bool for_each_representation(const std::vector<VecI>& gens, const VecI& v,
                             const std::function<bool(const VecI&)>& cb);

/// Indices of lattice generators that are units of the lattice part.
std::vector<int> unit_generator_indices(const AffineMonoid& p);

bool is_sharp(const AffineMonoid& p);

/// Saturation in the ambient lattice: cone(P) ∩ Z^n, units split off when
/// the cone has lineality. Idempotent and extensive.
AffineMonoid saturate(const AffineMonoid& p);

bool is_saturated(const AffineMonoid& p);

/// Unique minimal generating set of the sharp lattice part, lex sorted.
/// Throws if the lattice part contains units.
std::vector<VecI> hilbert_basis(const AffineMonoid& p);

struct SharpDecomposition {
    AffineMonoid sharp;  // unit_rank 0, no torsion, Hilbert-basis presented
    int unit_rank = 0;
    VecI unit_torsion;
};

/// Lemma-style splitting P = sharp ⊕ units ⊕ torsion; requires P saturated.
SharpDecomposition decompose_sharp(const AffineMonoid& p);

/// One prime per face of cone(P), ordered generic-first: sorted by
/// (face size descending, lex). Requires P fine and saturated.
std::vector<PrimeIdeal> primes(const AffineMonoid& p);

/// Ideal inclusion a ⊆ b (reverse inclusion of faces).
bool prime_subset(const PrimeIdeal& a, const PrimeIdeal& b);

bool is_prime_of(const AffineMonoid& p, const PrimeIdeal& q);

struct Localization {
    AffineMonoid monoid;  // units extended by the groupified face
    MonoidHom canonical;  // P -> P_p in split coordinates
};

Localization localize(const AffineMonoid& p, const PrimeIdeal& q);

/// The stalk monoid P_q / P_q^* of Spec P at q, Hilbert-basis presented in
/// its own full-rank lattice coordinates; also returns the projection from
/// the ambient lattice of P and a section of it.
struct SharpQuotient {
    AffineMonoid monoid;      // sharp, rank = rank of its own lattice
    IntegerMatrix proj;       // ambient -> stalk coordinates
    IntegerMatrix section;    // stalk -> ambient, proj*section = I
};

SharpQuotient sharp_quotient_at(const AffineMonoid& p, const PrimeIdeal& q);

/// Does h map every generator of source into target (membership check)?
bool is_monoid_hom(const MonoidHom& h, const AffineMonoid& source,
                   const AffineMonoid& target);

/// phi(m_source) ⊆ m_target for sharp source and target. Throws DomainError
/// if h is not a homomorphism into the target.
bool is_local_hom(const MonoidHom& h, const AffineMonoid& source,
                  const AffineMonoid& target);

/// Unimodular matrix carrying one Hilbert basis onto the other, if the
/// sharp monoids are isomorphic. Exhaustive search, desk scale.
std::optional<IntegerMatrix> sharp_monoid_iso(const std::vector<VecI>& hb_a,
                                              const std::vector<VecI>& hb_b);

/// Isomorphism test for split monoids: matching unit ranks, torsion, and
/// sharp parts related by a unimodular map.
bool monoid_isomorphic(const AffineMonoid& a, const AffineMonoid& b);

}  // namespace katofan
