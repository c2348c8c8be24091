#pragma once

#include "katofan/extended.hpp"
#include "katofan/fan.hpp"

namespace katofan {

/// A point of the extended cone complex of a Kato fan: an additive
/// homomorphism from a stalk monoid to the extended nonnegative rationals,
/// stored in canonical form. The anchor is the reduction point r(u), so all
/// values on the anchor stalk's Hilbert basis are positive or infinite;
/// rho is the structure point u({inf}).
struct ComplexPoint {
    FanPtr fan;
    int anchor = -1;
    std::vector<ExtendedValue> values;
    int rho = -1;

    bool same_point(const ComplexPoint& o) const {
        return anchor == o.anchor && values == o.values;
    }
};

/// Do values on the Hilbert basis extend to an additive homomorphism
/// monoid -> extended nonnegative rationals? Throws DomainError with a
/// witness relation when they do not.
void validate_hom_values(const AffineMonoid& monoid,
                         const std::vector<ExtendedValue>& values);

/// The extension evaluated at a monoid element.
ExtendedValue eval_hom(const AffineMonoid& monoid,
                       const std::vector<ExtendedValue>& values,
                       const VecI& element);

/// Build the point with the given values on the Hilbert basis of the stalk
/// at the fan point `open_point` and put it in canonical form.
/// Throws DomainError when the values do not extend to a homomorphism,
/// with a witness relation in the message.
ComplexPoint point_from_hom(const FanPtr& fan, int open_point,
                            const std::vector<ExtendedValue>& values);

/// u evaluated at a monoid element of the anchor stalk.
ExtendedValue evaluate(const ComplexPoint& u, const VecI& element);

/// r(u): the prime generated by {u > 0}.
int reduction(const ComplexPoint& u);

/// rho(u): the prime generated by {u = inf}.
int structure_point(const ComplexPoint& u);

/// u composed with the local homomorphisms of f (the map of extended cone
/// complexes induced by f).
ComplexPoint map_point(const FanMorphism& f, const ComplexPoint& u);

/// One stratum rho^{-1}(x) of the extended complex, presented by its
/// quotient-cone pieces, one per maximal point of the closure of x.
struct Stratum {
    int fan_point = -1;
    int dim = 0;
    std::vector<int> piece_points;  // maximal fan points carrying the pieces
    std::vector<Cone> pieces;       // quotient cones sigma_m / tau_x
};

struct StrataReport {
    std::vector<Stratum> strata;  // one per fan point, fan point order
};

StrataReport extended_complex(const FanPtr& fan);

/// Colimit data of two strict surjective arrows between extended complexes.
struct GeneralizedComplex {
    FanPtr base;
    FanPtr cover;
    FanMorphism arrow_a;  // cover -> base
    FanMorphism arrow_b;

    int closure_depth = 16;
};

/// Throws unless both arrows are strict and surjective on points.
void validate_generalized_complex(const GeneralizedComplex& g);

/// Orbit of u under the equivalence generated by the two arrows.
std::vector<ComplexPoint> quotient_orbit(const GeneralizedComplex& g,
                                         const ComplexPoint& u);

bool quotient_points_equal(const GeneralizedComplex& g, const ComplexPoint& x,
                           const ComplexPoint& y);

/// The swap-action quotient of Spec N^2 from the running examples:
/// cover = base ⊔ base, one arrow folds by the identity, the other folds by
/// the coordinate swap automorphism.
GeneralizedComplex swap_quotient_A2();

/// The nodal-cubic descent datum: base = the five-point fan of the pulled
/// back divisor, cover = base ⊔ base, second arrow folds by the deck
/// transformation exchanging the two branches.
GeneralizedComplex nodal_cubic_quotient();

std::string point_repr(const ComplexPoint& u);

}  // namespace katofan
