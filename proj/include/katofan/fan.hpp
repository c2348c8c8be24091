#pragma once

#include "katofan/monoid.hpp"

#include <map>
#include <memory>
#include <string>

namespace katofan {

/// One affine piece Spec P of a Kato fan, with per-prime stalk data.
struct FanChart {
    std::string name;
    AffineMonoid monoid;  // sharp, fine, saturated
    std::vector<PrimeIdeal> prime_list;
    std::vector<SharpQuotient> stalks;  // aligned with prime_list

    int prime_index(const std::vector<int>& face_gens) const;
};

struct FanPointMember {
    int chart = -1;
    int prime = -1;
    bool operator<(const FanPointMember& o) const {
        return std::tie(chart, prime) < std::tie(o.chart, o.prime);
    }
    bool operator==(const FanPointMember& o) const {
        return chart == o.chart && prime == o.prime;
    }
};

struct FanPoint {
    std::string id;
    AffineMonoid stalk;  // sharp, Hilbert-basis presented, own coordinates
    std::vector<FanPointMember> members;
    std::vector<IntegerMatrix> member_iso;  // member stalk coords -> rep coords
    int rep_member = 0;
    std::vector<int> specializes_to;  // indices of all strictly more special points
};

class KatoFan {
public:
    std::string name;
    std::vector<FanChart> charts;
    std::vector<FanPoint> points;

    bool has_charts() const { return !charts.empty(); }
    int point_count() const { return int(points.size()); }

    int point_index(const std::string& id) const;        // -1 if absent
    int point_of(int chart, int prime) const;            // -1 if absent
    bool specializes(int x, int y) const;                // y in closure(x)
    std::vector<int> generizations(int x) const;         // minimal affine open, incl. x
    std::vector<int> closure(int x) const;               // incl. x
    std::vector<int> maximal_points_above(int x) const;  // maximal points in closure(x)
    int generic_point() const;  // unique minimal point, -1 if not unique

    /// stalk(x) -> stalk(y) for a generization y of x
    IntegerMatrix generization_map(int x, int y) const;

    /// Hilbert-basis indices of stalk(m) lying on the face cut out by the
    /// generization x of m.
    std::vector<int> stalk_face_in(int m, int x) const;

    /// The generization of x whose prime in stalk(x) has the given face,
    /// -1 when the index set is not a face.
    int generization_with_stalk_face(int x, const std::vector<int>& face) const;

    void rebuild_index();

private:
    std::map<std::pair<int, int>, int> member_index_;
    std::map<std::string, int> id_index_;
};

using FanPtr = std::shared_ptr<const KatoFan>;

/// Identifies the affine open subfans anchored at one prime per chart via a
/// strict isomorphism of their stalks (lattice coordinates of stalk_a to
/// stalk_b).
struct GluingEntry {
    int chart_a = 0;
    std::vector<int> face_a;  // generator indices of the anchor face in chart_a
    int chart_b = 0;
    std::vector<int> face_b;
    IntegerMatrix stalk_iso;
};

struct GluingDatum {
    std::vector<GluingEntry> entries;
};

KatoFan spec(const AffineMonoid& p, const std::string& name = "spec");

KatoFan glue(const std::vector<AffineMonoid>& charts, const GluingDatum& datum,
             const std::string& name = "fan",
             const std::vector<std::string>& chart_names = {});

/// F_{A^k} (k<=3), F_{P^1}, F_{P^2}, F_{P^1xP^1} under the names
/// A1, A2, A3, P1, P2, P1xP1.
KatoFan builtin_fan(const std::string& name);

bool check_fine_saturated(const KatoFan& f);

struct FanMorphism {
    FanPtr source;
    FanPtr target;
    std::vector<int> point_map;
    std::vector<IntegerMatrix> local_homs;  // target stalk coords -> source stalk coords
};

FanMorphism identity_morphism(const FanPtr& f);

/// Checks order preservation, that every local hom carries the target stalk
/// monoid into the source stalk monoid and is local, and the commuting
/// squares with generization maps. Throws DomainError when violated.
void validate_fan_morphism(const FanMorphism& f);

bool is_strict(const FanMorphism& f);

/// Spec applied to a monoid homomorphism phi: Q -> P gives Spec P -> Spec Q.
FanMorphism spec_morphism(const FanPtr& spec_p, const FanPtr& spec_q,
                          const IntegerMatrix& phi);

/// Exhaustive search for an order-preserving bijection matching stalks up to
/// isomorphism. Desk scale only.
bool fan_isomorphic(const KatoFan& f, const KatoFan& g);

/// A face-closed collection of cones in a common lattice, with the fan point
/// built for each cone and the coordinate bridges between the lattice M and
/// each chart's stalk coordinates.
struct PolyhedralFanData {
    KatoFan fan;
    std::vector<Cone> cones;
    std::vector<int> cone_point;      // fan point index per cone
    std::vector<int> maximal_cones;   // cone index per chart
    std::vector<IntegerMatrix> chart_proj;     // M -> chart coordinates
    std::vector<IntegerMatrix> chart_section;  // chart coordinates -> M

    int cone_of_point(int point) const;
    IntegerMatrix to_M(int point) const;    // stalk coords -> M
    IntegerMatrix from_M(int point) const;  // M -> stalk coords
};

PolyhedralFanData fan_from_polyhedral_fan(const std::vector<Cone>& cones,
                                          const std::string& name = "fan");

/// Morphism of Kato fans induced by a lattice map carrying each cone of the
/// source fan into some cone of the target fan.
FanMorphism toric_fan_morphism(const std::shared_ptr<const PolyhedralFanData>& src,
                               const std::shared_ptr<const PolyhedralFanData>& dst,
                               const IntegerMatrix& lattice_map);

/// Standard toric fans used by the examples.
std::vector<Cone> standard_fan_A1();
std::vector<Cone> standard_fan_A2();
std::vector<Cone> standard_fan_P1();
std::vector<Cone> standard_fan_P2();
std::vector<Cone> standard_fan_P1xP1();

/// Integer inverse of a unimodular matrix.
IntegerMatrix inverse_unimodular(const IntegerMatrix& m);

std::string stalk_label(const AffineMonoid& m);

}  // namespace katofan
