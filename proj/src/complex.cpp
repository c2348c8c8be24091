#include "katofan/complex.hpp"

#include <deque>
#include <set>

namespace katofan {

namespace {

std::vector<int> zero_value_face(const std::vector<ExtendedValue>& vals) {
    std::vector<int> face;
    for (size_t i = 0; i < vals.size(); ++i)
        if (vals[i].is_zero()) face.push_back(int(i));
    return face;
}

std::vector<int> finite_value_face(const std::vector<ExtendedValue>& vals) {
    std::vector<int> face;
    for (size_t i = 0; i < vals.size(); ++i)
        if (!vals[i].infinite) face.push_back(int(i));
    return face;
}

ExtendedValue combine(const std::vector<ExtendedValue>& vals, const VecI& coeffs) {
    ExtendedValue out = ExtendedValue::finite(0);
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        out = out + scale(coeffs[i], vals[i]);
    }
    return out;
}

// transport values along a surjection of stalk monoids: the value at an
// element of the image is the value of any nonnegative preimage combination
std::vector<ExtendedValue> transport_values(const std::vector<VecI>& gen_images,
                                            const std::vector<ExtendedValue>& vals,
                                            const std::vector<VecI>& target_hb) {
    std::vector<VecI> gens;
    std::vector<int> origin;
    for (size_t i = 0; i < gen_images.size(); ++i)
        if (!is_zero(gen_images[i])) {
            gens.push_back(gen_images[i]);
            origin.push_back(int(i));
        }
    std::vector<ExtendedValue> out;
    for (const VecI& h : target_hb) {
        ExtendedValue got;
        bool found = for_each_representation(gens, h, [&](const VecI& a) {
            VecI full(vals.size(), Int(0));
            for (size_t i = 0; i < a.size(); ++i) full[origin[i]] = a[i];
            got = combine(vals, full);
            return true;
        });
        if (!found)
            throw DomainError("internal", "transport_values: element has no preimage");
        out.push_back(got);
    }
    return out;
}

}  // namespace

void validate_hom_values(const AffineMonoid& monoid,
                         const std::vector<ExtendedValue>& values) {
    const std::vector<VecI>& hb = monoid.generators;
    if (values.size() != hb.size())
        throw std::invalid_argument("one value per Hilbert basis element expected");
    for (const ExtendedValue& v : values)
        if (!v.infinite && v.value < 0)
            throw std::invalid_argument("negative value");

    std::vector<int> fin = finite_value_face(values);
    if (!hb.empty()) {
        Cone c = Cone::from_rays(monoid.ambient_rank, hb);
        // inequalities vanishing on every finite-valued generator cut out the
        // smallest face containing them; no infinite generator may lie on it
        std::vector<VecI> tight;
        for (const VecI& h : c.ineqs) {
            bool t = true;
            for (int i : fin)
                if (dot(h, hb[i]) != 0) { t = false; break; }
            if (t) tight.push_back(h);
        }
        for (size_t j = 0; j < hb.size(); ++j) {
            if (!values[j].infinite) continue;
            bool on_face = true;
            for (const VecI& h : tight)
                if (dot(h, hb[j]) != 0) { on_face = false; break; }
            if (on_face)
                throw DomainError(
                    "hom-face",
                    "values do not extend: generator " + to_string(hb[j]) +
                        " is infinite but lies on the face spanned by the "
                        "finite-valued generators");
        }
        // additive consistency on the finite part
        if (!fin.empty()) {
            std::vector<VecI> cols;
            for (int i : fin) cols.push_back(hb[i]);
            IntegerMatrix k = kernel_basis(IntegerMatrix::from_cols(cols));
            for (int j = 0; j < k.cols; ++j) {
                VecI rel = k.col(j);
                Rat s = 0;
                for (size_t i = 0; i < rel.size(); ++i)
                    s += Rat(rel[i]) * values[fin[i]].value;
                if (s != 0) {
                    std::string lhs, rhs;
                    for (size_t i = 0; i < rel.size(); ++i) {
                        if (rel[i] > 0)
                            lhs += (lhs.empty() ? "" : " + ") + to_string(rel[i]) +
                                   "*" + to_string(hb[fin[i]]);
                        if (rel[i] < 0)
                            rhs += (rhs.empty() ? "" : " + ") + to_string(Int(-rel[i])) +
                                   "*" + to_string(hb[fin[i]]);
                    }
                    throw DomainError("hom-relation",
                                      "values violate the relation " + lhs + " = " + rhs);
                }
            }
        }
    }
}

ExtendedValue eval_hom(const AffineMonoid& monoid,
                       const std::vector<ExtendedValue>& values,
                       const VecI& element) {
    if (int(element.size()) != monoid.ambient_rank)
        throw std::invalid_argument("eval_hom: dimension mismatch");
    if (!contains(monoid, element))
        throw DomainError("outside-stalk",
                          "eval_hom: element is not in the monoid");
    if (is_zero(element)) return ExtendedValue::finite(0);

    std::vector<int> fin = finite_value_face(values);
    std::vector<VecI> fin_hb;
    for (int i : fin) fin_hb.push_back(monoid.generators[i]);
    AffineMonoid face = AffineMonoid::from_generators(monoid.ambient_rank, fin_hb);
    if (!contains(face, element)) return ExtendedValue::inf();
    if (fin_hb.empty()) return ExtendedValue::finite(0);

    IntegerMatrix rows = IntegerMatrix::from_rows(fin_hb);
    VecQ rhs;
    for (int i : fin) rhs.push_back(values[i].value);
    auto lambda = solve_q(rows, rhs);
    if (!lambda)
        throw DomainError("internal", "eval_hom: inconsistent values");
    Rat s = 0;
    for (size_t i = 0; i < lambda->size(); ++i)
        s += (*lambda)[i] * Rat(element[i]);
    return ExtendedValue::finite(s);
}

ComplexPoint point_from_hom(const FanPtr& fan, int open_point,
                            const std::vector<ExtendedValue>& values) {
    const AffineMonoid& stalk = fan->points.at(open_point).stalk;
    const std::vector<VecI>& hb = stalk.generators;
    validate_hom_values(stalk, values);

    // canonical form: anchor at the reduction point
    int y = fan->generization_with_stalk_face(open_point, zero_value_face(values));
    if (y < 0)
        throw DomainError("internal", "point_from_hom: zero set is not a face");
    ComplexPoint pt;
    pt.fan = fan;
    pt.anchor = y;
    if (y == open_point) {
        pt.values = values;
    } else {
        IntegerMatrix g = fan->generization_map(open_point, y);
        std::vector<VecI> images;
        for (const VecI& h : hb) images.push_back(g.apply(h));
        pt.values = transport_values(images, values,
                                     fan->points[y].stalk.generators);
    }
    pt.rho = fan->generization_with_stalk_face(y, finite_value_face(pt.values));
    if (pt.rho < 0)
        throw DomainError("internal", "point_from_hom: finite set is not a face");
    return pt;
}

ExtendedValue evaluate(const ComplexPoint& u, const VecI& element) {
    return eval_hom(u.fan->points[u.anchor].stalk, u.values, element);
}

int reduction(const ComplexPoint& u) { return u.anchor; }

int structure_point(const ComplexPoint& u) { return u.rho; }

ComplexPoint map_point(const FanMorphism& f, const ComplexPoint& u) {
    if (u.fan.get() != f.source.get())
        throw std::invalid_argument("map_point: point does not live on the source fan");
    int y = f.point_map[u.anchor];
    const IntegerMatrix& h = f.local_homs[u.anchor];
    ComplexPoint out;
    out.fan = f.target;
    out.anchor = y;
    for (const VecI& g : f.target->points[y].stalk.generators)
        out.values.push_back(evaluate(u, h.apply(g)));
    out.rho = f.target->generization_with_stalk_face(
        y, finite_value_face(out.values));
    if (out.rho < 0)
        throw DomainError("internal", "map_point: finite set is not a face");
    return out;
}

StrataReport extended_complex(const FanPtr& fan) {
    StrataReport report;
    for (int x = 0; x < fan->point_count(); ++x) {
        Stratum s;
        s.fan_point = x;
        for (int m : fan->maximal_points_above(x)) {
            const AffineMonoid& stalk_m = fan->points[m].stalk;
            int rm = stalk_m.ambient_rank;
            Cone sigma = dual_cone(Cone::from_rays(rm, stalk_m.generators));
            std::vector<int> face = fan->stalk_face_in(m, x);
            std::vector<VecI> hs = sigma.ineqs;
            for (int i : face) {
                hs.push_back(stalk_m.generators[i]);
                hs.push_back(negate(stalk_m.generators[i]));
            }
            Cone tau = Cone::from_inequalities(rm, hs);
            std::vector<VecI> span = saturation_basis(tau.generator_list(), rm);
            LatticeQuotient q = lattice_quotient(span, rm);
            std::vector<VecI> rays;
            for (const VecI& r : sigma.generator_list()) {
                VecI w = q.proj.apply(r);
                if (!is_zero(w)) rays.push_back(w);
            }
            s.piece_points.push_back(m);
            s.pieces.push_back(Cone::from_rays(rm - int(span.size()), rays));
        }
        for (const Cone& piece : s.pieces) s.dim = std::max(s.dim, piece.dim());
        report.strata.push_back(std::move(s));
    }
    return report;
}

void validate_generalized_complex(const GeneralizedComplex& g) {
    if (!is_strict(g.arrow_a) || !is_strict(g.arrow_b))
        throw DomainError("quotient-not-strict",
                          "generalized complex arrows must be strict");
    std::set<int> ia(g.arrow_a.point_map.begin(), g.arrow_a.point_map.end());
    std::set<int> ib(g.arrow_b.point_map.begin(), g.arrow_b.point_map.end());
    if (int(ia.size()) != g.base->point_count() ||
        int(ib.size()) != g.base->point_count())
        throw DomainError("quotient-not-surjective",
                          "generalized complex arrows must be surjective");
}

std::string point_repr(const ComplexPoint& u) {
    std::string s = u.fan->points[u.anchor].id + "|";
    for (size_t i = 0; i < u.values.size(); ++i) {
        if (i) s += ",";
        s += to_string(u.values[i]);
    }
    return s;
}

std::vector<ComplexPoint> quotient_orbit(const GeneralizedComplex& g,
                                         const ComplexPoint& u) {
    if (u.fan.get() != g.base.get())
        throw std::invalid_argument("quotient_orbit: point not on the base complex");

    auto lift = [&](const FanMorphism& along, int z, const ComplexPoint& w) {
        IntegerMatrix hinv = inverse_unimodular(along.local_homs[z]);
        ComplexPoint out;
        out.fan = g.cover;
        out.anchor = z;
        for (const VecI& hb : g.cover->points[z].stalk.generators)
            out.values.push_back(evaluate(w, hinv.apply(hb)));
        out.rho = g.cover->generization_with_stalk_face(
            z, finite_value_face(out.values));
        return out;
    };

    std::map<std::string, ComplexPoint> seen;
    seen[point_repr(u)] = u;
    std::deque<ComplexPoint> frontier{u};
    int round = 0;
    while (!frontier.empty()) {
        if (round++ >= g.closure_depth)
            throw DomainError("quotient-unstable",
                              "orbit closure did not stabilize within the depth bound");
        std::deque<ComplexPoint> next;
        for (const ComplexPoint& w : frontier) {
            for (int dir = 0; dir < 2; ++dir) {
                const FanMorphism& fst = dir == 0 ? g.arrow_a : g.arrow_b;
                const FanMorphism& snd = dir == 0 ? g.arrow_b : g.arrow_a;
                for (int z = 0; z < g.cover->point_count(); ++z) {
                    if (fst.point_map[z] != w.anchor) continue;
                    ComplexPoint lifted = lift(fst, z, w);
                    ComplexPoint img = map_point(snd, lifted);
                    std::string key = point_repr(img);
                    if (!seen.count(key)) {
                        seen[key] = img;
                        next.push_back(img);
                    }
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<ComplexPoint> orbit;
    for (auto& kv : seen) orbit.push_back(kv.second);
    return orbit;
}

bool quotient_points_equal(const GeneralizedComplex& g, const ComplexPoint& x,
                           const ComplexPoint& y) {
    std::string ky = point_repr(y);
    for (const ComplexPoint& w : quotient_orbit(g, x))
        if (point_repr(w) == ky) return true;
    return false;
}

namespace {

struct GluedSpecData {
    std::vector<AffineMonoid> monoids;
    GluingDatum datum;
    std::vector<std::string> names;
};

KatoFan double_cover_fan(const GluedSpecData& s, const std::string& name) {
    std::vector<AffineMonoid> ms = s.monoids;
    ms.insert(ms.end(), s.monoids.begin(), s.monoids.end());
    GluingDatum d = s.datum;
    int k = int(s.monoids.size());
    for (const GluingEntry& e : s.datum.entries) {
        GluingEntry shifted = e;
        shifted.chart_a += k;
        shifted.chart_b += k;
        d.entries.push_back(shifted);
    }
    std::vector<std::string> names;
    for (int i = 0; i < k; ++i)
        names.push_back(i < int(s.names.size()) ? s.names[i] + "a"
                                                : "U" + std::to_string(i) + "a");
    for (int i = 0; i < k; ++i)
        names.push_back(i < int(s.names.size()) ? s.names[i] + "b"
                                                : "U" + std::to_string(i) + "b");
    return glue(ms, d, name, names);
}

// fold the double cover onto the base: first copy by the identity, second by
// the given automorphism of the base
FanMorphism fold_morphism(const FanPtr& cover, const FanPtr& base, int k,
                          const FanMorphism& theta) {
    FanMorphism m;
    m.source = cover;
    m.target = base;
    for (int x = 0; x < cover->point_count(); ++x) {
        const FanPoint& px = cover->points[x];
        const FanPointMember rep = px.members[px.rep_member];
        int chart = rep.chart % k;
        bool second = rep.chart >= k;
        int y0 = base->point_of(chart, rep.prime);
        const FanPoint& py = base->points[y0];
        int mi = -1;
        for (size_t i = 0; i < py.members.size(); ++i)
            if (py.members[i] == FanPointMember{chart, rep.prime}) mi = int(i);
        // stalk_base(y0) -> chart-presentation coords -> stalk_cover(x)
        IntegerMatrix h =
            mul(px.member_iso[px.rep_member], inverse_unimodular(py.member_iso[mi]));
        if (!second) {
            m.point_map.push_back(y0);
            m.local_homs.push_back(h);
        } else {
            // x sits over theta(y0): map x to y0 after precomposing with the
            // inverse direction of theta... the fold by theta sends the
            // second copy's point over y0 to theta(y0)
            int y = theta.point_map[y0];
            m.point_map.push_back(y);
            // local hom: stalk_base(theta(y0)) -> stalk_cover(x)
            m.local_homs.push_back(mul(h, theta.local_homs[y0]));
        }
    }
    validate_fan_morphism(m);
    return m;
}

// extend an automorphism given on the closed points to the whole fan
FanMorphism extend_from_closed(const FanPtr& f, const std::vector<int>& closed_map,
                               const std::vector<IntegerMatrix>& closed_homs) {
    FanMorphism m;
    m.source = f;
    m.target = f;
    m.point_map.assign(f->point_count(), -1);
    m.local_homs.assign(f->point_count(), IntegerMatrix());
    std::vector<int> closed;
    for (int x = 0; x < f->point_count(); ++x)
        if (f->points[x].specializes_to.empty()) closed.push_back(x);
    if (closed.size() != closed_map.size())
        throw std::invalid_argument("extend_from_closed: wrong number of closed points");
    for (size_t i = 0; i < closed.size(); ++i) {
        m.point_map[closed[i]] = closed_map[i];
        m.local_homs[closed[i]] = closed_homs[i];
    }
    for (int x = 0; x < f->point_count(); ++x) {
        if (m.point_map[x] >= 0) continue;
        int mx = f->maximal_points_above(x)[0];
        int idx = int(std::find(closed.begin(), closed.end(), mx) - closed.begin());
        int tm = closed_map[idx];
        const IntegerMatrix& hm = closed_homs[idx];
        // face of theta(x) inside stalk(theta(m))
        std::vector<int> sfx = f->stalk_face_in(mx, x);
        std::vector<VecI> face_elems;
        for (int i : sfx) face_elems.push_back(f->points[mx].stalk.generators[i]);
        AffineMonoid face = AffineMonoid::from_generators(
            f->points[mx].stalk.ambient_rank, face_elems);
        std::vector<int> tface;
        const AffineMonoid& tstalk = f->points[tm].stalk;
        for (size_t j = 0; j < tstalk.generators.size(); ++j)
            if (contains(face, hm.apply(tstalk.generators[j]))) tface.push_back(int(j));
        int tx = f->generization_with_stalk_face(tm, tface);
        if (tx < 0)
            throw DomainError("automorphism-bad", "image face is not a prime");
        m.point_map[x] = tx;
        // solve h_x from the commuting square h_x * G = R
        IntegerMatrix G = f->generization_map(tm, tx);
        IntegerMatrix R = mul(f->generization_map(mx, x), hm);
        // right inverse of G
        IntegerMatrix W(G.cols, G.rows);
        for (int j = 0; j < G.rows; ++j) {
            VecI e(G.rows, Int(0));
            e[j] = 1;
            auto w = solve_z(G, e);
            if (!w)
                throw DomainError("automorphism-bad", "generization map not surjective");
            for (int i = 0; i < G.cols; ++i) W.at(i, j) = (*w)[i];
        }
        IntegerMatrix hx = mul(R, W);
        if (!(mul(hx, G) == R))
            throw DomainError("automorphism-bad", "square does not commute");
        m.local_homs[x] = hx;
    }
    validate_fan_morphism(m);
    return m;
}

GeneralizedComplex quotient_from(const GluedSpecData& s, const std::string& base_name,
                                 const std::vector<int>& closed_map,
                                 const std::vector<IntegerMatrix>& closed_homs) {
    auto base = std::make_shared<KatoFan>(
        glue(s.monoids, s.datum, base_name, s.names));
    auto cover = std::make_shared<KatoFan>(
        double_cover_fan(s, base_name + "-cover"));
    FanMorphism theta = extend_from_closed(base, closed_map, closed_homs);
    GeneralizedComplex g;
    g.base = base;
    g.cover = cover;
    FanMorphism id = identity_morphism(base);
    g.arrow_a = fold_morphism(cover, base, int(s.monoids.size()), id);
    g.arrow_b = fold_morphism(cover, base, int(s.monoids.size()), theta);
    validate_generalized_complex(g);
    return g;
}

}  // namespace

GeneralizedComplex swap_quotient_A2() {
    GluedSpecData s;
    s.monoids = {AffineMonoid::free_monoid(2)};
    s.names = {"U0"};
    KatoFan probe = glue(s.monoids, s.datum, "A2", s.names);
    int closed = -1;
    for (int x = 0; x < probe.point_count(); ++x)
        if (probe.points[x].specializes_to.empty()) closed = x;
    IntegerMatrix swap = IntegerMatrix::from_rows({{0, 1}, {1, 0}});
    return quotient_from(s, "A2", {closed}, {swap});
}

GeneralizedComplex nodal_cubic_quotient() {
    GluedSpecData s;
    auto n2 = AffineMonoid::free_monoid(2);
    s.monoids = {n2, n2};
    s.names = {"U", "V"};
    // the two charts are glued along both coordinate localizations, crosswise
    IntegerMatrix one = IntegerMatrix::identity(1);
    s.datum.entries.push_back(GluingEntry{0, {0}, 1, {1}, one});
    s.datum.entries.push_back(GluingEntry{0, {1}, 1, {0}, one});

    // deck transformation: fixes both closed points, swaps the two branch
    // coordinates in each stalk
    IntegerMatrix swap = IntegerMatrix::from_rows({{0, 1}, {1, 0}});
    KatoFan probe = glue(s.monoids, s.datum, "nodal", s.names);
    std::vector<int> closed;
    for (int x = 0; x < probe.point_count(); ++x)
        if (probe.points[x].specializes_to.empty()) closed.push_back(x);
    std::vector<int> cmap = closed;  // each closed point maps to itself
    std::vector<IntegerMatrix> homs(closed.size(), swap);
    return quotient_from(s, "nodal", cmap, homs);
}

}  // namespace katofan
