#include "katofan/fan.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace katofan {

IntegerMatrix inverse_unimodular(const IntegerMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("inverse of non-square");
    int n = m.rows;
    IntegerMatrix inv(n, n);
    for (int j = 0; j < n; ++j) {
        VecQ e(n, Rat(0));
        e[j] = 1;
        auto x = solve_q(m, e);
        if (!x) throw std::invalid_argument("matrix not invertible");
        for (int i = 0; i < n; ++i) {
            Int num = boost::multiprecision::numerator((*x)[i]);
            Int den = boost::multiprecision::denominator((*x)[i]);
            if (den != 1) throw std::invalid_argument("matrix not unimodular");
            inv.at(i, j) = num;
        }
    }
    return inv;
}

int FanChart::prime_index(const std::vector<int>& face_gens) const {
    for (size_t i = 0; i < prime_list.size(); ++i)
        if (prime_list[i].face_gens == face_gens) return int(i);
    return -1;
}

namespace {

std::string face_key(const std::vector<int>& face) {
    if (face.empty()) return "-";
    std::string s;
    for (size_t i = 0; i < face.size(); ++i) {
        if (i) s += ".";
        s += std::to_string(face[i]);
    }
    return s;
}

FanChart make_chart(const AffineMonoid& p, const std::string& name) {
    SharpDecomposition d = decompose_sharp(p);
    FanChart ch;
    ch.name = name;
    ch.monoid = d.sharp;
    ch.prime_list = primes(ch.monoid);
    for (const PrimeIdeal& q : ch.prime_list)
        ch.stalks.push_back(sharp_quotient_at(ch.monoid, q));
    return ch;
}

// prime of the stalk at `anchor` matching the generization `genz`, as the
// sorted set of stalk Hilbert-basis indices lying on its face
std::vector<int> stalk_face_of_genz(const FanChart& ch, int anchor, int genz) {
    const SharpQuotient& sq = ch.stalks[anchor];
    std::vector<VecI> face_images;
    for (int gi : ch.prime_list[genz].face_gens) {
        VecI w = sq.proj.apply(ch.monoid.generators[gi]);
        if (!is_zero(w)) face_images.push_back(w);
    }
    AffineMonoid face_monoid =
        AffineMonoid::from_generators(sq.monoid.ambient_rank, face_images);
    std::vector<int> out;
    for (size_t i = 0; i < sq.monoid.generators.size(); ++i)
        if (contains(face_monoid, sq.monoid.generators[i])) out.push_back(int(i));
    return out;
}

int genz_with_stalk_face(const FanChart& ch, int anchor,
                         const std::vector<int>& stalk_face) {
    for (size_t q = 0; q < ch.prime_list.size(); ++q) {
        // generizations of the anchor carry a face containing the anchor's
        if (!std::includes(ch.prime_list[q].face_gens.begin(),
                           ch.prime_list[q].face_gens.end(),
                           ch.prime_list[anchor].face_gens.begin(),
                           ch.prime_list[anchor].face_gens.end()))
            continue;
        if (stalk_face_of_genz(ch, anchor, int(q)) == stalk_face) return int(q);
    }
    return -1;
}

bool maps_hb_onto(const IntegerMatrix& t, const AffineMonoid& a,
                  const AffineMonoid& b) {
    if (a.generators.size() != b.generators.size()) return false;
    std::vector<VecI> img;
    for (const VecI& g : a.generators) img.push_back(t.apply(g));
    sort_unique(img);
    return img == b.generators;
}

}  // namespace

void KatoFan::rebuild_index() {
    member_index_.clear();
    id_index_.clear();
    for (size_t i = 0; i < points.size(); ++i) {
        id_index_[points[i].id] = int(i);
        for (const FanPointMember& m : points[i].members)
            member_index_[{m.chart, m.prime}] = int(i);
    }
}

int KatoFan::point_index(const std::string& id) const {
    auto it = id_index_.find(id);
    return it == id_index_.end() ? -1 : it->second;
}

int KatoFan::point_of(int chart, int prime) const {
    auto it = member_index_.find({chart, prime});
    return it == member_index_.end() ? -1 : it->second;
}

bool KatoFan::specializes(int x, int y) const {
    if (x == y) return true;
    const auto& v = points[x].specializes_to;
    return std::find(v.begin(), v.end(), y) != v.end();
}

std::vector<int> KatoFan::generizations(int x) const {
    std::vector<int> out;
    for (int y = 0; y < point_count(); ++y)
        if (specializes(y, x)) out.push_back(y);
    return out;
}

std::vector<int> KatoFan::closure(int x) const {
    std::vector<int> out{x};
    for (int y : points[x].specializes_to) out.push_back(y);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> KatoFan::maximal_points_above(int x) const {
    std::vector<int> cl = closure(x);
    std::vector<int> out;
    for (int y : cl)
        if (points[y].specializes_to.empty()) out.push_back(y);
    return out;
}

int KatoFan::generic_point() const {
    std::vector<int> gens;
    for (int x = 0; x < point_count(); ++x) {
        bool minimal = true;
        for (int y = 0; y < point_count(); ++y)
            if (y != x && specializes(y, x)) { minimal = false; break; }
        if (minimal) gens.push_back(x);
    }
    return gens.size() == 1 ? gens[0] : -1;
}

std::vector<int> KatoFan::stalk_face_in(int m, int x) const {
    if (!specializes(x, m))
        throw std::invalid_argument("stalk_face_in: x is not a generization of m");
    const FanPointMember rep = points[m].members[points[m].rep_member];
    const FanChart& ch = charts[rep.chart];
    for (const FanPointMember& mem : points[x].members) {
        if (mem.chart != rep.chart) continue;
        if (!prime_subset(ch.prime_list[mem.prime], ch.prime_list[rep.prime]))
            continue;
        return stalk_face_of_genz(ch, rep.prime, mem.prime);
    }
    throw std::invalid_argument("stalk_face_in: no shared chart found");
}

int KatoFan::generization_with_stalk_face(int x,
                                          const std::vector<int>& face) const {
    const FanPointMember rep = points[x].members[points[x].rep_member];
    const FanChart& ch = charts[rep.chart];
    int q = genz_with_stalk_face(ch, rep.prime, face);
    if (q < 0) return -1;
    return point_of(rep.chart, q);
}

IntegerMatrix KatoFan::generization_map(int x, int y) const {
    if (x == y) return IntegerMatrix::identity(points[x].stalk.ambient_rank);
    if (!specializes(y, x))
        throw std::invalid_argument("generization_map: y is not a generization of x");
    const FanPointMember rep = points[x].members[points[x].rep_member];
    const FanChart& ch = charts[rep.chart];
    for (size_t mi = 0; mi < points[y].members.size(); ++mi) {
        const FanPointMember& m = points[y].members[mi];
        if (m.chart != rep.chart) continue;
        // y generizes x: its prime is contained in x's within the chart
        if (!prime_subset(ch.prime_list[m.prime], ch.prime_list[rep.prime]))
            continue;
        IntegerMatrix step =
            mul(ch.stalks[m.prime].proj, ch.stalks[rep.prime].section);
        return mul(points[y].member_iso[mi], step);
    }
    throw std::invalid_argument("generization_map: no shared chart found");
}

KatoFan glue(const std::vector<AffineMonoid>& chart_monoids,
             const GluingDatum& datum, const std::string& name,
             const std::vector<std::string>& chart_names) {
    KatoFan f;
    f.name = name;
    for (size_t i = 0; i < chart_monoids.size(); ++i) {
        std::string cn = i < chart_names.size() ? chart_names[i]
                                                : "U" + std::to_string(i);
        f.charts.push_back(make_chart(chart_monoids[i], cn));
    }

    using Node = std::pair<int, int>;
    struct Edge {
        Node to;
        IntegerMatrix iso;  // stalk(from) -> stalk(to)
    };
    std::map<Node, std::vector<Edge>> adj;

    for (const GluingEntry& e : datum.entries) {
        if (e.chart_a < 0 || e.chart_a >= int(f.charts.size()) || e.chart_b < 0 ||
            e.chart_b >= int(f.charts.size()))
            throw std::invalid_argument("gluing entry references unknown chart");
        const FanChart& cha = f.charts[e.chart_a];
        const FanChart& chb = f.charts[e.chart_b];
        int pa = cha.prime_index(e.face_a);
        int pb = chb.prime_index(e.face_b);
        if (pa < 0 || pb < 0)
            throw DomainError("glue-bad-anchor",
                              "gluing entry anchor face is not a face of the chart (" +
                                  cha.name + "," + chb.name + ")");
        const SharpQuotient& sqa = cha.stalks[pa];
        const SharpQuotient& sqb = chb.stalks[pb];
        if (e.stalk_iso.rows != sqb.monoid.ambient_rank ||
            e.stalk_iso.cols != sqa.monoid.ambient_rank ||
            sqa.monoid.ambient_rank != sqb.monoid.ambient_rank ||
            (sqa.monoid.ambient_rank > 0 &&
             abs_int(determinant(e.stalk_iso)) != 1) ||
            !maps_hb_onto(e.stalk_iso, sqa.monoid, sqb.monoid))
            throw DomainError("glue-not-strict",
                              "gluing isomorphism between " + cha.name + " and " +
                                  chb.name + " is not a strict isomorphism");

        for (size_t q = 0; q < cha.prime_list.size(); ++q) {
            if (!std::includes(cha.prime_list[q].face_gens.begin(),
                               cha.prime_list[q].face_gens.end(),
                               cha.prime_list[pa].face_gens.begin(),
                               cha.prime_list[pa].face_gens.end()))
                continue;  // not a generization of the anchor
            std::vector<int> sfa = stalk_face_of_genz(cha, pa, int(q));
            // push the face through the stalk isomorphism
            std::vector<VecI> img;
            for (int i : sfa) img.push_back(e.stalk_iso.apply(sqa.monoid.generators[i]));
            AffineMonoid img_monoid =
                AffineMonoid::from_generators(sqb.monoid.ambient_rank, img);
            std::vector<int> sfb;
            for (size_t j = 0; j < sqb.monoid.generators.size(); ++j)
                if (contains(img_monoid, sqb.monoid.generators[j])) sfb.push_back(int(j));
            int qb = genz_with_stalk_face(chb, pb, sfb);
            if (qb < 0)
                throw DomainError("glue-bad-datum",
                                  "gluing entry does not induce a point bijection (" +
                                      cha.name + "," + chb.name + ")");

            SharpQuotient sq_in_a = sharp_quotient_at(sqa.monoid, PrimeIdeal{sfa});
            SharpQuotient sq_in_b =
                sharp_quotient_at(sqb.monoid, PrimeIdeal{stalk_face_of_genz(chb, pb, qb)});
            IntegerMatrix lam_a =
                mul(sq_in_a.proj, mul(sqa.proj, cha.stalks[q].section));
            IntegerMatrix lam_b =
                mul(sq_in_b.proj, mul(sqb.proj, chb.stalks[qb].section));
            IntegerMatrix mu = mul(sq_in_b.proj, mul(e.stalk_iso, sq_in_a.section));
            IntegerMatrix phi = mul(inverse_unimodular(lam_b), mul(mu, lam_a));
            if (!maps_hb_onto(phi, cha.stalks[q].monoid, chb.stalks[qb].monoid))
                throw DomainError("glue-not-strict",
                                  "induced stalk map is not an isomorphism (" +
                                      cha.name + "," + chb.name + ")");
            adj[{e.chart_a, int(q)}].push_back(Edge{{e.chart_b, qb}, phi});
            adj[{e.chart_b, qb}].push_back(
                Edge{{e.chart_a, int(q)}, inverse_unimodular(phi)});
        }
    }

    // connected components with transforms to the BFS root
    std::map<Node, IntegerMatrix> to_root;
    std::map<Node, int> comp;
    std::vector<std::vector<Node>> comps;
    for (int c = 0; c < int(f.charts.size()); ++c)
        for (int p = 0; p < int(f.charts[c].prime_list.size()); ++p) {
            Node start{c, p};
            if (comp.count(start)) continue;
            int ci = int(comps.size());
            comps.push_back({});
            std::deque<Node> work{start};
            comp[start] = ci;
            to_root[start] =
                IntegerMatrix::identity(f.charts[c].stalks[p].monoid.ambient_rank);
            while (!work.empty()) {
                Node u = work.front();
                work.pop_front();
                comps[ci].push_back(u);
                auto it = adj.find(u);
                if (it == adj.end()) continue;
                for (const Edge& e : it->second) {
                    // stalk(v) -> root = (stalk(u) -> root) o (stalk(v) -> stalk(u))
                    IntegerMatrix tv = mul(to_root[u], inverse_unimodular(e.iso));
                    auto known = to_root.find(e.to);
                    if (known == to_root.end()) {
                        if (e.to.first == u.first && e.to != u)
                            throw DomainError("glue-self",
                                              "gluing identifies two points of chart " +
                                                  f.charts[u.first].name);
                        for (const Node& w : comps[ci])
                            if (w.first == e.to.first && w != e.to)
                                throw DomainError(
                                    "glue-self",
                                    "gluing identifies two points of chart " +
                                        f.charts[e.to.first].name);
                        comp[e.to] = ci;
                        to_root[e.to] = tv;
                        work.push_back(e.to);
                    } else if (!(known->second == tv)) {
                        throw DomainError("glue-cocycle",
                                          "gluing data violates the cocycle condition at "
                                          "charts " +
                                              f.charts[u.first].name + "," +
                                              f.charts[e.to.first].name);
                    }
                }
            }
        }

    // build points, representative = lexicographically smallest member id
    struct ProtoPoint {
        std::string id;
        std::vector<Node> members;
        int rep = 0;
    };
    std::vector<ProtoPoint> protos;
    for (auto& members : comps) {
        std::sort(members.begin(), members.end());
        ProtoPoint pp;
        pp.members = members;
        std::string best;
        for (size_t i = 0; i < members.size(); ++i) {
            const FanChart& ch = f.charts[members[i].first];
            std::string mid =
                ch.name + ":" + face_key(ch.prime_list[members[i].second].face_gens);
            if (best.empty() || mid < best) {
                best = mid;
                pp.rep = int(i);
            }
        }
        pp.id = best;
        protos.push_back(std::move(pp));
    }
    std::sort(protos.begin(), protos.end(),
              [](const ProtoPoint& a, const ProtoPoint& b) { return a.id < b.id; });

    for (const ProtoPoint& pp : protos) {
        FanPoint fp;
        fp.id = pp.id;
        fp.rep_member = pp.rep;
        Node rep = pp.members[pp.rep];
        fp.stalk = f.charts[rep.first].stalks[rep.second].monoid;
        IntegerMatrix root_to_rep = inverse_unimodular(to_root[rep]);
        for (const Node& m : pp.members) {
            fp.members.push_back(FanPointMember{m.first, m.second});
            fp.member_iso.push_back(mul(root_to_rep, to_root[m]));
        }
        f.points.push_back(std::move(fp));
    }
    f.rebuild_index();

    // specialization: chart-level relations, then transitive closure
    int n = f.point_count();
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (int c = 0; c < int(f.charts.size()); ++c) {
        const FanChart& ch = f.charts[c];
        for (size_t p = 0; p < ch.prime_list.size(); ++p)
            for (size_t q = 0; q < ch.prime_list.size(); ++q)
                if (p != q && prime_subset(ch.prime_list[p], ch.prime_list[q]))
                    rel[f.point_of(c, int(p))][f.point_of(c, int(q))] = true;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (rel[i][k])
                for (int j = 0; j < n; ++j)
                    if (rel[k][j]) rel[i][j] = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && rel[i][j]) f.points[i].specializes_to.push_back(j);
    return f;
}

KatoFan spec(const AffineMonoid& p, const std::string& name) {
    return glue({p}, GluingDatum{}, name);
}

KatoFan builtin_fan(const std::string& name) {
    auto n2 = AffineMonoid::free_monoid(2);
    auto n1 = AffineMonoid::free_monoid(1);

    auto one_dim_iso = [](const FanChart& cha, const std::vector<int>& fa,
                          const FanChart& chb, const std::vector<int>& fb) {
        int pa = cha.prime_index(fa);
        int pb = chb.prime_index(fb);
        auto iso = sharp_monoid_iso(cha.stalks[pa].monoid.generators,
                                    chb.stalks[pb].monoid.generators);
        return *iso;
    };

    if (name == "A1") return spec(n1, "A1");
    if (name == "A2") return spec(n2, "A2");
    if (name == "A3") return spec(AffineMonoid::free_monoid(3), "A3");
    if (name == "P1") {
        GluingDatum d;
        // identify the generic points of the two copies of Spec N
        d.entries.push_back(GluingEntry{0, {0}, 1, {0}, IntegerMatrix(0, 0)});
        return glue({n1, n1}, d, "P1");
    }
    if (name == "P2") {
        // chart generators sorted lex: index 0 = (0,1) = q_i, index 1 = (1,0) = p_i
        std::vector<AffineMonoid> cs{n2, n2, n2};
        KatoFan probe = spec(n2);
        const FanChart& ch = probe.charts[0];
        GluingDatum d;
        IntegerMatrix t01 = one_dim_iso(ch, {1}, ch, {0});
        d.entries.push_back(GluingEntry{0, {1}, 1, {0}, t01});
        d.entries.push_back(GluingEntry{1, {1}, 2, {0}, t01});
        d.entries.push_back(GluingEntry{2, {1}, 0, {0}, t01});
        return glue(cs, d, "P2");
    }
    if (name == "P1xP1") {
        std::vector<AffineMonoid> cs{n2, n2, n2, n2};
        KatoFan probe = spec(n2);
        const FanChart& ch = probe.charts[0];
        IntegerMatrix t01 = one_dim_iso(ch, {1}, ch, {0});
        GluingDatum d;
        d.entries.push_back(GluingEntry{0, {1}, 1, {0}, t01});
        d.entries.push_back(GluingEntry{1, {1}, 2, {0}, t01});
        d.entries.push_back(GluingEntry{2, {1}, 3, {0}, t01});
        d.entries.push_back(GluingEntry{3, {1}, 0, {0}, t01});
        return glue(cs, d, "P1xP1");
    }
    throw DomainError("unknown-fan", "unknown builtin fan: " + name);
}

bool check_fine_saturated(const KatoFan& f) {
    for (const FanPoint& p : f.points) {
        if (!is_sharp(p.stalk)) return false;
        if (!is_saturated(p.stalk)) return false;
    }
    return true;
}

FanMorphism identity_morphism(const FanPtr& f) {
    FanMorphism m;
    m.source = f;
    m.target = f;
    for (int i = 0; i < f->point_count(); ++i) {
        m.point_map.push_back(i);
        m.local_homs.push_back(
            IntegerMatrix::identity(f->points[i].stalk.ambient_rank));
    }
    return m;
}

void validate_fan_morphism(const FanMorphism& f) {
    const KatoFan& F = *f.source;
    const KatoFan& G = *f.target;
    if (int(f.point_map.size()) != F.point_count() ||
        int(f.local_homs.size()) != F.point_count())
        throw std::invalid_argument("fan morphism: wrong sizes");
    for (int x = 0; x < F.point_count(); ++x) {
        int y = f.point_map[x];
        const AffineMonoid& sx = F.points[x].stalk;
        const AffineMonoid& sy = G.points[y].stalk;
        const IntegerMatrix& h = f.local_homs[x];
        if (h.rows != sx.ambient_rank || h.cols != sy.ambient_rank)
            throw std::invalid_argument("fan morphism: local hom shape");
        for (const VecI& g : sy.generators) {
            VecI img = h.apply(g);
            if (!contains(sx, img))
                throw DomainError("morphism-not-hom",
                                  "local hom image leaves the stalk monoid at " +
                                      F.points[x].id);
            if (is_zero(img))
                throw DomainError("morphism-not-local",
                                  "local hom kills a maximal-ideal element at " +
                                      F.points[x].id);
        }
    }
    for (int x = 0; x < F.point_count(); ++x)
        for (int y = 0; y < F.point_count(); ++y) {
            if (x == y || !F.specializes(y, x)) continue;  // y generization of x
            int fx = f.point_map[x], fy = f.point_map[y];
            if (!G.specializes(fy, fx))
                throw DomainError("morphism-not-monotone",
                                  "point map does not preserve specialization");
            IntegerMatrix lhs = mul(F.generization_map(x, y), f.local_homs[x]);
            IntegerMatrix rhs = mul(f.local_homs[y], G.generization_map(fx, fy));
            if (!(lhs == rhs))
                throw DomainError("morphism-incompatible",
                                  "local homs do not commute with generization at " +
                                      F.points[x].id);
        }
}

bool is_strict(const FanMorphism& f) {
    validate_fan_morphism(f);
    for (int x = 0; x < f.source->point_count(); ++x) {
        const AffineMonoid& sx = f.source->points[x].stalk;
        const AffineMonoid& sy = f.target->points[f.point_map[x]].stalk;
        const IntegerMatrix& h = f.local_homs[x];
        if (h.rows != h.cols) return false;
        if (h.rows > 0 && abs_int(determinant(h)) != 1) return false;
        if (!maps_hb_onto(h, sy, sx)) return false;
    }
    return true;
}

FanMorphism spec_morphism(const FanPtr& spec_p, const FanPtr& spec_q,
                          const IntegerMatrix& phi) {
    const FanChart& chp = spec_p->charts.at(0);
    const FanChart& chq = spec_q->charts.at(0);
    FanMorphism m;
    m.source = spec_p;
    m.target = spec_q;
    for (int x = 0; x < spec_p->point_count(); ++x) {
        int p = spec_p->points[x].members[spec_p->points[x].rep_member].prime;
        // face of phi^{-1}(prime p): generators of Q landing in the face of p
        std::vector<VecI> face;
        for (int gi : chp.prime_list[p].face_gens)
            face.push_back(chp.monoid.generators[gi]);
        AffineMonoid face_monoid =
            AffineMonoid::from_generators(chp.monoid.ambient_rank, face);
        std::vector<int> qface;
        for (size_t j = 0; j < chq.monoid.generators.size(); ++j)
            if (contains(face_monoid, phi.apply(chq.monoid.generators[j])))
                qface.push_back(int(j));
        int qp = chq.prime_index(qface);
        if (qp < 0)
            throw DomainError("morphism-bad", "induced face is not a prime");
        int y = spec_q->point_of(0, qp);
        m.point_map.push_back(y);
        IntegerMatrix h = mul(chp.stalks[p].proj, mul(phi, chq.stalks[qp].section));
        // express in the representative coordinates of both points
        const FanPoint& px = spec_p->points[x];
        const FanPoint& py = spec_q->points[y];
        (void)py;
        IntegerMatrix mx = px.member_iso[px.rep_member];  // identity for spec fans
        m.local_homs.push_back(mul(mx, h));
    }
    validate_fan_morphism(m);
    return m;
}

bool fan_isomorphic(const KatoFan& f, const KatoFan& g) {
    int n = f.point_count();
    if (n != g.point_count()) return false;

    auto degree = [](const KatoFan& h, int x) {
        int up = 0, down = int(h.points[x].specializes_to.size());
        for (int y = 0; y < h.point_count(); ++y)
            if (y != x && h.specializes(y, x)) ++up;
        return std::make_tuple(h.points[x].stalk.ambient_rank,
                               int(h.points[x].stalk.generators.size()), up, down);
    };

    std::vector<int> assign(n, -1);
    std::vector<bool> used(n, false);
    std::map<std::pair<int, int>, bool> stalk_ok;
    std::function<bool(int)> rec = [&](int x) -> bool {
        if (x == n) return true;
        for (int y = 0; y < n; ++y) {
            if (used[y] || degree(f, x) != degree(g, y)) continue;
            auto key = std::make_pair(x, y);
            auto it = stalk_ok.find(key);
            if (it == stalk_ok.end()) {
                bool ok = sharp_monoid_iso(f.points[x].stalk.generators,
                                           g.points[y].stalk.generators)
                              .has_value();
                it = stalk_ok.emplace(key, ok).first;
            }
            if (!it->second) continue;
            bool consistent = true;
            for (int x2 = 0; x2 < x && consistent; ++x2) {
                if (f.specializes(x, x2) != g.specializes(y, assign[x2])) consistent = false;
                if (f.specializes(x2, x) != g.specializes(assign[x2], y)) consistent = false;
            }
            if (!consistent) continue;
            assign[x] = y;
            used[y] = true;
            if (rec(x + 1)) return true;
            used[y] = false;
            assign[x] = -1;
        }
        return false;
    };
    return rec(0);
}

int PolyhedralFanData::cone_of_point(int point) const {
    for (size_t i = 0; i < cone_point.size(); ++i)
        if (cone_point[i] == point) return int(i);
    return -1;
}

PolyhedralFanData fan_from_polyhedral_fan(const std::vector<Cone>& cones_in,
                                          const std::string& name) {
    if (cones_in.empty()) throw std::invalid_argument("empty cone collection");
    int n = cones_in[0].rank;
    std::vector<Cone> cones;
    for (const Cone& c : cones_in) {
        if (c.rank != n) throw std::invalid_argument("cones in different lattices");
        if (!c.is_pointed())
            throw DomainError("fan-not-strictly-convex",
                              "fan contains a non strictly convex cone");
        bool dup = false;
        for (const Cone& d : cones)
            if (cone_eq(c, d)) { dup = true; break; }
        if (!dup) cones.push_back(c);
    }

    auto face_cones = [&](const Cone& c) {
        std::vector<Cone> out;
        FaceLattice fl = face_lattice(c);
        for (const auto& face : fl.faces) {
            std::vector<VecI> rs;
            for (int i : face) rs.push_back(c.rays[i]);
            out.push_back(Cone::from_rays(n, rs));
        }
        return out;
    };

    auto index_of = [&](const Cone& c) {
        for (size_t i = 0; i < cones.size(); ++i)
            if (cone_eq(cones[i], c)) return int(i);
        return -1;
    };

    for (const Cone& c : cones)
        for (const Cone& fc : face_cones(c))
            if (index_of(fc) < 0)
                throw DomainError("fan-not-face-closed",
                                  "collection is missing the face with rays " +
                                      (fc.rays.empty() ? std::string("{0}")
                                                       : to_string(fc.rays[0])));
    for (size_t i = 0; i < cones.size(); ++i)
        for (size_t j = i + 1; j < cones.size(); ++j) {
            std::vector<VecI> hs = cones[i].ineqs;
            hs.insert(hs.end(), cones[j].ineqs.begin(), cones[j].ineqs.end());
            Cone meet = Cone::from_inequalities(n, hs);
            bool face_i = false, face_j = false;
            for (const Cone& fc : face_cones(cones[i]))
                if (cone_eq(fc, meet)) { face_i = true; break; }
            for (const Cone& fc : face_cones(cones[j]))
                if (cone_eq(fc, meet)) { face_j = true; break; }
            if (!face_i || !face_j)
                throw DomainError("fan-bad-intersection",
                                  "two cones do not intersect in a common face");
        }

    // maximal cones become charts
    std::vector<int> maximal;
    for (size_t i = 0; i < cones.size(); ++i) {
        bool contained = false;
        for (size_t j = 0; j < cones.size() && !contained; ++j) {
            if (i == j) continue;
            bool sub = true;
            for (const VecI& r : cones[i].rays)
                if (!cones[j].contains(r)) { sub = false; break; }
            if (sub && cones[i].rays.size() < cones[j].rays.size()) contained = true;
            if (sub && cones[i].rays.size() == cones[j].rays.size() &&
                cone_eq(cones[i], cones[j]))
                contained = true;
        }
        if (!contained) maximal.push_back(int(i));
    }

    // chart data per maximal cone: S_sigma sharp in its own coordinates
    std::vector<AffineMonoid> chart_monoids;
    std::vector<IntegerMatrix> chart_proj, chart_section;
    for (int mi : maximal) {
        const Cone& sigma = cones[mi];
        std::vector<VecI> perp;
        if (!sigma.rays.empty()) {
            IntegerMatrix rows = IntegerMatrix::from_rows(sigma.rays);
            perp = kernel_basis(rows).col_list();
        } else {
            perp = IntegerMatrix::identity(n).col_list();
        }
        LatticeQuotient lq = lattice_quotient(perp, n);
        Cone dual = dual_cone(sigma);
        std::vector<VecI> gens;
        for (const VecI& g : dual.generator_list()) {
            VecI w = lq.proj.apply(g);
            if (!is_zero(w)) gens.push_back(w);
        }
        int r = n - int(perp.size());
        std::vector<VecI> hb =
            gens.empty() ? std::vector<VecI>{}
                         : hilbert_basis_of_cone(Cone::from_rays(r, gens));
        chart_monoids.push_back(AffineMonoid::from_generators(r, hb));
        chart_proj.push_back(lq.proj);
        chart_section.push_back(lq.section);
    }

    // prime of chart k corresponding to a face cone tau of the maximal cone
    auto prime_for = [&](int k, const Cone& tau) {
        const AffineMonoid& cm = chart_monoids[k];
        std::vector<int> face;
        for (size_t gi = 0; gi < cm.generators.size(); ++gi) {
            VecI m = chart_section[k].apply(cm.generators[gi]);
            bool on = true;
            for (const VecI& r : tau.rays)
                if (dot(m, r) != 0) { on = false; break; }
            if (on) face.push_back(int(gi));
        }
        return face;
    };

    GluingDatum datum;
    for (size_t a = 0; a < maximal.size(); ++a)
        for (size_t b = a + 1; b < maximal.size(); ++b) {
            std::vector<VecI> hs = cones[maximal[a]].ineqs;
            hs.insert(hs.end(), cones[maximal[b]].ineqs.begin(),
                      cones[maximal[b]].ineqs.end());
            Cone meet = Cone::from_inequalities(n, hs);
            GluingEntry e;
            e.chart_a = int(a);
            e.face_a = prime_for(int(a), meet);
            e.chart_b = int(b);
            e.face_b = prime_for(int(b), meet);
            // stalk iso through M
            KatoFan probe_a = spec(chart_monoids[a], "pa");
            KatoFan probe_b = spec(chart_monoids[b], "pb");
            const FanChart& cha = probe_a.charts[0];
            const FanChart& chb = probe_b.charts[0];
            int pa = cha.prime_index(e.face_a);
            int pb = chb.prime_index(e.face_b);
            const SharpQuotient& qa = cha.stalks[pa];
            const SharpQuotient& qb = chb.stalks[pb];
            e.stalk_iso = mul(qb.proj, mul(chart_proj[b],
                                           mul(chart_section[a], qa.section)));
            datum.entries.push_back(std::move(e));
        }

    PolyhedralFanData out;
    std::vector<std::string> names;
    for (size_t k = 0; k < maximal.size(); ++k) names.push_back("U" + std::to_string(k));
    out.fan = glue(chart_monoids, datum, name, names);
    out.cones = cones;
    for (const Cone& c : cones) {
        int k = -1;
        for (size_t m = 0; m < maximal.size(); ++m) {
            bool sub = true;
            for (const VecI& r : c.rays)
                if (!cones[maximal[m]].contains(r)) { sub = false; break; }
            if (sub) { k = int(m); break; }
        }
        std::vector<int> face = prime_for(k, c);
        int prime = out.fan.charts[k].prime_index(face);
        out.cone_point.push_back(out.fan.point_of(k, prime));
    }
    out.chart_proj = chart_proj;
    out.chart_section = chart_section;
    out.maximal_cones = maximal;
    return out;
}

FanMorphism toric_fan_morphism(const std::shared_ptr<const PolyhedralFanData>& src,
                               const std::shared_ptr<const PolyhedralFanData>& dst,
                               const IntegerMatrix& lattice_map) {
    FanMorphism m;
    m.source = FanPtr(src, &src->fan);
    m.target = FanPtr(dst, &dst->fan);
    IntegerMatrix at = lattice_map.transpose();

    for (int x = 0; x < src->fan.point_count(); ++x) {
        int ci = src->cone_of_point(x);
        if (ci < 0) throw std::invalid_argument("point without cone");
        const Cone& sigma = src->cones[ci];
        std::vector<VecI> img;
        for (const VecI& r : sigma.rays) img.push_back(lattice_map.apply(r));
        int best = -1;
        for (size_t j = 0; j < dst->cones.size(); ++j) {
            bool ok = true;
            for (const VecI& v : img)
                if (!dst->cones[j].contains(v)) { ok = false; break; }
            if (!ok) continue;
            if (best < 0 || dst->cones[j].dim() < dst->cones[best].dim()) best = int(j);
        }
        if (best < 0)
            throw DomainError("morphism-bad",
                              "lattice map does not carry the fan into the target fan");
        int y = dst->cone_point[best];
        m.point_map.push_back(y);
        m.local_homs.push_back(mul(src->from_M(x), mul(at, dst->to_M(y))));
    }
    validate_fan_morphism(m);
    return m;
}

IntegerMatrix PolyhedralFanData::to_M(int point) const {
    const FanPoint& p = fan.points[point];
    const FanPointMember rep = p.members[p.rep_member];
    return mul(chart_section[rep.chart],
               fan.charts[rep.chart].stalks[rep.prime].section);
}

IntegerMatrix PolyhedralFanData::from_M(int point) const {
    const FanPoint& p = fan.points[point];
    const FanPointMember rep = p.members[p.rep_member];
    return mul(fan.charts[rep.chart].stalks[rep.prime].proj, chart_proj[rep.chart]);
}

std::vector<Cone> standard_fan_A1() {
    return {Cone::zero(1), Cone::from_rays(1, {{Int(1)}})};
}

std::vector<Cone> standard_fan_A2() {
    VecI e1{Int(1), Int(0)}, e2{Int(0), Int(1)};
    return {Cone::zero(2), Cone::from_rays(2, {e1}), Cone::from_rays(2, {e2}),
            Cone::from_rays(2, {e1, e2})};
}

std::vector<Cone> standard_fan_P1() {
    return {Cone::zero(1), Cone::from_rays(1, {{Int(1)}}),
            Cone::from_rays(1, {{Int(-1)}})};
}

std::vector<Cone> standard_fan_P2() {
    VecI e1{Int(1), Int(0)}, e2{Int(0), Int(1)}, e3{Int(-1), Int(-1)};
    return {Cone::zero(2),
            Cone::from_rays(2, {e1}),
            Cone::from_rays(2, {e2}),
            Cone::from_rays(2, {e3}),
            Cone::from_rays(2, {e1, e2}),
            Cone::from_rays(2, {e1, e3}),
            Cone::from_rays(2, {e2, e3})};
}

std::vector<Cone> standard_fan_P1xP1() {
    VecI e1{Int(1), Int(0)}, e2{Int(0), Int(1)};
    VecI f1{Int(-1), Int(0)}, f2{Int(0), Int(-1)};
    return {Cone::zero(2),
            Cone::from_rays(2, {e1}),
            Cone::from_rays(2, {e2}),
            Cone::from_rays(2, {f1}),
            Cone::from_rays(2, {f2}),
            Cone::from_rays(2, {e1, e2}),
            Cone::from_rays(2, {e2, f1}),
            Cone::from_rays(2, {f1, f2}),
            Cone::from_rays(2, {f2, e1})};
}

std::string stalk_label(const AffineMonoid& m) {
    if (m.ambient_rank == 0 && m.generators.empty()) return "0";
    bool free = int(m.generators.size()) == m.ambient_rank;
    if (free) {
        std::vector<VecI> units;
        for (int i = 0; i < m.ambient_rank; ++i) {
            VecI e(m.ambient_rank, Int(0));
            e[i] = 1;
            units.push_back(e);
        }
        sort_unique(units);
        if (units == m.generators)
            return m.ambient_rank == 1 ? "N" : "N^" + std::to_string(m.ambient_rank);
    }
    std::string s = "<";
    for (size_t i = 0; i < m.generators.size(); ++i) {
        if (i) s += ",";
        s += to_string(m.generators[i]);
    }
    return s + ">";
}

}  // namespace katofan
