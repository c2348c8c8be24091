#include "katofan/cone.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace katofan {

namespace {

struct DDRay {
    VecI v;
    std::set<int> tight;  // indices of processed inequalities with <h,v> = 0
};

bool adjacent(const std::vector<DDRay>& rays, size_t a, size_t b) {
    std::set<int> common;
    std::set_intersection(rays[a].tight.begin(), rays[a].tight.end(),
                          rays[b].tight.begin(), rays[b].tight.end(),
                          std::inserter(common, common.begin()));
    for (size_t i = 0; i < rays.size(); ++i) {
        if (i == a || i == b) continue;
        if (std::includes(rays[i].tight.begin(), rays[i].tight.end(),
                          common.begin(), common.end()))
            return false;
    }
    return true;
}

}  // namespace

DDResult dd_from_inequalities(int n, const std::vector<VecI>& ineqs) {
    std::vector<VecI> lin;
    for (int i = 0; i < n; ++i) {
        VecI e(n, Int(0));
        e[i] = 1;
        lin.push_back(e);
    }
    std::vector<DDRay> rays;

    for (int hi = 0; hi < int(ineqs.size()); ++hi) {
        const VecI& h = ineqs[hi];
        if (int(h.size()) != n) throw std::invalid_argument("inequality dimension");

        int l0 = -1;
        for (size_t i = 0; i < lin.size(); ++i)
            if (dot(h, lin[i]) != 0) { l0 = int(i); break; }

        if (l0 >= 0) {
            VecI v0 = lin[l0];
            if (dot(h, v0) < 0) v0 = negate(v0);
            Int a0 = dot(h, v0);
            std::vector<VecI> newlin;
            for (size_t i = 0; i < lin.size(); ++i) {
                if (int(i) == l0) continue;
                newlin.push_back(primitive(sub(scale(a0, lin[i]), scale(dot(h, lin[i]), v0))));
            }
            lin = std::move(newlin);
            for (DDRay& r : rays) {
                r.v = primitive(sub(scale(a0, r.v), scale(dot(h, r.v), v0)));
                r.tight.insert(hi);
            }
            DDRay nr;
            nr.v = primitive(v0);
            for (int j = 0; j < hi; ++j) nr.tight.insert(j);
            rays.push_back(std::move(nr));
            continue;
        }

        std::vector<size_t> pos, zer, neg;
        std::vector<Int> val(rays.size());
        for (size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot(h, rays[i].v);
            if (val[i] > 0) pos.push_back(i);
            else if (val[i] < 0) neg.push_back(i);
            else zer.push_back(i);
        }
        if (neg.empty()) {
            for (size_t i : zer) rays[i].tight.insert(hi);
            continue;
        }
        std::vector<DDRay> next;
        for (size_t i : pos) next.push_back(rays[i]);
        for (size_t i : zer) {
            rays[i].tight.insert(hi);
            next.push_back(rays[i]);
        }
        for (size_t p : pos)
            for (size_t q : neg) {
                if (!adjacent(rays, p, q)) continue;
                DDRay nr;
                nr.v = primitive(sub(scale(val[p], rays[q].v), scale(val[q], rays[p].v)));
                std::set_intersection(rays[p].tight.begin(), rays[p].tight.end(),
                                      rays[q].tight.begin(), rays[q].tight.end(),
                                      std::inserter(nr.tight, nr.tight.begin()));
                nr.tight.insert(hi);
                next.push_back(std::move(nr));
            }
        // dedupe (possible when pos/neg pairs generate the same ray)
        std::map<VecI, size_t> seen;
        std::vector<DDRay> dedup;
        for (DDRay& r : next) {
            auto it = seen.find(r.v);
            if (it == seen.end()) {
                seen[r.v] = dedup.size();
                dedup.push_back(std::move(r));
            }
        }
        rays = std::move(dedup);
    }

    DDResult out;
    for (DDRay& r : rays) out.rays.push_back(std::move(r.v));
    sort_unique(out.rays);
    out.lineality = std::move(lin);
    return out;
}

std::vector<VecI> Cone::generator_list() const {
    std::vector<VecI> gens = rays;
    for (const VecI& l : lineality) {
        gens.push_back(l);
        gens.push_back(negate(l));
    }
    return gens;
}

Cone Cone::from_rays(int rank, std::vector<VecI> generators) {
    for (const VecI& g : generators)
        if (int(g.size()) != rank) throw std::invalid_argument("ray dimension");
    std::vector<VecI> gens;
    for (const VecI& g : generators)
        if (!is_zero(g)) gens.push_back(primitive(g));
    sort_unique(gens);

    // H-rep: generators of the dual cone, with the dual's lineality as
    // equation pairs.
    DDResult dual = dd_from_inequalities(rank, gens);
    std::vector<VecI> hs = dual.rays;
    for (const VecI& l : dual.lineality) {
        hs.push_back(l);
        hs.push_back(negate(l));
    }
    sort_unique(hs);

    // canonical V-rep back from the H-rep
    DDResult vrep = dd_from_inequalities(rank, hs);
    Cone c;
    c.rank = rank;
    c.rays = std::move(vrep.rays);
    c.lineality = std::move(vrep.lineality);
    c.ineqs = std::move(hs);
    return c;
}

Cone Cone::from_inequalities(int rank, std::vector<VecI> ineqs) {
    std::vector<VecI> hs;
    for (const VecI& h : ineqs)
        if (!is_zero(h)) hs.push_back(primitive(h));
    sort_unique(hs);
    DDResult vrep = dd_from_inequalities(rank, hs);
    std::vector<VecI> gens = vrep.rays;
    for (const VecI& l : vrep.lineality) {
        gens.push_back(l);
        gens.push_back(negate(l));
    }
    return from_rays(rank, gens);
}

int Cone::dim() const {
    std::vector<VecI> gens = generator_list();
    if (gens.empty()) return 0;
    return rank_q(IntegerMatrix::from_cols(gens));
}

bool Cone::contains(const VecI& x) const {
    for (const VecI& h : ineqs)
        if (dot(h, x) < 0) return false;
    return true;
}

bool Cone::contains_q(const VecQ& x) const {
    for (const VecI& h : ineqs) {
        Rat s = 0;
        for (size_t i = 0; i < x.size(); ++i) s += Rat(h[i]) * x[i];
        if (s < 0) return false;
    }
    return true;
}

bool cone_eq(const Cone& a, const Cone& b) {
    if (a.rank != b.rank || a.rays != b.rays) return false;
    if (a.lineality.size() != b.lineality.size()) return false;
    if (a.lineality.empty()) return true;
    IntegerMatrix bl = IntegerMatrix::from_cols(b.lineality);
    for (const VecI& l : a.lineality) {
        VecQ lq(l.begin(), l.end());
        if (!solve_q(bl, lq)) return false;
    }
    return true;
}

Cone dual_cone(const Cone& sigma) {
    return Cone::from_rays(sigma.rank, [&] {
        DDResult d = dd_from_inequalities(sigma.rank, sigma.generator_list());
        std::vector<VecI> gens = d.rays;
        for (const VecI& l : d.lineality) {
            gens.push_back(l);
            gens.push_back(negate(l));
        }
        return gens;
    }());
}

int FaceLattice::face_index(const std::vector<int>& rays) const {
    for (size_t i = 0; i < faces.size(); ++i)
        if (faces[i] == rays) return int(i);
    return -1;
}

bool FaceLattice::leq(int a, int b) const {
    return std::includes(faces[b].begin(), faces[b].end(),
                         faces[a].begin(), faces[a].end());
}

FaceLattice face_lattice(const Cone& sigma) {
    if (!sigma.is_pointed())
        throw std::invalid_argument("face_lattice: cone not strictly convex");
    int nr = int(sigma.rays.size());
    std::vector<int> full(nr);
    for (int i = 0; i < nr; ++i) full[i] = i;

    std::vector<std::vector<int>> facets;
    for (const VecI& h : sigma.ineqs) {
        std::vector<int> f;
        for (int i = 0; i < nr; ++i)
            if (dot(h, sigma.rays[i]) == 0) f.push_back(i);
        if (int(f.size()) < nr) facets.push_back(f);
    }

    std::set<std::vector<int>> closed;
    closed.insert(full);
    std::vector<std::vector<int>> work{full};
    while (!work.empty()) {
        std::vector<int> f = work.back();
        work.pop_back();
        for (const auto& g : facets) {
            std::vector<int> h;
            std::set_intersection(f.begin(), f.end(), g.begin(), g.end(),
                                  std::back_inserter(h));
            if (closed.insert(h).second) work.push_back(h);
        }
    }
    // a pointed cone of positive dimension always has the apex as a face
    if (nr > 0) closed.insert({});

    FaceLattice fl;
    fl.faces.assign(closed.begin(), closed.end());
    std::sort(fl.faces.begin(), fl.faces.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    return fl;
}

int face_dim(const Cone& sigma, const std::vector<int>& face) {
    if (face.empty()) return 0;
    std::vector<VecI> rs;
    for (int i : face) rs.push_back(sigma.rays[i]);
    return rank_q(IntegerMatrix::from_cols(rs));
}

VecI positive_grading(int n, const std::vector<VecI>& gens) {
    DDResult dual = dd_from_inequalities(n, gens);
    VecI w(n, Int(0));
    for (const VecI& r : dual.rays) w = add(w, r);
    for (const VecI& g : gens)
        if (!is_zero(g) && dot(w, g) <= 0)
            throw std::invalid_argument("positive_grading: cone is not pointed");
    return w;
}

namespace {

// star triangulation: cells of simplicial subcones, as ray index sets
void triangulate_rec(const Cone& sigma, const std::vector<int>& face, int fdim,
                     std::vector<int> apexes, std::vector<std::vector<int>>& out) {
    std::vector<VecI> rs;
    for (int i : face) rs.push_back(sigma.rays[i]);
    if (int(face.size()) == fdim) {
        std::vector<int> cell = face;
        cell.insert(cell.end(), apexes.begin(), apexes.end());
        std::sort(cell.begin(), cell.end());
        out.push_back(cell);
        return;
    }
    int r0 = face[0];
    // sub-facets of the face not containing r0, coned with r0
    Cone sub = Cone::from_rays(sigma.rank, rs);
    FaceLattice fl = face_lattice(sub);
    for (const auto& f : fl.faces) {
        if (face_dim(sub, f) != fdim - 1) continue;
        std::vector<int> g;  // translate back to sigma ray indices
        for (int i : f) {
            // sub's rays are canonicalized; match by vector
            const VecI& v = sub.rays[i];
            for (int j : face)
                if (sigma.rays[j] == v) { g.push_back(j); break; }
        }
        if (std::find(g.begin(), g.end(), r0) != g.end()) continue;
        std::sort(g.begin(), g.end());
        std::vector<int> ap = apexes;
        ap.push_back(r0);
        triangulate_rec(sigma, g, fdim - 1, ap, out);
    }
}

}  // namespace

std::vector<VecI> hilbert_basis_of_cone(const Cone& c) {
    if (!c.is_pointed())
        throw std::invalid_argument("hilbert_basis_of_cone: cone not strictly convex");
    if (c.rays.empty()) return {};

    int d = c.dim();
    std::vector<int> full(c.rays.size());
    for (size_t i = 0; i < c.rays.size(); ++i) full[i] = int(i);
    std::vector<std::vector<int>> cells;
    triangulate_rec(c, full, d, {}, cells);

    std::set<VecI> points;
    for (const auto& cell : cells) {
        std::vector<VecI> s;
        for (int i : cell) s.push_back(c.rays[i]);
        int k = int(s.size());
        // bounding box of the parallelepiped from the 2^k vertex sums
        VecI lo(c.rank, Int(0)), hi(c.rank, Int(0));
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            VecI v(c.rank, Int(0));
            for (int i = 0; i < k; ++i)
                if (mask & (1u << i)) v = add(v, s[i]);
            for (int j = 0; j < c.rank; ++j) {
                lo[j] = std::min(lo[j], v[j]);
                hi[j] = std::max(hi[j], v[j]);
            }
        }
        IntegerMatrix sm = IntegerMatrix::from_cols(s);
        VecI p = lo;
        for (;;) {
            VecQ pq(p.begin(), p.end());
            auto t = solve_q(sm, pq);
            if (t) {
                bool in = true;
                for (const Rat& ti : *t)
                    if (ti < 0 || ti > 1) { in = false; break; }
                if (in) points.insert(p);
            }
            int j = 0;
            while (j < c.rank && p[j] == hi[j]) { p[j] = lo[j]; ++j; }
            if (j == c.rank) break;
            p[j] += 1;
        }
    }
    points.erase(VecI(c.rank, Int(0)));

    std::vector<VecI> gens(points.begin(), points.end());
    std::vector<VecI> basis;
    for (const VecI& g : gens) {
        bool reducible = false;
        for (const VecI& h : gens) {
            if (h == g) continue;
            if (c.contains(sub(g, h))) { reducible = true; break; }
        }
        if (!reducible) basis.push_back(g);
    }
    sort_unique(basis);
    return basis;
}

}  // namespace katofan
