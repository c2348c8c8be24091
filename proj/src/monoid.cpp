#include "katofan/monoid.hpp"

#include <map>

namespace katofan {

AffineMonoid AffineMonoid::from_generators(int rank, std::vector<VecI> gens,
                                           VecI torsion, int unit_rank) {
    for (const VecI& g : gens)
        if (int(g.size()) != rank)
            throw std::invalid_argument("generator dimension mismatch");
    for (const Int& d : torsion)
        if (d <= 1) throw std::invalid_argument("torsion invariant factors must be > 1");
    std::vector<VecI> keep;
    for (VecI& g : gens)
        if (!is_zero(g)) keep.push_back(std::move(g));
    sort_unique(keep);
    AffineMonoid p;
    p.ambient_rank = rank;
    p.generators = std::move(keep);
    p.torsion = std::move(torsion);
    p.unit_rank = unit_rank;
    return p;
}

AffineMonoid AffineMonoid::free_monoid(int rank) {
    std::vector<VecI> gens;
    for (int i = 0; i < rank; ++i) {
        VecI e(rank, Int(0));
        e[i] = 1;
        gens.push_back(e);
    }
    return from_generators(rank, gens);
}

AffineMonoid AffineMonoid::zero() { return from_generators(0, {}); }

MonoidHom MonoidHom::lattice_only(IntegerMatrix m) {
    MonoidHom h;
    h.lattice_map = std::move(m);
    h.unit_map = IntegerMatrix(0, h.lattice_map.cols);
    h.torsion_map = IntegerMatrix(0, h.lattice_map.cols);
    return h;
}

std::vector<int> unit_generator_indices(const AffineMonoid& p) {
    if (p.generators.empty()) return {};
    Cone c = Cone::from_rays(p.ambient_rank, p.generators);
    if (c.lineality.empty()) return {};
    IntegerMatrix lin = IntegerMatrix::from_cols(c.lineality);
    std::vector<int> idx;
    for (size_t i = 0; i < p.generators.size(); ++i) {
        VecQ g(p.generators[i].begin(), p.generators[i].end());
        if (solve_q(lin, g)) idx.push_back(int(i));
    }
    return idx;
}

namespace {

struct MembershipContext {
    std::vector<VecI> gens;   // projected non-unit generators, all nonzero
    VecI grading;             // positive on every gens entry
    Cone hull;                // cone(gens), for pruning
};

bool dfs_reps(const MembershipContext& ctx, size_t i, const VecI& remaining,
              VecI& coeffs, const std::function<bool(const VecI&)>& cb) {
    if (is_zero(remaining)) {
        // tail coefficients are forced to zero by positivity of the grading
        for (size_t j = i; j < coeffs.size(); ++j) coeffs[j] = 0;
        return cb(coeffs);
    }
    if (i == ctx.gens.size()) return false;
    if (!ctx.hull.contains(remaining)) return false;
    Int total = dot(ctx.grading, remaining);
    if (total <= 0) return false;
    Int step = dot(ctx.grading, ctx.gens[i]);
    Int bound = total / step;
    VecI rem = remaining;
    for (Int a = 0; a <= bound; ++a) {
        coeffs[i] = a;
        if (dfs_reps(ctx, i + 1, rem, coeffs, cb)) return true;
        rem = sub(rem, ctx.gens[i]);
    }
    return false;
}

MembershipContext make_context(int rank, const std::vector<VecI>& gens) {
    MembershipContext ctx;
    ctx.gens = gens;
    ctx.grading = positive_grading(rank, gens);
    ctx.hull = Cone::from_rays(rank, gens);
    return ctx;
}

}  // namespace

bool for_each_representation(const std::vector<VecI>& gens, const VecI& v,
                             const std::function<bool(const VecI&)>& cb) {
    if (gens.empty()) {
        if (is_zero(v)) return cb(VecI{});
        return false;
    }
    int rank = int(gens[0].size());
    MembershipContext ctx = make_context(rank, gens);
    VecI coeffs(gens.size(), Int(0));
    return dfs_reps(ctx, 0, v, coeffs, cb);
}

bool contains(const AffineMonoid& p, const VecI& v) {
    if (int(v.size()) != p.ambient_rank)
        throw std::invalid_argument("contains: dimension mismatch");
    if (is_zero(v)) return true;
    if (p.generators.empty()) return false;

    std::vector<int> units = unit_generator_indices(p);
    if (units.empty())
        return for_each_representation(p.generators, v,
                                       [](const VecI&) { return true; });

    std::vector<VecI> ugens, sgens;
    {
        size_t ui = 0;
        for (size_t i = 0; i < p.generators.size(); ++i) {
            if (ui < units.size() && int(i) == units[ui]) {
                ugens.push_back(p.generators[i]);
                ++ui;
            } else {
                sgens.push_back(p.generators[i]);
            }
        }
    }
    std::vector<VecI> sat = saturation_basis(ugens, p.ambient_rank);
    LatticeQuotient q = lattice_quotient(sat, p.ambient_rank);
    VecI z = q.proj.apply(v);
    if (sgens.empty()) return is_zero(z) && lattice_contains(ugens, v);

    std::vector<VecI> proj_gens;
    for (const VecI& s : sgens) proj_gens.push_back(q.proj.apply(s));
    return for_each_representation(proj_gens, z, [&](const VecI& a) {
        VecI used(p.ambient_rank, Int(0));
        for (size_t i = 0; i < sgens.size(); ++i)
            if (a[i] != 0) used = add(used, scale(a[i], sgens[i]));
        return lattice_contains(ugens, sub(v, used));
    });
}

bool is_sharp(const AffineMonoid& p) {
    return p.unit_rank == 0 && p.torsion.empty() && unit_generator_indices(p).empty();
}

AffineMonoid saturate(const AffineMonoid& p) {
    if (p.generators.empty())
        return AffineMonoid::from_generators(p.ambient_rank, {}, p.torsion, p.unit_rank);
    Cone c = Cone::from_rays(p.ambient_rank, p.generators);
    if (c.lineality.empty()) {
        std::vector<VecI> hb = hilbert_basis_of_cone(c);
        return AffineMonoid::from_generators(p.ambient_rank, hb, p.torsion, p.unit_rank);
    }
    std::vector<VecI> sat = saturation_basis(c.lineality, p.ambient_rank);
    LatticeQuotient q = lattice_quotient(sat, p.ambient_rank);
    std::vector<VecI> proj_gens;
    for (const VecI& g : p.generators) {
        VecI pg = q.proj.apply(g);
        if (!is_zero(pg)) proj_gens.push_back(pg);
    }
    int nr = p.ambient_rank - int(sat.size());
    std::vector<VecI> hb = hilbert_basis_of_cone(Cone::from_rays(nr, proj_gens));
    return AffineMonoid::from_generators(nr, hb, p.torsion,
                                         p.unit_rank + int(sat.size()));
}

bool is_saturated(const AffineMonoid& p) {
    if (p.generators.empty()) return true;
    Cone c = Cone::from_rays(p.ambient_rank, p.generators);
    if (!c.lineality.empty()) {
        // the saturation has units; P is saturated only if it already
        // contains the full unit group, which membership decides below
        std::vector<VecI> sat = saturation_basis(c.lineality, p.ambient_rank);
        for (const VecI& l : sat)
            if (!contains(p, l) || !contains(p, negate(l))) return false;
        LatticeQuotient q = lattice_quotient(sat, p.ambient_rank);
        std::vector<VecI> proj_gens;
        for (const VecI& g : p.generators) {
            VecI pg = q.proj.apply(g);
            if (!is_zero(pg)) proj_gens.push_back(pg);
        }
        int nr = p.ambient_rank - int(sat.size());
        std::vector<VecI> hb = hilbert_basis_of_cone(Cone::from_rays(nr, proj_gens));
        AffineMonoid shadow = AffineMonoid::from_generators(nr, proj_gens);
        for (const VecI& h : hb)
            if (!contains(shadow, h)) return false;
        return true;
    }
    for (const VecI& h : hilbert_basis_of_cone(c))
        if (!contains(p, h)) return false;
    return true;
}

std::vector<VecI> hilbert_basis(const AffineMonoid& p) {
    if (!unit_generator_indices(p).empty())
        throw DomainError("units-not-split",
                          "hilbert_basis: lattice part contains units; split them off first");
    if (p.generators.empty()) return {};
    Cone c = Cone::from_rays(p.ambient_rank, p.generators);
    std::vector<VecI> sat_hb = hilbert_basis_of_cone(c);
    bool saturated = true;
    for (const VecI& h : sat_hb)
        if (!contains(p, h)) { saturated = false; break; }
    if (saturated) return sat_hb;

    // fine non-saturated path: irreducible generators among the given ones
    std::vector<VecI> basis;
    for (size_t i = 0; i < p.generators.size(); ++i) {
        std::vector<VecI> others;
        for (size_t j = 0; j < p.generators.size(); ++j)
            if (j != i) others.push_back(p.generators[j]);
        AffineMonoid rest = AffineMonoid::from_generators(p.ambient_rank, others);
        if (!contains(rest, p.generators[i])) basis.push_back(p.generators[i]);
    }
    sort_unique(basis);
    return basis;
}

SharpDecomposition decompose_sharp(const AffineMonoid& p) {
    if (!is_saturated(p))
        throw DomainError("not-saturated",
                          "decompose_sharp: input is not saturated; the splitting may fail");
    SharpDecomposition out;
    out.unit_rank = p.unit_rank;
    out.unit_torsion = p.torsion;
    std::vector<int> units = unit_generator_indices(p);
    if (units.empty()) {
        std::vector<VecI> hb =
            p.generators.empty() ? std::vector<VecI>{}
                                 : hilbert_basis_of_cone(Cone::from_rays(
                                       p.ambient_rank, p.generators));
        out.sharp = AffineMonoid::from_generators(p.ambient_rank, hb);
        return out;
    }
    Cone c = Cone::from_rays(p.ambient_rank, p.generators);
    std::vector<VecI> sat = saturation_basis(c.lineality, p.ambient_rank);
    LatticeQuotient q = lattice_quotient(sat, p.ambient_rank);
    std::vector<VecI> proj_gens;
    for (const VecI& g : p.generators) {
        VecI pg = q.proj.apply(g);
        if (!is_zero(pg)) proj_gens.push_back(pg);
    }
    int nr = p.ambient_rank - int(sat.size());
    if (nr == 1) {
        bool all_neg = !proj_gens.empty();
        for (const VecI& g : proj_gens)
            if (g[0] > 0) all_neg = false;
        if (all_neg)
            for (VecI& g : proj_gens) g = negate(g);
    }
    std::vector<VecI> hb = proj_gens.empty()
                               ? std::vector<VecI>{}
                               : hilbert_basis_of_cone(Cone::from_rays(nr, proj_gens));
    out.sharp = AffineMonoid::from_generators(nr, hb);
    out.unit_rank += int(sat.size());
    return out;
}

namespace {

// Faces of the sharp quotient's cone pulled back to generator index sets.
std::vector<std::vector<int>> monoid_faces(const AffineMonoid& p) {
    if (p.generators.empty()) return {{}};

    std::vector<int> units = unit_generator_indices(p);
    std::vector<VecI> work_gens = p.generators;
    IntegerMatrix proj = IntegerMatrix::identity(p.ambient_rank);
    int nr = p.ambient_rank;
    if (!units.empty()) {
        Cone c0 = Cone::from_rays(p.ambient_rank, p.generators);
        std::vector<VecI> sat = saturation_basis(c0.lineality, p.ambient_rank);
        LatticeQuotient q = lattice_quotient(sat, p.ambient_rank);
        proj = q.proj;
        nr = p.ambient_rank - int(sat.size());
    }
    std::vector<VecI> proj_gens;
    for (const VecI& g : p.generators) proj_gens.push_back(proj.apply(g));
    std::vector<VecI> nonzero;
    for (const VecI& g : proj_gens)
        if (!is_zero(g)) nonzero.push_back(g);

    Cone c = Cone::from_rays(nr, nonzero);
    FaceLattice fl = face_lattice(c);
    std::vector<std::vector<int>> out;
    for (const auto& face : fl.faces) {
        // tight inequalities of this face
        std::vector<VecI> tight;
        for (const VecI& h : c.ineqs) {
            bool t = true;
            for (int ri : face)
                if (dot(h, c.rays[ri]) != 0) { t = false; break; }
            if (t) tight.push_back(h);
        }
        std::vector<int> idx;
        for (size_t i = 0; i < proj_gens.size(); ++i) {
            const VecI& g = proj_gens[i];
            bool on = c.contains(g);
            for (const VecI& h : tight)
                if (on && dot(h, g) != 0) { on = false; break; }
            if (on) idx.push_back(int(i));
        }
        out.push_back(idx);
    }
    std::sort(out.begin(), out.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  if (a.size() != b.size()) return a.size() > b.size();
                  return a < b;
              });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<PrimeIdeal> primes(const AffineMonoid& p) {
    std::vector<PrimeIdeal> out;
    for (auto& f : monoid_faces(p)) out.push_back(PrimeIdeal{std::move(f)});
    return out;
}

bool prime_subset(const PrimeIdeal& a, const PrimeIdeal& b) {
    return std::includes(a.face_gens.begin(), a.face_gens.end(),
                         b.face_gens.begin(), b.face_gens.end());
}

bool is_prime_of(const AffineMonoid& p, const PrimeIdeal& q) {
    for (const auto& f : monoid_faces(p))
        if (f == q.face_gens) return true;
    return false;
}

Localization localize(const AffineMonoid& p, const PrimeIdeal& q) {
    if (!is_prime_of(p, q))
        throw DomainError("not-prime", "localize: the given ideal is not prime");

    std::vector<VecI> face;
    for (int i : q.face_gens) face.push_back(p.generators[i]);
    if (face.empty()) {
        Localization loc;
        loc.monoid = AffineMonoid::from_generators(p.ambient_rank, p.generators,
                                                   p.torsion, p.unit_rank);
        loc.canonical = MonoidHom::lattice_only(IntegerMatrix::identity(p.ambient_rank));
        loc.canonical.unit_map = IntegerMatrix(0, p.ambient_rank);
        return loc;
    }
    std::vector<VecI> sat = saturation_basis(face, p.ambient_rank);
    LatticeQuotient lq = lattice_quotient(sat, p.ambient_rank);
    int k = int(sat.size());

    std::vector<VecI> proj_gens;
    for (const VecI& g : p.generators) {
        VecI pg = lq.proj.apply(g);
        if (!is_zero(pg)) proj_gens.push_back(pg);
    }
    sort_unique(proj_gens);
    // minimal generating set of the image
    std::vector<VecI> minimal;
    for (size_t i = 0; i < proj_gens.size(); ++i) {
        std::vector<VecI> others;
        for (size_t j = 0; j < proj_gens.size(); ++j)
            if (j != i) others.push_back(proj_gens[j]);
        AffineMonoid rest =
            AffineMonoid::from_generators(p.ambient_rank - k, others);
        if (!contains(rest, proj_gens[i])) minimal.push_back(proj_gens[i]);
    }

    Localization loc;
    loc.monoid = AffineMonoid::from_generators(p.ambient_rank - k, minimal,
                                               p.torsion, p.unit_rank + k);
    loc.canonical = MonoidHom::lattice_only(lq.proj);
    // coordinates along the inverted face become the new unit block
    IntegerMatrix m = IntegerMatrix::from_cols(sat);
    SNFDecomposition s = smith_normal_form(m);
    IntegerMatrix umap(k, p.ambient_rank);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < p.ambient_rank; ++j) umap.at(i, j) = s.left.at(i, j);
    loc.canonical.unit_map = umap;
    return loc;
}

SharpQuotient sharp_quotient_at(const AffineMonoid& p, const PrimeIdeal& q) {
    std::vector<VecI> face;
    for (int i : q.face_gens) face.push_back(p.generators[i]);

    std::vector<VecI> sat = saturation_basis(face, p.ambient_rank);
    LatticeQuotient lq = lattice_quotient(sat, p.ambient_rank);
    int nr = p.ambient_rank - int(sat.size());

    std::vector<VecI> proj_gens;
    for (const VecI& g : p.generators) {
        VecI pg = lq.proj.apply(g);
        if (!is_zero(pg)) proj_gens.push_back(pg);
    }

    // re-coordinatize onto the full-rank lattice generated by the images
    std::vector<VecI> lat = saturation_basis(proj_gens, nr);
    SharpQuotient out;
    if (lat.empty()) {
        out.monoid = AffineMonoid::zero();
        out.proj = IntegerMatrix(0, p.ambient_rank);
        out.section = IntegerMatrix(p.ambient_rank, 0);
        return out;
    }
    int r = int(lat.size());
    IntegerMatrix basis = IntegerMatrix::from_cols(lat);  // nr x r
    std::vector<VecI> coords;
    for (const VecI& g : proj_gens) {
        auto x = solve_z(basis, g);
        if (!x) throw DomainError("internal", "sharp_quotient_at: coordinate failure");
        coords.push_back(*x);
    }
    if (r == 1) {
        // canonical positive presentation for one-dimensional stalks
        bool all_neg = !coords.empty();
        for (const VecI& c : coords)
            if (c[0] > 0) all_neg = false;
        if (all_neg) {
            lat[0] = negate(lat[0]);
            basis = IntegerMatrix::from_cols(lat);
            for (VecI& c : coords) c = negate(c);
        }
    }
    std::vector<VecI> hb = hilbert_basis_of_cone(Cone::from_rays(r, coords));
    out.monoid = AffineMonoid::from_generators(r, hb);

    // proj in stalk coordinates: solve basis * y = lq.proj(v) columnwise
    IntegerMatrix proj(r, p.ambient_rank);
    for (int j = 0; j < p.ambient_rank; ++j) {
        VecI e(p.ambient_rank, Int(0));
        e[j] = 1;
        VecI img = lq.proj.apply(e);
        auto y = solve_q(basis, VecQ(img.begin(), img.end()));
        if (!y) throw DomainError("internal", "sharp_quotient_at: projection failure");
        for (int i = 0; i < r; ++i) {
            Int num = boost::multiprecision::numerator((*y)[i]);
            Int den = boost::multiprecision::denominator((*y)[i]);
            if (den != 1)
                throw DomainError("internal", "sharp_quotient_at: non-integral projection");
            proj.at(i, j) = num;
        }
    }
    out.proj = proj;
    out.section = mul(lq.section, basis);
    return out;
}

bool is_monoid_hom(const MonoidHom& h, const AffineMonoid& source,
                   const AffineMonoid& target) {
    if (h.lattice_map.cols != source.ambient_rank) return false;
    if (h.lattice_map.rows != target.ambient_rank) return false;
    for (const VecI& g : source.generators)
        if (!contains(target, h.lattice_map.apply(g))) return false;
    return true;
}

bool is_local_hom(const MonoidHom& h, const AffineMonoid& source,
                  const AffineMonoid& target) {
    if (!is_monoid_hom(h, source, target))
        throw DomainError("not-a-hom",
                          "is_local_hom: generator image falls outside the target monoid");
    for (const VecI& g : source.generators)
        if (is_zero(h.lattice_map.apply(g))) return false;
    return true;
}

std::optional<IntegerMatrix> sharp_monoid_iso(const std::vector<VecI>& hb_a,
                                              const std::vector<VecI>& hb_b) {
    if (hb_a.size() != hb_b.size()) return std::nullopt;
    if (hb_a.empty()) return IntegerMatrix::identity(0);
    int ra = int(hb_a[0].size());
    int rb = int(hb_b[0].size());
    if (ra != rb) return std::nullopt;
    if (rank_q(IntegerMatrix::from_cols(hb_a)) != ra ||
        rank_q(IntegerMatrix::from_cols(hb_b)) != ra)
        return std::nullopt;  // stalk presentations are full rank by construction

    // greedy independent subset of hb_a
    std::vector<int> pick;
    std::vector<VecI> sel;
    for (size_t i = 0; i < hb_a.size() && int(pick.size()) < ra; ++i) {
        sel.push_back(hb_a[i]);
        if (rank_q(IntegerMatrix::from_cols(sel)) == int(sel.size()))
            pick.push_back(int(i));
        else
            sel.pop_back();
    }
    IntegerMatrix amat = IntegerMatrix::from_cols(sel);  // ra x ra, invertible /Q

    std::vector<int> assign(ra, 0);
    std::function<std::optional<IntegerMatrix>(int, unsigned)> rec =
        [&](int depth, unsigned used) -> std::optional<IntegerMatrix> {
        if (depth == ra) {
            std::vector<VecI> img;
            for (int i : assign) img.push_back(hb_b[i]);
            IntegerMatrix bmat = IntegerMatrix::from_cols(img);
            // T with T*amat = bmat
            IntegerMatrix t(ra, ra);
            IntegerMatrix at = amat.transpose();
            for (int r = 0; r < ra; ++r) {
                VecI brow = bmat.row(r);
                auto x = solve_q(at, VecQ(brow.begin(), brow.end()));
                if (!x) return std::nullopt;
                for (int cidx = 0; cidx < ra; ++cidx) {
                    Int num = boost::multiprecision::numerator((*x)[cidx]);
                    Int den = boost::multiprecision::denominator((*x)[cidx]);
                    if (den != 1) return std::nullopt;
                    t.at(r, cidx) = num;
                }
            }
            if (abs_int(determinant(t)) != 1) return std::nullopt;
            std::vector<VecI> mapped;
            for (const VecI& a : hb_a) mapped.push_back(t.apply(a));
            sort_unique(mapped);
            std::vector<VecI> sorted_b = hb_b;
            sort_unique(sorted_b);
            if (mapped == sorted_b) return t;
            return std::nullopt;
        }
        for (int i = 0; i < int(hb_b.size()); ++i) {
            if (used & (1u << i)) continue;
            assign[depth] = i;
            auto res = rec(depth + 1, used | (1u << i));
            if (res) return res;
        }
        return std::nullopt;
    };
    return rec(0, 0u);
}

bool monoid_isomorphic(const AffineMonoid& a, const AffineMonoid& b) {
    SharpDecomposition da = decompose_sharp(a);
    SharpDecomposition db = decompose_sharp(b);
    if (da.unit_rank != db.unit_rank) return false;
    if (da.unit_torsion != db.unit_torsion) return false;
    return sharp_monoid_iso(da.sharp.generators, db.sharp.generators).has_value();
}

bool is_zero_hom_data(const MonoidHom& h) {
    return is_zero(h.lattice_map.entries);
}

}  // namespace katofan
