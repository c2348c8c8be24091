#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "katofan/cone.hpp"
#include "katofan/monoid.hpp"

#include <random>

using namespace katofan;

namespace {

Cone quadrant() { return Cone::from_rays(2, {{1, 0}, {0, 1}}); }

}  // namespace

TEST_CASE("dual of the quadrant is itself") {
    Cone d = dual_cone(quadrant());
    CHECK(cone_eq(d, quadrant()));
}

TEST_CASE("dual of cone((1,0),(1,2))") {
    Cone c = Cone::from_rays(2, {{1, 0}, {1, 2}});
    Cone d = dual_cone(c);
    CHECK(d.rays == std::vector<VecI>{{0, 1}, {2, -1}});
    CHECK(d.lineality.empty());
}

TEST_CASE("dual of a ray is a halfplane") {
    Cone c = Cone::from_rays(2, {{1, 0}});
    Cone d = dual_cone(c);
    // halfplane x >= 0: one pointed ray plus a lineality line
    CHECK(d.rays == std::vector<VecI>{{1, 0}});
    REQUIRE(d.lineality.size() == 1);
    CHECK(primitive(d.lineality[0]) == VecI{0, 1});
    std::vector<VecI> gens = d.generator_list();
    sort_unique(gens);
    CHECK(gens == std::vector<VecI>{{0, -1}, {0, 1}, {1, 0}});
}

TEST_CASE("duality is an involution on full-dimensional cones") {
    std::mt19937_64 rng(7);
    int done = 0;
    while (done < 25) {
        int n = 2 + int(rng() % 2);
        std::vector<VecI> rays;
        for (int k = 0; k < n + 1; ++k) {
            VecI v(n);
            for (int i = 0; i < n; ++i) v[i] = Int(int(rng() % 7) - 2);
            rays.push_back(v);
        }
        Cone c = Cone::from_rays(n, rays);
        if (!c.is_pointed() || c.dim() != n) continue;
        CHECK(cone_eq(dual_cone(dual_cone(c)), c));
        ++done;
    }
}

TEST_CASE("face lattices") {
    SUBCASE("quadrant has 4 faces") {
        CHECK(face_lattice(quadrant()).faces.size() == 4);
    }
    SUBCASE("cone((1,0),(1,2)) has 4 faces") {
        CHECK(face_lattice(Cone::from_rays(2, {{1, 0}, {1, 2}})).faces.size() == 4);
    }
    SUBCASE("ray has 2 faces") {
        CHECK(face_lattice(Cone::from_rays(2, {{1, 0}})).faces.size() == 2);
    }
    SUBCASE("zero cone has 1 face") {
        CHECK(face_lattice(Cone::zero(2)).faces.size() == 1);
    }
}

TEST_CASE("face lattice anti-isomorphic to the dual's, full-dimensional case") {
    std::mt19937_64 rng(11);
    int done = 0;
    while (done < 15) {
        std::vector<VecI> rays;
        for (int k = 0; k < 4; ++k)
            rays.push_back({Int(int(rng() % 7) - 3), Int(int(rng() % 7) - 3)});
        Cone c = Cone::from_rays(2, rays);
        if (!c.is_pointed() || c.dim() != 2) continue;
        FaceLattice a = face_lattice(c);
        FaceLattice b = face_lattice(dual_cone(c));
        REQUIRE(a.faces.size() == b.faces.size());
        std::vector<int> dims_a, dims_b;
        for (const auto& fc : a.faces) dims_a.push_back(face_dim(c, fc));
        for (const auto& fc : b.faces) dims_b.push_back(face_dim(dual_cone(c), fc));
        std::sort(dims_a.begin(), dims_a.end());
        std::sort(dims_b.begin(), dims_b.end());
        for (size_t i = 0; i < dims_a.size(); ++i)
            CHECK(dims_a[i] + dims_b[dims_a.size() - 1 - i] == 2);
        ++done;
    }
}

TEST_CASE("hilbert basis of simple cones") {
    SUBCASE("quadrant") {
        CHECK(hilbert_basis_of_cone(quadrant()) ==
              std::vector<VecI>{{0, 1}, {1, 0}});
    }
    SUBCASE("cone((1,0),(1,2)) needs the interior point (1,1)") {
        CHECK(hilbert_basis_of_cone(Cone::from_rays(2, {{1, 0}, {1, 2}})) ==
              std::vector<VecI>{{1, 0}, {1, 1}, {1, 2}});
    }
    SUBCASE("half line") {
        CHECK(hilbert_basis_of_cone(Cone::from_rays(1, {{2}})) ==
              std::vector<VecI>{{1}});
    }
}

TEST_CASE("hilbert basis against brute-force irreducible enumeration") {
    // oracle: all irreducible points of C ∩ Z^n with coordinates bounded by 12
    auto oracle = [](const Cone& c, int bound) {
        std::vector<VecI> pts;
        VecI p(c.rank, Int(0));
        std::function<void(int)> enumerate = [&](int i) {
            if (i == c.rank) {
                if (!is_zero(p) && c.contains(p)) pts.push_back(p);
                return;
            }
            for (int v = -bound; v <= bound; ++v) {
                p[i] = v;
                enumerate(i + 1);
            }
        };
        enumerate(0);
        std::vector<VecI> irr;
        for (const VecI& g : pts) {
            bool red = false;
            for (const VecI& h : pts) {
                if (h == g) continue;
                VecI d = sub(g, h);
                if (!is_zero(d) && c.contains(d)) { red = true; break; }
            }
            if (!red) irr.push_back(g);
        }
        sort_unique(irr);
        return irr;
    };

    std::mt19937_64 rng(20240201);
    int done = 0;
    while (done < 8) {
        int n = 2 + int(rng() % 2);
        std::vector<VecI> rays;
        for (int k = 0; k < 3; ++k) {
            VecI v(n);
            for (int i = 0; i < n; ++i) v[i] = Int(int(rng() % 4));
            rays.push_back(v);
        }
        Cone c = Cone::from_rays(n, rays);
        if (!c.is_pointed() || c.rays.empty()) continue;
        std::vector<VecI> hb = hilbert_basis_of_cone(c);
        bool small = true;
        for (const VecI& h : hb)
            for (const Int& x : h)
                if (abs_int(x) > 12) small = false;
        if (!small) continue;
        CHECK(hb == oracle(c, 12));
        ++done;
    }
}

TEST_CASE("positive grading is strictly positive on generators") {
    std::vector<VecI> gens{{1, 0}, {1, 1}, {1, 2}};
    VecI w = positive_grading(2, gens);
    for (const VecI& g : gens) CHECK(dot(w, g) > 0);
}
