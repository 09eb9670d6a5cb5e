#include "linepack/catalog.hpp"
#include "linepack/constructions.hpp"
#include "linepack/error.hpp"
#include "linepack/sampling.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace linepack;
using Catch::Approx;

namespace {

const Tolerances tol{};
const double pi = std::acos(-1.0);

UnitVectorSystem onb(std::size_t n)
{
    std::vector<Vec> v;
    for (std::size_t i = 0; i < n; ++i)
    {
        Vec e(n, 0.0);
        e[i] = 1.0;
        v.push_back(e);
    }
    return UnitVectorSystem::create(n, v);
}

double max_offdiag_gap(const Matrix& a, const Matrix& b)
{
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j)
                d = std::max(d, std::abs(a(i, j) - b(i, j)));
    return d;
}

} // namespace

TEST_CASE("circular frames", "[constructions]")
{
    for (std::size_t m = 2; m <= 12; ++m)
    {
        const auto x = circular_frame(m);
        CHECK(x.size() == m);
        CHECK(coherence(x) == Approx(std::cos(pi / m)).margin(1e-12));
        const auto t = tightness(x, tol);
        CHECK(t.tight());
        CHECK(t.bound == Approx(m / 2.0));
    }
    CHECK(coherence(circular_frame(2)) < 1e-15);
    CHECK(coherence(circular_frame(3)) == Approx(0.5).margin(1e-15));
    CHECK_THROWS_AS(circular_frame(1), Error);
}

TEST_CASE("six vectors in R^4 and MUBs", "[constructions]")
{
    const auto six = six_in_r4();
    CHECK(coherence(six) == Approx(1.0 / 3.0).margin(1e-12));
    CHECK_FALSE(tightness(six, tol).tight());
    const auto sp = spectrum(six, tol).eigenvalues;
    CHECK(sp[0] == Approx(2.0));
    CHECK(sp[3] == Approx(4.0 / 3.0));
    REQUIRE(angle_catalog(6, 4).size() >= 1);
    CHECK(angle_catalog(6, 4)[0].value == Approx(coherence(six)).margin(1e-12));

    const auto mub = mub_r2();
    CHECK(coherence(mub) == Approx(1.0 / std::sqrt(2.0)).margin(1e-12));
    CHECK(tightness(mub, tol).bound == Approx(2.0));
    const auto g = gram(mub);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 2; j < 4; ++j)
            CHECK(std::abs(g.entries(i, j)) == Approx(1.0 / std::sqrt(2.0)).margin(1e-15));
}

TEST_CASE("simplex ETFs", "[constructions]")
{
    for (std::size_t n = 1; n <= 8; ++n)
    {
        const auto s = simplex_etf(n);
        REQUIRE(s.size() == n + 1);
        const auto g = gram(s);
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = 0; j <= n; ++j)
                if (i != j)
                    CHECK(g.entries(i, j) == Approx(-1.0 / n).margin(1e-14));
        CHECK(is_etf(s, tol).etf);
    }
    CHECK(coherence(simplex_etf(1)) == Approx(1.0));
}

TEST_CASE("tight completion", "[constructions]")
{
    auto c = tight_completion(six_in_r4(), tol);
    CHECK(c.lambda == Approx(2.0));
    CHECK(c.multiplicity == 1);
    REQUIRE(c.added.size() == 3);
    Matrix s = frame_operator(six_in_r4());
    for (const auto& z : c.added)
    {
        CHECK(norm(z) == Approx(std::sqrt(2.0 / 3.0)));
        CHECK(std::abs(z[0]) < 1e-12);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t k = 0; k < 4; ++k)
                s(r, k) += z[r] * z[k];
    }
    CHECK((s - (Matrix::identity(4) + Matrix::identity(4))).max_abs() < 1e-12);

    CHECK(tight_completion(onb(3), tol).added.empty());
    c = tight_completion(UnitVectorSystem::create(2, {{1, 0}}), tol);
    CHECK(c.lambda == Approx(1.0));
    REQUIRE(c.added.size() == 1);
    CHECK(std::abs(c.added[0][1]) == Approx(1.0));
}

TEST_CASE("Naimark complement", "[constructions]")
{
    auto nc = naimark_complement(circular_frame(5), tol);
    CHECK(nc.system.size() == 5);
    CHECK(nc.system.dim() == 3);
    CHECK(nc.lambda == Approx(2.5));
    CHECK(coherence(nc.system) == Approx(2.0 / 3.0 * std::cos(pi / 5)).margin(1e-9));
    CHECK(tightness(nc.system, tol).tight());

    nc = naimark_complement(simplex_etf(3), tol);
    CHECK(nc.system.dim() == 1);
    CHECK(nc.lambda == Approx(4.0 / 3.0));
    const auto g = gram(nc.system);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(g.entries(i, j) == Approx(1.0).margin(1e-9));

    try
    {
        naimark_complement(onb(3), tol);
        FAIL("expected NotScalable");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::NotScalable);
    }

    // Gram relation on random systems, checked from scratch
    sampling::Engine rng(12);
    int done = 0;
    for (int t = 0; done < 60; ++t)
    {
        const std::size_t m = 4 + t % 7;
        const std::size_t n = 2 + t % (m - 2);
        const auto x = sampling::random_unit_system(m, n, rng);
        if (spectrum(x, tol).eigenvalues[0] <= 1.0 + 1e-6)
            continue;
        ++done;
        const auto y = naimark_complement(x, tol);
        const auto gx = gram(x).entries;
        const auto gy = gram(y.system).entries;
        double worst = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (i != j)
                    worst = std::max(worst, std::abs(gy(i, j) * (1.0 - y.lambda) - gx(i, j)));
        CHECK(worst < 1e-8);
        for (const auto& v : y.system.vectors())
            CHECK(oracle::norm(v) == Approx(1.0).margin(1e-8));
    }
}

TEST_CASE("frame doubling", "[constructions]")
{
    const auto d = double_frame(mub_r2());
    CHECK(d.size() == 8);
    CHECK(d.dim() == 4);
    CHECK(tightness(d, tol).bound == Approx(2.0));
    CHECK(coherence(d) == Approx(1.0 / std::sqrt(2.0)).margin(1e-12));
    const auto g = gram(d);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(std::abs(g.entries(i, 4 + j)) < 1e-12);

    const auto o = double_frame(onb(3));
    CHECK(o.size() == 6);
    CHECK(coherence(o) < 1e-15);
    CHECK(tightness(o, tol).kind == TightnessVerdict::Kind::Parseval);

    const auto p = double_frame(UnitVectorSystem::create(2, {{0.6, 0.8}}));
    CHECK(std::abs(dot(p[0], p[1])) < 1e-15);

    // both blocks reproduce the input Gram matrix
    sampling::Engine rng(3);
    for (int t = 0; t < 20; ++t)
    {
        const auto x = sampling::random_unit_system(3 + t % 5, 2 + t % 3, rng);
        const auto dx = double_frame(x);
        const auto gx = gram(x).entries;
        const auto gd = gram(dx).entries;
        const std::size_t m = x.size();
        Matrix plus(m, m), minus(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                plus(i, j) = gd(i, j), minus(i, j) = gd(m + i, m + j);
        CHECK(max_offdiag_gap(plus, gx) < 1e-14);
        CHECK(max_offdiag_gap(minus, gx) < 1e-14);
        CHECK(coherence(dx) == Approx(coherence(x)).margin(1e-14));
        CHECK(tightness(dx, tol).tight() == tightness(x, tol).tight());
    }
}

TEST_CASE("construct by name", "[constructions]")
{
    CHECK(construct_by_name("circular", 5, 0).size() == 5);
    CHECK(construct_by_name("six-in-r4", 0, 0).dim() == 4);
    CHECK(construct_by_name("mub-r2", 0, 0).size() == 4);
    CHECK(construct_by_name("simplex", 0, 3).size() == 4);
    CHECK_THROWS_AS(construct_by_name("nope", 0, 0), Error);
}

TEST_CASE("angle catalog", "[constructions]")
{
    auto a = angle_catalog(6, 4);
    REQUIRE_FALSE(a.empty());
    CHECK(a[0].kind == AngleCatalogEntry::Kind::GrassmannianAlpha);
    CHECK(a[0].value == Approx(1.0 / 3.0).margin(1e-12));

    a = angle_catalog(9, 7);
    REQUIRE_FALSE(a.empty());
    CHECK(a[0].value == Approx(0.2).margin(1e-12));

    a = angle_catalog(6, 3);
    REQUIRE(a.size() == 1);
    CHECK(a[0].value == Approx(1.0 / std::sqrt(5.0)).margin(1e-12));
    // the printed form before simplification
    const double s5 = std::sqrt(5.0);
    CHECK(a[0].value == Approx(6.0 / ((s5 + 1.0) * 3.0 + 3.0 * (s5 - 1.0))).margin(1e-12));

    a = angle_catalog(5, 3);
    REQUIRE(a.size() == 1);
    CHECK(a[0].kind == AngleCatalogEntry::Kind::OneGrassmannianMu);
    CHECK(a[0].value == Approx(2.0 / 3.0 * std::cos(pi / 5)).margin(1e-12));

    CHECK(angle_catalog(7, 3).empty());
    CHECK(angle_catalog(3, 3).empty());

    for (std::size_t n = 2; n <= 200; ++n)
        for (std::size_t m = n + 1; m <= n + 30; ++m)
            for (const auto& e : angle_catalog(m, n))
            {
                CHECK(e.value > 0.0);
                CHECK(e.value < 1.0);
                CHECK(e.value >= welch_bound(m, n) - 1e-12);
            }
}

TEST_CASE("catalog consistency", "[constructions]")
{
    const auto c = catalog_consistency(2, 300, 3, 330);
    CHECK(c.violations == 0);
    CHECK(c.comparisons.size() > 100);
    CHECK(angle_catalog(9, 7)[0].value < angle_catalog(6, 4)[0].value);
    CHECK(angle_catalog(5, 3)[0].value > welch_bound(5, 3));
    CHECK(angle_catalog(6, 4)[0].value >= welch_bound(6, 4));
}
