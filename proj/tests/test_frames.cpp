#include "linepack/constructions.hpp"
#include "linepack/error.hpp"
#include "linepack/frames.hpp"
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

UnitVectorSystem onb_plus_diagonal()
{
    const double s = 1.0 / std::sqrt(3.0);
    return UnitVectorSystem::create(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {s, s, s}});
}

UnitVectorSystem tripod(double alpha)
{
    const double c = std::sqrt(1.0 - alpha * alpha);
    return UnitVectorSystem::create(3, {{0, 0, 1}, {c, 0, alpha}, {0, c, alpha}, {0, -c, alpha}});
}

std::vector<Vec> plain(const UnitVectorSystem& x)
{
    return {x.vectors().begin(), x.vectors().end()};
}

} // namespace

TEST_CASE("unit vector system validation", "[frames]")
{
    CHECK_NOTHROW(UnitVectorSystem::create(2, {{1, 0}, {0, 1}}));
    try
    {
        UnitVectorSystem::create(2, {{2, 0}});
        FAIL("expected NormError");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::NormError);
    }
    CHECK_THROWS_AS(UnitVectorSystem::create(2, {{1, 0, 0}}), Error);
    CHECK_THROWS_AS(UnitVectorSystem::create(2, {}), Error);
    CHECK_THROWS_AS(UnitVectorSystem::create(0, {{}}), Error);
    CHECK_THROWS_AS(UnitVectorSystem::create(1, {{NAN}}), Error);

    // inside the renormalization window: fixed up and flagged
    const auto x = UnitVectorSystem::create(2, {{1.0 + 5e-7, 0.0}, {0.0, 1.0}});
    CHECK(x[0][0] == 1.0);
    CHECK(x.warnings().size() == 1);
    // within eq_abs: left alone
    const auto y = UnitVectorSystem::create(2, {{1.0 + 1e-12, 0.0}});
    CHECK(y.warnings().empty());
}

TEST_CASE("gram and coherence", "[frames]")
{
    auto g = gram(onb(3));
    CHECK(g.entries == Matrix::identity(3));
    CHECK(g.coherence == 0.0);

    const auto six = six_in_r4();
    g = gram(six);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            CHECK(std::abs(g.entries(i, j)) == Approx(i == j ? 1.0 : 1.0 / 3.0).margin(1e-14));
    CHECK(g.coherence == Approx(1.0 / 3.0).margin(1e-12));

    CHECK(coherence(circular_frame(5)) == Approx(std::cos(pi / 5)).margin(1e-12));
    CHECK(coherence(UnitVectorSystem::create(2, {{1, 0}})) == 0.0);
}

TEST_CASE("gram kernels: serial and parallel identical", "[frames]")
{
    sampling::Engine rng(5);
    for (int t = 0; t < 20; ++t)
    {
        const auto x = sampling::random_unit_system(3 + t, 2 + t % 5, rng);
        CHECK(gram(x, kernels::Exec::Serial).entries == gram(x, kernels::Exec::Parallel).entries);
        CHECK(frame_operator(x, kernels::Exec::Serial) == frame_operator(x, kernels::Exec::Parallel));
        CHECK(coherence(x) == Approx(oracle::coherence(plain(x))).margin(0.0));
    }
}

TEST_CASE("neighbors", "[frames]")
{
    const auto ex = tripod(0.5);
    auto nb = neighbors(ex, 0, 0.5, tol);
    CHECK(nb.members == IndexSet{1, 2, 3});
    CHECK(nb.signs == std::vector<int>{1, 1, 1});

    nb = neighbors(onb(3), 1, 0.0, tol);
    CHECK(nb.members == IndexSet{0, 2});

    nb = neighbors(six_in_r4(), 0, 1.0 / 3.0, tol);
    CHECK(nb.members == IndexSet{1, 2, 3, 4, 5});
    for (std::size_t k = 0; k < nb.members.size(); ++k)
        CHECK(nb.signs[k] == (gram(six_in_r4()).entries(0, nb.members[k]) > 0 ? 1 : -1));
}

TEST_CASE("frame operator matches direct summation", "[frames]")
{
    CHECK((frame_operator(onb(4)) - Matrix::identity(4)).max_abs() == 0.0);

    const auto s6 = frame_operator(six_in_r4());
    CHECK(s6(0, 0) == Approx(2.0));
    for (std::size_t k = 1; k < 4; ++k)
        CHECK(s6(k, k) == Approx(4.0 / 3.0));
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            if (r != c)
                CHECK(std::abs(s6(r, c)) < 1e-15);

    const auto s5 = frame_operator(circular_frame(5));
    CHECK((s5 - Matrix{{2.5, 0.0}, {0.0, 2.5}}).max_abs() < 1e-14);

    sampling::Engine rng(9);
    for (int t = 0; t < 30; ++t)
    {
        const auto x = sampling::random_unit_system(2 + t % 9, 1 + t % 6, rng);
        const auto s = frame_operator(x);
        const auto o = oracle::frame_operator(plain(x));
        for (std::size_t r = 0; r < x.dim(); ++r)
            for (std::size_t c = 0; c < x.dim(); ++c)
                CHECK(s(r, c) == Approx(o[r][c]).margin(1e-14));
        const auto sp = spectrum(x, tol);
        double trace = 0.0;
        for (double v : sp.eigenvalues)
            trace += v;
        CHECK(trace == Approx(double(x.size())).margin(1e-8 * x.size()));
    }
}

TEST_CASE("spanning", "[frames]")
{
    const auto six = six_in_r4();
    for (std::size_t j = 0; j < 6; ++j)
        CHECK(spans(six, IndexSet{j}, tol));
    CHECK_FALSE(spans(six, IndexSet{0, 1}, tol));
    CHECK_FALSE(spans(onb(3), IndexSet{0}, tol));
    CHECK(spans(onb(3), tol));
}

TEST_CASE("tightness", "[frames]")
{
    CHECK(tightness(onb(3), tol).kind == TightnessVerdict::Kind::Parseval);
    const auto t5 = tightness(circular_frame(5), tol);
    CHECK(t5.kind == TightnessVerdict::Kind::Tight);
    CHECK(t5.bound == Approx(2.5));
    CHECK(tightness(six_in_r4(), tol).kind == TightnessVerdict::Kind::NotTight);
    CHECK(tightness(mub_r2(), tol).bound == Approx(2.0));
}

TEST_CASE("equiangularity and ETFs", "[frames]")
{
    auto e = equiangularity(six_in_r4(), tol);
    CHECK(e.equiangular);
    CHECK(e.angle == Approx(1.0 / 3.0));
    e = equiangularity(onb(3), tol);
    CHECK(e.equiangular);
    CHECK(e.angle == 0.0);
    CHECK_FALSE(equiangularity(onb_plus_diagonal(), tol).equiangular);

    for (std::size_t n = 1; n <= 8; ++n)
    {
        const auto s = simplex_etf(n);
        const auto v = is_etf(s, tol);
        CHECK(v.etf);
        if (n > 1)
            CHECK(coherence(s) == Approx(welch_bound(n + 1, n)).margin(1e-12));
    }
    CHECK_FALSE(is_etf(six_in_r4(), tol).etf);
    CHECK(is_etf(six_in_r4(), tol).equiangular);
    CHECK(is_etf(onb(3), tol).etf);
    CHECK_FALSE(is_etf(circular_frame(5), tol).etf);
    CHECK(is_etf(circular_frame(3), tol).etf);
}

TEST_CASE("bounds", "[frames]")
{
    CHECK(welch_bound(6, 4) == Approx(std::sqrt(0.1)).margin(1e-15));
    CHECK(welch_bound(4, 3) == Approx(1.0 / 3.0).margin(1e-15));
    CHECK(gerzon_max(3) == 6);
    CHECK(orthoplex_bound(3) == Approx(0.5773502692).margin(1e-10));

    const auto card = bounds_card(six_in_r4(), tol);
    REQUIRE(card.welch);
    CHECK(*card.welch == Approx(0.3162277660).margin(1e-10));
    CHECK_FALSE(card.meets_welch);
    CHECK(card.welch_respected);
    CHECK_FALSE(bounds_card(onb(3), tol).welch);

    // Welch holds for any genuine unit-norm system with m > n.
    sampling::Engine rng(21);
    for (int t = 0; t < 200; ++t)
    {
        const std::size_t n = 1 + t % 5;
        const auto x = sampling::random_unit_system(n + 1 + t % 7, n, rng);
        CHECK(bounds_card(x, tol).welch_respected);
    }
}

TEST_CASE("reconstruction", "[frames]")
{
    const Vec t{0.3, -1.2, 2.0};
    CHECK(norm(difference(reconstruct(onb(3), t, tol), t)) < 1e-14);

    // tight route (1/A) sum <x, phi_k> phi_k
    const auto c5 = circular_frame(5);
    Vec direct(2, 0.0);
    for (const auto& p : c5.vectors())
        axpy(dot(p, Vec{1.0, 0.0}) / 2.5, p, direct);
    CHECK(norm(difference(direct, Vec{1.0, 0.0})) < 1e-14);
    CHECK(norm(difference(reconstruct(c5, Vec{1.0, 0.0}, tol), Vec{1.0, 0.0})) < 1e-12);

    sampling::Engine rng(1);
    const Vec r = scaled(sampling::random_unit(4, rng), 3.0);
    CHECK(norm(difference(reconstruct(six_in_r4(), r, tol), r)) < 1e-7);

    try
    {
        reconstruct(UnitVectorSystem::create(2, {{1, 0}}), Vec{1.0, 0.0}, tol);
        FAIL("expected NotAFrame");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::NotAFrame);
    }
}

TEST_CASE("neighbor counts and drop-one diagnostics", "[frames]")
{
    auto c = neighbor_count_report(six_in_r4(), tol);
    CHECK(c.counts == std::vector<std::size_t>(6, 5));
    CHECK(c.status == DiagnosticStatus::Skip);

    c = neighbor_count_report(onb(3), tol);
    CHECK(c.counts == std::vector<std::size_t>(3, 2));

    c = neighbor_count_report(mub_r2(), tol);
    CHECK(c.counts == std::vector<std::size_t>(4, 2));
    CHECK(c.status == DiagnosticStatus::Pass);

    CHECK(drop_one_spanning(six_in_r4(), tol).status == DiagnosticStatus::Pass);
    const auto d = drop_one_spanning(UnitVectorSystem::create(2, {{1, 0}, {0, 1}, {0, -1}}), tol);
    CHECK(d.status == DiagnosticStatus::Fail);
    CHECK(d.failing == IndexSet{0});
}

TEST_CASE("invariance under rotation, permutation and sign flips", "[frames]")
{
    sampling::Engine rng(33);
    for (const auto& x : {six_in_r4(), circular_frame(7), simplex_etf(4), mub_r2()})
    {
        const auto q = sampling::random_orthogonal(x.dim(), rng);
        const auto y = sampling::shuffle_and_flip(sampling::rotate(x, q), rng);
        CHECK(coherence(y) == Approx(coherence(x)).margin(1e-12));
        CHECK(tightness(y, tol).kind == tightness(x, tol).kind);
        CHECK(is_etf(y, tol).etf == is_etf(x, tol).etf);
        const auto ex = spectrum(x, tol).eigenvalues;
        const auto ey = spectrum(y, tol).eigenvalues;
        for (std::size_t k = 0; k < ex.size(); ++k)
            CHECK(ey[k] == Approx(ex[k]).margin(1e-10));
    }
}
