#include "linepack/constructions.hpp"
#include "linepack/error.hpp"
#include "linepack/numerics.hpp"
#include "linepack/sampling.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace linepack;
using Catch::Approx;

namespace {

const Tolerances tol{};

Matrix diag(std::initializer_list<double> d)
{
    Matrix m(d.size(), d.size());
    std::size_t i = 0;
    for (double v : d)
        m(i, i) = v, ++i;
    return m;
}

} // namespace

TEST_CASE("eigen: identity and diagonal", "[numerics]")
{
    auto s = sym_eig(Matrix::identity(3), tol);
    REQUIRE(s.eigenvalues.size() == 3);
    for (double v : s.eigenvalues)
        CHECK(v == Approx(1.0).margin(1e-15));
    CHECK(s.top_multiplicity == 3);

    s = sym_eig(diag({1.0, 2.0}), tol);
    CHECK(s.eigenvalues[0] == Approx(2.0));
    CHECK(s.eigenvalues[1] == Approx(1.0));
    // first nonzero coordinate positive
    CHECK(s.eigenvector(0) == Vec{0.0, 1.0});
    CHECK(s.eigenvector(1) == Vec{1.0, 0.0});
    CHECK(s.top_multiplicity == 1);
}

TEST_CASE("eigen: six vectors in R^4", "[numerics]")
{
    const auto x = six_in_r4();
    const auto rows = oracle::frame_operator({x.vectors().begin(), x.vectors().end()});
    Matrix s(4, 4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            s(r, c) = rows[r][c];
    const auto e = sym_eig(s, tol);
    CHECK(e.eigenvalues[0] == Approx(2.0).margin(1e-12));
    for (std::size_t k = 1; k < 4; ++k)
        CHECK(e.eigenvalues[k] == Approx(4.0 / 3.0).margin(1e-12));
    CHECK(e.top_multiplicity == 1);
}

TEST_CASE("eigen: random symmetric reconstruction", "[numerics]")
{
    sampling::Engine rng(7);
    std::normal_distribution<double> g;
    for (std::size_t n : {1u, 2u, 5u, 12u})
    {
        Matrix a(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c <= r; ++c)
                a(r, c) = a(c, r) = g(rng);
        const auto e = sym_eig(a, tol);
        Matrix v = e.eigenvectors;
        // V^T diag(lambda) V == A and V V^T == I
        Matrix d(n, n);
        for (std::size_t k = 0; k < n; ++k)
            d(k, k) = e.eigenvalues[k];
        CHECK((v.transpose() * d * v - a).max_abs() < 1e-12 * std::max(1.0, a.max_abs()) * n);
        CHECK((v * v.transpose() - Matrix::identity(n)).max_abs() < 1e-13 * n);
        for (std::size_t k = 1; k < n; ++k)
            CHECK(e.eigenvalues[k - 1] >= e.eigenvalues[k]);
    }
}

TEST_CASE("eigen: contract errors", "[numerics]")
{
    CHECK_THROWS_AS(sym_eig(Matrix{{1.0, 2.0}, {0.0, 1.0}}, tol), Error);
    try
    {
        sym_eig(Matrix(2, 3), tol);
        FAIL("expected NotSymmetric");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::NotSymmetric);
    }
    try
    {
        sym_eig(Matrix{{NAN, 0.0}, {0.0, 1.0}}, tol);
        FAIL("expected NonFinite");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::NonFinite);
    }
}

TEST_CASE("rank", "[numerics]")
{
    CHECK(rank_of(Matrix::identity(4), tol) == 4);
    CHECK(rank_of(Matrix(3, 3), tol) == 0);
    CHECK(rank_of(Matrix{{1.0, 2.0}, {2.0, 4.0}}, tol) == 1);

    const auto x = six_in_r4();
    const auto all = x.as_rows();
    CHECK(rank_of(all, tol) == 4);
    std::vector<Vec> rest(x.vectors().begin() + 2, x.vectors().end());
    CHECK(rank_of(Matrix::from_rows(rest, 4), tol) == 3);
}

TEST_CASE("orthonormal complement", "[numerics]")
{
    auto c = orthonormal_complement(Matrix{{1.0, 0.0}}, tol);
    REQUIRE(c.rows() == 1);
    CHECK(std::abs(c(0, 0)) < 1e-15);
    CHECK(std::abs(c(0, 1)) == Approx(1.0));

    c = orthonormal_complement(Matrix::identity(3), tol);
    CHECK(c.rows() == 0);
    CHECK(c.cols() == 3);

    const double h = 1.0 / std::sqrt(2.0);
    c = orthonormal_complement(Matrix{{h, h}}, tol);
    REQUIRE(c.rows() == 1);
    CHECK(std::abs(c(0, 0) + c(0, 1)) < 1e-15);
    CHECK(std::abs(c(0, 0)) == Approx(h));

    CHECK_THROWS_AS(orthonormal_complement(Matrix{{1.0, 1.0}}, tol), Error);

    sampling::Engine rng(11);
    for (std::size_t n = 2; n <= 8; ++n)
        for (std::size_t r = 0; r <= n; ++r)
        {
            const Matrix q = sampling::random_orthogonal(n, rng);
            std::vector<Vec> top;
            for (std::size_t k = 0; k < r; ++k)
                top.push_back(q.row_vec(k));
            const Matrix given = Matrix::from_rows(top, n);
            const Matrix comp = orthonormal_complement(given, tol);
            REQUIRE(comp.rows() == n - r);
            CHECK((comp * comp.transpose() - Matrix::identity(n - r)).max_abs() < 1e-12);
            if (r > 0 && r < n)
                CHECK((given * comp.transpose()).max_abs() < 1e-12);
        }
}

TEST_CASE("split row space", "[numerics]")
{
    const auto split = split_row_space(Matrix{{1.0, 1.0, 0.0}, {2.0, 2.0, 0.0}}, tol);
    CHECK(split.range.rows() == 1);
    CHECK(split.complement.rows() == 2);
    CHECK((split.range * split.complement.transpose()).max_abs() < 1e-12);
}

TEST_CASE("cone feasibility", "[numerics]")
{
    {
        const std::vector<Vec> g{{1.0, 1.0}, {1.0, -1.0}};
        const Vec t{1.0, 0.0};
        const auto r = nnls_cone_feasible(g, t, tol);
        REQUIRE(std::holds_alternative<ConeFeasible>(r));
        const auto& w = std::get<ConeFeasible>(r).weights;
        CHECK(w[0] == Approx(0.5));
        CHECK(w[1] == Approx(0.5));
    }
    {
        const std::vector<Vec> g{{0.0, 1.0}};
        const Vec t{1.0, 0.0};
        const auto r = nnls_cone_feasible(g, t, tol);
        REQUIRE(std::holds_alternative<ConeInfeasible>(r));
        const auto& c = std::get<ConeInfeasible>(r).certificate;
        CHECK(c[0] == Approx(1.0));
        CHECK(std::abs(c[1]) < 1e-12);
    }
    {
        const std::vector<Vec> g{{1.0, 0.0}, {0.0, 1.0}};
        const Vec t{-1.0, -1.0};
        const auto r = nnls_cone_feasible(g, t, tol);
        REQUIRE(std::holds_alternative<ConeInfeasible>(r));
        const auto& c = std::get<ConeInfeasible>(r).certificate;
        CHECK(c[0] == Approx(-1.0 / std::sqrt(2.0)));
        CHECK(c[1] == Approx(-1.0 / std::sqrt(2.0)));
    }
}

TEST_CASE("cone certificates separate on random instances", "[numerics]")
{
    sampling::Engine rng(3);
    for (int trial = 0; trial < 200; ++trial)
    {
        const std::size_t n = 2 + trial % 3;
        const std::size_t k = 1 + trial % 5;
        std::vector<Vec> g;
        for (std::size_t i = 0; i < k; ++i)
            g.push_back(sampling::random_unit(n, rng));
        const Vec t = sampling::random_unit(n, rng);
        const auto r = nnls_cone_feasible(g, t, tol);
        if (const auto* f = std::get_if<ConeFeasible>(&r))
        {
            Vec s(n, 0.0);
            for (std::size_t i = 0; i < k; ++i)
            {
                CHECK(f->weights[i] >= 0.0);
                axpy(f->weights[i], g[i], s);
            }
            CHECK(norm(difference(s, t)) <= 1e-9);
        }
        else
        {
            const auto& c = std::get<ConeInfeasible>(r).certificate;
            CHECK(norm(c) == Approx(1.0));
            for (const auto& gi : g)
                CHECK(dot(c, gi) <= tol.hull_abs);
            CHECK(dot(c, t) > tol.hull_abs);
        }
    }
}

TEST_CASE("min-norm point: small cases", "[numerics]")
{
    {
        const std::vector<Vec> p{{1.0, 0.0}};
        const auto h = min_norm_point(p, tol);
        CHECK(h.point == Vec{1.0, 0.0});
        CHECK(h.weights == Vec{1.0});
    }
    {
        const std::vector<Vec> p{{1.0, 0.0}, {-1.0, 0.0}};
        const auto h = min_norm_point(p, tol);
        CHECK(norm(h.point) < 1e-12);
        CHECK(h.weights[0] == Approx(0.5));
        CHECK(h.weights[1] == Approx(0.5));
    }
    {
        const std::vector<Vec> p{{1.0, 0.0}, {0.0, 1.0}};
        const auto h = min_norm_point(p, tol);
        CHECK(h.point[0] == Approx(0.5));
        CHECK(h.point[1] == Approx(0.5));
        CHECK(norm(h.point) == Approx(1.0 / std::sqrt(2.0)));
    }
}

TEST_CASE("min-norm point agrees with face enumeration", "[numerics]")
{
    sampling::Engine rng(19);
    std::uniform_real_distribution<double> shift(-1.0, 1.0);
    for (int trial = 0; trial < 300; ++trial)
    {
        const std::size_t n = 2 + trial % 3;
        const std::size_t k = 1 + trial % 6;
        std::vector<Vec> p;
        const Vec c{shift(rng), shift(rng), shift(rng), shift(rng)};
        for (std::size_t i = 0; i < k; ++i)
        {
            Vec v = sampling::random_unit(n, rng);
            // some instances contain the origin, some do not
            if (trial % 2)
                for (std::size_t d = 0; d < n; ++d)
                    v[d] += c[d];
            p.push_back(v);
        }
        const auto h = min_norm_point(p, tol);
        const double expect = oracle::min_hull_norm(p);
        CHECK(norm(h.point) == Approx(expect).margin(1e-9));

        double wsum = 0.0;
        Vec rebuilt(n, 0.0);
        for (std::size_t i = 0; i < k; ++i)
        {
            CHECK(h.weights[i] >= 0.0);
            wsum += h.weights[i];
            axpy(h.weights[i], p[i], rebuilt);
        }
        CHECK(wsum == Approx(1.0).margin(1e-12));
        CHECK(norm(difference(rebuilt, h.point)) < 1e-12);
    }
}

TEST_CASE("pseudo-solve", "[numerics]")
{
    const Matrix a{{2.0, 0.0}, {0.0, 0.0}};
    const Vec b{4.0, 1.0};
    const Vec x = sym_pseudo_solve(a, b, tol);
    CHECK(x[0] == Approx(2.0));
    CHECK(std::abs(x[1]) < 1e-15);
}

TEST_CASE("tolerance validation", "[numerics]")
{
    CHECK_NOTHROW(Tolerances{}.validate());
    Tolerances bad;
    bad.hull_abs = 0.0;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = {};
    bad.eq_abs = 0.5;
    CHECK_THROWS_AS(bad.validate(), Error);
}
