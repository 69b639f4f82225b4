//---------------------------------------------------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file test_geometry.cc
//---------------------------------------------------------------------------//
#include <cmath>
#include <random>

#include "bbook/error.hh"
#include "bbook/geometry.hh"
#include "doctest.h"
#include "support.hh"

using namespace bbook;
using bbook::test::uniform;

namespace
{
ConfocalFamily const fam{9, 4};

UnitVector random_dir(std::mt19937_64& rng)
{
    double const phi = uniform(rng, 0, 2 * M_PI);
    return UnitVector::normalized(std::cos(phi), std::sin(phi));
}

PlanePoint point_on(double lambda, double theta)
{
    return {std::sqrt(fam.a - lambda) * std::cos(theta),
            std::sqrt(fam.b - lambda) * std::sin(theta)};
}
}  // namespace

TEST_SUITE("geometry")
{
TEST_CASE("family checks")
{
    CHECK_NOTHROW(ConfocalFamily::checked(9, 4));
    CHECK_THROWS_AS(ConfocalFamily::checked(4, 9), Error);
    CHECK_THROWS_AS(ConfocalFamily::checked(9, 0), Error);
}

TEST_CASE("classify conic")
{
    CHECK(classify_conic(fam, 0).kind == ConicKind::Ellipse);
    CHECK(classify_conic(fam, 4).kind == ConicKind::DegenerateFocalSegment);
    CHECK(classify_conic(fam, 6.5).kind == ConicKind::Hyperbola);
    CHECK(classify_conic(fam, 9).kind == ConicKind::DegenerateMinorAxis);
    try
    {
        classify_conic(fam, 10);
        FAIL("expected EmptyConic");
    }
    catch (Error const& e)
    {
        CHECK(e.code() == ErrorCode::EmptyConic);
    }
}

TEST_CASE("caustic parameter examples")
{
    CHECK(caustic_parameter(fam, {0, 2}, UnitVector::normalized(1, 0))
          == doctest::Approx(0).epsilon(1e-12));
    CHECK(caustic_parameter(fam, {0, 0}, UnitVector::normalized(1, 0))
          == doctest::Approx(4).epsilon(1e-12));

    auto const v = UnitVector::normalized(std::sqrt(0.5), -std::sqrt(0.5));
    double const lam = caustic_parameter(fam, {0, 2}, v);
    CHECK(lam == doctest::Approx(4.5).epsilon(1e-12));
    // Independent: bisection on the raw discriminant across (4, 9)
    double const bis = test::bisect_tangency(
        fam, {0, 2}, v.x(), v.y(), 4 + 1e-9, 9 - 1e-9);
    CHECK(std::abs(bis - 4.5) < 1e-9);
    CHECK(std::abs(tangency_oracle(fam, {0, 2}, v, 4.5)) < 1e-9);
}

TEST_CASE("tangency oracle signs")
{
    auto const e1 = UnitVector::normalized(1, 0);
    CHECK(std::abs(tangency_oracle(fam, {0, 2}, e1, 0)) < 1e-12);
    CHECK(tangency_oracle(fam, {0, 0}, e1, 0) > 0);
    CHECK(tangency_oracle(fam, {0, 3}, e1, 0) < 0);
    // direct substitution: 9 y^2 = 36 at y = 3 gives x^2 = 9 (1 - 9/4) < 0
    CHECK(test::raw_discriminant(fam, {0, 3}, 1, 0, 0) < 0);
}

TEST_CASE("reflect examples")
{
    auto r = reflect(fam, 0, {3, 0}, UnitVector::normalized(0.6, 0.8));
    CHECK(r.x() == doctest::Approx(-0.6));
    CHECK(r.y() == doctest::Approx(0.8));
    r = reflect(fam, 0, {0, 2}, UnitVector::normalized(0.6, 0.8));
    CHECK(r.x() == doctest::Approx(0.6));
    CHECK(r.y() == doctest::Approx(-0.8));
    CHECK_THROWS_AS(reflect(fam, 0, {1, 1}, UnitVector::normalized(1, 0)),
                    Error);
}

TEST_CASE("reflection preserves caustic and is an involution")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i)
    {
        double const mu = uniform(rng, -3, 3.9);
        auto const p = point_on(mu, uniform(rng, 0, 2 * M_PI));
        auto const v = random_dir(rng);
        auto const w = reflect(fam, mu, p, v);
        CHECK(std::abs(caustic_parameter(fam, p, w)
                       - caustic_parameter(fam, p, v))
              < 1e-10);
        auto const back = reflect(fam, mu, p, w);
        CHECK(std::abs(back.x() - v.x()) < 1e-12);
        CHECK(std::abs(back.y() - v.y()) < 1e-12);
        CHECK(std::abs(w.norm() - 1) < kUnitNormTol);

        auto const [ox, oy] = test::reflect_by_gradient(fam, mu, p, v.x(), v.y());
        CHECK(std::abs(w.x() - ox) < 1e-7);
        CHECK(std::abs(w.y() - oy) < 1e-7);
    }
}

TEST_CASE("next intersection examples")
{
    auto h = next_intersection(fam, {0, 0}, UnitVector::normalized(1, 0), 0);
    REQUIRE(h);
    CHECK(h->point.x == doctest::Approx(3));
    CHECK(h->t == doctest::Approx(3));
    h = next_intersection(fam, {3, 0}, UnitVector::normalized(-1, 0), 0);
    REQUIRE(h);
    CHECK(h->point.x == doctest::Approx(-3));
    CHECK(h->t == doctest::Approx(6));
    CHECK_FALSE(
        next_intersection(fam, {0, 3}, UnitVector::normalized(1, 0), 0));
}

TEST_CASE("next intersection against scanning oracle")
{
    std::mt19937_64 rng(5);
    int hits = 0;
    for (int i = 0; i < 300; ++i)
    {
        double const lam = uniform(rng, 0, 3.5);
        PlanePoint const p{uniform(rng, -4, 4), uniform(rng, -3, 3)};
        auto const v = random_dir(rng);
        auto const h = next_intersection(fam, p, v, lam);
        auto const o
            = test::scan_intersection(fam, p, v.x(), v.y(), lam, 1e-10, 20);
        // scanning misses near-grazing double roots; compare only clear cases
        if (std::abs(tangency_oracle(fam, p, v, lam)) < 1e-3)
            continue;
        REQUIRE(h.has_value() == o.has_value());
        if (h)
        {
            ++hits;
            CHECK(std::abs(h->t - *o) < 1e-9);
            CHECK(std::abs(conic_residual(fam, lam, h->point)) <= 1e-10);
        }
    }
    CHECK(hits > 50);
}

TEST_CASE("caustic parameter vs tangency oracle on random lines")
{
    std::mt19937_64 rng(99);
    for (int i = 0; i < 1000; ++i)
    {
        PlanePoint const p{uniform(rng, -3, 3), uniform(rng, -3, 3)};
        auto const v = random_dir(rng);
        double const lam = caustic_parameter(fam, p, v);
        CHECK(lam <= fam.a + 1e-12);
        CHECK(std::abs(tangency_oracle(fam, p, v, lam)) <= 1e-9);
    }
}

TEST_CASE("projection and normal")
{
    PlanePoint const q = project_to_ellipse(fam, 2, {2.0, 1.5});
    CHECK(on_conic(fam, 2, q));
    auto const n = outward_normal(fam, 0, {3, 0});
    CHECK(n.x() == doctest::Approx(1));
    CHECK(n.y() == doctest::Approx(0).epsilon(1e-12));
}
}
