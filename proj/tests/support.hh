//---------------------------------------------------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file support.hh
//! Fixture loading, independent oracles and reference graphs for the tests.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "bbook/compiler.hh"
#include "bbook/topology.hh"

namespace bbook::test
{
//---------------------------------------------------------------------------//
inline std::string read_text(std::string const& path)
{
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline BilliardBook load_book(std::string const& name)
{
    return book_from_json(
        read_text(std::string(BBOOK_DATA_DIR) + "/books/" + name + ".json"));
}

inline OrderedGame load_game(std::string const& name)
{
    return game_from_json(
        read_text(std::string(BBOOK_DATA_DIR) + "/games/" + name + ".json"));
}

inline OrderedGame make_game(std::vector<double> betas, std::vector<int> sig)
{
    return OrderedGame{ConfocalFamily{9, 4}, std::move(betas), std::move(sig)};
}

inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

//---------------------------------------------------------------------------//
// Independent oracles
//---------------------------------------------------------------------------//

/*!
 * Discriminant of (p + t v) substituted into x^2/(a-l) + y^2/(b-l) = 1,
 * without clearing denominators: A t^2 + 2 B t + C with the quarter
 * discriminant B^2 - A C.
 */
inline double raw_discriminant(
    ConfocalFamily const& f, PlanePoint p, double vx, double vy, double lambda)
{
    double const ia = 1 / (f.a - lambda);
    double const ib = 1 / (f.b - lambda);
    double const qa = vx * vx * ia + vy * vy * ib;
    double const qb = p.x * vx * ia + p.y * vy * ib;
    double const qc = p.x * p.x * ia + p.y * p.y * ib - 1;
    return qb * qb - qa * qc;
}

// Tangency parameter by bisection on the sign of the raw discriminant.
// Only valid on an interval where the sign changes exactly once.
inline double bisect_tangency(ConfocalFamily const& f,
                              PlanePoint p,
                              double vx,
                              double vy,
                              double lo,
                              double hi)
{
    double flo = raw_discriminant(f, p, vx, vy, lo);
    for (int i = 0; i < 200; ++i)
    {
        double const mid = (lo + hi) / 2;
        double const fm = raw_discriminant(f, p, vx, vy, mid);
        if ((fm > 0) == (flo > 0))
        {
            lo = mid;
            flo = fm;
        }
        else
        {
            hi = mid;
        }
    }
    return (lo + hi) / 2;
}

// Mirror through the tangent obtained from a finite-difference gradient
inline std::pair<double, double> reflect_by_gradient(
    ConfocalFamily const& f, double lambda, PlanePoint p, double vx, double vy)
{
    auto F = [&](double x, double y) {
        return x * x / (f.a - lambda) + y * y / (f.b - lambda);
    };
    double const h = 1e-6;
    double gx = (F(p.x + h, p.y) - F(p.x - h, p.y)) / (2 * h);
    double gy = (F(p.x, p.y + h) - F(p.x, p.y - h)) / (2 * h);
    double const gn = std::hypot(gx, gy);
    double const tx = -gy / gn;
    double const ty = gx / gn;
    double const vt = vx * tx + vy * ty;
    return {2 * vt * tx - vx, 2 * vt * ty - vy};
}

// First forward crossing of an ellipse by scanning and bisection
inline std::optional<double> scan_intersection(ConfocalFamily const& f,
                                               PlanePoint p,
                                               double vx,
                                               double vy,
                                               double lambda,
                                               double t_min,
                                               double t_max)
{
    auto F = [&](double t) {
        double const x = p.x + t * vx;
        double const y = p.y + t * vy;
        return x * x / (f.a - lambda) + y * y / (f.b - lambda) - 1;
    };
    int const n = 20000;
    double prev_t = t_min;
    double prev = F(prev_t);
    for (int i = 1; i <= n; ++i)
    {
        double const t = t_min + (t_max - t_min) * i / n;
        double const cur = F(t);
        if ((cur > 0) != (prev > 0))
        {
            double lo = prev_t, hi = t;
            for (int k = 0; k < 200; ++k)
            {
                double const mid = (lo + hi) / 2;
                if ((F(mid) > 0) == (prev > 0))
                    lo = mid;
                else
                    hi = mid;
            }
            return (lo + hi) / 2;
        }
        prev_t = t;
        prev = cur;
    }
    return std::nullopt;
}

//---------------------------------------------------------------------------//
// Random valid games without consecutive repeats
//---------------------------------------------------------------------------//

inline OrderedGame random_game(std::mt19937_64& rng, int max_n)
{
    static double const levels[] = {0.0, 0.8, 1.6, 2.4, 3.2};
    while (true)
    {
        int const n = 2 + static_cast<int>(rng() % (max_n - 1));
        OrderedGame g;
        g.family = {9, 4};
        for (int k = 0; k < n; ++k)
            g.betas.push_back(levels[rng() % 5]);
        for (int k = 0; k < n; ++k)
        {
            double const prev = g.betas[(k + n - 1) % n];
            double const next = g.betas[(k + 1) % n];
            bool const inner = g.betas[k] > prev && g.betas[k] > next;
            g.signature.push_back(inner && rng() % 2 ? -1 : 1);
        }
        bool repeat = false;
        for (int k = 0; k < n; ++k)
            repeat = repeat || g.betas[k] == g.betas[(k + 1) % n];
        if (repeat || !validate_game(g).valid())
            continue;
        return g;
    }
}

// Admissible caustic away from the interval ends
inline double random_admissible_caustic(std::mt19937_64& rng,
                                        OrderedGame const& g)
{
    double const top = *std::max_element(g.betas.begin(), g.betas.end());
    double const pad = 1e-3;
    double const w1 = (g.family.b - top) - 2 * pad;
    double const w2 = (g.family.a - g.family.b) - 2 * pad;
    double const u = uniform(rng, 0, w1 + w2);
    return u < w1 ? top + pad + u : g.family.b + pad + (u - w1);
}

//---------------------------------------------------------------------------//
// Reference Fomenko graphs drawn by hand, placed on the
// fixture levels beta = 0, 2, 3.5 with b = 4, a = 9
//---------------------------------------------------------------------------//

inline FomenkoGraph
make_graph(std::vector<std::pair<AtomType, double>> const& atoms,
           std::vector<std::pair<int, int>> const& edges)
{
    FomenkoGraph g;
    for (auto const& [t, l] : atoms)
    {
        FomenkoAtom a;
        a.type = t;
        a.lambda = l;
        g.atoms.push_back(a);
    }
    for (auto const& [u, v] : edges)
    {
        FomenkoEdge e;
        e.from = u;
        e.to = v;
        g.edges.push_back(e);
    }
    return g;
}

//! One C2 at b joined to two A at the outer boundary and two A at a
inline FomenkoGraph reference_three_leaf()
{
    using T = AtomType;
    return make_graph(
        {{T::A, 0}, {T::A, 0}, {T::C2, 4}, {T::A, 9}, {T::A, 9}},
        {{2, 0}, {2, 1}, {2, 3}, {2, 4}});
}

//! Two B at beta_2, two C2 at b
inline FomenkoGraph reference_four_leaf()
{
    using T = AtomType;
    return make_graph({{T::A, 0},
                       {T::A, 0},
                       {T::B, 2},
                       {T::B, 2},
                       {T::C2, 4},
                       {T::C2, 4},
                       {T::A, 9},
                       {T::A, 9},
                       {T::A, 9},
                       {T::A, 9}},
                      {{2, 0},
                       {3, 1},
                       {4, 2},
                       {5, 2},
                       {4, 3},
                       {5, 3},
                       {4, 6},
                       {4, 7},
                       {5, 8},
                       {5, 9}});
}

//! A-A at the outer boundary, one B at b, one A at a
inline FomenkoGraph reference_nested()
{
    using T = AtomType;
    return make_graph({{T::A, 0}, {T::B, 4}, {T::A, 9}, {T::A, 0}},
                      {{1, 0}, {1, 2}, {1, 3}});
}

//! Two B at beta_3, B and C2 at b
inline FomenkoGraph reference_six()
{
    using T = AtomType;
    return make_graph({{T::A, 0},
                       {T::A, 0},
                       {T::B, 3.5},
                       {T::B, 3.5},
                       {T::B, 4},
                       {T::C2, 4},
                       {T::A, 9},
                       {T::A, 9},
                       {T::A, 9}},
                      {{2, 0},
                       {3, 1},
                       {4, 2},
                       {5, 2},
                       {4, 3},
                       {5, 3},
                       {4, 6},
                       {5, 7},
                       {5, 8}});
}

//---------------------------------------------------------------------------//
}  // namespace bbook::test
