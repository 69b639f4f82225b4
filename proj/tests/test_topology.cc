//---------------------------------------------------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file test_topology.cc
//---------------------------------------------------------------------------//
#include <algorithm>
#include <set>
#include <sstream>

#include "bbook/compiler.hh"
#include "bbook/error.hh"
#include "bbook/topology.hh"
#include "doctest.h"
#include "support.hh"

using namespace bbook;
using test::load_book;

namespace
{
int sign_of(double x)
{
    return x < 0 ? -1 : 1;
}

int class_of(double lambda, double b, PlanePoint hit, UnitVector v_in)
{
    return lambda > b ? sign_of(hit.y) : sign_of(cross(hit, v_in));
}

// Drive a real trajectory through the regime's first state and compare its
// symbolic events against the cycle for three full periods.
bool witness_reproduces(BilliardBook const& book,
                        double lambda,
                        RegimeDescriptor const& r)
{
    auto const& first = r.states.front();
    std::size_t const period = r.states.size();
    for (std::uint64_t seed = 0; seed < 400; ++seed)
    {
        PhaseState s;
        try
        {
            s = sample_tangent_start(
                book, first.leaf, lambda, seed, first.ellipse);
        }
        catch (Error const&)
        {
            return false;
        }
        auto const traj = simulate(book, s, static_cast<int>(3 * period));
        if (traj.events.size() != 3 * period)
            return false;
        UnitVector v_in = s.velocity;
        std::vector<SymbolicState> got;
        for (auto const& ev : traj.events)
        {
            got.push_back({ev.leaf_before,
                           ev.ellipse,
                           ev.side,
                           class_of(lambda, book.family.b, ev.hit_point, v_in)});
            v_in = ev.velocity_after;
        }
        if (got.front() != first)
            continue;
        for (std::size_t i = 0; i < got.size(); ++i)
        {
            if (got[i] != r.states[i % period])
                return false;
        }
        return true;
    }
    return false;
}

std::vector<double> regular_samples(BilliardBook const& book)
{
    auto const lv = critical_levels(book);
    std::vector<double> result;
    for (std::size_t i = 0; i + 1 < lv.size(); ++i)
    {
        result.push_back(lv[i] + 0.3 * (lv[i + 1] - lv[i]));
        result.push_back(lv[i] + 0.7 * (lv[i + 1] - lv[i]));
    }
    return result;
}

int capacity(AtomType t)
{
    switch (t)
    {
        case AtomType::A: return 1;
        case AtomType::B: return 3;
        case AtomType::C2: return 4;
        default: return -1;
    }
}

char const* const all_books[] = {"three_leaf",
                                 "four_leaf",
                                 "nested_123",
                                 "nested_132",
                                 "nested_six",
                                 "chain_123",
                                 "chain_132",
                                 "chain_four",
                                 "chain_four_b",
                                 "double_visit",
                                 "double_visit_b"};
}  // namespace

TEST_SUITE("topology")
{
TEST_CASE("critical levels")
{
    CHECK(critical_levels(load_book("three_leaf"))
          == std::vector<double>{0, 2, 4, 9});
    CHECK(critical_levels(load_book("nested_six"))
          == std::vector<double>{0, 2, 3.5, 4, 9});
    BilliardBook disk;
    disk.family = {9, 4};
    disk.leaves = {{1, Disk{1.5}}};
    CHECK(critical_levels(disk) == std::vector<double>{1.5, 4, 9});
}

TEST_CASE("regime counts")
{
    auto const three = load_book("three_leaf");
    CHECK(enumerate_regimes(three, 1).size() == 2);
    CHECK(enumerate_regimes(three, 3).size() == 2);
    CHECK(enumerate_regimes(three, 6).size() == 2);
    auto const four = load_book("four_leaf");
    CHECK(enumerate_regimes(four, 1).size() == 2);
    CHECK(enumerate_regimes(four, 3).size() == 4);
    CHECK(enumerate_regimes(four, 6).size() == 4);
    CHECK(enumerate_regimes(three, -1).empty());
}

TEST_CASE("regime errors")
{
    auto const three = load_book("three_leaf");
    for (double bad : {0.0, 2.0, 4.0})
    {
        try
        {
            enumerate_regimes(three, bad);
            FAIL("expected CriticalLambda");
        }
        catch (Error const& e)
        {
            CHECK(e.code() == ErrorCode::CriticalLambda);
        }
    }
    CHECK_THROWS_AS(enumerate_regimes(three, 10), Error);
}

TEST_CASE("regimes are locally constant")
{
    for (auto name : all_books)
    {
        CAPTURE(name);
        auto const book = load_book(name);
        auto const lv = critical_levels(book);
        for (std::size_t i = 0; i + 1 < lv.size(); ++i)
        {
            auto r1 = enumerate_regimes(book, lv[i] + 0.2 * (lv[i + 1] - lv[i]));
            auto r2 = enumerate_regimes(book, lv[i] + 0.8 * (lv[i + 1] - lv[i]));
            REQUIRE(r1.size() == r2.size());
            for (std::size_t k = 0; k < r1.size(); ++k)
            {
                CHECK(r1[k].states == r2[k].states);
                CHECK(r1[k].orientation == r2[k].orientation);
            }
        }
    }
}

TEST_CASE("witness trajectories reproduce every regime cycle")
{
    for (auto name : all_books)
    {
        CAPTURE(name);
        auto const book = load_book(name);
        for (double lambda : regular_samples(book))
        {
            CAPTURE(lambda);
            for (auto const& r : enumerate_regimes(book, lambda))
                CHECK(witness_reproduces(book, lambda, r));
        }
    }
}

TEST_CASE("pass through return")
{
    auto const three = load_book("three_leaf");
    auto res = pass_through_return(three, 2, 1);
    CHECK(res.return_leaf == 1);
    CHECK(res.consistent);

    auto const four = load_book("four_leaf");
    res = pass_through_return(four, 2, 1);
    CHECK(res.return_leaf == 4);
    CHECK_FALSE(res.consistent);

    BilliardBook swap = three;
    swap.gluings = {{2, {{1}, {2, 3}}}};
    REQUIRE(validate_book(swap).empty());
    try
    {
        pass_through_return(swap, 2, 1);
        FAIL("expected NoInnerLeaf");
    }
    catch (Error const& e)
    {
        CHECK(e.code() == ErrorCode::NoInnerLeaf);
    }
    CHECK_THROWS_AS(pass_through_return(three, 2, 2), Error);
}

TEST_CASE("grazing probes agree with the combinatorial answer")
{
    for (auto name : all_books)
    {
        CAPTURE(name);
        auto const book = load_book(name);
        for (auto const& leaf : book.leaves)
        {
            for (double e : leaf.boundaries())
            {
                if (boundary_side(leaf, e) != Side::Outside)
                    continue;
                PassThroughResult pr;
                try
                {
                    pr = pass_through_return(book, e, leaf.id);
                }
                catch (Error const&)
                {
                    continue;
                }
                auto const probes = probe_grazing(book, e, leaf.id, 16);
                REQUIRE(probes.size() == 16);
                for (LeafId got : probes)
                    CHECK(got == pr.return_leaf);
            }
        }
    }
}

TEST_CASE("singular level classification")
{
    auto atoms = classify_singular_level(load_book("three_leaf"), 4);
    REQUIRE(atoms.size() == 1);
    CHECK(atoms[0].type == AtomType::C2);
    CHECK(atoms[0].critical_circles == 2);
    CHECK(atoms[0].separatrix_count == 4);
    CHECK(atoms[0].description.find("A1' A2") != std::string::npos);
    CHECK(atoms[0].description.find("A1 A2'") != std::string::npos);

    atoms = classify_singular_level(load_book("four_leaf"), 9);
    REQUIRE(atoms.size() == 4);
    std::set<std::string> desc;
    for (auto const& a : atoms)
    {
        CHECK(a.type == AtomType::A);
        CHECK(a.separatrix_count == 0);
        desc.insert(a.description);
    }
    CHECK(desc
          == std::set<std::string>{"B1 B2", "B1' B2'", "B2 B1'", "B2' B1"});

    atoms = classify_singular_level(load_book("nested_123"), 4);
    REQUIRE(atoms.size() == 1);
    CHECK(atoms[0].type == AtomType::B);
    CHECK(atoms[0].separatrix_count == 2);
    std::istringstream is(atoms[0].description);
    std::string tok;
    int reflections = 0;
    while (is >> tok)
        ++reflections;
    CHECK(reflections == 6);

    CHECK_THROWS_AS(classify_singular_level(load_book("three_leaf"), 3),
                    Error);
}

TEST_CASE("graphs match the reference graphs")
{
    using namespace test;
    CHECK(graphs_isomorphic(build_fomenko_graph(load_book("three_leaf")),
                            reference_three_leaf()));
    CHECK(graphs_isomorphic(build_fomenko_graph(load_book("double_visit")),
                            reference_three_leaf()));
    CHECK(graphs_isomorphic(build_fomenko_graph(load_book("four_leaf")),
                            reference_four_leaf()));
    for (auto name : {"nested_123", "nested_132", "chain_123", "chain_132"})
        CHECK(graphs_isomorphic(build_fomenko_graph(load_book(name)),
                                reference_nested()));
    for (auto name : {"nested_six", "chain_four", "chain_four_b"})
        CHECK(graphs_isomorphic(build_fomenko_graph(load_book(name)),
                                reference_six()));

    CHECK(graphs_isomorphic(reference_three_leaf(), reference_three_leaf()));
    CHECK_FALSE(graphs_isomorphic(reference_three_leaf(), reference_nested()));
    CHECK_FALSE(graphs_isomorphic(reference_four_leaf(), reference_six()));
    CHECK(graphs_isomorphic(build_fomenko_graph(load_book("nested_123")),
                            build_fomenko_graph(load_book("nested_132"))));
}

TEST_CASE("isomorphism respects adjacency, not only the vertex multiset")
{
    using T = AtomType;
    auto const g1 = test::make_graph(
        {{T::A, 0}, {T::B, 1}, {T::A, 2}, {T::A, 2}}, {{0, 1}, {1, 2}, {1, 3}});
    auto const g2 = test::make_graph(
        {{T::A, 0}, {T::B, 1}, {T::A, 2}, {T::A, 2}}, {{0, 1}, {0, 2}, {1, 3}});
    CHECK_FALSE(graphs_isomorphic(g1, g2));
}

TEST_CASE("graph invariants on every fixture")
{
    for (auto name : all_books)
    {
        CAPTURE(name);
        auto const g = build_fomenko_graph(load_book(name));
        std::vector<int> deg(g.atoms.size(), 0);
        for (auto const& e : g.edges)
        {
            ++deg[e.from];
            ++deg[e.to];
            double const lo = std::min(g.atoms[e.from].lambda,
                                       g.atoms[e.to].lambda);
            double const hi = std::max(g.atoms[e.from].lambda,
                                       g.atoms[e.to].lambda);
            CHECK(e.interval.first >= lo);
            CHECK(e.interval.second <= hi);
            CHECK(lo < hi);
        }
        for (std::size_t i = 0; i < g.atoms.size(); ++i)
        {
            CHECK(g.atoms[i].type != AtomType::Unknown);
            CHECK(deg[i] == capacity(g.atoms[i].type));
            CHECK(deg[i] == g.atoms[i].degree);
        }
    }
}

TEST_CASE("census and dot")
{
    auto const g = build_fomenko_graph(load_book("four_leaf"));
    CHECK(census(g) == "A:6 B:2 C2:2");
    CHECK(census(build_fomenko_graph(load_book("three_leaf"))) == "A:4 C2:1");
    CHECK(census(build_fomenko_graph(load_book("nested_six")))
          == "A:5 B:3 C2:1");
    auto const dot = to_dot(g);
    CHECK(dot.find("C2@4.0") != std::string::npos);
    CHECK(dot.find("(4.0, 9.0)") != std::string::npos);
    CHECK(to_dot(g) == dot);
}
}
