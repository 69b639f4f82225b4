//---------------------------------------------------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file bbook/topology.hh
//! Liouville foliation of the unit-speed phase space of a billiard book.
//---------------------------------------------------------------------------//
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "book.hh"
#include "dynamics.hh"

namespace bbook
{
//---------------------------------------------------------------------------//
/*!
 * One boundary event of a regime, up to the continuous position.
 *
 * \c cls is the winding sign about the origin for an elliptic caustic and the
 * sign of y at the hit for a hyperbolic one.
 */
struct SymbolicState
{
    LeafId leaf{0};
    double ellipse{0};
    EventSide side{EventSide::FromInside};
    int cls{1};

    friend auto operator<=>(SymbolicState const&, SymbolicState const&)
        = default;
};

enum class Orientation
{
    Positive,
    Negative,
};

//! One Liouville torus family: the symbolic cycle of its trajectories
struct RegimeDescriptor
{
    std::pair<double, double> caustic_interval;
    //! Cycle rotated to start at its smallest state
    std::vector<SymbolicState> states;
    Orientation orientation{Orientation::Positive};

    friend bool
    operator==(RegimeDescriptor const&, RegimeDescriptor const&) = default;
};

enum class AtomType
{
    A,
    B,
    C2,
    Unknown,
};

std::string_view to_string(AtomType t);

struct FomenkoAtom
{
    double lambda{0};
    AtomType type{AtomType::Unknown};
    int critical_circles{0};
    int separatrix_count{0};
    std::string description;
    //! Number of incident edges (tori families ending at this atom)
    int degree{0};
};

struct FomenkoEdge
{
    int from{0};
    int to{0};
    std::pair<double, double> interval;
    //! Regime in every regular interval crossed by the edge, in order
    std::vector<RegimeDescriptor> segments;
};

struct FomenkoGraph
{
    //! Sorted by (lambda, type, description)
    std::vector<FomenkoAtom> atoms;
    std::vector<FomenkoEdge> edges;
};

//---------------------------------------------------------------------------//
// Operations
//---------------------------------------------------------------------------//

// Leaf boundary parameters together with b and a, ascending
std::vector<double> critical_levels(BilliardBook const& book);

// Liouville tori at a regular caustic value (throws CriticalLambda)
std::vector<RegimeDescriptor>
enumerate_regimes(BilliardBook const& book, double lambda);

struct PassThroughResult
{
    LeafId return_leaf{0};
    bool consistent{false};
};

// Leaf reached after grazing an ellipse from outside (throws NoInnerLeaf)
PassThroughResult pass_through_return(BilliardBook const& book,
                                      double ellipse,
                                      LeafId outer_leaf);

// Same question answered by near-grazing simulation at evenly spaced points
std::vector<LeafId> probe_grazing(BilliardBook const& book,
                                  double ellipse,
                                  LeafId outer_leaf,
                                  int points = 16);

// Atoms at a critical level (throws NotCritical)
std::vector<FomenkoAtom>
classify_singular_level(BilliardBook const& book, double lambda);

FomenkoGraph build_fomenko_graph(BilliardBook const& book);

// Type-, level-order- and incidence-preserving vertex bijection exists
bool graphs_isomorphic(FomenkoGraph const& g1, FomenkoGraph const& g2);

// Atom counts such as "A:4 C2:1"
std::string census(FomenkoGraph const& g);

// Graphviz text
std::string to_dot(FomenkoGraph const& g);

//---------------------------------------------------------------------------//
namespace detail
{
//! Tori meeting at one critical level
struct LevelComponent
{
    std::vector<int> left;  //!< indices of regimes just below the level
    std::vector<int> right;  //!< indices of regimes just above the level
    std::vector<std::string> circles;  //!< critical circle descriptions
    bool regular{false};
    FomenkoAtom atom;
};

// Components at critical level levels[i], given regimes of the adjacent
// intervals (either may be empty)
std::vector<LevelComponent>
level_components(BilliardBook const& book,
                 std::vector<double> const& levels,
                 std::size_t i,
                 std::vector<RegimeDescriptor> const& left,
                 std::vector<RegimeDescriptor> const& right);

//! Periodic orbit along a coordinate axis at lambda = b or a
struct AxisState
{
    LeafId leaf{0};
    double ellipse{0};
    int vertex{1};

    friend auto operator<=>(AxisState const&, AxisState const&) = default;
};

// Critical circles along the x axis (major = true) or the y axis
std::vector<std::vector<AxisState>> axis_orbits(BilliardBook const& book,
                                                bool major);

// Reflection vertices of an axis orbit, e.g. "A1 A2'"
std::string describe_axis_orbit(BilliardBook const& book,
                                 std::vector<AxisState> const& orbit,
                                 bool major);
}  // namespace detail

//---------------------------------------------------------------------------//
}  // namespace bbook
