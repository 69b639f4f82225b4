//---------------------------------------------------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file bbook/dynamics.hh
//! Event-driven motion of a billiard particle on a book.
//---------------------------------------------------------------------------//
#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "book.hh"

namespace bbook
{
//---------------------------------------------------------------------------//
struct PhaseState
{
    PlanePoint position;
    UnitVector velocity;
    LeafId leaf{0};
};

enum class Rule
{
    R1,  //!< unglued wall: reflect, stay on the leaf
    R2,  //!< glued, same side: reflect onto the image leaf
    R3,  //!< glued, opposite side: cross onto the image leaf
};

enum class EventSide
{
    FromInside,
    FromOutside,
    PassThrough,
};

std::string_view to_string(Rule r);
std::string_view to_string(EventSide s);

struct TrajectoryEvent
{
    PlanePoint hit_point;
    double ellipse{0};
    EventSide side{EventSide::FromInside};
    LeafId leaf_before{0};
    LeafId leaf_after{0};
    Rule rule{Rule::R1};
    UnitVector velocity_after;
    //! Straight continuation past a tangential touch (leaf unchanged)
    bool grazing{false};
};

enum class TrajectoryStatus
{
    Completed,
    SingularLevelHit,
};

struct Trajectory
{
    PhaseState initial;
    std::vector<TrajectoryEvent> events;
    PhaseState final;
    double caustic{0};
    TrajectoryStatus status{TrajectoryStatus::Completed};
};

struct StepResult
{
    PhaseState state;
    TrajectoryEvent event;
};

//---------------------------------------------------------------------------//
// Operations
//---------------------------------------------------------------------------//

// Advance to the next boundary event (throws TangentialHit, EscapedLeaf)
StepResult step(BilliardBook const& book, PhaseState const& state);

// Apply R1/R2/R3 at a point already on one of the leaf's boundaries
StepResult apply_boundary_event(BilliardBook const& book,
                                PhaseState const& state,
                                double ellipse);

inline constexpr int kDefaultMaxEvents = 10000;

// Repeated stepping; grazing touches are resolved or end the run
Trajectory simulate(BilliardBook const& book,
                    PhaseState const& state,
                    int max_events = kDefaultMaxEvents);

// Time reversal on the inverted book
Trajectory reverse(BilliardBook const& book, Trajectory const& traj);

// Time reversal replayed on the given book without inverting it
Trajectory reverse_on(BilliardBook const& book, Trajectory const& traj);

struct GameReflection
{
    double ellipse{0};
    EventSide side{EventSide::FromInside};
};

// Reflection sequence with pass-through crossings removed
std::vector<GameReflection> trace_to_game(Trajectory const& traj);

//---------------------------------------------------------------------------//
namespace detail
{
struct BoundaryHit
{
    PlanePoint point;
    double ellipse{0};
    double t{0};
    bool tangential{false};
};

// Nearest boundary hit of the leaf, optionally ignoring one ellipse
BoundaryHit next_boundary_hit(BilliardBook const& book,
                              PhaseState const& state,
                              std::optional<double> skip = std::nullopt);
}  // namespace detail

//---------------------------------------------------------------------------//
}  // namespace bbook
