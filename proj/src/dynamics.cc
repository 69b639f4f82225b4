//---------------------------------------------------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file dynamics.cc
//---------------------------------------------------------------------------//
#include "bbook/dynamics.hh"

#include <cmath>
#include <iostream>
#include <sstream>

#include "bbook/compiler.hh"
#include "bbook/error.hh"
#include "bbook/topology.hh"

namespace bbook
{
namespace
{
//! Relative gap below which two boundary hits count as simultaneous
constexpr double kTieTol = 1e-12;

EventSide reflection_side(Side s)
{
    return s == Side::Within ? EventSide::FromInside : EventSide::FromOutside;
}

std::string describe(PhaseState const& s)
{
    std::ostringstream os;
    os.precision(17);
    os << "leaf " << s.leaf << " at (" << s.position.x << ','
       << s.position.y << ") heading (" << s.velocity.x() << ','
       << s.velocity.y() << ')';
    return os.str();
}

//---------------------------------------------------------------------------//
// Whether a straight continuation past a tangential touch is well defined
bool grazing_extends(BilliardBook const& book, double ellipse, LeafId leaf)
{
    try
    {
        return pass_through_return(book, ellipse, leaf).consistent;
    }
    catch (Error const& e)
    {
        if (e.code() == ErrorCode::NoInnerLeaf)
            return true;
        throw;
    }
}

//---------------------------------------------------------------------------//
/*!
 * Continue a trajectory for up to \c count further events.
 */
void run(BilliardBook const& book,
         Trajectory& traj,
         PhaseState cur,
         int count,
         std::optional<double> skip)
{
    for (int i = 0; i < count; ++i)
    {
        auto const hit = detail::next_boundary_hit(book, cur, skip);
        skip.reset();
        if (hit.tangential)
        {
            Leaf const& leaf = book.leaf(cur.leaf);
            if (boundary_side(leaf, hit.ellipse) == Side::Outside
                && grazing_extends(book, hit.ellipse, cur.leaf))
            {
                cur.position = hit.point;
                TrajectoryEvent ev;
                ev.hit_point = hit.point;
                ev.ellipse = hit.ellipse;
                ev.side = EventSide::PassThrough;
                ev.leaf_before = ev.leaf_after = cur.leaf;
                ev.rule = Rule::R3;
                ev.velocity_after = cur.velocity;
                ev.grazing = true;
                traj.events.push_back(ev);
                skip = hit.ellipse;
                continue;
            }
            traj.status = TrajectoryStatus::SingularLevelHit;
            break;
        }
        cur.position = hit.point;
        auto result = apply_boundary_event(book, cur, hit.ellipse);
        traj.events.push_back(result.event);
        cur = result.state;
    }
    traj.final = cur;
}

//---------------------------------------------------------------------------//
Trajectory reverse_with(BilliardBook const& book, Trajectory const& traj)
{
    Trajectory result;
    PhaseState cur{traj.final.position, -traj.final.velocity, traj.final.leaf};
    result.initial = cur;
    result.caustic = traj.caustic;
    result.final = cur;
    if (traj.events.empty())
        return result;

    auto const& last = traj.events.back();
    cur.position = last.hit_point;
    std::optional<double> skip;
    if (last.grazing)
    {
        TrajectoryEvent ev = last;
        ev.velocity_after = cur.velocity;
        result.events.push_back(ev);
        skip = last.ellipse;
    }
    else
    {
        auto first = apply_boundary_event(book, cur, last.ellipse);
        result.events.push_back(first.event);
        cur = first.state;
    }
    run(book,
        result,
        cur,
        static_cast<int>(traj.events.size()) - 1,
        skip);
    return result;
}
}  // namespace

//---------------------------------------------------------------------------//
std::string_view to_string(Rule r)
{
    switch (r)
    {
        case Rule::R1: return "R1";
        case Rule::R2: return "R2";
        case Rule::R3: return "R3";
    }
    return "?";
}

std::string_view to_string(EventSide s)
{
    switch (s)
    {
        case EventSide::FromInside: return "FromInside";
        case EventSide::FromOutside: return "FromOutside";
        case EventSide::PassThrough: return "PassThrough";
    }
    return "?";
}

//---------------------------------------------------------------------------//
namespace detail
{
/*!
 * Candidate hits are collected for every boundary of the current leaf.
 *
 * A boundary whose ray discriminant (normalized by (a-l)(b-l)) is below the
 * tangency threshold yields a tangential candidate at the touching point.
 */
BoundaryHit next_boundary_hit(BilliardBook const& book,
                              PhaseState const& state,
                              std::optional<double> skip)
{
    auto const& fam = book.family;
    Leaf const& leaf = book.leaf(state.leaf);

    std::optional<BoundaryHit> best;
    for (double beta : leaf.boundaries())
    {
        if (skip && same_ellipse(*skip, beta))
            continue;

        BoundaryHit cand;
        cand.ellipse = beta;
        auto const q = ray_quadratic(fam, beta, state.position, state.velocity);
        double const norm_disc
            = q.discriminant() / ((fam.a - beta) * (fam.b - beta));
        if (std::abs(norm_disc) < kTangencyTol * fam.a)
        {
            cand.tangential = true;
            if (boundary_side(leaf, beta) == Side::Within)
            {
                // Sliding along the enclosing wall: report at once
                cand.t = 0;
                cand.point = state.position;
                return cand;
            }
            cand.t = -q.qb / q.qa;
            if (!(cand.t > kMinRayParam))
                continue;
            cand.point = advance(state.position, state.velocity, cand.t);
        }
        else
        {
            auto hit = next_intersection(
                fam, state.position, state.velocity, beta);
            if (!hit)
                continue;
            cand.t = hit->t;
            cand.point = hit->point;
        }

        if (!best)
        {
            best = cand;
            continue;
        }
        double const gap = std::abs(cand.t - best->t);
        if (gap <= kTieTol * std::max(1.0, best->t))
        {
            std::clog << "warning: simultaneous hits on ellipses "
                      << best->ellipse << " and " << beta
                      << "; using the smaller parameter\n";
            if (beta < best->ellipse)
                best = cand;
        }
        else if (cand.t < best->t)
        {
            best = cand;
        }
    }

    if (!best)
    {
        throw Error(ErrorCode::EscapedLeaf,
                    "no boundary ahead of " + describe(state));
    }
    best->point = project_to_ellipse(fam, best->ellipse, best->point);
    if (!leaf_contains(fam, leaf, best->point))
    {
        throw Error(ErrorCode::EscapedLeaf,
                    "hit point left the leaf from " + describe(state));
    }
    return *best;
}
}  // namespace detail

//---------------------------------------------------------------------------//
StepResult apply_boundary_event(BilliardBook const& book,
                                PhaseState const& state,
                                double ellipse)
{
    Leaf const& leaf = book.leaf(state.leaf);
    Side const side = boundary_side(leaf, ellipse);

    StepResult r;
    r.state = state;
    r.event.hit_point = state.position;
    r.event.ellipse = ellipse;
    r.event.leaf_before = state.leaf;

    Gluing const* g = book.gluing_at(ellipse);
    LeafId const next = g ? g->apply(state.leaf) : state.leaf;
    Side const next_side = boundary_side(book.leaf(next), ellipse);

    if (!g)
    {
        r.event.rule = Rule::R1;
        r.event.side = reflection_side(side);
    }
    else if (next_side == side)
    {
        r.event.rule = Rule::R2;
        r.event.side = reflection_side(side);
    }
    else
    {
        r.event.rule = Rule::R3;
        r.event.side = EventSide::PassThrough;
    }

    if (r.event.rule != Rule::R3)
    {
        r.state.velocity
            = reflect(book.family, ellipse, state.position, state.velocity);
    }
    r.state.leaf = next;
    r.event.leaf_after = next;
    r.event.velocity_after = r.state.velocity;
    return r;
}

//---------------------------------------------------------------------------//
StepResult step(BilliardBook const& book, PhaseState const& state)
{
    auto const hit = detail::next_boundary_hit(book, state);
    if (hit.tangential)
    {
        std::ostringstream os;
        os << "tangential touch of ellipse " << hit.ellipse << " from "
           << describe(state);
        throw Error(ErrorCode::TangentialHit, os.str());
    }
    PhaseState at_hit = state;
    at_hit.position = hit.point;
    return apply_boundary_event(book, at_hit, hit.ellipse);
}

//---------------------------------------------------------------------------//
Trajectory
simulate(BilliardBook const& book, PhaseState const& state, int max_events)
{
    if (!leaf_contains(book.family, book.leaf(state.leaf), state.position))
    {
        throw Error(ErrorCode::EscapedLeaf,
                    "start is not inside its leaf: " + describe(state));
    }
    Trajectory traj;
    traj.initial = state;
    traj.caustic
        = caustic_parameter(book.family, state.position, state.velocity);
    run(book, traj, state, max_events, std::nullopt);
    return traj;
}

Trajectory reverse(BilliardBook const& book, Trajectory const& traj)
{
    return reverse_with(invert_book(book), traj);
}

Trajectory reverse_on(BilliardBook const& book, Trajectory const& traj)
{
    return reverse_with(book, traj);
}

//---------------------------------------------------------------------------//
std::vector<GameReflection> trace_to_game(Trajectory const& traj)
{
    std::vector<GameReflection> result;
    for (auto const& ev : traj.events)
    {
        if (ev.side != EventSide::PassThrough)
            result.push_back({ev.ellipse, ev.side});
    }
    return result;
}

//---------------------------------------------------------------------------//
}  // namespace bbook
