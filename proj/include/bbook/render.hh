//---------------------------------------------------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file bbook/render.hh
//! SVG drawings of books with trajectories, and trajectory CSV.
//---------------------------------------------------------------------------//
#pragma once

#include <string>

#include "dynamics.hh"

namespace bbook
{
//---------------------------------------------------------------------------//
enum class Layout
{
    SideBySide,  //!< one panel per leaf
    Overlay,  //!< every leaf in one panel, with the caustic
};

struct RenderSpec
{
    Layout layout{Layout::SideBySide};
    double panel_size{240};  //!< pixels per panel side
    double margin{16};
    double boundary_stroke{1.5};
    double path_stroke{0.8};
    int ellipse_samples{180};

    static constexpr std::size_t max_leaves = 64;
};

// Throws RenderLimit for too many leaves or a non-positive dimension
std::string render_svg(BilliardBook const& book,
                       Trajectory const& traj,
                       RenderSpec const& spec = {});

// Header plus one row per event
std::string trajectory_csv(Trajectory const& traj);

//---------------------------------------------------------------------------//
}  // namespace bbook
