//---------------------------------------------------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file render.cc
//---------------------------------------------------------------------------//
#include "bbook/render.hh"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "bbook/error.hh"

namespace bbook
{
namespace
{
//---------------------------------------------------------------------------//
std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", x);
    return buf;
}

//! Maps book coordinates into one panel
struct Panel
{
    double ox;
    double oy;
    double scale;

    double px(double x) const { return ox + scale * x; }
    double py(double y) const { return oy - scale * y; }
};

void ellipse_path(std::ostream& os,
                  ConfocalFamily const& fam,
                  double lambda,
                  Panel const& p,
                  RenderSpec const& spec,
                  char const* style)
{
    double const ra = std::sqrt(fam.a - lambda);
    double const rb = std::sqrt(fam.b - lambda);
    os << "<ellipse cx=\"" << num(p.px(0)) << "\" cy=\"" << num(p.py(0))
       << "\" rx=\"" << num(ra * p.scale) << "\" ry=\"" << num(rb * p.scale)
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\""
       << num(spec.boundary_stroke) << "\" " << style << "/>\n";
}

void caustic_path(std::ostream& os,
                  ConfocalFamily const& fam,
                  double lambda,
                  double half_width,
                  Panel const& p,
                  RenderSpec const& spec)
{
    char const* style
        = "fill=\"none\" stroke=\"#c03030\" stroke-dasharray=\"4 3\"";
    if (lambda < fam.b)
    {
        os << "<ellipse cx=\"" << num(p.px(0)) << "\" cy=\"" << num(p.py(0))
           << "\" rx=\"" << num(std::sqrt(fam.a - lambda) * p.scale)
           << "\" ry=\"" << num(std::sqrt(fam.b - lambda) * p.scale) << "\" "
           << style << "/>\n";
        return;
    }
    if (!(lambda < fam.a))
        return;
    // Both branches of x^2/(a-l) - y^2/(l-b) = 1, clipped to the panel
    double const ha = std::sqrt(fam.a - lambda);
    double const hb = std::sqrt(lambda - fam.b);
    double const tmax = std::asinh(half_width / hb);
    for (int branch : {1, -1})
    {
        os << "<polyline " << style << " points=\"";
        for (int i = 0; i <= spec.ellipse_samples; ++i)
        {
            double const t = -tmax + 2 * tmax * i / spec.ellipse_samples;
            os << num(p.px(branch * ha * std::cosh(t))) << ','
               << num(p.py(hb * std::sinh(t))) << ' ';
        }
        os << "\"/>\n";
    }
}
}  // namespace

//---------------------------------------------------------------------------//
std::string render_svg(BilliardBook const& book,
                       Trajectory const& traj,
                       RenderSpec const& spec)
{
    if (book.leaves.size() > RenderSpec::max_leaves)
    {
        throw Error(ErrorCode::RenderLimit,
                    std::to_string(book.leaves.size())
                        + " leaves exceed the canvas limit of 64");
    }
    if (!(spec.panel_size > 0) || !(spec.margin >= 0)
        || !(spec.boundary_stroke > 0) || !(spec.path_stroke > 0)
        || spec.ellipse_samples < 8)
    {
        throw Error(ErrorCode::RenderLimit, "render dimensions must be positive");
    }

    auto const& fam = book.family;
    double outer = 0;
    if (!book.leaves.empty())
    {
        outer = book.leaves.front().outer();
        for (auto const& l : book.leaves)
            outer = std::min(outer, l.outer());
    }
    double const half = std::sqrt(fam.a - outer);

    bool const overlay = spec.layout == Layout::Overlay;
    std::size_t const panels = overlay ? 1 : std::max<std::size_t>(1, book.leaves.size());
    std::size_t const cols = overlay ? 1 : static_cast<std::size_t>(std::ceil(std::sqrt(double(panels))));
    std::size_t const rows = (panels + cols - 1) / cols;
    double const cell = spec.panel_size + spec.margin;
    double const width = cols * cell + spec.margin;
    double const height = rows * cell + spec.margin;
    double const scale = spec.panel_size / (2 * half * 1.05);

    auto panel_at = [&](std::size_t k) {
        double const cx = spec.margin + (k % cols) * cell + spec.panel_size / 2;
        double const cy = spec.margin + (k / cols) * cell + spec.panel_size / 2;
        return Panel{cx, cy, scale};
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
       << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width)
       << ' ' << num(height) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    auto draw_leaf = [&](Leaf const& leaf, Panel const& p) {
        ellipse_path(os, fam, leaf.outer(), p, spec, "");
        if (auto const* ann = std::get_if<Annulus>(&leaf.shape))
            ellipse_path(os, fam, ann->inner, p, spec, "stroke-dasharray=\"2 2\"");
    };

    // Segment k runs from the previous event (or the start) to event k
    auto draw_segments = [&](auto&& panel_for) {
        PlanePoint from = traj.initial.position;
        LeafId leaf = traj.initial.leaf;
        for (auto const& ev : traj.events)
        {
            if (auto p = panel_for(leaf))
            {
                os << "<line x1=\"" << num(p->px(from.x)) << "\" y1=\""
                   << num(p->py(from.y)) << "\" x2=\""
                   << num(p->px(ev.hit_point.x)) << "\" y2=\""
                   << num(p->py(ev.hit_point.y))
                   << "\" stroke=\"#1f4fbf\" stroke-width=\""
                   << num(spec.path_stroke) << "\"/>\n";
            }
            from = ev.hit_point;
            leaf = ev.leaf_after;
        }
    };

    if (overlay)
    {
        Panel const p = panel_at(0);
        for (auto const& leaf : book.leaves)
            draw_leaf(leaf, p);
        if (!traj.events.empty())
            caustic_path(os, fam, traj.caustic, half * 1.05, p, spec);
        draw_segments([&](LeafId) { return std::optional<Panel>(p); });
    }
    else
    {
        for (std::size_t k = 0; k < book.leaves.size(); ++k)
        {
            Panel const p = panel_at(k);
            draw_leaf(book.leaves[k], p);
            os << "<text x=\"" << num(p.ox - spec.panel_size / 2) << "\" y=\""
               << num(p.oy - spec.panel_size / 2 + 12)
               << "\" font-size=\"12\">L" << book.leaves[k].id << "</text>\n";
        }
        draw_segments([&](LeafId id) -> std::optional<Panel> {
            for (std::size_t k = 0; k < book.leaves.size(); ++k)
            {
                if (book.leaves[k].id == id)
                    return panel_at(k);
            }
            return std::nullopt;
        });
    }
    os << "</svg>\n";
    return os.str();
}

//---------------------------------------------------------------------------//
std::string trajectory_csv(Trajectory const& traj)
{
    std::ostringstream os;
    os << "event_index,leaf_before,leaf_after,ellipse,rule,side,x,y,vx,vy\n";
    char buf[256];
    for (std::size_t i = 0; i < traj.events.size(); ++i)
    {
        auto const& ev = traj.events[i];
        std::snprintf(buf,
                      sizeof(buf),
                      "%zu,%d,%d,%.17g,%s,%s,%.17g,%.17g,%.17g,%.17g\n",
                      i,
                      ev.leaf_before,
                      ev.leaf_after,
                      ev.ellipse,
                      std::string(to_string(ev.rule)).c_str(),
                      std::string(to_string(ev.side)).c_str(),
                      ev.hit_point.x,
                      ev.hit_point.y,
                      ev.velocity_after.x(),
                      ev.velocity_after.y());
        os << buf;
    }
    return os.str();
}

//---------------------------------------------------------------------------//
}  // namespace bbook
