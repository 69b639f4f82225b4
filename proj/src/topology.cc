//---------------------------------------------------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file topology.cc
//---------------------------------------------------------------------------//
#include "bbook/topology.hh"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "bbook/compiler.hh"
#include "bbook/error.hh"

namespace bbook
{
namespace
{
//---------------------------------------------------------------------------//
//! Relative distance (times a) below which a caustic counts as critical
constexpr double kCriticalTol = 1e-9;

//! Offset of the near-grazing probe lines from the tangent line
constexpr double kProbeOffset = 1e-5;

//---------------------------------------------------------------------------//
struct UnionFind
{
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int i)
    {
        while (parent[i] != i)
        {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    }
    void unite(int i, int j) { parent[find(i)] = find(j); }
};

template<class T>
void rotate_to_min(std::vector<T>& cycle)
{
    std::rotate(
        cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
}

//! Cycles of a permutation given as a map
template<class T>
std::vector<std::vector<T>> permutation_cycles(std::map<T, T> const& next)
{
    std::vector<std::vector<T>> result;
    std::set<T> visited;
    for (auto const& [start, _] : next)
    {
        if (visited.count(start))
            continue;
        // Walk until a state repeats; keep only the periodic part
        std::vector<T> path;
        std::map<T, std::size_t> pos;
        T cur = start;
        while (!visited.count(cur) && !pos.count(cur))
        {
            pos[cur] = path.size();
            path.push_back(cur);
            auto it = next.find(cur);
            if (it == next.end())
                break;
            cur = it->second;
        }
        for (auto const& s : path)
            visited.insert(s);
        if (pos.count(cur))
        {
            std::vector<T> cycle(path.begin() + pos[cur], path.end());
            rotate_to_min(cycle);
            result.push_back(std::move(cycle));
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

//---------------------------------------------------------------------------//
// Event side for a leaf hitting one of its boundaries
EventSide event_side(BilliardBook const& book, LeafId leaf, double ellipse)
{
    Side const side = boundary_side(book.leaf(leaf), ellipse);
    Gluing const* g = book.gluing_at(ellipse);
    if (g)
    {
        Side const other = boundary_side(book.leaf(g->apply(leaf)), ellipse);
        if (other != side)
            return EventSide::PassThrough;
    }
    return side == Side::Within ? EventSide::FromInside
                                : EventSide::FromOutside;
}

int sign_of(double x)
{
    return x < 0 ? -1 : 1;
}

bool is_critical(std::vector<double> const& levels, double lambda, double a)
{
    return std::any_of(levels.begin(), levels.end(), [&](double c) {
        return std::abs(c - lambda) <= kCriticalTol * a;
    });
}

//! 1-based rank of an ellipse among the book's boundary parameters
int ellipse_index(BilliardBook const& book, double ellipse)
{
    auto const params = book.boundary_params();
    for (std::size_t i = 0; i < params.size(); ++i)
    {
        if (same_ellipse(params[i], ellipse))
            return static_cast<int>(i) + 1;
    }
    return 0;
}

//---------------------------------------------------------------------------//
struct StateKey
{
    LeafId leaf;
    double ellipse;
    int cls;

    friend auto operator<=>(StateKey const&, StateKey const&) = default;
};

/*!
 * Place a particle of the given class at a representative point of the
 * ellipse, arriving from the leaf's side, apply the boundary event and step
 * to the next one.
 */
StateKey witness_step(BilliardBook const& book,
                      StateKey const& s,
                      double lambda,
                      bool hyperbolic)
{
    auto const& fam = book.family;
    double const ra = std::sqrt(fam.a - s.ellipse);
    double const rb = std::sqrt(fam.b - s.ellipse);
    PlanePoint const q = hyperbolic
                             ? PlanePoint{0, s.cls * rb}
                             : PlanePoint{ra * std::cos(1.0), rb * std::sin(1.0)};
    UnitVector const n = outward_normal(fam, s.ellipse, q);
    bool const from_inside
        = boundary_side(book.leaf(s.leaf), s.ellipse) == Side::Within;

    std::optional<UnitVector> vin;
    for (auto const& v : tangent_directions(fam, q, lambda))
    {
        double const vn = v.x() * n.x() + v.y() * n.y();
        if ((vn > 0) != from_inside)
            continue;
        if (hyperbolic ? v.x() < 0 : sign_of(cross(q, v)) != s.cls)
            continue;
        vin = v;
        break;
    }
    if (!vin)
    {
        std::ostringstream os;
        os << "no witness direction for leaf " << s.leaf << " on ellipse "
           << s.ellipse << " at caustic " << lambda;
        throw Error(ErrorCode::CriticalLambda, os.str());
    }

    auto const after
        = apply_boundary_event(book, PhaseState{q, *vin, s.leaf}, s.ellipse);
    auto const hit = detail::next_boundary_hit(book, after.state);
    if (hit.tangential)
    {
        throw Error(ErrorCode::CriticalLambda,
                    "witness trajectory is tangential to a boundary");
    }
    int const cls = hyperbolic ? sign_of(hit.point.y)
                               : sign_of(cross(hit.point, after.state.velocity));
    return {after.state.leaf, hit.ellipse, cls};
}

//---------------------------------------------------------------------------//
std::vector<RegimeDescriptor> regimes_at(BilliardBook const& book,
                                         double lambda,
                                         std::pair<double, double> interval)
{
    auto const& fam = book.family;
    bool const hyperbolic = lambda > fam.b;

    std::map<StateKey, StateKey> next;
    for (auto const& leaf : book.leaves)
    {
        if (!hyperbolic && !(lambda > leaf.outer()))
            continue;
        for (double beta : leaf.boundaries())
        {
            if (!hyperbolic && !(lambda > beta))
                continue;
            for (int cls : {1, -1})
            {
                StateKey const s{leaf.id, beta, cls};
                next[s] = witness_step(book, s, lambda, hyperbolic);
            }
        }
    }

    double const outermost = book.boundary_params().front();
    std::vector<RegimeDescriptor> result;
    for (auto const& cycle : permutation_cycles(next))
    {
        RegimeDescriptor r;
        r.caustic_interval = interval;
        for (auto const& s : cycle)
        {
            r.states.push_back(
                {s.leaf, s.ellipse, event_side(book, s.leaf, s.ellipse), s.cls});
        }
        rotate_to_min(r.states);

        int cls = r.states.front().cls;
        if (hyperbolic)
        {
            for (auto const& s : r.states)
            {
                if (same_ellipse(s.ellipse, outermost)
                    && s.side == EventSide::FromInside)
                {
                    cls = s.cls;
                    break;
                }
            }
        }
        r.orientation = cls > 0 ? Orientation::Positive : Orientation::Negative;
        result.push_back(std::move(r));
    }
    std::sort(result.begin(),
              result.end(),
              [](RegimeDescriptor const& x, RegimeDescriptor const& y) {
                  return x.states < y.states;
              });
    return result;
}

//---------------------------------------------------------------------------//
detail::AxisState axis_next(BilliardBook const& book, detail::AxisState s)
{
    LeafId const next = book.glue(s.leaf, s.ellipse);
    Leaf const& leaf = book.leaf(next);
    if (boundary_side(leaf, s.ellipse) == Side::Within)
    {
        // Moving inward from the vertex
        if (auto const* ann = std::get_if<Annulus>(&leaf.shape))
            return {next, ann->inner, s.vertex};
        return {next, s.ellipse, -s.vertex};
    }
    // Moving outward from the inner boundary
    return {next, std::get<Annulus>(leaf.shape).outer, s.vertex};
}

std::string atom_circle_label(BilliardBook const& book,
                              double ellipse,
                              Orientation o)
{
    std::ostringstream os;
    os << 'E' << ellipse_index(book, ellipse)
       << (o == Orientation::Positive ? '+' : '-');
    return os.str();
}

FomenkoAtom make_atom(double lambda, int circles, int degree)
{
    FomenkoAtom atom;
    atom.lambda = lambda;
    atom.critical_circles = circles;
    atom.degree = degree;
    atom.separatrix_count = circles + degree - 2;
    if (circles == 1 && degree == 1)
        atom.type = AtomType::A;
    else if (circles == 1 && degree == 3)
        atom.type = AtomType::B;
    else if (circles == 2 && degree == 4)
        atom.type = AtomType::C2;
    else
        atom.type = AtomType::Unknown;
    return atom;
}

std::string join(std::vector<std::string> const& parts, char const* sep)
{
    std::string result;
    for (std::size_t i = 0; i < parts.size(); ++i)
    {
        if (i)
            result += sep;
        result += parts[i];
    }
    return result;
}

//---------------------------------------------------------------------------//
/*!
 * Level lambda = beta of a leaf boundary.
 *
 * Right-hand tori reduce to left-hand ones once the events on E_beta are
 * removed; a single left torus continuing unchanged is a regular crossing.
 */
std::vector<detail::LevelComponent>
boundary_level(BilliardBook const& book,
               double beta,
               std::vector<RegimeDescriptor> const& left,
               std::vector<RegimeDescriptor> const& right)
{
    int const nl = static_cast<int>(left.size());
    int const nr = static_cast<int>(right.size());
    UnionFind uf(nl + nr);

    std::map<SymbolicState, int> owner;
    for (int i = 0; i < nl; ++i)
    {
        for (auto const& s : left[i].states)
            owner[s] = i;
    }

    std::vector<std::vector<SymbolicState>> reduced(nr);
    for (int j = 0; j < nr; ++j)
    {
        for (auto const& s : right[j].states)
        {
            if (same_ellipse(s.ellipse, beta))
                continue;
            reduced[j].push_back(s);
            auto it = owner.find(s);
            if (it != owner.end())
                uf.unite(nl + j, it->second);
        }
        if (!reduced[j].empty())
            rotate_to_min(reduced[j]);
    }

    std::map<int, detail::LevelComponent> comps;
    for (int i = 0; i < nl; ++i)
        comps[uf.find(i)].left.push_back(i);
    for (int j = 0; j < nr; ++j)
        comps[uf.find(nl + j)].right.push_back(j);

    std::vector<detail::LevelComponent> result;
    for (auto& [root, c] : comps)
    {
        if (c.left.size() == 1 && c.right.size() == 1
            && reduced[c.right[0]] == left[c.left[0]].states)
        {
            c.regular = true;
            result.push_back(std::move(c));
            continue;
        }
        int const degree = static_cast<int>(c.left.size() + c.right.size());
        c.atom = make_atom(beta, 1, degree);
        auto const& any = c.right.empty() ? left[c.left[0]] : right[c.right[0]];
        c.circles.push_back(atom_circle_label(book, beta, any.orientation));
        c.atom.description = c.circles.front();
        result.push_back(std::move(c));
    }
    return result;
}

//---------------------------------------------------------------------------//
/*!
 * Level lambda = b or a: tori attach to the periodic orbits along an axis.
 *
 * At b every event state touches both x-axis vertices of its ellipse; at a a
 * state of class h touches the y-axis vertex on the same side.
 */
std::vector<detail::LevelComponent>
axis_level(BilliardBook const& book,
           double lambda,
           bool major,
           std::vector<RegimeDescriptor> const& left,
           std::vector<RegimeDescriptor> const& right)
{
    auto const orbits = detail::axis_orbits(book, major);
    int const nl = static_cast<int>(left.size());
    int const nr = static_cast<int>(right.size());
    int const no = static_cast<int>(orbits.size());
    UnionFind uf(nl + nr + no);

    std::map<detail::AxisState, int> orbit_of;
    for (int k = 0; k < no; ++k)
    {
        for (auto const& s : orbits[k])
            orbit_of[s] = k;
    }
    auto link = [&](int node, RegimeDescriptor const& r) {
        for (auto const& s : r.states)
        {
            for (int v : {1, -1})
            {
                if (!major && v != s.cls)
                    continue;
                auto it = orbit_of.find({s.leaf, s.ellipse, v});
                if (it != orbit_of.end())
                    uf.unite(node, nl + nr + it->second);
            }
        }
    };
    for (int i = 0; i < nl; ++i)
        link(i, left[i]);
    for (int j = 0; j < nr; ++j)
        link(nl + j, right[j]);

    std::map<int, detail::LevelComponent> comps;
    std::map<int, std::vector<int>> comp_orbits;
    for (int i = 0; i < nl; ++i)
        comps[uf.find(i)].left.push_back(i);
    for (int j = 0; j < nr; ++j)
        comps[uf.find(nl + j)].right.push_back(j);
    for (int k = 0; k < no; ++k)
        comp_orbits[uf.find(nl + nr + k)].push_back(k);

    std::vector<detail::LevelComponent> result;
    for (auto& [root, ks] : comp_orbits)
    {
        auto& c = comps[root];
        for (int k : ks)
            c.circles.push_back(detail::describe_axis_orbit(book, orbits[k], major));
        int const degree = static_cast<int>(c.left.size() + c.right.size());
        c.atom = make_atom(lambda, static_cast<int>(ks.size()), degree);
        c.atom.description = join(c.circles, " | ");
        result.push_back(std::move(c));
    }
    return result;
}
}  // namespace

//---------------------------------------------------------------------------//
std::string_view to_string(AtomType t)
{
    switch (t)
    {
        case AtomType::A: return "A";
        case AtomType::B: return "B";
        case AtomType::C2: return "C2";
        case AtomType::Unknown: return "Unknown";
    }
    return "?";
}

//---------------------------------------------------------------------------//
std::vector<double> critical_levels(BilliardBook const& book)
{
    auto result = book.boundary_params();
    result.push_back(book.family.b);
    result.push_back(book.family.a);
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end(), same_ellipse),
                 result.end());
    return result;
}

//---------------------------------------------------------------------------//
std::vector<RegimeDescriptor>
enumerate_regimes(BilliardBook const& book, double lambda)
{
    auto const levels = critical_levels(book);
    if (is_critical(levels, lambda, book.family.a))
    {
        std::ostringstream os;
        os << "caustic " << lambda << " is a critical level";
        throw Error(ErrorCode::CriticalLambda, os.str());
    }
    if (lambda > book.family.a)
    {
        std::ostringstream os;
        os << "caustic " << lambda << " exceeds a=" << book.family.a;
        throw Error(ErrorCode::EmptyConic, os.str());
    }
    auto hi = std::upper_bound(levels.begin(), levels.end(), lambda);
    if (hi == levels.begin())
        return {};
    return regimes_at(book, lambda, {*(hi - 1), *hi});
}

//---------------------------------------------------------------------------//
/*!
 * In the grazing limit the particle crosses into sigma(L) and bounces along
 * the ellipse through every inner leaf until it is carried outside again.
 */
PassThroughResult pass_through_return(BilliardBook const& book,
                                      double ellipse,
                                      LeafId outer_leaf)
{
    Leaf const& leaf = book.leaf(outer_leaf);
    if (boundary_side(leaf, ellipse) != Side::Outside)
    {
        std::ostringstream os;
        os << "leaf " << outer_leaf << " is not outside ellipse " << ellipse;
        throw Error(ErrorCode::NotABoundary, os.str());
    }
    Gluing const* g = book.gluing_at(ellipse);
    if (!g || g->apply(outer_leaf) == outer_leaf)
    {
        std::ostringstream os;
        os << "nothing is glued to leaf " << outer_leaf << " along ellipse "
           << ellipse;
        throw Error(ErrorCode::NoInnerLeaf, os.str());
    }

    LeafId cur = g->apply(outer_leaf);
    while (boundary_side(book.leaf(cur), ellipse) == Side::Within)
        cur = g->apply(cur);
    return {cur, cur == outer_leaf};
}

//---------------------------------------------------------------------------//
std::vector<LeafId> probe_grazing(BilliardBook const& book,
                                  double ellipse,
                                  LeafId outer_leaf,
                                  int points)
{
    constexpr int max_events = 256;
    auto const& fam = book.family;
    Leaf const& leaf = book.leaf(outer_leaf);
    double const ra = std::sqrt(fam.a - ellipse);
    double const rb = std::sqrt(fam.b - ellipse);

    std::vector<LeafId> result;
    for (int i = 0; i < points; ++i)
    {
        // Offset the tangent line slightly into the ellipse
        double const theta = (2 * M_PI * (i + 0.5)) / points;
        PlanePoint const q{ra * std::cos(theta), rb * std::sin(theta)};
        UnitVector const n = outward_normal(fam, ellipse, q);
        UnitVector const t = UnitVector::normalized(-n.y(), n.x());
        PlanePoint const inner{q.x - kProbeOffset * n.x(),
                               q.y - kProbeOffset * n.y()};

        double back = 0.25;
        PlanePoint start = advance(inner, t, -back);
        while (!leaf_contains(fam, leaf, start) && back > 1e-3)
        {
            back /= 2;
            start = advance(inner, t, -back);
        }

        PhaseState st{start, t, outer_leaf};
        LeafId returned = 0;
        for (int k = 0; k < max_events && returned == 0; ++k)
        {
            auto const r = step(book, st);
            st = r.state;
            if (!same_ellipse(r.event.ellipse, ellipse))
                break;
            if (boundary_side(book.leaf(st.leaf), ellipse) == Side::Outside)
                returned = st.leaf;
        }
        result.push_back(returned);
    }
    return result;
}

//---------------------------------------------------------------------------//
namespace detail
{
std::vector<std::vector<AxisState>> axis_orbits(BilliardBook const& book,
                                                bool /* major */)
{
    // The combinatorics agree on both axes; only the labels differ
    std::map<AxisState, AxisState> next;
    for (auto const& leaf : book.leaves)
    {
        for (double beta : leaf.boundaries())
        {
            for (int v : {1, -1})
            {
                AxisState const s{leaf.id, beta, v};
                next[s] = axis_next(book, s);
            }
        }
    }
    return permutation_cycles(next);
}

std::string describe_axis_orbit(BilliardBook const& book,
                                std::vector<AxisState> const& orbit,
                                bool major)
{
    std::vector<std::string> parts;
    for (auto const& s : orbit)
    {
        if (event_side(book, s.leaf, s.ellipse) == EventSide::PassThrough)
            continue;
        std::ostringstream os;
        os << (major ? 'A' : 'B') << ellipse_index(book, s.ellipse)
           << (s.vertex < 0 ? "'" : "");
        parts.push_back(os.str());
    }
    return join(parts, " ");
}

//---------------------------------------------------------------------------//
std::vector<LevelComponent>
level_components(BilliardBook const& book,
                 std::vector<double> const& levels,
                 std::size_t i,
                 std::vector<RegimeDescriptor> const& left,
                 std::vector<RegimeDescriptor> const& right)
{
    double const lambda = levels[i];
    auto const& fam = book.family;
    if (same_ellipse(lambda, fam.a))
        return axis_level(book, lambda, false, left, right);
    if (same_ellipse(lambda, fam.b))
        return axis_level(book, lambda, true, left, right);
    return boundary_level(book, lambda, left, right);
}
}  // namespace detail

//---------------------------------------------------------------------------//
std::vector<FomenkoAtom>
classify_singular_level(BilliardBook const& book, double lambda)
{
    auto const levels = critical_levels(book);
    auto it = std::find_if(levels.begin(), levels.end(), [&](double c) {
        return std::abs(c - lambda) <= kCriticalTol * book.family.a;
    });
    if (it == levels.end())
    {
        std::ostringstream os;
        os << "caustic " << lambda << " is not a critical level";
        throw Error(ErrorCode::NotCritical, os.str());
    }
    auto const i = static_cast<std::size_t>(it - levels.begin());

    std::vector<RegimeDescriptor> left, right;
    if (i > 0)
        left = enumerate_regimes(book, (levels[i - 1] + levels[i]) / 2);
    if (i + 1 < levels.size())
        right = enumerate_regimes(book, (levels[i] + levels[i + 1]) / 2);

    std::vector<FomenkoAtom> result;
    for (auto const& c : detail::level_components(book, levels, i, left, right))
    {
        if (!c.regular)
            result.push_back(c.atom);
    }
    return result;
}

//---------------------------------------------------------------------------//
}  // namespace bbook
