//---------------------------------------------------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file fomenko_graph.cc
//---------------------------------------------------------------------------//
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "bbook/topology.hh"

namespace bbook
{
namespace
{
//---------------------------------------------------------------------------//
std::string format_lambda(double x)
{
    char buf[64];
    if (x == std::floor(x) && std::abs(x) < 1e15)
        std::snprintf(buf, sizeof(buf), "%.1f", x);
    else
        std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

//! Rank of every atom's level among the distinct atom levels
std::vector<int> level_ranks(FomenkoGraph const& g)
{
    std::vector<double> lv;
    for (auto const& a : g.atoms)
        lv.push_back(a.lambda);
    std::sort(lv.begin(), lv.end());
    lv.erase(std::unique(lv.begin(), lv.end()), lv.end());

    std::vector<int> result;
    for (auto const& a : g.atoms)
    {
        result.push_back(static_cast<int>(
            std::lower_bound(lv.begin(), lv.end(), a.lambda) - lv.begin()));
    }
    return result;
}

//! Edge multiplicity matrix (undirected)
std::vector<std::vector<int>> adjacency(FomenkoGraph const& g)
{
    auto const n = g.atoms.size();
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (auto const& e : g.edges)
    {
        ++m[e.from][e.to];
        if (e.from != e.to)
            ++m[e.to][e.from];
    }
    return m;
}

struct IsoSearch
{
    std::vector<std::vector<int>> const& m1;
    std::vector<std::vector<int>> const& m2;
    std::vector<std::vector<bool>> compatible;
    std::vector<int> map;
    std::vector<bool> used;

    bool extend(std::size_t i)
    {
        if (i == map.size())
            return true;
        for (std::size_t j = 0; j < used.size(); ++j)
        {
            if (used[j] || !compatible[i][j])
                continue;
            bool ok = m1[i][i] == m2[j][j];
            for (std::size_t k = 0; ok && k < i; ++k)
                ok = m1[i][k] == m2[j][map[k]];
            if (!ok)
                continue;
            map[i] = static_cast<int>(j);
            used[j] = true;
            if (this->extend(i + 1))
                return true;
            used[j] = false;
        }
        return false;
    }
};
}  // namespace

//---------------------------------------------------------------------------//
/*!
 * Regimes of consecutive regular intervals are chained through regular
 * crossings; each chain ends on an atom at both sides and becomes one edge.
 */
FomenkoGraph build_fomenko_graph(BilliardBook const& book)
{
    auto const levels = critical_levels(book);
    std::size_t const nlev = levels.size();

    std::vector<std::vector<RegimeDescriptor>> regimes(nlev - 1);
    for (std::size_t j = 0; j + 1 < nlev; ++j)
        regimes[j] = enumerate_regimes(book, (levels[j] + levels[j + 1]) / 2);

    static std::vector<RegimeDescriptor> const none;
    std::vector<std::vector<detail::LevelComponent>> comps(nlev);
    // comp_of_left[i][r]: component at level i holding regime r below it
    std::vector<std::vector<int>> comp_of_left(nlev), comp_of_right(nlev);
    for (std::size_t i = 0; i < nlev; ++i)
    {
        auto const& left = i > 0 ? regimes[i - 1] : none;
        auto const& right = i + 1 < nlev ? regimes[i] : none;
        comps[i] = detail::level_components(book, levels, i, left, right);
        comp_of_left[i].assign(left.size(), -1);
        comp_of_right[i].assign(right.size(), -1);
        for (std::size_t c = 0; c < comps[i].size(); ++c)
        {
            for (int r : comps[i][c].left)
                comp_of_left[i][r] = static_cast<int>(c);
            for (int r : comps[i][c].right)
                comp_of_right[i][r] = static_cast<int>(c);
        }
    }

    // Provisional atom ids keyed by (level, component)
    std::map<std::pair<std::size_t, int>, int> atom_id;
    std::vector<FomenkoAtom> atoms;
    for (std::size_t i = 0; i < nlev; ++i)
    {
        for (std::size_t c = 0; c < comps[i].size(); ++c)
        {
            if (comps[i][c].regular)
                continue;
            atom_id[{i, static_cast<int>(c)}] = static_cast<int>(atoms.size());
            atoms.push_back(comps[i][c].atom);
        }
    }

    std::vector<FomenkoEdge> edges;
    for (std::size_t j = 0; j + 1 < nlev; ++j)
    {
        for (std::size_t r = 0; r < regimes[j].size(); ++r)
        {
            int const start = comp_of_right[j][r];
            if (start < 0 || comps[j][start].regular)
                continue;

            FomenkoEdge e;
            e.from = atom_id.at({j, start});
            std::size_t jj = j;
            int rr = static_cast<int>(r);
            while (true)
            {
                e.segments.push_back(regimes[jj][rr]);
                int const end = comp_of_left[jj + 1][rr];
                auto const& comp = comps[jj + 1][end];
                if (!comp.regular)
                {
                    e.to = atom_id.at({jj + 1, end});
                    break;
                }
                rr = comp.right.front();
                ++jj;
            }
            e.interval = {atoms[e.from].lambda, atoms[e.to].lambda};
            edges.push_back(std::move(e));
        }
    }

    // Deterministic vertex order
    std::vector<int> order(atoms.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        auto const& ax = atoms[x];
        auto const& ay = atoms[y];
        return std::tie(ax.lambda, ax.type, ax.description)
               < std::tie(ay.lambda, ay.type, ay.description);
    });
    std::vector<int> new_id(atoms.size());
    FomenkoGraph g;
    for (std::size_t k = 0; k < order.size(); ++k)
    {
        new_id[order[k]] = static_cast<int>(k);
        g.atoms.push_back(atoms[order[k]]);
    }
    for (auto& e : edges)
    {
        e.from = new_id[e.from];
        e.to = new_id[e.to];
    }
    std::stable_sort(edges.begin(), edges.end(), [](auto const& x, auto const& y) {
        return std::tie(x.from, x.to) < std::tie(y.from, y.to);
    });
    g.edges = std::move(edges);
    return g;
}

//---------------------------------------------------------------------------//
bool graphs_isomorphic(FomenkoGraph const& g1, FomenkoGraph const& g2)
{
    auto const n = g1.atoms.size();
    if (n != g2.atoms.size() || g1.edges.size() != g2.edges.size())
        return false;

    auto const r1 = level_ranks(g1);
    auto const r2 = level_ranks(g2);
    auto const m1 = adjacency(g1);
    auto const m2 = adjacency(g2);

    IsoSearch search{m1, m2, {}, std::vector<int>(n, -1), std::vector<bool>(n)};
    search.compatible.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
        {
            search.compatible[i][j] = g1.atoms[i].type == g2.atoms[j].type
                                      && r1[i] == r2[j];
        }
    }
    return search.extend(0);
}

//---------------------------------------------------------------------------//
std::string census(FomenkoGraph const& g)
{
    std::map<AtomType, int> counts;
    for (auto const& a : g.atoms)
        ++counts[a.type];
    std::ostringstream os;
    bool first = true;
    for (auto const& [type, n] : counts)
    {
        if (!first)
            os << ' ';
        first = false;
        os << to_string(type) << ':' << n;
    }
    return os.str();
}

std::string to_dot(FomenkoGraph const& g)
{
    std::ostringstream os;
    os << "graph fomenko {\n";
    for (std::size_t i = 0; i < g.atoms.size(); ++i)
    {
        auto const& a = g.atoms[i];
        os << "  v" << i << " [label=\"" << to_string(a.type) << '@'
           << format_lambda(a.lambda) << "\" tooltip=\"" << a.description
           << "\"];\n";
    }
    for (auto const& e : g.edges)
    {
        os << "  v" << e.from << " -- v" << e.to << " [label=\"("
           << format_lambda(e.interval.first) << ", "
           << format_lambda(e.interval.second) << ")\"];\n";
    }
    os << "}\n";
    return os.str();
}

//---------------------------------------------------------------------------//
}  // namespace bbook
