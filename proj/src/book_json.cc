//---------------------------------------------------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file book_json.cc
//---------------------------------------------------------------------------//
#include <algorithm>
#include <set>

#include "json.hpp"

#include "bbook/book.hh"
#include "bbook/error.hh"
#include "detail/json_util.hh"

namespace bbook
{
using nlohmann::json;
using detail::schema_fail;

namespace
{
//---------------------------------------------------------------------------//
Leaf parse_leaf(json const& j, std::string const& where)
{
    detail::require_object(j, where);
    Leaf leaf;
    leaf.id = detail::get_int(j, "id", where);

    bool const has_disk = j.contains("disk");
    bool const has_ann = j.contains("annulus");
    if (has_disk == has_ann)
    {
        schema_fail(where,
                    "leaf needs exactly one of \"disk\" or \"annulus\"");
    }
    for (auto const& [key, val] : j.items())
    {
        if (key != "id" && key != "disk" && key != "annulus")
            schema_fail(where + "." + key, "unknown leaf field");
    }

    if (has_disk)
    {
        leaf.shape = Disk{detail::get_number(j, "disk", where)};
    }
    else
    {
        auto const& arr = j.at("annulus");
        if (!arr.is_array() || arr.size() != 2 || !arr[0].is_number()
            || !arr[1].is_number())
        {
            schema_fail(where + ".annulus", "expected [outer, inner]");
        }
        leaf.shape = Annulus{arr[0].get<double>(), arr[1].get<double>()};
    }
    return leaf;
}

//---------------------------------------------------------------------------//
Gluing parse_gluing(json const& j, std::string const& where)
{
    detail::require_object(j, where);
    Gluing g;
    g.ellipse = detail::get_number(j, "ellipse", where);
    if (!j.contains("cycles") || !j.at("cycles").is_array())
        schema_fail(where + ".cycles", "expected array of cycles");

    auto const& cycles = j.at("cycles");
    for (std::size_t i = 0; i < cycles.size(); ++i)
    {
        std::string const cw = where + ".cycles[" + std::to_string(i) + "]";
        if (!cycles[i].is_array() || cycles[i].empty())
            schema_fail(cw, "expected non-empty array of leaf ids");
        std::vector<LeafId> cycle;
        for (auto const& id : cycles[i])
        {
            if (!id.is_number_integer())
                schema_fail(cw, "leaf ids must be integers");
            cycle.push_back(id.get<LeafId>());
        }
        g.cycles.push_back(std::move(cycle));
    }
    return g;
}

//---------------------------------------------------------------------------//
// Add singleton cycles for boundary leaves that the file left implicit
void complete_fixed_points(BilliardBook& book)
{
    for (auto& g : book.gluings)
    {
        auto const dom = g.domain();
        std::set<LeafId> const seen(dom.begin(), dom.end());
        for (auto const& leaf : book.leaves)
        {
            if (leaf.has_boundary(g.ellipse) && !seen.count(leaf.id))
                g.cycles.push_back({leaf.id});
        }
    }
}
}  // namespace

//---------------------------------------------------------------------------//
std::string to_json(BilliardBook const& book)
{
    json j;
    j["family"] = {{"a", book.family.a}, {"b", book.family.b}};
    j["leaves"] = json::array();
    for (auto const& leaf : book.leaves)
    {
        json jl{{"id", leaf.id}};
        if (auto const* d = std::get_if<Disk>(&leaf.shape))
        {
            jl["disk"] = d->lambda;
        }
        else
        {
            auto const& ann = std::get<Annulus>(leaf.shape);
            jl["annulus"] = {ann.outer, ann.inner};
        }
        j["leaves"].push_back(std::move(jl));
    }
    j["gluings"] = json::array();
    for (auto const& g : book.gluings)
    {
        json cycles = json::array();
        for (auto const& c : g.cycles)
        {
            if (c.size() > 1)
                cycles.push_back(c);
        }
        j["gluings"].push_back({{"ellipse", g.ellipse}, {"cycles", cycles}});
    }
    return j.dump(2) + "\n";
}

//---------------------------------------------------------------------------//
BilliardBook book_from_json(std::string const& text)
{
    json const j = detail::parse_text(text);
    detail::require_object(j, "$");

    BilliardBook book;
    book.family = detail::parse_family(j, "$");

    if (!j.contains("leaves") || !j.at("leaves").is_array())
        schema_fail("$.leaves", "expected array");
    auto const& leaves = j.at("leaves");
    for (std::size_t i = 0; i < leaves.size(); ++i)
    {
        book.leaves.push_back(
            parse_leaf(leaves[i], "$.leaves[" + std::to_string(i) + "]"));
    }

    if (j.contains("gluings"))
    {
        auto const& gluings = j.at("gluings");
        if (!gluings.is_array())
            schema_fail("$.gluings", "expected array");
        for (std::size_t i = 0; i < gluings.size(); ++i)
        {
            book.gluings.push_back(parse_gluing(
                gluings[i], "$.gluings[" + std::to_string(i) + "]"));
        }
    }
    for (auto const& [key, val] : j.items())
    {
        if (key != "family" && key != "leaves" && key != "gluings")
            schema_fail("$." + key, "unknown field");
    }

    complete_fixed_points(book);
    return book;
}

//---------------------------------------------------------------------------//
}  // namespace bbook
