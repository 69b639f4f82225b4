//---------------------------------------------------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file game_json.cc
//---------------------------------------------------------------------------//
#include "json.hpp"

#include "bbook/compiler.hh"
#include "detail/json_util.hh"

namespace bbook
{
using nlohmann::json;
using detail::schema_fail;

//---------------------------------------------------------------------------//
std::string to_json(OrderedGame const& game)
{
    json j;
    j["family"] = {{"a", game.family.a}, {"b", game.family.b}};
    j["betas"] = game.betas;
    j["signature"] = game.signature;
    return j.dump(2) + "\n";
}

OrderedGame game_from_json(std::string const& text)
{
    json const j = detail::parse_text(text);
    detail::require_object(j, "$");

    OrderedGame game;
    game.family = detail::parse_family(j, "$");

    if (!j.contains("betas") || !j.at("betas").is_array())
        schema_fail("$.betas", "expected array of numbers");
    for (auto const& b : j.at("betas"))
    {
        if (!b.is_number())
            schema_fail("$.betas", "expected array of numbers");
        game.betas.push_back(b.get<double>());
    }

    if (!j.contains("signature") || !j.at("signature").is_array())
        schema_fail("$.signature", "expected array of 1 or -1");
    for (auto const& s : j.at("signature"))
    {
        if (!s.is_number_integer())
            schema_fail("$.signature", "expected array of 1 or -1");
        game.signature.push_back(s.get<int>());
    }

    for (auto const& [key, val] : j.items())
    {
        if (key != "family" && key != "betas" && key != "signature")
            schema_fail("$." + key, "unknown field");
    }
    return game;
}

//---------------------------------------------------------------------------//
}  // namespace bbook
