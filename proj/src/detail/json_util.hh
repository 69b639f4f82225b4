//---------------------------------------------------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file detail/json_util.hh
//! Small helpers shared by the book and game readers.
//---------------------------------------------------------------------------//
#pragma once

#include <string>

#include "json.hpp"

#include "bbook/error.hh"
#include "bbook/geometry.hh"

namespace bbook
{
namespace detail
{
//---------------------------------------------------------------------------//
[[noreturn]] inline void
schema_fail(std::string const& where, std::string const& what)
{
    throw Error(ErrorCode::SchemaError, where + ": " + what);
}

//! Parse text, converting syntax errors into a line/column diagnostic
inline nlohmann::json parse_text(std::string const& text)
{
    try
    {
        return nlohmann::json::parse(text);
    }
    catch (nlohmann::json::parse_error const& e)
    {
        // Convert byte offset to line and column
        std::size_t line = 1;
        std::size_t col = 1;
        std::size_t const end = std::min<std::size_t>(e.byte, text.size());
        for (std::size_t i = 0; i + 1 < end; ++i)
        {
            if (text[i] == '\n')
            {
                ++line;
                col = 1;
            }
            else
            {
                ++col;
            }
        }
        schema_fail("line " + std::to_string(line) + " column "
                        + std::to_string(col),
                    e.what());
    }
}

inline void require_object(nlohmann::json const& j, std::string const& where)
{
    if (!j.is_object())
        schema_fail(where, "expected object");
}

inline double
get_number(nlohmann::json const& j, char const* key, std::string const& where)
{
    if (!j.contains(key) || !j.at(key).is_number())
        schema_fail(where + "." + key, "expected number");
    return j.at(key).get<double>();
}

inline int
get_int(nlohmann::json const& j, char const* key, std::string const& where)
{
    if (!j.contains(key) || !j.at(key).is_number_integer())
        schema_fail(where + "." + key, "expected integer");
    return j.at(key).get<int>();
}

inline ConfocalFamily
parse_family(nlohmann::json const& j, std::string const& where)
{
    std::string const fw = where + ".family";
    if (!j.contains("family"))
        schema_fail(fw, "missing");
    auto const& f = j.at("family");
    require_object(f, fw);
    return ConfocalFamily{get_number(f, "a", fw), get_number(f, "b", fw)};
}

//---------------------------------------------------------------------------//
}  // namespace detail
}  // namespace bbook
