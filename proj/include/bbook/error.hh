//---------------------------------------------------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file bbook/error.hh
//---------------------------------------------------------------------------//
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bbook
{
//---------------------------------------------------------------------------//
//! Machine-readable failure category carried by \c Error.
enum class ErrorCode
{
    InvalidFamily,
    EmptyConic,
    DegenerateConic,
    PointNotOnConic,
    NotABoundary,
    UnknownLeaf,
    SchemaError,
    TangentialHit,
    EscapedLeaf,
    ConsecutiveRepeat,
    InvalidGame,
    RepeatWithOutside,
    InadmissibleCaustic,
    CriticalLambda,
    NoInnerLeaf,
    NotCritical,
    RenderLimit,
};

std::string_view to_string(ErrorCode code);

//---------------------------------------------------------------------------//
/*!
 * Exception thrown for contract violations and unrecoverable numerical
 * conditions. Recoverable findings (book/game violations) are returned as
 * data instead.
 */
class Error : public std::runtime_error
{
  public:
    Error(ErrorCode code, std::string const& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what)
        , code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

//---------------------------------------------------------------------------//
}  // namespace bbook
