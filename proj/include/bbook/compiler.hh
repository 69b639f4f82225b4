//---------------------------------------------------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file bbook/compiler.hh
//! Ordered billiard games and the books that realize them.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "book.hh"
#include "dynamics.hh"

namespace bbook
{
//---------------------------------------------------------------------------//
/*!
 * Cyclic sequence of ellipses E_k (parameters beta_k) with reflection signs.
 *
 * Signature entry +1 means the reflection off E_k is from inside, -1 from
 * outside.
 */
struct OrderedGame
{
    ConfocalFamily family;
    std::vector<double> betas;
    std::vector<int> signature;

    std::size_t size() const { return betas.size(); }
    friend bool operator==(OrderedGame const&, OrderedGame const&) = default;
};

enum class GameViolationCode
{
    EmptyGame,
    LengthMismatch,
    BadFamily,
    NotAnEllipse,
    BadSignature,
    ConsecutiveOutside,
    OutsideNotInner,
};

std::string_view to_string(GameViolationCode code);

struct GameViolation
{
    GameViolationCode code;
    std::string detail;
};

struct GameValidation
{
    std::vector<GameViolation> violations;
    //! Rotation with E_1 outermost and beta_1 != beta_n, if one exists
    std::optional<OrderedGame> normalized;
    //! normalized index k corresponds to original index (k + rotation) % n
    int rotation{0};

    bool valid() const { return violations.empty(); }
};

// Check the game invariants and find the cyclic normalization
GameValidation validate_game(OrderedGame const& game);

// Rotate so that entry \c shift comes first
OrderedGame rotate_game(OrderedGame const& game, int shift);

// Inverse game (E_1, E_n, ..., E_2)
OrderedGame inverse_game(OrderedGame const& game);

//---------------------------------------------------------------------------//
struct CompileReport
{
    BilliardBook book;
    //! The normalized game the book was built for
    OrderedGame game;
    int rotation{0};
    //! annulus_ids[k] is A_k (annulus between E_k and E_{k+1}); 0 if absent
    std::vector<LeafId> annulus_ids;
    //! Disk copies glued along E_k, keyed by 1-based k
    std::map<int, std::vector<LeafId>> disk_ids;
    int leaf_count{0};
    //! Number of ellipses within both neighbours
    int s_count{0};
};

// Book with annuli between consecutive ellipses and disks for each inside
// reflection (throws ConsecutiveRepeat, InvalidGame)
CompileReport compile_simple(OrderedGame const& game);

// Same construction allowing runs of a repeated ellipse
// (throws InvalidGame, RepeatWithOutside)
CompileReport compile_general(OrderedGame const& game);

struct LeafCountBounds
{
    int lower{0};
    int upper{0};
    int s{0};
};

LeafCountBounds leaf_count_bounds(OrderedGame const& game);

// Same leaves, every gluing inverted
BilliardBook invert_book(BilliardBook const& book);

//---------------------------------------------------------------------------//
// Starting states
//---------------------------------------------------------------------------//

// Whether a caustic is admissible for the game (inside every E_k or a
// hyperbola)
bool caustic_admissible(OrderedGame const& game, double caustic);

// Random point of A_0 with a direction tangent to the caustic, heading to E_1
// (throws InadmissibleCaustic)
PhaseState admissible_start(CompileReport const& report,
                            double caustic,
                            std::uint64_t seed);

/*!
 * Random point of a leaf with a direction tangent to the caustic.
 *
 * When \c first_hit is given, only directions whose next boundary event is
 * on that ellipse are kept. Throws InadmissibleCaustic when no such state is
 * found.
 */
PhaseState sample_tangent_start(BilliardBook const& book,
                                LeafId leaf,
                                double caustic,
                                std::uint64_t seed,
                                std::optional<double> first_hit
                                = std::nullopt);

// Directions through p tangent to C_caustic (0, 2 or 4 of them)
std::vector<UnitVector> tangent_directions(ConfocalFamily const& family,
                                           PlanePoint p,
                                           double caustic);

//---------------------------------------------------------------------------//
// JSON (game file)
//---------------------------------------------------------------------------//

std::string to_json(OrderedGame const& game);

// Throws SchemaError
OrderedGame game_from_json(std::string const& text);

//---------------------------------------------------------------------------//
}  // namespace bbook
