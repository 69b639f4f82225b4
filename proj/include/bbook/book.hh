//---------------------------------------------------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file bbook/book.hh
//! Leaves, gluing permutations and the billiard book that combines them.
//---------------------------------------------------------------------------//
#pragma once

#include <string>
#include <variant>
#include <vector>

#include "geometry.hh"

namespace bbook
{
//---------------------------------------------------------------------------//
using LeafId = int;

//! Ellipse parameters are matched with this absolute tolerance
inline constexpr double kEllipseMatchTol = 1e-12;

inline bool same_ellipse(double lhs, double rhs)
{
    return lhs - rhs <= kEllipseMatchTol && rhs - lhs <= kEllipseMatchTol;
}

//---------------------------------------------------------------------------//
//! Elliptic disk bounded by C_lambda
struct Disk
{
    double lambda{0};
    friend bool operator==(Disk const&, Disk const&) = default;
};

//! Region between C_outer and C_inner; outer < inner (larger ellipse first)
struct Annulus
{
    double outer{0};
    double inner{0};
    friend bool operator==(Annulus const&, Annulus const&) = default;
};

struct Leaf
{
    LeafId id{0};
    std::variant<Disk, Annulus> shape;

    bool is_disk() const { return std::holds_alternative<Disk>(shape); }
    //! Parameter of the outer (for a disk: only) boundary
    double outer() const;
    //! Boundary parameters, outer first
    std::vector<double> boundaries() const;
    bool has_boundary(double ellipse) const;

    friend bool operator==(Leaf const&, Leaf const&) = default;
};

//! Which side of a boundary ellipse a leaf occupies
enum class Side
{
    Within,
    Outside,
};

// Side of the leaf relative to one of its boundary ellipses
Side boundary_side(Leaf const& leaf, double ellipse);

// Whether a point lies in the closed leaf within the on-conic tolerance
bool leaf_contains(ConfocalFamily const& family,
                   Leaf const& leaf,
                   PlanePoint p);

//---------------------------------------------------------------------------//
/*!
 * Gluing permutation along one ellipse, in cycle notation.
 *
 * Leaves not mentioned by any cycle are fixed points. Singleton cycles are
 * allowed and are how an explicit fixed point enters the domain.
 */
struct Gluing
{
    double ellipse{0};
    std::vector<std::vector<LeafId>> cycles;

    //! Image of a leaf (identity outside the cycles)
    LeafId apply(LeafId leaf) const;
    //! Leaf ids mentioned by the cycles, sorted, duplicates kept
    std::vector<LeafId> domain() const;
    //! Inverse permutation (each cycle reversed)
    Gluing inverse() const;
    //! Canonical cycles: each rotated to its smallest id, sorted, singletons
    //! dropped
    std::vector<std::vector<LeafId>> canonical_cycles() const;
};

//! Permutations compare as mappings, so cycle rotation and omitted fixed
//! points are irrelevant
bool operator==(Gluing const& lhs, Gluing const& rhs);

//---------------------------------------------------------------------------//
struct BilliardBook
{
    ConfocalFamily family;
    std::vector<Leaf> leaves;
    std::vector<Gluing> gluings;

    //! Leaf by id; throws UnknownLeaf
    Leaf const& leaf(LeafId id) const;
    //! Gluing along an ellipse, or null if the ellipse is an unglued wall
    Gluing const* gluing_at(double ellipse) const;
    //! Next leaf after hitting \c ellipse from \c leaf
    LeafId glue(LeafId leaf, double ellipse) const;
    //! Sorted distinct boundary parameters of all leaves
    std::vector<double> boundary_params() const;
};

// Structural equality: family, leaves in order, gluings as a keyed set
bool operator==(BilliardBook const& lhs, BilliardBook const& rhs);

//---------------------------------------------------------------------------//
enum class ViolationCode
{
    BadFamily,
    DuplicateId,
    BadLeafOrder,
    DuplicateGluing,
    BadDomain,
    NotBijective,
};

struct Violation
{
    ViolationCode code;
    std::string detail;
};

std::string_view to_string(ViolationCode code);

// Every invariant violation of the book; empty means valid
std::vector<Violation> validate_book(BilliardBook const& book);

//---------------------------------------------------------------------------//
// JSON (book.schema.json)
//---------------------------------------------------------------------------//

// Serialize with 2-space indentation; singleton cycles are omitted
std::string to_json(BilliardBook const& book);

// Parse and complete omitted fixed points; throws SchemaError
BilliardBook book_from_json(std::string const& text);

//---------------------------------------------------------------------------//
}  // namespace bbook
