//---------------------------------------------------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file book.cc
//---------------------------------------------------------------------------//
#include "bbook/book.hh"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "bbook/error.hh"

namespace bbook
{
//---------------------------------------------------------------------------//
double Leaf::outer() const
{
    if (auto const* d = std::get_if<Disk>(&shape))
        return d->lambda;
    return std::get<Annulus>(shape).outer;
}

std::vector<double> Leaf::boundaries() const
{
    if (auto const* d = std::get_if<Disk>(&shape))
        return {d->lambda};
    auto const& ann = std::get<Annulus>(shape);
    return {ann.outer, ann.inner};
}

bool Leaf::has_boundary(double ellipse) const
{
    auto const params = this->boundaries();
    return std::any_of(params.begin(), params.end(), [ellipse](double p) {
        return same_ellipse(p, ellipse);
    });
}

//---------------------------------------------------------------------------//
Side boundary_side(Leaf const& leaf, double ellipse)
{
    if (auto const* d = std::get_if<Disk>(&leaf.shape))
    {
        if (same_ellipse(d->lambda, ellipse))
            return Side::Within;
    }
    else
    {
        auto const& ann = std::get<Annulus>(leaf.shape);
        if (same_ellipse(ann.outer, ellipse))
            return Side::Within;
        if (same_ellipse(ann.inner, ellipse))
            return Side::Outside;
    }
    std::ostringstream os;
    os << "ellipse " << ellipse << " does not bound leaf " << leaf.id;
    throw Error(ErrorCode::NotABoundary, os.str());
}

bool leaf_contains(ConfocalFamily const& family,
                   Leaf const& leaf,
                   PlanePoint p)
{
    double const tol = kOnConicTol * family.a;
    if (conic_residual(family, leaf.outer(), p) > tol)
        return false;
    if (auto const* ann = std::get_if<Annulus>(&leaf.shape))
        return conic_residual(family, ann->inner, p) >= -tol;
    return true;
}

//---------------------------------------------------------------------------//
LeafId Gluing::apply(LeafId leaf) const
{
    for (auto const& cycle : cycles)
    {
        auto it = std::find(cycle.begin(), cycle.end(), leaf);
        if (it == cycle.end())
            continue;
        ++it;
        return it == cycle.end() ? cycle.front() : *it;
    }
    return leaf;
}

std::vector<LeafId> Gluing::domain() const
{
    std::vector<LeafId> result;
    for (auto const& cycle : cycles)
        result.insert(result.end(), cycle.begin(), cycle.end());
    std::sort(result.begin(), result.end());
    return result;
}

Gluing Gluing::inverse() const
{
    Gluing result{ellipse, cycles};
    for (auto& cycle : result.cycles)
    {
        if (cycle.size() > 1)
            std::reverse(cycle.begin() + 1, cycle.end());
    }
    return result;
}

std::vector<std::vector<LeafId>> Gluing::canonical_cycles() const
{
    std::vector<std::vector<LeafId>> result;
    for (auto cycle : cycles)
    {
        if (cycle.size() < 2)
            continue;
        std::rotate(cycle.begin(),
                    std::min_element(cycle.begin(), cycle.end()),
                    cycle.end());
        result.push_back(std::move(cycle));
    }
    std::sort(result.begin(), result.end());
    return result;
}

bool operator==(Gluing const& lhs, Gluing const& rhs)
{
    return same_ellipse(lhs.ellipse, rhs.ellipse)
           && lhs.canonical_cycles() == rhs.canonical_cycles();
}

//---------------------------------------------------------------------------//
Leaf const& BilliardBook::leaf(LeafId id) const
{
    auto it = std::find_if(leaves.begin(), leaves.end(), [id](Leaf const& l) {
        return l.id == id;
    });
    if (it == leaves.end())
    {
        throw Error(ErrorCode::UnknownLeaf,
                    "no leaf with id " + std::to_string(id));
    }
    return *it;
}

Gluing const* BilliardBook::gluing_at(double ellipse) const
{
    for (auto const& g : gluings)
    {
        if (same_ellipse(g.ellipse, ellipse))
            return &g;
    }
    return nullptr;
}

LeafId BilliardBook::glue(LeafId leaf, double ellipse) const
{
    Gluing const* g = this->gluing_at(ellipse);
    return g ? g->apply(leaf) : leaf;
}

std::vector<double> BilliardBook::boundary_params() const
{
    std::vector<double> result;
    for (auto const& l : leaves)
    {
        for (double p : l.boundaries())
        {
            bool const seen
                = std::any_of(result.begin(), result.end(), [p](double q) {
                      return same_ellipse(p, q);
                  });
            if (!seen)
                result.push_back(p);
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

bool operator==(BilliardBook const& lhs, BilliardBook const& rhs)
{
    if (!(lhs.family == rhs.family) || lhs.leaves != rhs.leaves
        || lhs.gluings.size() != rhs.gluings.size())
    {
        return false;
    }
    for (auto const& g : lhs.gluings)
    {
        Gluing const* other = rhs.gluing_at(g.ellipse);
        if (!other || !(*other == g))
            return false;
    }
    return true;
}

//---------------------------------------------------------------------------//
std::string_view to_string(ViolationCode code)
{
    switch (code)
    {
        case ViolationCode::BadFamily: return "BadFamily";
        case ViolationCode::DuplicateId: return "DuplicateId";
        case ViolationCode::BadLeafOrder: return "BadLeafOrder";
        case ViolationCode::DuplicateGluing: return "DuplicateGluing";
        case ViolationCode::BadDomain: return "BadDomain";
        case ViolationCode::NotBijective: return "NotBijective";
    }
    return "Unknown";
}

//---------------------------------------------------------------------------//
std::vector<Violation> validate_book(BilliardBook const& book)
{
    std::vector<Violation> result;
    auto report = [&result](ViolationCode code, auto&&... parts) {
        std::ostringstream os;
        (os << ... << parts);
        result.push_back({code, os.str()});
    };

    if (!book.family.valid())
    {
        report(ViolationCode::BadFamily,
               "require a > b > 0, got a=",
               book.family.a,
               " b=",
               book.family.b);
    }

    std::set<LeafId> ids;
    for (auto const& leaf : book.leaves)
    {
        if (!ids.insert(leaf.id).second)
            report(ViolationCode::DuplicateId, "leaf id ", leaf.id);

        if (auto const* d = std::get_if<Disk>(&leaf.shape))
        {
            if (!(d->lambda < book.family.b))
            {
                report(ViolationCode::BadLeafOrder,
                       "leaf ",
                       leaf.id,
                       ": disk parameter ",
                       d->lambda,
                       " is not an ellipse");
            }
        }
        else
        {
            auto const& ann = std::get<Annulus>(leaf.shape);
            if (!(ann.outer < ann.inner && ann.inner < book.family.b))
            {
                report(ViolationCode::BadLeafOrder,
                       "leaf ",
                       leaf.id,
                       ": annulus requires outer < inner < b, got (",
                       ann.outer,
                       ", ",
                       ann.inner,
                       ")");
            }
        }
    }

    for (std::size_t i = 0; i < book.gluings.size(); ++i)
    {
        auto const& g = book.gluings[i];
        for (std::size_t j = 0; j < i; ++j)
        {
            if (same_ellipse(book.gluings[j].ellipse, g.ellipse))
            {
                report(ViolationCode::DuplicateGluing,
                       "ellipse ",
                       g.ellipse,
                       " has more than one gluing");
            }
        }

        auto const domain = g.domain();
        if (std::adjacent_find(domain.begin(), domain.end()) != domain.end())
        {
            report(ViolationCode::NotBijective,
                   "gluing along ",
                   g.ellipse,
                   " repeats a leaf");
        }

        std::set<LeafId> expected;
        for (auto const& leaf : book.leaves)
        {
            if (leaf.has_boundary(g.ellipse))
                expected.insert(leaf.id);
        }
        std::set<LeafId> const actual(domain.begin(), domain.end());
        if (actual != expected)
        {
            std::ostringstream os;
            os << "gluing along " << g.ellipse << " covers {";
            for (LeafId id : actual)
                os << ' ' << id;
            os << " } but the leaves bounded by it are {";
            for (LeafId id : expected)
                os << ' ' << id;
            os << " }";
            result.push_back({ViolationCode::BadDomain, os.str()});
        }
    }
    return result;
}

//---------------------------------------------------------------------------//
}  // namespace bbook
