//---------------------------------------------------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file compiler.cc
//---------------------------------------------------------------------------//
#include "bbook/compiler.hh"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "bbook/error.hh"

namespace bbook
{
namespace
{
//---------------------------------------------------------------------------//
//! Cyclic access with 1-based game indices (E_0 = E_n, E_{n+1} = E_1)
struct CyclicGame
{
    OrderedGame const& g;

    int n() const { return static_cast<int>(g.betas.size()); }
    int wrap(int k) const { return ((k - 1) % n() + n()) % n(); }
    double beta(int k) const { return g.betas[wrap(k)]; }
    int sign(int k) const { return g.signature[wrap(k)]; }
};

bool is_constant(OrderedGame const& game)
{
    return std::adjacent_find(game.betas.begin(),
                              game.betas.end(),
                              std::not_equal_to<>{})
           == game.betas.end();
}

bool has_consecutive_repeat(OrderedGame const& game)
{
    CyclicGame const cg{game};
    for (int k = 1; k <= cg.n(); ++k)
    {
        if (cg.beta(k) == cg.beta(k + 1))
            return true;
    }
    return false;
}

[[noreturn]] void fail_invalid(GameValidation const& v)
{
    std::ostringstream os;
    os << "game is not valid:";
    for (auto const& viol : v.violations)
        os << ' ' << to_string(viol.code) << " (" << viol.detail << ')';
    throw Error(ErrorCode::InvalidGame, os.str());
}

//! Uniform double in [0, 1) that does not depend on the standard library
double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

//---------------------------------------------------------------------------//
/*!
 * Shared construction for both compile entry points.
 *
 * The game must already be normalized (beta_1 != beta_n) and its runs of
 * repeated ellipses must only contain inside reflections.
 */
CompileReport build(OrderedGame const& game, int rotation)
{
    CyclicGame const cg{game};
    int const n = cg.n();

    CompileReport rep;
    rep.game = game;
    rep.rotation = rotation;
    rep.book.family = game.family;
    rep.annulus_ids.assign(n, 0);

    // (A) annuli between distinct consecutive ellipses
    LeafId next_id = 1;
    for (int k = 0; k < n; ++k)
    {
        double const lo = cg.beta(k);
        double const hi = cg.beta(k + 1);
        if (lo == hi)
            continue;
        rep.annulus_ids[k] = next_id;
        rep.book.leaves.push_back(
            {next_id, Annulus{std::min(lo, hi), std::max(lo, hi)}});
        ++next_id;
    }

    struct RunCycle
    {
        double beta;
        int k;
        int disks;
        LeafId prev;
        LeafId next;
    };
    std::vector<RunCycle> runs;
    for (int k = 1; k <= n;)
    {
        int s = 1;
        while (k + s <= n && cg.beta(k + s) == cg.beta(k))
            ++s;

        bool const prev_in = cg.beta(k - 1) > cg.beta(k);
        bool const next_in = cg.beta(k + s) > cg.beta(k);
        if (!prev_in && !next_in)
            ++rep.s_count;

        int disks = 0;
        if (cg.sign(k) == 1)
        {
            if (prev_in != next_in)
                disks = s;
            else if (!prev_in)
                disks = s + 1;
            else
                disks = s - 1;
        }
        runs.push_back({cg.beta(k),
                        k,
                        disks,
                        rep.annulus_ids[k - 1],
                        rep.annulus_ids[(k + s - 1) % n]});
        k += s;
    }

    // Disks in ascending k, then cycles (A_{k-1} D.. A_{k+s-1})
    std::map<double, Gluing> gluings;
    for (auto const& r : runs)
    {
        std::vector<LeafId> cycle{r.prev};
        auto& ids = rep.disk_ids[r.k];
        for (int d = 0; d < r.disks; ++d)
        {
            rep.book.leaves.push_back({next_id, Disk{r.beta}});
            ids.push_back(next_id);
            cycle.push_back(next_id);
            ++next_id;
        }
        if (ids.empty())
            rep.disk_ids.erase(r.k);
        cycle.push_back(r.next);

        auto& g = gluings[r.beta];
        g.ellipse = r.beta;
        g.cycles.push_back(std::move(cycle));
    }
    for (auto& [beta, g] : gluings)
        rep.book.gluings.push_back(std::move(g));

    rep.leaf_count = static_cast<int>(rep.book.leaves.size());
    return rep;
}
}  // namespace

//---------------------------------------------------------------------------//
std::string_view to_string(GameViolationCode code)
{
    switch (code)
    {
        case GameViolationCode::EmptyGame: return "EmptyGame";
        case GameViolationCode::LengthMismatch: return "LengthMismatch";
        case GameViolationCode::BadFamily: return "BadFamily";
        case GameViolationCode::NotAnEllipse: return "NotAnEllipse";
        case GameViolationCode::BadSignature: return "BadSignature";
        case GameViolationCode::ConsecutiveOutside:
            return "ConsecutiveOutside";
        case GameViolationCode::OutsideNotInner: return "OutsideNotInner";
    }
    return "Unknown";
}

//---------------------------------------------------------------------------//
OrderedGame rotate_game(OrderedGame const& game, int shift)
{
    OrderedGame result = game;
    auto const n = static_cast<int>(game.size());
    if (n == 0)
        return result;
    shift = ((shift % n) + n) % n;
    std::rotate(result.betas.begin(),
                result.betas.begin() + shift,
                result.betas.end());
    std::rotate(result.signature.begin(),
                result.signature.begin() + shift,
                result.signature.end());
    return result;
}

OrderedGame inverse_game(OrderedGame const& game)
{
    OrderedGame result = game;
    if (game.size() > 1)
    {
        std::reverse(result.betas.begin() + 1, result.betas.end());
        std::reverse(result.signature.begin() + 1, result.signature.end());
    }
    return result;
}

//---------------------------------------------------------------------------//
GameValidation validate_game(OrderedGame const& game)
{
    GameValidation result;
    auto report = [&result](GameViolationCode code, auto&&... parts) {
        std::ostringstream os;
        (os << ... << parts);
        result.violations.push_back({code, os.str()});
    };

    if (game.betas.empty())
    {
        report(GameViolationCode::EmptyGame, "game has no ellipses");
        return result;
    }
    if (game.betas.size() != game.signature.size())
    {
        report(GameViolationCode::LengthMismatch,
               game.betas.size(),
               " ellipses but ",
               game.signature.size(),
               " signature entries");
        return result;
    }
    if (!game.family.valid())
        report(GameViolationCode::BadFamily, "require a > b > 0");

    CyclicGame const cg{game};
    int const n = cg.n();
    bool signs_ok = true;
    for (int k = 1; k <= n; ++k)
    {
        if (!(cg.beta(k) < game.family.b))
        {
            report(GameViolationCode::NotAnEllipse,
                   "E_",
                   k,
                   " has parameter ",
                   cg.beta(k),
                   " >= b");
        }
        if (cg.sign(k) != 1 && cg.sign(k) != -1)
        {
            report(GameViolationCode::BadSignature,
                   "i_",
                   k,
                   " = ",
                   cg.sign(k));
            signs_ok = false;
        }
    }

    if (signs_ok)
    {
        std::set<std::pair<int, int>> seen;
        for (int k = 1; k <= n; ++k)
        {
            int const j = cg.wrap(k + 1) + 1;
            if (cg.sign(k) == -1 && cg.sign(k + 1) == -1
                && seen.insert(std::minmax(k, j)).second)
            {
                report(GameViolationCode::ConsecutiveOutside,
                       "i_",
                       k,
                       " and i_",
                       j,
                       " are both -1");
            }
        }
        for (int k = 1; k <= n; ++k)
        {
            if (cg.sign(k) == -1
                && !(cg.beta(k) > cg.beta(k - 1)
                     && cg.beta(k) > cg.beta(k + 1)))
            {
                report(GameViolationCode::OutsideNotInner,
                       "E_",
                       k,
                       " is reflected from outside but is not within both "
                       "neighbours");
            }
        }
    }

    if (!is_constant(game))
    {
        double const lo
            = *std::min_element(game.betas.begin(), game.betas.end());
        for (int k = 1; k <= n; ++k)
        {
            if (cg.beta(k) == lo && cg.beta(k - 1) != lo)
            {
                result.rotation = k - 1;
                result.normalized = rotate_game(game, k - 1);
                break;
            }
        }
    }
    return result;
}

//---------------------------------------------------------------------------//
CompileReport compile_simple(OrderedGame const& game)
{
    auto const v = validate_game(game);
    if (!v.valid())
        fail_invalid(v);
    if (has_consecutive_repeat(game))
    {
        throw Error(ErrorCode::ConsecutiveRepeat,
                    "game repeats an ellipse consecutively; use the general "
                    "construction");
    }
    return build(*v.normalized, v.rotation);
}

CompileReport compile_general(OrderedGame const& game)
{
    if (game.betas.size() == game.signature.size() && !game.betas.empty())
    {
        if (is_constant(game))
        {
            throw Error(ErrorCode::InvalidGame,
                        "every ellipse of the game is the same");
        }
        CyclicGame const cg{game};
        for (int k = 1; k <= cg.n(); ++k)
        {
            if (cg.beta(k) == cg.beta(k + 1)
                && (cg.sign(k) == -1 || cg.sign(k + 1) == -1))
            {
                std::ostringstream os;
                os << "E_" << k << " repeats with an outside reflection";
                throw Error(ErrorCode::RepeatWithOutside, os.str());
            }
        }
    }
    auto const v = validate_game(game);
    if (!v.valid())
        fail_invalid(v);
    return build(*v.normalized, v.rotation);
}

//---------------------------------------------------------------------------//
LeafCountBounds leaf_count_bounds(OrderedGame const& game)
{
    CyclicGame const cg{game};
    LeafCountBounds result;
    for (int k = 1; k <= cg.n(); ++k)
    {
        if (cg.beta(k) > cg.beta(k - 1) && cg.beta(k) > cg.beta(k + 1))
            ++result.s;
    }
    result.lower = 2 * cg.n() - 2 * result.s;
    result.upper = 2 * cg.n();
    return result;
}

BilliardBook invert_book(BilliardBook const& book)
{
    BilliardBook result = book;
    for (auto& g : result.gluings)
        g = g.inverse();
    return result;
}

//---------------------------------------------------------------------------//
bool caustic_admissible(OrderedGame const& game, double caustic)
{
    auto const& fam = game.family;
    double const tol = kTangencyTol * fam.a;
    double const top = *std::max_element(game.betas.begin(), game.betas.end());
    bool const inner_ellipse = caustic > top + tol && caustic < fam.b - tol;
    bool const hyperbola = caustic > fam.b + tol && caustic < fam.a - tol;
    return inner_ellipse || hyperbola;
}

//---------------------------------------------------------------------------//
/*!
 * With v = (cos t, sin t) and phi = 2t the tangency condition becomes
 * alpha cos(phi) + beta sin(phi) = -c0.
 */
std::vector<UnitVector> tangent_directions(ConfocalFamily const& family,
                                           PlanePoint p,
                                           double caustic)
{
    double const alpha = (family.b - family.a + p.x * p.x - p.y * p.y) / 2;
    double const beta = p.x * p.y;
    double const c0
        = (family.a + family.b - p.x * p.x - p.y * p.y) / 2 - caustic;
    double const r = std::hypot(alpha, beta);
    if (!(r > 0) || std::abs(c0) > r)
        return {};

    double const psi = std::atan2(beta, alpha);
    double const delta = std::acos(-c0 / r);
    std::vector<UnitVector> result;
    for (double phi : {psi + delta, psi - delta})
    {
        double const t = phi / 2;
        result.push_back(UnitVector::normalized(std::cos(t), std::sin(t)));
        result.push_back(UnitVector::normalized(-std::cos(t), -std::sin(t)));
    }
    return result;
}

//---------------------------------------------------------------------------//
PhaseState sample_tangent_start(BilliardBook const& book,
                                LeafId leaf_id,
                                double caustic,
                                std::uint64_t seed,
                                std::optional<double> first_hit)
{
    constexpr int max_attempts = 100000;
    constexpr double margin = 1e-6;

    auto const& fam = book.family;
    Leaf const& leaf = book.leaf(leaf_id);
    double const outer = leaf.outer();
    double const hx = std::sqrt(fam.a - outer);
    double const hy = std::sqrt(fam.b - outer);

    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < max_attempts; ++attempt)
    {
        PlanePoint const p{(2 * uniform01(rng) - 1) * hx,
                           (2 * uniform01(rng) - 1) * hy};
        if (conic_residual(fam, outer, p) > -margin)
            continue;
        if (auto const* ann = std::get_if<Annulus>(&leaf.shape))
        {
            if (conic_residual(fam, ann->inner, p) < margin)
                continue;
        }

        std::vector<PhaseState> candidates;
        for (auto const& v : tangent_directions(fam, p, caustic))
        {
            PhaseState const s{p, v, leaf_id};
            try
            {
                auto const hit = detail::next_boundary_hit(book, s);
                if (hit.tangential)
                    continue;
                if (first_hit && !same_ellipse(hit.ellipse, *first_hit))
                    continue;
            }
            catch (Error const&)
            {
                continue;
            }
            candidates.push_back(s);
        }
        if (!candidates.empty())
            return candidates[rng() % candidates.size()];
    }

    std::ostringstream os;
    os << "no start on leaf " << leaf_id << " is tangent to caustic "
       << caustic;
    throw Error(ErrorCode::InadmissibleCaustic, os.str());
}

PhaseState admissible_start(CompileReport const& report,
                            double caustic,
                            std::uint64_t seed)
{
    if (!caustic_admissible(report.game, caustic))
    {
        std::ostringstream os;
        os << "caustic " << caustic
           << " is neither inside every game ellipse nor a hyperbola";
        throw Error(ErrorCode::InadmissibleCaustic, os.str());
    }
    return sample_tangent_start(report.book,
                                report.annulus_ids.front(),
                                caustic,
                                seed,
                                report.game.betas.front());
}

//---------------------------------------------------------------------------//
}  // namespace bbook
