//---------------------------------------------------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file bbook_cli.cc
//! Command-line front end: compile, simulate, fomenko, verify.
//---------------------------------------------------------------------------//
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "bbook/compiler.hh"
#include "bbook/error.hh"
#include "bbook/render.hh"
#include "bbook/topology.hh"

using namespace bbook;

namespace
{
//---------------------------------------------------------------------------//
enum ExitCode
{
    kOk = 0,
    kInvalid = 2,
    kIo = 3,
    kSingular = 4,
    kUnknownAtom = 5,
    kMismatch = 6,
};

struct IoError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

std::string read_file(std::string const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(std::string const& path, std::string const& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        throw IoError("cannot write " + path);
}

// Prints violations; returns false if there were any
bool check_book(BilliardBook const& book)
{
    auto const v = validate_book(book);
    for (auto const& viol : v)
        std::cerr << to_string(viol.code) << ": " << viol.detail << '\n';
    return v.empty();
}

bool parse_pair(std::string const& text, double& x, double& y)
{
    char comma = 0;
    std::istringstream is(text);
    return static_cast<bool>(is >> x >> comma >> y) && comma == ',';
}

//---------------------------------------------------------------------------//
struct CompileArgs
{
    std::string game;
    std::string out;
    bool general = false;
};

int run_compile(CompileArgs const& args)
{
    auto const game = game_from_json(read_file(args.game));
    auto const v = validate_game(game);
    if (!v.valid())
    {
        for (auto const& viol : v.violations)
            std::cerr << to_string(viol.code) << ": " << viol.detail << '\n';
        return kInvalid;
    }
    auto const rep = args.general ? compile_general(game)
                                  : compile_simple(game);
    auto const text = to_json(rep.book);
    if (args.out.empty())
    {
        std::cout << text;
        return kOk;
    }
    write_file(args.out, text);

    auto const bounds = leaf_count_bounds(rep.game);
    std::cout << "leaves " << rep.leaf_count << '\n'
              << "s " << rep.s_count << '\n'
              << "rotation " << rep.rotation << '\n';
    if (!args.general)
        std::cout << "bounds " << bounds.lower << ' ' << bounds.upper << '\n';
    return kOk;
}

//---------------------------------------------------------------------------//
struct SimulateArgs
{
    std::string book;
    int leaf = 0;
    std::string pos;
    std::string vel;
    std::optional<double> caustic;
    std::uint64_t seed = 0;
    int events = 100;
    std::string csv;
    std::string svg;
    std::string layout = "side";
};

int run_simulate(SimulateArgs const& args)
{
    auto const book = book_from_json(read_file(args.book));
    if (!check_book(book))
        return kInvalid;
    if (book.leaves.empty())
    {
        std::cerr << "book has no leaves\n";
        return kInvalid;
    }

    PhaseState start;
    LeafId const leaf = args.leaf ? args.leaf : book.leaves.front().id;
    if (args.caustic)
    {
        start = sample_tangent_start(book, leaf, *args.caustic, args.seed);
    }
    else
    {
        double px, py, vx, vy;
        if (!parse_pair(args.pos, px, py) || !parse_pair(args.vel, vx, vy))
        {
            std::cerr << "give --pos x,y and --vel vx,vy or --caustic\n";
            return kInvalid;
        }
        if (!leaf_contains(book.family, book.leaf(leaf), {px, py}))
        {
            std::cerr << "start position is not on leaf " << leaf << '\n';
            return kInvalid;
        }
        start = {{px, py}, UnitVector::normalized(vx, vy), leaf};
    }

    auto const traj = simulate(book, start, args.events);

    double drift = 0;
    for (auto const& ev : traj.events)
    {
        double const c
            = caustic_parameter(book.family, ev.hit_point, ev.velocity_after);
        drift = std::max(drift, std::abs(c - traj.caustic));
    }

    if (!args.csv.empty())
        write_file(args.csv, trajectory_csv(traj));
    if (!args.svg.empty())
    {
        RenderSpec spec;
        spec.layout = args.layout == "overlay" ? Layout::Overlay
                                               : Layout::SideBySide;
        write_file(args.svg, render_svg(book, traj, spec));
    }

    char buf[128];
    std::snprintf(buf, sizeof(buf), "caustic %.17g\n", traj.caustic);
    std::cout << buf;
    std::snprintf(buf, sizeof(buf), "drift %.3e\n", drift);
    std::cout << buf << "events " << traj.events.size() << '\n';

    if (traj.status == TrajectoryStatus::SingularLevelHit)
    {
        std::cerr << "stopped at a singular level after "
                  << traj.events.size() << " events\n";
        return kSingular;
    }
    return kOk;
}

//---------------------------------------------------------------------------//
struct FomenkoArgs
{
    std::string book;
    std::string dot;
};

int run_fomenko(FomenkoArgs const& args)
{
    auto const book = book_from_json(read_file(args.book));
    if (!check_book(book))
        return kInvalid;
    auto const graph = build_fomenko_graph(book);
    if (!args.dot.empty())
        write_file(args.dot, to_dot(graph));
    std::cout << census(graph) << '\n';

    bool unknown = false;
    for (auto const& a : graph.atoms)
    {
        if (a.type == AtomType::Unknown)
        {
            std::cerr << "unclassified atom at " << a.lambda << ": "
                      << a.critical_circles << " circles, "
                      << a.separatrix_count << " separatrices\n";
            unknown = true;
        }
    }
    return unknown ? kUnknownAtom : kOk;
}

//---------------------------------------------------------------------------//
struct VerifyArgs
{
    std::string book;
    std::string game;
    int samples = 100;
    std::uint64_t seed = 0;
    int leaf = 0;
    int cycles = 5;
};

// Annulus between E_n and E_1 of the normalized game
LeafId find_start_leaf(BilliardBook const& book, OrderedGame const& game)
{
    for (auto const& l : book.leaves)
    {
        auto const* ann = std::get_if<Annulus>(&l.shape);
        if (ann && same_ellipse(ann->outer, game.betas.front())
            && same_ellipse(ann->inner, game.betas.back()))
        {
            return l.id;
        }
    }
    return 0;
}

int run_verify(VerifyArgs const& args)
{
    auto const book = book_from_json(read_file(args.book));
    auto const raw = game_from_json(read_file(args.game));
    if (!check_book(book))
        return kInvalid;
    auto const v = validate_game(raw);
    if (!v.valid() || !v.normalized)
    {
        for (auto const& viol : v.violations)
            std::cerr << to_string(viol.code) << ": " << viol.detail << '\n';
        if (v.valid())
            std::cerr << "game cannot be normalized\n";
        return kInvalid;
    }
    auto const& game = *v.normalized;
    if (args.samples <= 0)
    {
        std::cerr << "warning: no samples requested; nothing verified\n";
        std::cout << "verified 0 samples\n";
        return kOk;
    }

    LeafId const leaf = args.leaf ? args.leaf : find_start_leaf(book, game);
    if (!leaf)
    {
        std::cerr << "book has no annulus between the first and last game "
                     "ellipses\n";
        return kInvalid;
    }

    // Admissible caustics: inside every game ellipse, or a hyperbola
    auto const& fam = book.family;
    double const top = *std::max_element(game.betas.begin(), game.betas.end());
    double const pad = 1e-3 * (fam.a - top);
    double const w1 = (fam.b - pad) - (top + pad);
    double const w2 = (fam.a - pad) - (fam.b + pad);

    auto const n = game.size();
    int const events = static_cast<int>(n) * args.cycles;
    std::mt19937_64 rng(args.seed);
    for (int s = 0; s < args.samples; ++s)
    {
        double const u = static_cast<double>(rng() >> 11) * 0x1.0p-53
                         * (w1 + w2);
        double const caustic = u < w1 ? top + pad + u : fam.b + pad + (u - w1);
        auto const start = sample_tangent_start(
            book, leaf, caustic, args.seed + s, game.betas.front());
        auto const traj = simulate(book, start, events * 3);
        auto const trace = trace_to_game(traj);

        std::size_t const want = static_cast<std::size_t>(events);
        for (std::size_t k = 0; k < want; ++k)
        {
            double const beta = game.betas[k % n];
            EventSide const side = game.signature[k % n] == 1
                                       ? EventSide::FromInside
                                       : EventSide::FromOutside;
            if (k >= trace.size() || !same_ellipse(trace[k].ellipse, beta)
                || trace[k].side != side)
            {
                std::cerr << "sample " << s << " (caustic " << caustic
                          << "): first divergent event " << k
                          << ": expected ellipse " << beta << ' '
                          << to_string(side);
                if (k < trace.size())
                {
                    std::cerr << ", got ellipse " << trace[k].ellipse << ' '
                              << to_string(trace[k].side);
                }
                else
                {
                    std::cerr << ", trace ended";
                }
                std::cerr << '\n';
                std::cout << "mismatch\n";
                return kMismatch;
            }
        }
    }
    std::cout << "verified " << args.samples << " samples\n";
    return kOk;
}
}  // namespace

//---------------------------------------------------------------------------//
int main(int argc, char** argv)
{
    CLI::App app{"Billiards on confocal billiard books"};
    app.require_subcommand(1);

    CompileArgs ca;
    auto* compile = app.add_subcommand("compile", "Build a book realizing a game");
    compile->add_option("game", ca.game, "Game JSON file")->required();
    compile->add_flag("--general", ca.general, "Allow repeated ellipses");
    compile->add_option("--out", ca.out, "Output book JSON");

    SimulateArgs sa;
    auto* sim = app.add_subcommand("simulate", "Simulate a trajectory");
    sim->add_option("book", sa.book, "Book JSON file")->required();
    sim->add_option("--leaf", sa.leaf, "Starting leaf id");
    auto* pos = sim->add_option("--pos", sa.pos, "Start position x,y");
    auto* vel = sim->add_option("--vel", sa.vel, "Start direction vx,vy");
    auto* caus = sim->add_option("--caustic", sa.caustic, "Sample a start tangent to this caustic");
    sim->add_option("--seed", sa.seed, "Random seed (default 0)");
    sim->add_option("--events", sa.events, "Number of events")->check(CLI::NonNegativeNumber);
    sim->add_option("--csv", sa.csv, "Trajectory CSV output");
    sim->add_option("--svg", sa.svg, "SVG output");
    sim->add_option("--layout", sa.layout, "side or overlay")
        ->check(CLI::IsMember({"side", "overlay"}));
    caus->excludes(pos)->excludes(vel);

    FomenkoArgs fa;
    auto* fom = app.add_subcommand("fomenko", "Fomenko graph of a book");
    fom->add_option("book", fa.book, "Book JSON file")->required();
    fom->add_option("--dot", fa.dot, "Graphviz output");

    VerifyArgs va;
    auto* ver = app.add_subcommand("verify", "Check that a book realizes a game");
    ver->add_option("book", va.book, "Book JSON file")->required();
    ver->add_option("game", va.game, "Game JSON file")->required();
    ver->add_option("--samples", va.samples, "Number of random starts");
    ver->add_option("--seed", va.seed, "Random seed (default 0)");
    ver->add_option("--leaf", va.leaf, "Starting leaf id");
    ver->add_option("--cycles", va.cycles, "Game periods checked per sample")
        ->check(CLI::PositiveNumber);

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::CallForHelp const& e)
    {
        return app.exit(e);
    }
    catch (CLI::ParseError const& e)
    {
        app.exit(e);
        return kInvalid;
    }

    try
    {
        if (*compile)
            return run_compile(ca);
        if (*sim)
            return run_simulate(sa);
        if (*fom)
            return run_fomenko(fa);
        if (*ver)
            return run_verify(va);
    }
    catch (IoError const& e)
    {
        std::cerr << e.what() << '\n';
        return kIo;
    }
    catch (Error const& e)
    {
        std::cerr << e.what() << '\n';
        return kInvalid;
    }
    catch (std::exception const& e)
    {
        std::cerr << e.what() << '\n';
        return kInvalid;
    }
    return kOk;
}
