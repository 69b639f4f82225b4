//---------------------------------------------------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file geometry.cc
//---------------------------------------------------------------------------//
#include "bbook/geometry.hh"

#include <cmath>
#include <sstream>

#include "bbook/error.hh"

namespace bbook
{
namespace
{
//! Absolute tolerance for matching lambda to the degenerate values b, a
constexpr double kParamTol = 1e-12;

std::string describe(double lambda, PlanePoint p)
{
    std::ostringstream os;
    os.precision(17);
    os << "lambda=" << lambda << " p=(" << p.x << ',' << p.y << ')';
    return os.str();
}

void require_ellipse(ConfocalFamily const& family, double lambda)
{
    if (!(lambda < family.b))
    {
        std::ostringstream os;
        os << "lambda=" << lambda << " is not an ellipse (b=" << family.b
           << ')';
        throw Error(ErrorCode::DegenerateConic, os.str());
    }
}
}  // namespace

//---------------------------------------------------------------------------//
std::string_view to_string(ErrorCode code)
{
    switch (code)
    {
        case ErrorCode::InvalidFamily: return "InvalidFamily";
        case ErrorCode::EmptyConic: return "EmptyConic";
        case ErrorCode::DegenerateConic: return "DegenerateConic";
        case ErrorCode::PointNotOnConic: return "PointNotOnConic";
        case ErrorCode::NotABoundary: return "NotABoundary";
        case ErrorCode::UnknownLeaf: return "UnknownLeaf";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::TangentialHit: return "TangentialHit";
        case ErrorCode::EscapedLeaf: return "EscapedLeaf";
        case ErrorCode::ConsecutiveRepeat: return "ConsecutiveRepeat";
        case ErrorCode::InvalidGame: return "InvalidGame";
        case ErrorCode::RepeatWithOutside: return "RepeatWithOutside";
        case ErrorCode::InadmissibleCaustic: return "InadmissibleCaustic";
        case ErrorCode::CriticalLambda: return "CriticalLambda";
        case ErrorCode::NoInnerLeaf: return "NoInnerLeaf";
        case ErrorCode::NotCritical: return "NotCritical";
        case ErrorCode::RenderLimit: return "RenderLimit";
    }
    return "Unknown";
}

//---------------------------------------------------------------------------//
ConfocalFamily ConfocalFamily::checked(double a, double b)
{
    ConfocalFamily result{a, b};
    if (!result.valid())
    {
        std::ostringstream os;
        os << "require a > b > 0, got a=" << a << " b=" << b;
        throw Error(ErrorCode::InvalidFamily, os.str());
    }
    return result;
}

//---------------------------------------------------------------------------//
UnitVector UnitVector::normalized(double x, double y)
{
    double const n = std::hypot(x, y);
    if (!(n > 0) || !std::isfinite(n))
    {
        throw std::invalid_argument("cannot normalize a zero or non-finite "
                                    "direction");
    }
    return UnitVector{x / n, y / n};
}

double UnitVector::norm() const
{
    return std::hypot(x_, y_);
}

//---------------------------------------------------------------------------//
ConicParam classify_conic(ConfocalFamily const& family, double lambda)
{
    if (lambda > family.a + kParamTol)
    {
        std::ostringstream os;
        os << "lambda=" << lambda << " exceeds a=" << family.a;
        throw Error(ErrorCode::EmptyConic, os.str());
    }
    ConicParam result{lambda, ConicKind::Ellipse};
    if (std::abs(lambda - family.b) <= kParamTol)
        result.kind = ConicKind::DegenerateFocalSegment;
    else if (std::abs(lambda - family.a) <= kParamTol)
        result.kind = ConicKind::DegenerateMinorAxis;
    else if (lambda > family.b)
        result.kind = ConicKind::Hyperbola;
    return result;
}

//---------------------------------------------------------------------------//
/*!
 * The line through p along v touches C_l iff
 * (a-l) v_y^2 + (b-l) v_x^2 = (p x v)^2, which is linear in l.
 */
double caustic_parameter(ConfocalFamily const& family,
                         PlanePoint p,
                         UnitVector v)
{
    double const c = cross(p, v);
    return family.a * v.y() * v.y() + family.b * v.x() * v.x() - c * c;
}

//---------------------------------------------------------------------------//
RayQuadratic ray_quadratic(ConfocalFamily const& family,
                           double lambda,
                           PlanePoint p,
                           UnitVector v)
{
    double const sa = family.a - lambda;
    double const sb = family.b - lambda;
    RayQuadratic q;
    q.qa = sb * v.x() * v.x() + sa * v.y() * v.y();
    q.qb = sb * p.x * v.x() + sa * p.y * v.y();
    q.qc = sb * p.x * p.x + sa * p.y * p.y - sa * sb;
    return q;
}

//---------------------------------------------------------------------------//
/*!
 * Substitute p + t v into the conic equation and return the (quarter)
 * discriminant of the resulting quadratic in t. Denominators are cleared,
 * which scales the discriminant by a positive factor and keeps its sign.
 */
double tangency_oracle(ConfocalFamily const& family,
                       PlanePoint p,
                       UnitVector v,
                       double lambda)
{
    double const scale = kParamTol * family.a;
    if (std::abs(lambda - family.a) <= scale
        || std::abs(lambda - family.b) <= scale)
    {
        throw Error(ErrorCode::DegenerateConic, describe(lambda, p));
    }
    return ray_quadratic(family, lambda, p, v).discriminant();
}

//---------------------------------------------------------------------------//
double conic_residual(ConfocalFamily const& family,
                      double lambda,
                      PlanePoint p)
{
    return p.x * p.x / (family.a - lambda) + p.y * p.y / (family.b - lambda)
           - 1;
}

bool on_conic(ConfocalFamily const& family, double lambda, PlanePoint p)
{
    return std::abs(conic_residual(family, lambda, p))
           <= kOnConicTol * family.a;
}

PlanePoint project_to_ellipse(ConfocalFamily const& family,
                              double lambda,
                              PlanePoint p)
{
    double const s = std::sqrt(conic_residual(family, lambda, p) + 1);
    return {p.x / s, p.y / s};
}

UnitVector outward_normal(ConfocalFamily const& family,
                          double lambda,
                          PlanePoint p)
{
    return UnitVector::normalized(p.x / (family.a - lambda),
                                  p.y / (family.b - lambda));
}

//---------------------------------------------------------------------------//
UnitVector reflect(ConfocalFamily const& family,
                   double lambda_boundary,
                   PlanePoint p,
                   UnitVector v)
{
    require_ellipse(family, lambda_boundary);
    if (!on_conic(family, lambda_boundary, p))
    {
        throw Error(ErrorCode::PointNotOnConic, describe(lambda_boundary, p));
    }
    UnitVector const n = outward_normal(family, lambda_boundary, p);
    double const vn = v.x() * n.x() + v.y() * n.y();
    return UnitVector::normalized(v.x() - 2 * vn * n.x(),
                                  v.y() - 2 * vn * n.y());
}

//---------------------------------------------------------------------------//
/*!
 * Roots are taken in the cancellation-free form q/qa and qc/q with
 * q = -(qb + sign(qb) sqrt(disc)), so a grazing or near-zero root keeps
 * full relative precision.
 */
std::optional<RayHit> next_intersection(ConfocalFamily const& family,
                                        PlanePoint p,
                                        UnitVector v,
                                        double lambda_target,
                                        double t_min)
{
    require_ellipse(family, lambda_target);
    RayQuadratic const q = ray_quadratic(family, lambda_target, p, v);
    double const disc = q.discriminant();
    if (disc < 0 || q.qa <= 0)
        return std::nullopt;

    double const root = -(q.qb + std::copysign(std::sqrt(disc), q.qb));
    double t1 = root / q.qa;
    double t2 = root != 0 ? q.qc / root : t1;
    if (t1 > t2)
        std::swap(t1, t2);

    double t;
    if (t1 > t_min)
        t = t1;
    else if (t2 > t_min)
        t = t2;
    else
        return std::nullopt;
    return RayHit{advance(p, v, t), t};
}

//---------------------------------------------------------------------------//
}  // namespace bbook
