//---------------------------------------------------------------------------//
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file bbook/geometry.hh
//! Geometry of the confocal family x^2/(a-l) + y^2/(b-l) = 1.
//---------------------------------------------------------------------------//
#pragma once

#include <optional>

namespace bbook
{
//---------------------------------------------------------------------------//
// Tolerances shared by the geometry kernel and the event simulator
//---------------------------------------------------------------------------//

//! Smallest admissible forward ray parameter (escapes the current boundary)
inline constexpr double kMinRayParam = 1e-10;
//! On-conic residual tolerance, multiplied by the family's a
inline constexpr double kOnConicTol = 1e-9;
//! Tangency threshold on the normalized discriminant, multiplied by a
inline constexpr double kTangencyTol = 1e-9;
//! Maximum unit-vector norm deviation after any emitting operation
inline constexpr double kUnitNormTol = 1e-12;

//---------------------------------------------------------------------------//
/*!
 * The two squared semi-axes fixing the confocal family, a > b > 0.
 */
struct ConfocalFamily
{
    double a{9};
    double b{4};

    //! Construct, throwing InvalidFamily unless a > b > 0
    static ConfocalFamily checked(double a, double b);

    //! Whether a > b > 0
    bool valid() const { return a > b && b > 0; }

    friend bool operator==(ConfocalFamily const&, ConfocalFamily const&)
        = default;
};

enum class ConicKind
{
    Ellipse,
    Hyperbola,
    DegenerateFocalSegment,
    DegenerateMinorAxis,
};

struct ConicParam
{
    double lambda{0};
    ConicKind kind{ConicKind::Ellipse};
};

struct PlanePoint
{
    double x{0};
    double y{0};

    friend bool operator==(PlanePoint const&, PlanePoint const&) = default;
};

//---------------------------------------------------------------------------//
/*!
 * Direction of motion with |v| = 1.
 *
 * Only constructible through \c normalized so every instance satisfies the
 * unit-norm invariant.
 */
class UnitVector
{
  public:
    UnitVector() = default;

    //! Normalize an arbitrary nonzero direction
    static UnitVector normalized(double x, double y);

    double x() const { return x_; }
    double y() const { return y_; }
    double norm() const;

    UnitVector operator-() const { return UnitVector{-x_, -y_}; }

    friend bool operator==(UnitVector const&, UnitVector const&) = default;

  private:
    UnitVector(double x, double y) : x_(x), y_(y) {}

    double x_{1};
    double y_{0};
};

//! Forward hit of a ray on a conic
struct RayHit
{
    PlanePoint point;
    double t{0};
};

//---------------------------------------------------------------------------//
// Conic queries
//---------------------------------------------------------------------------//

// Classify a member of the family (throws EmptyConic for lambda > a)
ConicParam classify_conic(ConfocalFamily const& family, double lambda);

// Confocal parameter of the conic tangent to the line through p along v
double caustic_parameter(ConfocalFamily const& family,
                         PlanePoint p,
                         UnitVector v);

// Discriminant of the line/conic quadratic in the ray parameter
double tangency_oracle(ConfocalFamily const& family,
                       PlanePoint p,
                       UnitVector v,
                       double lambda);

// Mirror v across the tangent of the ellipse C_lambda at p
UnitVector reflect(ConfocalFamily const& family,
                   double lambda_boundary,
                   PlanePoint p,
                   UnitVector v);

// Nearest forward intersection with the ellipse C_lambda beyond t_min
std::optional<RayHit> next_intersection(ConfocalFamily const& family,
                                        PlanePoint p,
                                        UnitVector v,
                                        double lambda_target,
                                        double t_min = kMinRayParam);

//---------------------------------------------------------------------------//
// Helpers used by the simulator
//---------------------------------------------------------------------------//

// x^2/(a-l) + y^2/(b-l) - 1
double conic_residual(ConfocalFamily const& family,
                      double lambda,
                      PlanePoint p);

// Whether p satisfies the on-conic tolerance for C_lambda
bool on_conic(ConfocalFamily const& family, double lambda, PlanePoint p);

// Radially rescale p onto the ellipse C_lambda
PlanePoint project_to_ellipse(ConfocalFamily const& family,
                              double lambda,
                              PlanePoint p);

// Outward unit normal of the ellipse C_lambda at p
UnitVector outward_normal(ConfocalFamily const& family,
                          double lambda,
                          PlanePoint p);

/*!
 * Line/ellipse quadratic in the ray parameter, with coefficients cleared of
 * the (a-l)(b-l) denominators: qa t^2 + 2 qb t + qc = 0.
 */
struct RayQuadratic
{
    double qa{0};
    double qb{0};
    double qc{0};

    double discriminant() const { return qb * qb - qa * qc; }
};

RayQuadratic ray_quadratic(ConfocalFamily const& family,
                           double lambda,
                           PlanePoint p,
                           UnitVector v);

// Point at ray parameter t
inline PlanePoint advance(PlanePoint p, UnitVector v, double t)
{
    return {p.x + t * v.x(), p.y + t * v.y()};
}

// z-component of p x v; its sign is the winding direction about the origin
inline double cross(PlanePoint p, UnitVector v)
{
    return p.x * v.y() - p.y * v.x();
}

//---------------------------------------------------------------------------//
}  // namespace bbook
