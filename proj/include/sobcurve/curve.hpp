#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace sobcurve {

using cplx = std::complex<double>;

enum class CurveKind { segment, circle_arc, full_circle, polyline };

std::string to_string(CurveKind kind);

// Parameter interval [t0, t1] in arc length.
struct Arc {
    double t0 = 0.0;
    double t1 = 0.0;
    bool operator==(const Arc&) const = default;
};

enum class Side { left, right };

// A point together with the side it is approached from. t^- is (t, left).
struct HalfPoint {
    double t = 0.0;
    Side side = Side::right;
};

class CurveError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Rectifiable Jordan arc or closed curve parametrised by arc length on [0, L].
class Curve {
public:
    static Curve segment(cplx a, cplx b);
    static Curve circle_arc(cplx center, double radius, double theta0, double theta1);
    static Curve full_circle(cplx center, double radius);
    // A closed polyline repeats its first vertex at the end.
    static Curve polyline(std::vector<cplx> vertices);

    CurveKind kind() const { return kind_; }
    bool closed() const { return closed_; }
    double length() const { return length_; }

    cplx point_at(double t) const;
    cplx tangent_at(double t) const;
    // Length of the arc from t0 to t1 in the direction of travel; wraps on closed curves.
    double arc_length(const Arc& a) const;

    // Same trace with opposite orientation. Open curves only.
    Curve reversed() const;

    // Center and half-diameter of the bounding box.
    cplx bbox_center() const;
    double bbox_radius() const;

    // raw parameters, used by serialization
    cplx a() const { return a_; }
    cplx b() const { return b_; }
    cplx center() const { return a_; }
    double radius() const { return radius_; }
    double theta0() const { return theta0_; }
    double theta1() const { return theta1_; }
    const std::vector<cplx>& vertices() const { return vertices_; }
    const std::vector<double>& vertex_params() const { return cumulative_; }

    bool operator==(const Curve& o) const;

private:
    Curve() = default;
    double clamp_param(double t) const;

    CurveKind kind_ = CurveKind::segment;
    bool closed_ = false;
    double length_ = 0.0;
    cplx a_{}, b_{};  // segment ends, or circle center in a_
    double radius_ = 0.0, theta0_ = 0.0, theta1_ = 0.0;
    std::vector<cplx> vertices_;
    std::vector<double> cumulative_;
};

}  // namespace sobcurve
