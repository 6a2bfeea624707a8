#include "sobcurve/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace sobcurve {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cross(cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); }

// Closed-segment intersection test with a relative tolerance.
bool segments_meet(cplx p1, cplx p2, cplx q1, cplx q2, double eps) {
    auto orient = [&](cplx a, cplx b, cplx c) {
        double v = cross(b - a, c - a);
        return std::abs(v) <= eps ? 0 : (v > 0 ? 1 : -1);
    };
    auto on_seg = [&](cplx a, cplx b, cplx c) {
        return std::min(a.real(), b.real()) - eps <= c.real() &&
               c.real() <= std::max(a.real(), b.real()) + eps &&
               std::min(a.imag(), b.imag()) - eps <= c.imag() &&
               c.imag() <= std::max(a.imag(), b.imag()) + eps;
    };
    int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
    int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
    if (o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0 && (o1 != 0 || o2 != 0 || o3 != 0 || o4 != 0))
        return true;
    if (o1 == 0 && on_seg(p1, p2, q1)) return true;
    if (o2 == 0 && on_seg(p1, p2, q2)) return true;
    if (o3 == 0 && on_seg(q1, q2, p1)) return true;
    if (o4 == 0 && on_seg(q1, q2, p2)) return true;
    return false;
}

}  // namespace

std::string to_string(CurveKind kind) {
    switch (kind) {
        case CurveKind::segment: return "segment";
        case CurveKind::circle_arc: return "circle_arc";
        case CurveKind::full_circle: return "full_circle";
        case CurveKind::polyline: return "polyline";
    }
    return "?";
}

Curve Curve::segment(cplx a, cplx b) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !std::isfinite(b.real()) ||
        !std::isfinite(b.imag()))
        throw CurveError("segment: non-finite endpoint");
    if (std::abs(b - a) == 0.0) throw CurveError("segment: degenerate (a == b)");
    Curve c;
    c.kind_ = CurveKind::segment;
    c.a_ = a;
    c.b_ = b;
    c.length_ = std::abs(b - a);
    return c;
}

Curve Curve::circle_arc(cplx center, double radius, double theta0, double theta1) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw CurveError("circle_arc: radius must be positive");
    double sweep = std::abs(theta1 - theta0);
    if (!(sweep > 0.0)) throw CurveError("circle_arc: zero sweep");
    if (sweep >= kTwoPi) throw CurveError("circle_arc: sweep of 2*pi or more is not a Jordan arc");
    Curve c;
    c.kind_ = CurveKind::circle_arc;
    c.a_ = center;
    c.radius_ = radius;
    c.theta0_ = theta0;
    c.theta1_ = theta1;
    c.length_ = radius * sweep;
    return c;
}

Curve Curve::full_circle(cplx center, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw CurveError("full_circle: radius must be positive");
    Curve c;
    c.kind_ = CurveKind::full_circle;
    c.closed_ = true;
    c.a_ = center;
    c.radius_ = radius;
    c.length_ = kTwoPi * radius;
    return c;
}

Curve Curve::polyline(std::vector<cplx> v) {
    if (v.size() < 2) throw CurveError("polyline: need at least two vertices");
    bool closed = v.size() >= 4 && v.front() == v.back();
    size_t nseg = v.size() - 1;
    double scale = 0.0;
    for (auto& z : v) scale = std::max(scale, std::abs(z));
    double eps = 1e-12 * std::max(1.0, scale * scale);
    for (size_t i = 0; i < nseg; ++i)
        if (std::abs(v[i + 1] - v[i]) == 0.0) {
            std::ostringstream os;
            os << "polyline: zero-length segment " << i;
            throw CurveError(os.str());
        }
    for (size_t i = 0; i < nseg; ++i) {
        for (size_t j = i + 1; j < nseg; ++j) {
            bool adjacent = (j == i + 1) || (closed && i == 0 && j == nseg - 1);
            if (adjacent) {
                // adjacent segments may share only their common vertex
                cplx shared = (j == i + 1) ? v[i + 1] : v[0];
                cplx u = (j == i + 1) ? v[i] - shared : v[1] - shared;
                cplx w = (j == i + 1) ? v[j + 1] - shared : v[nseg - 1] - shared;
                if (std::abs(cross(u, w)) <= eps && (u.real() * w.real() + u.imag() * w.imag()) > 0) {
                    std::ostringstream os;
                    os << "polyline: segments " << i << " and " << j << " overlap";
                    throw CurveError(os.str());
                }
                continue;
            }
            if (segments_meet(v[i], v[i + 1], v[j], v[j + 1], eps)) {
                std::ostringstream os;
                os << "polyline: segments " << i << " and " << j << " intersect";
                throw CurveError(os.str());
            }
        }
    }
    if (closed) {
        double area = 0.0;
        for (size_t i = 0; i < nseg; ++i) area += cross(v[i], v[i + 1]);
        if (area <= 0.0) throw CurveError("polyline: closed polyline must be positively oriented");
    }
    Curve c;
    c.kind_ = CurveKind::polyline;
    c.closed_ = closed;
    c.vertices_ = std::move(v);
    c.cumulative_.assign(1, 0.0);
    for (size_t i = 0; i < nseg; ++i)
        c.cumulative_.push_back(c.cumulative_.back() + std::abs(c.vertices_[i + 1] - c.vertices_[i]));
    c.length_ = c.cumulative_.back();
    return c;
}

double Curve::clamp_param(double t) const {
    double slack = 1e-12 * std::max(1.0, length_);
    if (!(t >= -slack && t <= length_ + slack)) {
        std::ostringstream os;
        os << "parameter " << t << " outside [0, " << length_ << "]";
        throw std::out_of_range(os.str());
    }
    return std::clamp(t, 0.0, length_);
}

cplx Curve::point_at(double t) const {
    t = clamp_param(t);
    switch (kind_) {
        case CurveKind::segment: return a_ + (b_ - a_) * (t / length_);
        case CurveKind::circle_arc: {
            double dir = theta1_ > theta0_ ? 1.0 : -1.0;
            return a_ + std::polar(radius_, theta0_ + dir * t / radius_);
        }
        case CurveKind::full_circle: return a_ + std::polar(radius_, t / radius_);
        case CurveKind::polyline: {
            auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), t);
            size_t i = std::min<size_t>(std::max<long>(it - cumulative_.begin() - 1, 0), vertices_.size() - 2);
            double seg = cumulative_[i + 1] - cumulative_[i];
            return vertices_[i] + (vertices_[i + 1] - vertices_[i]) * ((t - cumulative_[i]) / seg);
        }
    }
    return {};
}

cplx Curve::tangent_at(double t) const {
    t = clamp_param(t);
    switch (kind_) {
        case CurveKind::segment: return (b_ - a_) / length_;
        case CurveKind::circle_arc: {
            double dir = theta1_ > theta0_ ? 1.0 : -1.0;
            return cplx(0, dir) * std::polar(1.0, theta0_ + dir * t / radius_);
        }
        case CurveKind::full_circle: return cplx(0, 1) * std::polar(1.0, t / radius_);
        case CurveKind::polyline: {
            auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), t);
            size_t i = std::min<size_t>(std::max<long>(it - cumulative_.begin() - 1, 0), vertices_.size() - 2);
            cplx d = vertices_[i + 1] - vertices_[i];
            return d / std::abs(d);
        }
    }
    return {};
}

double Curve::arc_length(const Arc& a) const {
    double t0 = clamp_param(a.t0), t1 = clamp_param(a.t1);
    if (!closed_) {
        if (t1 < t0) throw std::out_of_range("arc_length: t1 < t0 on an open curve");
        return t1 - t0;
    }
    double d = std::fmod(t1 - t0, length_);
    if (d < 0) d += length_;
    return d;
}

Curve Curve::reversed() const {
    if (closed_) throw CurveError("reversed: closed curves keep positive orientation");
    switch (kind_) {
        case CurveKind::segment: return segment(b_, a_);
        case CurveKind::circle_arc: return circle_arc(a_, radius_, theta1_, theta0_);
        case CurveKind::polyline: {
            std::vector<cplx> v(vertices_.rbegin(), vertices_.rend());
            return polyline(v);
        }
        default: break;
    }
    throw CurveError("reversed: unsupported curve");
}

cplx Curve::bbox_center() const {
    switch (kind_) {
        case CurveKind::segment: return 0.5 * (a_ + b_);
        case CurveKind::full_circle: return a_;
        default: break;
    }
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    const int n = 256;
    for (int i = 0; i <= n; ++i) {
        cplx z = point_at(length_ * i / n);
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag());
        ymax = std::max(ymax, z.imag());
    }
    for (auto& z : vertices_) {
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag());
        ymax = std::max(ymax, z.imag());
    }
    return {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)};
}

double Curve::bbox_radius() const {
    if (kind_ == CurveKind::segment) return 0.5 * length_;
    if (kind_ == CurveKind::full_circle) return radius_;
    cplx c = bbox_center();
    double r = 0.0;
    const int n = 256;
    for (int i = 0; i <= n; ++i) r = std::max(r, std::abs(point_at(length_ * i / n) - c));
    return r;
}

bool Curve::operator==(const Curve& o) const {
    return kind_ == o.kind_ && closed_ == o.closed_ && a_ == o.a_ && b_ == o.b_ && radius_ == o.radius_ &&
           theta0_ == o.theta0_ && theta1_ == o.theta1_ && vertices_ == o.vertices_;
}

}  // namespace sobcurve
