#include "eda/primitives.hpp"

#include <cmath>
#include <stdexcept>

namespace eda {

void minJerkBasis(double t, double t0, double T, double& f, double& fdot)
{
    if (!(T > 0.0)) {
        throw std::invalid_argument("minJerkBasis: duration must be > 0");
    }
    if (t < t0) {
        f = 0.0;
        fdot = 0.0;
        return;
    }
    if (t >= t0 + T) {
        f = 1.0;
        fdot = 0.0;
        return;
    }
    const double u = (t - t0) / T;
    f = u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
    fdot = 30.0 * u * u * (1.0 - u) * (1.0 - u) / T;
}

PointVel Submovement::eval(double t) const
{
    double f, fdot;
    minJerkBasis(t, start, duration, f, fdot);
    PointVel out;
    out.x = base + displacement * f;
    out.xd = displacement * fdot;
    return out;
}

namespace {
// First/second axis indices of each plane.
void planeAxes(Plane plane, int& a, int& b)
{
    switch (plane) {
        case Plane::XY: a = 0; b = 1; return;
        case Plane::YZ: a = 1; b = 2; return;
        case Plane::XZ: a = 0; b = 2; return;
    }
    throw std::invalid_argument("invalid plane");
}
}  // namespace

PointVel Oscillation::eval(double t) const
{
    int a, b;
    planeAxes(plane, a, b);
    const double arg = omega * t + phase;
    PointVel out;
    out.x = centerOffset;
    out.x[a] += radius * std::cos(arg);
    out.x[b] += radius * std::sin(arg);
    out.xd[a] = -radius * omega * std::sin(arg);
    out.xd[b] = radius * omega * std::cos(arg);
    return out;
}

Vec3 Oscillation::zeroStartOffset(double radius, Plane plane)
{
    int a, b;
    planeAxes(plane, a, b);
    Vec3 offset = Vec3::Zero();
    offset[a] = -radius;
    return offset;
}

SampledPath::SampledPath(double dt, std::vector<Vec3> x, std::vector<Vec3> xd)
    : dt_(dt), x_(std::move(x)), xd_(std::move(xd))
{
    if (!(dt_ > 0.0)) {
        throw std::invalid_argument("SampledPath: dt must be > 0");
    }
    if (x_.size() < 2 || x_.size() != xd_.size()) {
        throw std::invalid_argument("SampledPath: need >= 2 samples with matching velocities");
    }
}

PointVel SampledPath::eval(double t) const
{
    PointVel out;
    if (t <= 0.0) {
        out.x = x_.front();
        return out;
    }
    const double T = duration();
    if (t >= T) {
        out.x = x_.back();
        return out;
    }
    const auto k = static_cast<size_t>(t / dt_);
    const size_t k1 = std::min(k + 1, x_.size() - 1);
    const double u = t / dt_ - static_cast<double>(k);

    // Cubic Hermite with the stored velocities as tangents.
    const double u2 = u * u, u3 = u2 * u;
    const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    const double h10 = u3 - 2.0 * u2 + u;
    const double h01 = -2.0 * u3 + 3.0 * u2;
    const double h11 = u3 - u2;
    out.x = h00 * x_[k] + h10 * dt_ * xd_[k] + h01 * x_[k1] + h11 * dt_ * xd_[k1];

    const double g00 = (6.0 * u2 - 6.0 * u) / dt_;
    const double g10 = 3.0 * u2 - 4.0 * u + 1.0;
    const double g01 = (-6.0 * u2 + 6.0 * u) / dt_;
    const double g11 = 3.0 * u2 - 2.0 * u;
    out.xd = g00 * x_[k] + g10 * xd_[k] + g01 * x_[k1] + g11 * xd_[k1];
    return out;
}

TimeReversed::TimeReversed(SampledPath path, double T) : path_(std::move(path)), T_(T)
{
    if (std::abs(T_ - path_.duration()) > 1e-9 * std::max(1.0, path_.duration())) {
        throw std::invalid_argument("TimeReversed: T does not match the rollout duration");
    }
}

PointVel TimeReversed::eval(double t) const
{
    if (t >= T_) {
        PointVel out;
        out.x = path_.eval(0.0).x;
        return out;
    }
    PointVel fwd = path_.eval(T_ - t);
    fwd.xd = -fwd.xd;
    return fwd;
}

PointVel evalTerm(const Term& term, double t)
{
    return std::visit([t](const auto& impl) { return impl.eval(t); }, term);
}

PointVel VirtualTrajectory::eval(double t) const
{
    if (terms_.empty()) {
        throw std::invalid_argument("VirtualTrajectory: no terms to evaluate");
    }
    PointVel sum;
    for (const Term& term : terms_) {
        const PointVel v = eda::evalTerm(term, t);
        sum.x += v.x;
        sum.xd += v.xd;
    }
    return sum;
}

PointVel VirtualTrajectory::evalTerm(size_t i, double t) const
{
    return eda::evalTerm(terms_.at(i), t);
}

}  // namespace eda
