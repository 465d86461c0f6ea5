#ifndef EDA_PRIMITIVES_HPP
#define EDA_PRIMITIVES_HPP

#include <variant>
#include <vector>

#include "eda/spatialmath.hpp"

namespace eda {

// Position/velocity sample of a kinematic primitive or their sum.
struct PointVel {
    Vec3 x = Vec3::Zero();
    Vec3 xd = Vec3::Zero();
};

// Quintic minimum-jerk scalar basis: f = 0 before t0, f = 1 after t0 + T,
// fdot >= 0 everywhere, peak fdot = 1.875/T at the midpoint.
// Throws std::invalid_argument if T <= 0.
void minJerkBasis(double t, double t0, double T, double& f, double& fdot);

enum class Basis { MinJerk };

// Goal-directed discrete movement with finite-support velocity profile.
// Contributes base + displacement * f(t); follow-up submovements that are
// superimposed on a running trajectory use base = 0.
struct Submovement {
    double start = 0.0;
    double duration = 1.0;
    Vec3 displacement = Vec3::Zero();
    Vec3 base = Vec3::Zero();
    Basis basis = Basis::MinJerk;

    PointVel eval(double t) const;
};

enum class Plane { XY, YZ, XZ };

// Circular rhythmic primitive on an axis-aligned plane:
// e.g. plane YZ contributes centerOffset + r [0, cos(w t + phi), sin(w t + phi)].
struct Oscillation {
    double radius = 0.0;
    double omega = 1.0;
    double phase = 0.0;
    Plane plane = Plane::YZ;
    Vec3 centerOffset = Vec3::Zero();

    PointVel eval(double t) const;

    // Offset that makes the oscillation start at zero contribution when
    // phase = 0: -r along the first axis of the plane.
    static Vec3 zeroStartOffset(double radius, Plane plane);
};

// Uniformly sampled trajectory (a DMP rollout) with cubic Hermite
// interpolation between samples; C1 at the knots since the stored
// velocities are used as tangents. Clamps to the end samples outside
// [0, duration] with zero velocity.
class SampledPath {
public:
    SampledPath(double dt, std::vector<Vec3> x, std::vector<Vec3> xd);

    PointVel eval(double t) const;
    double duration() const { return dt_ * static_cast<double>(x_.size() - 1); }
    double dt() const { return dt_; }
    size_t samples() const { return x_.size(); }

private:
    double dt_;
    std::vector<Vec3> x_;
    std::vector<Vec3> xd_;
};

// Plays a sampled path backwards: rollout(T - t) for t < T, then holds
// rollout(0). Velocity is negated-and-time-mirrored, zero after T.
class TimeReversed {
public:
    TimeReversed(SampledPath path, double T);

    PointVel eval(double t) const;
    double duration() const { return T_; }
    const SampledPath& path() const { return path_; }

private:
    SampledPath path_;
    double T_;
};

using Term = std::variant<Submovement, Oscillation, SampledPath, TimeReversed>;

PointVel evalTerm(const Term& term, double t);

// Ordered sum of kinematic primitives (the virtual trajectory x0(t)).
// Adding a term never mutates existing terms; evaluation is the plain
// componentwise sum of the term evaluations.
class VirtualTrajectory {
public:
    void add(Term term) { terms_.push_back(std::move(term)); }

    size_t size() const { return terms_.size(); }
    const Term& term(size_t i) const { return terms_.at(i); }

    // Throws std::invalid_argument if the trajectory has no terms.
    PointVel eval(double t) const;
    PointVel evalTerm(size_t i, double t) const;

private:
    std::vector<Term> terms_;
};

}  // namespace eda

#endif
