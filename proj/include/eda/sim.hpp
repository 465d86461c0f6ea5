#ifndef EDA_SIM_HPP
#define EDA_SIM_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eda/impedance.hpp"
#include "eda/primitives.hpp"
#include "eda/robotmodel.hpp"

namespace eda {

enum class Integrator { SemiImplicitEuler, Rk4 };

struct SimConfig {
    double dt = 1e-3;
    double duration = 1.0;
    int recordEvery = 3;  // 3 ms recording interval at the default dt
    Integrator integrator = Integrator::SemiImplicitEuler;
};

// Unilateral spring-damper plane at z = height with viscous tangential
// friction while penetrating. The normal force never pulls down.
struct ContactPlane {
    double height = 0.0;
    double stiffness = 1e4;
    double damping = 100.0;
    double tangentialViscosity = 10.0;
};

// Force on the tool tip. Zero at or above the plane.
Vec3 contactForce(const ContactPlane& plane, const Vec3& tipP, const Vec3& tipV);

// One forward-dynamics step: solves M(q) qdd = tau + Jp' f_contact - bias
// and advances per the integrator (semi-implicit: qd+ = qd + dt qdd,
// q+ = q + dt qd+). Throws std::runtime_error on non-finite state.
JointState simStep(const RobotDescription& model, const JointState& state,
                   const VectorXd& tau, const ContactPlane* plane, double dt,
                   Integrator integrator = Integrator::SemiImplicitEuler);

// Time-indexed record of the simulated run, one entry per recorded step.
struct Trace {
    std::vector<double> t;
    std::vector<VectorXd> q;
    std::vector<VectorXd> qd;
    std::vector<Vec3> p;
    std::vector<Vec3> logR;
    std::vector<Vec3> x0;
    std::vector<Vec3> x0dot;
    std::vector<VectorXd> tau;
    std::vector<double> fn;

    size_t rows() const { return t.size(); }
    void append(const Trace& other);

    // CSV: t,q1..qn,qd1..qdn,px,py,pz,logRx,logRy,logRz,x0x,x0y,x0z,tau1..taun,fn
    // Numbers are written with enough digits to round-trip exactly.
    void writeCsv(std::ostream& out) const;
    void writeCsv(const std::string& path) const;
    static Trace readCsv(const std::string& path);
};

// Runs the impedance controller against the simulated plant: at every step
// evaluates the virtual trajectory at t - tStart, assembles the torque,
// steps the plant, and records every cfg.recordEvery steps. Recorded times
// start at tStart, so concatenated phases keep a common clock.
Trace runClosedLoop(const RobotDescription& model, const ImpedanceGains& gains,
                    const VirtualTrajectory& vt, const Mat3& R0,
                    const ContactPlane* plane, const SimConfig& cfg,
                    const VectorXd& qInit, const VectorXd& qdInit,
                    double tStart = 0.0);

// Final state of a closed-loop run (the Trace may not include the last
// step when duration/dt is not a multiple of recordEvery).
struct ClosedLoopResult {
    Trace trace;
    JointState finalState;
};

ClosedLoopResult runClosedLoopFull(const RobotDescription& model,
                                   const ImpedanceGains& gains,
                                   const VirtualTrajectory& vt, const Mat3& R0,
                                   const ContactPlane* plane, const SimConfig& cfg,
                                   const VectorXd& qInit, const VectorXd& qdInit,
                                   double tStart = 0.0);

}  // namespace eda

#endif
