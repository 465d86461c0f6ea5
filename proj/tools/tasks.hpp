#ifndef EDA_TOOLS_TASKS_HPP
#define EDA_TOOLS_TASKS_HPP

#include <optional>
#include <string>

#include "eda/dmp.hpp"
#include "eda/sim.hpp"

namespace eda::tools {

// Parameters shared by the three demo tasks. Gains Bq, Kr, Br are
// identical across tasks; translational gains are per task.
struct CommonParams {
    std::string robotPath;
    double dt = 1e-3;
    int recordEvery = 3;
    Integrator integrator = Integrator::SemiImplicitEuler;
    double preRollDuration = 3.0;
    double bq = 1.0;
    double kr = 50.0;
    double br = 5.0;
};

struct TaskResult {
    Trace trace;
    VirtualTrajectory vt;
    Mat3 R0 = Mat3::Identity();
    JointState start;       // state at t = 0, after the pre-roll
    JointState finalState;  // state at the end of the run
};

// Two superimposed submovements: p1 -> p2 starting at ti, then a
// follow-up displacement p3 - p2 starting at tg, without modifying the
// first submovement.
struct SequenceParams {
    CommonParams common;
    Vec3 p1{0.6735, 0.1396, 0.2048};
    Vec3 p2{0.6735, 0.3396, 0.4048};
    Vec3 p3{0.6735, 0.4396, 0.3048};
    double T1 = 2.0;
    double T2 = 2.0;
    double ti = 0.5;
    double tg = 1.5;
    double kp = 800.0;
    double bp = 80.0;
    double duration = 10.0;
    bool includeSecondSubmovement = true;
};

TaskResult runSequenceTask(const SequenceParams& params);

// One submovement plus a circular oscillation on the YZ plane.
struct CombineParams {
    CommonParams common;
    Vec3 p1{0.5735, 0.0, 0.5048};
    Vec3 p2{0.5735, 0.35, 0.5048};
    double T1 = 1.5;
    double ti = 0.5;
    double radius = 0.03;
    double omega = 3.0 * M_PI;
    double phase = 0.0;
    double kp = 800.0;
    double bp = 80.0;
    double duration = 10.0;
};

TaskResult runCombineTask(const CombineParams& params);

// Imitation-learned drawing followed by a time-reversed erase pass with a
// superimposed XY oscillation, against a penalty contact plane.
struct DrawEraseParams {
    CommonParams common;
    std::string demoPath;
    int nBasis = 100;
    double alphaS = 4.605170185988091;
    double alphaZ = 1000.0;
    double betaZ = 250.0;
    double tau = 7.0;
    double window = 0.165;
    double drawKp = 400.0;
    double drawBp = 40.0;
    double eraseKp = 800.0;
    double eraseBp = 80.0;
    double radius = 0.03;
    double omega = 2.0 * M_PI;
    // The letter path is placed at drawZ; the table top sits 1 cm below it
    // and the pen is commanded penOffset below the table top.
    double drawZ = 0.21;
    double penOffset = 5e-3;
    std::optional<double> planeZ;  // default drawZ - 0.01
    double planeStiffness = 1e4;
    double planeDamping = 100.0;
    double planeViscosity = 10.0;
    double settle = 0.5;  // extra seconds per phase after the path ends
};

struct DrawEraseResult {
    Trace drawTrace;
    Trace eraseTrace;
    double drawDuration = 0.0;
    double pathDuration = 0.0;
    double planeHeight = 0.0;
    double rolloutRmse = 0.0;  // vs the preprocessed demonstration
    double demoBboxDiag = 0.0;
    MatrixXd weights;
    Mat3 R0 = Mat3::Identity();

    // Draw and erase phases on one clock, boundary row deduplicated.
    Trace combined() const;
};

DrawEraseResult runDrawEraseTask(const DrawEraseParams& params);

// Regulation phase that brings the tool tip to `target` before t = 0.
// Returns the settled state; throws std::runtime_error if the tip ends
// further than 5 cm from the target.
JointState preRoll(const RobotDescription& model, const ImpedanceGains& gains,
                   const Vec3& target, const Mat3& R0, const VectorXd& qSeed,
                   double duration, const ContactPlane* plane, double dt,
                   Integrator integrator);

}  // namespace eda::tools

#endif
