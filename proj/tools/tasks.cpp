#include "tasks.hpp"

#include <cmath>
#include <stdexcept>

#include "formats.hpp"

namespace eda::tools {

namespace {

// Seed postures for the pre-roll, chosen so the tool tip starts within
// reach of each task's first point (the tip is then regulated onto it).
VectorXd sequenceSeed()
{
    VectorXd q(7);
    q << 0.2, 0.9, 0.0, -1.4, 0.0, 1.0, 0.0;
    return q;
}

VectorXd combineSeed()
{
    VectorXd q(7);
    q << 0.0, 0.7, 0.0, -1.3, 0.0, 0.8, 0.0;
    return q;
}

VectorXd drawSeed()
{
    VectorXd q(7);
    q << 0.0, 0.95, 0.0, -1.1, 0.0, 1.35, 0.0;
    return q;
}

ImpedanceGains taskGains(const RobotDescription& model, const CommonParams& c,
                         double kp, double bp)
{
    ImpedanceGains gains =
        ImpedanceGains::isotropic(model.dof(), c.bq, kp, bp, c.kr, c.br);
    gains.validate();
    return gains;
}

}  // namespace

JointState preRoll(const RobotDescription& model, const ImpedanceGains& gains,
                   const Vec3& target, const Mat3& R0, const VectorXd& qSeed,
                   double duration, const ContactPlane* plane, double dt,
                   Integrator integrator)
{
    VirtualTrajectory hold;
    hold.add(Submovement{0.0, 1.0, Vec3::Zero(), target});

    SimConfig cfg;
    cfg.dt = dt;
    cfg.duration = duration;
    cfg.recordEvery = 1 << 20;  // nothing useful to record here
    cfg.integrator = integrator;

    const auto res = runClosedLoopFull(model, gains, hold, R0, plane, cfg, qSeed,
                                       VectorXd::Zero(model.dof()));
    const Vec3 tip = forwardKinematics(model, res.finalState.q).p;
    if ((tip - target).norm() > 0.05) {
        throw std::runtime_error("pre-roll did not settle near the task start point");
    }
    return res.finalState;
}

TaskResult runSequenceTask(const SequenceParams& params)
{
    const auto model = RobotDescription::fromFile(params.common.robotPath);
    if (model.dof() != 7) {
        throw std::invalid_argument("sequence task expects a 7-DOF robot");
    }
    const ImpedanceGains gains = taskGains(model, params.common, params.kp, params.bp);

    TaskResult result;
    result.R0 = forwardKinematics(model, sequenceSeed()).R;
    result.start = preRoll(model, gains, params.p1, result.R0, sequenceSeed(),
                           params.common.preRollDuration, nullptr, params.common.dt,
                           params.common.integrator);

    result.vt.add(Submovement{params.ti, params.T1, params.p2 - params.p1, params.p1});
    if (params.includeSecondSubmovement) {
        result.vt.add(Submovement{params.tg, params.T2, params.p3 - params.p2, Vec3::Zero()});
    }

    SimConfig cfg;
    cfg.dt = params.common.dt;
    cfg.duration = params.duration;
    cfg.recordEvery = params.common.recordEvery;
    cfg.integrator = params.common.integrator;

    auto run = runClosedLoopFull(model, gains, result.vt, result.R0, nullptr, cfg,
                                 result.start.q, result.start.qd);
    result.trace = std::move(run.trace);
    result.finalState = std::move(run.finalState);
    return result;
}

TaskResult runCombineTask(const CombineParams& params)
{
    const auto model = RobotDescription::fromFile(params.common.robotPath);
    if (model.dof() != 7) {
        throw std::invalid_argument("combine task expects a 7-DOF robot");
    }
    const ImpedanceGains gains = taskGains(model, params.common, params.kp, params.bp);

    TaskResult result;
    result.R0 = forwardKinematics(model, combineSeed()).R;
    result.start = preRoll(model, gains, params.p1, result.R0, combineSeed(),
                           params.common.preRollDuration, nullptr, params.common.dt,
                           params.common.integrator);

    result.vt.add(Submovement{params.ti, params.T1, params.p2 - params.p1, params.p1});
    Oscillation osc;
    osc.radius = params.radius;
    osc.omega = params.omega;
    osc.phase = params.phase;
    osc.plane = Plane::YZ;
    osc.centerOffset = Oscillation::zeroStartOffset(params.radius, Plane::YZ);
    result.vt.add(osc);

    SimConfig cfg;
    cfg.dt = params.common.dt;
    cfg.duration = params.duration;
    cfg.recordEvery = params.common.recordEvery;
    cfg.integrator = params.common.integrator;

    auto run = runClosedLoopFull(model, gains, result.vt, result.R0, nullptr, cfg,
                                 result.start.q, result.start.qd);
    result.trace = std::move(run.trace);
    result.finalState = std::move(run.finalState);
    return result;
}

Trace DrawEraseResult::combined() const
{
    Trace out = drawTrace;
    Trace tail = eraseTrace;
    if (!out.t.empty() && !tail.t.empty() && tail.t.front() == out.t.back()) {
        tail.t.erase(tail.t.begin());
        tail.q.erase(tail.q.begin());
        tail.qd.erase(tail.qd.begin());
        tail.p.erase(tail.p.begin());
        tail.logR.erase(tail.logR.begin());
        tail.x0.erase(tail.x0.begin());
        tail.x0dot.erase(tail.x0dot.begin());
        tail.tau.erase(tail.tau.begin());
        tail.fn.erase(tail.fn.begin());
    }
    out.append(tail);
    return out;
}

DrawEraseResult runDrawEraseTask(const DrawEraseParams& params)
{
    const auto model = RobotDescription::fromFile(params.common.robotPath);
    if (model.dof() != 7) {
        throw std::invalid_argument("drawerase task expects a 7-DOF robot");
    }

    // Imitation learning on the demonstrated 2-D path.
    const DemoData raw = readDemoCsv(params.demoPath);
    const Demonstration demo = preprocessDemo(raw.positions, raw.rate(), params.window);

    DmpConfig cfg;
    cfg.dims = 2;
    cfg.nBasis = params.nBasis;
    cfg.alphaS = params.alphaS;
    cfg.alphaZ = params.alphaZ;
    cfg.betaZ = params.betaZ;
    cfg.tau = params.tau;

    DmpModel dmp(cfg);
    dmp.setWeights(imitationLlsq(demo, cfg));

    const VectorXd xi = demo.pos.row(0).transpose();
    const VectorXd xg = demo.pos.row(demo.samples() - 1).transpose();
    const double pathDuration = raw.duration();
    const DmpRollout rollout = dmp.rollout(xi, xg, params.common.dt, pathDuration);

    DrawEraseResult result;
    result.weights = dmp.weights();
    result.pathDuration = pathDuration;
    result.planeHeight = params.planeZ.value_or(params.drawZ - 0.01);

    // The pen is commanded below the table top by the offset.
    const double penZ = result.planeHeight - params.penOffset;
    std::vector<Vec3> xs(rollout.x.rows());
    std::vector<Vec3> xds(rollout.x.rows());
    for (Eigen::Index j = 0; j < rollout.x.rows(); ++j) {
        xs[j] = Vec3(rollout.x(j, 0), rollout.x(j, 1), penZ);
        xds[j] = Vec3(rollout.xd(j, 0), rollout.xd(j, 1), 0.0);
    }
    const SampledPath path(rollout.dt, xs, xds);

    // Report the imitation error against the preprocessed demonstration.
    double sq = 0.0;
    for (int j = 0; j < demo.samples(); ++j) {
        const Vec3 v = path.eval(demo.times[j]).x;
        const double ex = v.x() - demo.pos(j, 0);
        const double ey = v.y() - demo.pos(j, 1);
        sq += ex * ex + ey * ey;
    }
    result.rolloutRmse = std::sqrt(sq / demo.samples());
    const Eigen::RowVector2d span =
        demo.pos.colwise().maxCoeff() - demo.pos.colwise().minCoeff();
    result.demoBboxDiag = span.norm();

    ContactPlane plane;
    plane.height = result.planeHeight;
    plane.stiffness = params.planeStiffness;
    plane.damping = params.planeDamping;
    plane.tangentialViscosity = params.planeViscosity;

    const ImpedanceGains drawGains =
        taskGains(model, params.common, params.drawKp, params.drawBp);
    const ImpedanceGains eraseGains =
        taskGains(model, params.common, params.eraseKp, params.eraseBp);

    result.R0 = forwardKinematics(model, drawSeed()).R;
    const JointState start =
        preRoll(model, drawGains, path.eval(0.0).x, result.R0, drawSeed(),
                params.common.preRollDuration, &plane, params.common.dt,
                params.common.integrator);

    SimConfig simCfg;
    simCfg.dt = params.common.dt;
    simCfg.recordEvery = params.common.recordEvery;
    simCfg.integrator = params.common.integrator;

    // Draw phase: the learned path at constant pen depth.
    VirtualTrajectory drawVt;
    drawVt.add(path);
    simCfg.duration = pathDuration + params.settle;
    result.drawDuration = simCfg.duration;
    auto draw = runClosedLoopFull(model, drawGains, drawVt, result.R0, &plane, simCfg,
                                  start.q, start.qd);
    result.drawTrace = std::move(draw.trace);

    // Erase phase: time-reversed path with a superimposed XY oscillation.
    VirtualTrajectory eraseVt;
    eraseVt.add(TimeReversed(path, pathDuration));
    Oscillation osc;
    osc.radius = params.radius;
    osc.omega = params.omega;
    osc.plane = Plane::XY;
    osc.centerOffset = Oscillation::zeroStartOffset(params.radius, Plane::XY);
    eraseVt.add(osc);

    auto erase = runClosedLoopFull(model, eraseGains, eraseVt, result.R0, &plane, simCfg,
                                   draw.finalState.q, draw.finalState.qd,
                                   result.drawDuration);
    result.eraseTrace = std::move(erase.trace);
    return result;
}

}  // namespace eda::tools
