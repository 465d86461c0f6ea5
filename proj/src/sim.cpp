#include "eda/sim.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace eda {

Vec3 contactForce(const ContactPlane& plane, const Vec3& tipP, const Vec3& tipV)
{
    if (tipP.z() >= plane.height) {
        return Vec3::Zero();
    }
    const double fn = std::max(0.0, plane.stiffness * (plane.height - tipP.z()) -
                                        plane.damping * tipV.z());
    return Vec3(-plane.tangentialViscosity * tipV.x(),
                -plane.tangentialViscosity * tipV.y(), fn);
}

namespace {

VectorXd acceleration(const RobotDescription& model, const VectorXd& q,
                      const VectorXd& qd, const VectorXd& tau,
                      const ContactPlane* plane)
{
    VectorXd rhs = tau - biasForces(model, q, qd);
    if (plane) {
        Eigen::Matrix3Xd Jp, Jr;
        jacobians(model, q, Jp, Jr);
        const Vec3 tipP = forwardKinematics(model, q).p;
        const Vec3 tipV = Jp * qd;
        rhs.noalias() += Jp.transpose() * contactForce(*plane, tipP, tipV);
    }
    const MatrixXd M = massMatrix(model, q);
    return Eigen::LDLT<MatrixXd>(M).solve(rhs);
}

}  // namespace

JointState simStep(const RobotDescription& model, const JointState& state,
                   const VectorXd& tau, const ContactPlane* plane, double dt,
                   Integrator integrator)
{
    if (!(dt > 0.0)) {
        throw std::invalid_argument("simStep: dt must be > 0");
    }
    if (state.q.size() != model.dof() || state.qd.size() != model.dof() ||
        tau.size() != model.dof()) {
        throw std::invalid_argument("simStep: dimension mismatch");
    }

    JointState next;
    if (integrator == Integrator::SemiImplicitEuler) {
        const VectorXd qdd = acceleration(model, state.q, state.qd, tau, plane);
        next.qd = state.qd + dt * qdd;
        next.q = state.q + dt * next.qd;
    } else {
        const auto f = [&](const VectorXd& q, const VectorXd& qd) {
            return acceleration(model, q, qd, tau, plane);
        };
        const VectorXd& q = state.q;
        const VectorXd& qd = state.qd;
        const VectorXd a1 = f(q, qd);
        const VectorXd a2 = f(q + 0.5 * dt * qd, qd + 0.5 * dt * a1);
        const VectorXd a3 = f(q + 0.5 * dt * qd + 0.25 * dt * dt * a1, qd + 0.5 * dt * a2);
        const VectorXd a4 = f(q + dt * qd + 0.5 * dt * dt * a2, qd + dt * a3);
        next.q = q + dt * qd + dt * dt / 6.0 * (a1 + a2 + a3);
        next.qd = qd + dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    }
    if (!next.q.allFinite() || !next.qd.allFinite()) {
        throw std::runtime_error("simStep: non-finite state");
    }
    return next;
}

ClosedLoopResult runClosedLoopFull(const RobotDescription& model,
                                   const ImpedanceGains& gains,
                                   const VirtualTrajectory& vt, const Mat3& R0,
                                   const ContactPlane* plane, const SimConfig& cfg,
                                   const VectorXd& qInit, const VectorXd& qdInit,
                                   double tStart)
{
    if (!(cfg.dt > 0.0) || !(cfg.duration > 0.0) || cfg.recordEvery < 1) {
        throw std::invalid_argument("runClosedLoop: invalid sim config");
    }
    JointState state{qInit, qdInit};
    if (state.qd.size() == 0) {
        state.qd = VectorXd::Zero(model.dof());
    }

    const auto steps = static_cast<long>(std::llround(cfg.duration / cfg.dt));
    ClosedLoopResult result;
    Trace& trace = result.trace;

    for (long k = 0; k <= steps; ++k) {
        const double tLocal = static_cast<double>(k) * cfg.dt;
        const PointVel target = vt.eval(tLocal);
        const ControlTarget ct{target.x, target.xd, R0};
        const VectorXd tau = assembleTorque(model, state.q, state.qd, ct, gains);

        if (k % cfg.recordEvery == 0) {
            Eigen::Matrix3Xd Jp, Jr;
            jacobians(model, state.q, Jp, Jr);
            const Pose pose = forwardKinematics(model, state.q);
            const Vec3 fc = plane ? contactForce(*plane, pose.p, Jp * state.qd) : Vec3::Zero();
            trace.t.push_back(tStart + tLocal);
            trace.q.push_back(state.q);
            trace.qd.push_back(state.qd);
            trace.p.push_back(pose.p);
            trace.logR.push_back(so3Log(projectToSO3(pose.R)));
            trace.x0.push_back(target.x);
            trace.x0dot.push_back(target.xd);
            trace.tau.push_back(tau);
            trace.fn.push_back(fc.z());
        }
        if (k == steps) {
            break;
        }
        try {
            state = simStep(model, state, tau, plane, cfg.dt, cfg.integrator);
        } catch (const std::runtime_error& e) {
            throw std::runtime_error(std::string(e.what()) + " at step " + std::to_string(k + 1));
        }
    }
    result.finalState = state;
    return result;
}

Trace runClosedLoop(const RobotDescription& model, const ImpedanceGains& gains,
                    const VirtualTrajectory& vt, const Mat3& R0,
                    const ContactPlane* plane, const SimConfig& cfg,
                    const VectorXd& qInit, const VectorXd& qdInit, double tStart)
{
    return runClosedLoopFull(model, gains, vt, R0, plane, cfg, qInit, qdInit, tStart).trace;
}

void Trace::append(const Trace& other)
{
    t.insert(t.end(), other.t.begin(), other.t.end());
    q.insert(q.end(), other.q.begin(), other.q.end());
    qd.insert(qd.end(), other.qd.begin(), other.qd.end());
    p.insert(p.end(), other.p.begin(), other.p.end());
    logR.insert(logR.end(), other.logR.begin(), other.logR.end());
    x0.insert(x0.end(), other.x0.begin(), other.x0.end());
    x0dot.insert(x0dot.end(), other.x0dot.begin(), other.x0dot.end());
    tau.insert(tau.end(), other.tau.begin(), other.tau.end());
    fn.insert(fn.end(), other.fn.begin(), other.fn.end());
}

void Trace::writeCsv(std::ostream& out) const
{
    const int n = rows() ? static_cast<int>(q.front().size()) : 0;
    out << "t";
    for (int i = 1; i <= n; ++i) out << ",q" << i;
    for (int i = 1; i <= n; ++i) out << ",qd" << i;
    out << ",px,py,pz,logRx,logRy,logRz,x0x,x0y,x0z";
    for (int i = 1; i <= n; ++i) out << ",tau" << i;
    out << ",fn\n";

    out << std::setprecision(17);
    for (size_t r = 0; r < rows(); ++r) {
        out << t[r];
        for (int i = 0; i < n; ++i) out << ',' << q[r][i];
        for (int i = 0; i < n; ++i) out << ',' << qd[r][i];
        for (int i = 0; i < 3; ++i) out << ',' << p[r][i];
        for (int i = 0; i < 3; ++i) out << ',' << logR[r][i];
        for (int i = 0; i < 3; ++i) out << ',' << x0[r][i];
        for (int i = 0; i < n; ++i) out << ',' << tau[r][i];
        out << ',' << fn[r] << '\n';
    }
}

void Trace::writeCsv(const std::string& path) const
{
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot open trace output '" + path + "'");
    }
    writeCsv(out);
}

Trace Trace::readCsv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open trace '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument(path + ": empty trace file");
    }
    long cols = std::count(line.begin(), line.end(), ',') + 1;
    if (cols < 14 || (cols - 11) % 3 != 0) {
        throw std::invalid_argument(path + ": unrecognized trace header");
    }
    const int n = static_cast<int>((cols - 11) / 3);

    Trace trace;
    int lineNo = 1;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<double> v;
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            v.push_back(std::stod(cell));
        }
        if (static_cast<long>(v.size()) != cols) {
            throw std::invalid_argument(path + ":" + std::to_string(lineNo) +
                                        ": wrong column count");
        }
        size_t i = 0;
        trace.t.push_back(v[i++]);
        VectorXd q(n), qd(n), tau(n);
        for (int j = 0; j < n; ++j) q[j] = v[i++];
        for (int j = 0; j < n; ++j) qd[j] = v[i++];
        Vec3 p, logR, x0;
        for (int j = 0; j < 3; ++j) p[j] = v[i++];
        for (int j = 0; j < 3; ++j) logR[j] = v[i++];
        for (int j = 0; j < 3; ++j) x0[j] = v[i++];
        for (int j = 0; j < n; ++j) tau[j] = v[i++];
        trace.q.push_back(q);
        trace.qd.push_back(qd);
        trace.p.push_back(p);
        trace.logR.push_back(logR);
        trace.x0.push_back(x0);
        trace.x0dot.push_back(Vec3::Zero());
        trace.tau.push_back(tau);
        trace.fn.push_back(v[i]);
    }
    return trace;
}

}  // namespace eda
