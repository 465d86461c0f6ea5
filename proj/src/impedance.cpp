#include "eda/impedance.hpp"

#include <stdexcept>

namespace eda {

namespace {

Mat3 sym(const Mat3& M) { return 0.5 * (M + M.transpose()); }

void checkSpd(const MatrixXd& M, const char* name)
{
    if ((M - M.transpose()).norm() > 1e-9 * std::max(1.0, M.norm())) {
        throw std::invalid_argument(std::string("impedance gains: ") + name + " not symmetric");
    }
    Eigen::LLT<MatrixXd> llt(M);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument(std::string("impedance gains: ") + name +
                                    " not positive definite");
    }
}

}  // namespace

ImpedanceGains ImpedanceGains::isotropic(int dof, double bq, double kp, double bp,
                                         double kr, double br)
{
    ImpedanceGains g;
    g.Bq = bq * MatrixXd::Identity(dof, dof);
    g.Kp = kp * Mat3::Identity();
    g.Bp = bp * Mat3::Identity();
    g.Kr = kr * Mat3::Identity();
    g.Br = br * Mat3::Identity();
    return g;
}

void ImpedanceGains::validate() const
{
    checkSpd(Bq, "Bq");
    checkSpd(Kp, "Kp");
    checkSpd(Bp, "Bp");
    checkSpd(Kr, "Kr");
    checkSpd(Br, "Br");
}

VectorXd jointDampingTorque(const ImpedanceGains& gains, const VectorXd& qd)
{
    if (gains.Bq.rows() != qd.size()) {
        throw std::invalid_argument("jointDampingTorque: dimension mismatch");
    }
    const MatrixXd Bq = 0.5 * (gains.Bq + gains.Bq.transpose());
    return -(Bq * qd);
}

Vec3 translationalWrench(const ImpedanceGains& gains, const Vec3& dp, const Vec3& dpdot)
{
    return sym(gains.Kp) * dp + sym(gains.Bp) * dpdot;
}

Vec3 rotationalWrench(const ImpedanceGains& gains, const Mat3& R, const Mat3& R0,
                      const Vec3& omega)
{
    const Vec3 logDeltaR = so3Log(R.transpose() * R0);
    return sym(gains.Kr) * (R * logDeltaR) - sym(gains.Br) * omega;
}

VectorXd assembleTorque(const RobotDescription& model, const VectorXd& q,
                        const VectorXd& qd, const ControlTarget& target,
                        const ImpedanceGains& gains)
{
    Eigen::Matrix3Xd Jp, Jr;
    jacobians(model, q, Jp, Jr);
    const Pose pose = forwardKinematics(model, q);

    const Vec3 dp = target.x0 - pose.p;
    const Vec3 dpdot = target.x0dot - Jp * qd;
    const Vec3 omega = Jr * qd;

    VectorXd tau = jointDampingTorque(gains, qd);
    tau.noalias() += Jp.transpose() * translationalWrench(gains, dp, dpdot);
    tau.noalias() += Jr.transpose() * rotationalWrench(gains, pose.R, target.R0, omega);
    return tau;
}

double controlEnergy(const RobotDescription& model, const VectorXd& q,
                     const VectorXd& qd, const ControlTarget& target,
                     const ImpedanceGains& gains)
{
    const Pose pose = forwardKinematics(model, q);
    const Vec3 dp = target.x0 - pose.p;
    const Vec3 e = so3Log(pose.R.transpose() * target.R0);
    const MatrixXd M = massMatrix(model, q);
    return 0.5 * qd.dot(M * qd) + 0.5 * dp.dot(sym(gains.Kp) * dp) +
           0.5 * e.dot(sym(gains.Kr) * e);
}

}  // namespace eda
