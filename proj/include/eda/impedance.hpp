#ifndef EDA_IMPEDANCE_HPP
#define EDA_IMPEDANCE_HPP

#include "eda/robotmodel.hpp"
#include "eda/spatialmath.hpp"

namespace eda {

// Gains of the three superimposed impedances: joint-space damping Bq plus
// task-space translational (Kp, Bp) and rotational (Kr, Br) stiffness and
// damping. Only the symmetric parts take effect.
struct ImpedanceGains {
    MatrixXd Bq;
    Mat3 Kp = Mat3::Zero();
    Mat3 Bp = Mat3::Zero();
    Mat3 Kr = Mat3::Zero();
    Mat3 Br = Mat3::Zero();

    // Isotropic gains: scalar * identity in each block.
    static ImpedanceGains isotropic(int dof, double bq, double kp, double bp,
                                    double kr, double br);

    // Checks symmetry and positive definiteness of every block.
    // Throws std::invalid_argument on violation.
    void validate() const;
};

// Where the impedances are attached: the virtual position/velocity and a
// constant virtual orientation.
struct ControlTarget {
    Vec3 x0 = Vec3::Zero();
    Vec3 x0dot = Vec3::Zero();
    Mat3 R0 = Mat3::Identity();
};

// -Bq qd
VectorXd jointDampingTorque(const ImpedanceGains& gains, const VectorXd& qd);

// Kp dp + Bp dpdot
Vec3 translationalWrench(const ImpedanceGains& gains, const Vec3& dp, const Vec3& dpdot);

// Kr R Log(R' R0) - Br omega
Vec3 rotationalWrench(const ImpedanceGains& gains, const Mat3& R, const Mat3& R0,
                      const Vec3& omega);

// Full torque command at the tool tip:
//   tau = -Bq qd + Jp' (Kp dp + Bp dpdot) + Jr' (Kr R Log(R' R0) - Br omega)
// with dp = x0 - p, dpdot = x0dot - Jp qd, omega = Jr qd. Only the Jacobian
// transpose is used, never an inverse.
VectorXd assembleTorque(const RobotDescription& model, const VectorXd& q,
                        const VectorXd& qd, const ControlTarget& target,
                        const ImpedanceGains& gains);

// Storage function of the controlled plant for passivity checks:
//   1/2 qd' M qd + 1/2 dp' Kp dp + 1/2 Log(R' R0)' Kr Log(R' R0).
double controlEnergy(const RobotDescription& model, const VectorXd& q,
                     const VectorXd& qd, const ControlTarget& target,
                     const ImpedanceGains& gains);

}  // namespace eda

#endif
