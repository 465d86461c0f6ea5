#ifndef EDA_ROBOTMODEL_HPP
#define EDA_ROBOTMODEL_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eda/spatialmath.hpp"

namespace eda {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Revolute joint in the home configuration: unit rotation axis and a point
// on the axis, both expressed in the base frame.
struct Joint {
    Vec3 axis;
    Vec3 origin;
};

// Link inertial data in the home configuration: mass, COM position in the
// base frame, and inertia about the COM expressed in the base frame.
struct Link {
    double mass = 0.0;
    Vec3 com = Vec3::Zero();
    Mat3 inertia = Mat3::Zero();
};

struct Pose {
    Vec3 p = Vec3::Zero();
    Mat3 R = Mat3::Identity();
};

struct JointState {
    VectorXd q;
    VectorXd qd;
};

// Kinematic and inertial description of an n-joint serial chain.
// Immutable after load; all operations on it are pure.
class RobotDescription {
public:
    std::vector<Joint> joints;
    std::vector<Link> links;  // link i is rigidly attached after joint i
    Vec3 eeOrigin = Vec3::Zero();
    Mat3 eeRotation = Mat3::Identity();
    Vec3 toolOffset = Vec3::Zero();  // pen/eraser tip relative to flange

    int dof() const { return static_cast<int>(joints.size()); }

    // Validates all invariants (n >= 1, unit axes, positive masses,
    // symmetric PSD inertias). Throws std::invalid_argument on violation.
    void validate() const;

    // Parses the line-oriented robot-description grammar. The name is used
    // only for diagnostics ("name:line: message").
    static RobotDescription fromString(const std::string& text,
                                       const std::string& name = "<string>");
    static RobotDescription fromFile(const std::string& path);
};

// Pose of the tool tip (flange pose composed with the tool offset).
Pose forwardKinematics(const RobotDescription& model, const VectorXd& q);

// Geometric Jacobians at the tool tip: pdot = Jp qd, omega = Jr qd.
void jacobians(const RobotDescription& model, const VectorXd& q,
               Eigen::Matrix3Xd& Jp, Eigen::Matrix3Xd& Jr);

// Joint-space mass matrix, assembled from per-link COM Jacobians and
// spatial inertias. Symmetric positive definite.
MatrixXd massMatrix(const RobotDescription& model, const VectorXd& q);

// C(q, qd) qd, Coriolis/centrifugal only (gravity-free dynamics), built
// from Christoffel symbols of dM/dq (central differences, h = 1e-6).
VectorXd biasForces(const RobotDescription& model, const VectorXd& q,
                    const VectorXd& qd);

}  // namespace eda

#endif
