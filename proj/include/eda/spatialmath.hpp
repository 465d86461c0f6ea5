#ifndef EDA_SPATIALMATH_HPP
#define EDA_SPATIALMATH_HPP

#include <Eigen/Dense>

namespace eda {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Cross-product matrix: skew(v) * w == v.cross(w).
Mat3 skew(const Vec3& v);

// Rodrigues formula, exact for all finite inputs. Uses a second-order
// Taylor expansion of the sin/cos coefficients below theta = 1e-7.
Mat3 so3Exp(const Vec3& omega);

// Matrix logarithm of a rotation. Returns theta * axis with theta in [0, pi].
// Throws std::invalid_argument if R is not orthonormal within 1e-9.
// Near theta = pi the axis is recovered from the diagonal of (R + I)/2 with
// largest-diagonal pivoting; the skew-part formula degenerates there.
Vec3 so3Log(const Mat3& R);

// True if R'R = I and det(R) = 1 within tol (Frobenius / absolute).
bool isRotation(const Mat3& R, double tol = 1e-9);

// Nearest rotation matrix in the Frobenius sense (polar projection).
// Used inside the simulator integration loop only, never inside so3Log.
Mat3 projectToSO3(const Mat3& M);

}  // namespace eda

#endif
