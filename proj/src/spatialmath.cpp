#include "eda/spatialmath.hpp"

#include <cmath>
#include <stdexcept>

namespace eda {

namespace {
constexpr double kTaylorTheta = 1e-7;
constexpr double kNearPiTheta = 1e-6;

Vec3 vee(const Mat3& A) { return Vec3(A(2, 1), A(0, 2), A(1, 0)); }
}  // namespace

Mat3 skew(const Vec3& v)
{
    Mat3 m;
    m << 0.0, -v.z(), v.y(),
         v.z(), 0.0, -v.x(),
        -v.y(), v.x(), 0.0;
    return m;
}

Mat3 so3Exp(const Vec3& omega)
{
    const double theta = omega.norm();
    const Mat3 W = skew(omega);
    double a, b;  // R = I + a W + b W^2
    if (theta < kTaylorTheta) {
        const double t2 = theta * theta;
        a = 1.0 - t2 / 6.0;
        b = 0.5 - t2 / 24.0;
    } else {
        a = std::sin(theta) / theta;
        b = (1.0 - std::cos(theta)) / (theta * theta);
    }
    return Mat3::Identity() + a * W + b * (W * W);
}

Vec3 so3Log(const Mat3& R)
{
    if (!isRotation(R)) {
        throw std::invalid_argument("so3Log: input is not orthonormal within 1e-9");
    }

    const double c = std::clamp(0.5 * (R.trace() - 1.0), -1.0, 1.0);
    const double theta = std::acos(c);
    const Vec3 w = vee(R - R.transpose()) * 0.5;  // sin(theta) * axis

    if (theta < kTaylorTheta) {
        // log(R) = w * (1 + theta^2/6 + ...) to second order
        return w * (1.0 + theta * theta / 6.0);
    }

    if (theta > M_PI - kNearPiTheta) {
        // (R + I)/2 = ((1+c)/2) I + ((1-c)/2) aa' after symmetrization;
        // the column with the largest diagonal entry is dominated by a.
        const Mat3 S = 0.25 * (R + R.transpose()) + 0.5 * Mat3::Identity();
        int k = 0;
        S.diagonal().maxCoeff(&k);
        Vec3 axis = S.col(k).normalized();
        if (w.dot(axis) < 0.0) {
            axis = -axis;
        }
        const double s = std::clamp(w.norm(), 0.0, 1.0);
        return (M_PI - std::asin(s)) * axis;
    }

    return (theta / std::sin(theta)) * w;
}

bool isRotation(const Mat3& R, double tol)
{
    const double ortho = (R.transpose() * R - Mat3::Identity()).norm();
    return ortho <= tol && std::abs(R.determinant() - 1.0) <= tol;
}

Mat3 projectToSO3(const Mat3& M)
{
    Eigen::JacobiSVD<Mat3> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 R = svd.matrixU() * svd.matrixV().transpose();
    if (R.determinant() < 0.0) {
        Mat3 D = Mat3::Identity();
        D(2, 2) = -1.0;
        R = svd.matrixU() * D * svd.matrixV().transpose();
    }
    return R;
}

}  // namespace eda
