#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "eda/spatialmath.hpp"

using namespace eda;

namespace {

std::mt19937 rng(20240517);

Vec3 randomUnitAxis()
{
    std::normal_distribution<double> gauss;
    Vec3 v(gauss(rng), gauss(rng), gauss(rng));
    while (v.norm() < 1e-6) {
        v = Vec3(gauss(rng), gauss(rng), gauss(rng));
    }
    return v.normalized();
}

Vec3 randomVec(double scale = 1.0)
{
    std::uniform_real_distribution<double> u(-scale, scale);
    return Vec3(u(rng), u(rng), u(rng));
}

// Componentwise cross product, written out as the oracle.
Vec3 crossOracle(const Vec3& a, const Vec3& b)
{
    return Vec3(a.y() * b.z() - a.z() * b.y(),
                a.z() * b.x() - a.x() * b.z(),
                a.x() * b.y() - a.y() * b.x());
}

}  // namespace

TEST_CASE("skew of zero is the zero matrix")
{
    CHECK(skew(Vec3::Zero()).isZero(0.0));
}

TEST_CASE("skew matches the cross-product definition")
{
    Mat3 expected;
    expected << 0, -1, 0,
                1, 0, 0,
                0, 0, 0;
    CHECK((skew(Vec3(0, 0, 1)) - expected).norm() == 0.0);

    for (int i = 0; i < 100; ++i) {
        const Vec3 v = randomVec(5.0);
        const Vec3 w = randomVec(5.0);
        CHECK((skew(v) * w - crossOracle(v, w)).norm() < 1e-12);
    }
}

TEST_CASE("skew is antisymmetric")
{
    for (int i = 0; i < 20; ++i) {
        const Mat3 S = skew(randomVec(10.0));
        CHECK((S + S.transpose()).norm() == 0.0);
    }
}

TEST_CASE("so3Exp identity and axis-aligned cases")
{
    CHECK((so3Exp(Vec3::Zero()) - Mat3::Identity()).norm() == 0.0);

    Mat3 quarterZ;
    quarterZ << 0, -1, 0,
                1, 0, 0,
                0, 0, 1;
    CHECK((so3Exp(Vec3(0, 0, M_PI_2)) - quarterZ).norm() < 1e-15);
}

TEST_CASE("so3Exp small-angle branch stays near identity")
{
    const Vec3 omega = 1e-12 * randomUnitAxis();
    CHECK((so3Exp(omega) - Mat3::Identity()).norm() < 1e-11);
}

TEST_CASE("so3Exp always returns a valid rotation")
{
    for (int i = 0; i < 200; ++i) {
        std::uniform_real_distribution<double> angle(0.0, 4.0 * M_PI);
        const Mat3 R = so3Exp(angle(rng) * randomUnitAxis());
        CHECK(isRotation(R, 1e-12));
    }
}

TEST_CASE("so3Log identity and axis-aligned cases")
{
    CHECK(so3Log(Mat3::Identity()).norm() == 0.0);

    const Vec3 w = so3Log(so3Exp(Vec3(0, 0, M_PI_2)));
    CHECK((w - Vec3(0, 0, M_PI_2)).norm() < 1e-14);
}

TEST_CASE("exp/log round trip over random rotations")
{
    std::uniform_real_distribution<double> angle(1e-6, M_PI - 1e-9);
    for (int i = 0; i < 1000; ++i) {
        const Mat3 R = so3Exp(angle(rng) * randomUnitAxis());
        const Mat3 back = so3Exp(so3Log(R));
        CHECK((back - R).norm() < 1e-8);
    }
}

TEST_CASE("round trip survives angles within 1e-6 of pi")
{
    std::uniform_real_distribution<double> eps(0.0, 1e-6);
    for (int i = 0; i < 50; ++i) {
        const double theta = M_PI - eps(rng);
        const Mat3 R = so3Exp(theta * randomUnitAxis());
        const Mat3 back = so3Exp(so3Log(R));
        CHECK((back - R).norm() < 1e-8);
    }
    // exactly pi about each coordinate axis
    for (int a = 0; a < 3; ++a) {
        const Mat3 R = so3Exp(M_PI * Vec3::Unit(a));
        CHECK((so3Exp(so3Log(R)) - R).norm() < 1e-8);
    }
}

TEST_CASE("log of exp recovers the vector below pi")
{
    std::uniform_real_distribution<double> angle(1e-9, M_PI - 1e-6);
    for (int i = 0; i < 500; ++i) {
        const Vec3 omega = angle(rng) * randomUnitAxis();
        CHECK((so3Log(so3Exp(omega)) - omega).norm() < 1e-8);
    }
}

TEST_CASE("log magnitude never exceeds pi")
{
    std::uniform_real_distribution<double> angle(0.0, 4.0 * M_PI);
    for (int i = 0; i < 200; ++i) {
        const Mat3 R = so3Exp(angle(rng) * randomUnitAxis());
        CHECK(so3Log(R).norm() <= M_PI + 1e-12);
    }
}

TEST_CASE("so3Log rejects non-orthonormal input")
{
    Mat3 bad = Mat3::Identity();
    bad(0, 0) = 1.0 + 1e-6;
    CHECK_THROWS_AS(so3Log(bad), std::invalid_argument);

    bad = 2.0 * Mat3::Identity();
    CHECK_THROWS_AS(so3Log(bad), std::invalid_argument);
}

TEST_CASE("projectToSO3 restores a perturbed rotation")
{
    for (int i = 0; i < 50; ++i) {
        const Mat3 R = so3Exp(randomVec(3.0));
        Mat3 noisy = R;
        noisy += 1e-5 * Mat3::Random();
        const Mat3 fixed = projectToSO3(noisy);
        CHECK(isRotation(fixed, 1e-12));
        CHECK((fixed - R).norm() < 1e-4);
    }
}
