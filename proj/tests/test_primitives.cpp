#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "eda/primitives.hpp"

using namespace eda;

namespace {

std::mt19937 rng(99120);

const Vec3 kP1(0.6735, 0.1396, 0.2048);
const Vec3 kP2(0.6735, 0.3396, 0.4048);
const Vec3 kP3(0.6735, 0.4396, 0.3048);

Submovement figure2First() { return Submovement{0.5, 2.0, kP2 - kP1, kP1}; }
Submovement figure2Second() { return Submovement{1.5, 2.0, kP3 - kP2, Vec3::Zero()}; }

// Analytic rest-to-rest path (like a rollout) for the sampled-path term:
// a curve traversed with a minimum-jerk time warp.
void restToRestCurve(double t, double T, Vec3& x, Vec3& xd)
{
    double f, fdot;
    minJerkBasis(t, 0.0, T, f, fdot);
    const double s = T * f;
    x = Vec3(std::sin(s), std::cos(2.0 * s), 0.5 * s);
    xd = T * fdot * Vec3(std::cos(s), -2.0 * std::sin(2.0 * s), 0.5);
}

SampledPath sineSampledPath(double dt = 0.01, int samples = 201)
{
    const double T = dt * (samples - 1);
    std::vector<Vec3> x(samples), xd(samples);
    for (int j = 0; j < samples; ++j) {
        restToRestCurve(j * dt, T, x[j], xd[j]);
    }
    return SampledPath(dt, x, xd);
}

}  // namespace

TEST_CASE("minimum-jerk basis boundary conditions")
{
    double f, fdot;
    minJerkBasis(1.0, 1.0, 2.0, f, fdot);
    CHECK(f == 0.0);
    CHECK(fdot == 0.0);
    minJerkBasis(3.0, 1.0, 2.0, f, fdot);
    CHECK(f == 1.0);
    CHECK(fdot == 0.0);
    minJerkBasis(2.0, 1.0, 2.0, f, fdot);  // midpoint: 10/8 - 15/16 + 6/32
    CHECK(f == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(fdot == doctest::Approx(1.875 / 2.0).epsilon(1e-15));
}

TEST_CASE("minimum-jerk basis rejects nonpositive durations")
{
    double f, fdot;
    CHECK_THROWS_AS(minJerkBasis(0.0, 0.0, 0.0, f, fdot), std::invalid_argument);
    CHECK_THROWS_AS(minJerkBasis(0.0, 0.0, -1.0, f, fdot), std::invalid_argument);
}

TEST_CASE("minimum-jerk basis is monotone with peak rate 1.875/T")
{
    const double T = 1.7;
    double prev = -1.0;
    double peak = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double t = T * i / 2000.0;
        double f, fdot;
        minJerkBasis(t, 0.0, T, f, fdot);
        CHECK(f >= prev);
        CHECK(fdot >= 0.0);
        peak = std::max(peak, fdot);
        prev = f;
    }
    CHECK(std::abs(peak - 1.875 / T) < 1e-12);
}

TEST_CASE("submovement before start contributes its base at rest")
{
    const Submovement sub = figure2First();
    const PointVel v = sub.eval(0.25);
    CHECK((v.x - kP1).norm() == 0.0);
    CHECK(v.xd.norm() == 0.0);
}

TEST_CASE("first submovement reaches p2 at t = 2.5 s")
{
    const PointVel v = figure2First().eval(2.5);
    CHECK((v.x - kP2).norm() < 1e-15);
    CHECK(v.xd.norm() == 0.0);
}

TEST_CASE("second submovement holds its displacement after t = 3.5 s")
{
    for (const double t : {3.5, 4.0, 50.0}) {
        const PointVel v = figure2Second().eval(t);
        CHECK((v.x - (kP3 - kP2)).norm() == 0.0);
        CHECK(v.xd.norm() == 0.0);
    }
}

TEST_CASE("submovement is constant to machine precision after completion")
{
    const Submovement sub = figure2First();
    const Vec3 settled = sub.eval(2.5).x;
    std::uniform_real_distribution<double> u(2.5, 1e4);
    for (int i = 0; i < 100; ++i) {
        CHECK((sub.eval(u(rng)).x - settled).norm() == 0.0);
    }
}

TEST_CASE("oscillation on the YZ plane starts at +r along y")
{
    Oscillation osc;
    osc.radius = 0.03;
    osc.omega = 3.0 * M_PI;
    const PointVel v = osc.eval(0.0);
    CHECK((v.x - Vec3(0, 0.03, 0)).norm() == 0.0);
    CHECK((v.xd - Vec3(0, 0, 0.03 * 3.0 * M_PI)).norm() == 0.0);
}

TEST_CASE("zero-radius oscillation degenerates to its center")
{
    Oscillation osc;
    osc.radius = 0.0;
    osc.centerOffset = Vec3(1, 2, 3);
    for (const double t : {0.0, 0.3, 1.7}) {
        const PointVel v = osc.eval(t);
        CHECK((v.x - Vec3(1, 2, 3)).norm() == 0.0);
        CHECK(v.xd.norm() == 0.0);
    }
}

TEST_CASE("oscillation is periodic with period 2 pi / omega")
{
    Oscillation osc;
    osc.radius = 0.03;
    osc.omega = 3.0 * M_PI;
    const double period = 2.0 * M_PI / osc.omega;
    const PointVel a = osc.eval(0.0);
    const PointVel b = osc.eval(period);
    CHECK((a.x - b.x).norm() < 1e-12);
    CHECK((a.xd - b.xd).norm() < 1e-12);
}

TEST_CASE("oscillation velocity matches a finite difference of its position")
{
    Oscillation osc;
    osc.radius = 0.05;
    osc.omega = 2.0;
    osc.phase = 0.7;
    osc.plane = Plane::XZ;
    const double h = 1e-6;
    for (const double t : {0.1, 0.9, 2.3}) {
        const Vec3 fd = (osc.eval(t + h).x - osc.eval(t - h).x) / (2 * h);
        CHECK((osc.eval(t).xd - fd).norm() < 1e-8);
    }
}

TEST_CASE("empty virtual trajectory refuses to evaluate")
{
    VirtualTrajectory vt;
    CHECK_THROWS_AS(vt.eval(0.0), std::invalid_argument);
}

TEST_CASE("singleton composition equals the term itself")
{
    VirtualTrajectory vt;
    vt.add(figure2First());
    for (const double t : {0.0, 1.0, 2.2, 9.0}) {
        const PointVel a = vt.eval(t);
        const PointVel b = figure2First().eval(t);
        CHECK((a.x - b.x).norm() == 0.0);
        CHECK((a.xd - b.xd).norm() == 0.0);
    }
}

TEST_CASE("figure-2 composition settles exactly on p3")
{
    VirtualTrajectory vt;
    vt.add(figure2First());
    vt.add(figure2Second());
    for (const double t : {3.5, 4.0, 10.0, 1e3}) {
        CHECK((vt.eval(t).x - kP3).norm() < 1e-12);
        CHECK(vt.eval(t).xd.norm() == 0.0);
    }
}

TEST_CASE("figure-3 composition orbits the settled goal")
{
    const Vec3 p1(0.5735, 0.0, 0.5048);
    const Vec3 p2(0.5735, 0.35, 0.5048);
    VirtualTrajectory vt;
    vt.add(Submovement{0.5, 1.5, p2 - p1, p1});
    Oscillation osc;
    osc.radius = 0.03;
    osc.omega = 3.0 * M_PI;
    osc.centerOffset = Oscillation::zeroStartOffset(0.03, Plane::YZ);
    vt.add(osc);

    const Vec3 center = p2 + Vec3(0, -0.03, 0);
    std::uniform_real_distribution<double> u(2.0, 60.0);
    for (int i = 0; i < 200; ++i) {
        const Vec3 x = vt.eval(u(rng)).x;
        CHECK(std::abs((x - center).norm() - 0.03) < 1e-15);
        CHECK(x.x() == doctest::Approx(0.5735).epsilon(1e-15));
    }
}

TEST_CASE("superposition is exactly linear")
{
    VirtualTrajectory both;
    both.add(figure2First());
    both.add(figure2Second());
    VirtualTrajectory first;
    first.add(figure2First());
    VirtualTrajectory second;
    second.add(figure2Second());

    std::uniform_real_distribution<double> u(0.0, 6.0);
    for (int i = 0; i < 200; ++i) {
        const double t = u(rng);
        const PointVel sum = both.eval(t);
        const PointVel a = first.eval(t);
        const PointVel b = second.eval(t);
        CHECK(((a.x + b.x) - sum.x).norm() == 0.0);
        CHECK(((a.xd + b.xd) - sum.xd).norm() == 0.0);
    }
}

TEST_CASE("adding a term leaves existing term evaluations bit-identical")
{
    VirtualTrajectory vt;
    vt.add(figure2First());
    std::vector<double> times;
    std::vector<Vec3> before;
    std::uniform_real_distribution<double> u(0.0, 6.0);
    for (int i = 0; i < 100; ++i) {
        times.push_back(u(rng));
        before.push_back(vt.evalTerm(0, times.back()).x);
    }
    vt.add(figure2Second());
    for (size_t i = 0; i < times.size(); ++i) {
        CHECK((vt.evalTerm(0, times[i]).x - before[i]).norm() == 0.0);
    }
}

TEST_CASE("figure-2 velocity is two overlapping unimodal lobes")
{
    const Submovement s1 = figure2First();
    const Submovement s2 = figure2Second();

    // each lobe rises then falls exactly once
    for (const Submovement& s : {s1, s2}) {
        int sign = 1;
        int flips = 0;
        double prev = 0.0;
        for (int i = 1; i <= 400; ++i) {
            const double t = s.start + s.duration * i / 400.0;
            const double speed = s.eval(t).xd.norm();
            if (speed < prev - 1e-12 && sign == 1) {
                sign = -1;
                ++flips;
            }
            if (speed > prev + 1e-12 && sign == -1) {
                ++flips;
                sign = 1;
            }
            prev = speed;
        }
        CHECK(flips == 1);
    }

    // both lobes are active throughout (1.5, 2.5)
    for (double t = 1.55; t < 2.5; t += 0.05) {
        CHECK(s1.eval(t).xd.norm() > 0.0);
        CHECK(s2.eval(t).xd.norm() > 0.0);
    }
}

TEST_CASE("sampled path interpolates its source function")
{
    const SampledPath path = sineSampledPath();
    std::uniform_real_distribution<double> u(0.0, path.duration());
    for (int i = 0; i < 200; ++i) {
        const double t = u(rng);
        const PointVel v = path.eval(t);
        Vec3 exact, exactVel;
        restToRestCurve(t, path.duration(), exact, exactVel);
        CHECK((v.x - exact).norm() < 1e-6);
        CHECK((v.xd - exactVel).norm() < 1e-4);
    }
    // clamps outside its support
    CHECK((path.eval(-1.0).x - path.eval(0.0).x).norm() == 0.0);
    CHECK(path.eval(path.duration() + 5.0).xd.norm() == 0.0);
}

TEST_CASE("time reversal swaps the endpoints and holds after T")
{
    const SampledPath path = sineSampledPath();
    const double T = path.duration();
    const TimeReversed rev(path, T);

    CHECK((rev.eval(0.0).x - path.eval(T).x).norm() == 0.0);
    CHECK((rev.eval(T).x - path.eval(0.0).x).norm() == 0.0);
    CHECK(rev.eval(T).xd.norm() == 0.0);
    CHECK((rev.eval(T + 3.0).x - path.eval(0.0).x).norm() == 0.0);

    std::uniform_real_distribution<double> u(0.0, T);
    for (int i = 0; i < 50; ++i) {
        const double t = u(rng);
        CHECK((rev.eval(t).x - path.eval(T - t).x).norm() == 0.0);
        CHECK((rev.eval(t).xd + path.eval(T - t).xd).norm() == 0.0);
    }
}

TEST_CASE("time reversal rejects a mismatched duration")
{
    const SampledPath path = sineSampledPath();
    CHECK_THROWS_AS(TimeReversed(path, path.duration() + 0.1), std::invalid_argument);
}

TEST_CASE("double reversal reproduces the original rollout")
{
    const SampledPath path = sineSampledPath();
    const double T = path.duration();
    const TimeReversed once(path, T);

    // resample the reversed trajectory on the original grid
    std::vector<Vec3> x(path.samples()), xd(path.samples());
    for (size_t j = 0; j < path.samples(); ++j) {
        const PointVel v = once.eval(static_cast<double>(j) * path.dt());
        x[j] = v.x;
        xd[j] = v.xd;
    }
    const TimeReversed twice(SampledPath(path.dt(), x, xd), T);

    std::uniform_real_distribution<double> u(0.0, T);
    for (int i = 0; i < 100; ++i) {
        const double t = u(rng);
        CHECK((twice.eval(t).x - path.eval(t).x).norm() < 1e-12);
    }
}
