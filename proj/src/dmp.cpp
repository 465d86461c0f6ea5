#include "eda/dmp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eda {

DmpModel::DmpModel(const DmpConfig& cfg) : cfg_(cfg)
{
    if (cfg_.dims < 1) throw std::invalid_argument("DmpModel: dims must be >= 1");
    if (cfg_.nBasis < 2) throw std::invalid_argument("DmpModel: need at least 2 basis functions");
    if (!(cfg_.alphaS > 0.0) || !(cfg_.alphaZ > 0.0) || !(cfg_.betaZ > 0.0) || !(cfg_.tau > 0.0)) {
        throw std::invalid_argument("DmpModel: alphaS, alphaZ, betaZ, tau must be > 0");
    }
    const int N = cfg_.nBasis;
    centers_.resize(N);
    widths_.resize(N);
    for (int i = 0; i < N; ++i) {
        centers_[i] = std::exp(-cfg_.alphaS * static_cast<double>(i) / static_cast<double>(N - 1));
    }
    for (int i = 0; i + 1 < N; ++i) {
        const double dc = centers_[i + 1] - centers_[i];
        widths_[i] = 1.0 / (dc * dc);
    }
    widths_[N - 1] = widths_[N - 2];
    weights_ = MatrixXd::Zero(cfg_.dims, N);
}

void DmpModel::setWeights(const MatrixXd& W)
{
    if (W.rows() != cfg_.dims || W.cols() != cfg_.nBasis) {
        throw std::invalid_argument("setWeights: expected " + std::to_string(cfg_.dims) + "x" +
                                    std::to_string(cfg_.nBasis) + " weight matrix");
    }
    weights_ = W;
}

double DmpModel::canonical(double t) const
{
    return std::exp(-cfg_.alphaS * t / cfg_.tau);
}

VectorXd DmpModel::activations(double s) const
{
    const int N = cfg_.nBasis;
    VectorXd phi(N);
    for (int i = 0; i < N; ++i) {
        const double d = s - centers_[i];
        phi[i] = std::exp(-widths_[i] * d * d);
    }
    const double denom = phi.sum();
    if (denom < 1e-300) {
        throw std::runtime_error("dmp forcing: basis support underflow at s = " + std::to_string(s));
    }
    return phi * (s / denom);
}

VectorXd DmpModel::forcing(double s) const
{
    return weights_ * activations(s);
}

DmpRollout DmpModel::rollout(const VectorXd& xi, const VectorXd& xg, double dt, double T) const
{
    const int n = cfg_.dims;
    if (xi.size() != n || xg.size() != n) {
        throw std::invalid_argument("rollout: endpoint dimension mismatch");
    }
    if (!(dt > 0.0) || !(T > 0.0)) {
        throw std::invalid_argument("rollout: dt and T must be > 0");
    }

    const VectorXd scale = xg - xi;
    const auto deriv = [&](double t, const VectorXd& x, const VectorXd& z,
                           VectorXd& dx, VectorXd& dz) {
        const VectorXd f = forcing(canonical(t));
        dx = z / cfg_.tau;
        dz = (cfg_.alphaZ * (cfg_.betaZ * (xg - x) - z) + scale.cwiseProduct(f)) / cfg_.tau;
    };

    const auto steps = static_cast<int>(std::llround(T / dt));
    DmpRollout out;
    out.dt = dt;
    out.x.resize(steps + 1, n);
    out.xd.resize(steps + 1, n);

    VectorXd x = xi;
    VectorXd z = VectorXd::Zero(n);
    VectorXd k1x(n), k1z(n), k2x(n), k2z(n), k3x(n), k3z(n), k4x(n), k4z(n);
    out.x.row(0) = x.transpose();
    out.xd.row(0) = (z / cfg_.tau).transpose();

    for (int k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        deriv(t, x, z, k1x, k1z);
        deriv(t + 0.5 * dt, x + 0.5 * dt * k1x, z + 0.5 * dt * k1z, k2x, k2z);
        deriv(t + 0.5 * dt, x + 0.5 * dt * k2x, z + 0.5 * dt * k2z, k3x, k3z);
        deriv(t + dt, x + dt * k3x, z + dt * k3z, k4x, k4z);
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        z += dt / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
        if (!x.allFinite() || !z.allFinite()) {
            throw std::runtime_error("dmp rollout diverged at step " + std::to_string(k + 1));
        }
        out.x.row(k + 1) = x.transpose();
        out.xd.row(k + 1) = (z / cfg_.tau).transpose();
    }
    return out;
}

namespace {

// Gaussian-weighted moving average, window in seconds, sigma = window/5,
// kernel truncated at +-window/2 with renormalization.
MatrixXd gaussianSmooth(const MatrixXd& signal, double rate, double window)
{
    const int P = static_cast<int>(signal.rows());
    const double sigma = window / 5.0;
    const int halfSamples = static_cast<int>(std::floor(0.5 * window * rate));
    if (halfSamples < 1 || sigma <= 0.0) {
        return signal;
    }
    VectorXd kernel(2 * halfSamples + 1);
    for (int k = -halfSamples; k <= halfSamples; ++k) {
        const double dt = static_cast<double>(k) / rate;
        kernel[k + halfSamples] = std::exp(-0.5 * dt * dt / (sigma * sigma));
    }
    MatrixXd out(P, signal.cols());
    for (int j = 0; j < P; ++j) {
        const int lo = std::max(0, j - halfSamples);
        const int hi = std::min(P - 1, j + halfSamples);
        double wsum = 0.0;
        Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(signal.cols());
        for (int k = lo; k <= hi; ++k) {
            const double w = kernel[k - j + halfSamples];
            wsum += w;
            acc += w * signal.row(k);
        }
        out.row(j) = acc / wsum;
    }
    return out;
}

MatrixXd forwardDiff(const MatrixXd& signal, double rate)
{
    const int P = static_cast<int>(signal.rows());
    MatrixXd out(P, signal.cols());
    for (int j = 0; j + 1 < P; ++j) {
        out.row(j) = (signal.row(j + 1) - signal.row(j)) * rate;
    }
    out.row(P - 1) = out.row(P - 2);
    return out;
}

}  // namespace

Demonstration preprocessDemo(const MatrixXd& positions, double rate, double window)
{
    const int P = static_cast<int>(positions.rows());
    if (P < 3) {
        throw std::invalid_argument("preprocessDemo: need >= 3 samples, got " + std::to_string(P));
    }
    if (!(rate > 0.0)) {
        throw std::invalid_argument("preprocessDemo: rate must be > 0");
    }
    const MatrixXd vel = forwardDiff(positions, rate);
    const MatrixXd acc = forwardDiff(vel, rate);

    Demonstration demo;
    demo.pos = gaussianSmooth(positions, rate, window);
    demo.vel = gaussianSmooth(vel, rate, window);
    demo.acc = gaussianSmooth(acc, rate, window);
    demo.times.resize(P);
    for (int j = 0; j < P; ++j) {
        demo.times[j] = static_cast<double>(j) / rate;
    }
    return demo;
}

namespace {

// A (N x P) of basis activations and B (n x P) of scaled target forces.
void regressionMatrices(const Demonstration& demo, const DmpConfig& cfg,
                        MatrixXd& A, MatrixXd& B)
{
    const int P = demo.samples();
    const int n = demo.dims();
    if (P < 3) throw std::invalid_argument("imitation: need >= 3 samples");
    if (n != cfg.dims) throw std::invalid_argument("imitation: config dims do not match demo");

    const VectorXd xi = demo.pos.row(0).transpose();
    const VectorXd xg = demo.pos.row(P - 1).transpose();
    for (int d = 0; d < n; ++d) {
        if (std::abs(xg[d] - xi[d]) <= 1e-9) {
            throw std::invalid_argument("imitation: degenerate dimension " + std::to_string(d) +
                                        " (goal equals initial position)");
        }
    }

    DmpModel model(cfg);
    const double t0 = demo.times[0];
    A.resize(cfg.nBasis, P);
    B.resize(n, P);
    for (int j = 0; j < P; ++j) {
        A.col(j) = model.activations(model.canonical(demo.times[j] - t0));
        const VectorXd b = cfg.tau * cfg.tau * demo.acc.row(j).transpose() +
                           cfg.alphaZ * cfg.tau * demo.vel.row(j).transpose() +
                           cfg.alphaZ * cfg.betaZ * (demo.pos.row(j).transpose() - xg);
        B.col(j) = (xg - xi).cwiseInverse().cwiseProduct(b);
    }
}

}  // namespace

MatrixXd imitationLlsq(const Demonstration& demo, const DmpConfig& cfg)
{
    MatrixXd A, B;
    regressionMatrices(demo, cfg, A, B);

    MatrixXd G = A * A.transpose();
    const double ridge = 1e-8 * G.trace() / static_cast<double>(cfg.nBasis);
    G.diagonal().array() += ridge;

    Eigen::LDLT<MatrixXd> solver(G);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("imitation: normal equations are not solvable");
    }
    MatrixXd W = solver.solve(A * B.transpose()).transpose();
    // One defect-correction pass removes the first-order ridge bias, so the
    // result minimizes the plain Frobenius residual to solver precision.
    W += solver.solve(A * (B - W * A).transpose()).transpose();
    if (!W.allFinite()) {
        throw std::runtime_error("imitation: regression produced non-finite weights");
    }
    return W;
}

double imitationResidual(const Demonstration& demo, const DmpConfig& cfg, const MatrixXd& W)
{
    MatrixXd A, B;
    regressionMatrices(demo, cfg, A, B);
    return (W * A - B).norm();
}

}  // namespace eda
