#ifndef EDA_DMP_HPP
#define EDA_DMP_HPP

#include <Eigen/Dense>

namespace eda {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Hyperparameters of a discrete DMP, everything except the weights.
// alphaS defaults to ln(100) so the phase reaches 0.01 at t = tau.
struct DmpConfig {
    int dims = 1;
    int nBasis = 30;
    double alphaS = 4.605170185988091;  // ln(100)
    double alphaZ = 25.0;
    double betaZ = 6.25;
    double tau = 1.0;
};

// Fixed-step rollout of the transformation system. Row j of x / xd holds
// the position / velocity at t = j * dt.
struct DmpRollout {
    double dt = 0.0;
    MatrixXd x;
    MatrixXd xd;

    double duration() const { return dt * static_cast<double>(x.rows() - 1); }
};

// Demonstration samples after preprocessing: P rows, one column per
// dimension. First/last rows define the initial and goal positions.
struct Demonstration {
    VectorXd times;
    MatrixXd pos;
    MatrixXd vel;
    MatrixXd acc;

    int samples() const { return static_cast<int>(pos.rows()); }
    int dims() const { return static_cast<int>(pos.cols()); }
};

// Discrete Dynamic Movement Primitive: exponential canonical system,
// normalized Gaussian forcing basis, and a critically-damped-style
// second-order transformation system.
class DmpModel {
public:
    // Builds centers c_i = exp(-alphaS (i-1)/(N-1)) and widths
    // h_i = 1/(c_{i+1} - c_i)^2 with h_N = h_{N-1}; weights start at zero.
    explicit DmpModel(const DmpConfig& cfg);

    const DmpConfig& config() const { return cfg_; }
    const VectorXd& centers() const { return centers_; }
    const VectorXd& widths() const { return widths_; }
    const MatrixXd& weights() const { return weights_; }
    void setWeights(const MatrixXd& W);

    // Closed-form phase s(t) = exp(-alphaS t / tau).
    double canonical(double t) const;

    // F_s(s) = W a(s), a_i = phi_i(s) s / sum_j phi_j(s).
    // Throws std::runtime_error if the basis support underflows.
    VectorXd forcing(double s) const;

    // Basis activations a(s) without the weight product.
    VectorXd activations(double s) const;

    // Integrates tau xdot = z, tau zdot = alphaZ (betaZ (xg - x) - z)
    //   + diag(xg - xi) F_s(s(t))
    // from x(0) = xi, z(0) = 0 with fixed-step RK4.
    DmpRollout rollout(const VectorXd& xi, const VectorXd& xg, double dt, double T) const;

private:
    DmpConfig cfg_;
    VectorXd centers_;
    VectorXd widths_;
    MatrixXd weights_;  // dims x nBasis
};

// Builds a demonstration from raw position samples: velocity and
// acceleration by first-order finite differences, then all three signals
// smoothed by a Gaussian-weighted moving average (window in seconds,
// truncated at the edges with weight renormalization).
Demonstration preprocessDemo(const MatrixXd& positions, double rate, double window = 0.165);

// Best-fit forcing weights by linear least squares, W* = B A' (A A')^-1,
// solved with a small ridge term via LDLT. Throws std::invalid_argument
// if a dimension has x_g = x_i (the diagonal scaling is singular there).
MatrixXd imitationLlsq(const Demonstration& demo, const DmpConfig& cfg);

// Frobenius residual ||W A - B||_F of the imitation regression.
double imitationResidual(const Demonstration& demo, const DmpConfig& cfg, const MatrixXd& W);

}  // namespace eda

#endif
