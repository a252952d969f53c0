#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "netmatch/graph.hpp"

namespace netmatch {

/// Discrete-time linear system x_{k+1} = A x_k + v_k, y_k = C x_k + w_k on a
/// graph, with isotropic noise variances.
struct LinearSystem {
    Eigen::MatrixXd A;
    Eigen::MatrixXd C;
    std::vector<NodeId> measured;
    double process_variance = 0.02;
    double measurement_variance = 0.02;
    double rho_target = 1.2;

    std::size_t states() const { return static_cast<std::size_t>(A.rows()); }
};

/// Diagonal of A. Random draws an independent self-weight per node from the
/// same distribution as the link weights, then the whole matrix is scaled to
/// the target radius. Zero leaves the diagonal empty. Uniform puts the fixed
/// `self_weight` on every diagonal entry and scales only the link weights.
enum class DiagonalPolicy { Random, Zero, Uniform };

std::string_view to_string(DiagonalPolicy policy);
DiagonalPolicy parse_diagonal_policy(std::string_view text);

struct SystemOptions {
    double rho_target = 1.2;
    double process_variance = 0.02;
    double measurement_variance = 0.02;
    DiagonalPolicy diagonal = DiagonalPolicy::Random;
    /// Used by DiagonalPolicy::Uniform; must satisfy |self_weight| < rho_target.
    double self_weight = 1.1;
    /// Weights are uniform on [-1, -zero_gap] U [zero_gap, 1].
    double zero_gap = 0.05;
};

/// Random weighted system on the support of g (plus the diagonal chosen by
/// options.diagonal), measuring the nodes in `measured` with random nonzero
/// gains. An empty measured set yields a 0 x n output matrix.
LinearSystem build_system(const Graph& g, const std::vector<NodeId>& measured,
                          std::uint64_t rng_seed, const SystemOptions& options = {});

/// max |eigenvalue| of a square matrix. Throws std::runtime_error if the
/// eigen solver fails to converge.
double spectral_radius(const Eigen::MatrixXd& a);

struct KalmanOptions {
    std::size_t horizon = 200;
    std::size_t trials = 50;
    std::uint64_t rng_seed = 0;
    /// Initial state and prior covariance are N(0, initial_variance * I).
    double initial_variance = 1.0;
    /// Track the smallest eigenvalue of the symmetrised error covariance.
    bool check_covariance = false;
};

struct MseeTrace {
    /// msee[k] is the trial-averaged mean squared error after step k+1.
    std::vector<double> msee;
    std::uint64_t rng_seed = 0;
    std::vector<NodeId> measured;
    double rho_target = 0.0;
    /// Smallest covariance eigenvalue seen (only with check_covariance).
    double min_covariance_eigenvalue = 0.0;
    /// Steps where the innovation covariance needed diagonal jitter.
    std::size_t jitter_steps = 0;

    double window_mean(double begin_fraction, double end_fraction) const;
    /// Final 10% window mean over first 10% window mean.
    double growth_ratio() const;
    double final_window_mean() const { return window_mean(0.9, 1.0); }
};

/// Monte-Carlo Kalman filtering with the time-varying Riccati recursion.
MseeTrace run_kalman(const LinearSystem& sys, const KalmanOptions& options);

/// `step,msee` CSV preceded by a `#` line recording seed, q and rho.
std::string format_msee_csv(const MseeTrace& trace);

}  // namespace netmatch
