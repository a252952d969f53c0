#include "netmatch/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "netmatch/rng.hpp"

namespace netmatch {

double spectral_radius(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("spectral_radius: matrix is not square");
    }
    if (a.rows() == 0) return 0.0;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("spectral_radius: QR iteration did not converge for a " +
                                 std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                 " matrix");
    }
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

/// Smallest t >= 0 with max_i |shift + t * mu_i| = target, by bisection.
/// The left side is a maximum of convex functions of t that starts below the
/// target, so the crossing is unique.
double scale_for_radius(const Eigen::VectorXcd& mu, double shift, double target) {
    const double radius = mu.cwiseAbs().maxCoeff();
    auto f = [&](double t) {
        double best = 0.0;
        for (Eigen::Index i = 0; i < mu.size(); ++i) {
            best = std::max(best, std::abs(std::complex<double>(shift, 0.0) + t * mu[i]));
        }
        return best;
    };
    double lo = 0.0;
    double hi = (target + std::abs(shift)) / radius;
    for (int iter = 0; iter < 200 && hi - lo > 1e-16 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::string_view to_string(DiagonalPolicy policy) {
    switch (policy) {
        case DiagonalPolicy::Random: return "random";
        case DiagonalPolicy::Zero: return "zero";
        case DiagonalPolicy::Uniform: return "uniform";
    }
    return "random";
}

DiagonalPolicy parse_diagonal_policy(std::string_view text) {
    if (text == "random") return DiagonalPolicy::Random;
    if (text == "zero") return DiagonalPolicy::Zero;
    if (text == "uniform") return DiagonalPolicy::Uniform;
    throw std::invalid_argument("unknown diagonal policy '" + std::string(text) +
                                "' (expected random, zero or uniform)");
}

LinearSystem build_system(const Graph& g, const std::vector<NodeId>& measured,
                          std::uint64_t rng_seed, const SystemOptions& options) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    if (options.rho_target <= 0.0) {
        throw std::invalid_argument("build_system: rho_target must be positive");
    }
    const bool uniform = options.diagonal == DiagonalPolicy::Uniform;
    if (uniform && std::abs(options.self_weight) >= options.rho_target) {
        throw std::invalid_argument("build_system: |self_weight| must be below rho_target");
    }
    for (NodeId i : measured) {
        if (i >= g.node_count()) throw std::invalid_argument("build_system: measured id out of range");
    }

    Rng rng(rng_seed);
    auto signed_weight = [&](double lo, double hi) {
        const double magnitude = rng.uniform(lo, hi);
        return rng.uniform() < 0.5 ? -magnitude : magnitude;
    };

    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (NodeId i = 0; i < g.node_count(); ++i) {
        if (options.diagonal == DiagonalPolicy::Random) w(i, i) = signed_weight(options.zero_gap, 1.0);
        for (NodeId j : g.neighbors(i)) {
            w(i, j) = signed_weight(options.zero_gap, 1.0);
        }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(w, false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("build_system: eigen solver failed on the weight matrix");
    }
    const Eigen::VectorXcd mu = solver.eigenvalues();
    if (mu.size() == 0 || mu.cwiseAbs().maxCoeff() <= 1e-12) {
        throw std::invalid_argument("build_system: weight matrix has zero spectral radius");
    }
    const double shift = uniform ? options.self_weight : 0.0;
    const double t = scale_for_radius(mu, shift, options.rho_target);

    LinearSystem sys;
    sys.A = t * w;
    if (uniform) sys.A.diagonal().setConstant(shift);
    sys.C = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(measured.size()), n);
    for (std::size_t r = 0; r < measured.size(); ++r) {
        sys.C(static_cast<Eigen::Index>(r), measured[r]) = signed_weight(0.5, 1.5);
    }
    sys.measured = measured;
    sys.process_variance = options.process_variance;
    sys.measurement_variance = options.measurement_variance;
    sys.rho_target = options.rho_target;
    return sys;
}

double MseeTrace::window_mean(double begin_fraction, double end_fraction) const {
    if (msee.empty()) return 0.0;
    const double len = static_cast<double>(msee.size());
    auto begin = static_cast<std::size_t>(std::floor(begin_fraction * len));
    auto end = static_cast<std::size_t>(std::ceil(end_fraction * len));
    end = std::min(end, msee.size());
    if (begin >= end) begin = end - 1;
    double sum = 0.0;
    for (std::size_t k = begin; k < end; ++k) sum += msee[k];
    return sum / static_cast<double>(end - begin);
}

double MseeTrace::growth_ratio() const {
    const double first = window_mean(0.0, 0.1);
    const double last = window_mean(0.9, 1.0);
    if (first <= 0.0) return last > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    return last / first;
}

MseeTrace run_kalman(const LinearSystem& sys, const KalmanOptions& options) {
    if (options.horizon < 1 || options.trials < 1) {
        throw std::invalid_argument("run_kalman: horizon and trials must be at least 1");
    }
    const Eigen::Index n = sys.A.rows();
    const Eigen::Index q = sys.C.rows();
    if (sys.A.cols() != n || sys.C.cols() != n) {
        throw std::invalid_argument("run_kalman: inconsistent system dimensions");
    }
    const double sigma_v = std::sqrt(sys.process_variance);
    const double sigma_w = std::sqrt(sys.measurement_variance);
    const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd at = sys.A.transpose();

    MseeTrace trace;
    trace.msee.assign(options.horizon, 0.0);
    trace.rng_seed = options.rng_seed;
    trace.measured = sys.measured;
    trace.rho_target = sys.rho_target;
    trace.min_covariance_eigenvalue = std::numeric_limits<double>::infinity();

    Eigen::VectorXd x(n), estimate(n), noise_v(n), noise_w(q);
    Eigen::MatrixXd p(n, n), s(q, q), gain(n, q), joseph(n, n);

    for (std::size_t trial = 0; trial < options.trials; ++trial) {
        Rng rng(derive_seed(options.rng_seed, {trial}));
        const double sigma0 = std::sqrt(options.initial_variance);
        for (Eigen::Index i = 0; i < n; ++i) x[i] = sigma0 * rng.normal();
        estimate.setZero();
        p = options.initial_variance * identity;

        for (std::size_t k = 0; k < options.horizon; ++k) {
            for (Eigen::Index i = 0; i < n; ++i) noise_v[i] = sigma_v * rng.normal();
            for (Eigen::Index i = 0; i < q; ++i) noise_w[i] = sigma_w * rng.normal();
            x = sys.A * x + noise_v;
            const Eigen::VectorXd y = sys.C * x + noise_w;

            estimate = sys.A * estimate;
            p = sys.A * p * at;
            p.diagonal().array() += sys.process_variance;

            if (q > 0) {
                s = sys.C * p * sys.C.transpose();
                s.diagonal().array() += sys.measurement_variance;
                s = 0.5 * (s + s.transpose()).eval();
                Eigen::LLT<Eigen::MatrixXd> llt(s);
                if (llt.info() != Eigen::Success) {
                    // Round-off once P has grown large; escalate diagonal jitter
                    // relative to the magnitude of S.
                    ++trace.jitter_steps;
                    double jitter = 1e-12 * std::max(1.0, s.cwiseAbs().maxCoeff());
                    for (int attempt = 0; attempt < 8 && llt.info() != Eigen::Success; ++attempt) {
                        s.diagonal().array() += jitter;
                        llt.compute(s);
                        jitter *= 100.0;
                    }
                    if (llt.info() != Eigen::Success) {
                        throw std::runtime_error("run_kalman: innovation covariance is singular at step " +
                                                 std::to_string(k + 1));
                    }
                }
                // K = P C^T S^-1, computed as (S^-1 C P)^T since S and P are symmetric.
                gain = llt.solve(sys.C * p).transpose();
                estimate += gain * (y - sys.C * estimate);
                joseph = identity - gain * sys.C;
                p = joseph * p * joseph.transpose();
                p.noalias() += sys.measurement_variance * gain * gain.transpose();
            }
            p = 0.5 * (p + p.transpose()).eval();

            if (options.check_covariance) {
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(p, Eigen::EigenvaluesOnly);
                trace.min_covariance_eigenvalue =
                    std::min(trace.min_covariance_eigenvalue, eig.eigenvalues().minCoeff());
            }
            trace.msee[k] += (x - estimate).squaredNorm() / static_cast<double>(n);
        }
    }
    for (double& v : trace.msee) v /= static_cast<double>(options.trials);
    if (!options.check_covariance) trace.min_covariance_eigenvalue = 0.0;
    return trace;
}

std::string format_msee_csv(const MseeTrace& trace) {
    std::ostringstream out;
    out << "# seed=" << trace.rng_seed << ",q=" << trace.measured.size() << ",rho=" << trace.rho_target
        << '\n';
    out << "step,msee\n";
    char buf[64];
    for (std::size_t k = 0; k < trace.msee.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.10g", trace.msee[k]);
        out << (k + 1) << ',' << buf << '\n';
    }
    return out.str();
}

}  // namespace netmatch
