#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "causet/error.hpp"

namespace causet {

using Complex = std::complex<double>;

// Offer state resolved over a finite, complete, orthonormal absorber basis:
// amplitudes[i] = <X_i|Psi>.
struct OfferWave {
  std::vector<Complex> amplitudes;
  std::string emitter_tag;

  std::size_t size() const { return amplitudes.size(); }
  double norm_squared() const {
    double s = 0.0;
    for (const Complex& a : amplitudes) s += std::norm(a);
    return s;
  }
};

// Silent renormalization happens inside this band; beyond it the offer is rejected.
inline constexpr double kNormalizationTolerance = 1e-6;
inline constexpr double kWeightSumTolerance = 1e-9;
inline constexpr double kHermitianTolerance = 1e-12;

class WeightDistribution {
 public:
  explicit WeightDistribution(std::vector<double> weights) : weights_(std::move(weights)) {
    double sum = 0.0;
    for (double w : weights_) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw Error(ErrorCode::InvalidParameter, "weights must be finite and non-negative");
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > kWeightSumTolerance) {
      throw Error(ErrorCode::NotNormalized, "weights sum to " + std::to_string(sum));
    }
  }

  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }

 private:
  std::vector<double> weights_;
};

namespace detail {

inline double checked_norm_squared(const OfferWave& o) {
  const double n2 = o.norm_squared();
  if (o.amplitudes.empty() || !(std::abs(n2 - 1.0) <= kNormalizationTolerance)) {
    throw Error(ErrorCode::NotNormalized,
                "offer norm squared " + std::to_string(n2) + " is not 1 within tolerance");
  }
  return n2;
}

}  // namespace detail

// w_i = |a_i|^2, renormalized by the (near-unit) total.
inline WeightDistribution born_weights(const OfferWave& o) {
  const double n2 = detail::checked_norm_squared(o);
  std::vector<double> w;
  w.reserve(o.size());
  for (const Complex& a : o.amplitudes) w.push_back(std::norm(a) / n2);
  return WeightDistribution(std::move(w));
}

struct MixtureTerm {
  std::size_t index;  // projector |X_i><X_i|
  double weight;
};

// Pure |Psi><Psi| to the mixture sum_i <X_i|Psi><Psi|X_i> |X_i><X_i|. Each
// weight is formed as the product of the offer component and the absorber's
// conjugate response; zero-weight terms are kept.
inline std::vector<MixtureTerm> project_to_mixed(const OfferWave& o) {
  const double n2 = detail::checked_norm_squared(o);
  std::vector<MixtureTerm> out;
  out.reserve(o.size());
  for (std::size_t i = 0; i < o.size(); ++i) {
    const Complex offer = o.amplitudes[i];
    const Complex confirmation = std::conj(offer);
    out.push_back({i, (offer * confirmation).real() / n2});
  }
  return out;
}

// Inverse-CDF draw over the stored index order.
template <class Generator>
std::size_t actualize(const WeightDistribution& w, Generator& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= 0.0) continue;
    cumulative += w[i];
    last_positive = i;
    if (u < cumulative) return i;
  }
  // Rounding left u above the final cumulative sum.
  return last_positive;
}

class HermitianGenerator {
 public:
  explicit HermitianGenerator(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols()) {
      throw Error(ErrorCode::DimensionMismatch, "generator must be square");
    }
    for (Eigen::Index i = 0; i < matrix_.rows(); ++i) {
      for (Eigen::Index j = 0; j < matrix_.cols(); ++j) {
        if (std::abs(matrix_(i, j) - std::conj(matrix_(j, i))) > kHermitianTolerance) {
          throw Error(ErrorCode::NotHermitian, "H(" + std::to_string(i) + "," + std::to_string(j) +
                                                   ") differs from conj(H(" + std::to_string(j) +
                                                   "," + std::to_string(i) + "))");
        }
      }
    }
  }

  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  Eigen::MatrixXcd matrix_;
};

// U = exp(-iHt) with hbar = 1, from the spectral decomposition H = V diag(E) V^†.
inline Eigen::MatrixXcd propagator(const HermitianGenerator& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix());
  const Eigen::VectorXd& energies = solver.eigenvalues();
  Eigen::VectorXcd phases(energies.size());
  for (Eigen::Index k = 0; k < energies.size(); ++k) {
    phases(k) = std::exp(Complex(0.0, -energies(k) * t));
  }
  const Eigen::MatrixXcd& v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

inline OfferWave evolve(const OfferWave& o, const HermitianGenerator& h, double t) {
  if (h.dimension() != o.size()) {
    throw Error(ErrorCode::DimensionMismatch, "generator is " + std::to_string(h.dimension()) +
                                                  "-dimensional, offer has " +
                                                  std::to_string(o.size()) + " components");
  }
  const Eigen::Map<const Eigen::VectorXcd> psi(o.amplitudes.data(),
                                               static_cast<Eigen::Index>(o.size()));
  const Eigen::VectorXcd out = propagator(h, t) * psi;
  return OfferWave{std::vector<Complex>(out.data(), out.data() + out.size()), o.emitter_tag};
}

struct ElevationParams {
  double coupling = 1.0;
  double transition_probability = 1.0;

  void check() const {
    auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!unit(coupling) || !unit(transition_probability)) {
      throw Error(ErrorCode::InvalidParameter, "coupling and transition probability must lie in [0,1]");
    }
  }
};

// Probability that a virtual exchange is promoted to a real offer.
inline double elevation_probability(const ElevationParams& p) {
  p.check();
  return p.coupling * p.transition_probability;
}

}  // namespace causet
