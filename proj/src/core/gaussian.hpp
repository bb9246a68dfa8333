#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "scenario.hpp"

namespace qhet::gaussian {

// Quadrature ordering is (x1, p1, ..., xN, pN) with x = (a + a†)/√2, so the
// vacuum covariance is I/2 and [x, p] = i. The anomalous moments reported by
// mode_moments() carry the field-envelope sign convention (each positive-
// frequency field component contributes a factor i to its mode amplitude),
// which is what the photocurrent correlation functions are built from.

struct GaussianState {
  int n_modes = 0;
  Eigen::VectorXd mean;  // length 2N
  Eigen::MatrixXd cov;   // 2N x 2N, symmetric
};

struct SymplecticTransform {
  Eigen::MatrixXd matrix;
  std::string label;
  bool is_symplectic(double tol = 1e-12) const;
};

struct ModeMoments {
  double n_sig = 0.0;                         // <Δb_s† Δb_s>
  double n_img = 0.0;                         // <Δb_i† Δb_i>
  std::complex<double> m_cross{0.0, 0.0};     // <Δb_s Δb_i>
  std::complex<double> m_self_sig{0.0, 0.0};  // <Δb_s Δb_s>
};

// Mean and variance of the cos(Ωt - Δθ) and sin(Ωt - Δθ) beat quadratures
// of the differential photocurrent, in units where one vacuum mode
// contributes 1/2 per quadrature.
struct BeatStatistics {
  double cos_mean = 0.0;
  double sin_mean = 0.0;
  double cos_var = 0.0;
  double sin_var = 0.0;
};

// Standard symplectic form J in the (x1,p1,...) ordering.
Eigen::MatrixXd symplectic_form(int n_modes);

GaussianState vacuum_state(int n_modes);

// Shifts the mode mean by (√2 A cos φ, √2 A sin φ); covariance unchanged.
GaussianState displace(const GaussianState& s, int mode, double amp_mag,
                       double phase);

// b_a = a_a cosh r + a_b† sinh r, b_b = a_a† sinh r + a_b cosh r.
SymplecticTransform two_mode_squeeze_transform(int n_modes, double r,
                                               int mode_a, int mode_b);

GaussianState apply_transform(const SymplecticTransform& t,
                              const GaussianState& s);

GaussianState two_mode_squeeze(const GaussianState& s, double r, int mode_a,
                               int mode_b);

// Beamsplitter model of efficiency: mean *= √q, mode block -> q*block +
// (1-q)/2 * I, cross blocks *= √q.
GaussianState loss_channel(const GaussianState& s, int mode, double q);

ModeMoments mode_moments(const GaussianState& s, int mode_a, int mode_b);

BeatStatistics heterodyne_beat_statistics(const GaussianState& s,
                                          const Scenario& sc);

// Detection-chain state for a scenario: signal displaced at phase
// delta_theta, two-mode squeezed by r against the image vacuum, then (when
// with_loss) detector loss q on both modes.
GaussianState prepare_scenario_state(const Scenario& sc, bool with_loss = true);

// Smallest eigenvalue of cov + (i/2) J; physical states give >= 0 up to
// rounding.
double min_uncertainty_eigenvalue(const GaussianState& s);

// Debug dump: {"n_modes":..,"mean":[..],"cov":[.. row-major ..]}.
std::string state_to_json(const GaussianState& s);

}  // namespace qhet::gaussian
