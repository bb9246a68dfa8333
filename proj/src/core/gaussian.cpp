#include "gaussian.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"
#include "textutil.hpp"

namespace qhet::gaussian {

namespace {

void check_mode(const GaussianState& s, int mode, const char* what) {
  if (mode < 0 || mode >= s.n_modes)
    throw IndexError(std::string(what) + ": mode index " +
                     std::to_string(mode) + " out of range for " +
                     std::to_string(s.n_modes) + " modes");
}

}  // namespace

bool SymplecticTransform::is_symplectic(double tol) const {
  const int dim = static_cast<int>(matrix.rows());
  if (dim % 2 != 0 || matrix.cols() != dim) return false;
  Eigen::MatrixXd j = symplectic_form(dim / 2);
  Eigen::MatrixXd res = matrix * j * matrix.transpose() - j;
  return res.cwiseAbs().maxCoeff() <= tol;
}

Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int m = 0; m < n_modes; ++m) {
    j(2 * m, 2 * m + 1) = 1.0;
    j(2 * m + 1, 2 * m) = -1.0;
  }
  return j;
}

GaussianState vacuum_state(int n_modes) {
  if (n_modes < 1)
    throw DomainError("vacuum_state: n_modes must be >= 1, got " +
                      std::to_string(n_modes));
  GaussianState s;
  s.n_modes = n_modes;
  s.mean = Eigen::VectorXd::Zero(2 * n_modes);
  s.cov = 0.5 * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  return s;
}

GaussianState displace(const GaussianState& s, int mode, double amp_mag,
                       double phase) {
  check_mode(s, mode, "displace");
  if (amp_mag < 0.0)
    throw DomainError("displace: amp_mag must be >= 0, got " +
                      fmt_g17(amp_mag));
  GaussianState out = s;
  const double root2 = std::sqrt(2.0);
  out.mean(2 * mode) += root2 * amp_mag * std::cos(phase);
  out.mean(2 * mode + 1) += root2 * amp_mag * std::sin(phase);
  return out;
}

SymplecticTransform two_mode_squeeze_transform(int n_modes, double r,
                                               int mode_a, int mode_b) {
  if (mode_a == mode_b)
    throw IndexError("two_mode_squeeze: modes must be distinct");
  if (mode_a < 0 || mode_a >= n_modes || mode_b < 0 || mode_b >= n_modes)
    throw IndexError("two_mode_squeeze: mode index out of range");
  if (r < 0.0)
    throw DomainError("two_mode_squeeze: r must be >= 0, got " + fmt_g17(r));

  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  SymplecticTransform t;
  t.matrix = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  const int xa = 2 * mode_a, pa = 2 * mode_a + 1;
  const int xb = 2 * mode_b, pb = 2 * mode_b + 1;
  // x_a' =  ch x_a + sh x_b     p_a' =  ch p_a - sh p_b
  // x_b' =  sh x_a + ch x_b     p_b' = -sh p_a + ch p_b
  t.matrix(xa, xa) = ch;
  t.matrix(xa, xb) = sh;
  t.matrix(pa, pa) = ch;
  t.matrix(pa, pb) = -sh;
  t.matrix(xb, xa) = sh;
  t.matrix(xb, xb) = ch;
  t.matrix(pb, pa) = -sh;
  t.matrix(pb, pb) = ch;
  std::ostringstream label;
  label << "two_mode_squeeze(r=" << fmt_g17(r) << ", " << mode_a << ", "
        << mode_b << ")";
  t.label = label.str();
  return t;
}

GaussianState apply_transform(const SymplecticTransform& t,
                              const GaussianState& s) {
  if (t.matrix.rows() != 2 * s.n_modes || t.matrix.cols() != 2 * s.n_modes)
    throw ShapeError("apply_transform: transform is " +
                     std::to_string(t.matrix.rows()) + "x" +
                     std::to_string(t.matrix.cols()) + " but state has " +
                     std::to_string(s.n_modes) + " modes");
  GaussianState out;
  out.n_modes = s.n_modes;
  out.mean = t.matrix * s.mean;
  out.cov = t.matrix * s.cov * t.matrix.transpose();
  return out;
}

GaussianState two_mode_squeeze(const GaussianState& s, double r, int mode_a,
                               int mode_b) {
  return apply_transform(two_mode_squeeze_transform(s.n_modes, r, mode_a, mode_b),
                         s);
}

GaussianState loss_channel(const GaussianState& s, int mode, double q) {
  check_mode(s, mode, "loss_channel");
  if (q <= 0.0 || q > 1.0)
    throw DomainError("loss_channel: q must lie in (0, 1], got " + fmt_g17(q));
  GaussianState out = s;
  const double rq = std::sqrt(q);
  const int x = 2 * mode, p = 2 * mode + 1;
  out.mean(x) *= rq;
  out.mean(p) *= rq;
  // Scaling the mode's rows then columns by √q multiplies the diagonal block
  // by q and every cross block by √q.
  out.cov.row(x) *= rq;
  out.cov.row(p) *= rq;
  out.cov.col(x) *= rq;
  out.cov.col(p) *= rq;
  out.cov(x, x) += 0.5 * (1.0 - q);
  out.cov(p, p) += 0.5 * (1.0 - q);
  return out;
}

ModeMoments mode_moments(const GaussianState& s, int mode_a, int mode_b) {
  check_mode(s, mode_a, "mode_moments");
  check_mode(s, mode_b, "mode_moments");
  if (mode_a == mode_b) throw IndexError("mode_moments: modes must be distinct");

  const int xa = 2 * mode_a, pa = 2 * mode_a + 1;
  const int xb = 2 * mode_b, pb = 2 * mode_b + 1;
  const Eigen::MatrixXd& v = s.cov;

  ModeMoments m;
  // Symmetric-ordered quadrature covariances to normal-ordered amplitude
  // moments: the -1/2 per quadrature pair is the commutator correction.
  m.n_sig = 0.5 * (v(xa, xa) + v(pa, pa) - 1.0);
  m.n_img = 0.5 * (v(xb, xb) + v(pb, pb) - 1.0);
  // Field-envelope sign: <Δb Δb>-type moments pick up i² = -1 relative to
  // the bare quadrature expression.
  m.m_cross = -std::complex<double>(0.5 * (v(xa, xb) - v(pa, pb)),
                                    0.5 * (v(xa, pb) + v(pa, xb)));
  m.m_self_sig =
      -std::complex<double>(0.5 * (v(xa, xa) - v(pa, pa)), v(xa, pa));
  return m;
}

BeatStatistics heterodyne_beat_statistics(const GaussianState& s,
                                          const Scenario& sc) {
  if (s.n_modes != 2)
    throw ShapeError("heterodyne_beat_statistics: state must have exactly 2 "
                     "modes (signal, image), got " +
                     std::to_string(s.n_modes));
  // The differential photocurrent expands as C cos(Ωt-Δθ) + S sin(Ωt-Δθ)
  // with C, S linear forms over the signal/image quadratures.
  const double phi1 = sc.theta_l + sc.delta_theta;
  const double phi2 = sc.theta_l - sc.delta_theta;
  Eigen::Vector4d vc(std::cos(phi1), std::sin(phi1), std::cos(phi2),
                     std::sin(phi2));
  Eigen::Vector4d vs(-std::sin(phi1), std::cos(phi1), std::sin(phi2),
                     -std::cos(phi2));
  BeatStatistics b;
  b.cos_mean = vc.dot(s.mean);
  b.sin_mean = vs.dot(s.mean);
  b.cos_var = vc.dot(s.cov * vc);
  b.sin_var = vs.dot(s.cov * vs);
  return b;
}

GaussianState prepare_scenario_state(const Scenario& sc, bool with_loss) {
  GaussianState s = vacuum_state(2);
  s = displace(s, 0, sc.alpha_s_mag, sc.delta_theta);
  s = two_mode_squeeze(s, sc.r, 0, 1);
  if (with_loss) {
    s = loss_channel(s, 0, sc.q);
    s = loss_channel(s, 1, sc.q);
  }
  return s;
}

double min_uncertainty_eigenvalue(const GaussianState& s) {
  Eigen::MatrixXcd h = s.cov.cast<std::complex<double>>();
  Eigen::MatrixXd j = symplectic_form(s.n_modes);
  h += std::complex<double>(0.0, 0.5) * j.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

std::string state_to_json(const GaussianState& s) {
  std::ostringstream out;
  out << "{\"n_modes\":" << s.n_modes << ",\"mean\":[";
  for (int i = 0; i < s.mean.size(); ++i) {
    if (i) out << ",";
    out << fmt_g17(s.mean(i));
  }
  out << "],\"cov\":[";
  for (int i = 0; i < s.cov.rows(); ++i)
    for (int k = 0; k < s.cov.cols(); ++k) {
      if (i || k) out << ",";
      out << fmt_g17(s.cov(i, k));
    }
  out << "]}";
  return out.str();
}

}  // namespace qhet::gaussian
