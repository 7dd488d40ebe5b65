#include "nmslab/feedback.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "nmslab/errors.hpp"

namespace nmslab {

FeedbackChain FeedbackChain::lossless(Real r, Real r_d) {
  FeedbackChain fc;
  fc.r = r;
  fc.t = std::sqrt(1.0 - r * r);
  fc.r_d = r_d;
  fc.t_d = std::sqrt(1.0 - r_d * r_d);
  return fc;
}

FeedbackChain FeedbackChain::small_loss(Real r, Real gamma) {
  FeedbackChain fc;
  fc.r = r;
  fc.t = std::sqrt(1.0 - r * r);
  fc.r_d = 1.0 - gamma;
  fc.t_d = std::sqrt(2.0 * gamma);
  return fc;
}

ChainFields chain_solve(const FeedbackChain& fc, Complex a_in) {
  // Field relations with the hard-wired phases e^{ikL1} = i, e^{ikL2} = -1:
  //   a'_in  = i t a_in + i r a'_out        (splitter into the loop)
  //   a'_out = i r_d a'_in - i t_d a2       (fixed mirror, outgoing side)
  //   a2     = t_d a'_in + r_d a2           (build-up; a2 = -a1)
  //   a_out  = t a'_out - r a_in            (splitter out of the loop)
  const Complex denom =
      Complex(1.0 - fc.r_d) * Complex(1.0 + fc.r * fc.r_d) -
      Complex(fc.r * fc.t_d * fc.t_d);
  if (std::abs(Complex(1.0 + fc.r * fc.r_d)) < 1e-12 ||
      std::abs(denom) < 1e-12)
    throw SingularChainError("feedback chain singular: resonant lossless trap");

  Eigen::Matrix3cd lhs;
  lhs << 1.0, -im_unit * fc.r, 0.0,              //
      -im_unit * fc.r_d, 1.0, im_unit * fc.t_d,  //
      -fc.t_d, 0.0, 1.0 - fc.r_d;
  Eigen::Vector3cd rhs(im_unit * fc.t * a_in, 0.0, 0.0);
  const Eigen::Vector3cd sol = lhs.fullPivLu().solve(rhs);

  ChainFields f;
  f.in_prime = sol(0);
  f.out_prime = sol(1);
  f.inner_back = sol(2);
  f.inner_fwd = -f.inner_back;
  f.out = fc.t * f.out_prime - fc.r * a_in;
  return f;
}

}  // namespace nmslab
