#pragma once

#include "nmslab/types.hpp"

namespace nmslab {

// Static (zero-Fourier-frequency) field chain of the feedback network: a
// beam splitter (r, t) feeding a two-mirror cavity whose fixed mirror has
// amplitude coefficients (r_d, t_d) and whose movable mirror is totally
// reflecting. Propagation phases are hard-wired to e^{ikL1} = i between the
// splitter and the fixed mirror and e^{ikL2} = -1 for the intracavity
// round trip.
struct FeedbackChain {
  Real r = 0;    // beam-splitter amplitude reflectivity
  Real t = 0;    // beam-splitter transmissivity, +sqrt(1 - r^2)
  Real r_d = 0;  // fixed-mirror reflectivity
  Real t_d = 0;  // fixed-mirror transmissivity

  static FeedbackChain lossless(Real r, Real r_d);
  // Small transmission loss gamma = kappa * tau: r_d = 1 - gamma,
  // t_d = sqrt(2 gamma).
  static FeedbackChain small_loss(Real r, Real gamma);
};

// All five stationary field amplitudes of the chain for a unit-scale input.
struct ChainFields {
  Complex in_prime;   // field entering the fixed mirror from outside
  Complex out_prime;  // field leaving the fixed mirror toward the splitter
  Complex inner_fwd;  // a1, intracavity field running toward the movable mirror
  Complex inner_back; // a2, intracavity field running back (= -a1)
  Complex out;        // final network output after the splitter
};

// Solves the linear field relations. Throws SingularChainError when the
// chain denominator (1 - r)(1 - r_d)-type factor vanishes (perfectly
// resonant lossless trap).
ChainFields chain_solve(const FeedbackChain& fc, Complex a_in);

}  // namespace nmslab
