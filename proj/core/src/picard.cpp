#include "frobcoh/picard.hpp"

#include "frobcoh/bigraded_ring.hpp"
#include "frobcoh/error.hpp"

namespace frobcoh {

const char* const kVeryAmpleCitation =
    "pi*O_Y(1,1) (x) O_pi(q) is very ample for q > 0 (literature result, not machine-checked)";

std::string PicClass::to_string() const {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(c) + ")";
}

int dim_X(int n) { return 3 * n - 3; }
int dim_Y(int n) { return 2 * n - 1; }

Derivation omega_Y(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidParams, "omega_Y needs n >= 2, got " + std::to_string(n));
  Derivation d;
  d.dim_X = dim_X(n);
  d.dim_Y = dim_Y(n);
  const PicClass omega_W{-(n + 1), -(n + 1), 0};
  d.trace.push_back({"canonical of P^n x P^n", "omega_W = O(-n-1,-n-1)", omega_W});
  const PicClass ideal{-1, -1, 0};
  d.trace.push_back({"ideal of a (1,1) divisor", "I_Y = O_W(-1,-1)", ideal});
  d.value = omega_W - ideal;
  d.trace.push_back({"adjunction", "omega_Y = omega_W (x) I_Y^(-1)", d.value});
  return d;
}

PicClass omega_X_closed_form(std::uint32_t p, int n) {
  const auto pp = static_cast<std::int64_t>(p);
  return {pp - n, pp * (n - 2) - n, -n + 1};
}

Derivation omega_X(std::uint32_t p, int n) {
  (void)RingParams::make(p, n);
  const auto pp = static_cast<std::int64_t>(p);
  Derivation d = omega_Y(n);
  const PicClass omega_y = d.value;

  // 0 -> F*B -> O^(n+1) -> O(0,p) -> 0
  const PicClass det_B = PicClass{} - PicClass{0, pp, 0};
  d.trace.push_back({"det additivity", "det F*B = det O^(n+1) - (0,p)", det_B});
  // 0 -> O(-p,0) -> F*B -> F*G -> 0, rank F*G = n-1
  const PicClass det_G = det_B - PicClass{-pp, 0, 0};
  d.trace.push_back({"det additivity", "det F*G = det F*B - (-p,0)", det_G});
  const std::int64_t rank_G = n - 1;
  const PicClass det_Gp = det_G + PicClass{0, pp, 0} * rank_G;
  d.trace.push_back({"det of a twist", "det F*G' = det (F*G (x) O(0,p)) = det F*G + (n-1)(0,p)", det_Gp});
  const PicClass relative = PicClass{0, 0, -rank_G} + det_Gp;
  d.trace.push_back({"projective bundle canonical", "omega_pi = O_pi(-(n-1)) (x) pi*det F*G'", relative});
  d.value = relative + omega_y;
  d.trace.push_back({"composition", "omega_X = omega_pi (x) pi*omega_Y", d.value});
  return d;
}

bool very_ample_pattern(const PicClass& c) { return c.a == 1 && c.b == 1 && c.c > 0; }

FanoWitness fano_witness(std::uint32_t p, int n) {
  FanoWitness w;
  w.omega = omega_X(p, n);
  w.anticanonical = -w.omega.value;
  w.holds = very_ample_pattern(w.anticanonical);
  return w;
}

}  // namespace frobcoh
