#pragma once

// Divisor classes on X = P(F*G'), written (a,b;c) for pi*O_Y(a,b) (x) O_pi(c).

#include <cstdint>
#include <string>
#include <vector>

namespace frobcoh {

struct PicClass {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  PicClass operator+(const PicClass& o) const { return {a + o.a, b + o.b, c + o.c}; }
  PicClass operator-(const PicClass& o) const { return {a - o.a, b - o.b, c - o.c}; }
  PicClass operator-() const { return {-a, -b, -c}; }
  PicClass operator*(std::int64_t k) const { return {k * a, k * b, k * c}; }
  bool operator==(const PicClass&) const = default;

  bool from_base() const { return c == 0; }
  std::string to_string() const;
};

struct RuleStep {
  std::string rule;
  std::string statement;
  PicClass value;
};

struct Derivation {
  PicClass value;
  std::vector<RuleStep> trace;
  int dim_X = 0;
  int dim_Y = 0;
};

int dim_X(int n);
int dim_Y(int n);

/// Adjunction for Y in |O(1,1)| on P^n x P^n.  Throws Error(InvalidParams) for n < 2.
Derivation omega_Y(int n);

/// Determinants along the defining sequences, then the projective-bundle canonical
/// class.  Throws Error(InvalidParams) unless p is prime and p >= n-1 >= 2.
Derivation omega_X(std::uint32_t p, int n);
/// (p-n, p(n-2)-n; -n+1).
PicClass omega_X_closed_form(std::uint32_t p, int n);

/// Matches (1,1;q) with q > 0.  Only the shape is checked; very ampleness of that
/// family is taken from the literature.
bool very_ample_pattern(const PicClass& c);
extern const char* const kVeryAmpleCitation;

struct FanoWitness {
  bool holds = false;
  PicClass anticanonical;
  Derivation omega;
};

FanoWitness fano_witness(std::uint32_t p, int n);

}  // namespace frobcoh
