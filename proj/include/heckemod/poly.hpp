#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace heckemod {

// Exact integer coefficients. Every arithmetic step is overflow-checked;
// an overflow aborts the computation instead of wrapping.
using Coeff = long long;

inline Coeff chk_add(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("coefficient overflow (add)");
  return r;
}

inline Coeff chk_mul(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("coefficient overflow (mul)");
  return r;
}

// A monomial packs one exponent byte per variable, variable 0 in the most
// significant byte. This caps supported lattices at 8 variables and
// exponents below 256, which covers every rank within the configured cap.
using Mono = std::uint64_t;
constexpr int kMaxVars = 8;

inline int mono_exp(Mono m, int var) { return int((m >> (8 * (kMaxVars - 1 - var))) & 0xff); }

inline Mono mono_set(Mono m, int var, int e) {
  int shift = 8 * (kMaxVars - 1 - var);
  m &= ~(Mono(0xff) << shift);
  m |= Mono(e & 0xff) << shift;
  return m;
}

inline int mono_deg(Mono m) {
  int d = 0;
  while (m) {
    d += int(m & 0xff);
    m >>= 8;
  }
  return d;
}

inline Mono mono_mul(Mono a, Mono b) {
  for (int v = 0; v < kMaxVars; ++v)
    if (mono_exp(a, v) + mono_exp(b, v) > 0xff) throw std::overflow_error("monomial exponent overflow");
  return a + b;
}

inline bool mono_divides(Mono a, Mono b) {  // a | b
  for (int v = 0; v < kMaxVars; ++v)
    if (mono_exp(a, v) > mono_exp(b, v)) return false;
  return true;
}

inline Mono mono_div(Mono b, Mono a) { return b - a; }

// Graded lexicographic order, variable 0 dominant.
inline bool grlex_less(Mono a, Mono b) {
  int da = mono_deg(a), db = mono_deg(b);
  if (da != db) return da < db;
  return a < b;
}

struct GrlexDesc {
  bool operator()(Mono a, Mono b) const { return grlex_less(b, a); }
};

// Sparse multivariate polynomial over Z. Terms are kept in descending
// graded-lex order, so iteration starts at the leading term and printed
// output is deterministic.
class Poly {
 public:
  using Terms = std::map<Mono, Coeff, GrlexDesc>;

  Poly() = default;

  static Poly constant(Coeff c) {
    Poly p;
    if (c != 0) p.terms_[0] = c;
    return p;
  }
  static Poly variable(int var) {
    Poly p;
    p.terms_[mono_set(0, var, 1)] = 1;
    return p;
  }
  // Homogeneous linear form sum coeffs[v] * x_v.
  static Poly linear(const std::vector<Coeff>& coeffs) {
    Poly p;
    for (size_t v = 0; v < coeffs.size(); ++v)
      if (coeffs[v] != 0) p.terms_[mono_set(0, int(v), 1)] = coeffs[v];
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const { return terms_.empty() ? -1 : mono_deg(terms_.begin()->first); }
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = mono_deg(terms_.begin()->first);
    return mono_deg(terms_.rbegin()->first) == d;
  }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
  Coeff constant_term() const {
    auto it = terms_.find(0);
    return it == terms_.end() ? 0 : it->second;
  }
  Coeff coeff(Mono m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
  }

  void add_term(Mono m, Coeff c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second = chk_add(it->second, c);
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly homogeneous_part(int d) const {
    Poly p;
    for (auto& [m, c] : terms_)
      if (mono_deg(m) == d) p.terms_[m] = c;
    return p;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    for (auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    for (auto& [m, c] : b.terms_) r.add_term(m, chk_mul(c, -1));
    return r;
  }
  friend Poly operator-(const Poly& a) { return Poly() - a; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), chk_mul(ca, cb));
    return r;
  }
  friend Poly operator*(Coeff c, const Poly& a) {
    Poly r;
    if (c == 0) return r;
    for (auto& [m, cc] : a.terms_) r.terms_[m] = chk_mul(c, cc);
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Coefficient-wise reduction into [0, p).
  Poly reduced_mod(Coeff p) const {
    Poly r;
    for (auto& [m, c] : terms_) {
      Coeff cc = c % p;
      if (cc < 0) cc += p;
      if (cc != 0) r.terms_[m] = cc;
    }
    return r;
  }

 private:
  Terms terms_;
};

// Exact division: returns q with f = q*g; throws std::logic_error if f is
// not a multiple of g over Z. Sound for any g because the graded-lex order
// is multiplicative, so each step's leading coefficient of the remainder is
// a coefficient of the true quotient.
Poly divide_exact(const Poly& f, const Poly& g);

// Substitute x_v -> images[v] for every variable (linear change works for
// any polynomial images; exponents expand by repeated multiplication).
Poly substitute(const Poly& f, const std::vector<Poly>& images);

std::string poly_to_string(const Poly& f, const std::vector<std::string>& labels);
Poly poly_parse(const std::string& s, const std::vector<std::string>& labels);

}  // namespace heckemod
