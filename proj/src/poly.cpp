#include "heckemod/poly.hpp"

#include <cctype>
#include <sstream>

namespace heckemod {

Poly divide_exact(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw std::logic_error("division by zero polynomial");
  Poly rem = f;
  Poly q;
  Mono lg = g.terms().begin()->first;
  Coeff cg = g.terms().begin()->second;
  while (!rem.is_zero()) {
    Mono lr = rem.terms().begin()->first;
    Coeff cr = rem.terms().begin()->second;
    if (!mono_divides(lg, lr) || cr % cg != 0)
      throw std::logic_error("non-exact polynomial division");
    Mono mq = mono_div(lr, lg);
    Coeff cq = cr / cg;
    q.add_term(mq, cq);
    Poly t;
    t.add_term(mq, cq);
    rem = rem - t * g;
  }
  return q;
}

Poly substitute(const Poly& f, const std::vector<Poly>& images) {
  // Per-variable power cache for this call.
  std::vector<std::vector<Poly>> pows(images.size());
  auto power = [&](int v, int e) -> const Poly& {
    auto& cache = pows[v];
    if (cache.empty()) cache.push_back(Poly::constant(1));
    while (int(cache.size()) <= e) cache.push_back(cache.back() * images[v]);
    return cache[e];
  };
  Poly r;
  for (auto& [m, c] : f.terms()) {
    Poly t = Poly::constant(c);
    for (size_t v = 0; v < images.size(); ++v) {
      int e = mono_exp(m, int(v));
      if (e > 0) t = t * power(int(v), e);
    }
    r = r + t;
  }
  return r;
}

std::string poly_to_string(const Poly& f, const std::vector<std::string>& labels) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : f.terms()) {
    Coeff cc = c;
    if (first) {
      if (cc < 0) {
        os << "-";
        cc = -cc;
      }
    } else {
      os << (cc < 0 ? " - " : " + ");
      if (cc < 0) cc = -cc;
    }
    first = false;
    std::string vars;
    for (size_t v = 0; v < labels.size(); ++v) {
      int e = mono_exp(m, int(v));
      if (e == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += labels[v];
      if (e > 1) vars += "^" + std::to_string(e);
    }
    if (vars.empty()) {
      os << cc;
    } else if (cc == 1) {
      os << vars;
    } else {
      os << cc << "*" << vars;
    }
  }
  return os.str();
}

namespace {

struct Tokenizer {
  const std::string& s;
  size_t i = 0;
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
};

}  // namespace

Poly poly_parse(const std::string& s, const std::vector<std::string>& labels) {
  Tokenizer tk{s};
  auto var_index = [&](const std::string& name) {
    for (size_t v = 0; v < labels.size(); ++v)
      if (labels[v] == name) return int(v);
    throw std::invalid_argument("unknown variable '" + name + "' in polynomial");
  };
  Poly result;
  bool expect_term = true;
  Coeff sign = 1;
  while (!tk.done()) {
    char c = tk.peek();
    if (c == '+' || c == '-') {
      sign = (c == '-') ? -sign : sign;
      ++tk.i;
      expect_term = true;
      continue;
    }
    if (!expect_term) throw std::invalid_argument("malformed polynomial: missing operator");
    // One term: optional integer, then optional *-separated variable powers.
    Coeff coeff = 1;
    bool saw_number = false;
    Mono mono = 0;
    bool want_factor = true;
    while (want_factor) {
      char p = tk.peek();
      if (std::isdigit(static_cast<unsigned char>(p))) {
        Coeff n = 0;
        while (tk.i < tk.s.size() && std::isdigit(static_cast<unsigned char>(tk.s[tk.i]))) {
          n = chk_add(chk_mul(n, 10), tk.s[tk.i] - '0');
          ++tk.i;
        }
        coeff = chk_mul(coeff, n);
        saw_number = true;
      } else if (std::isalpha(static_cast<unsigned char>(p)) || p == '_') {
        std::string name;
        while (tk.i < tk.s.size() &&
               (std::isalnum(static_cast<unsigned char>(tk.s[tk.i])) || tk.s[tk.i] == '_')) {
          name += tk.s[tk.i];
          ++tk.i;
        }
        int v = var_index(name);
        int e = 1;
        if (tk.peek() == '^') {
          ++tk.i;
          if (!std::isdigit(static_cast<unsigned char>(tk.peek())))
            throw std::invalid_argument("malformed exponent");
          e = 0;
          while (tk.i < tk.s.size() && std::isdigit(static_cast<unsigned char>(tk.s[tk.i]))) {
            e = e * 10 + (tk.s[tk.i] - '0');
            ++tk.i;
          }
        }
        mono = mono_set(mono, v, mono_exp(mono, v) + e);
        saw_number = true;
      } else {
        throw std::invalid_argument("malformed polynomial near position " + std::to_string(tk.i));
      }
      if (tk.peek() == '*') {
        ++tk.i;
      } else {
        want_factor = false;
      }
    }
    if (!saw_number) throw std::invalid_argument("empty term in polynomial");
    result.add_term(mono, chk_mul(sign, coeff));
    sign = 1;
    expect_term = false;
  }
  if (expect_term && !(s.find_first_not_of(" \t\n") == std::string::npos))
    throw std::invalid_argument("trailing operator in polynomial");
  // "0" parses as the zero polynomial naturally (term 0).
  return result;
}

}  // namespace heckemod
