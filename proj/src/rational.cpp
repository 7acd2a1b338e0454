#include "convexa/rational.hpp"

#include <cctype>

namespace convexa {

std::optional<Rat> rat_parse(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::string num = text, den = "1";
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  auto valid_int = [](const std::string& s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  if (!valid_int(num) || !valid_int(den)) return std::nullopt;
  mpz_class n(num), d(den);
  if (d == 0) return std::nullopt;
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

long rat_floor_div(const Rat& x, const Rat& step) {
  Rat q = x / step;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return fl.get_si();
}

long rat_ceil_div(const Rat& x, const Rat& step) {
  Rat q = x / step;
  mpz_class cl;
  mpz_cdiv_q(cl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return cl.get_si();
}

}  // namespace convexa
