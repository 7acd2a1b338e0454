#include "convexa/vec.hpp"

#include "convexa/errors.hpp"

namespace convexa {

namespace {
void check_dims(const VecR& a, const VecR& b) {
  if (a.size() != b.size()) throw InternalError("vector dimension mismatch");
}
}  // namespace

VecR vec_add(const VecR& a, const VecR& b) {
  check_dims(a, b);
  VecR r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

VecR vec_sub(const VecR& a, const VecR& b) {
  check_dims(a, b);
  VecR r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

VecR vec_scale(const Rat& s, const VecR& a) {
  VecR r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

VecR vec_lerp(const VecR& a, const VecR& b, const Rat& t) {
  check_dims(a, b);
  VecR r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + t * (b[i] - a[i]);
  return r;
}

Rat vec_dot(const VecR& a, const VecR& b) {
  check_dims(a, b);
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat vec_norm2(const VecR& a) { return vec_dot(a, a); }

Rat vec_dist2(const VecR& a, const VecR& b) { return vec_norm2(vec_sub(a, b)); }

bool vec_eq(const VecR& a, const VecR& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool vec_lex_less(const VecR& a, const VecR& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

bool vec_is_zero(const VecR& a) {
  for (const auto& c : a)
    if (c != 0) return false;
  return true;
}

bool vec_collinear(const VecR& a, const VecR& b, const VecR& c) {
  VecR u = vec_sub(b, a), w = vec_sub(c, a);
  // All 2x2 minors of [u w] vanish.
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = i + 1; j < u.size(); ++j)
      if (u[i] * w[j] - u[j] * w[i] != 0) return false;
  return true;
}

}  // namespace convexa
