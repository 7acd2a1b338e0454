#include "convexa/lp.hpp"

#include "convexa/errors.hpp"

namespace convexa {

namespace {

// min c.x  s.t.  A x = b, x >= 0, solved with a two-phase tableau simplex.
// Bland's rule keeps it finite. Sizes here are tiny (a handful of rows).
struct Simplex {
  int m, n;  // rows, structural columns
  std::vector<std::vector<Rat>> a;
  std::vector<Rat> b, c;

  // Returns optimum value, or nullopt if infeasible; unbounded throws.
  std::optional<Rat> solve(std::vector<Rat>* solution = nullptr) {
    // Make b >= 0.
    for (int i = 0; i < m; ++i)
      if (b[i] < 0) {
        b[i] = -b[i];
        for (auto& v : a[i]) v = -v;
      }
    int total = n + m;  // structural + artificial
    std::vector<std::vector<Rat>> t(m, std::vector<Rat>(total + 1, Rat(0)));
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) t[i][j] = a[i][j];
      t[i][n + i] = 1;
      t[i][total] = b[i];
      basis[i] = n + i;
    }
    auto pivot = [&](int pr, int pc) {
      Rat pv = t[pr][pc];
      for (auto& v : t[pr]) v /= pv;
      for (int i = 0; i < m; ++i) {
        if (i == pr || t[i][pc] == 0) continue;
        Rat f = t[i][pc];
        for (int j = 0; j <= total; ++j) t[i][j] -= f * t[pr][j];
      }
      basis[pr] = pc;
    };
    auto run_phase = [&](const std::vector<Rat>& obj, int ncols) -> Rat {
      // Reduced costs maintained from scratch each iteration; fine at this size.
      while (true) {
        std::vector<Rat> y(ncols, Rat(0));
        for (int j = 0; j < ncols; ++j) {
          y[j] = obj[j];
          for (int i = 0; i < m; ++i)
            if (basis[i] < (int)obj.size()) y[j] -= obj[basis[i]] * t[i][j];
        }
        int pc = -1;
        for (int j = 0; j < ncols; ++j)
          if (y[j] < 0) {
            pc = j;
            break;
          }  // Bland: smallest index
        if (pc < 0) break;
        int pr = -1;
        for (int i = 0; i < m; ++i) {
          if (t[i][pc] <= 0) continue;
          if (pr < 0) {
            pr = i;
            continue;
          }
          Rat cur = t[i][total] / t[i][pc];
          Rat best = t[pr][total] / t[pr][pc];
          if (cur < best || (cur == best && basis[i] < basis[pr])) pr = i;
        }
        if (pr < 0) throw InternalError("LP unbounded");
        pivot(pr, pc);
      }
      Rat val = 0;
      for (int i = 0; i < m; ++i)
        if (basis[i] < (int)obj.size()) val += obj[basis[i]] * t[i][total];
      return val;
    };
    // Phase 1.
    std::vector<Rat> obj1(total, Rat(0));
    for (int i = 0; i < m; ++i) obj1[n + i] = 1;
    if (run_phase(obj1, total) != 0) return std::nullopt;
    // Drive leftover artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (basis[i] < n) continue;
      int pc = -1;
      for (int j = 0; j < n; ++j)
        if (t[i][j] != 0) {
          pc = j;
          break;
        }
      if (pc >= 0) pivot(i, pc);
      // else: redundant row, harmless.
    }
    // Phase 2 restricted to structural columns.
    Rat opt = run_phase(c, n);
    if (solution) {
      solution->assign(n, Rat(0));
      for (int i = 0; i < m; ++i)
        if (basis[i] < n) (*solution)[basis[i]] = t[i][total];
    }
    return opt;
  }
};

}  // namespace

bool lp_in_hull(const std::vector<VecR>& pts, const VecR& p) {
  if (pts.empty()) return false;
  int dim = (int)p.size();
  int k = (int)pts.size();
  Simplex s;
  s.m = dim + 1;
  s.n = k;
  s.a.assign(s.m, std::vector<Rat>(s.n, Rat(0)));
  s.b.assign(s.m, Rat(0));
  s.c.assign(s.n, Rat(0));
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < dim; ++i) s.a[i][j] = pts[j][i];
    s.a[dim][j] = 1;
  }
  for (int i = 0; i < dim; ++i) s.b[i] = p[i];
  s.b[dim] = 1;
  return s.solve().has_value();
}

std::optional<std::pair<Rat, Rat>> lp_line_clip(const std::vector<VecR>& pts,
                                                const VecR& p, const VecR& d) {
  if (pts.empty()) return std::nullopt;
  int dim = (int)p.size();
  int k = (int)pts.size();
  // Variables: lambda_0..lambda_{k-1}, tplus, tminus (t = tplus - tminus).
  Simplex s;
  s.m = dim + 1;
  s.n = k + 2;
  s.a.assign(s.m, std::vector<Rat>(s.n, Rat(0)));
  s.b.assign(s.m, Rat(0));
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < dim; ++i) s.a[i][j] = pts[j][i];
    s.a[dim][j] = 1;
  }
  for (int i = 0; i < dim; ++i) {
    s.a[i][k] = -d[i];
    s.a[i][k + 1] = d[i];
    s.b[i] = p[i];
  }
  s.b[dim] = 1;
  s.c.assign(s.n, Rat(0));
  s.c[k] = 1;
  s.c[k + 1] = -1;  // minimize t
  auto lo = s.solve();
  if (!lo) return std::nullopt;
  s.c[k] = -1;
  s.c[k + 1] = 1;  // maximize t
  auto hi = s.solve();
  if (!hi) return std::nullopt;
  return std::make_pair(*lo, Rat(-*hi));
}

}  // namespace convexa
