#include <cmath>

#include "copcp/optim.hpp"

namespace copcp::optim {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "OPTIMAL";
    case LpStatus::Infeasible: return "INFEASIBLE";
    case LpStatus::Unbounded: return "UNBOUNDED";
    case LpStatus::Stalled: return "STALLED";
  }
  return "?";
}

LpResult solve_lp(const Vec& c, const Mat& A_eq, const Vec& b_eq, const std::vector<Bound>& bounds,
                  Sense sense, const Tolerance& tol) {
  const int nv = static_cast<int>(c.size());
  const int m = static_cast<int>(A_eq.rows());
  if (A_eq.cols() != nv || b_eq.size() != m || static_cast<int>(bounds.size()) != nv)
    throw DimensionMismatch("inconsistent LP dimensions");

  // x_j = offset_j + sign_j * v_j, v_j either nonnegative (lp) or free
  struct Map {
    bool free;
    int idx;
    double offset, sign;
    int upper_slack = -1;
  };
  std::vector<Map> map(nv);
  SdpProblem p;
  p.sense = sense;
  for (int j = 0; j < nv; ++j) {
    const Bound& bd = bounds[j];
    if (bd.lower > bd.upper) {
      LpResult r;
      r.status = LpStatus::Infeasible;
      return r;
    }
    const bool lo = std::isfinite(bd.lower), hi = std::isfinite(bd.upper);
    if (!lo && !hi) {
      map[j] = {true, p.add_free(1), 0.0, 1.0};
    } else if (lo) {
      map[j] = {false, p.add_lp(1), bd.lower, 1.0};
      if (hi) map[j].upper_slack = p.add_lp(1);
    } else {
      map[j] = {false, p.add_lp(1), bd.upper, -1.0};
    }
  }
  for (int j = 0; j < nv; ++j) {
    if (c(j) == 0) continue;
    if (map[j].free) p.objective.var(map[j].idx, c(j) * map[j].sign);
    else p.objective.lin(map[j].idx, c(j) * map[j].sign);
  }
  std::vector<int> row_of(m, -1);
  for (int i = 0; i < m; ++i) {
    Row r;
    double rhs = b_eq(i);
    for (int j = 0; j < nv; ++j) {
      double a = A_eq(i, j);
      if (a == 0) continue;
      rhs -= a * map[j].offset;
      if (map[j].free) r.var(map[j].idx, a * map[j].sign);
      else r.lin(map[j].idx, a * map[j].sign);
    }
    if (r.empty()) {
      if (std::abs(rhs) > tol.feas_tol) {
        LpResult res;
        res.status = LpStatus::Infeasible;
        return res;
      }
      continue;
    }
    row_of[i] = p.add_constraint(std::move(r), rhs);
  }
  for (int j = 0; j < nv; ++j)
    if (map[j].upper_slack >= 0) {
      Row r;
      r.lin(map[j].idx, 1.0).lin(map[j].upper_slack, 1.0);
      p.add_constraint(std::move(r), bounds[j].upper - bounds[j].lower);
    }

  LpResult res;
  if (p.num_constraints() == 0) {
    // only bounds: pick the best bound per variable
    res.x = Vec(nv);
    for (int j = 0; j < nv; ++j) {
      double dir = sense == Sense::Minimize ? c(j) : -c(j);
      double v = dir > 0 ? bounds[j].lower : dir < 0 ? bounds[j].upper : (std::isfinite(bounds[j].lower) ? bounds[j].lower : std::isfinite(bounds[j].upper) ? bounds[j].upper : 0.0);
      if (!std::isfinite(v)) {
        res.status = LpStatus::Unbounded;
        return res;
      }
      res.x(j) = v;
    }
    res.status = LpStatus::Optimal;
    res.objective = c.dot(res.x);
    res.dual = Vec::Zero(m);
    res.reduced = c;
    return res;
  }

  SdpSolution s = solve_sdp(p, tol);
  res.residuals = s.residuals;
  switch (s.status) {
    case Status::Optimal: res.status = LpStatus::Optimal; break;
    case Status::Infeasible: res.status = LpStatus::Infeasible; break;
    case Status::DualInfeasible: res.status = LpStatus::Unbounded; break;
    default: res.status = LpStatus::Stalled; break;
  }
  if (res.status == LpStatus::Infeasible || res.status == LpStatus::Unbounded) return res;
  res.x = Vec(nv);
  for (int j = 0; j < nv; ++j) {
    double v = map[j].free ? s.x_free(map[j].idx) : s.x_lp(map[j].idx);
    res.x(j) = map[j].offset + map[j].sign * v;
  }
  res.dual = Vec::Zero(m);
  for (int i = 0; i < m; ++i)
    if (row_of[i] >= 0) res.dual(i) = s.y(row_of[i]);
  res.reduced = c - A_eq.transpose() * res.dual;
  res.objective = c.dot(res.x);
  return res;
}

}  // namespace copcp::optim
