#pragma once

#include <fftw3.h>

#include <mutex>
#include <vector>

#include "polyrellich/errors.hpp"

namespace polyrellich {

namespace detail {

inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace detail

/// Y_k = 2 sum_{j=0}^{n-1} x_j sin(pi (j+1)(k+1) / (n+1)), the unnormalized DST-I.
inline std::vector<double> dst1(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  detail::require(n >= 1, ErrorCode::InvalidArgument, "dst1: empty input");
  std::vector<double> in(x), out(x.size());
  fftw_plan plan;
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    plan = fftw_plan_r2r_1d(n, in.data(), out.data(), FFTW_RODFT00, FFTW_ESTIMATE);
  }
  detail::require(plan != nullptr, ErrorCode::InvalidArgument, "dst1: FFTW could not create a plan");
  fftw_execute(plan);
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace polyrellich
