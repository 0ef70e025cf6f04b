#pragma once

#include <cmath>
#include <optional>

#include "subgauss/error.hpp"

namespace testing {

// Code of the subgauss::Error thrown by f, or nullopt if nothing was thrown.
template <class F>
std::optional<subgauss::ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const subgauss::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace testing
