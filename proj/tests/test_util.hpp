#pragma once

#include <functional>
#include <optional>

#include "kssim/errors.hpp"

namespace kssim::testutil {

// Runs f and reports the ErrorKind it threw, or nullopt if it did not throw.
inline std::optional<ErrorKind> thrown_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace kssim::testutil
