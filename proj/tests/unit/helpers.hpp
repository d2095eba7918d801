#pragma once

#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "vortexlab/error.hpp"

// Checks that expr throws vortexlab::Error with the given code.
#define CHECK_THROWS_CODE(expr, c)                                   \
  do {                                                               \
    bool thrown_ = false;                                            \
    try {                                                            \
      (void)(expr);                                                  \
    } catch (const vortexlab::Error& e_) {                           \
      thrown_ = true;                                                \
      CHECK_MESSAGE(e_.code() == (c), e_.what());                    \
    }                                                                \
    CHECK_MESSAGE(thrown_, "expected vortexlab::Error from " #expr); \
  } while (false)

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}
