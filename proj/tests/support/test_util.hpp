#pragma once

#include <doctest.h>

#include "permabound/error.hpp"

#define CHECK_ERROR_CODE(expr, expected_code)                               \
  do {                                                                      \
    bool thrown_ = false;                                                   \
    try {                                                                   \
      (void)(expr);                                                         \
    } catch (const permabound::Error& e) {                                  \
      thrown_ = true;                                                       \
      CHECK_MESSAGE(e.code() == (expected_code), permabound::to_string(e.code())); \
    }                                                                       \
    CHECK_MESSAGE(thrown_, "expected an exception from " #expr);            \
  } while (0)
