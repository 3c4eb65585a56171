#pragma once

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>

// Minimal check macros for the plain-main test programs: a failed check
// prints the location and aborts the test binary with a nonzero status.

namespace testing_detail {

inline void fail(const char* file, int line, const std::string& message) {
  std::cerr << file << ":" << line << ": check failed: " << message << "\n";
  std::exit(1);
}

}  // namespace testing_detail

#define CHECK(condition)                                                   \
  do {                                                                     \
    if (!(condition)) testing_detail::fail(__FILE__, __LINE__, #condition); \
  } while (0)

#define CHECK_EQ(a, b)                                                       \
  do {                                                                       \
    auto va = (a);                                                           \
    auto vb = (b);                                                           \
    if (!(va == vb)) {                                                       \
      testing_detail::fail(__FILE__, __LINE__,                               \
                           std::string(#a " == " #b));                       \
    }                                                                        \
  } while (0)

#define CHECK_NEAR(a, b, tol)                                                \
  do {                                                                       \
    double va = (a);                                                         \
    double vb = (b);                                                         \
    if (!(std::abs(va - vb) <= (tol))) {                                     \
      testing_detail::fail(__FILE__, __LINE__,                               \
                           std::string(#a) + " = " + std::to_string(va) +    \
                               " vs " + std::string(#b) + " = " +            \
                               std::to_string(vb));                          \
    }                                                                        \
  } while (0)

#define CHECK_THROWS(expression, exception_type)                             \
  do {                                                                       \
    bool caught = false;                                                     \
    try {                                                                    \
      (void)(expression);                                                    \
    } catch (const exception_type&) {                                        \
      caught = true;                                                         \
    }                                                                        \
    if (!caught) {                                                           \
      testing_detail::fail(__FILE__, __LINE__,                               \
                           #expression " did not throw " #exception_type);   \
    }                                                                        \
  } while (0)

#define RUN_TEST(fn)                       \
  do {                                     \
    std::cout << "[ run ] " #fn "\n";      \
    fn();                                  \
  } while (0)
