#pragma once

#include "bansync/expression.hpp"
#include "bansync/network.hpp"

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace test {

inline std::string data(const std::string& name) { return std::string(BANSYNC_TEST_DATA) + "/" + name; }

/// Network from a predicate on (automaton, packed state), independent of the parser.
inline bansync::Network make(int n, const std::function<bool(int, bansync::State)>& f) {
  std::vector<bansync::State> image(std::size_t{1} << n, 0);
  for (bansync::State x = 0; x < image.size(); ++x) {
    for (int i = 0; i < n; ++i) {
      if (f(i, x)) image[x] |= bansync::State{1} << i;
    }
  }
  return bansync::Network::from_image(n, image);
}

inline bool bit(bansync::State x, int i) { return (x >> i) & 1u; }

inline bansync::Network random_network(std::mt19937_64& rng, int n) {
  std::vector<bansync::State> image(std::size_t{1} << n);
  for (auto& v : image) v = static_cast<bansync::State>(rng()) & ((bansync::State{1} << n) - 1);
  return bansync::Network::from_image(n, image);
}

/// f_0 = x0 & !x1, f_1 = !x0 & x1
inline bansync::Network exfree() {
  return make(2, [](int i, bansync::State x) { return i == 0 ? bit(x, 0) && !bit(x, 1) : !bit(x, 0) && bit(x, 1); });
}

inline bansync::Network contrex() {
  return make(4, [](int i, bansync::State x) {
    const bool x0 = bit(x, 0), x1 = bit(x, 1), x2 = bit(x, 2), x3 = bit(x, 3);
    switch (i) {
      case 0: return x2 || (x0 && !x1);
      case 1: return x3 || (!x0 && x1);
      case 2: return !x0 && x1;
      default: return x0 && !x1;
    }
  });
}

inline bansync::Network xor2() {
  return make(2, [](int, bansync::State x) { return bit(x, 0) != bit(x, 1); });
}

}  // namespace test
