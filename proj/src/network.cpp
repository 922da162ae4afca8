#include "bansync/network.hpp"

#include "bansync/errors.hpp"

namespace bansync {

void Limits::require_eig(int n, const char* what) const {
  if (n > kHardMaxSize) throw SizeCeilingError(what, n, kHardMaxSize);
  if (n > eig_max) throw SizeCeilingError(what, n, eig_max);
}

void Limits::require_sig(int n, const char* what) const {
  if (n > kHardMaxSize) throw SizeCeilingError(what, n, kHardMaxSize);
  if (n > sig_max) throw SizeCeilingError(what, n, sig_max);
}

Network Network::from_tables(const std::vector<std::vector<bool>>& tables) {
  const int n = static_cast<int>(tables.size());
  if (n < 1) throw InputError("a network needs at least one automaton");
  if (n > kHardMaxSize) throw SizeCeilingError("network", n, kHardMaxSize);
  const std::size_t count = std::size_t{1} << n;
  std::vector<State> image(count, 0);
  for (int i = 0; i < n; ++i) {
    const auto& t = tables[static_cast<std::size_t>(i)];
    if (t.size() != count) {
      throw InputError("truth table of automaton " + std::to_string(i) + " has " +
                       std::to_string(t.size()) + " entries, expected " + std::to_string(count));
    }
    for (std::size_t r = 0; r < count; ++r) {
      if (t[r]) image[lex_state(static_cast<State>(r), n)] |= automaton_bit(i);
    }
  }
  return from_image(n, std::move(image));
}

Network Network::from_image(int n, std::vector<State> image) {
  if (n < 1) throw InputError("a network needs at least one automaton");
  if (n > kHardMaxSize) throw SizeCeilingError("network", n, kHardMaxSize);
  if (image.size() != (std::size_t{1} << n)) {
    throw InputError("global map has " + std::to_string(image.size()) + " entries, expected " +
                     std::to_string(std::size_t{1} << n));
  }
  const State mask = full_mask(n);
  for (auto& v : image) {
    if ((v & ~mask) != 0) throw InputError("global map value outside B^n");
  }
  Network net;
  net.n_ = n;
  net.image_ = std::move(image);
  return net;
}

std::vector<bool> Network::table(int i) const {
  std::vector<bool> out(image_.size());
  for (std::size_t r = 0; r < image_.size(); ++r) {
    out[r] = value(i, lex_state(static_cast<State>(r), n_));
  }
  return out;
}

}  // namespace bansync
