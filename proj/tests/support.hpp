#pragma once

#include <fei/fei.hpp>

#include <random>

namespace fei::testing {

inline BooleanFunction random_function(int n, std::mt19937_64& rng)
{
  std::vector<std::uint64_t> words(n >= 6 ? std::size_t{1} << (n - 6) : 1);
  for (auto& w : words)
    w = rng();
  return BooleanFunction::from_words(n, std::move(words));
}

inline Profile random_profile(std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> u(0.05, 0.95), s(0.5, 3.0);
  return {u(rng), s(rng), s(rng)};
}

} // namespace fei::testing
