#ifndef ABDHOM_RANDOM_HPP
#define ABDHOM_RANDOM_HPP

#include <random>
#include <set>
#include <string>
#include <vector>

#include "abdhom/formula.hpp"
#include "abdhom/model.hpp"

namespace abdhom {

// Random formula with exactly `connectives` primitive connectives (!, |,
// <A>, <B>, <D>) over the given letters. `&` is sampled as a shorthand.
inline Formula random_formula(std::mt19937_64& rng, std::size_t connectives, const std::vector<std::string>& alphabet) {
  auto pick = [&rng](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  if (connectives == 0) return prop(alphabet[pick(alphabet.size())]);
  switch (pick(7)) {
    case 0:
    case 1: return !random_formula(rng, connectives - 1, alphabet);
    case 2: return dA(random_formula(rng, connectives - 1, alphabet));
    case 3: return dB(random_formula(rng, connectives - 1, alphabet));
    case 4: return dD(random_formula(rng, connectives - 1, alphabet));
    default: {
      std::size_t rest = connectives - 1;
      std::size_t left = pick(rest + 1);
      Formula a = random_formula(rng, left, alphabet);
      Formula b = random_formula(rng, rest - left, alphabet);
      return pick(2) ? (a | b) : (a & b);
    }
  }
}

inline HomModel random_model(std::mt19937_64& rng, std::size_t n, const std::vector<std::string>& alphabet) {
  std::vector<std::set<std::string>> pts(n + 1);
  std::bernoulli_distribution coin(0.5);
  for (auto& p : pts)
    for (const auto& l : alphabet)
      if (coin(rng)) p.insert(l);
  return HomModel(n, std::move(pts));
}

// Runs of identical points: up to `blocks` random labels, each repeated run_min..run_max times.
inline HomModel random_padded_model(std::mt19937_64& rng, const std::vector<std::string>& alphabet, std::size_t blocks,
                                    std::size_t run_min, std::size_t run_max) {
  std::vector<std::set<std::string>> pts;
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<std::size_t> nblocks(1, blocks), run(run_min, run_max);
  for (std::size_t b = nblocks(rng); b > 0; --b) {
    std::set<std::string> label;
    for (const auto& l : alphabet)
      if (coin(rng)) label.insert(l);
    pts.insert(pts.end(), run(rng), label);
  }
  const std::size_t n = pts.size() - 1;
  return HomModel(n, std::move(pts));
}

}  // namespace abdhom

#endif
