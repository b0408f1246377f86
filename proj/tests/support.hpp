#pragma once

#include "k3walls/lattice.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace k3test {

using k3walls::Integer;
using k3walls::MukaiVector;
using k3walls::Rational;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x6b3377616c6c73ULL);
  return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline MukaiVector random_vector(long bound) {
  return {Integer(uniform(-bound, bound)), Integer(uniform(-bound, bound)), Integer(uniform(-bound, bound))};
}

inline Rational random_rational(long num_bound, long den_bound) {
  return k3walls::make_rational(Integer(uniform(-num_bound, num_bound)), Integer(uniform(1, den_bound)));
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace k3test
