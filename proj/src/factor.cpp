#include <vector>

#include "adelent/errors.hpp"
#include "adelent/places.hpp"

namespace adelent {

namespace {

constexpr int kPrimalityReps = 40;

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0.
Integer rho_split(const Integer& n, unsigned long seed, std::uint64_t budget) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  const Integer c = (seed * 7 + 1) % n;
  auto step = [&](const Integer& v) { return Integer((v * v + c) % n); };
  constexpr std::uint64_t kBatch = 64;
  Integer y = seed % n, g = 1, q = 1, x, ys;
  std::uint64_t r = 1, spent = 0;
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = step(y);
    for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
      ys = y;
      for (std::uint64_t i = 0; i < kBatch && i < r - k; ++i) {
        y = step(y);
        q = (q * abs(Integer(x - y))) % n;
      }
      g = gcd(q, n);
      spent += kBatch;
      if (spent > budget) return 0;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = step(ys);
      g = gcd(abs(Integer(x - ys)), n);
    } while (g == 1);
  }
  return g == n ? Integer(0) : g;
}

void split_into(const Integer& n, std::map<Integer, int>& out, const FactorOptions& options) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  for (unsigned long seed = 2; seed < 12; ++seed) {
    const Integer f = rho_split(n, seed, options.rho_iterations);
    if (f != 0 && f != 1 && f != n) {
      split_into(f, out, options);
      split_into(Integer(n / f), out, options);
      return;
    }
  }
  throw ComputationError("could not factor composite cofactor " + n.get_str());
}

}  // namespace

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), kPrimalityReps) > 0;
}

std::map<Integer, int> factorize(const Integer& n, const FactorOptions& options) {
  if (n == 0) throw DomainError("factorize(0)");
  std::map<Integer, int> out;
  Integer rest = abs(n);
  for (std::uint64_t d = 2; d <= options.trial_bound; d += (d == 2 ? 1 : 2)) {
    if (rest == 1) break;
    if (Integer(d) * d > rest) break;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
      ++out[Integer(d)];
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
    }
  }
  split_into(rest, out, options);
  return out;
}

}  // namespace adelent
