#pragma once

// Brute-force multimode Fock-space reference. States are sparse maps from occupation
// vectors to amplitudes; ladder operators act with the usual sqrt(n) factors. Nothing here
// shares code with the library's contraction enumeration.

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace fock {

using cd = std::complex<double>;
using Occupation = std::vector<int>;
using State = std::map<Occupation, cd>;

inline State vacuum(int modes) { return {{Occupation(static_cast<std::size_t>(modes), 0), 1.0}}; }

/// sum_i u_i a_i^dagger applied to `s`.
inline State create(const Eigen::VectorXcd& u, const State& s) {
  State out;
  for (const auto& [occ, amp] : s) {
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      Occupation next = occ;
      const int n = next[static_cast<std::size_t>(i)]++;
      out[next] += u[i] * std::sqrt(static_cast<double>(n + 1)) * amp;
    }
  }
  return out;
}

/// sum_i v_i a_i applied to `s`.
inline State annihilate(const Eigen::VectorXcd& v, const State& s) {
  State out;
  for (const auto& [occ, amp] : s) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const int n = occ[static_cast<std::size_t>(i)];
      if (n == 0) continue;
      Occupation next = occ;
      --next[static_cast<std::size_t>(i)];
      out[next] += v[i] * std::sqrt(static_cast<double>(n)) * amp;
    }
  }
  return out;
}

inline State add(State a, const State& b, cd scale = 1.0) {
  for (const auto& [occ, amp] : b) a[occ] += scale * amp;
  return a;
}

inline double norm2(const State& s) {
  double total = 0.0;
  for (const auto& [occ, amp] : s) total += std::norm(amp);
  return total;
}

inline State apply_power(const Eigen::VectorXcd& v, int times, State s, bool creation) {
  for (int k = 0; k < times; ++k) s = creation ? create(v, s) : annihilate(v, s);
  return s;
}

struct Terms {
  double numerator = 0.0;
  double denom_alpha = 0.0;
  double denom_beta = 0.0;
  double state_norm = 0.0;
};

/// Unnormalized N00N state [ (e^{i theta} g_L . a^dagger)^N + (g_R . a^dagger)^N ] |0> / sqrt(2 N!)
/// and the coincidence terms of two detectors with field coefficients ca, cb, each registering
/// N/2 photons.
inline Terms noon_terms(int photons, double theta, const Eigen::VectorXcd& g_left,
                        const Eigen::VectorXcd& g_right, const Eigen::VectorXcd& ca,
                        const Eigen::VectorXcd& cb) {
  const int modes = static_cast<int>(g_left.size());
  const int p = photons / 2;
  double nf = 1.0;
  for (int k = 2; k <= photons; ++k) nf *= k;
  const Eigen::VectorXcd left = g_left * std::polar(1.0, theta);
  State psi = add(apply_power(left, photons, vacuum(modes), true),
                  apply_power(g_right, photons, vacuum(modes), true));
  for (auto& [occ, amp] : psi) amp /= std::sqrt(2.0 * nf);

  Terms t;
  t.state_norm = norm2(psi);
  const State after_alpha = apply_power(ca, p, psi, false);
  t.denom_alpha = norm2(after_alpha);
  t.denom_beta = norm2(apply_power(cb, p, psi, false));
  t.numerator = norm2(apply_power(cb, p, after_alpha, false));
  return t;
}

}  // namespace fock
