#pragma once

#include <array>
#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace steerlab {

// splitmix64, used to expand a user seed into engine state and to derive
// independent per-task substreams (restart r, trial t, ...).
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives a well-separated substream seed from (seed, index).
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed;
  std::uint64_t base = splitmix64(s);
  std::uint64_t t = base ^ (index * 0x9e3779b97f4a7c15ULL + 0x6a09e667f3bcc909ULL);
  return splitmix64(t);
}

// xoshiro256**. Fixed algorithm, so streams are bit-identical across
// platforms and runs; all randomized operations take an explicit seed.
class Xoshiro256ss {
public:
  explicit Xoshiro256ss(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::array<std::uint64_t, 4> state_;
};

// Seeded source of the random objects used across the library. Conversions
// to doubles and the Box-Muller transform are spelled out here instead of
// using std:: distributions, which are not bit-stable across standard
// library implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_.next(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_.next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound), bound >= 1.
  std::uint64_t uniform_index(std::uint64_t bound) {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(bound)) % bound;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0,1] so the log is finite.
    const double u1 = (static_cast<double>(engine_.next() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * M_SQRT1_2, im * M_SQRT1_2};
  }

  // Complex Ginibre matrix, i.i.d. standard complex Gaussian entries.
  Eigen::MatrixXcd ginibre(Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXcd g(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = complex_normal();
    return g;
  }

  Eigen::MatrixXcd random_hermitian(Eigen::Index n) {
    Eigen::MatrixXcd g = ginibre(n, n);
    return 0.5 * (g + g.adjoint());
  }

  // PSD matrix of the requested rank (Gram matrix of a Ginibre factor).
  Eigen::MatrixXcd random_psd(Eigen::Index n, Eigen::Index rank) {
    Eigen::MatrixXcd g = ginibre(n, rank);
    return g * g.adjoint();
  }

  // Haar-distributed unitary: QR of a Ginibre matrix with the R diagonal
  // phases absorbed into Q (Mezzadri's recipe).
  Eigen::MatrixXcd haar_unitary(Eigen::Index n) {
    Eigen::MatrixXcd g = ginibre(n, n);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
      std::complex<double> d = r(j, j);
      const double a = std::abs(d);
      q.col(j) *= (a > 0.0) ? d / a : 1.0;
    }
    return q;
  }

private:
  Xoshiro256ss engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace steerlab
