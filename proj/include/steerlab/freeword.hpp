#pragma once

#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

namespace steerlab {

// Reduced word u_{x1}^{j1} ... u_{xl}^{jl} in the free product of m copies of
// the cyclic group of order k: consecutive letters carry distinct settings
// and every power lies in 1..k-1. The empty word is the identity. Settings
// are 0-based here (1-based at the I/O boundary).
class FreeWord {
public:
  struct Letter {
    int setting;
    int power;
    auto operator<=>(const Letter&) const = default;
  };

  FreeWord(int settings, int outcomes) : settings_(settings), outcomes_(outcomes) {
    check_group(settings, outcomes);
  }
  FreeWord(int settings, int outcomes, std::vector<Letter> letters);

  static void check_group(int settings, int outcomes);

  int settings() const { return settings_; }
  int outcomes() const { return outcomes_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }

  // Length-first, then letter-by-letter lexicographic order.
  std::strong_ordering operator<=>(const FreeWord& other) const;
  bool operator==(const FreeWord& other) const;

private:
  int settings_;
  int outcomes_;
  std::vector<Letter> letters_;
};

// Reduces an arbitrary letter sequence: adjacent equal-setting letters merge
// with powers added mod k, zero powers vanish. Powers may be any integers.
FreeWord normal_form(int settings, int outcomes,
                     const std::vector<std::pair<int, int>>& raw_letters);

// Group operations. Operands must share (settings, outcomes).
FreeWord multiply(const FreeWord& lhs, const FreeWord& rhs);
FreeWord inverse(const FreeWord& word);

// All reduced words of length <= max_length in deterministic order: by
// length, then lexicographic in the letters.
std::vector<FreeWord> enumerate_words(int settings, int outcomes, int max_length);

// 1 + sum_{l=1..L} m(k-1) ((m-1)(k-1))^{l-1}; equals enumerate_words size.
std::uint64_t count_words(int settings, int outcomes, int max_length);

}  // namespace steerlab
