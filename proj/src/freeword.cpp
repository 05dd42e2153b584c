#include "steerlab/freeword.hpp"

#include <string>

#include "steerlab/errors.hpp"

namespace steerlab {

void FreeWord::check_group(int settings, int outcomes) {
  if (settings < 1 || outcomes < 1)
    throw BadSetting("free word: group needs settings >= 1 and outcomes >= 1");
}

FreeWord::FreeWord(int settings, int outcomes, std::vector<Letter> letters)
    : settings_(settings), outcomes_(outcomes), letters_(std::move(letters)) {
  check_group(settings, outcomes);
  int previous = -1;
  for (const Letter& letter : letters_) {
    if (letter.setting < 0 || letter.setting >= settings_)
      throw BadSetting("free word: setting " + std::to_string(letter.setting) + " out of range");
    if (letter.power < 1 || letter.power >= outcomes_)
      throw BadSetting("free word: power " + std::to_string(letter.power) + " not reduced");
    if (letter.setting == previous)
      throw BadSetting("free word: adjacent letters share a setting");
    previous = letter.setting;
  }
}

std::strong_ordering FreeWord::operator<=>(const FreeWord& other) const {
  if (auto c = length() <=> other.length(); c != 0) return c;
  for (std::size_t i = 0; i < length(); ++i)
    if (auto c = letters_[i] <=> other.letters_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

bool FreeWord::operator==(const FreeWord& other) const {
  return (*this <=> other) == std::strong_ordering::equal;
}

FreeWord normal_form(int settings, int outcomes,
                     const std::vector<std::pair<int, int>>& raw_letters) {
  FreeWord::check_group(settings, outcomes);
  std::vector<FreeWord::Letter> stack;
  for (const auto& [setting, raw_power] : raw_letters) {
    if (setting < 0 || setting >= settings)
      throw BadSetting("normal_form: setting " + std::to_string(setting) + " out of range");
    int power = ((raw_power % outcomes) + outcomes) % outcomes;
    while (true) {
      if (power == 0) break;
      if (stack.empty() || stack.back().setting != setting) {
        stack.push_back({setting, power});
        break;
      }
      // Merge into the previous letter; a cancellation may expose another
      // mergeable pair, so pop and retry.
      power = (stack.back().power + power) % outcomes;
      stack.pop_back();
    }
  }
  return FreeWord(settings, outcomes, std::move(stack));
}

FreeWord multiply(const FreeWord& lhs, const FreeWord& rhs) {
  if (lhs.settings() != rhs.settings() || lhs.outcomes() != rhs.outcomes())
    throw ScenarioMismatch("multiply: words live in different groups");
  std::vector<std::pair<int, int>> raw;
  raw.reserve(lhs.length() + rhs.length());
  for (const auto& letter : lhs.letters()) raw.emplace_back(letter.setting, letter.power);
  for (const auto& letter : rhs.letters()) raw.emplace_back(letter.setting, letter.power);
  return normal_form(lhs.settings(), lhs.outcomes(), raw);
}

FreeWord inverse(const FreeWord& word) {
  std::vector<FreeWord::Letter> letters;
  letters.reserve(word.length());
  for (auto it = word.letters().rbegin(); it != word.letters().rend(); ++it)
    letters.push_back({it->setting, word.outcomes() - it->power});
  return FreeWord(word.settings(), word.outcomes(), std::move(letters));
}

std::vector<FreeWord> enumerate_words(int settings, int outcomes, int max_length) {
  FreeWord::check_group(settings, outcomes);
  if (max_length < 0) throw BadSetting("enumerate_words: negative length bound");
  std::vector<FreeWord> all;
  all.emplace_back(settings, outcomes);
  std::size_t level_begin = 0;
  for (int length = 1; length <= max_length; ++length) {
    const std::size_t level_end = all.size();
    for (std::size_t w = level_begin; w < level_end; ++w) {
      const int blocked =
          all[w].letters().empty() ? -1 : all[w].letters().back().setting;
      for (int setting = 0; setting < settings; ++setting) {
        if (setting == blocked) continue;
        for (int power = 1; power < outcomes; ++power) {
          std::vector<FreeWord::Letter> letters = all[w].letters();
          letters.push_back({setting, power});
          all.emplace_back(settings, outcomes, std::move(letters));
        }
      }
    }
    level_begin = level_end;
    if (level_begin == all.size()) break;  // outcomes == 1: nothing to extend
  }
  return all;
}

std::uint64_t count_words(int settings, int outcomes, int max_length) {
  FreeWord::check_group(settings, outcomes);
  if (max_length < 0) throw BadSetting("count_words: negative length bound");
  const std::uint64_t first = static_cast<std::uint64_t>(settings) *
                              static_cast<std::uint64_t>(outcomes - 1);
  const std::uint64_t branch = static_cast<std::uint64_t>(settings - 1) *
                               static_cast<std::uint64_t>(outcomes - 1);
  std::uint64_t total = 1;
  std::uint64_t level = first;
  for (int length = 1; length <= max_length; ++length) {
    total += level;
    level *= branch;
  }
  return total;
}

}  // namespace steerlab
