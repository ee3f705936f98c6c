#include "shufflekit/alphabet.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "shufflekit/errors.hpp"

namespace shufflekit {

Alphabet::Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const Symbol& s = symbols_[i];
    if (s.empty()) throw InputError("alphabet symbols must be nonempty");
    if (s == kEpsilonToken || s == kEndMarkerToken)
      throw InputError("reserved token '" + s + "' declared in alphabet");
    if (!index_.emplace(s, i).second)
      throw InputError("duplicate alphabet symbol '" + s + "'");
  }
}

std::optional<std::size_t> Alphabet::find(const Symbol& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Alphabet::index_of(const Symbol& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) throw InputError("symbol '" + s + "' is not in the alphabet");
  return it->second;
}

std::vector<int> Alphabet::encode(const Word& w) const {
  std::vector<int> out;
  out.reserve(w.size());
  for (const auto& s : w) out.push_back(static_cast<int>(index_of(s)));
  return out;
}

bool Alphabet::same_set(const Alphabet& other) const {
  return size() == other.size() && subset_of(other);
}

bool Alphabet::subset_of(const Alphabet& other) const {
  return std::all_of(symbols_.begin(), symbols_.end(),
                     [&](const Symbol& s) { return other.contains(s); });
}

Alphabet Alphabet::merged_with(const Alphabet& other) const {
  std::vector<Symbol> merged = symbols_;
  for (const auto& s : other.symbols_)
    if (!contains(s)) merged.push_back(s);
  return Alphabet(std::move(merged));
}

Alphabet Alphabet::of_word(const Word& w) {
  std::set<Symbol> letters(w.begin(), w.end());
  return Alphabet(std::vector<Symbol>(letters.begin(), letters.end()));
}

Word word_from_chars(std::string_view text) {
  Word w;
  w.reserve(text.size());
  for (char c : text) w.emplace_back(1, c);
  return w;
}

std::string format_word(const Word& w) {
  bool simple = !w.empty() && std::all_of(w.begin(), w.end(), [](const Symbol& s) {
    return s.size() == 1 && s[0] != '[' && s[0] != ' ';
  });
  if (simple) {
    std::string out;
    for (const auto& s : w) out += s;
    return out;
  }
  return nlohmann::json(w).dump();
}

Word parse_word(std::string_view text) {
  if (!text.empty() && text.front() == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("malformed word: ") + e.what());
    }
    if (!j.is_array()) throw InputError("word must be a JSON array of symbols");
    Word w;
    for (const auto& s : j) {
      if (!s.is_string()) throw InputError("word symbols must be strings");
      w.push_back(s.get<std::string>());
    }
    return w;
  }
  return word_from_chars(text);
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace shufflekit
