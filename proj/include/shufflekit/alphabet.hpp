#ifndef SHUFFLEKIT_ALPHABET_HPP
#define SHUFFLEKIT_ALPHABET_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace shufflekit {

using Symbol = std::string;
using Word = std::vector<Symbol>;

/// Reserved tokens; never valid alphabet members.
inline const Symbol kEpsilonToken = "<eps>";
inline const Symbol kEndMarkerToken = "<end>";

/// Ordered, duplicate-free list of symbols.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Symbol> symbols);

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<Symbol>& symbols() const { return symbols_; }

  std::optional<std::size_t> find(const Symbol& s) const;
  bool contains(const Symbol& s) const { return find(s).has_value(); }
  /// Throws InputError for symbols outside the alphabet.
  std::size_t index_of(const Symbol& s) const;
  std::vector<int> encode(const Word& w) const;

  /// Same members, order ignored.
  bool same_set(const Alphabet& other) const;
  bool subset_of(const Alphabet& other) const;
  /// This alphabet followed by the new members of `other`, in their order.
  Alphabet merged_with(const Alphabet& other) const;

  /// Letters of `w`, sorted.
  static Alphabet of_word(const Word& w);

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<Symbol> symbols_;
  std::unordered_map<Symbol, std::size_t> index_;
};

/// Each character of `text` becomes one symbol.
Word word_from_chars(std::string_view text);

/// Concatenation when every symbol is one character and the word is
/// nonempty, otherwise the JSON array form (`[]` for the empty word).
std::string format_word(const Word& w);

/// Inverse of format_word: JSON array form or plain characters.
Word parse_word(std::string_view text);

Word concat(const Word& a, const Word& b);

}  // namespace shufflekit

#endif
