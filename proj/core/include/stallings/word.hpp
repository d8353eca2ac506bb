#ifndef STALLINGS_WORD_HPP_
#define STALLINGS_WORD_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stallings {

  // 1-based index of a free generator.
  using Generator = std::uint32_t;

  // The basis A = {a_1, ..., a_n} of the ambient free group F_n; only its
  // cardinality matters. Rank 0 denotes the trivial group.
  struct Alphabet {
    std::size_t rank = 0;

    [[nodiscard]] constexpr bool contains(Generator g) const noexcept {
      return g >= 1 && g <= rank;
    }

    friend constexpr bool operator==(Alphabet, Alphabet) = default;
  };

  // A signed generator a_i^{+1} or a_i^{-1}.
  class Letter {
   public:
    constexpr Letter() noexcept = default;
    constexpr Letter(Generator g, int sign) noexcept
        : value_(sign < 0 ? -static_cast<std::int32_t>(g)
                          : static_cast<std::int32_t>(g)) {}

    [[nodiscard]] constexpr Generator generator() const noexcept {
      return static_cast<Generator>(value_ < 0 ? -value_ : value_);
    }
    [[nodiscard]] constexpr int sign() const noexcept {
      return value_ < 0 ? -1 : 1;
    }
    [[nodiscard]] constexpr bool is_positive() const noexcept {
      return value_ > 0;
    }
    [[nodiscard]] constexpr Letter inverse() const noexcept {
      Letter l;
      l.value_ = -value_;
      return l;
    }

    // Position in the order a, a^-1, b, b^-1, ... used for every
    // deterministic traversal in the library.
    [[nodiscard]] constexpr std::size_t order_key() const noexcept {
      return 2 * (generator() - 1) + (value_ < 0 ? 1 : 0);
    }
    [[nodiscard]] static constexpr Letter from_order_key(std::size_t key) {
      return Letter(static_cast<Generator>(key / 2 + 1), key % 2 == 0 ? 1 : -1);
    }

    friend constexpr bool operator==(Letter, Letter) noexcept = default;
    friend constexpr auto operator<=>(Letter x, Letter y) noexcept {
      return x.order_key() <=> y.order_key();
    }

   private:
    std::int32_t value_ = 0;
  };

  // All 2n letters of the alphabet in traversal order a, a^-1, b, b^-1, ...
  [[nodiscard]] std::vector<Letter> letters_of(Alphabet alphabet);

  // Text form of a single letter: a..z / A..Z for generators up to 26,
  // x<k> / X<k> beyond.
  [[nodiscard]] std::string format_letter(Letter x);

  // An element of the free group F_n, always stored as its unique reduced
  // representative.
  class Word {
   public:
    Word() = default;
    explicit Word(Alphabet alphabet) : alphabet_(alphabet) {}

    // Freely reduces an arbitrary letter sequence. Throws AlphabetMismatch on
    // a letter outside the alphabet.
    [[nodiscard]] static Word reduce(Alphabet alphabet,
                                     std::span<Letter const> raw);

    // Parses the line-oriented word syntax: lowercase letters for generators
    // 1..26, uppercase for their inverses, x<k>/X<k> for generator k, and ""
    // or "1" for the identity. The result is reduced.
    [[nodiscard]] static Word parse(std::string_view text, Alphabet alphabet);

    [[nodiscard]] static Word from_letter(Alphabet alphabet, Letter x) {
      Letter const raw[] = {x};
      return reduce(alphabet, raw);
    }

    [[nodiscard]] Alphabet alphabet() const noexcept { return alphabet_; }
    [[nodiscard]] std::span<Letter const> letters() const noexcept {
      return letters_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return letters_.size(); }
    [[nodiscard]] bool empty() const noexcept { return letters_.empty(); }
    [[nodiscard]] Letter operator[](std::size_t i) const { return letters_[i]; }

    [[nodiscard]] Word inverse() const;

    // Signed number of occurrences of generator g; additive under products.
    [[nodiscard]] long exponent_sum(Generator g) const;

    // "1" for the identity.
    [[nodiscard]] std::string str() const;

    Word& operator*=(Word const& other);
    friend Word operator*(Word u, Word const& v) {
      u *= v;
      return u;
    }

    friend bool operator==(Word const&, Word const&) = default;

    // Shortlex order (length first, then letters in traversal order).
    friend std::strong_ordering operator<=>(Word const& u, Word const& v);

   private:
    Alphabet alphabet_;
    std::vector<Letter> letters_;
  };

  std::ostream& operator<<(std::ostream& os, Word const& w);

  // Free-function spellings of the group operations.
  [[nodiscard]] inline Word multiply(Word const& u, Word const& v) {
    return u * v;
  }
  [[nodiscard]] inline Word invert(Word const& w) { return w.inverse(); }

}  // namespace stallings

#endif  // STALLINGS_WORD_HPP_
