#include "stallings/word.hpp"

#include <cctype>
#include <ostream>

#include "stallings/error.hpp"

namespace stallings {

  namespace {

    void check_letter(Alphabet alphabet, Letter x) {
      if (!alphabet.contains(x.generator())) {
        throw AlphabetMismatch("letter " + format_letter(x)
                               + " is outside the alphabet of rank "
                               + std::to_string(alphabet.rank));
      }
    }

    // Single left-to-right pass with the output vector acting as a stack.
    void push_reduced(std::vector<Letter>& out, Letter x) {
      if (!out.empty() && out.back() == x.inverse()) {
        out.pop_back();
      } else {
        out.push_back(x);
      }
    }

  }  // namespace

  std::vector<Letter> letters_of(Alphabet alphabet) {
    std::vector<Letter> result;
    result.reserve(2 * alphabet.rank);
    for (std::size_t key = 0; key < 2 * alphabet.rank; ++key) {
      result.push_back(Letter::from_order_key(key));
    }
    return result;
  }

  std::string format_letter(Letter x) {
    Generator const g = x.generator();
    if (g >= 1 && g <= 26) {
      char const base = x.is_positive() ? 'a' : 'A';
      return std::string(1, static_cast<char>(base + (g - 1)));
    }
    return (x.is_positive() ? "x" : "X") + std::to_string(g);
  }

  Word Word::reduce(Alphabet alphabet, std::span<Letter const> raw) {
    Word w(alphabet);
    w.letters_.reserve(raw.size());
    for (Letter x : raw) {
      check_letter(alphabet, x);
      push_reduced(w.letters_, x);
    }
    return w;
  }

  Word Word::parse(std::string_view text, Alphabet alphabet) {
    if (text == "1") {
      return Word(alphabet);
    }
    std::vector<Letter> raw;
    std::size_t i = 0;
    while (i < text.size()) {
      char const c = text[i];
      if ((c == 'x' || c == 'X') && i + 1 < text.size()
          && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        std::size_t j = i + 1;
        Generator g = 0;
        while (j < text.size()
               && std::isdigit(static_cast<unsigned char>(text[j]))) {
          g = g * 10 + static_cast<Generator>(text[j] - '0');
          if (g > 1'000'000) {
            throw ParseError("generator index too large in '"
                             + std::string(text) + "'");
          }
          ++j;
        }
        if (g == 0) {
          throw ParseError("invalid token '" + std::string(text.substr(i, j - i))
                           + "' in word '" + std::string(text) + "'");
        }
        raw.emplace_back(g, c == 'x' ? 1 : -1);
        i = j;
      } else if (c >= 'a' && c <= 'z') {
        raw.emplace_back(static_cast<Generator>(c - 'a' + 1), 1);
        ++i;
      } else if (c >= 'A' && c <= 'Z') {
        raw.emplace_back(static_cast<Generator>(c - 'A' + 1), -1);
        ++i;
      } else {
        throw ParseError("invalid character '" + std::string(1, c)
                         + "' in word '" + std::string(text) + "'");
      }
    }
    for (Letter x : raw) {
      if (!alphabet.contains(x.generator())) {
        throw AlphabetMismatch("letter " + format_letter(x) + " in word '"
                               + std::string(text)
                               + "' is outside the alphabet of rank "
                               + std::to_string(alphabet.rank));
      }
    }
    return reduce(alphabet, raw);
  }

  Word Word::inverse() const {
    Word w(alphabet_);
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
      w.letters_.push_back(it->inverse());
    }
    return w;
  }

  long Word::exponent_sum(Generator g) const {
    if (!alphabet_.contains(g)) {
      throw AlphabetMismatch("generator " + std::to_string(g)
                             + " is outside the alphabet of rank "
                             + std::to_string(alphabet_.rank));
    }
    long sum = 0;
    for (Letter x : letters_) {
      if (x.generator() == g) {
        sum += x.sign();
      }
    }
    return sum;
  }

  std::string Word::str() const {
    if (letters_.empty()) {
      return "1";
    }
    std::string s;
    for (Letter x : letters_) {
      s += format_letter(x);
    }
    return s;
  }

  Word& Word::operator*=(Word const& other) {
    if (alphabet_ != other.alphabet_) {
      throw AlphabetMismatch("cannot multiply words over alphabets of rank "
                             + std::to_string(alphabet_.rank) + " and "
                             + std::to_string(other.alphabet_.rank));
    }
    for (Letter x : other.letters_) {
      push_reduced(letters_, x);
    }
    return *this;
  }

  std::strong_ordering operator<=>(Word const& u, Word const& v) {
    if (auto c = u.alphabet_.rank <=> v.alphabet_.rank; c != 0) {
      return c;
    }
    if (auto c = u.letters_.size() <=> v.letters_.size(); c != 0) {
      return c;
    }
    for (std::size_t i = 0; i < u.letters_.size(); ++i) {
      if (auto c = u.letters_[i].order_key() <=> v.letters_[i].order_key();
          c != 0) {
        return c;
      }
    }
    return std::strong_ordering::equal;
  }

  std::ostream& operator<<(std::ostream& os, Word const& w) {
    return os << w.str();
  }

}  // namespace stallings
