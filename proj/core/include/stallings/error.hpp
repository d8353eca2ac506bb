#ifndef STALLINGS_ERROR_HPP_
#define STALLINGS_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace stallings {

  // Base class of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Malformed word, automaton text or generator file.
  class ParseError : public Error {
   public:
    using Error::Error;
  };

  // Operands live over free groups of different rank, or a letter is outside
  // the alphabet.
  class AlphabetMismatch : public Error {
   public:
    using Error::Error;
  };

  // A documented precondition does not hold (non-deterministic automaton,
  // disconnected graph, trivial subgroup where a nontrivial one is needed...).
  class InvalidArgument : public Error {
   public:
    using Error::Error;
  };

  // A computation would exceed a configured size cap.
  class ResourceLimit : public Error {
   public:
    using Error::Error;
  };

}  // namespace stallings

#endif  // STALLINGS_ERROR_HPP_
