#ifndef STALLINGS_AUTOMATON_IO_HPP_
#define STALLINGS_AUTOMATON_IO_HPP_

#include <string>
#include <string_view>

#include "stallings/automaton.hpp"

namespace stallings {

  // Graphviz digraph of the positive arcs. Vertices appear in ascending id
  // order, the basepoint doubly circled; each generator gets its own
  // colour/style class.
  [[nodiscard]] std::string to_dot(InvolutiveAutomaton const& a);

  // Line-oriented text form:
  //
  //   alphabet <n>
  //   vertices <k>
  //   base <id>
  //   arc <src> <label-letter> <dst>      (one per positive arc)
  //
  // Vertices are renumbered 0..k-1 in ascending id order.
  [[nodiscard]] std::string to_text(InvolutiveAutomaton const& a);

  // Inverse of to_text. Blank lines and '#' comments are ignored. Throws
  // ParseError naming the offending line.
  [[nodiscard]] InvolutiveAutomaton parse_automaton(std::string_view text);

}  // namespace stallings

#endif  // STALLINGS_AUTOMATON_IO_HPP_
