#include "stallings/automaton_io.hpp"

#include <array>
#include <optional>
#include <sstream>
#include <vector>

#include "stallings/error.hpp"

namespace stallings {

  namespace {

    constexpr std::array<char const*, 6> kColors
        = {"blue", "red", "darkgreen", "orange", "purple", "brown"};
    constexpr std::array<char const*, 3> kStyles = {"solid", "dashed", "dotted"};

    std::string strip_comment(std::string const& line) {
      return line.substr(0, line.find('#'));
    }

    [[noreturn]] void fail(std::size_t line_no, std::string const& what) {
      throw ParseError("line " + std::to_string(line_no) + ": " + what);
    }

    std::size_t parse_count(std::istringstream& in,
                            std::size_t         line_no,
                            std::string const&  what) {
      std::string token;
      if (!(in >> token)) {
        fail(line_no, "missing " + what);
      }
      std::size_t value = 0;
      for (char c : token) {
        if (c < '0' || c > '9') {
          fail(line_no, "invalid " + what + " '" + token + "'");
        }
        value = value * 10 + static_cast<std::size_t>(c - '0');
        if (value > 100'000'000) {
          fail(line_no, what + " '" + token + "' is too large");
        }
      }
      return value;
    }

  }  // namespace

  std::string to_dot(InvolutiveAutomaton const& a) {
    std::ostringstream out;
    out << "digraph automaton {\n"
        << "  rankdir=LR;\n"
        << "  node [shape=circle, label=\"\", width=0.3];\n";
    for (VertexId v : a.vertices()) {
      out << "  v" << v;
      if (v == a.basepoint()) {
        out << " [shape=doublecircle]";
      }
      out << ";\n";
    }
    for (ArcId e : a.arcs()) {
      Arc const&        arc = a.arc(e);
      std::size_t const k   = arc.label - 1;
      out << "  v" << arc.source << " -> v" << arc.target << " [label=\""
          << format_letter(Letter(arc.label, 1)) << "\", color="
          << kColors[k % kColors.size()]
          << ", style=" << kStyles[(k / kColors.size()) % kStyles.size()]
          << "];\n";
    }
    out << "}\n";
    return out.str();
  }

  std::string to_text(InvolutiveAutomaton const& a) {
    std::vector<VertexId> old;
    auto const            c = compacted(a, &old);
    std::ostringstream    out;
    out << "alphabet " << c.alphabet().rank << "\n"
        << "vertices " << c.vertex_count() << "\n"
        << "base " << c.basepoint() << "\n";
    for (ArcId e : c.arcs()) {
      Arc const& arc = c.arc(e);
      out << "arc " << arc.source << " " << format_letter(Letter(arc.label, 1))
          << " " << arc.target << "\n";
    }
    return out.str();
  }

  InvolutiveAutomaton parse_automaton(std::string_view text) {
    std::istringstream                 lines{std::string(text)};
    std::string                        line;
    std::size_t                        line_no = 0;
    std::optional<Alphabet>            alphabet;
    std::optional<InvolutiveAutomaton> result;
    std::optional<std::size_t>         base;

    while (std::getline(lines, line)) {
      ++line_no;
      std::istringstream in(strip_comment(line));
      std::string        keyword;
      if (!(in >> keyword)) {
        continue;
      }
      if (keyword == "alphabet") {
        if (alphabet) {
          fail(line_no, "duplicate 'alphabet'");
        }
        alphabet = Alphabet{parse_count(in, line_no, "alphabet rank")};
      } else if (keyword == "vertices") {
        if (!alphabet) {
          fail(line_no, "'vertices' before 'alphabet'");
        }
        if (result) {
          fail(line_no, "duplicate 'vertices'");
        }
        std::size_t const k = parse_count(in, line_no, "vertex count");
        if (k == 0) {
          fail(line_no, "an automaton needs at least one vertex");
        }
        result.emplace(*alphabet);
        for (std::size_t i = 1; i < k; ++i) {
          result->add_vertex();
        }
      } else if (keyword == "base") {
        if (!result) {
          fail(line_no, "'base' before 'vertices'");
        }
        base = parse_count(in, line_no, "basepoint");
        if (*base >= result->vertex_count()) {
          fail(line_no, "basepoint " + std::to_string(*base) + " out of range");
        }
        result->set_basepoint(static_cast<VertexId>(*base));
      } else if (keyword == "arc") {
        if (!result) {
          fail(line_no, "'arc' before 'vertices'");
        }
        std::size_t const src = parse_count(in, line_no, "arc source");
        std::string       label;
        if (!(in >> label)) {
          fail(line_no, "missing arc label");
        }
        std::size_t const dst = parse_count(in, line_no, "arc target");
        if (src >= result->vertex_count() || dst >= result->vertex_count()) {
          fail(line_no, "arc endpoint out of range");
        }
        Word w;
        try {
          w = Word::parse(label, *alphabet);
        } catch (Error const& e) {
          fail(line_no, "invalid arc label '" + label + "': " + e.what());
        }
        if (w.size() != 1 || !w[0].is_positive()) {
          fail(line_no, "arc label '" + label
                            + "' must be a single positive letter");
        }
        result->add_arc(static_cast<VertexId>(src), w[0].generator(),
                        static_cast<VertexId>(dst));
      } else {
        fail(line_no, "unknown keyword '" + keyword + "'");
      }
      std::string extra;
      if (in >> extra) {
        fail(line_no, "unexpected token '" + extra + "'");
      }
    }
    if (!result) {
      throw ParseError("automaton text has no 'vertices' line");
    }
    if (!base) {
      throw ParseError("automaton text has no 'base' line");
    }
    return std::move(*result);
  }

}  // namespace stallings
