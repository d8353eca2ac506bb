#include "stallings_cli/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#ifdef STALLINGS_CLI11_PACKAGE
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "stallings/automaton_io.hpp"
#include "stallings/error.hpp"
#include "stallings/subgroup.hpp"

namespace stallings::cli {

  namespace {

    // Raised for problems that should end the run with a usage status.
    struct UsageError : std::runtime_error {
      using std::runtime_error::runtime_error;
    };

    struct RawWord {
      std::string text;
      std::string where;  // "file:line" or "argument"
    };

    struct Options {
      std::optional<std::size_t>   rank;
      std::string                  h_path;
      std::string                  k_path;
      std::vector<std::string>     words;
      std::string                  output;
      std::size_t                  index   = 0;
      bool                         verbose = false;
      std::optional<std::uint64_t> seed;  // reserved; nothing is random yet
    };

    std::vector<RawWord> read_generator_file(std::string const& path) {
      std::ifstream in(path);
      if (!in) {
        throw UsageError("cannot open generator file '" + path + "'");
      }
      std::vector<RawWord> words;
      std::string          line;
      for (std::size_t n = 1; std::getline(in, line); ++n) {
        line = line.substr(0, line.find('#'));
        auto const first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
          continue;
        }
        auto const last = line.find_last_not_of(" \t\r");
        words.push_back({line.substr(first, last - first + 1),
                         path + ":" + std::to_string(n)});
      }
      return words;
    }

    // Everything a verb needs, parsed over one alphabet.
    struct Input {
      Alphabet          alphabet;
      std::vector<Word> h;
      std::vector<Word> k;
      std::vector<Word> words;
    };

    Word parse_word(RawWord const& raw, Alphabet alphabet) {
      try {
        return Word::parse(raw.text, alphabet);
      } catch (Error const& e) {
        throw UsageError(raw.where + ": " + e.what());
      }
    }

    // With no -n the rank is the largest generator index seen (at least 1).
    Alphabet choose_alphabet(Options const&                           opt,
                             std::vector<std::vector<RawWord>> const& groups) {
      if (opt.rank) {
        return Alphabet{*opt.rank};
      }
      Alphabet const wide{std::numeric_limits<Generator>::max()};
      std::size_t    rank = 1;
      for (auto const& group : groups) {
        for (auto const& raw : group) {
          Word const u = parse_word(raw, wide);
          for (Letter x : u.letters()) {
            rank = std::max<std::size_t>(rank, x.generator());
          }
        }
      }
      return Alphabet{rank};
    }

    Input load(Options const& opt, bool need_h, bool need_k) {
      std::vector<RawWord> h;
      std::vector<RawWord> k;
      std::vector<RawWord> words;
      if (need_h) {
        h = read_generator_file(opt.h_path);
      }
      if (need_k) {
        k = read_generator_file(opt.k_path);
      }
      for (auto const& w : opt.words) {
        words.push_back({w, "argument"});
      }
      Input in;
      in.alphabet = choose_alphabet(opt, {h, k, words});
      for (auto const& raw : h) {
        in.h.push_back(parse_word(raw, in.alphabet));
      }
      for (auto const& raw : k) {
        in.k.push_back(parse_word(raw, in.alphabet));
      }
      for (auto const& raw : words) {
        in.words.push_back(parse_word(raw, in.alphabet));
      }
      return in;
    }

    void print_words(std::ostream& out, std::vector<Word> const& words) {
      for (Word const& w : words) {
        out << w << '\n';
      }
    }

    std::string expand(PetalWord const& pw, std::vector<Word> const& gens) {
      if (pw.empty()) {
        return "1";
      }
      std::string s;
      for (PetalFactor f : pw) {
        s += "(" + gens[f.generator].str() + ")";
        if (f.exponent < 0) {
          s += "^-1";
        }
      }
      return s;
    }

    using Verb = std::function<int(Options const&, std::ostream&)>;

    struct VerbSpec {
      char const* name;
      char const* help;
      bool        h;      // takes -H
      bool        k;      // takes -K
      int         words;  // positional words: exact count, or -1 for any
      Verb        body;
    };

    std::vector<VerbSpec> verbs() {
      return {
          {"reduce", "Freely reduce words", false, false, -1,
           [](Options const& opt, std::ostream& out) {
             print_words(out, load(opt, false, false).words);
             return exit_ok;
           }},
          {"stallings", "Print the Stallings automaton of H", true, false, 0,
           [](Options const& opt, std::ostream& out) {
             auto const in = load(opt, true, false);
             auto const h  = Subgroup::make(in.alphabet, in.h);
             out << to_text(h.stallings());
             if (opt.verbose) {
               out << "# folds\n" << h.trace().dump();
             }
             return exit_ok;
           }},
          {"basis", "Print a basis of H", true, false, 0,
           [](Options const& opt, std::ostream& out) {
             auto const in = load(opt, true, false);
             print_words(out, Subgroup::make(in.alphabet, in.h).basis());
             return exit_ok;
           }},
          {"rank", "Print the rank of H", true, false, 0,
           [](Options const& opt, std::ostream& out) {
             auto const in = load(opt, true, false);
             out << Subgroup::make(in.alphabet, in.h).rank() << '\n';
             return exit_ok;
           }},
          {"member", "Decide membership in H, printing a witness", true, false,
           1,
           [](Options const& opt, std::ostream& out) {
             auto const in = load(opt, true, false);
             auto const pw =
                 Subgroup::make(in.alphabet, in.h).express(in.words[0]);
             if (!pw) {
               out << "not a member\n";
               return exit_negative;
             }
             out << format_petal_word(*pw) << '\n';
             return exit_ok;
           }},
          {"express", "Write a word as a product of the generators of H",
           true, false, 1,
           [](Options const& opt, std::ostream& out) {
             auto const in = load(opt, true, false);
             auto const h  = Subgroup::make(in.alphabet, in.h);
             auto const pw = h.express(in.words[0]);
             if (!pw) {
               out << "not a member\n";
               return exit_negative;
             }
             out << format_petal_word(*pw) << " = "
                 << expand(*pw, h.generators()) << '\n';
             return exit_ok;
           }},
          {"index", "Print the index of H and a transversal", true, false, 0,
           [](Options const& opt, std::ostream& out) {
             auto const in   = load(opt, true, false);
             auto const data = Subgroup::make(in.alphabet, in.h)
                                   .finite_index_data();
             if (!data) {
               out << "infinite\n";
               return exit_negative;
             }
             out << data->index << '\n';
             print_words(out, data->transversal);
             return exit_ok;
           }},
          {"transversal", "Print a transversal of H", true, false, 0,
           [](Options const& opt, std::ostream& out) {
             auto const in   = load(opt, true, false);
             auto const data = Subgroup::make(in.alphabet, in.h)
                                   .finite_index_data();
             if (!data) {
               out << "infinite index\n";
               return exit_negative;
             }
             print_words(out, data->transversal);
             return exit_ok;
           }},
          {"normal", "Decide whether H is normal", true, false, 0,
           [](Options const& opt, std::ostream& out) {
             auto const in = load(opt, true, false);
             bool const yes = Subgroup::make(in.alphabet, in.h).is_normal();
             out << (yes ? "normal\n" : "not normal\n");
             return yes ? exit_ok : exit_negative;
           }},
          {"conjugate", "Find z with z^-1 H z = K", true, true, 0,
           [](Options const& opt, std::ostream& out) {
             auto const in = load(opt, true, true);
             auto const z  = are_conjugate(Subgroup::make(in.alphabet, in.h),
                                           Subgroup::make(in.alphabet, in.k));
             if (!z) {
               out << "not conjugate\n";
               return exit_negative;
             }
             out << *z << '\n';
             return exit_ok;
           }},
          {"intersect", "Print the rank and a basis of H and K's intersection",
           true, true, 0,
           [](Options const& opt, std::ostream& out) {
             auto const in = load(opt, true, true);
             auto const i  = intersect(Subgroup::make(in.alphabet, in.h),
                                       Subgroup::make(in.alphabet, in.k));
             out << "rank " << i.rank() << '\n';
             print_words(out, i.basis());
             return exit_ok;
           }},
          {"shn", "Audit the Hanna Neumann bounds for H and K", true, true, 0,
           [](Options const& opt, std::ostream& out) {
             auto const in = load(opt, true, true);
             auto const a  = shn_audit(Subgroup::make(in.alphabet, in.h),
                                       Subgroup::make(in.alphabet, in.k));
             out << "components";
             for (auto r : a.component_reduced_ranks) {
               out << ' ' << r;
             }
             out << "\nsum " << a.sum << "\nstrong bound " << a.strong_bound
                 << "\nhowson bound " << a.howson_bound << '\n';
             return exit_ok;
           }},
          {"coset", "Intersect the cosets Hu and Kv (words: u v)", true, true,
           2,
           [](Options const& opt, std::ostream& out) {
             auto const in = load(opt, true, true);
             auto const w =
                 coset_intersect(Subgroup::make(in.alphabet, in.h), in.words[0],
                                 Subgroup::make(in.alphabet, in.k), in.words[1]);
             if (!w) {
               out << "disjoint\n";
               return exit_negative;
             }
             out << *w << '\n';
             return exit_ok;
           }},
          {"hall", "Complete H to a finite-index K with H a free factor",
           true, false, 0,
           [](Options const& opt, std::ostream& out) {
             auto const in = load(opt, true, false);
             auto const k  = hall_completion(Subgroup::make(in.alphabet, in.h));
             out << "index " << k.stallings().vertex_count() << '\n';
             print_words(out, k.basis());
             return exit_ok;
           }},
          {"enumerate", "List the subgroups of index k (-k)", false, false, 0,
           [](Options const& opt, std::ostream& out) {
             if (opt.index == 0) {
               throw UsageError("enumerate needs -k with k >= 1");
             }
             Alphabet const alphabet{opt.rank.value_or(1)};
             auto const     all = enumerate_index_subgroups(alphabet, opt.index);
             out << all.size() << '\n';
             for (auto const& h : all) {
               std::string line;
               for (Word const& w : h.basis()) {
                 line += (line.empty() ? "" : " ") + w.str();
               }
               out << line << '\n';
             }
             return exit_ok;
           }},
          {"free-family", "Decide whether the words of H form a free family",
           true, false, 0,
           [](Options const& opt, std::ostream& out) {
             auto const in  = load(opt, true, false);
             bool const yes = is_free_family(in.alphabet, in.h);
             out << (yes ? "free\n" : "not free\n");
             return yes ? exit_ok : exit_negative;
           }},
          {"generates", "Decide whether the words of H generate F_n", true,
           false, 0,
           [](Options const& opt, std::ostream& out) {
             auto const in  = load(opt, true, false);
             bool const yes = is_generating(in.alphabet, in.h);
             out << (yes ? "generates\n" : "does not generate\n");
             return yes ? exit_ok : exit_negative;
           }},
          {"dot", "Write the Stallings automaton of H as graphviz DOT", true,
           false, 0,
           [](Options const& opt, std::ostream& out) {
             auto const in  = load(opt, true, false);
             auto const dot = to_dot(Subgroup::make(in.alphabet, in.h)
                                         .stallings());
             if (opt.output.empty()) {
               out << dot;
               return exit_ok;
             }
             std::ofstream file(opt.output);
             if (!file || !(file << dot)) {
               throw UsageError("cannot write '" + opt.output + "'");
             }
             return exit_ok;
           }},
      };
    }

  }  // namespace

  int run(std::vector<std::string> const& args,
          std::ostream&                   out,
          std::ostream&                   err) {
    CLI::App app{"Stallings automata of subgroups of free groups", "stallings"};
    app.require_subcommand(1);

    Options                     opt;
    std::size_t                 rank = 0;
    auto const                  specs = verbs();
    std::map<CLI::App*, Verb>   dispatch;
    std::vector<CLI::Option*>   rank_flags;
    for (auto const& spec : specs) {
      CLI::App* sub = app.add_subcommand(spec.name, spec.help);
      rank_flags.push_back(
          sub->add_option("-n,--rank", rank, "Rank of the free group"));
      sub->add_option("--seed", opt.seed, "Random seed (reserved)");
      if (spec.h) {
        sub->add_option("-H", opt.h_path, "Generator file for H")->required();
      }
      if (spec.k) {
        sub->add_option("-K", opt.k_path, "Generator file for K")->required();
      }
      if (spec.words != 0) {
        auto* w = sub->add_option("words", opt.words, "Words");
        if (spec.words > 0) {
          w->expected(spec.words)->required();
        }
      }
      if (std::string(spec.name) == "stallings") {
        sub->add_flag("-v,--verbose", opt.verbose, "Also print the folds");
      }
      if (std::string(spec.name) == "enumerate") {
        sub->add_option("-k", opt.index, "Index")->required();
      }
      if (std::string(spec.name) == "dot") {
        sub->add_option("-o", opt.output, "Output path");
      }
      dispatch[sub] = spec.body;
    }

    if (!args.empty() && !args[0].empty() && args[0][0] != '-'
        && std::none_of(specs.begin(), specs.end(), [&](VerbSpec const& v) {
             return args[0] == v.name;
           })) {
      err << "stallings: unknown verb '" << args[0] << "'\n";
      return exit_usage;
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (CLI::ParseError const& e) {
      int const status = app.exit(e, out, err);
      return status == 0 ? exit_ok : exit_usage;
    }
    for (auto* flag : rank_flags) {
      if (flag->count() > 0) {
        opt.rank = rank;
      }
    }

    CLI::App* chosen = app.get_subcommands().front();
    try {
      return dispatch.at(chosen)(opt, out);
    } catch (UsageError const& e) {
      err << "stallings: " << e.what() << '\n';
    } catch (Error const& e) {
      err << "stallings: " << e.what() << '\n';
    }
    return exit_usage;
  }

}  // namespace stallings::cli
