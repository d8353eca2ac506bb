#ifndef STALLINGS_TESTS_SUPPORT_HPP_
#define STALLINGS_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "stallings/subgroup.hpp"

namespace stallings::testing {

  inline Word w(std::string const& text, std::size_t rank = 2) {
    return Word::parse(text, Alphabet{rank});
  }

  inline std::vector<Word> words(std::vector<std::string> const& texts,
                                 std::size_t                     rank = 2) {
    std::vector<Word> result;
    for (auto const& t : texts) {
      result.push_back(w(t, rank));
    }
    return result;
  }

  inline Subgroup sub(std::vector<std::string> const& texts,
                      std::size_t                     rank = 2) {
    return Subgroup::make(Alphabet{rank}, words(texts, rank));
  }

  // Seeded generators for property tests.
  class Gen {
   public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::size_t below(std::size_t n) {
      return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
    }
    std::size_t between(std::size_t lo, std::size_t hi) {
      return lo + below(hi - lo + 1);
    }

    Letter letter(Alphabet alphabet) {
      return Letter::from_order_key(below(2 * alphabet.rank));
    }

    // Raw letter sequence, not necessarily reduced.
    std::vector<Letter> letters(Alphabet alphabet, std::size_t length) {
      std::vector<Letter> raw;
      for (std::size_t i = 0; i < length; ++i) {
        raw.push_back(letter(alphabet));
      }
      return raw;
    }

    // Uniform among reduced words of exactly this length.
    Word reduced(Alphabet alphabet, std::size_t length) {
      std::vector<Letter> raw;
      while (raw.size() < length) {
        Letter x = letter(alphabet);
        if (!raw.empty() && x == raw.back().inverse()) {
          continue;
        }
        raw.push_back(x);
      }
      return Word::reduce(alphabet, raw);
    }

    Word word(Alphabet alphabet, std::size_t max_length) {
      return reduced(alphabet, below(max_length + 1));
    }

    std::vector<Word> generators(Alphabet    alphabet,
                                 std::size_t min_count,
                                 std::size_t max_count,
                                 std::size_t max_length) {
      std::vector<Word> gens;
      std::size_t const count = between(min_count, max_count);
      while (gens.size() < count) {
        gens.push_back(reduced(alphabet, between(1, max_length)));
      }
      return gens;
    }

    // Random product of at most `factors` generators and inverses.
    Word product(Alphabet alphabet, std::vector<Word> const& gens,
                 std::size_t factors) {
      Word result(alphabet);
      if (gens.empty()) {
        return result;
      }
      std::size_t const n = below(factors + 1);
      for (std::size_t i = 0; i < n; ++i) {
        Word const& g = gens[below(gens.size())];
        result *= below(2) == 0 ? g : g.inverse();
      }
      return result;
    }

    std::mt19937_64& engine() { return rng_; }

   private:
    std::mt19937_64 rng_;
  };

  // Free reduction by repeatedly deleting the leftmost cancelling pair.
  inline std::vector<Letter> naive_reduce(std::vector<Letter> raw) {
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
        if (raw[i + 1] == raw[i].inverse()) {
          raw.erase(raw.begin() + static_cast<std::ptrdiff_t>(i),
                    raw.begin() + static_cast<std::ptrdiff_t>(i) + 2);
          changed = true;
          break;
        }
      }
    }
    return raw;
  }

  // Number of subgroups of index k in F_n by Hall's recursion
  // a_k = k (k!)^(n-1) - sum_{i<k} ((k-i)!)^(n-1) a_i.
  inline std::int64_t hall_subgroup_count(std::size_t n, std::size_t k) {
    auto power = [](std::int64_t b, std::size_t e) {
      std::int64_t r = 1;
      while (e-- > 0) {
        r *= b;
      }
      return r;
    };
    auto factorial = [](std::size_t m) {
      std::int64_t r = 1;
      for (std::size_t i = 2; i <= m; ++i) {
        r *= static_cast<std::int64_t>(i);
      }
      return r;
    };
    std::vector<std::int64_t> a(k + 1, 0);
    for (std::size_t m = 1; m <= k; ++m) {
      std::int64_t v = static_cast<std::int64_t>(m) * power(factorial(m), n - 1);
      for (std::size_t i = 1; i < m; ++i) {
        v -= power(factorial(m - i), n - 1) * a[i];
      }
      a[m] = v;
    }
    return a[k];
  }

  // Transitive n-tuples of permutations of k points divided by (k-1)!,
  // counted by brute force.
  inline std::int64_t brute_force_subgroup_count(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::uint32_t>> perms;
    std::vector<std::uint32_t>              p(k);
    for (std::uint32_t i = 0; i < k; ++i) {
      p[i] = i;
    }
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    std::int64_t             transitive = 0;
    std::vector<std::size_t> choice(n, 0);
    while (true) {
      // Union-find over the orbits.
      std::vector<std::uint32_t> parent(k);
      for (std::uint32_t i = 0; i < k; ++i) {
        parent[i] = i;
      }
      auto find = [&](std::uint32_t x) {
        while (parent[x] != x) {
          x = parent[x];
        }
        return x;
      };
      for (std::size_t g = 0; g < n; ++g) {
        for (std::uint32_t i = 0; i < k; ++i) {
          parent[find(i)] = find(perms[choice[g]][i]);
        }
      }
      std::size_t roots = 0;
      for (std::uint32_t i = 0; i < k; ++i) {
        roots += find(i) == i ? 1 : 0;
      }
      transitive += roots == 1 ? 1 : 0;
      std::size_t g = 0;
      while (g < n && ++choice[g] == perms.size()) {
        choice[g++] = 0;
      }
      if (g == n) {
        break;
      }
    }
    std::int64_t divisor = 1;
    for (std::size_t i = 2; i < k; ++i) {
      divisor *= static_cast<std::int64_t>(i);
    }
    return transitive / divisor;
  }

  // Every reduced word of length at most `max_length`.
  inline std::vector<Word> all_reduced_words(Alphabet    alphabet,
                                             std::size_t max_length) {
    std::vector<Word> result{Word(alphabet)};
    std::vector<Word> frontier = result;
    for (std::size_t len = 1; len <= max_length; ++len) {
      std::vector<Word> next;
      for (Word const& u : frontier) {
        for (Letter x : letters_of(alphabet)) {
          if (!u.empty() && u[u.size() - 1] == x.inverse()) {
            continue;
          }
          next.push_back(u * Word::from_letter(alphabet, x));
        }
      }
      result.insert(result.end(), next.begin(), next.end());
      frontier = std::move(next);
    }
    return result;
  }

  // Spanning tree made of the given arcs, grown breadth-first from the
  // basepoint.
  inline SpanningTree tree_from_arcs(InvolutiveAutomaton const& a,
                                     std::vector<ArcId> const&  arcs) {
    SpanningTree tree;
    tree.root = a.basepoint();
    tree.order.push_back(tree.root);
    for (std::size_t i = 0; i < tree.order.size(); ++i) {
      VertexId const v = tree.order[i];
      for (Step s : a.steps_from(v)) {
        VertexId const t = a.terminus(s);
        if (std::find(arcs.begin(), arcs.end(), s.arc) == arcs.end()
            || t == tree.root || tree.parent.count(t) != 0) {
          continue;
        }
        tree.parent[t] = s;
        tree.arcs.push_back(s.arc);
        tree.order.push_back(t);
      }
    }
    return tree;
  }

  // The minimal generating family S_k (k >= 2) of F_2: the basis of the
  // automaton A_k read off the spanning tree it comes drawn with. A_k has two
  // a-chains of length k leaving the basepoint, bottom b_1..b_k and top
  // t_1..t_k, joined by b-arcs t_i -> b_i (i < k); then b_k -b-> p -a-> q,
  // t_k -b-> p', q' -a-> p', p' -a-> p and q' -b-> q. Tree arcs: the top
  // chain, the rungs, and everything past the chains except q' -b-> q.
  inline std::vector<Word> minimal_family(std::size_t k) {
    Alphabet const      f2{2};
    InvolutiveAutomaton a(f2);
    std::vector<ArcId>  tree;
    std::vector<VertexId> bottom{a.basepoint()};
    std::vector<VertexId> top{a.basepoint()};
    for (std::size_t i = 1; i <= k; ++i) {
      bottom.push_back(a.add_vertex());
      top.push_back(a.add_vertex());
      a.add_arc(bottom[i - 1], 1, bottom[i]);
      tree.push_back(a.add_arc(top[i - 1], 1, top[i]));
    }
    for (std::size_t i = 1; i < k; ++i) {
      tree.push_back(a.add_arc(top[i], 2, bottom[i]));
    }
    VertexId const p  = a.add_vertex();
    VertexId const q  = a.add_vertex();
    VertexId const p2 = a.add_vertex();
    VertexId const q2 = a.add_vertex();
    tree.push_back(a.add_arc(bottom[k], 2, p));
    tree.push_back(a.add_arc(p, 1, q));
    tree.push_back(a.add_arc(top[k], 2, p2));
    tree.push_back(a.add_arc(q2, 1, p2));
    tree.push_back(a.add_arc(p2, 1, p));
    a.add_arc(q2, 2, q);
    return basis_from_tree(a, tree_from_arcs(a, tree));
  }

  // z^-1 H z = K, checked on generators in both directions.
  inline bool conjugates_by(Subgroup const& h, Word const& z,
                            Subgroup const& k) {
    for (Word const& g : h.basis()) {
      if (!k.contains(z.inverse() * g * z)) {
        return false;
      }
    }
    for (Word const& g : k.basis()) {
      if (!h.contains(z * g * z.inverse())) {
        return false;
      }
    }
    return true;
  }

  // <a> = <b> by mutual membership of generators.
  inline bool same_subgroup(Subgroup const& h, Subgroup const& k) {
    for (Word const& g : h.generators()) {
      if (!k.contains(g)) {
        return false;
      }
    }
    for (Word const& g : k.generators()) {
      if (!h.contains(g)) {
        return false;
      }
    }
    return true;
  }

}  // namespace stallings::testing

#endif  // STALLINGS_TESTS_SUPPORT_HPP_
