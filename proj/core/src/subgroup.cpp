#include "stallings/subgroup.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "stallings/error.hpp"

namespace stallings {

  namespace {

    void check_alphabet(Alphabet expected, Word const& w) {
      if (w.alphabet() != expected) {
        throw AlphabetMismatch("word " + w.str() + " lives over rank "
                               + std::to_string(w.alphabet().rank)
                               + ", expected "
                               + std::to_string(expected.rank));
      }
    }

    void check_alphabet(Subgroup const& h, Subgroup const& k) {
      if (h.alphabet() != k.alphabet()) {
        throw AlphabetMismatch("subgroups of free groups of rank "
                               + std::to_string(h.alphabet().rank) + " and "
                               + std::to_string(k.alphabet().rank));
      }
    }

    // Extends a deterministic automaton with the hair needed to read w from
    // the basepoint; returns the end vertex.
    VertexId extend_with_hair(InvolutiveAutomaton& a, Word const& w) {
      VertexId current = a.basepoint();
      for (Letter x : w.letters()) {
        if (auto next = a.follow(current, x)) {
          current = *next;
        } else {
          VertexId const fresh = a.add_vertex();
          a.add_arc(current, x, fresh);
          current = fresh;
        }
      }
      return current;
    }

  }  // namespace

  std::vector<Word> basis_from_tree(InvolutiveAutomaton const& a,
                                    SpanningTree const&        tree) {
    std::set<ArcId> const in_tree(tree.arcs.begin(), tree.arcs.end());
    std::vector<Word>     basis;
    for (ArcId e : a.arcs()) {
      if (in_tree.count(e) != 0) {
        continue;
      }
      Arc const& arc = a.arc(e);
      basis.push_back(tree.label_to(a, arc.source)
                      * Word::from_letter(a.alphabet(), Letter(arc.label, 1))
                      * tree.label_to(a, arc.target).inverse());
    }
    return basis;
  }

  ////////////////////////////////////////////////////////////////////////
  // Subgroup
  ////////////////////////////////////////////////////////////////////////

  Subgroup Subgroup::make(Alphabet alphabet, std::span<Word const> generators) {
    for (Word const& w : generators) {
      check_alphabet(alphabet, w);
    }
    Subgroup h;
    h.alphabet_   = alphabet;
    h.generators_.assign(generators.begin(), generators.end());
    h.flower_     = stallings::flower(alphabet, generators);
    auto folded   = fold_to_completion(h.flower_.automaton);
    h.trace_      = std::move(folded.trace);
    h.folded_core_ = core(folded.automaton);
    h.stallings_  = h.folded_core_;
    h.tree_       = spanning_tree(h.stallings_);
    h.basis_      = basis_from_tree(h.stallings_, h.tree_);
    return h;
  }

  Subgroup Subgroup::from_automaton(InvolutiveAutomaton const&  stallings,
                                    std::optional<SpanningTree> tree) {
    if (!stallings.is_deterministic() || !stallings.is_connected()) {
      throw InvalidArgument("a Stallings automaton must be deterministic and "
                            "connected");
    }
    if (core(stallings).vertex_count() != stallings.vertex_count()) {
      throw InvalidArgument("a Stallings automaton must be a core automaton");
    }
    Subgroup h;
    h.alphabet_  = stallings.alphabet();
    h.stallings_ = stallings;
    if (tree) {
      if (tree->root != stallings.basepoint()
          || tree->order.size() != stallings.vertex_count()) {
        throw InvalidArgument("spanning tree does not span the automaton");
      }
      h.tree_ = std::move(*tree);
    } else {
      h.tree_ = spanning_tree(stallings);
    }
    h.basis_      = basis_from_tree(h.stallings_, h.tree_);
    h.generators_ = h.basis_;
    h.flower_     = stallings::flower(h.alphabet_, h.generators_);
    auto folded   = fold_to_completion(h.flower_.automaton);
    h.trace_      = std::move(folded.trace);
    h.folded_core_ = core(folded.automaton);
    return h;
  }

  bool Subgroup::contains(Word const& w) const {
    check_alphabet(alphabet_, w);
    return read_word(stallings_, stallings_.basepoint(), w)
           == stallings_.basepoint();
  }

  std::optional<PetalWord> Subgroup::express(Word const& w) const {
    check_alphabet(alphabet_, w);
    VertexId const base = folded_core_.basepoint();
    auto           walk = read_walk(folded_core_, base, w);
    if (!walk || (!walk->empty() && folded_core_.terminus(walk->back()) != base)) {
      return std::nullopt;
    }
    PetalWord result = petal_decompose(flower_, lift_path(trace_, *walk));
    if (evaluate(result, generators_, alphabet_) != w) {
      throw std::logic_error("membership witness does not evaluate to "
                             + w.str());
    }
    return result;
  }

  std::optional<IndexData> Subgroup::finite_index_data() const {
    if (!stallings_.is_saturated()) {
      return std::nullopt;
    }
    IndexData data;
    data.index = stallings_.vertex_count();
    for (VertexId v : tree_.order) {
      data.transversal.push_back(tree_.label_to(stallings_, v));
    }
    return data;
  }

  bool Subgroup::is_normal() const {
    for (Letter x : letters_of(alphabet_)) {
      Word const c = Word::from_letter(alphabet_, x);
      for (Word const& g : basis_) {
        if (!contains(c.inverse() * g * c)) {
          return false;
        }
      }
    }
    return true;
  }

  bool Subgroup::is_normal_by_automaton() const {
    if (is_trivial()) {
      throw InvalidArgument("the graphical normality criterion needs a "
                            "nontrivial subgroup");
    }
    return stallings_.is_saturated() && is_vertex_transitive(stallings_);
  }

  ////////////////////////////////////////////////////////////////////////
  // Generating sets
  ////////////////////////////////////////////////////////////////////////

  bool is_free_family(Alphabet alphabet, std::span<Word const> s) {
    for (Word const& w : s) {
      check_alphabet(alphabet, w);
      if (w.empty()) {
        return false;
      }
    }
    return loss(flower(alphabet, s).automaton) == 0;
  }

  bool is_generating(Alphabet alphabet, std::span<Word const> s) {
    auto const h = Subgroup::make(alphabet, s);
    return isomorphic_based(h.stallings(), bouquet(alphabet)).has_value();
  }

  bool is_basis(Alphabet alphabet, std::span<Word const> s) {
    return s.size() == alphabet.rank && is_generating(alphabet, s);
  }

  ////////////////////////////////////////////////////////////////////////
  // Conjugacy
  ////////////////////////////////////////////////////////////////////////

  std::optional<Word> are_conjugate(Subgroup const& h, Subgroup const& k) {
    check_alphabet(h, k);
    if (h.is_trivial() || k.is_trivial()) {
      if (h.is_trivial() && k.is_trivial()) {
        return Word(h.alphabet());
      }
      return std::nullopt;
    }
    auto const rh  = restricted_core(h.stallings());
    auto const rk  = restricted_core(k.stallings());
    auto const psi = isomorphic_unbased(rh.graph, rk.graph);
    if (!psi) {
      return std::nullopt;
    }
    auto const moved = rebased(rk.graph, psi->at(rh.attach));
    auto const t     = spanning_tree(moved).label_to(moved, rk.attach);
    return rh.hair * t * rk.hair.inverse();
  }

  ////////////////////////////////////////////////////////////////////////
  // Intersections
  ////////////////////////////////////////////////////////////////////////

  Subgroup intersect(Subgroup const& h, Subgroup const& k) {
    check_alphabet(h, k);
    auto const pc = product_component(h.stallings(), k.stallings());
    return Subgroup::from_automaton(core(pc.automaton));
  }

  ShnAudit shn_audit(Subgroup const& h, Subgroup const& k) {
    check_alphabet(h, k);
    auto const  full = product(h.stallings(), k.stallings());
    auto const& a    = full.automaton;

    // Prune to the cyclic core: strip degree <= 1 vertices everywhere,
    // basepoint included.
    std::vector<std::size_t> deg(a.vertex_id_bound());
    std::vector<char>        alive(a.vertex_id_bound());
    std::deque<VertexId>     queue;
    for (VertexId v : a.vertices()) {
      deg[v]   = a.degree(v);
      alive[v] = 1;
      queue.push_back(v);
    }
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      if (!alive[v] || deg[v] > 1) {
        continue;
      }
      alive[v] = 0;
      for (ArcId e : a.incident_arcs(v)) {
        Arc const&     arc   = a.arc(e);
        VertexId const other = arc.source == v ? arc.target : arc.source;
        if (other != v && alive[other]) {
          --deg[other];
          queue.push_back(other);
        }
      }
    }

    ShnAudit audit;
    for (auto const& component : connected_components(a)) {
      std::size_t vertices = 0;
      std::size_t arcs     = 0;
      for (VertexId v : component) {
        if (!alive[v]) {
          continue;
        }
        ++vertices;
        for (ArcId e : a.incident_arcs(v)) {
          Arc const& arc = a.arc(e);
          if (arc.source == v && alive[arc.target]) {
            ++arcs;
          }
        }
      }
      std::size_t const rank = vertices == 0 ? 0 : 1 + arcs - vertices;
      audit.component_reduced_ranks.push_back(rank == 0 ? 0 : rank - 1);
      audit.sum += audit.component_reduced_ranks.back();
    }
    audit.strong_bound = h.reduced_rank() * k.reduced_rank();
    audit.howson_bound = 2 * audit.strong_bound;
    return audit;
  }

  std::optional<Word> coset_intersect(Subgroup const& h,
                                      Word const&     u,
                                      Subgroup const& k,
                                      Word const&     v) {
    check_alphabet(h, k);
    check_alphabet(h.alphabet(), u);
    check_alphabet(h.alphabet(), v);
    InvolutiveAutomaton hu = h.stallings();
    InvolutiveAutomaton kv = k.stallings();
    VertexId const      p  = extend_with_hair(hu, u);
    VertexId const      q  = extend_with_hair(kv, v);
    auto const          pc = product_component(hu, kv);
    auto const          target = pc.find(p, q);
    if (!target) {
      return std::nullopt;
    }
    return spanning_tree(pc.automaton).label_to(pc.automaton, *target);
  }

  ////////////////////////////////////////////////////////////////////////
  // Finite index
  ////////////////////////////////////////////////////////////////////////

  Subgroup hall_completion(Subgroup const& h) {
    if (h.stallings().is_saturated()) {
      return h;
    }
    InvolutiveAutomaton const& original = h.stallings();
    InvolutiveAutomaton        completed = original;
    for (Generator g = 1; g <= h.alphabet().rank; ++g) {
      auto const no_out = deficient_vertices(original, Letter(g, 1));
      auto const no_in  = deficient_vertices(original, Letter(g, -1));
      if (no_out.size() != no_in.size()) {
        throw std::logic_error("deficiency counts of a finite automaton must "
                               "agree");
      }
      for (std::size_t i = 0; i < no_out.size(); ++i) {
        completed.add_arc(no_out[i], g, no_in[i]);
      }
    }
    return Subgroup::from_automaton(completed, h.tree());
  }

  namespace {

    using Permutation = std::vector<std::uint32_t>;

    // Targets of every (vertex, generator) after renumbering vertices in
    // breadth-first order from 0, trying letters a, a^-1, b, ...; empty if
    // the action is not transitive.
    std::vector<std::uint32_t>
    canonical_form(std::vector<Permutation const*> const& perms,
                   std::vector<Permutation> const&        inverses,
                   std::size_t                            k) {
      std::size_t const          n = perms.size();
      std::vector<std::uint32_t> order;
      std::vector<std::uint32_t> label(k, UINT32_MAX);
      order.push_back(0);
      label[0] = 0;
      for (std::size_t i = 0; i < order.size(); ++i) {
        std::uint32_t const v = order[i];
        for (std::size_t g = 0; g < n; ++g) {
          for (std::uint32_t w : {(*perms[g])[v], inverses[g][v]}) {
            if (label[w] == UINT32_MAX) {
              label[w] = static_cast<std::uint32_t>(order.size());
              order.push_back(w);
            }
          }
        }
      }
      if (order.size() != k) {
        return {};
      }
      std::vector<std::uint32_t> form(k * n);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t g = 0; g < n; ++g) {
          form[i * n + g] = label[(*perms[g])[order[i]]];
        }
      }
      return form;
    }

  }  // namespace

  std::vector<Subgroup> enumerate_index_subgroups(Alphabet           alphabet,
                                                  std::size_t        k,
                                                  EnumerationOptions options) {
    if (k == 0) {
      throw InvalidArgument("subgroup index must be at least 1");
    }
    std::size_t const n = alphabet.rank;

    std::uint64_t factorial = 1;
    for (std::size_t i = 2; i <= k; ++i) {
      if (factorial > options.max_tuples / i) {
        throw ResourceLimit("index " + std::to_string(k)
                            + " needs more than "
                            + std::to_string(options.max_tuples)
                            + " permutation tuples");
      }
      factorial *= i;
    }
    std::uint64_t tuples = 1;
    for (std::size_t g = 0; g < n; ++g) {
      if (tuples > options.max_tuples / factorial) {
        throw ResourceLimit("index " + std::to_string(k) + " in rank "
                            + std::to_string(n) + " needs more than "
                            + std::to_string(options.max_tuples)
                            + " permutation tuples");
      }
      tuples *= factorial;
    }

    std::vector<Permutation> all;
    std::vector<Permutation> inverse_of;
    Permutation              p(k);
    std::iota(p.begin(), p.end(), 0U);
    do {
      all.push_back(p);
      Permutation inv(k);
      for (std::uint32_t i = 0; i < k; ++i) {
        inv[p[i]] = i;
      }
      inverse_of.push_back(std::move(inv));
    } while (std::next_permutation(p.begin(), p.end()));

    std::set<std::vector<std::uint32_t>> forms;
    std::vector<std::size_t>             choice(n, 0);
    std::vector<Permutation const*>      perms(n);
    std::vector<Permutation>             inverses(n);
    while (true) {
      for (std::size_t g = 0; g < n; ++g) {
        perms[g]    = &all[choice[g]];
        inverses[g] = inverse_of[choice[g]];
      }
      auto form = canonical_form(perms, inverses, k);
      if (!form.empty() || (n == 0 && k == 1)) {
        forms.insert(std::move(form));
      }
      std::size_t g = 0;
      while (g < n && ++choice[g] == all.size()) {
        choice[g++] = 0;
      }
      if (g == n) {
        break;
      }
    }

    std::vector<Subgroup> result;
    result.reserve(forms.size());
    for (auto const& form : forms) {
      InvolutiveAutomaton a(alphabet);
      for (std::size_t i = 1; i < k; ++i) {
        a.add_vertex();
      }
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t g = 0; g < n; ++g) {
          a.add_arc(static_cast<VertexId>(i), static_cast<Generator>(g + 1),
                    form[i * n + g]);
        }
      }
      result.push_back(Subgroup::from_automaton(a));
    }
    return result;
  }

}  // namespace stallings
