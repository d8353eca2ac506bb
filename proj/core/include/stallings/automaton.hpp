#ifndef STALLINGS_AUTOMATON_HPP_
#define STALLINGS_AUTOMATON_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stallings/word.hpp"

namespace stallings {

  using VertexId = std::uint32_t;
  using ArcId    = std::uint32_t;

  // A positive arc source --label--> target. Its formal inverse is implicit.
  struct Arc {
    ArcId     id     = 0;
    VertexId  source = 0;
    VertexId  target = 0;
    Generator label  = 0;

    friend bool operator==(Arc const&, Arc const&) = default;
  };

  // One traversal of an arc, forwards (reading its label) or backwards
  // (reading the inverse label).
  struct Step {
    ArcId arc     = 0;
    bool  forward = true;

    [[nodiscard]] Step inverse() const noexcept { return {arc, !forward}; }
    friend bool operator==(Step, Step) = default;
  };

  using Walk      = std::vector<Step>;
  using VertexMap = std::map<VertexId, VertexId>;

  // A finite involutive A-automaton, stored through its positive part, with
  // a distinguished basepoint.
  //
  // Vertex and arc ids are small integers handed out in increasing order.
  // Deleted ids are tombstoned and never reused, so ids recorded elsewhere
  // (folding traces, spanning trees) stay meaningful for the lifetime of the
  // automaton and of its copies.
  class InvolutiveAutomaton {
   public:
    // A single vertex, which is the basepoint, and no arcs.
    explicit InvolutiveAutomaton(Alphabet alphabet = {});

    [[nodiscard]] Alphabet alphabet() const noexcept { return alphabet_; }
    [[nodiscard]] VertexId basepoint() const noexcept { return base_; }
    void set_basepoint(VertexId v);

    VertexId add_vertex();
    ArcId    add_arc(VertexId source, Generator label, VertexId target);
    // Adds the arc such that reading x from `from` leads to `to`.
    ArcId add_arc(VertexId from, Letter x, VertexId to);
    void  remove_arc(ArcId e);
    // Removes v together with its incident arcs. The basepoint cannot be
    // removed.
    void remove_vertex(VertexId v);
    // Re-attaches every arc endpoint at `from` to `to`, leaving `from`
    // isolated.
    void redirect_arcs(VertexId from, VertexId to);

    [[nodiscard]] bool has_vertex(VertexId v) const noexcept {
      return v < vertex_alive_.size() && vertex_alive_[v];
    }
    [[nodiscard]] bool has_arc(ArcId e) const noexcept {
      return e < arc_alive_.size() && arc_alive_[e];
    }
    [[nodiscard]] Arc const& arc(ArcId e) const;

    [[nodiscard]] std::size_t vertex_count() const noexcept {
      return live_vertices_;
    }
    [[nodiscard]] std::size_t arc_count() const noexcept { return live_arcs_; }
    // One past the largest id ever handed out.
    [[nodiscard]] std::size_t vertex_id_bound() const noexcept {
      return vertex_alive_.size();
    }
    [[nodiscard]] std::size_t arc_id_bound() const noexcept {
      return arc_alive_.size();
    }

    // Live ids in ascending order.
    [[nodiscard]] std::vector<VertexId> vertices() const;
    [[nodiscard]] std::vector<ArcId>    arcs() const;

    // Arcs with v as an endpoint (a loop appears once).
    [[nodiscard]] std::span<ArcId const> incident_arcs(VertexId v) const;
    // Loops count twice.
    [[nodiscard]] std::size_t degree(VertexId v) const;

    [[nodiscard]] Letter   letter(Step s) const;
    [[nodiscard]] VertexId origin(Step s) const;
    [[nodiscard]] VertexId terminus(Step s) const;

    // Every step leaving v, sorted by letter (a, a^-1, b, ...) then arc id.
    [[nodiscard]] std::vector<Step> steps_from(VertexId v) const;
    // The lowest-id step leaving v that reads x.
    [[nodiscard]] std::optional<Step>     step(VertexId v, Letter x) const;
    [[nodiscard]] std::optional<VertexId> follow(VertexId v, Letter x) const;

    // No vertex has two outgoing (or two incoming) arcs with equal label.
    [[nodiscard]] bool is_deterministic() const;
    // Every vertex has an outgoing and an incoming arc of every label.
    [[nodiscard]] bool is_saturated() const;
    [[nodiscard]] bool is_connected() const;

    // Concatenated (unreduced) letters of a walk, then reduced.
    [[nodiscard]] Word label(Walk const& walk) const;
    // Checks that consecutive steps are incident, and optionally the ends.
    [[nodiscard]] bool is_walk(Walk const&             walk,
                               std::optional<VertexId> from = {},
                               std::optional<VertexId> to   = {}) const;

   private:
    void check_vertex(VertexId v) const;

    Alphabet                           alphabet_;
    VertexId                           base_ = 0;
    std::vector<char>                  vertex_alive_;
    std::vector<std::vector<ArcId>>    incident_;
    std::vector<Arc>                   arcs_;
    std::vector<char>                  arc_alive_;
    std::size_t                        live_vertices_ = 0;
    std::size_t                        live_arcs_     = 0;
  };

  // Removes cancelling adjacent steps e e^-1; the result has the same ends
  // and the same reduced label.
  [[nodiscard]] Walk reduce_walk(Walk const& walk);

  ////////////////////////////////////////////////////////////////////////
  // Construction
  ////////////////////////////////////////////////////////////////////////

  // The flower automaton of a list of words: one petal per nonempty word,
  // glued at the basepoint.
  struct Flower {
    InvolutiveAutomaton automaton;
    // Steps of each petal, spelling its word from the basepoint.
    std::vector<Walk> petals;
    // Index, in the input list, of the word each petal spells.
    std::vector<std::size_t> source_index;
  };

  [[nodiscard]] Flower flower(Alphabet alphabet, std::span<Word const> words);

  // One vertex with one loop per generator; recognizes the whole group.
  [[nodiscard]] InvolutiveAutomaton bouquet(Alphabet alphabet);

  // A copy with vertices renumbered 0..k-1 and arcs 0..m-1, both in
  // ascending order of the old ids. If `old_vertex` is given it receives the
  // old id of each new vertex.
  [[nodiscard]] InvolutiveAutomaton
  compacted(InvolutiveAutomaton const& a,
            std::vector<VertexId>*     old_vertex = nullptr);

  [[nodiscard]] InvolutiveAutomaton rebased(InvolutiveAutomaton const& a,
                                            VertexId                   v);

  ////////////////////////////////////////////////////////////////////////
  // Queries
  ////////////////////////////////////////////////////////////////////////

  // End of the unique walk reading w from `start`, or nothing when reading
  // blocks. Throws InvalidArgument if `a` is not deterministic.
  [[nodiscard]] std::optional<VertexId>
  read_word(InvolutiveAutomaton const& a, VertexId start, Word const& w);
  // Same, returning the walk itself.
  [[nodiscard]] std::optional<Walk>
  read_walk(InvolutiveAutomaton const& a, VertexId start, Word const& w);

  // Connected components, each sorted, ordered by smallest vertex.
  [[nodiscard]] std::vector<std::vector<VertexId>>
  connected_components(InvolutiveAutomaton const& a);

  // 1 - |V| + |E+|. Throws InvalidArgument if `a` is disconnected.
  [[nodiscard]] std::size_t graph_rank(InvolutiveAutomaton const& a);

  // Vertices with no outgoing (x positive) or no incoming (x negative) arc
  // labelled by x's generator, in breadth-first order from the basepoint.
  [[nodiscard]] std::vector<VertexId>
  deficient_vertices(InvolutiveAutomaton const& a, Letter x);

  ////////////////////////////////////////////////////////////////////////
  // Cores
  ////////////////////////////////////////////////////////////////////////

  // Largest subautomaton whose vertices all lie on reduced basepoint loops,
  // obtained by pruning non-basepoint vertices of degree <= 1. Requires a
  // deterministic connected automaton; ids are preserved.
  [[nodiscard]] InvolutiveAutomaton core(InvolutiveAutomaton const& a);

  struct RestrictedCore {
    // The core with its basepoint hair removed. Its basepoint is `attach`,
    // but that designation carries no meaning.
    InvolutiveAutomaton graph;
    // Vertex where the hair met the rest of the core.
    VertexId attach = 0;
    // Label of the hair, read from the old basepoint to `attach`.
    Word hair;
  };

  // Requires a deterministic connected automaton recognizing a nontrivial
  // subgroup.
  [[nodiscard]] RestrictedCore restricted_core(InvolutiveAutomaton const& a);

  ////////////////////////////////////////////////////////////////////////
  // Spanning trees
  ////////////////////////////////////////////////////////////////////////

  struct SpanningTree {
    VertexId root = 0;
    // Vertices in breadth-first discovery order, root first.
    std::vector<VertexId> order;
    // Tree arcs in discovery order.
    std::vector<ArcId> arcs;
    // Step by which each non-root vertex was discovered.
    std::map<VertexId, Step> parent;

    [[nodiscard]] bool contains(ArcId e) const;
    // Tree geodesic root -> v.
    [[nodiscard]] Walk walk_to(InvolutiveAutomaton const& a, VertexId v) const;
    [[nodiscard]] Word label_to(InvolutiveAutomaton const& a,
                                VertexId                   v) const;
  };

  // Breadth-first tree rooted at the basepoint, trying steps in letter order
  // a, a^-1, b, b^-1, ... (ties by arc id). Throws InvalidArgument if `a` is
  // disconnected.
  [[nodiscard]] SpanningTree spanning_tree(InvolutiveAutomaton const& a);

  ////////////////////////////////////////////////////////////////////////
  // Products
  ////////////////////////////////////////////////////////////////////////

  struct ProductAutomaton {
    InvolutiveAutomaton automaton;
    // Factor vertices of each product vertex, indexed by product vertex id.
    std::vector<std::pair<VertexId, VertexId>> pairs;

    [[nodiscard]] std::optional<VertexId> find(VertexId p, VertexId q) const;
  };

  // Full pullback: vertex set V1 x V2 (ids in lexicographic order of the
  // pairs), one arc per pair of equally labelled arcs, basepoint
  // (base1, base2). Possibly disconnected.
  [[nodiscard]] ProductAutomaton product(InvolutiveAutomaton const& a1,
                                         InvolutiveAutomaton const& a2);

  // Only the component of (base1, base2), built by synchronized
  // breadth-first search; vertex ids follow discovery order.
  [[nodiscard]] ProductAutomaton
  product_component(InvolutiveAutomaton const& a1,
                    InvolutiveAutomaton const& a2);

  ////////////////////////////////////////////////////////////////////////
  // Isomorphism
  ////////////////////////////////////////////////////////////////////////

  // The label-preserving isomorphism a1 -> a2 sending base1 to base2, if any.
  // Both automata must be deterministic and connected.
  [[nodiscard]] std::optional<VertexMap>
  isomorphic_based(InvolutiveAutomaton const& a1,
                   InvolutiveAutomaton const& a2);

  // A label-preserving isomorphism ignoring basepoints: the smallest vertex
  // of a1 is tried against every vertex of a2 in ascending order.
  [[nodiscard]] std::optional<VertexMap>
  isomorphic_unbased(InvolutiveAutomaton const& a1,
                     InvolutiveAutomaton const& a2);

  // The isomorphism extending v1 -> v2, if any.
  [[nodiscard]] std::optional<VertexMap>
  match_from(InvolutiveAutomaton const& a1,
             VertexId                   v1,
             InvolutiveAutomaton const& a2,
             VertexId                   v2);

  // Every vertex can be sent to every other by a label-preserving
  // automorphism.
  [[nodiscard]] bool is_vertex_transitive(InvolutiveAutomaton const& a);

}  // namespace stallings

#endif  // STALLINGS_AUTOMATON_HPP_
