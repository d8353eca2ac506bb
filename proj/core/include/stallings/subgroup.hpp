#ifndef STALLINGS_SUBGROUP_HPP_
#define STALLINGS_SUBGROUP_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stallings/automaton.hpp"
#include "stallings/folding.hpp"
#include "stallings/word.hpp"

namespace stallings {

  struct IndexData {
    std::size_t index = 0;
    // Labels of the spanning-tree geodesics to each vertex, identity first,
    // then breadth-first order.
    std::vector<Word> transversal;
  };

  // Per-component reduced ranks of the full product St(H) x St(K), checked
  // against the Howson/Neumann bound 2 rrk(H) rrk(K) and the
  // Friedman-Mineyev bound rrk(H) rrk(K).
  struct ShnAudit {
    std::vector<std::size_t> component_reduced_ranks;
    std::size_t              sum          = 0;
    std::size_t              howson_bound = 0;
    std::size_t              strong_bound = 0;
  };

  // A finitely generated subgroup H of F_n together with its Stallings
  // automaton, a spanning tree of it and the basis that tree induces.
  // Immutable once built.
  class Subgroup {
   public:
    // The Stallings automaton is the core of the folded flower automaton of
    // the generators; trivial generators are ignored.
    [[nodiscard]] static Subgroup make(Alphabet              alphabet,
                                       std::span<Word const> generators);
    [[nodiscard]] static Subgroup make(Alphabet                 alphabet,
                                       std::vector<Word> const& generators) {
      return make(alphabet, std::span<Word const>(generators));
    }

    // The subgroup recognized by a deterministic core automaton, which is
    // kept as is (ids included). Its generators are the basis induced by
    // `tree` when given, otherwise by the breadth-first spanning tree.
    [[nodiscard]] static Subgroup
    from_automaton(InvolutiveAutomaton const&  stallings,
                   std::optional<SpanningTree> tree = std::nullopt);

    [[nodiscard]] Alphabet alphabet() const noexcept { return alphabet_; }
    [[nodiscard]] std::vector<Word> const& generators() const noexcept {
      return generators_;
    }
    [[nodiscard]] InvolutiveAutomaton const& stallings() const noexcept {
      return stallings_;
    }
    [[nodiscard]] FoldingTrace const& trace() const noexcept {
      return trace_;
    }
    [[nodiscard]] Flower const& flower() const noexcept { return flower_; }
    [[nodiscard]] SpanningTree const& tree() const noexcept { return tree_; }
    [[nodiscard]] std::vector<Word> const& basis() const noexcept {
      return basis_;
    }
    [[nodiscard]] std::size_t rank() const noexcept { return basis_.size(); }
    // max(0, rank - 1).
    [[nodiscard]] std::size_t reduced_rank() const noexcept {
      return rank() == 0 ? 0 : rank() - 1;
    }
    [[nodiscard]] bool is_trivial() const noexcept { return basis_.empty(); }

    [[nodiscard]] bool contains(Word const& w) const;

    // A product of the generators and their inverses equal to w, or nothing
    // when w is not in the subgroup.
    [[nodiscard]] std::optional<PetalWord> express(Word const& w) const;

    [[nodiscard]] std::optional<IndexData> finite_index_data() const;

    // Every conjugate x^-1 g x of a basis element by a letter lies in H.
    [[nodiscard]] bool is_normal() const;
    // Nontrivial H only: St(H) is saturated and vertex-transitive.
    [[nodiscard]] bool is_normal_by_automaton() const;

   private:
    Subgroup() = default;

    Alphabet            alphabet_;
    std::vector<Word>   generators_;
    Flower              flower_;
    FoldingTrace        trace_;
    InvolutiveAutomaton folded_core_;  // core of trace_.final_automaton()
    InvolutiveAutomaton stallings_;
    SpanningTree        tree_;
    std::vector<Word>   basis_;
  };

  // Basis words w_e = label(root -> source e) e label(target e -> root) for
  // the positive arcs outside `tree`, in ascending arc id order.
  [[nodiscard]] std::vector<Word> basis_from_tree(InvolutiveAutomaton const& a,
                                                  SpanningTree const& tree);

  // loss(flower(S)) == 0.
  [[nodiscard]] bool is_free_family(Alphabet alphabet, std::span<Word const> s);
  // St(<S>) is the bouquet.
  [[nodiscard]] bool is_generating(Alphabet alphabet, std::span<Word const> s);
  // Generating with exactly rank(alphabet) elements.
  [[nodiscard]] bool is_basis(Alphabet alphabet, std::span<Word const> s);

  // A word z with z^-1 H z = K, or nothing if H and K are not conjugate.
  [[nodiscard]] std::optional<Word> are_conjugate(Subgroup const& h,
                                                  Subgroup const& k);

  [[nodiscard]] Subgroup intersect(Subgroup const& h, Subgroup const& k);

  [[nodiscard]] ShnAudit shn_audit(Subgroup const& h, Subgroup const& k);

  // A word w with Hu ∩ Kv = (H ∩ K)w, or nothing when the cosets are
  // disjoint.
  [[nodiscard]] std::optional<Word> coset_intersect(Subgroup const& h,
                                                    Word const&     u,
                                                    Subgroup const& k,
                                                    Word const&     v);

  // A finite-index subgroup K having H as a free factor, obtained by
  // saturating St(H). The basis of K extends the basis of H.
  [[nodiscard]] Subgroup hall_completion(Subgroup const& h);

  struct EnumerationOptions {
    // Upper bound on the number of permutation tuples examined, (k!)^n.
    std::uint64_t max_tuples = 50'000'000;
  };

  // Every subgroup of index exactly k, each with its Stallings automaton on
  // vertices 0..k-1 (basepoint 0) in canonical breadth-first numbering,
  // sorted by that canonical form.
  [[nodiscard]] std::vector<Subgroup>
  enumerate_index_subgroups(Alphabet           alphabet,
                            std::size_t        k,
                            EnumerationOptions options = {});

}  // namespace stallings

#endif  // STALLINGS_SUBGROUP_HPP_
