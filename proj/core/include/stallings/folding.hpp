#ifndef STALLINGS_FOLDING_HPP_
#define STALLINGS_FOLDING_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stallings/automaton.hpp"
#include "stallings/word.hpp"

namespace stallings {

  enum class FoldKind { open, closed };

  // One elementary Stallings fold: two distinct arcs read the same letter
  // from a shared vertex and are identified. The fold is open when their far
  // ends differ (those vertices get merged too) and closed otherwise.
  struct FoldEvent {
    FoldKind kind = FoldKind::open;
    // Common origin of both arcs, read in the direction of `letter`.
    VertexId shared_vertex = 0;
    // Letter read along both arcs from `shared_vertex`.
    Letter   letter;
    ArcId    survivor_arc    = 0;  // lower arc id
    ArcId    absorbed_arc    = 0;
    VertexId survivor_vertex = 0;  // lower vertex id; equal ids when closed
    VertexId absorbed_vertex = 0;

    friend bool operator==(FoldEvent const&, FoldEvent const&) = default;
  };

  // Performs `event` on `a`: removes the absorbed arc and, for an open fold,
  // merges the absorbed vertex into the survivor. Throws InvalidArgument if
  // the event does not describe a fold of `a`.
  void apply_fold(InvolutiveAutomaton& a, FoldEvent const& event);

  // Replayable record of a folding sequence: the starting automaton plus the
  // ordered events.
  class FoldingTrace {
   public:
    FoldingTrace() = default;
    explicit FoldingTrace(InvolutiveAutomaton initial)
        : initial_(std::move(initial)) {}

    [[nodiscard]] InvolutiveAutomaton const& initial() const noexcept {
      return initial_;
    }
    [[nodiscard]] std::vector<FoldEvent> const& events() const noexcept {
      return events_;
    }
    [[nodiscard]] std::size_t closed_count() const;
    [[nodiscard]] std::size_t open_count() const {
      return events_.size() - closed_count();
    }

    void append(FoldEvent const& event) { events_.push_back(event); }

    // The automaton before each event, followed by the final one.
    [[nodiscard]] std::vector<InvolutiveAutomaton> replay() const;
    [[nodiscard]] InvolutiveAutomaton              final_automaton() const;

    // One event per line: kind, letter, shared vertex, survivor<-absorbed
    // arc and vertex ids.
    [[nodiscard]] std::string dump() const;

   private:
    InvolutiveAutomaton    initial_;
    std::vector<FoldEvent> events_;
  };

  struct FoldResult {
    InvolutiveAutomaton automaton;  // deterministic
    FoldingTrace        trace;
  };

  struct FoldOptions {
    // When set, the vertex to examine and the violation to fold are drawn at
    // random; otherwise suspect vertices are processed first-in first-out
    // and the smallest letter, then the smallest arc pair, folds first.
    std::optional<std::uint64_t> shuffle_seed;
  };

  // Folds until no vertex has two arcs reading the same letter. The
  // recognized subgroup is unchanged and every event removes exactly one arc.
  [[nodiscard]] FoldResult fold_to_completion(InvolutiveAutomaton const& a,
                                              FoldOptions options = {});

  // Number of closed folds in a complete folding sequence; equal to the drop
  // in graph rank.
  [[nodiscard]] std::size_t loss(InvolutiveAutomaton const& a);

  // Lifts a reduced basepoint walk of the trace's final automaton to a
  // reduced basepoint walk of its initial automaton with the same reduced
  // label. Throws InvalidArgument if `path` is not a reduced basepoint walk
  // of the final automaton.
  [[nodiscard]] Walk lift_path(FoldingTrace const& trace, Walk const& path);

  // g_i^{+1} or g_i^{-1}, where i indexes a list of generators (0-based).
  struct PetalFactor {
    std::size_t generator = 0;
    int         exponent  = 1;

    friend bool operator==(PetalFactor, PetalFactor) = default;
  };

  using PetalWord = std::vector<PetalFactor>;

  // Splits a basepoint walk of a flower automaton into whole petal
  // traversals. Generator indices refer to the word list the flower was
  // built from. Throws InvalidArgument if some segment between basepoint
  // visits is not a full petal traversal.
  [[nodiscard]] PetalWord petal_decompose(Flower const& flower,
                                          Walk const&   path);

  // The product of the factors over `generators`.
  [[nodiscard]] Word evaluate(PetalWord const&      word,
                              std::span<Word const> generators,
                              Alphabet              alphabet);

  // "v2 v3^-1 v1" style rendering with 1-based indices; "1" when empty.
  [[nodiscard]] std::string format_petal_word(PetalWord const& word);

}  // namespace stallings

#endif  // STALLINGS_FOLDING_HPP_
