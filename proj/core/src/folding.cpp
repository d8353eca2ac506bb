#include "stallings/folding.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "stallings/error.hpp"

namespace stallings {

  namespace {

    using Violation = std::pair<Step, Step>;

    // Pairs of distinct steps leaving v with the same letter, smallest letter
    // first, then smallest arc ids.
    std::vector<Violation> violations_at(InvolutiveAutomaton const& a,
                                         VertexId                   v,
                                         bool                       all) {
      std::vector<Violation> result;
      auto const             steps = a.steps_from(v);
      for (std::size_t i = 0; i < steps.size();) {
        std::size_t j = i + 1;
        while (j < steps.size() && a.letter(steps[j]) == a.letter(steps[i])) {
          ++j;
        }
        for (std::size_t k = i; k < j; ++k) {
          for (std::size_t l = k + 1; l < j; ++l) {
            result.emplace_back(steps[k], steps[l]);
            if (!all) {
              return result;
            }
          }
        }
        i = j;
      }
      return result;
    }

    FoldEvent make_event(InvolutiveAutomaton const& a, VertexId v, Violation f) {
      auto [s1, s2] = f;
      if (s2.arc < s1.arc) {
        std::swap(s1, s2);
      }
      VertexId const q1 = a.terminus(s1);
      VertexId const q2 = a.terminus(s2);
      FoldEvent      ev;
      ev.kind            = q1 == q2 ? FoldKind::closed : FoldKind::open;
      ev.shared_vertex   = v;
      ev.letter          = a.letter(s1);
      ev.survivor_arc    = s1.arc;
      ev.absorbed_arc    = s2.arc;
      ev.survivor_vertex = std::min(q1, q2);
      ev.absorbed_vertex = std::max(q1, q2);
      return ev;
    }

    // The two arcs of an event as steps leaving the shared vertex.
    std::pair<Step, Step> event_steps(FoldEvent const& ev) {
      bool const dir = ev.letter.is_positive();
      return {Step{ev.survivor_arc, dir}, Step{ev.absorbed_arc, dir}};
    }

    // Undoes one open fold: `before` is the automaton the fold was applied
    // to and `walk` a basepoint walk of the automaton it produced.
    Walk lift_open(InvolutiveAutomaton const& before,
                   FoldEvent const&           ev,
                   Walk const&                walk) {
      auto const     steps = event_steps(ev);
      Step const     e1    = steps.first;
      Step const     e2    = steps.second;
      VertexId const q1    = before.terminus(e1);
      VertexId const q2    = before.terminus(e2);
      VertexId const s     = ev.shared_vertex;
      bool const     dir   = ev.letter.is_positive();

      Walk result;
      auto bridge = [&](VertexId from, VertexId to) {
        if (from == q1 && to == q2) {
          result.push_back(e1.inverse());
          result.push_back(e2);
        } else if (from == q2 && to == q1) {
          result.push_back(e2.inverse());
          result.push_back(e1);
        } else {
          throw std::logic_error("lifted walk broken away from the merged "
                                 "vertex");
        }
      };

      VertexId const base    = before.basepoint();
      VertexId       current = base;
      for (std::size_t k = 0; k < walk.size(); ++k) {
        Step lifted = walk[k];
        if (lifted.arc == ev.survivor_arc) {
          if (lifted.forward == dir) {
            // Leaves the shared vertex; pick the preimage whose far end is
            // where the next step starts.
            std::optional<VertexId> want;
            if (k + 1 == walk.size()) {
              want = base;
            } else if (walk[k + 1].arc != ev.survivor_arc) {
              want = before.origin(walk[k + 1]);
            } else if (walk[k + 1].forward == dir) {
              want = s;
            }
            lifted.arc = want == q2 && q1 != q2 ? ev.absorbed_arc
                                                : ev.survivor_arc;
          } else {
            lifted.arc = current == q2 ? ev.absorbed_arc : ev.survivor_arc;
          }
        }
        if (before.origin(lifted) != current) {
          bridge(current, before.origin(lifted));
        }
        result.push_back(lifted);
        current = before.terminus(lifted);
      }
      if (current != base) {
        bridge(current, base);
      }
      return reduce_walk(result);
    }

  }  // namespace

  void apply_fold(InvolutiveAutomaton& a, FoldEvent const& ev) {
    auto const [e1, e2] = event_steps(ev);
    if (!a.has_arc(e1.arc) || !a.has_arc(e2.arc) || e1.arc == e2.arc
        || a.origin(e1) != ev.shared_vertex || a.origin(e2) != ev.shared_vertex
        || a.letter(e1) != ev.letter || a.letter(e2) != ev.letter) {
      throw InvalidArgument("fold event does not match the automaton");
    }
    VertexId const q1 = a.terminus(e1);
    VertexId const q2 = a.terminus(e2);
    if ((q1 == q2) != (ev.kind == FoldKind::closed)
        || std::min(q1, q2) != ev.survivor_vertex
        || std::max(q1, q2) != ev.absorbed_vertex) {
      throw InvalidArgument("fold event endpoints do not match the automaton");
    }
    a.remove_arc(ev.absorbed_arc);
    if (ev.kind == FoldKind::open) {
      a.redirect_arcs(ev.absorbed_vertex, ev.survivor_vertex);
      if (a.basepoint() == ev.absorbed_vertex) {
        a.set_basepoint(ev.survivor_vertex);
      }
      a.remove_vertex(ev.absorbed_vertex);
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // FoldingTrace
  ////////////////////////////////////////////////////////////////////////

  std::size_t FoldingTrace::closed_count() const {
    return static_cast<std::size_t>(
        std::count_if(events_.begin(), events_.end(), [](FoldEvent const& ev) {
          return ev.kind == FoldKind::closed;
        }));
  }

  std::vector<InvolutiveAutomaton> FoldingTrace::replay() const {
    std::vector<InvolutiveAutomaton> snapshots;
    snapshots.reserve(events_.size() + 1);
    snapshots.push_back(initial_);
    for (FoldEvent const& ev : events_) {
      InvolutiveAutomaton next = snapshots.back();
      apply_fold(next, ev);
      snapshots.push_back(std::move(next));
    }
    return snapshots;
  }

  InvolutiveAutomaton FoldingTrace::final_automaton() const {
    InvolutiveAutomaton a = initial_;
    for (FoldEvent const& ev : events_) {
      apply_fold(a, ev);
    }
    return a;
  }

  std::string FoldingTrace::dump() const {
    std::ostringstream out;
    for (FoldEvent const& ev : events_) {
      out << (ev.kind == FoldKind::open ? "open   " : "closed ")
          << format_letter(ev.letter) << " at " << ev.shared_vertex
          << " arcs " << ev.survivor_arc << "<-" << ev.absorbed_arc
          << " vertices " << ev.survivor_vertex << "<-" << ev.absorbed_vertex
          << "\n";
    }
    return out.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // Folding
  ////////////////////////////////////////////////////////////////////////

  FoldResult fold_to_completion(InvolutiveAutomaton const& a,
                                FoldOptions                options) {
    FoldResult result{a, FoldingTrace(a)};
    auto&      current = result.automaton;

    std::optional<std::mt19937_64> rng;
    if (options.shuffle_seed) {
      rng.emplace(*options.shuffle_seed);
    }

    auto const           vs = current.vertices();
    std::deque<VertexId> work(vs.begin(), vs.end());
    std::vector<char>    queued(current.vertex_id_bound());
    for (VertexId v : vs) {
      queued[v] = 1;
    }
    auto push = [&](VertexId v) {
      if (current.has_vertex(v) && !queued[v]) {
        queued[v] = 1;
        work.push_back(v);
      }
    };

    while (!work.empty()) {
      VertexId v;
      if (rng) {
        std::uniform_int_distribution<std::size_t> pick(0, work.size() - 1);
        auto it = work.begin() + static_cast<std::ptrdiff_t>(pick(*rng));
        v       = *it;
        work.erase(it);
      } else {
        v = work.front();
        work.pop_front();
      }
      queued[v] = 0;
      if (!current.has_vertex(v)) {
        continue;
      }
      auto const found = violations_at(current, v, rng.has_value());
      if (found.empty()) {
        continue;
      }
      Violation chosen = found.front();
      if (rng) {
        std::uniform_int_distribution<std::size_t> pick(0, found.size() - 1);
        chosen = found[pick(*rng)];
      }
      FoldEvent const ev = make_event(current, v, chosen);
      apply_fold(current, ev);
      result.trace.append(ev);
      push(ev.survivor_vertex);
      push(v);
    }
    if (!current.is_deterministic()) {
      throw std::logic_error("folding finished with a non-deterministic "
                             "automaton");
    }
    return result;
  }

  std::size_t loss(InvolutiveAutomaton const& a) {
    return fold_to_completion(a).trace.closed_count();
  }

  ////////////////////////////////////////////////////////////////////////
  // Lifting
  ////////////////////////////////////////////////////////////////////////

  Walk lift_path(FoldingTrace const& trace, Walk const& path) {
    auto const  snapshots = trace.replay();
    auto const& final     = snapshots.back();
    if (!final.is_walk(path, final.basepoint(), final.basepoint())) {
      throw InvalidArgument("path is not a basepoint walk of the folded "
                            "automaton");
    }
    if (reduce_walk(path) != path) {
      throw InvalidArgument("path is not reduced");
    }
    Walk walk = path;
    for (std::size_t i = trace.events().size(); i-- > 0;) {
      FoldEvent const& ev = trace.events()[i];
      if (ev.kind == FoldKind::open) {
        walk = lift_open(snapshots[i], ev, walk);
      }
      // A closed fold keeps every surviving arc with its endpoints, so the
      // walk is already a walk of the previous automaton, using the survivor.
    }
    return walk;
  }

  PetalWord petal_decompose(Flower const& flower, Walk const& path) {
    auto const&    a    = flower.automaton;
    VertexId const base = a.basepoint();
    if (!a.is_walk(path, base, base)) {
      throw InvalidArgument("path is not a basepoint walk of the flower");
    }
    struct Position {
      std::size_t petal = 0;
      std::size_t index = 0;
    };
    std::vector<Position> where(a.arc_id_bound());
    for (std::size_t p = 0; p < flower.petals.size(); ++p) {
      for (std::size_t j = 0; j < flower.petals[p].size(); ++j) {
        where[flower.petals[p][j].arc] = {p, j};
      }
    }

    PetalWord result;
    for (std::size_t i = 0; i < path.size();) {
      auto const [p, index] = where[path[i].arc];
      auto const&       petal = flower.petals[p];
      std::size_t const len   = petal.size();
      bool const        fwd   = path[i] == petal.front();
      bool ok = (fwd || path[i] == petal.back().inverse()) && i + len <= path.size();
      for (std::size_t j = 0; ok && j < len; ++j) {
        Step const expected = fwd ? petal[j] : petal[len - 1 - j].inverse();
        ok = path[i + j] == expected;
      }
      if (!ok) {
        throw InvalidArgument("walk segment starting at step "
                              + std::to_string(i)
                              + " is not a full petal traversal");
      }
      result.push_back({flower.source_index[p], fwd ? 1 : -1});
      i += len;
    }
    return result;
  }

  Word evaluate(PetalWord const&      word,
                std::span<Word const> generators,
                Alphabet              alphabet) {
    Word result(alphabet);
    for (PetalFactor f : word) {
      if (f.generator >= generators.size()) {
        throw InvalidArgument("petal factor refers to generator "
                              + std::to_string(f.generator + 1) + " of "
                              + std::to_string(generators.size()));
      }
      Word const& g = generators[f.generator];
      result *= f.exponent > 0 ? g : g.inverse();
    }
    return result;
  }

  std::string format_petal_word(PetalWord const& word) {
    if (word.empty()) {
      return "1";
    }
    std::string s;
    for (PetalFactor f : word) {
      if (!s.empty()) {
        s += ' ';
      }
      s += 'v' + std::to_string(f.generator + 1);
      if (f.exponent < 0) {
        s += "^-1";
      }
    }
    return s;
  }

}  // namespace stallings
