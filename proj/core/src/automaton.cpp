#include "stallings/automaton.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>
#include <tuple>

#include "stallings/error.hpp"

namespace stallings {

  ////////////////////////////////////////////////////////////////////////
  // InvolutiveAutomaton
  ////////////////////////////////////////////////////////////////////////

  InvolutiveAutomaton::InvolutiveAutomaton(Alphabet alphabet)
      : alphabet_(alphabet) {
    add_vertex();
  }

  void InvolutiveAutomaton::check_vertex(VertexId v) const {
    if (!has_vertex(v)) {
      throw InvalidArgument("no vertex with id " + std::to_string(v));
    }
  }

  void InvolutiveAutomaton::set_basepoint(VertexId v) {
    check_vertex(v);
    base_ = v;
  }

  VertexId InvolutiveAutomaton::add_vertex() {
    auto const v = static_cast<VertexId>(vertex_alive_.size());
    vertex_alive_.push_back(1);
    incident_.emplace_back();
    ++live_vertices_;
    return v;
  }

  ArcId InvolutiveAutomaton::add_arc(VertexId  source,
                                     Generator label,
                                     VertexId  target) {
    check_vertex(source);
    check_vertex(target);
    if (!alphabet_.contains(label)) {
      throw AlphabetMismatch("arc label " + std::to_string(label)
                             + " is outside the alphabet of rank "
                             + std::to_string(alphabet_.rank));
    }
    auto const e = static_cast<ArcId>(arcs_.size());
    arcs_.push_back({e, source, target, label});
    arc_alive_.push_back(1);
    incident_[source].push_back(e);
    if (target != source) {
      incident_[target].push_back(e);
    }
    ++live_arcs_;
    return e;
  }

  ArcId InvolutiveAutomaton::add_arc(VertexId from, Letter x, VertexId to) {
    return x.is_positive() ? add_arc(from, x.generator(), to)
                           : add_arc(to, x.generator(), from);
  }

  void InvolutiveAutomaton::remove_arc(ArcId e) {
    if (!has_arc(e)) {
      throw InvalidArgument("no arc with id " + std::to_string(e));
    }
    Arc const& a      = arcs_[e];
    auto       unlink = [this, e](VertexId v) {
      auto& list = incident_[v];
      list.erase(std::find(list.begin(), list.end(), e));
    };
    unlink(a.source);
    if (a.target != a.source) {
      unlink(a.target);
    }
    arc_alive_[e] = 0;
    --live_arcs_;
  }

  void InvolutiveAutomaton::remove_vertex(VertexId v) {
    check_vertex(v);
    if (v == base_) {
      throw InvalidArgument("cannot remove the basepoint");
    }
    while (!incident_[v].empty()) {
      remove_arc(incident_[v].back());
    }
    vertex_alive_[v] = 0;
    --live_vertices_;
  }

  void InvolutiveAutomaton::redirect_arcs(VertexId from, VertexId to) {
    check_vertex(from);
    check_vertex(to);
    if (from == to) {
      return;
    }
    auto& target_list = incident_[to];
    for (ArcId e : incident_[from]) {
      Arc& a = arcs_[e];
      if (a.source == from) {
        a.source = to;
      }
      if (a.target == from) {
        a.target = to;
      }
      if (std::find(target_list.begin(), target_list.end(), e)
          == target_list.end()) {
        target_list.push_back(e);
      }
    }
    incident_[from].clear();
  }

  Arc const& InvolutiveAutomaton::arc(ArcId e) const {
    if (!has_arc(e)) {
      throw InvalidArgument("no arc with id " + std::to_string(e));
    }
    return arcs_[e];
  }

  std::vector<VertexId> InvolutiveAutomaton::vertices() const {
    std::vector<VertexId> result;
    result.reserve(live_vertices_);
    for (VertexId v = 0; v < vertex_alive_.size(); ++v) {
      if (vertex_alive_[v]) {
        result.push_back(v);
      }
    }
    return result;
  }

  std::vector<ArcId> InvolutiveAutomaton::arcs() const {
    std::vector<ArcId> result;
    result.reserve(live_arcs_);
    for (ArcId e = 0; e < arc_alive_.size(); ++e) {
      if (arc_alive_[e]) {
        result.push_back(e);
      }
    }
    return result;
  }

  std::span<ArcId const> InvolutiveAutomaton::incident_arcs(VertexId v) const {
    check_vertex(v);
    return incident_[v];
  }

  std::size_t InvolutiveAutomaton::degree(VertexId v) const {
    std::size_t d = 0;
    for (ArcId e : incident_arcs(v)) {
      d += arcs_[e].source == arcs_[e].target ? 2 : 1;
    }
    return d;
  }

  Letter InvolutiveAutomaton::letter(Step s) const {
    return Letter(arc(s.arc).label, s.forward ? 1 : -1);
  }

  VertexId InvolutiveAutomaton::origin(Step s) const {
    Arc const& a = arc(s.arc);
    return s.forward ? a.source : a.target;
  }

  VertexId InvolutiveAutomaton::terminus(Step s) const {
    Arc const& a = arc(s.arc);
    return s.forward ? a.target : a.source;
  }

  std::vector<Step> InvolutiveAutomaton::steps_from(VertexId v) const {
    std::vector<Step> result;
    for (ArcId e : incident_arcs(v)) {
      Arc const& a = arcs_[e];
      if (a.source == v) {
        result.push_back({e, true});
      }
      if (a.target == v) {
        result.push_back({e, false});
      }
    }
    std::sort(result.begin(), result.end(), [this](Step s, Step t) {
      return std::make_tuple(letter(s).order_key(), s.arc)
             < std::make_tuple(letter(t).order_key(), t.arc);
    });
    return result;
  }

  std::optional<Step> InvolutiveAutomaton::step(VertexId v, Letter x) const {
    std::optional<Step> best;
    for (ArcId e : incident_arcs(v)) {
      Arc const& a = arcs_[e];
      if (a.label != x.generator()) {
        continue;
      }
      VertexId const from = x.is_positive() ? a.source : a.target;
      if (from == v && (!best || e < best->arc)) {
        best = Step{e, x.is_positive()};
      }
    }
    return best;
  }

  std::optional<VertexId> InvolutiveAutomaton::follow(VertexId v,
                                                      Letter   x) const {
    if (auto s = step(v, x)) {
      return terminus(*s);
    }
    return std::nullopt;
  }

  bool InvolutiveAutomaton::is_deterministic() const {
    std::vector<char> seen(2 * alphabet_.rank);
    for (VertexId v : vertices()) {
      std::fill(seen.begin(), seen.end(), 0);
      for (ArcId e : incident_[v]) {
        Arc const& a = arcs_[e];
        if (a.source == v) {
          auto k = Letter(a.label, 1).order_key();
          if (seen[k]++) {
            return false;
          }
        }
        if (a.target == v) {
          auto k = Letter(a.label, -1).order_key();
          if (seen[k]++) {
            return false;
          }
        }
      }
    }
    return true;
  }

  bool InvolutiveAutomaton::is_saturated() const {
    std::vector<char> seen(2 * alphabet_.rank);
    for (VertexId v : vertices()) {
      std::fill(seen.begin(), seen.end(), 0);
      for (ArcId e : incident_[v]) {
        Arc const& a = arcs_[e];
        if (a.source == v) {
          seen[Letter(a.label, 1).order_key()] = 1;
        }
        if (a.target == v) {
          seen[Letter(a.label, -1).order_key()] = 1;
        }
      }
      if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
        return false;
      }
    }
    return true;
  }

  bool InvolutiveAutomaton::is_connected() const {
    return connected_components(*this).size() == 1;
  }

  Word InvolutiveAutomaton::label(Walk const& walk) const {
    std::vector<Letter> raw;
    raw.reserve(walk.size());
    for (Step s : walk) {
      raw.push_back(letter(s));
    }
    return Word::reduce(alphabet_, raw);
  }

  bool InvolutiveAutomaton::is_walk(Walk const&             walk,
                                    std::optional<VertexId> from,
                                    std::optional<VertexId> to) const {
    for (Step s : walk) {
      if (!has_arc(s.arc)) {
        return false;
      }
    }
    if (walk.empty()) {
      return !from || !to || *from == *to;
    }
    if (from && origin(walk.front()) != *from) {
      return false;
    }
    if (to && terminus(walk.back()) != *to) {
      return false;
    }
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
      if (terminus(walk[i]) != origin(walk[i + 1])) {
        return false;
      }
    }
    return true;
  }

  Walk reduce_walk(Walk const& walk) {
    Walk result;
    result.reserve(walk.size());
    for (Step s : walk) {
      if (!result.empty() && result.back() == s.inverse()) {
        result.pop_back();
      } else {
        result.push_back(s);
      }
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Construction
  ////////////////////////////////////////////////////////////////////////

  Flower flower(Alphabet alphabet, std::span<Word const> words) {
    Flower f{InvolutiveAutomaton(alphabet), {}, {}};
    auto&  a    = f.automaton;
    auto   base = a.basepoint();
    for (std::size_t i = 0; i < words.size(); ++i) {
      Word const& w = words[i];
      if (w.alphabet() != alphabet) {
        throw AlphabetMismatch("generator " + w.str() + " lives over rank "
                               + std::to_string(w.alphabet().rank)
                               + ", expected "
                               + std::to_string(alphabet.rank));
      }
      if (w.empty()) {
        continue;
      }
      Walk     petal;
      VertexId current = base;
      for (std::size_t j = 0; j < w.size(); ++j) {
        VertexId const next = j + 1 == w.size() ? base : a.add_vertex();
        ArcId const e = a.add_arc(current, w[j], next);
        petal.push_back(Step{e, w[j].is_positive()});
        current = next;
      }
      f.petals.push_back(std::move(petal));
      f.source_index.push_back(i);
    }
    return f;
  }

  InvolutiveAutomaton bouquet(Alphabet alphabet) {
    InvolutiveAutomaton a(alphabet);
    for (Generator g = 1; g <= alphabet.rank; ++g) {
      a.add_arc(a.basepoint(), g, a.basepoint());
    }
    return a;
  }

  InvolutiveAutomaton compacted(InvolutiveAutomaton const& a,
                                std::vector<VertexId>*     old_vertex) {
    auto const            vs = a.vertices();
    std::vector<VertexId> renumber(a.vertex_id_bound());
    InvolutiveAutomaton   result(a.alphabet());
    for (std::size_t i = 0; i < vs.size(); ++i) {
      renumber[vs[i]] = i == 0 ? result.basepoint() : result.add_vertex();
    }
    for (ArcId e : a.arcs()) {
      Arc const& arc = a.arc(e);
      result.add_arc(renumber[arc.source], arc.label, renumber[arc.target]);
    }
    result.set_basepoint(renumber[a.basepoint()]);
    if (old_vertex != nullptr) {
      *old_vertex = vs;
    }
    return result;
  }

  InvolutiveAutomaton rebased(InvolutiveAutomaton const& a, VertexId v) {
    InvolutiveAutomaton result = a;
    result.set_basepoint(v);
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Queries
  ////////////////////////////////////////////////////////////////////////

  std::optional<Walk> read_walk(InvolutiveAutomaton const& a,
                                VertexId                   start,
                                Word const&                w) {
    if (!a.is_deterministic()) {
      throw InvalidArgument("reading a word needs a deterministic automaton");
    }
    if (w.alphabet() != a.alphabet()) {
      throw AlphabetMismatch("word " + w.str() + " and automaton live over "
                             "different alphabets");
    }
    if (!a.has_vertex(start)) {
      throw InvalidArgument("no vertex with id " + std::to_string(start));
    }
    Walk     walk;
    VertexId current = start;
    for (Letter x : w.letters()) {
      auto s = a.step(current, x);
      if (!s) {
        return std::nullopt;
      }
      walk.push_back(*s);
      current = a.terminus(*s);
    }
    return walk;
  }

  std::optional<VertexId> read_word(InvolutiveAutomaton const& a,
                                    VertexId                   start,
                                    Word const&                w) {
    auto walk = read_walk(a, start, w);
    if (!walk) {
      return std::nullopt;
    }
    return walk->empty() ? start : a.terminus(walk->back());
  }

  std::vector<std::vector<VertexId>>
  connected_components(InvolutiveAutomaton const& a) {
    std::vector<std::vector<VertexId>> result;
    std::vector<char>                  seen(a.vertex_id_bound());
    for (VertexId root : a.vertices()) {
      if (seen[root]) {
        continue;
      }
      std::vector<VertexId> component;
      std::deque<VertexId>  queue{root};
      seen[root] = 1;
      while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        component.push_back(v);
        for (ArcId e : a.incident_arcs(v)) {
          Arc const& arc = a.arc(e);
          for (VertexId w : {arc.source, arc.target}) {
            if (!seen[w]) {
              seen[w] = 1;
              queue.push_back(w);
            }
          }
        }
      }
      std::sort(component.begin(), component.end());
      result.push_back(std::move(component));
    }
    return result;
  }

  std::size_t graph_rank(InvolutiveAutomaton const& a) {
    if (!a.is_connected()) {
      throw InvalidArgument("rank is only defined for connected automata");
    }
    return 1 + a.arc_count() - a.vertex_count();
  }

  std::vector<VertexId> deficient_vertices(InvolutiveAutomaton const& a,
                                           Letter                     x) {
    std::vector<VertexId> order;
    std::vector<char>     seen(a.vertex_id_bound());
    auto                  visit = [&](VertexId root) {
      std::deque<VertexId> queue{root};
      seen[root] = 1;
      while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        order.push_back(v);
        for (Step s : a.steps_from(v)) {
          VertexId w = a.terminus(s);
          if (!seen[w]) {
            seen[w] = 1;
            queue.push_back(w);
          }
        }
      }
    };
    visit(a.basepoint());
    for (VertexId v : a.vertices()) {
      if (!seen[v]) {
        visit(v);
      }
    }
    std::vector<VertexId> result;
    for (VertexId v : order) {
      if (!a.step(v, x)) {
        result.push_back(v);
      }
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Cores
  ////////////////////////////////////////////////////////////////////////

  InvolutiveAutomaton core(InvolutiveAutomaton const& a) {
    if (!a.is_deterministic()) {
      throw InvalidArgument("core is only implemented for deterministic "
                            "automata");
    }
    if (!a.is_connected()) {
      throw InvalidArgument("core needs a connected automaton; select the "
                            "basepoint component first");
    }
    InvolutiveAutomaton  result = a;
    auto const           vs     = result.vertices();
    std::deque<VertexId> queue(vs.begin(), vs.end());
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      if (!result.has_vertex(v) || v == result.basepoint()
          || result.degree(v) > 1) {
        continue;
      }
      auto const incident = result.incident_arcs(v);
      if (!incident.empty()) {
        Arc const& arc = result.arc(incident.front());
        queue.push_back(arc.source == v ? arc.target : arc.source);
      }
      result.remove_vertex(v);
    }
    return result;
  }

  RestrictedCore restricted_core(InvolutiveAutomaton const& a) {
    InvolutiveAutomaton c = core(a);
    if (c.arc_count() == 0) {
      throw InvalidArgument("the restricted core of the trivial subgroup is "
                            "empty");
    }
    std::vector<Letter> hair;
    VertexId            v = c.basepoint();
    while (c.degree(v) == 1) {
      Step const     s    = c.steps_from(v).front();
      VertexId const next = c.terminus(s);
      hair.push_back(c.letter(s));
      c.set_basepoint(next);
      c.remove_vertex(v);
      v = next;
    }
    return {std::move(c), v, Word::reduce(a.alphabet(), hair)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Spanning trees
  ////////////////////////////////////////////////////////////////////////

  bool SpanningTree::contains(ArcId e) const {
    return std::find(arcs.begin(), arcs.end(), e) != arcs.end();
  }

  Walk SpanningTree::walk_to(InvolutiveAutomaton const& a, VertexId v) const {
    Walk walk;
    while (v != root) {
      auto it = parent.find(v);
      if (it == parent.end()) {
        throw InvalidArgument("vertex " + std::to_string(v)
                              + " is not in the spanning tree");
      }
      walk.push_back(it->second);
      v = a.origin(it->second);
    }
    std::reverse(walk.begin(), walk.end());
    return walk;
  }

  Word SpanningTree::label_to(InvolutiveAutomaton const& a, VertexId v) const {
    return a.label(walk_to(a, v));
  }

  SpanningTree spanning_tree(InvolutiveAutomaton const& a) {
    SpanningTree tree;
    tree.root = a.basepoint();
    std::vector<char> seen(a.vertex_id_bound());
    std::deque<VertexId> queue{tree.root};
    seen[tree.root] = 1;
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      tree.order.push_back(v);
      for (Step s : a.steps_from(v)) {
        VertexId w = a.terminus(s);
        if (!seen[w]) {
          seen[w] = 1;
          tree.parent.emplace(w, s);
          tree.arcs.push_back(s.arc);
          queue.push_back(w);
        }
      }
    }
    if (tree.order.size() != a.vertex_count()) {
      throw InvalidArgument("spanning tree needs a connected automaton");
    }
    return tree;
  }

  ////////////////////////////////////////////////////////////////////////
  // Products
  ////////////////////////////////////////////////////////////////////////

  std::optional<VertexId> ProductAutomaton::find(VertexId p,
                                                 VertexId q) const {
    auto it = std::find(pairs.begin(), pairs.end(), std::make_pair(p, q));
    if (it == pairs.end()) {
      return std::nullopt;
    }
    return static_cast<VertexId>(it - pairs.begin());
  }

  namespace {

    void check_same_alphabet(InvolutiveAutomaton const& a1,
                             InvolutiveAutomaton const& a2) {
      if (a1.alphabet() != a2.alphabet()) {
        throw AlphabetMismatch("automata over alphabets of rank "
                               + std::to_string(a1.alphabet().rank) + " and "
                               + std::to_string(a2.alphabet().rank));
      }
    }

  }  // namespace

  ProductAutomaton product(InvolutiveAutomaton const& a1,
                           InvolutiveAutomaton const& a2) {
    check_same_alphabet(a1, a2);
    auto const            v1 = a1.vertices();
    auto const            v2 = a2.vertices();
    std::vector<VertexId> pos1(a1.vertex_id_bound());
    std::vector<VertexId> pos2(a2.vertex_id_bound());
    for (std::size_t i = 0; i < v1.size(); ++i) {
      pos1[v1[i]] = i;
    }
    for (std::size_t j = 0; j < v2.size(); ++j) {
      pos2[v2[j]] = j;
    }
    auto index = [&](VertexId p, VertexId q) {
      return static_cast<VertexId>(pos1[p] * v2.size() + pos2[q]);
    };

    ProductAutomaton result{InvolutiveAutomaton(a1.alphabet()), {}};
    result.pairs.reserve(v1.size() * v2.size());
    for (VertexId p : v1) {
      for (VertexId q : v2) {
        if (!result.pairs.empty()) {
          result.automaton.add_vertex();
        }
        result.pairs.emplace_back(p, q);
      }
    }
    for (ArcId e1 : a1.arcs()) {
      Arc const& x = a1.arc(e1);
      for (ArcId e2 : a2.arcs()) {
        Arc const& y = a2.arc(e2);
        if (x.label == y.label) {
          result.automaton.add_arc(index(x.source, y.source), x.label,
                                   index(x.target, y.target));
        }
      }
    }
    result.automaton.set_basepoint(index(a1.basepoint(), a2.basepoint()));
    return result;
  }

  ProductAutomaton product_component(InvolutiveAutomaton const& a1,
                                     InvolutiveAutomaton const& a2) {
    check_same_alphabet(a1, a2);
    ProductAutomaton result{InvolutiveAutomaton(a1.alphabet()), {}};
    std::map<std::pair<VertexId, VertexId>, VertexId> id;
    std::deque<VertexId>                              queue;

    auto const start = std::make_pair(a1.basepoint(), a2.basepoint());
    id.emplace(start, result.automaton.basepoint());
    result.pairs.push_back(start);
    queue.push_back(result.automaton.basepoint());

    while (!queue.empty()) {
      VertexId const v = queue.front();
      queue.pop_front();
      auto const [p, q] = result.pairs[v];
      auto const steps2 = a2.steps_from(q);
      for (Step s1 : a1.steps_from(p)) {
        for (Step s2 : steps2) {
          if (a1.letter(s1) != a2.letter(s2)) {
            continue;
          }
          auto const next = std::make_pair(a1.terminus(s1), a2.terminus(s2));
          if (id.find(next) == id.end()) {
            VertexId w = result.automaton.add_vertex();
            id.emplace(next, w);
            result.pairs.push_back(next);
            queue.push_back(w);
          }
        }
      }
    }
    for (VertexId v = 0; v < result.pairs.size(); ++v) {
      auto const [p, q] = result.pairs[v];
      for (Step s1 : a1.steps_from(p)) {
        if (!s1.forward) {
          continue;
        }
        for (Step s2 : a2.steps_from(q)) {
          if (!s2.forward || a1.letter(s1) != a2.letter(s2)) {
            continue;
          }
          auto const target = id.at({a1.terminus(s1), a2.terminus(s2)});
          result.automaton.add_arc(v, a1.arc(s1.arc).label, target);
        }
      }
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Isomorphism
  ////////////////////////////////////////////////////////////////////////

  std::optional<VertexMap> match_from(InvolutiveAutomaton const& a1,
                                      VertexId                   v1,
                                      InvolutiveAutomaton const& a2,
                                      VertexId                   v2) {
    check_same_alphabet(a1, a2);
    if (!a1.is_deterministic() || !a2.is_deterministic()) {
      throw InvalidArgument("isomorphism test needs deterministic automata");
    }
    if (a1.vertex_count() != a2.vertex_count()
        || a1.arc_count() != a2.arc_count()) {
      return std::nullopt;
    }
    VertexMap                                 forward{{v1, v2}};
    VertexMap                                 backward{{v2, v1}};
    std::deque<std::pair<VertexId, VertexId>> queue{{v1, v2}};
    auto const                                letters = letters_of(a1.alphabet());
    while (!queue.empty()) {
      auto const [p, q] = queue.front();
      queue.pop_front();
      for (Letter x : letters) {
        auto const n1 = a1.follow(p, x);
        auto const n2 = a2.follow(q, x);
        if (n1.has_value() != n2.has_value()) {
          return std::nullopt;
        }
        if (!n1) {
          continue;
        }
        auto f = forward.find(*n1);
        auto b = backward.find(*n2);
        if (f == forward.end() && b == backward.end()) {
          forward.emplace(*n1, *n2);
          backward.emplace(*n2, *n1);
          queue.emplace_back(*n1, *n2);
        } else if (f == forward.end() || b == backward.end()
                   || f->second != *n2) {
          return std::nullopt;
        }
      }
    }
    if (forward.size() != a1.vertex_count()) {
      return std::nullopt;
    }
    return forward;
  }

  std::optional<VertexMap> isomorphic_based(InvolutiveAutomaton const& a1,
                                            InvolutiveAutomaton const& a2) {
    return match_from(a1, a1.basepoint(), a2, a2.basepoint());
  }

  std::optional<VertexMap> isomorphic_unbased(InvolutiveAutomaton const& a1,
                                              InvolutiveAutomaton const& a2) {
    if (a1.vertex_count() != a2.vertex_count()
        || a1.arc_count() != a2.arc_count()) {
      check_same_alphabet(a1, a2);
      return std::nullopt;
    }
    VertexId const v1 = a1.vertices().front();
    for (VertexId v2 : a2.vertices()) {
      if (auto m = match_from(a1, v1, a2, v2)) {
        return m;
      }
    }
    return std::nullopt;
  }

  bool is_vertex_transitive(InvolutiveAutomaton const& a) {
    auto const     vs = a.vertices();
    VertexId const v0 = vs.front();
    return std::all_of(vs.begin(), vs.end(), [&](VertexId w) {
      return match_from(a, v0, a, w).has_value();
    });
  }

}  // namespace stallings
