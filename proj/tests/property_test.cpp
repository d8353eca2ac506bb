// Randomized invariants. Every test draws from a fixed seed so failures
// reproduce; the seed and case index are reported on failure.

#include <gtest/gtest.h>

#include <algorithm>

#include "stallings/subgroup.hpp"
#include "support.hpp"

namespace stallings {
  namespace {

    using testing::Gen;
    using testing::naive_reduce;

    Alphabet const f2{2};
    Alphabet const f3{3};

    ////////////////////////////////////////////////////////////////////////
    // Words
    ////////////////////////////////////////////////////////////////////////

    TEST(WordProperty, ReductionAgreesWithNaiveOracle) {
      Gen gen(11);
      for (int i = 0; i < 2000; ++i) {
        auto const raw = gen.letters(f3, gen.below(24));
        auto const u   = Word::reduce(f3, raw);
        auto const ref = naive_reduce(raw);
        ASSERT_TRUE(std::equal(u.letters().begin(), u.letters().end(),
                               ref.begin(), ref.end()))
            << "case " << i;
        EXPECT_EQ(Word::reduce(f3, u.letters()), u);
      }
    }

    TEST(WordProperty, CancellingInsertionsVanish) {
      Gen gen(12);
      for (int i = 0; i < 1000; ++i) {
        auto const u   = gen.word(f2, 12);
        auto       raw = std::vector<Letter>(u.letters().begin(),
                                             u.letters().end());
        for (int k = 0; k < 4; ++k) {
          Letter const x   = gen.letter(f2);
          auto const   pos = static_cast<std::ptrdiff_t>(gen.below(raw.size() + 1));
          raw.insert(raw.begin() + pos, {x, x.inverse()});
        }
        EXPECT_EQ(Word::reduce(f2, raw), u) << "case " << i;
      }
    }

    TEST(WordProperty, GroupLaws) {
      Gen gen(13);
      for (int i = 0; i < 1000; ++i) {
        auto const u = gen.word(f2, 10);
        auto const v = gen.word(f2, 10);
        auto const x = gen.word(f2, 10);
        EXPECT_EQ(u * (v * x), (u * v) * x);
        EXPECT_TRUE((u * u.inverse()).empty());
        EXPECT_EQ(u.inverse().inverse(), u);
        auto const uv = u * v;
        for (Generator g = 1; g <= 2; ++g) {
          EXPECT_EQ(uv.exponent_sum(g), u.exponent_sum(g) + v.exponent_sum(g));
        }
        EXPECT_LE(uv.size(), u.size() + v.size());
        EXPECT_EQ(uv.size() % 2, (u.size() + v.size()) % 2);
      }
    }

    ////////////////////////////////////////////////////////////////////////
    // Automata
    ////////////////////////////////////////////////////////////////////////

    TEST(AutomatonProperty, DeficitHandshake) {
      Gen gen(21);
      for (int i = 0; i < 300; ++i) {
        auto const h = Subgroup::make(f2, gen.generators(f2, 1, 4, 8));
        for (Letter x : letters_of(f2)) {
          if (x.is_positive()) {
            EXPECT_EQ(deficient_vertices(h.stallings(), x).size(),
                      deficient_vertices(h.stallings(), x.inverse()).size());
          }
        }
      }
    }

    TEST(AutomatonProperty, ProductSymmetricAndAssociative) {
      Gen gen(22);
      for (int i = 0; i < 150; ++i) {
        auto const a = Subgroup::make(f2, gen.generators(f2, 1, 3, 6)).stallings();
        auto const b = Subgroup::make(f2, gen.generators(f2, 1, 3, 6)).stallings();
        auto const c = Subgroup::make(f2, gen.generators(f2, 1, 3, 6)).stallings();
        auto const ab = product_component(a, b).automaton;
        auto const ba = product_component(b, a).automaton;
        EXPECT_TRUE(isomorphic_based(ab, ba)) << "case " << i;
        auto const left  = product_component(ab, c).automaton;
        auto const right =
            product_component(a, product_component(b, c).automaton).automaton;
        EXPECT_TRUE(isomorphic_based(left, right)) << "case " << i;

        auto const full_ab = product(a, b).automaton;
        auto const full_ba = product(b, a).automaton;
        EXPECT_EQ(full_ab.vertex_count(), full_ba.vertex_count());
        EXPECT_EQ(full_ab.arc_count(), full_ba.arc_count());
      }
    }

    TEST(AutomatonProperty, CoresPreserveRank) {
      Gen gen(23);
      for (int i = 0; i < 300; ++i) {
        auto const gens   = gen.generators(f2, 1, 4, 8);
        auto const folded = fold_to_completion(flower(f2, gens).automaton);
        auto const c      = core(folded.automaton);
        EXPECT_EQ(graph_rank(c), graph_rank(folded.automaton));
        if (graph_rank(c) > 0) {
          EXPECT_EQ(graph_rank(restricted_core(c).graph), graph_rank(c));
        }
      }
    }

    TEST(AutomatonProperty, BasisWordsAreRead) {
      Gen gen(24);
      for (int i = 0; i < 300; ++i) {
        auto const  h    = Subgroup::make(f2, gen.generators(f2, 1, 4, 8));
        auto const& st   = h.stallings();
        for (int k = 0; k < 5; ++k) {
          auto const u = gen.product(f2, h.basis(), 5);
          EXPECT_EQ(read_word(st, st.basepoint(), u), st.basepoint());
        }
      }
    }

    ////////////////////////////////////////////////////////////////////////
    // Folding
    ////////////////////////////////////////////////////////////////////////

    TEST(FoldingProperty, ConfluenceAndLoss) {
      Gen gen(31);
      for (int i = 0; i < 200; ++i) {
        auto const f    = flower(f2, gen.generators(f2, 1, 5, 8));
        auto const base = fold_to_completion(f.automaton);
        for (std::uint64_t s = 0; s < 5; ++s) {
          auto const other = fold_to_completion(f.automaton,
                                                {.shuffle_seed = 1000 * i + s});
          EXPECT_TRUE(isomorphic_based(base.automaton, other.automaton))
              << "case " << i << " shuffle " << s;
          EXPECT_EQ(base.trace.closed_count(), other.trace.closed_count());
        }
      }
    }

    TEST(FoldingProperty, RankDropsByClosedFolds) {
      Gen gen(32);
      for (int i = 0; i < 300; ++i) {
        auto const f = flower(f3, gen.generators(f3, 1, 5, 8));
        auto const r = fold_to_completion(
            f.automaton, {.shuffle_seed = static_cast<std::uint64_t>(i)});
        EXPECT_EQ(graph_rank(f.automaton),
                  graph_rank(r.automaton) + r.trace.closed_count());
        EXPECT_EQ(r.trace.events().size(),
                  f.automaton.arc_count() - r.automaton.arc_count());
      }
    }

    TEST(FoldingProperty, LiftPreservesLabels) {
      Gen gen(33);
      for (int i = 0; i < 300; ++i) {
        auto const  gens = gen.generators(f2, 1, 4, 7);
        auto const  f    = flower(f2, gens);
        auto const  r    = fold_to_completion(
            f.automaton, {.shuffle_seed = static_cast<std::uint64_t>(i)});
        auto const& fin  = r.automaton;
        for (int k = 0; k < 5; ++k) {
          auto const u    = gen.product(f2, gens, 6);
          auto const walk = read_walk(fin, fin.basepoint(), u);
          ASSERT_TRUE(walk.has_value());
          auto const lifted = lift_path(r.trace, *walk);
          EXPECT_TRUE(f.automaton.is_walk(lifted, f.automaton.basepoint(),
                                          f.automaton.basepoint()));
          EXPECT_EQ(f.automaton.label(lifted), u) << "case " << i;
          EXPECT_EQ(evaluate(petal_decompose(f, lifted), gens, f2), u);
        }
      }
    }

    TEST(FoldingProperty, LiftThroughBaseMerges) {
      // Words starting with the same letter force open folds that absorb
      // vertices next to the basepoint; words ending and starting alike
      // make the basepoint itself take part in folds.
      Gen gen(34);
      for (int i = 0; i < 300; ++i) {
        std::vector<Word> gens;
        Word const        stem = gen.reduced(f2, gen.between(1, 2));
        for (std::size_t k = gen.between(2, 4); k-- > 0;) {
          Word g = stem * gen.word(f2, 4) * stem.inverse();
          if (!g.empty()) {
            gens.push_back(g);
          }
        }
        auto const h = Subgroup::make(f2, gens);
        for (int k = 0; k < 5; ++k) {
          auto const u  = gen.product(f2, gens, 6);
          auto const pw = h.express(u);
          ASSERT_TRUE(pw.has_value());
          EXPECT_EQ(evaluate(*pw, h.generators(), f2), u);
        }
      }
    }

    ////////////////////////////////////////////////////////////////////////
    // Subgroups
    ////////////////////////////////////////////////////////////////////////

    TEST(SubgroupProperty, NielsenSchreier) {
      Gen gen(41);
      for (int i = 0; i < 300; ++i) {
        auto const gens  = gen.generators(f2, 1, 5, 8);
        auto const h     = Subgroup::make(f2, gens);
        EXPECT_TRUE(is_free_family(f2, h.basis()));
        EXPECT_EQ(h.rank(), graph_rank(h.stallings()));
        auto const again = Subgroup::make(f2, h.basis());
        EXPECT_TRUE(testing::same_subgroup(h, again));
        EXPECT_TRUE(isomorphic_based(h.stallings(), again.stallings()));
      }
    }

    TEST(SubgroupProperty, MembershipConsistency) {
      Gen gen(42);
      for (int i = 0; i < 300; ++i) {
        auto const gens = gen.generators(f2, 1, 4, 6);
        auto const h    = Subgroup::make(f2, gens);
        for (int k = 0; k < 10; ++k) {
          Word const u = k % 2 == 0 ? gen.product(f2, gens, 5)
                                    : gen.word(f2, 8);
          auto const pw = h.express(u);
          EXPECT_EQ(h.contains(u), pw.has_value());
          if (pw) {
            EXPECT_EQ(evaluate(*pw, gens, f2), u);
          }
          if (k % 2 == 0) {
            EXPECT_TRUE(h.contains(u));
          }
        }
      }
    }

    TEST(SubgroupProperty, SchreierFormula) {
      for (std::size_t n = 1; n <= 3; ++n) {
        for (std::size_t k = 1; k <= (n == 3 ? 3U : 4U); ++k) {
          auto const all = enumerate_index_subgroups(Alphabet{n}, k);
          EXPECT_EQ(static_cast<std::int64_t>(all.size()),
                    testing::hall_subgroup_count(n, k))
              << "n=" << n << " k=" << k;
          for (auto const& h : all) {
            EXPECT_EQ(h.rank() - 1, k * (n - 1));
          }
        }
      }
    }

    TEST(SubgroupProperty, EnumerationMatchesBruteForce) {
      for (std::size_t k = 1; k <= 4; ++k) {
        EXPECT_EQ(static_cast<std::int64_t>(
                      enumerate_index_subgroups(f2, k).size()),
                  testing::brute_force_subgroup_count(2, k));
      }
    }

    TEST(SubgroupProperty, IntersectionMatchesMembership) {
      Gen gen(43);
      for (int i = 0; i < 200; ++i) {
        auto const hg = gen.generators(f2, 1, 3, 6);
        auto const kg = gen.generators(f2, 1, 3, 6);
        auto const h  = Subgroup::make(f2, hg);
        auto const k  = Subgroup::make(f2, kg);
        auto const hk = intersect(h, k);
        for (int j = 0; j < 12; ++j) {
          Word u(f2);
          switch (j % 4) {
            case 0: u = gen.product(f2, hg, 4); break;
            case 1: u = gen.product(f2, kg, 4); break;
            case 2: u = gen.product(f2, hk.basis(), 3); break;
            default: u = gen.word(f2, 6); break;
          }
          EXPECT_EQ(hk.contains(u), h.contains(u) && k.contains(u))
              << "case " << i << " word " << u;
        }
      }
    }

    TEST(SubgroupProperty, StrongHannaNeumann) {
      Gen gen(44);
      for (int i = 0; i < 300; ++i) {
        auto const h = Subgroup::make(f2, gen.generators(f2, 1, 4, 8));
        auto const k = Subgroup::make(f2, gen.generators(f2, 1, 4, 8));
        auto const a = shn_audit(h, k);
        EXPECT_LE(a.sum, a.strong_bound) << "case " << i;
        EXPECT_GE(a.sum, intersect(h, k).reduced_rank());
      }
    }

    TEST(SubgroupProperty, ConjugacyWitness) {
      Gen gen(45);
      for (int i = 0; i < 300; ++i) {
        auto const h = Subgroup::make(f2, gen.generators(f2, 1, 3, 6));
        Word const c = gen.word(f2, 6);
        std::vector<Word> conj;
        for (Word const& g : h.generators()) {
          conj.push_back(c.inverse() * g * c);
        }
        auto const k = Subgroup::make(f2, conj);
        auto const z = are_conjugate(h, k);
        ASSERT_TRUE(z.has_value()) << "case " << i;
        EXPECT_TRUE(testing::conjugates_by(h, *z, k)) << "case " << i;
        if (!h.is_trivial()) {
          EXPECT_TRUE(isomorphic_unbased(restricted_core(h.stallings()).graph,
                                         restricted_core(k.stallings()).graph));
        }
      }
    }

    TEST(SubgroupProperty, ConjugacyNegativesAreSound) {
      // When no conjugator is found, no short word conjugates either.
      Gen        gen(46);
      auto const candidates = testing::all_reduced_words(f2, 4);
      int        negatives  = 0;
      for (int i = 0; i < 100; ++i) {
        auto const h = Subgroup::make(f2, gen.generators(f2, 1, 2, 4));
        auto const k = Subgroup::make(f2, gen.generators(f2, 1, 2, 4));
        if (are_conjugate(h, k)) {
          continue;
        }
        ++negatives;
        for (Word const& z : candidates) {
          EXPECT_FALSE(testing::conjugates_by(h, z, k)) << "case " << i;
        }
      }
      EXPECT_GT(negatives, 0);
    }

    TEST(SubgroupProperty, HallCompletion) {
      Gen gen(47);
      for (int i = 0; i < 300; ++i) {
        auto const h = Subgroup::make(f2, gen.generators(f2, 1, 4, 7));
        auto const k = hall_completion(h);
        auto const data = k.finite_index_data();
        ASSERT_TRUE(data.has_value());
        EXPECT_EQ(data->index, h.stallings().vertex_count());
        ASSERT_LE(h.basis().size(), k.basis().size());
        EXPECT_TRUE(std::equal(h.basis().begin(), h.basis().end(),
                               k.basis().begin()));
        EXPECT_TRUE(is_free_family(f2, k.basis()));
        for (Word const& g : h.generators()) {
          EXPECT_TRUE(k.contains(g));
        }
      }
    }

    TEST(SubgroupProperty, NormalityCriteriaAgree) {
      for (std::size_t k = 1; k <= 4; ++k) {
        for (auto const& h : enumerate_index_subgroups(f2, k)) {
          EXPECT_EQ(h.is_normal(), h.is_normal_by_automaton());
        }
      }
      Gen gen(48);
      for (int i = 0; i < 200; ++i) {
        auto const h = Subgroup::make(f2, gen.generators(f2, 1, 4, 6));
        if (!h.is_trivial()) {
          EXPECT_EQ(h.is_normal(), h.is_normal_by_automaton()) << "case " << i;
        }
      }
    }

    TEST(SubgroupProperty, TransversalPartitions) {
      auto const words = testing::all_reduced_words(f2, 5);
      for (auto const& h : enumerate_index_subgroups(f2, 3)) {
        auto const data = h.finite_index_data();
        ASSERT_TRUE(data.has_value());
        for (Word const& u : words) {
          int hits = 0;
          for (Word const& t : data->transversal) {
            hits += h.contains(u * t.inverse()) ? 1 : 0;
          }
          EXPECT_EQ(hits, 1) << u;
        }
      }
    }

    TEST(SubgroupProperty, CosetIntersection) {
      Gen gen(49);
      for (int i = 0; i < 200; ++i) {
        auto const h = Subgroup::make(f2, gen.generators(f2, 1, 3, 5));
        auto const k = Subgroup::make(f2, gen.generators(f2, 1, 3, 5));
        Word const u = gen.word(f2, 5);
        Word const v = gen.word(f2, 5);
        auto const r = coset_intersect(h, u, k, v);
        if (r) {
          EXPECT_TRUE(h.contains(*r * u.inverse())) << "case " << i;
          EXPECT_TRUE(k.contains(*r * v.inverse())) << "case " << i;
        } else {
          for (int j = 0; j < 20; ++j) {
            Word const t = gen.product(f2, h.basis(), 4) * u;
            EXPECT_FALSE(k.contains(t * v.inverse())) << "case " << i;
          }
        }
      }
    }

  }  // namespace
}  // namespace stallings
