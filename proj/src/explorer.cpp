/*
 * Copyright (c) 2026, The wcetref authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "wcet/explorer.hpp"

#include <limits>
#include <unordered_map>
#include <utility>

#include "wcet/errors.hpp"
#include "wcet/timing.hpp"

namespace wcet {

namespace {

using NodeId = std::size_t;
constexpr NodeId kNone = std::numeric_limits<NodeId>::max();

// Memoized longest-path search over an acyclic product. Model supplies the
// cache component: `State initial()` and
// `for_each_successor(state, line, fn(Classification, State))`.
template <class Model>
class ProductSearch {
 public:
  using State = typename Model::State;

  ProductSearch(const Program& program, const CacheConfig& config, const DurationTable& durations, Model& model)
      : program_(program), config_(config), durations_(durations), model_(model) {}

  ExplorationResult run(ExplorationMode mode) {
    NodeId root = solve(program_.entry(), model_.initial());
    ExplorationResult result;
    result.mode = mode;
    result.states_explored = memo_.size();
    if (!nodes_[root].complete) return result;
    result.wcet = nodes_[root].best;
    for (NodeId n = root; nodes_[n].child != kNone; n = nodes_[n].child) result.witness.push_back(nodes_[n].step);
    return result;
  }

  bool root_complete() const { return !nodes_.empty() && nodes_.front().complete; }

 private:
  struct Node {
    bool complete = false;
    Cycles best = 0;
    ClassifiedAccess step{};
    NodeId child = kNone;
  };

  struct Key {
    LocId loc;
    State state;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::size_t h = typename Model::Hash{}(k.state);
      return h ^ (std::hash<LocId>{}(k.loc) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
  };

  // Is (a_step . residual(a_child)) lexicographically below (b_step . residual(b_child))?
  bool less(ClassifiedAccess a_step, NodeId a_child, ClassifiedAccess b_step, NodeId b_child) const {
    for (;;) {
      if (a_step != b_step) return a_step < b_step;
      if (a_child == b_child) return false;
      const Node& a = nodes_[a_child];
      const Node& b = nodes_[b_child];
      if (a.child == kNone || b.child == kNone) return a.child == kNone && b.child != kNone;
      a_step = a.step;
      b_step = b.step;
      a_child = a.child;
      b_child = b.child;
    }
  }

  NodeId solve(LocId loc, const State& state) {
    auto [it, fresh] = memo_.try_emplace(Key{loc, state}, nodes_.size());
    if (!fresh) return it->second;
    const NodeId id = it->second;
    nodes_.emplace_back();
    if (loc == program_.end()) {
      nodes_[id].complete = true;
      return id;
    }

    Node best;
    for (const Edge& e : program_.out_edges(loc)) {
      const Line line = line_of(e.pc, config_);
      model_.for_each_successor(state, line, [&](Classification cls, const State& next) {
        NodeId child = solve(e.to, next);
        if (!nodes_[child].complete) return;
        const ClassifiedAccess step{e.pc, line, cls};
        const Cycles t = step_cost(e.pc, cls, durations_, config_).total() + nodes_[child].best;
        if (!best.complete || t > best.best || (t == best.best && less(step, child, best.step, best.child))) {
          best = {true, t, step, child};
        }
      });
    }
    nodes_[id] = best;
    return id;
  }

  const Program& program_;
  const CacheConfig& config_;
  const DurationTable& durations_;
  Model& model_;
  std::unordered_map<Key, NodeId, KeyHash> memo_;
  std::vector<Node> nodes_;
};

struct ConcreteCacheModel {
  using State = CacheState;
  using Hash = CacheStateHash;

  const CacheConfig& config;
  CacheState init;

  State initial() const { return init; }

  template <class Fn>
  void for_each_successor(const State& s, Line line, Fn&& fn) const {
    auto [next, cls] = access(s, line, config);
    fn(cls, next);
  }
};

struct AbstractCacheModel {
  using State = StateId;
  using Hash = std::hash<StateId>;

  const ClassifierAutomaton& automaton;

  State initial() const { return automaton.initial(); }

  template <class Fn>
  void for_each_successor(State s, Line line, Fn&& fn) const {
    for (Classification cls : {Classification::Hit, Classification::Miss}) {
      StateId next = automaton.next(s, automaton.alphabet().index_of({line, cls}));
      if (automaton.accepting(next)) fn(cls, next);
    }
  }
};

}  // namespace

ExplorationResult explore_explicit(const Program& program, const CacheConfig& config, const CacheState& init,
                                   const DurationTable& durations, std::size_t max_len) {
  config.validate();
  if (!is_valid_state(init, config)) {
    throw ValidationError("initial cache state " + format_state(init) + " is not a valid state for capacity " +
                          std::to_string(config.capacity));
  }
  check_bounded(program, max_len);
  ConcreteCacheModel model{config, init};
  return ProductSearch<ConcreteCacheModel>(program, config, durations, model).run(ExplorationMode::Explicit);
}

ExplorationResult explore_abstract(const Program& program, const ClassifierAutomaton& model,
                                   const CacheConfig& config, const DurationTable& durations,
                                   std::size_t max_len) {
  config.validate();
  check_bounded(program, max_len);
  for (Line l : program.lines(config.line_size)) {
    if (!model.alphabet().contains(l)) {
      throw AlphabetMismatch("abstract cache model does not cover line " + std::to_string(l));
    }
  }
  if (!model.accepting(model.initial())) throw AbstractModelEmpty("abstract cache model allows no trace at all");

  AbstractCacheModel m{model};
  ProductSearch<AbstractCacheModel> search(program, config, durations, m);
  ExplorationResult result = search.run(ExplorationMode::Abstract);
  if (!search.root_complete()) {
    throw AbstractModelEmpty("abstract cache model allows no complete classified run of the program");
  }
  return result;
}

}  // namespace wcet
