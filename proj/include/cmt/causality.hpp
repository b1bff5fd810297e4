#pragma once

#include "cmt/error.hpp"
#include "cmt/observable.hpp"
#include "cmt/scalar.hpp"
#include "cmt/state_space.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cmt {

/// Markov operator Φ : C(Ω_down) → C(Ω_up) stored as a |Ω_up| × |Ω_down|
/// matrix. Entries are non-negative and every row sums to one, i.e.
/// Φ ≥ 0 and Φ(I) = I.
template <class Scalar>
class MarkovOperator {
 public:
  static MarkovOperator make(StateSpace upstream, StateSpace downstream, Matrix<Scalar> matrix) {
    if (static_cast<std::size_t>(matrix.rows()) != upstream.size() ||
        static_cast<std::size_t>(matrix.cols()) != downstream.size())
      throw Error(ErrorCode::DimensionMismatch,
                  "operator matrix is " + std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()) +
                      ", expected " + std::to_string(upstream.size()) + "x" + std::to_string(downstream.size()));
    if ((matrix.array() < Scalar(0)).any()) throw Error(ErrorCode::NotMarkov, "operator has a negative entry");
    for (Eigen::Index r = 0; r < matrix.rows(); ++r)
      if (matrix.row(r).sum() != Scalar(1))
        throw Error(ErrorCode::NotMarkov, "operator does not map the unit function to the unit function (row '" +
                                              upstream.label(static_cast<std::size_t>(r)) + "')");
    return MarkovOperator(std::move(upstream), std::move(downstream), std::move(matrix));
  }

  static MarkovOperator identity(const StateSpace& space) {
    const auto n = static_cast<Eigen::Index>(space.size());
    return MarkovOperator(space, space, Matrix<Scalar>::Identity(n, n));
  }

  const StateSpace& upstream() const { return upstream_; }
  const StateSpace& downstream() const { return downstream_; }
  const Matrix<Scalar>& matrix() const { return matrix_; }

  /// Heisenberg picture: pulls a function on Ω_down back to Ω_up.
  Vector<Scalar> apply(const Vector<Scalar>& f) const {
    if (f.size() != matrix_.cols()) throw Error(ErrorCode::DimensionMismatch, "function length does not match operator");
    return matrix_ * f;
  }

  /// Φ_{a,b} Φ_{b,c} = Φ_{a,c}.
  MarkovOperator then(const MarkovOperator& next) const {
    require_same_space(downstream_, next.upstream_, "operator composition");
    return MarkovOperator(upstream_, next.downstream_, matrix_ * next.matrix_);
  }

  friend bool operator==(const MarkovOperator& a, const MarkovOperator& b) {
    return a.upstream_ == b.upstream_ && a.downstream_ == b.downstream_ && exactly_equal(a.matrix_, b.matrix_);
  }

 private:
  MarkovOperator(StateSpace up, StateSpace down, Matrix<Scalar> m)
      : upstream_(std::move(up)), downstream_(std::move(down)), matrix_(std::move(m)) {}

  StateSpace upstream_;
  StateSpace downstream_;
  Matrix<Scalar> matrix_;
};

/// Schrödinger picture: (Φ*ρ)(ω') = Σ_ω ρ(ω) Φ[ω][ω'].
template <class Scalar>
MixedState<Scalar> dual_apply(const MarkovOperator<Scalar>& op, const MixedState<Scalar>& state) {
  if (!(state.space() == op.upstream()))
    throw Error(ErrorCode::DimensionMismatch, "state does not live on the operator's upstream space");
  return MixedState<Scalar>::from_weights(op.downstream(), op.matrix().transpose() * state.weights());
}

/// The dual sends every pure state to a pure state, i.e. every row is a 0/1
/// point mass and Φ is induced by a point map Ω_up → Ω_down.
template <class Scalar>
bool is_deterministic(const MarkovOperator<Scalar>& op) {
  const auto& m = op.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Eigen::Index ones = 0;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (m(r, c) == Scalar(1))
        ++ones;
      else if (m(r, c) != Scalar(0))
        return false;
    }
    if (ones != 1) return false;
  }
  return true;
}

/// Observable on Ω_down seen from Ω_up: F'(Ξ) = Φ F(Ξ).
template <class Scalar>
Observable<Scalar> pull_back(const Observable<Scalar>& obs, const MarkovOperator<Scalar>& op) {
  require_same_space(obs.space(), op.downstream(), "pull_back");
  return Observable<Scalar>::make(op.upstream(), obs.outcomes(), obs.effects() * op.matrix().transpose());
}

/// Finite rooted tree (T, ≤) given by a parent map; t1 ≤ t2 iff t1 is an
/// ancestor of (or equal to) t2. Every node carries its own state space.
class CausalTree {
 public:
  static CausalTree make(std::vector<std::pair<std::string, StateSpace>> nodes,
                         std::map<std::string, std::string> parent) {
    CausalTree tree;
    for (auto& [id, space] : nodes) {
      if (!tree.spaces_.emplace(id, std::move(space)).second)
        throw Error(ErrorCode::InvalidTree, "node '" + id + "' declared twice");
      tree.order_.push_back(id);
    }
    if (tree.order_.empty()) throw Error(ErrorCode::InvalidTree, "a tree needs at least one node");
    for (const auto& [child, par] : parent) {
      if (!tree.spaces_.count(child)) throw Error(ErrorCode::InvalidTree, "unknown node '" + child + "'");
      if (!tree.spaces_.count(par)) throw Error(ErrorCode::InvalidTree, "unknown parent '" + par + "'");
    }
    tree.parent_ = std::move(parent);
    std::vector<std::string> roots;
    for (const auto& id : tree.order_)
      if (!tree.parent_.count(id)) roots.push_back(id);
    if (roots.size() != 1)
      throw Error(ErrorCode::InvalidTree, "expected exactly one root, found " + std::to_string(roots.size()));
    tree.root_ = roots.front();
    // every node must reach the root without revisiting anything
    for (const auto& id : tree.order_) {
      std::set<std::string> seen;
      std::string at = id;
      while (at != tree.root_) {
        if (!seen.insert(at).second) throw Error(ErrorCode::InvalidTree, "parent map has a cycle through '" + at + "'");
        at = tree.parent_.at(at);
      }
    }
    return tree;
  }

  const std::string& root() const { return root_; }
  const std::vector<std::string>& nodes() const { return order_; }
  bool contains(std::string_view id) const { return spaces_.count(std::string(id)) != 0; }

  const StateSpace& space(std::string_view id) const {
    auto it = spaces_.find(std::string(id));
    if (it == spaces_.end()) throw Error(ErrorCode::InvalidTree, "unknown node '" + std::string(id) + "'");
    return it->second;
  }

  std::optional<std::string> parent(std::string_view id) const {
    space(id);
    auto it = parent_.find(std::string(id));
    if (it == parent_.end()) return std::nullopt;
    return it->second;
  }

  /// Non-root nodes; each one names the edge (parent(child), child).
  std::vector<std::string> edge_children() const {
    std::vector<std::string> out;
    for (const auto& id : order_)
      if (id != root_) out.push_back(id);
    return out;
  }

  bool precedes(std::string_view earlier, std::string_view later) const { return path(earlier, later).has_value(); }

  /// Nodes from `earlier` down to `later`, both included, when earlier ≤ later.
  std::optional<std::vector<std::string>> path(std::string_view earlier, std::string_view later) const {
    space(earlier);
    space(later);
    std::vector<std::string> up{std::string(later)};
    while (up.back() != earlier) {
      auto p = parent(up.back());
      if (!p) return std::nullopt;
      up.push_back(*p);
    }
    std::reverse(up.begin(), up.end());
    return up;
  }

 private:
  CausalTree() = default;

  std::map<std::string, StateSpace> spaces_;
  std::map<std::string, std::string> parent_;
  std::vector<std::string> order_;
  std::string root_;
};

/// Causal relation {Φ_{t1,t2}} on a tree. Only edge operators are stored;
/// every other Φ_{t1,t2} is the product along the path, so the composition
/// law holds by construction.
template <class Scalar>
class CausalFamily {
 public:
  /// `edge_matrices` is keyed by the child of each edge.
  static CausalFamily make(CausalTree tree, const std::map<std::string, Matrix<Scalar>>& edge_matrices) {
    CausalFamily family(std::move(tree));
    for (const auto& [child, m] : edge_matrices)
      if (!family.tree_.contains(child) || child == family.tree_.root())
        throw Error(ErrorCode::InvalidTree, "operator given for '" + child + "', which is not the child end of an edge");
    for (const auto& child : family.tree_.edge_children()) {
      auto it = edge_matrices.find(child);
      if (it == edge_matrices.end()) throw Error(ErrorCode::MissingOperator, "no operator for the edge into '" + child + "'");
      const auto par = *family.tree_.parent(child);
      family.edges_.emplace(child, MarkovOperator<Scalar>::make(family.tree_.space(par), family.tree_.space(child), it->second));
    }
    return family;
  }

  const CausalTree& tree() const { return tree_; }
  const MarkovOperator<Scalar>& edge(std::string_view child) const {
    auto it = edges_.find(std::string(child));
    if (it == edges_.end()) throw Error(ErrorCode::MissingOperator, "no edge into '" + std::string(child) + "'");
    return it->second;
  }

  /// Φ_{t1,t2} for t1 ≤ t2; the identity when t1 = t2.
  MarkovOperator<Scalar> compose(std::string_view t1, std::string_view t2) const {
    auto nodes = tree_.path(t1, t2);
    if (!nodes) throw Error(ErrorCode::NotComparable, "'" + std::string(t1) + "' does not precede '" + std::string(t2) + "'");
    auto result = MarkovOperator<Scalar>::identity(tree_.space(t1));
    for (std::size_t i = 1; i < nodes->size(); ++i) result = result.then(edge((*nodes)[i]));
    return result;
  }

 private:
  explicit CausalFamily(CausalTree tree) : tree_(std::move(tree)) {}

  CausalTree tree_;
  std::map<std::string, MarkovOperator<Scalar>> edges_;
};

template <class Scalar>
CausalFamily<Scalar> make_causal_family(CausalTree tree, const std::map<std::string, Matrix<Scalar>>& edge_matrices) {
  return CausalFamily<Scalar>::make(std::move(tree), edge_matrices);
}

template <class Scalar>
MarkovOperator<Scalar> compose(const CausalFamily<Scalar>& family, std::string_view t1, std::string_view t2) {
  return family.compose(t1, t2);
}

}  // namespace cmt
