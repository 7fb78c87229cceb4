#ifndef TGINFER_GRAPH_HPP
#define TGINFER_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tginfer/matrix.hpp"

namespace tginfer {

// State of one unordered vertex pair {i, j} with i < j:
//   first_wins  : i dominates j
//   second_wins : j dominates i
//   tied        : neither dominates
enum class DyadState : std::int8_t {
  second_wins = -1,
  tied = 0,
  first_wins = 1,
};

inline int to_int(DyadState s) { return static_cast<int>(s); }

// Accepts exactly -1, 0, +1.
DyadState state_from_int(int value);

inline DyadState reversed(DyadState s) { return static_cast<DyadState>(-to_int(s)); }
inline bool decisive(DyadState s) { return s != DyadState::tied; }

// The vertex set: at least two vertices, labels unique and nonempty.
// Vertex ordinals follow label order, which fixes the canonical dyad layout.
class Roster {
 public:
  explicit Roster(std::vector<std::string> labels);

  int size() const { return static_cast<int>(labels_.size()); }
  int dyad_count() const { return size() * (size() - 1) / 2; }
  const std::string& label(int v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> index_of(const std::string& label) const;

 private:
  std::vector<std::string> labels_;
};

struct Dyad {
  int first;   // lower vertex ordinal
  int second;  // higher vertex ordinal
  bool operator==(const Dyad&) const = default;
};

// Bijection between unordered pairs {i < j} of [0, N) and flat indices
// [0, D), D = N(N-1)/2, in lexicographic (i, j) order:
//   flat(i, j) = i*N - i(i+1)/2 + (j - i - 1)
class DyadLayout {
 public:
  explicit DyadLayout(int n_vertices);

  int vertex_count() const { return n_; }
  int dyad_count() const { return n_ * (n_ - 1) / 2; }

  int flat(int i, int j) const;
  Dyad pair(int flat) const;

 private:
  int n_;
};

// Binary adjacency matrix of a tournament graph with ties. A dyad is tied
// when both directed entries are zero; mutual domination is not
// representable and is rejected on validation.
class AdjacencyMatrix {
 public:
  explicit AdjacencyMatrix(int n_vertices) : n_(n_vertices), data_(static_cast<size_t>(n_) * n_, 0) {}

  int size() const { return n_; }
  std::uint8_t& at(int i, int j) { return data_[static_cast<size_t>(i) * n_ + j]; }
  std::uint8_t at(int i, int j) const { return data_[static_cast<size_t>(i) * n_ + j]; }

  // Throws if any diagonal entry is set, any entry is not 0/1, or some pair
  // has both directions set.
  void validate() const;

  bool operator==(const AdjacencyMatrix&) const = default;

 private:
  int n_;
  std::vector<std::uint8_t> data_;
};

// Latent graph as one categorical state per dyad, in canonical dyad order.
using DyadStateVector = std::vector<DyadState>;

// reports(k, d): informant k's state for dyad d. Cells masked unobserved by
// the companion InclusionMask hold a placeholder (tied) and are never read
// by likelihood code.
using ReportMatrix = Matrix<DyadState>;

// observed(k, d): 1 if informant k's report on dyad d was collected.
using InclusionMask = Matrix<std::uint8_t>;

// Collapses an adjacency matrix to per-dyad states. Validates the input.
DyadStateVector adjacency_to_dyads(const AdjacencyMatrix& theta);

// Inverse of adjacency_to_dyads; round-trips exactly.
AdjacencyMatrix dyads_to_adjacency(const DyadStateVector& states, int n_vertices);

// Stacks per-informant adjacency matrices into a report matrix (all cells
// observed at this level; missingness is carried separately).
ReportMatrix report_array_to_matrix(const std::vector<AdjacencyMatrix>& slices);

// Wins minus losses per vertex; tied dyads contribute nothing.
std::vector<int> copeland_score(const DyadStateVector& states, int n_vertices);

}  // namespace tginfer

#endif
