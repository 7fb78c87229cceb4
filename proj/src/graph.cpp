#include "tginfer/graph.hpp"

#include <stdexcept>
#include <string>
#include <unordered_set>

namespace tginfer {

DyadState state_from_int(int value) {
  switch (value) {
    case -1: return DyadState::second_wins;
    case 0: return DyadState::tied;
    case 1: return DyadState::first_wins;
    default: throw std::invalid_argument("dyad state must be -1, 0 or +1, got " + std::to_string(value));
  }
}

Roster::Roster(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() < 2) throw std::invalid_argument("roster needs at least 2 vertices");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw std::invalid_argument("roster labels must be nonempty");
    if (!seen.insert(l).second) throw std::invalid_argument("duplicate roster label: " + l);
  }
}

std::optional<int> Roster::index_of(const std::string& label) const {
  for (size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  return std::nullopt;
}

DyadLayout::DyadLayout(int n_vertices) : n_(n_vertices) {
  if (n_ < 2) throw std::invalid_argument("DyadLayout needs at least 2 vertices");
}

int DyadLayout::flat(int i, int j) const {
  if (i < 0 || j <= i || j >= n_) throw std::out_of_range("DyadLayout::flat: need 0 <= i < j < N");
  return i * n_ - i * (i + 1) / 2 + (j - i - 1);
}

Dyad DyadLayout::pair(int flat) const {
  if (flat < 0 || flat >= dyad_count()) throw std::out_of_range("DyadLayout::pair: flat index out of range");
  int i = 0;
  int row_len = n_ - 1;
  while (flat >= row_len) {
    flat -= row_len;
    ++i;
    --row_len;
  }
  return {i, i + 1 + flat};
}

void AdjacencyMatrix::validate() const {
  for (int i = 0; i < n_; ++i) {
    if (at(i, i) != 0) throw std::invalid_argument("adjacency matrix has a loop at vertex " + std::to_string(i));
    for (int j = 0; j < n_; ++j) {
      if (at(i, j) != 0 && at(i, j) != 1)
        throw std::invalid_argument("adjacency matrix entries must be 0 or 1");
    }
  }
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (at(i, j) == 1 && at(j, i) == 1)
        throw std::invalid_argument("mutual domination between vertices " + std::to_string(i) + " and " +
                                    std::to_string(j) + " is not a tournament state");
}

DyadStateVector adjacency_to_dyads(const AdjacencyMatrix& theta) {
  theta.validate();
  const int n = theta.size();
  DyadLayout layout(n);
  DyadStateVector states(layout.dyad_count(), DyadState::tied);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      DyadState s = DyadState::tied;
      if (theta.at(i, j) == 1) s = DyadState::first_wins;
      else if (theta.at(j, i) == 1) s = DyadState::second_wins;
      states[layout.flat(i, j)] = s;
    }
  }
  return states;
}

AdjacencyMatrix dyads_to_adjacency(const DyadStateVector& states, int n_vertices) {
  DyadLayout layout(n_vertices);
  if (static_cast<int>(states.size()) != layout.dyad_count())
    throw std::invalid_argument("dyad state vector length does not match roster size");
  AdjacencyMatrix theta(n_vertices);
  for (int d = 0; d < layout.dyad_count(); ++d) {
    const auto [i, j] = layout.pair(d);
    switch (states[d]) {
      case DyadState::first_wins: theta.at(i, j) = 1; break;
      case DyadState::second_wins: theta.at(j, i) = 1; break;
      case DyadState::tied: break;
    }
  }
  return theta;
}

ReportMatrix report_array_to_matrix(const std::vector<AdjacencyMatrix>& slices) {
  if (slices.empty()) throw std::invalid_argument("report array needs at least one informant slice");
  const int n = slices.front().size();
  DyadLayout layout(n);
  ReportMatrix reports(static_cast<int>(slices.size()), layout.dyad_count(), DyadState::tied);
  for (size_t k = 0; k < slices.size(); ++k) {
    if (slices[k].size() != n) throw std::invalid_argument("informant slices disagree on vertex count");
    const DyadStateVector row = adjacency_to_dyads(slices[k]);
    for (int d = 0; d < layout.dyad_count(); ++d) reports(static_cast<int>(k), d) = row[d];
  }
  return reports;
}

std::vector<int> copeland_score(const DyadStateVector& states, int n_vertices) {
  DyadLayout layout(n_vertices);
  if (static_cast<int>(states.size()) != layout.dyad_count())
    throw std::invalid_argument("dyad state vector length does not match roster size");
  std::vector<int> score(n_vertices, 0);
  for (int d = 0; d < layout.dyad_count(); ++d) {
    const auto [i, j] = layout.pair(d);
    switch (states[d]) {
      case DyadState::first_wins: ++score[i]; --score[j]; break;
      case DyadState::second_wins: --score[i]; ++score[j]; break;
      case DyadState::tied: break;
    }
  }
  return score;
}

}  // namespace tginfer
