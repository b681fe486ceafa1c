#include "lil/algebra.hpp"

#include "lil/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace lil {

Pattern::Pattern(std::size_t n) : n_(n), grid_(n * n, 0) {
  for (std::size_t i = 0; i < n; ++i) grid_[i * n + i] = 1;
}

Pattern Pattern::full(std::size_t n) {
  Pattern p(n);
  std::fill(p.grid_.begin(), p.grid_.end(), 1);
  return p;
}

Pattern Pattern::upper_triangular(std::size_t n) {
  Pattern p(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) p.grid_[i * n + j] = 1;
  }
  return p;
}

Pattern Pattern::diagonal(std::size_t n) { return Pattern(n); }

Pattern Pattern::from_pairs(std::size_t n,
                            const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Pattern p(n);
  for (const auto& [i, j] : pairs) {
    if (i >= n || j >= n) fail(Status::BadArgument, "pattern pair out of range");
    p.grid_[i * n + j] = 1;
  }
  return p;
}

void Pattern::add(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_) fail(Status::BadArgument, "pattern pair out of range");
  grid_[i * n_ + j] = 1;
}

std::size_t Pattern::entry_count() const {
  return static_cast<std::size_t>(std::count(grid_.begin(), grid_.end(), 1));
}

std::vector<std::pair<std::size_t, std::size_t>> Pattern::entries() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(entry_count());
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (grid_[i * n_ + j]) out.emplace_back(i, j);
    }
  }
  return out;
}

Pattern Pattern::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  bool have_header = false;
  std::vector<std::string> row_lines;

  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string stripped;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) stripped.push_back(c);
    }
    if (stripped.empty()) continue;

    if (!have_header) {
      std::istringstream header(line);
      std::string tag;
      header >> tag;
      if (tag != "n" || !(header >> n) || n == 0) {
        fail(Status::Parse, "pattern file must start with 'n <size>'");
      }
      have_header = true;
      continue;
    }
    row_lines.push_back(stripped);
  }

  if (!have_header) fail(Status::Parse, "pattern file missing 'n <size>' header");
  if (row_lines.size() != n) {
    fail(Status::Parse, "expected " + std::to_string(n) + " pattern rows, got " +
                            std::to_string(row_lines.size()));
  }

  Pattern p(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (row_lines[i].size() != n) {
      fail(Status::Parse, "pattern row " + std::to_string(i + 1) + " has length " +
                              std::to_string(row_lines[i].size()) + ", expected " +
                              std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const char c = row_lines[i][j];
      if (c == '*') {
        p.grid_[i * n + j] = 1;
      } else if (c == '.') {
        if (i == j) p.grid_[i * n + j] = 0;
      } else {
        fail(Status::Parse, std::string("unexpected character '") + c + "' in pattern row");
      }
    }
  }
  return p;
}

std::string Pattern::format() const {
  std::ostringstream out;
  out << "n " << n_ << "\n";
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out << (grid_[i * n_ + j] ? '*' : '.');
    out << "\n";
  }
  return out.str();
}

bool BlockStructure::poset_has(std::size_t u, std::size_t v) const {
  return std::binary_search(poset.begin(), poset.end(), std::make_pair(u, v));
}

namespace {

BlockStructure build_blocks(const Pattern& p) {
  const std::size_t n = p.size();

  // Reflexivity, then closure under multiplication of matrix units.
  for (std::size_t i = 0; i < n; ++i) {
    if (!p.has(i, i)) {
      fail(Status::Pattern, "pattern is not reflexive: missing (" +
                                std::to_string(i + 1) + "," + std::to_string(i + 1) + ")");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!p.has(i, j)) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (p.has(j, k) && !p.has(i, k)) {
          fail(Status::Pattern, "pattern is not transitive: (" + std::to_string(i + 1) +
                                    "," + std::to_string(j + 1) + ") and (" +
                                    std::to_string(j + 1) + "," + std::to_string(k + 1) +
                                    ") present but (" + std::to_string(i + 1) + "," +
                                    std::to_string(k + 1) + ") missing");
        }
      }
    }
  }

  // Blocks: classes of the mutual-pair relation (transitive by the closure
  // just verified).
  std::vector<std::size_t> cls(n, n);
  std::vector<std::vector<std::size_t>> raw_blocks;
  for (std::size_t i = 0; i < n; ++i) {
    if (cls[i] != n) continue;
    const std::size_t id = raw_blocks.size();
    raw_blocks.emplace_back();
    for (std::size_t j = i; j < n; ++j) {
      if (p.has(i, j) && p.has(j, i)) {
        cls[j] = id;
        raw_blocks[id].push_back(j);
      }
    }
  }

  // Cross edges between blocks.
  const std::size_t b = raw_blocks.size();
  std::vector<char> edge(b * b, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (p.has(i, j) && cls[i] != cls[j]) edge[cls[i] * b + cls[j]] = 1;
    }
  }

  // Canonical order: topological, minimal blocks first, ties broken by the
  // smallest original index a block contains.
  std::vector<std::size_t> indegree(b, 0);
  for (std::size_t u = 0; u < b; ++u) {
    for (std::size_t v = 0; v < b; ++v) {
      if (edge[u * b + v]) ++indegree[v];
    }
  }
  std::vector<std::size_t> topo;
  std::vector<char> placed(b, 0);
  while (topo.size() < b) {
    std::size_t best = b;
    for (std::size_t u = 0; u < b; ++u) {
      if (placed[u] || indegree[u] != 0) continue;
      if (best == b || raw_blocks[u][0] < raw_blocks[best][0]) best = u;
    }
    if (best == b) fail(Status::Assertion, "block order is cyclic for a validated pattern");
    placed[best] = 1;
    topo.push_back(best);
    for (std::size_t v = 0; v < b; ++v) {
      if (edge[best * b + v]) --indegree[v];
    }
  }

  BlockStructure bs;
  bs.blocks.resize(b);
  bs.block_of.assign(n, 0);
  std::vector<std::size_t> new_id(b, 0);
  for (std::size_t pos = 0; pos < b; ++pos) {
    new_id[topo[pos]] = pos;
    bs.blocks[pos] = raw_blocks[topo[pos]];
    for (std::size_t i : bs.blocks[pos]) bs.block_of[i] = pos;
    for (std::size_t i : bs.blocks[pos]) bs.order.push_back(i);
  }
  for (std::size_t u = 0; u < b; ++u) {
    for (std::size_t v = 0; v < b; ++v) {
      if (edge[u * b + v]) bs.poset.emplace_back(new_id[u], new_id[v]);
    }
  }
  std::sort(bs.poset.begin(), bs.poset.end());
  return bs;
}

} // namespace

Algebra::Algebra(Pattern pattern)
    : pattern_(std::move(pattern)), blocks_(build_blocks(pattern_)),
      unit_pairs_(pattern_.entries()) {}

Mat Algebra::unit(std::size_t index) const {
  const auto& [i, j] = unit_pairs_[index];
  Mat e(n(), n());
  e.at(i, j) = 1;
  return e;
}

Mat Algebra::unit(std::size_t i, std::size_t j) const {
  Mat e(n(), n());
  e.at(i, j) = 1;
  return e;
}

Subspace Algebra::algebra_subspace() const {
  RrefBuilder builder(ambient_dim());
  for (const auto& [i, j] : unit_pairs_) {
    std::vector<Rational> v(ambient_dim(), Rational(0));
    v[i * n() + j] = 1;
    builder.insert(std::move(v));
  }
  return builder.to_subspace();
}

std::pair<Subspace, Subspace> Algebra::diag_offdiag_split() const {
  RrefBuilder diag(ambient_dim());
  RrefBuilder off(ambient_dim());
  for (const auto& [i, j] : unit_pairs_) {
    std::vector<Rational> v(ambient_dim(), Rational(0));
    v[i * n() + j] = 1;
    if (block_of(i) == block_of(j)) {
      diag.insert(std::move(v));
    } else {
      off.insert(std::move(v));
    }
  }
  return {diag.to_subspace(), off.to_subspace()};
}

Mat Algebra::pi(const Mat& x) const {
  if (x.rows() != n() || x.cols() != n()) {
    fail(Status::Dimension, "element size does not match the algebra");
  }
  Mat out(n(), n());
  for (std::size_t i = 0; i < n(); ++i) {
    for (std::size_t j = 0; j < n(); ++j) {
      if (block_of(i) == block_of(j)) out.at(i, j) = x.at(i, j);
    }
  }
  return out;
}

bool Algebra::supports(const Mat& x) const {
  if (x.rows() != n() || x.cols() != n()) return false;
  for (std::size_t i = 0; i < n(); ++i) {
    for (std::size_t j = 0; j < n(); ++j) {
      if (!pattern_.has(i, j) && !is_zero(x.at(i, j))) return false;
    }
  }
  return true;
}

void Algebra::require_supported(const Mat& x, const std::string& what) const {
  if (!supports(x)) fail(Status::Support, what + " is not supported on the pattern");
}

void Algebra::require_inside(const Subspace& s, const std::string& what) const {
  if (s.ambient_dim() != ambient_dim()) {
    fail(Status::Dimension, what + " has the wrong ambient dimension");
  }
  for (const auto& row : s.basis()) {
    if (!supports(Mat::from_vector(n(), n(), row))) {
      fail(Status::NotInAlgebra, what + " is not contained in the algebra");
    }
  }
}

Mat Algebra::block_identity(std::size_t u) const {
  Mat f(n(), n());
  for (std::size_t i : blocks_.blocks[u]) f.at(i, i) = 1;
  return f;
}

BlockStructure validate_pattern(const Pattern& p) { return build_blocks(p); }

std::vector<Mat> matrix_units(const Pattern& p) {
  std::vector<Mat> units;
  units.reserve(p.entry_count());
  for (const auto& [i, j] : p.entries()) {
    Mat e(p.size(), p.size());
    e.at(i, j) = 1;
    units.push_back(std::move(e));
  }
  return units;
}

} // namespace lil
