#include "lil/lie.hpp"

#include "lil/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace lil {

std::vector<Rational> bracket_unit_vec(std::size_t n, std::size_t i, std::size_t j,
                                       const std::vector<Rational>& x) {
  std::vector<Rational> out(n * n, Rational(0));
  // e_ij * x: row j of x moves to row i. x * e_ij: column i moves to column j.
  for (std::size_t c = 0; c < n; ++c) out[i * n + c] += x[j * n + c];
  for (std::size_t r = 0; r < n; ++r) out[r * n + j] -= x[r * n + i];
  return out;
}

LieCheck is_lie_ideal(const Algebra& a, const Subspace& s, bool ambient) {
  if (ambient) {
    if (s.ambient_dim() != a.ambient_dim()) {
      fail(Status::Dimension, "subspace has the wrong ambient dimension");
    }
  } else {
    a.require_inside(s, "subspace");
  }

  const std::size_t n = a.n();
  for (std::size_t b = 0; b < s.dim(); ++b) {
    for (const auto& [i, j] : a.unit_pairs()) {
      if (!s.contains(bracket_unit_vec(n, i, j, s.basis()[b]))) {
        return {false, LieWitness{{i, j}, b}};
      }
    }
  }
  return {true, std::nullopt};
}

Subspace lie_generate(const Algebra& a, const std::vector<Mat>& gens, bool ambient) {
  const std::size_t n = a.n();
  RrefBuilder builder(n * n);
  std::deque<std::vector<Rational>> queue;

  for (const auto& g : gens) {
    if (!ambient) a.require_supported(g, "generator");
    if (g.rows() != n || g.cols() != n) {
      fail(Status::Dimension, "generator has the wrong size");
    }
    std::vector<Rational> v = g.vectorize();
    if (builder.insert(v)) queue.push_back(std::move(v));
  }

  while (!queue.empty()) {
    const std::vector<Rational> x = std::move(queue.front());
    queue.pop_front();
    for (const auto& [i, j] : a.unit_pairs()) {
      std::vector<Rational> v = bracket_unit_vec(n, i, j, x);
      if (builder.insert(v)) queue.push_back(std::move(v));
    }
  }
  return builder.to_subspace();
}

namespace {

std::string witness_text(const LieWitness& w) {
  return "bracket with unit (" + std::to_string(w.unit.first + 1) + "," +
         std::to_string(w.unit.second + 1) + ") escapes at basis element " +
         std::to_string(w.basis_index + 1);
}

std::vector<Rational> pi_vec(const Algebra& a, const std::vector<Rational>& x) {
  const std::size_t n = a.n();
  std::vector<Rational> out(n * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a.block_of(i) == a.block_of(j)) out[i * n + j] = x[i * n + j];
    }
  }
  return out;
}

} // namespace

Decomposition decompose(const Algebra& a, const Subspace& lie_ideal) {
  const LieCheck check = is_lie_ideal(a, lie_ideal);
  if (!check.ok) {
    fail(Status::NotLieIdeal, "subspace is not a Lie ideal: " + witness_text(*check.witness));
  }

  const std::size_t n = a.n();
  RrefBuilder diag(n * n);
  RrefBuilder off(n * n);
  for (const auto& row : lie_ideal.basis()) {
    std::vector<Rational> p = pi_vec(a, row);
    std::vector<Rational> rest(n * n);
    for (std::size_t c = 0; c < n * n; ++c) rest[c] = row[c] - p[c];
    diag.insert(std::move(p));
    off.insert(std::move(rest));
  }

  Decomposition result{diag.to_subspace(), off.to_subspace(), {}};

  // The structure theory promises all of the following; a failure here would
  // falsify it, so it surfaces as an assertion rather than an input error.
  if (!(sum(result.diag, result.offdiag) == lie_ideal) ||
      intersect(result.diag, result.offdiag).dim() != 0) {
    fail(Status::Assertion, "diagonal/off-diagonal split does not recompose the ideal");
  }
  result.k_blocks = block_support(a, result.offdiag);
  if (!result.k_blocks.off_diagonal()) {
    fail(Status::Assertion, "off-diagonal part touches a diagonal block");
  }
  if (!(ideal_subspace(a, result.k_blocks) == result.offdiag)) {
    fail(Status::Assertion, "off-diagonal part of a Lie ideal is not a union of full blocks");
  }
  if (!(ideal_closure(a, result.k_blocks.pairs) == result.k_blocks)) {
    fail(Status::Assertion, "off-diagonal block set is not up-closed");
  }
  if (!is_associative_ideal(a, result.offdiag).ok) {
    fail(Status::Assertion, "off-diagonal part is not an associative ideal");
  }
  return result;
}

ConstraintGraph constraint_graph(const Algebra& a, const BlockIdeal& k) {
  if (!k.off_diagonal()) {
    fail(Status::BadArgument, "constraint graph needs an off-diagonal ideal");
  }
  const std::size_t p = a.blocks().block_count();

  ConstraintGraph cg;
  for (const auto& pr : a.strict_pairs()) {
    if (!std::binary_search(k.pairs.begin(), k.pairs.end(), pr)) cg.edges.push_back(pr);
  }

  std::vector<std::size_t> parent(p);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [u, v] : cg.edges) parent[find(u)] = find(v);

  std::vector<char> constrained(p, 0);
  for (const auto& [u, v] : cg.edges) constrained[u] = constrained[v] = 1;

  std::map<std::size_t, std::vector<std::size_t>> comps;
  for (std::size_t u = 0; u < p; ++u) {
    if (constrained[u]) {
      comps[find(u)].push_back(u);
    } else {
      cg.free_nodes.push_back(u);
    }
  }
  for (auto& [root, members] : comps) cg.components.push_back(members);
  std::sort(cg.components.begin(), cg.components.end());
  return cg;
}

MaximalAddend maximal_addend(const Algebra& a, const BlockIdeal& k) {
  ConstraintGraph cg = constraint_graph(a, k);
  const std::size_t n = a.n();

  RrefBuilder builder(n * n);
  for (std::size_t u : cg.free_nodes) {
    for (std::size_t i : a.blocks().blocks[u]) {
      for (std::size_t j : a.blocks().blocks[u]) {
        std::vector<Rational> v(n * n, Rational(0));
        v[i * n + j] = 1;
        builder.insert(std::move(v));
      }
    }
  }
  for (const auto& comp : cg.components) {
    std::vector<Rational> v(n * n, Rational(0));
    for (std::size_t u : comp) {
      for (std::size_t i : a.blocks().blocks[u]) v[i * n + i] = 1;
    }
    builder.insert(std::move(v));
  }
  return {builder.to_subspace(), std::move(cg)};
}

const char* addend_kind_name(AddendKind kind) {
  switch (kind) {
    case AddendKind::Zero: return "zero";
    case AddendKind::Scalar: return "scalar";
    case AddendKind::TraceZero: return "trace_zero";
    case AddendKind::Full: return "full";
  }
  return "?";
}

namespace {

// Vectorized m x m identity.
std::vector<Rational> identity_vec(std::size_t m) {
  std::vector<Rational> v(m * m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) v[i * m + i] = 1;
  return v;
}

// Trace-zero subspace of the m x m matrix space.
Subspace trace_zero_subspace(std::size_t m) {
  std::vector<std::vector<Rational>> gens;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      std::vector<Rational> v(m * m, Rational(0));
      v[i * m + j] = 1;
      gens.push_back(std::move(v));
    }
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    std::vector<Rational> v(m * m, Rational(0));
    v[i * m + i] = 1;
    v[(i + 1) * m + (i + 1)] = -1;
    gens.push_back(std::move(v));
  }
  return Subspace::span(gens, m * m);
}

std::vector<Rational> extract_block(const Algebra& a, const std::vector<Rational>& row,
                                    std::size_t u) {
  const auto& idx = a.blocks().blocks[u];
  const std::size_t m = idx.size();
  const std::size_t n = a.n();
  std::vector<Rational> out(m * m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) out[r * m + c] = row[idx[r] * n + idx[c]];
  }
  return out;
}

std::vector<Rational> embed_block(const Algebra& a, const std::vector<Rational>& blockmat,
                                  std::size_t u) {
  const auto& idx = a.blocks().blocks[u];
  const std::size_t m = idx.size();
  const std::size_t n = a.n();
  std::vector<Rational> out(n * n, Rational(0));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) out[idx[r] * n + idx[c]] = blockmat[r * m + c];
  }
  return out;
}

} // namespace

ClassifyResult classify_addend(const Algebra& a, const BlockIdeal& k, const Subspace& g) {
  if (!k.off_diagonal() || !(ideal_closure(a, k.pairs) == k)) {
    fail(Status::BadArgument, "not an off-diagonal associative block ideal");
  }
  // G must live in the diagonal part E.
  const std::size_t n = a.n();
  for (const auto& row : g.basis()) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (a.block_of(i) != a.block_of(j) && !is_zero(row[i * n + j])) {
          fail(Status::BadArgument, "addend candidate is not inside the diagonal part");
        }
      }
    }
  }

  const std::size_t p = a.blocks().block_count();
  ClassifyResult result;

  // Per-block compressions and their kinds.
  std::vector<AddendKind> kinds(p, AddendKind::Zero);
  std::vector<Subspace> compressions;
  compressions.reserve(p);
  for (std::size_t u = 0; u < p; ++u) {
    const std::size_t m = a.block_size(u);
    std::vector<std::vector<Rational>> rows;
    rows.reserve(g.dim());
    for (const auto& row : g.basis()) rows.push_back(extract_block(a, row, u));
    Subspace cu = Subspace::span(rows, m * m);

    if (cu.dim() == 0) {
      kinds[u] = AddendKind::Zero;
    } else if (cu.dim() == 1 && cu.basis()[0] == identity_vec(m)) {
      kinds[u] = AddendKind::Scalar;
    } else if (cu.dim() == m * m) {
      kinds[u] = AddendKind::Full;
    } else if (cu.dim() == m * m - 1 &&
               std::all_of(cu.basis().begin(), cu.basis().end(),
                           [m](const std::vector<Rational>& row) {
                             Rational t(0);
                             for (std::size_t i = 0; i < m; ++i) t += row[i * m + i];
                             return is_zero(t);
                           })) {
      kinds[u] = AddendKind::TraceZero;
    } else {
      result.rejection = ClassifyRejection{
          "block compression is not one of zero/scalars/trace-zero/full", u, std::nullopt};
      return result;
    }
    compressions.push_back(std::move(cu));
  }

  // Trace-zero elements of each compression must already belong to G.
  for (std::size_t u = 0; u < p; ++u) {
    if (kinds[u] != AddendKind::TraceZero && kinds[u] != AddendKind::Full) continue;
    const std::size_t m = a.block_size(u);
    const Subspace tz = intersect(compressions[u], trace_zero_subspace(m));
    for (const auto& t : tz.basis()) {
      if (!g.contains(embed_block(a, t, u))) {
        result.rejection = ClassifyRejection{
            "trace-zero part of the block compression is not inside the addend", u,
            std::nullopt};
        return result;
      }
    }
  }

  // Constraint edges force equal scalars on their endpoints.
  const ConstraintGraph cg = constraint_graph(a, k);
  for (const auto& [u, v] : cg.edges) {
    for (std::size_t side : {u, v}) {
      if (kinds[side] == AddendKind::Full || kinds[side] == AddendKind::TraceZero) {
        result.rejection =
            ClassifyRejection{"constrained block is not scalar", side, std::make_pair(u, v)};
        return result;
      }
    }
    const std::size_t iu = a.blocks().blocks[u][0];
    const std::size_t iv = a.blocks().blocks[v][0];
    for (const auto& row : g.basis()) {
      if (row[iu * n + iu] != row[iv * n + iv]) {
        result.rejection =
            ClassifyRejection{"unequal scalars across a constraint edge", std::nullopt,
                              std::make_pair(u, v)};
        return result;
      }
    }
  }

  // Linkage: scalar blocks sharing the same scalar coordinate on every basis
  // element are linked. Equal coordinate vectors characterize this exactly.
  std::map<std::vector<Rational>, std::vector<std::size_t>> groups;
  for (std::size_t u = 0; u < p; ++u) {
    if (kinds[u] != AddendKind::Scalar) continue;
    const std::size_t iu = a.blocks().blocks[u][0];
    std::vector<Rational> key;
    key.reserve(g.dim());
    for (const auto& row : g.basis()) key.push_back(row[iu * n + iu]);
    groups[key].push_back(u);
  }
  std::vector<std::vector<std::size_t>> linkage;
  for (auto& [key, members] : groups) linkage.push_back(members);
  std::sort(linkage.begin(), linkage.end());

  // Realized scalar tuples: trace/size per block.
  std::vector<std::vector<Rational>> tuples;
  for (const auto& row : g.basis()) {
    std::vector<Rational> tuple(p, Rational(0));
    for (std::size_t u = 0; u < p; ++u) {
      Rational tr(0);
      for (std::size_t i : a.blocks().blocks[u]) tr += row[i * n + i];
      tuple[u] = tr / Rational(static_cast<long>(a.block_size(u)));
    }
    tuples.push_back(std::move(tuple));
  }

  result.descriptor = LieIdealDescriptor{k, std::move(kinds), std::move(linkage),
                                         Subspace::span(tuples, p)};
  return result;
}

Subspace addend_subspace(const Algebra& a, const LieIdealDescriptor& desc) {
  const std::size_t n = a.n();
  const std::size_t p = a.blocks().block_count();
  RrefBuilder builder(n * n);

  for (std::size_t u = 0; u < p; ++u) {
    if (desc.kinds[u] != AddendKind::TraceZero && desc.kinds[u] != AddendKind::Full) continue;
    const Subspace tz = trace_zero_subspace(a.block_size(u));
    for (const auto& t : tz.basis()) {
      builder.insert(embed_block(a, t, u));
    }
  }
  for (const auto& tuple : desc.scalar_tuples.basis()) {
    std::vector<Rational> v(n * n, Rational(0));
    for (std::size_t u = 0; u < p; ++u) {
      if (is_zero(tuple[u])) continue;
      for (std::size_t i : a.blocks().blocks[u]) v[i * n + i] = tuple[u];
    }
    builder.insert(std::move(v));
  }
  return builder.to_subspace();
}

Subspace lie_ideal_subspace(const Algebra& a, const LieIdealDescriptor& desc) {
  return sum(addend_subspace(a, desc), ideal_subspace(a, desc.k));
}

} // namespace lil
