#include "lil/tower.hpp"

#include "lil/error.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace lil {

Mat Embedding::apply(const Mat& x) const {
  if (x.rows() != source.size() || x.cols() != source.size()) {
    fail(Status::Dimension, "element size does not match the embedding source");
  }
  Mat out(target.size(), target.size());
  const auto pairs = source.entries();
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    const auto& [i, j] = pairs[idx];
    const Rational& coeff = x.at(i, j);
    if (is_zero(coeff)) continue;
    for (const auto& [u, v] : unit_map[idx]) out.at(u, v) += coeff;
  }
  // Entries off the source pattern must be zero for the map to be faithful.
  for (std::size_t i = 0; i < source.size(); ++i) {
    for (std::size_t j = 0; j < source.size(); ++j) {
      if (!source.has(i, j) && !is_zero(x.at(i, j))) {
        fail(Status::Support, "element is not supported on the embedding source");
      }
    }
  }
  return out;
}

void validate_embedding(const Embedding& e) {
  const auto pairs = e.source.entries();
  if (e.unit_map.size() != pairs.size()) {
    fail(Status::BadArgument, "unit map length does not match the source pattern");
  }
  const std::size_t nt = e.target.size();

  // Images: supported on the target, diagonal to diagonal, no repeats.
  std::vector<Mat> images;
  images.reserve(pairs.size());
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    Mat img(nt, nt);
    for (const auto& [u, v] : e.unit_map[idx]) {
      if (u >= nt || v >= nt) fail(Status::BadArgument, "unit map target out of range");
      if (!e.target.has(u, v)) {
        fail(Status::BadArgument, "unit map image leaves the target pattern");
      }
      if (!is_zero(img.at(u, v))) {
        fail(Status::BadArgument, "unit map image repeats a target unit");
      }
      if ((pairs[idx].first == pairs[idx].second) != (u == v)) {
        fail(Status::BadArgument, "diagonal units must map to diagonal unit sums");
      }
      img.at(u, v) = 1;
    }
    images.push_back(std::move(img));
  }

  // Unital.
  Mat unit_sum(nt, nt);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    index[pairs[idx]] = idx;
    if (pairs[idx].first == pairs[idx].second) unit_sum = unit_sum + images[idx];
  }
  if (!(unit_sum == Mat::identity(nt))) {
    fail(Status::BadArgument, "embedding is not unital");
  }

  // Multiplicative on units: image(e_ij) image(e_kl) = [j==k] image(e_il).
  for (std::size_t x = 0; x < pairs.size(); ++x) {
    for (std::size_t y = 0; y < pairs.size(); ++y) {
      const Mat product = images[x] * images[y];
      if (pairs[x].second == pairs[y].first) {
        const auto it = index.find({pairs[x].first, pairs[y].second});
        if (it == index.end() || !(product == images[it->second])) {
          fail(Status::BadArgument, "unit map is not multiplicative");
        }
      } else if (!product.is_zero()) {
        fail(Status::BadArgument, "unit map is not multiplicative");
      }
    }
  }

  // Injectivity: the images span a subspace of the full source dimension.
  if (Subspace::span_mats(images, nt * nt).dim() != pairs.size()) {
    fail(Status::BadArgument, "embedding is not injective");
  }
}

Embedding standard_embedding(const Algebra& source, std::size_t multiplicity,
                             std::size_t max_n) {
  if (multiplicity == 0) fail(Status::BadArgument, "multiplicity must be at least 1");
  const std::size_t ns = source.n();
  const std::size_t nt = ns * multiplicity;
  if (nt > max_n) {
    fail(Status::TooLarge, "refined size " + std::to_string(nt) +
                               " exceeds the cap " + std::to_string(max_n));
  }

  const auto phi = [&](std::size_t i, std::size_t r) { return i * multiplicity + r; };

  // Copies of a block are chained (r <= s) when the block meets some strict
  // pair, and stay unrelated when the block is isolated. Chains keep T_k
  // refining to T_{km}; isolation keeps the masa D_k refining to D_{km}.
  std::vector<char> chained(source.blocks().block_count(), 0);
  for (const auto& [u, v] : source.strict_pairs()) chained[u] = chained[v] = 1;

  Pattern target(nt);
  for (const auto& [i, j] : source.pattern().entries()) {
    const bool same_block = source.block_of(i) == source.block_of(j);
    for (std::size_t r = 0; r < multiplicity; ++r) {
      for (std::size_t s = 0; s < multiplicity; ++s) {
        if (same_block) {
          if (chained[source.block_of(i)] ? r > s : r != s) continue;
        }
        target.add(phi(i, r), phi(j, s));
      }
    }
  }

  Embedding e;
  e.source = source.pattern();
  e.target = std::move(target);
  for (const auto& [i, j] : source.pattern().entries()) {
    std::vector<std::pair<std::size_t, std::size_t>> targets;
    targets.reserve(multiplicity);
    for (std::size_t r = 0; r < multiplicity; ++r) targets.emplace_back(phi(i, r), phi(j, r));
    e.unit_map.push_back(std::move(targets));
  }
  return e;
}

Embedding compose(const Embedding& first, const Embedding& second) {
  if (!(first.target == second.source)) {
    fail(Status::BadArgument, "embeddings do not chain: target and source differ");
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> mid_index;
  const auto mid_pairs = second.source.entries();
  for (std::size_t idx = 0; idx < mid_pairs.size(); ++idx) mid_index[mid_pairs[idx]] = idx;

  Embedding out;
  out.source = first.source;
  out.target = second.target;
  out.unit_map.reserve(first.unit_map.size());
  for (const auto& mids : first.unit_map) {
    std::vector<std::pair<std::size_t, std::size_t>> targets;
    for (const auto& mid : mids) {
      const auto it = mid_index.find(mid);
      if (it == mid_index.end()) {
        fail(Status::BadArgument, "composite embedding leaves the middle pattern");
      }
      const auto& far = second.unit_map[it->second];
      targets.insert(targets.end(), far.begin(), far.end());
    }
    std::sort(targets.begin(), targets.end());
    out.unit_map.push_back(std::move(targets));
  }
  return out;
}

Tower::Tower(Algebra base) { levels_.push_back(std::move(base)); }

void Tower::add_step(Embedding step) {
  if (!(step.source == levels_.back().pattern())) {
    fail(Status::BadArgument, "embedding source does not match the current top level");
  }
  validate_embedding(step);
  levels_.emplace_back(step.target);
  steps_.push_back(std::move(step));
  rebuild_composites();
}

void Tower::rebuild_composites() {
  to_top_.clear();
  if (steps_.empty()) return;
  to_top_.reserve(steps_.size());
  Embedding acc = steps_.back();
  to_top_.push_back(acc);
  for (std::size_t q = steps_.size() - 1; q-- > 0;) {
    acc = compose(steps_[q], acc);
    to_top_.push_back(acc);
  }
  std::reverse(to_top_.begin(), to_top_.end());
}

Mat Tower::embed_to_top(std::size_t q, const Mat& x) const {
  if (q >= levels_.size()) fail(Status::BadArgument, "level out of range");
  if (q + 1 == levels_.size()) return x;
  return to_top_[q].apply(x);
}

std::vector<Mat> Tower::diag_projections(std::size_t q) const {
  if (q >= levels_.size()) fail(Status::BadArgument, "level out of range");
  std::vector<Mat> out;
  const Algebra& lvl = levels_[q];
  out.reserve(lvl.n());
  for (std::size_t i = 0; i < lvl.n(); ++i) {
    out.push_back(embed_to_top(q, lvl.unit(i, i)));
  }
  return out;
}

Mat Tower::pi_level(std::size_t q, const Mat& x_top) const {
  const std::size_t n = top().n();
  if (x_top.rows() != n || x_top.cols() != n) {
    fail(Status::Dimension, "element size does not match the top level");
  }
  Mat out(n, n);
  for (const Mat& d : diag_projections(q)) out = out + d * x_top * d;
  return out;
}

LemmaRowReport lemma_row_check(const Algebra& a, const Subspace& lie_ideal,
                               const std::vector<Mat>& diag_projections, int trials,
                               std::uint64_t seed) {
  const LieCheck check = is_lie_ideal(a, lie_ideal);
  if (!check.ok) fail(Status::NotLieIdeal, "row lemma requires a Lie ideal");

  Mat proj_sum(a.n(), a.n());
  for (const Mat& d : diag_projections) proj_sum = proj_sum + d;
  if (!(proj_sum == Mat::identity(a.n()))) {
    fail(Status::BadArgument, "diagonal projections do not sum to the identity");
  }

  LemmaRowReport report;
  report.trials = trials;
  report.seed = seed;

  const auto run_one = [&](const Mat& f, std::size_t i, std::size_t tag, bool random_trial) {
    const Mat& d = diag_projections[i];
    const Mat lhs = d * f - d * f * d;
    if (!lie_ideal.contains(lhs.vectorize())) {
      report.failures.push_back({tag, i, random_trial});
    }
    // Averaged form: 0.5 ([d_i, f] + sum_{j != i} [d_i, [f, d_j]]).
    Mat rhs = bracket(d, f);
    for (std::size_t j = 0; j < diag_projections.size(); ++j) {
      if (j != i) rhs = rhs + bracket(d, bracket(f, diag_projections[j]));
    }
    if (!(rhs * Rational(1, 2) == lhs)) report.identity_exact = false;
  };

  std::vector<Mat> basis;
  for (const auto& row : lie_ideal.basis()) basis.push_back(Mat::from_vector(a.n(), a.n(), row));

  for (std::size_t b = 0; b < basis.size(); ++b) {
    for (std::size_t i = 0; i < diag_projections.size(); ++i) {
      run_one(basis[b], i, b, false);
      ++report.deterministic_checks;
    }
  }

  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    Mat f(a.n(), a.n());
    for (const auto& x : basis) f = f + x * Rational(rng.pick(-2, 2));
    run_one(f, rng.index(diag_projections.size()), static_cast<std::size_t>(t), true);
  }
  return report;
}

bool InductivityReport::ok() const {
  if (!reaches_top) return false;
  return std::all_of(levels.begin(), levels.end(), [](const InductivityLevel& l) {
    return l.unit_spanned && l.contained_in_next;
  });
}

InductivityReport inductivity_check(const Tower& tower, const BlockIdeal& k_top) {
  const Algebra& top = tower.top();
  const Subspace ks = ideal_subspace(top, k_top);
  const std::size_t ambient = top.ambient_dim();

  InductivityReport report;
  std::vector<Subspace> k_levels;
  for (std::size_t q = 0; q < tower.level_count(); ++q) {
    const Algebra& lvl = tower.level(q);

    RrefBuilder image(ambient);
    RrefBuilder in_k(ambient);
    for (std::size_t u = 0; u < lvl.dim(); ++u) {
      const Mat img = tower.embed_to_top(q, lvl.unit(u));
      const auto v = img.vectorize();
      image.insert(v);
      if (ks.contains(v)) in_k.insert(v);
    }
    const Subspace meet = intersect(ks, image.to_subspace());
    const Subspace spanned = in_k.to_subspace();

    InductivityLevel entry;
    entry.level = q;
    entry.image_dim = image.dim();
    entry.ideal_dim = meet.dim();
    entry.unit_spanned = (meet == spanned);
    entry.contained_in_next = true; // fixed up below
    report.levels.push_back(entry);
    k_levels.push_back(meet);
  }
  for (std::size_t q = 0; q + 1 < k_levels.size(); ++q) {
    report.levels[q].contained_in_next = k_levels[q + 1].contains(k_levels[q]);
  }
  report.reaches_top = (k_levels.back() == ks);
  return report;
}

LieFormReport theorem_lieform_check(const Tower& tower, const std::vector<Mat>& generators) {
  const Algebra& top = tower.top();

  const Subspace L = lie_generate(top, generators);
  const Decomposition dec = decompose(top, L);

  LieFormReport report;
  report.ideal_dim = L.dim();
  report.diag_dim = dec.diag.dim();
  report.offdiag_dim = dec.offdiag.dim();

  // decompose() already certifies K is an up-closed union of full blocks.
  report.k_full_blocks = (ideal_subspace(top, dec.k_blocks) == dec.offdiag);
  report.inductivity = inductivity_check(tower, dec.k_blocks);
  report.k_inductive = report.inductivity.ok();

  const MaximalAddend ma = maximal_addend(top, dec.k_blocks);
  report.addend_inside_maximal = ma.addend.contains(dec.diag);
  report.addend_classified = classify_addend(top, dec.k_blocks, dec.diag).accepted();
  report.maximal_plus_k_is_lie_ideal =
      is_lie_ideal(top, sum(ma.addend, dec.offdiag)).ok;
  return report;
}

} // namespace lil
