#include "lil/ideal.hpp"

#include "lil/error.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace lil {

bool BlockIdeal::off_diagonal() const {
  return std::none_of(pairs.begin(), pairs.end(),
                      [](const auto& p) { return p.first == p.second; });
}

BlockIdeal ideal_closure(const Algebra& a,
                         const std::vector<std::pair<std::size_t, std::size_t>>& seed) {
  const auto& bs = a.blocks();
  const std::size_t b = bs.block_count();

  std::set<std::pair<std::size_t, std::size_t>> closed;
  for (const auto& [u, v] : seed) {
    if (u >= b || v >= b || (u != v && !bs.poset_has(u, v))) {
      fail(Status::BadArgument, "seed pair (" + std::to_string(u + 1) + "," +
                                    std::to_string(v + 1) +
                                    ") is not a block pair of the algebra");
    }
    // The block poset is transitive, so one sweep per seed closes it.
    for (std::size_t t = 0; t < b; ++t) {
      if (!bs.below_or_equal(t, u)) continue;
      for (std::size_t s = 0; s < b; ++s) {
        if (!bs.below_or_equal(v, s)) continue;
        if (t == s || bs.poset_has(t, s)) closed.emplace(t, s);
      }
    }
  }

  BlockIdeal k;
  k.pairs.assign(closed.begin(), closed.end());
  return k;
}

namespace {

void enumerate_rec(const std::vector<std::vector<std::size_t>>& above,
                   const std::vector<std::vector<std::size_t>>& below,
                   std::vector<int>& state, std::size_t from,
                   std::vector<std::vector<std::size_t>>& out) {
  std::size_t next = from;
  while (next < state.size() && state[next] != 0) ++next;
  if (next == state.size()) {
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < state.size(); ++i) {
      if (state[i] == 1) chosen.push_back(i);
    }
    out.push_back(std::move(chosen));
    return;
  }

  // Take `next`: everything above it is forced in.
  {
    std::vector<std::size_t> touched;
    bool feasible = true;
    state[next] = 1;
    touched.push_back(next);
    for (std::size_t up : above[next]) {
      if (state[up] == -1) {
        feasible = false;
        break;
      }
      if (state[up] == 0) {
        state[up] = 1;
        touched.push_back(up);
      }
    }
    if (feasible) enumerate_rec(above, below, state, next + 1, out);
    for (std::size_t i : touched) state[i] = 0;
  }

  // Drop `next`: everything below it is forced out.
  {
    std::vector<std::size_t> touched;
    bool feasible = true;
    state[next] = -1;
    touched.push_back(next);
    for (std::size_t down : below[next]) {
      if (state[down] == 1) {
        feasible = false;
        break;
      }
      if (state[down] == 0) {
        state[down] = -1;
        touched.push_back(down);
      }
    }
    if (feasible) enumerate_rec(above, below, state, next + 1, out);
    for (std::size_t i : touched) state[i] = 0;
  }
}

} // namespace

std::vector<BlockIdeal> enumerate_offdiag_ideals(const Algebra& a, std::size_t max_pairs) {
  const auto& pairs = a.strict_pairs();
  const std::size_t m = pairs.size();
  if (m > max_pairs) {
    fail(Status::TooLarge, "pattern has " + std::to_string(m) +
                               " strict block pairs, enumeration cap is " +
                               std::to_string(max_pairs));
  }

  const auto& bs = a.blocks();
  // Pair (i) forces pair (j) into an up-closed set when j's row block reaches
  // i's and i's column block reaches j's.
  std::vector<std::vector<std::size_t>> above(m), below(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      if (bs.below_or_equal(pairs[j].first, pairs[i].first) &&
          bs.below_or_equal(pairs[i].second, pairs[j].second)) {
        above[i].push_back(j);
        below[j].push_back(i);
      }
    }
  }

  std::vector<std::vector<std::size_t>> raw;
  std::vector<int> state(m, 0);
  enumerate_rec(above, below, state, 0, raw);

  std::vector<BlockIdeal> out;
  out.reserve(raw.size());
  for (const auto& chosen : raw) {
    BlockIdeal k;
    for (std::size_t i : chosen) k.pairs.push_back(pairs[i]);
    std::sort(k.pairs.begin(), k.pairs.end());
    out.push_back(std::move(k));
  }
  std::sort(out.begin(), out.end(), [](const BlockIdeal& x, const BlockIdeal& y) {
    if (x.pairs.size() != y.pairs.size()) return x.pairs.size() < y.pairs.size();
    return x.pairs < y.pairs;
  });
  return out;
}

Subspace ideal_subspace(const Algebra& a, const BlockIdeal& k) {
  const std::size_t n = a.n();
  RrefBuilder builder(n * n);
  const std::set<std::pair<std::size_t, std::size_t>> wanted(k.pairs.begin(), k.pairs.end());
  for (const auto& [i, j] : a.unit_pairs()) {
    if (!wanted.count({a.block_of(i), a.block_of(j)})) continue;
    std::vector<Rational> v(n * n, Rational(0));
    v[i * n + j] = 1;
    builder.insert(std::move(v));
  }
  return builder.to_subspace();
}

BlockIdeal block_support(const Algebra& a, const Subspace& s) {
  const std::size_t n = a.n();
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& row : s.basis()) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!is_zero(row[i * n + j])) seen.emplace(a.block_of(i), a.block_of(j));
      }
    }
  }
  BlockIdeal k;
  k.pairs.assign(seen.begin(), seen.end());
  return k;
}

IdealCheck is_associative_ideal(const Algebra& a, const Subspace& s) {
  a.require_inside(s, "subspace");
  const std::size_t n = a.n();

  for (std::size_t b = 0; b < s.dim(); ++b) {
    const Mat x = Mat::from_vector(n, n, s.basis()[b]);
    for (const auto& [i, j] : a.unit_pairs()) {
      // e_ij * x places row j of x into row i; x * e_ij places column i of x
      // into column j.
      Mat left(n, n);
      for (std::size_t c = 0; c < n; ++c) left.at(i, c) = x.at(j, c);
      if (!s.contains(left.vectorize())) {
        return {false, IdealWitness{{i, j}, b, false}};
      }
      Mat right(n, n);
      for (std::size_t r = 0; r < n; ++r) right.at(r, j) = x.at(r, i);
      if (!s.contains(right.vectorize())) {
        return {false, IdealWitness{{i, j}, b, true}};
      }
    }
  }
  return {true, std::nullopt};
}

std::vector<std::pair<std::size_t, std::size_t>> parse_pair_list(const std::string& text) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::string chunk;
  std::istringstream in(text);
  while (std::getline(in, chunk, ';')) {
    std::string digits;
    std::vector<long> numbers;
    for (char c : chunk + ",") {
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits.push_back(c);
      } else if (c == ',' || c == ')') {
        if (!digits.empty()) {
          numbers.push_back(std::stol(digits));
          digits.clear();
        }
      } else if (c != '(' && !std::isspace(static_cast<unsigned char>(c))) {
        fail(Status::Parse, "malformed pair list '" + text + "'");
      }
    }
    if (numbers.empty()) continue;
    if (numbers.size() != 2 || numbers[0] < 1 || numbers[1] < 1) {
      fail(Status::Parse, "malformed pair list '" + text + "'");
    }
    out.emplace_back(static_cast<std::size_t>(numbers[0] - 1),
                     static_cast<std::size_t>(numbers[1] - 1));
  }
  return out;
}

std::string format_pair_list(const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i) out << ";";
    out << "(" << pairs[i].first + 1 << "," << pairs[i].second + 1 << ")";
  }
  return out.str();
}

} // namespace lil
