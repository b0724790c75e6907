#include "steinlab/symgrp.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

namespace steinlab::sym {

using la::Field;
using la::Matrix;

Permutation compose(const Permutation& s, const Permutation& t) {
  Permutation r(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) r[i] = s[static_cast<std::size_t>(t[i])];
  return r;
}

Permutation inverse(const Permutation& s) {
  Permutation r(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) r[static_cast<std::size_t>(s[i])] = static_cast<int>(i);
  return r;
}

int sign(const Permutation& s) {
  int sgn = 1;
  std::vector<bool> seen(s.size(), false);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(s[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sgn = -sgn;
  }
  return sgn;
}

std::vector<Permutation> all_permutations(int d) {
  Permutation p(static_cast<std::size_t>(d));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Permutation transposition_generator(int d) {
  Permutation p(static_cast<std::size_t>(d));
  std::iota(p.begin(), p.end(), 0);
  if (d >= 2) std::swap(p[0], p[1]);
  return p;
}

Permutation cycle_generator(int d) {
  Permutation p(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] = (i + 1) % d;
  return p;
}

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) fail(Error::Kind::Precondition, "partition parts must be nonnegative");
    if (i > 0 && parts_[i] > parts_[i - 1]) fail(Error::Kind::Precondition, "partition parts must be weakly decreasing");
  }
}

int Partition::length() const {
  return static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [](int x) { return x > 0; }));
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Partition Partition::trimmed() const {
  std::vector<int> p = parts_;
  while (!p.empty() && p.back() == 0) p.pop_back();
  return Partition(std::move(p));
}

Partition Partition::padded(std::size_t n) const {
  Partition t = trimmed();
  if (t.parts_.size() > n) fail(Error::Kind::Precondition, "partition " + to_string() + " has more than " + std::to_string(n) + " parts");
  std::vector<int> p = t.parts_;
  p.resize(n, 0);
  return Partition(std::move(p));
}

std::string Partition::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
  return s + ")";
}

Partition conjugate(const Partition& p) {
  const Partition t = p.trimmed();
  std::vector<int> cols;
  const int first = t[0];
  for (int j = 0; j < first; ++j) {
    int c = 0;
    for (int part : t.parts())
      if (part > j) ++c;
    cols.push_back(c);
  }
  return Partition(std::move(cols));
}

bool is_p_restricted(const Partition& lambda, int p) {
  const auto& parts = lambda.parts();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    int next = i + 1 < parts.size() ? parts[i + 1] : 0;
    if (parts[i] - next >= p) return false;
  }
  return true;
}

bool is_p_regular(const Partition& lambda, int p) {
  std::map<int, int> mult;
  for (int x : lambda.parts())
    if (x > 0 && ++mult[x] >= p) return false;
  return true;
}

std::vector<Partition> digit_decomposition(const Partition& lambda, int p, int r) {
  if (p < 2 || r < 1) fail(Error::Kind::Precondition, "digit_decomposition needs p >= 2 and r >= 1");
  long long q = 1;
  for (int i = 0; i < r; ++i) q *= p;
  if (!is_p_restricted(lambda, static_cast<int>(q)))
    fail(Error::Kind::Precondition, lambda.to_string() + " is not " + std::to_string(q) + "-restricted");
  const auto& parts = lambda.parts();
  const std::size_t n = parts.size();
  std::vector<std::vector<int>> digits(static_cast<std::size_t>(r), std::vector<int>(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    int gap = parts[j] - (j + 1 < n ? parts[j + 1] : 0);
    for (int i = 0; i < r; ++i) {
      digits[static_cast<std::size_t>(i)][j] = gap % p;
      gap /= p;
    }
  }
  std::vector<Partition> out;
  for (auto& g : digits) {
    std::vector<int> parts_i(n, 0);
    int acc = 0;
    for (std::size_t j = n; j-- > 0;) {
      acc += g[j];
      parts_i[j] = acc;
    }
    out.emplace_back(std::move(parts_i));
  }
  return out;
}

std::vector<Partition> partitions_of(int d, int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) == n) return;
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      cur.push_back(part);
      rec(remaining - part, part);
      cur.pop_back();
    }
  };
  rec(d, d);
  return out;
}

std::vector<Partition> partitions_of(int d) { return partitions_of(d, std::max(d, 1)); }

// ---------------------------------------------------------------------------
// Modules

meataxe::AlgebraModule SymModule::as_module() const {
  meataxe::AlgebraModule m(field, dim);
  m.add_generator("s", transposition);
  m.add_generator("c", cycle);
  return m;
}

std::vector<Matrix> all_actions(const SymModule& m) {
  const auto perms = all_permutations(m.degree);
  std::map<Permutation, Matrix> found;
  Permutation id(static_cast<std::size_t>(m.degree));
  std::iota(id.begin(), id.end(), 0);
  const std::vector<std::pair<Permutation, Matrix>> gens = {
      {transposition_generator(m.degree), m.transposition}, {cycle_generator(m.degree), m.cycle}};
  found.emplace(id, Matrix::identity(m.field, m.dim));
  std::deque<Permutation> todo = {id};
  while (!todo.empty()) {
    Permutation x = todo.front();
    todo.pop_front();
    const Matrix mx = found.at(x);
    for (const auto& [g, mg] : gens) {
      Permutation y = compose(x, g);
      if (found.count(y)) continue;
      found.emplace(y, mx * mg);
      todo.push_back(y);
    }
  }
  std::vector<Matrix> out;
  for (const auto& p : perms) out.push_back(found.at(p));
  return out;
}

std::vector<Tableau> standard_tableaux(const Partition& lambda) {
  const Partition shape = lambda.trimmed();
  const int d = shape.size();
  std::vector<Tableau> out;
  Tableau cur;
  cur.rows.resize(shape.parts().size());
  std::function<void(int)> rec = [&](int next) {
    if (next == d) {
      out.push_back(cur);
      return;
    }
    for (std::size_t r = 0; r < cur.rows.size(); ++r) {
      const auto len = cur.rows[r].size();
      if (static_cast<int>(len) >= shape[r]) continue;
      if (r > 0 && cur.rows[r - 1].size() <= len) continue;
      cur.rows[r].push_back(next);
      rec(next + 1);
      cur.rows[r].pop_back();
    }
  };
  rec(0);
  auto word = [](const Tableau& t) {
    std::vector<int> w;
    for (const auto& row : t.rows) w.insert(w.end(), row.begin(), row.end());
    return w;
  };
  std::sort(out.begin(), out.end(), [&](const Tableau& a, const Tableau& b) { return word(a) < word(b); });
  return out;
}

namespace {

struct TabloidSpace {
  std::map<std::vector<int>, std::size_t> index;  // row of each entry -> index
};

TabloidSpace tabloids(const Partition& shape, int d) {
  TabloidSpace ts;
  std::vector<int> row_of(static_cast<std::size_t>(d), 0);
  std::vector<int> room(shape.parts().begin(), shape.parts().end());
  std::function<void(int)> rec = [&](int e) {
    if (e == d) {
      ts.index.emplace(row_of, ts.index.size());
      return;
    }
    for (std::size_t r = 0; r < room.size(); ++r) {
      if (room[r] == 0) continue;
      --room[r];
      row_of[static_cast<std::size_t>(e)] = static_cast<int>(r);
      rec(e + 1);
      ++room[r];
    }
  };
  rec(0);
  return ts;
}

Matrix polytabloid(const Tableau& t, const TabloidSpace& ts, const Field& k, int d) {
  // Column stabiliser: independent permutations of each column's entries.
  std::vector<std::vector<int>> columns;
  for (std::size_t c = 0; c < t.rows[0].size(); ++c) {
    std::vector<int> col;
    for (const auto& row : t.rows)
      if (c < row.size()) col.push_back(row[c]);
    columns.push_back(col);
  }
  Matrix v(k, 1, ts.index.size());
  std::vector<int> row_of(static_cast<std::size_t>(d), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t c, int sgn) {
    if (c == columns.size()) {
      std::size_t idx = ts.index.at(row_of);
      v.set(0, idx, v.at(0, idx) + la::Scalar::from_int(k, sgn));
      return;
    }
    std::vector<int> perm(columns[c].size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      // The entry in row r of this column is replaced by entry perm[r].
      for (std::size_t r = 0; r < perm.size(); ++r)
        row_of[static_cast<std::size_t>(columns[c][static_cast<std::size_t>(perm[r])])] = static_cast<int>(r);
      rec(c + 1, sgn * sign(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
  };
  rec(0, 1);
  return v;
}

Tableau act(const Permutation& s, const Tableau& t) {
  Tableau r = t;
  for (auto& row : r.rows)
    for (auto& x : row) x = s[static_cast<std::size_t>(x)];
  return r;
}

struct SpechtData {
  SymModule module;
  Matrix basis;  // standard polytabloids as rows in the tabloid space
};

SpechtData build_specht(const Partition& lambda, const Field& k, int cap) {
  const Partition shape = lambda.trimmed();
  const int d = shape.size();
  if (d > cap) fail(Error::Kind::CapExceeded, "Specht module of degree " + std::to_string(d) + " exceeds cap " + std::to_string(cap));
  SpechtData out;
  out.module.degree = d;
  out.module.field = k;
  if (d == 0) {
    out.module.dim = 1;
    out.module.transposition = out.module.cycle = Matrix::identity(k, 1);
    out.basis = Matrix::identity(k, 1);
    return out;
  }
  const auto ts = tabloids(shape, d);
  const auto tabs = standard_tableaux(shape);
  Matrix basis(k, 0, ts.index.size());
  for (const auto& t : tabs) basis.append_row(polytabloid(t, ts, k, d));
  const auto pivots = la::rref(basis).pivots;
  const Matrix solve = *la::inverse(basis.select_cols(pivots));
  auto action = [&](const Permutation& s) {
    Matrix m(k, tabs.size(), tabs.size());
    for (std::size_t j = 0; j < tabs.size(); ++j) {
      Matrix coords = polytabloid(act(s, tabs[j]), ts, k, d).select_cols(pivots) * solve;
      for (std::size_t i = 0; i < tabs.size(); ++i) m.set(i, j, coords.at(0, i));
    }
    return m;
  };
  out.module.dim = tabs.size();
  out.module.transposition = action(transposition_generator(d));
  out.module.cycle = action(cycle_generator(d));
  out.basis = std::move(basis);
  return out;
}

}  // namespace

SymModule specht_module(const Partition& lambda, const Field& k, int cap) { return build_specht(lambda, k, cap).module; }

SymModule simple_module(const Partition& lambda, const Field& k, int cap) {
  if (k.is_finite() && !is_p_regular(lambda, k.characteristic()))
    fail(Error::Kind::Precondition, lambda.to_string() + " is not " + std::to_string(k.characteristic()) + "-regular");
  auto sp = build_specht(lambda, k, cap);
  const Matrix gram = sp.basis * sp.basis.transpose();
  const la::Subspace radical = la::kernel_basis(gram);
  SymModule d = sp.module;
  d.dim = sp.module.dim - radical.dim();
  d.transposition = la::quotient_action(sp.module.transposition, radical);
  d.cycle = la::quotient_action(sp.module.cycle, radical);
  return d;
}

}  // namespace steinlab::sym
