#include "steinlab/schurfun.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace steinlab::schur {

using la::Field;
using la::Matrix;
using la::Scalar;
using la::Subspace;
using sym::Partition;

namespace {

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::vector<int> word_of(std::size_t idx, int n, int d) {
  std::vector<int> w(static_cast<std::size_t>(d));
  for (int i = d - 1; i >= 0; --i) {
    w[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::size_t>(n));
    idx /= static_cast<std::size_t>(n);
  }
  return w;
}

std::size_t index_of(const std::vector<int>& w, int n) {
  std::size_t idx = 0;
  for (int x : w) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(x);
  return idx;
}

// Visits every permutation preserving each block of consecutive positions,
// as (image of each position, sign).
void for_each_block_permutation(const std::vector<int>& blocks,
                                const std::function<void(const std::vector<int>&, int)>& visit) {
  const int d = std::accumulate(blocks.begin(), blocks.end(), 0);
  std::vector<int> image(static_cast<std::size_t>(d));
  std::function<void(std::size_t, int, int)> rec = [&](std::size_t b, int offset, int sgn) {
    if (b == blocks.size()) {
      visit(image, sgn);
      return;
    }
    std::vector<int> perm(static_cast<std::size_t>(blocks[b]));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      for (std::size_t i = 0; i < perm.size(); ++i) image[static_cast<std::size_t>(offset) + i] = offset + perm[i];
      rec(b + 1, offset + blocks[b], sgn * sym::sign(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
  };
  rec(0, 0, 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// Ambient

Ambient Ambient::tensor_power(int n, int d, std::size_t multiplicity) {
  if (n < 1 || d < 0) fail(Error::Kind::Precondition, "tensor_power needs n >= 1 and d >= 0");
  Ambient a;
  a.n_ = n;
  a.d_ = d;
  a.mult_ = multiplicity;
  return a;
}

Ambient Ambient::symmetric_blocks(int n, const Partition& lambda) {
  if (n < 1) fail(Error::Kind::Precondition, "symmetric_blocks needs n >= 1");
  Ambient a;
  a.symmetric_ = true;
  a.n_ = n;
  for (int part : lambda.parts())
    if (part > 0) a.blocks_.push_back(part);
  a.d_ = lambda.size();
  const std::size_t words = ipow(static_cast<std::size_t>(n), a.d_);
  for (std::size_t idx = 0; idx < words; ++idx) {
    auto w = word_of(idx, n, a.d_);
    std::size_t off = 0;
    for (int b : a.blocks_) {
      std::sort(w.begin() + static_cast<long>(off), w.begin() + static_cast<long>(off) + b);
      off += static_cast<std::size_t>(b);
    }
    a.index_.emplace(w, 0);
  }
  std::size_t i = 0;
  for (auto& [w, idx] : a.index_) {
    idx = i++;
    a.reps_.push_back(w);
  }
  return a;
}

std::size_t Ambient::dim() const {
  if (symmetric_) return reps_.size();
  return ipow(static_cast<std::size_t>(n_), d_) * mult_;
}

std::size_t Ambient::block_index(const std::vector<int>& word) const {
  std::vector<int> w = word;
  std::size_t off = 0;
  for (int b : blocks_) {
    std::sort(w.begin() + static_cast<long>(off), w.begin() + static_cast<long>(off) + b);
    off += static_cast<std::size_t>(b);
  }
  return index_.at(w);
}

Matrix Ambient::act(const Matrix& g) const {
  if (g.rows() != static_cast<std::size_t>(n_) || g.cols() != static_cast<std::size_t>(n_))
    fail(Error::Kind::Precondition, "ambient action expects an n x n matrix");
  const Field& k = g.field();
  Matrix big = la::kronecker_power(g, d_);
  if (!symmetric_) return mult_ == 1 ? big : la::kronecker(big, Matrix::identity(k, mult_));
  const std::size_t words = big.rows();
  std::vector<std::size_t> target(words);
  for (std::size_t j = 0; j < words; ++j) target[j] = block_index(word_of(j, n_, d_));
  Matrix out(k, reps_.size(), reps_.size());
  for (std::size_t b = 0; b < reps_.size(); ++b) {
    const std::size_t src = index_of(reps_[b], n_);
    for (std::size_t j = 0; j < words; ++j) {
      if (big.is_zero_at(j, src)) continue;
      out.set(target[j], b, out.at(target[j], b) + big.at(j, src));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// GLRep

GLRep::GLRep(Ambient ambient, Field k, Subspace sub) : ambient_(std::move(ambient)), field_(k), sub_(std::move(sub)) {
  if (sub_.ambient_dim() != ambient_.dim()) fail(Error::Kind::Precondition, "GLRep: subspace/ambient size mismatch");
  if (!(sub_.field() == field_)) fail(Error::Kind::FieldMismatch, "GLRep: subspace over the wrong field");
}

Matrix GLRep::act(const Matrix& g) const {
  Matrix h = g.field() == field_ ? g : g.embed(field_);
  return la::restrict_action(ambient_.act(h), sub_);
}

meataxe::AlgebraModule GLRep::module() const {
  meataxe::AlgebraModule m(field_, dim());
  for (const auto& [name, g] : monoid_generators(rank(), field_)) m.add_generator(name, act(g), g);
  GLRep self = *this;
  m.set_evaluator([self](const Matrix& g) { return self.act(g); });
  return m;
}

GLRep GLRep::extend(const Field& super) const {
  if (super == field_) return *this;
  Subspace s = sub_.dim() ? Subspace::span(sub_.basis().embed(super)) : Subspace(super, sub_.ambient_dim());
  return GLRep(ambient_, super, std::move(s));
}

std::vector<std::pair<std::string, Matrix>> monoid_generators(int n, const Field& k) {
  if (n < 1) fail(Error::Kind::Precondition, "rank must be >= 1");
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::pair<std::string, Matrix>> out;
  const Matrix id = Matrix::identity(k, un);
  if (n >= 2) {
    Matrix t = id;
    t.set_int(0, 1, 1);
    out.emplace_back("t", t);
  }
  Matrix d = id;
  d.set(0, 0, k.is_finite() ? Scalar::from_code(k, k.primitive_element()) : Scalar::from_int(k, 2));
  out.emplace_back("d", d);
  if (n >= 2) {
    Matrix s(k, un, un), c(k, un, un);
    for (std::size_t i = 0; i < un; ++i) {
      s.set_int(i < 2 ? 1 - i : i, i, 1);
      c.set_int((i + 1) % un, i, 1);
    }
    out.emplace_back("s", s);
    out.emplace_back("c", c);
  }
  Matrix e = id;
  e.set_int(un - 1, un - 1, 0);
  out.emplace_back("e", e);
  return out;
}

meataxe::AlgebraModule det_module(const std::vector<std::pair<std::string, Matrix>>& gens, const Field& k, int power) {
  meataxe::AlgebraModule m(k, 1);
  auto eval = [k, power](const Matrix& g) {
    Matrix h = g.field() == k ? g : g.embed(k);
    Matrix r(k, 1, 1);
    r.set(0, 0, la::determinant(h).pow(power));
    return r;
  };
  for (const auto& [name, g] : gens) m.add_generator(name, eval(g), g);
  m.set_evaluator(eval);
  return m;
}

meataxe::AlgebraModule invertibility_module(const std::vector<std::pair<std::string, Matrix>>& gens, const Field& k) {
  meataxe::AlgebraModule m(k, 1);
  auto eval = [k](const Matrix& g) {
    Matrix r(k, 1, 1);
    r.set_int(0, 0, la::determinant(g).is_zero() ? 0 : 1);
    return r;
  };
  for (const auto& [name, g] : gens) m.add_generator(name, eval(g), g);
  m.set_evaluator(eval);
  return m;
}

Field field_larger_than(const Field& k, std::uint64_t bound) {
  if (!k.is_finite() || k.order() > bound) return k;
  for (int s = 2;; ++s) {
    if (!Field::supported(k.characteristic(), k.degree() * s))
      fail(Error::Kind::CapExceeded, "no supported extension of " + k.name() + " with more than " + std::to_string(bound) + " elements");
    Field ext = k.extension(s);
    if (ext.order() > bound) return ext;
  }
}

// ---------------------------------------------------------------------------

GLRep elementary_value(const sym::SymModule& m, int n, const Caps& caps) {
  const Field& k = m.field;
  const int d = m.degree;
  if (d > caps.max_degree) fail(Error::Kind::CapExceeded, "degree exceeds cap");
  const std::size_t words = ipow(static_cast<std::size_t>(n), d);
  const std::size_t total = words * m.dim;
  if (total > caps.max_dim) fail(Error::Kind::CapExceeded, "n^d * dim M = " + std::to_string(total) + " exceeds cap");
  Ambient amb = Ambient::tensor_power(n, d, m.dim);
  const auto perms = sym::all_permutations(d);
  const auto rho = sym::all_actions(m);
  // The norm is invariant under the diagonal action, so sorted words suffice.
  Matrix images(k, 0, total);
  for (std::size_t idx = 0; idx < words; ++idx) {
    const auto w = word_of(idx, n, d);
    if (!std::is_sorted(w.begin(), w.end())) continue;
    for (std::size_t j = 0; j < m.dim; ++j) {
      Matrix v(k, 1, total);
      for (std::size_t s = 0; s < perms.size(); ++s) {
        std::vector<int> moved(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) moved[static_cast<std::size_t>(perms[s][i])] = w[i];
        const std::size_t base = index_of(moved, n) * m.dim;
        for (std::size_t r = 0; r < m.dim; ++r)
          if (!rho[s].is_zero_at(r, j)) v.set(0, base + r, v.at(0, base + r) + rho[s].at(r, j));
      }
      if (!v.is_zero()) images.append_row(v);
    }
  }
  Subspace sub = images.rows() ? Subspace::span(images) : Subspace(k, total);
  return GLRep(std::move(amb), k, std::move(sub));
}

GLRep schur_value(const Partition& lambda, int n, const Field& k, const Caps& caps) {
  const Partition shape = lambda.trimmed();
  const int d = shape.size();
  if (d > caps.max_degree) fail(Error::Kind::CapExceeded, "degree exceeds cap");
  Ambient amb = Ambient::symmetric_blocks(n, shape);
  if (amb.dim() > caps.max_dim) fail(Error::Kind::CapExceeded, "ambient dimension exceeds cap");
  const Partition conj = sym::conjugate(shape);
  std::vector<int> row_start;
  for (int r = 0, acc = 0; r < static_cast<int>(shape.parts().size()); ++r) {
    row_start.push_back(acc);
    acc += shape[static_cast<std::size_t>(r)];
  }
  // sigma(i): i-th entry in the column reading of the row-filled tableau.
  std::vector<int> sigma;
  for (int c = 0; c < static_cast<int>(conj.parts().size()); ++c)
    for (int r = 0; r < conj[static_cast<std::size_t>(c)]; ++r) sigma.push_back(row_start[static_cast<std::size_t>(r)] + c);

  Matrix images(k, 0, amb.dim());
  const std::size_t words = ipow(static_cast<std::size_t>(n), d);
  for (std::size_t idx = 0; idx < words; ++idx) {
    const auto w = word_of(idx, n, d);
    // Only words strictly increasing inside each column block survive antisymmetrisation
    // (up to sign), so those span the image.
    bool increasing = true;
    for (std::size_t c = 0, off = 0; c < conj.parts().size() && increasing; off += static_cast<std::size_t>(conj[c]), ++c)
      for (int i = 1; i < conj[c]; ++i)
        if (w[off + static_cast<std::size_t>(i) - 1] >= w[off + static_cast<std::size_t>(i)]) increasing = false;
    if (!increasing) continue;
    Matrix v(k, 1, amb.dim());
    for_each_block_permutation(conj.parts(), [&](const std::vector<int>& pi, int sgn) {
      std::vector<int> permuted(w.size()), placed(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) permuted[static_cast<std::size_t>(pi[i])] = w[i];
      for (std::size_t i = 0; i < w.size(); ++i) placed[static_cast<std::size_t>(sigma[i])] = permuted[i];
      const std::size_t b = amb.block_index(placed);
      v.set(0, b, v.at(0, b) + Scalar::from_int(k, sgn));
    });
    if (!v.is_zero()) images.append_row(v);
  }
  Subspace sub = images.rows() ? Subspace::span(images) : Subspace(k, amb.dim());
  return GLRep(std::move(amb), k, std::move(sub));
}

GLRep socle_simple(const Partition& lambda, int n, const Field& k, const Caps& caps) {
  if (k.is_finite() && !sym::is_p_restricted(lambda, k.characteristic()))
    fail(Error::Kind::Precondition, lambda.to_string() + " is not " + std::to_string(k.characteristic()) + "-restricted");
  if (!k.is_finite()) return schur_value(lambda, n, k, caps);
  // Over a field with more than d elements the monoid algebra maps onto the
  // Schur algebra, so submodules there are subfunctors.
  const Field big = field_larger_than(k, static_cast<std::uint64_t>(lambda.size()));
  GLRep s = schur_value(lambda, n, big, caps);
  if (s.dim() == 0) return GLRep(s.ambient(), k, Subspace(k, s.ambient().dim()));
  Subspace soc = meataxe::socle(s.module());
  Subspace in_ambient = Subspace::span(soc.basis() * s.subspace().basis());
  auto down = in_ambient.basis().restrict_to(k);
  if (!down) fail(Error::Kind::Defect, "socle of " + lambda.to_string() + " is not defined over " + k.name());
  return GLRep(s.ambient(), k, Subspace::span(*down));
}

std::vector<WeightSpace> weights(const GLRep& rep_in) {
  if (rep_in.dim() == 0) return {};
  const int d = rep_in.degree();
  const int n = rep_in.rank();
  GLRep rep = rep_in.field().is_finite() ? rep_in.extend(field_larger_than(rep_in.field(), static_cast<std::uint64_t>(d) + 1))
                                         : rep_in;
  const Field& k = rep.field();
  const Scalar w = k.is_finite() ? Scalar::from_code(k, k.primitive_element()) : Scalar::from_int(k, 2);
  const Matrix id = Matrix::identity(k, rep.dim());
  // eigen[i][a]: eigenspace of diag(1,..,w,..,1) (w in slot i) for eigenvalue w^a.
  std::vector<std::vector<Subspace>> eigen(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Matrix t = Matrix::identity(k, static_cast<std::size_t>(n));
    t.set(static_cast<std::size_t>(i), static_cast<std::size_t>(i), w);
    const Matrix ti = rep.act(t);
    for (int a = 0; a <= d; ++a) eigen[static_cast<std::size_t>(i)].push_back(la::kernel_basis(ti - id.scaled(w.pow(a))));
  }
  std::vector<WeightSpace> out;
  std::size_t total = 0;
  std::vector<int> mu(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      mu[static_cast<std::size_t>(i)] = left;
      Subspace s = eigen[0][static_cast<std::size_t>(mu[0])];
      for (int j = 1; j < n && s.dim(); ++j) s = s.intersect(eigen[static_cast<std::size_t>(j)][static_cast<std::size_t>(mu[static_cast<std::size_t>(j)])]);
      if (s.dim()) {
        out.push_back({mu, s.dim()});
        total += s.dim();
      }
      return;
    }
    for (int a = left; a >= 0; --a) {
      mu[static_cast<std::size_t>(i)] = a;
      rec(i + 1, left - a);
    }
  };
  rec(0, d);
  if (total != rep.dim()) fail(Error::Kind::Defect, "weight spaces do not exhaust the representation");
  std::sort(out.begin(), out.end(), [](const WeightSpace& x, const WeightSpace& y) { return x.weight > y.weight; });
  return out;
}

WeightVector highest_weight(const GLRep& rep) {
  auto ws = weights(rep);
  if (ws.empty()) fail(Error::Kind::Precondition, "the zero representation has no highest weight");
  return ws.front().weight;
}

DetTwistReport det_twist_check(const Partition& lambda, int n, const Field& k, const Caps& caps) {
  const Partition full = lambda.padded(static_cast<std::size_t>(n));
  if (full[static_cast<std::size_t>(n) - 1] < 1) fail(Error::Kind::Precondition, "det_twist_check needs lambda_n >= 1");
  std::vector<int> mu_parts = full.parts();
  for (auto& x : mu_parts) --x;
  const Partition mu(mu_parts);
  const auto gens = monoid_generators(n, k);
  const auto l_lambda = socle_simple(full, n, k, caps).module();
  const auto l_mu = socle_simple(mu, n, k, caps).module();
  DetTwistReport rep;
  rep.det_shift_isomorphic = meataxe::are_isomorphic(l_lambda, meataxe::tensor(l_mu, det_module(gens, k)));
  rep.delta_isomorphic = meataxe::are_isomorphic(l_lambda, meataxe::tensor(l_lambda, invertibility_module(gens, k)));
  return rep;
}

}  // namespace steinlab::schur
