#include "steinlab/modtools.hpp"

#include <algorithm>
#include <random>

namespace steinlab::meataxe {

using la::Field;
using la::Matrix;
using la::Scalar;
using la::Subspace;

// ---------------------------------------------------------------------------
// AlgebraModule

std::vector<std::string> AlgebraModule::names() const {
  std::vector<std::string> out;
  for (const auto& g : gens_) out.push_back(g.name);
  return out;
}

const Generator& AlgebraModule::generator(const std::string& name) const {
  for (const auto& g : gens_)
    if (g.name == name) return g;
  fail(Error::Kind::Precondition, "no generator named '" + name + "'");
}

void AlgebraModule::add_generator(std::string name, Matrix action, std::optional<Matrix> element) {
  if (action.rows() != dim_ || action.cols() != dim_)
    fail(Error::Kind::Precondition, "generator '" + name + "' has the wrong size");
  if (!(action.field() == field_)) fail(Error::Kind::FieldMismatch, "generator '" + name + "' over the wrong field");
  for (const auto& g : gens_)
    if (g.name == name) fail(Error::Kind::Precondition, "duplicate generator '" + name + "'");
  gens_.push_back({std::move(name), std::move(action), std::move(element)});
}

Matrix AlgebraModule::evaluate(const Matrix& element) const {
  if (!eval_) fail(Error::Kind::Precondition, "module has no evaluator");
  return eval_(element);
}

AlgebraModule AlgebraModule::restrict_to(const std::vector<std::pair<std::string, Matrix>>& elements) const {
  AlgebraModule out(field_, dim_);
  for (const auto& [name, e] : elements) out.add_generator(name, evaluate(e), e);
  out.eval_ = eval_;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Matrix> transposed_actions(const AlgebraModule& m) {
  std::vector<Matrix> out;
  for (const auto& g : m.generators()) out.push_back(g.action.transpose());
  return out;
}

la::EchelonBuilder spin_rows(const Field& k, std::size_t n, const std::vector<Matrix>& gen_t, const Matrix& seeds) {
  la::EchelonBuilder eb(k, n);
  std::vector<Matrix> queue;
  for (std::size_t i = 0; i < seeds.rows(); ++i) {
    Matrix r = seeds.row(i);
    if (eb.insert(r)) queue.push_back(r);
  }
  for (std::size_t i = 0; i < queue.size() && !eb.full(); ++i)
    for (const auto& gt : gen_t) {
      Matrix w = queue[i] * gt;
      if (eb.insert(w)) {
        queue.push_back(std::move(w));
        if (eb.full()) break;
      }
    }
  return eb;
}

// Calls visit(v) on a representative of every projective point of span(basis).
template <class Visit>
std::optional<Subspace> for_each_point(const Field& k, const Matrix& basis, Visit&& visit) {
  const std::size_t r = basis.rows();
  const std::uint32_t q = k.order();
  for (std::size_t lead = 0; lead < r; ++lead) {
    const std::size_t free = r - lead - 1;
    std::vector<std::uint32_t> digits(free, 0);
    while (true) {
      Matrix v = basis.row(lead);
      for (std::size_t j = 0; j < free; ++j)
        if (digits[j]) v.axpy(Scalar::from_code(k, digits[j]), basis.row(lead + 1 + j));
      if (auto hit = visit(v)) return hit;
      std::size_t j = 0;
      while (j < free && ++digits[j] == q) digits[j++] = 0;
      if (j == free) break;
    }
  }
  return std::nullopt;
}

std::uint64_t point_count(std::uint32_t q, std::size_t dim, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    total *= q;
    if (total > cap * q + q) return cap + 1;
  }
  return (total - 1) / (q - 1);
}

std::uint64_t power_or_cap(std::uint32_t q, std::size_t dim, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    total *= q;
    if (total > cap) return cap + 1;
  }
  return total;
}

Matrix flatten(const Matrix& m) {
  Matrix r(m.field(), 1, m.rows() * m.cols());
  if (m.field().is_finite())
    r.codes() = m.codes();
  else
    r.rats() = m.rats();
  return r;
}

// Outcome of a Norton test on one singular element.
enum class Norton { Simple, Reducible, Skipped };

Norton norton_test(const AlgebraModule& m, const std::vector<Matrix>& gen_t, const Matrix& theta,
                   std::uint64_t point_cap, std::optional<Subspace>& witness) {
  const Field& k = m.field();
  const std::size_t n = m.dim();
  Subspace ker = la::kernel_basis(theta);
  if (ker.dim() == 0) return Norton::Skipped;
  if (k.is_finite()) {
    if (point_count(k.order(), ker.dim(), point_cap) > point_cap) return Norton::Skipped;
  } else if (ker.dim() != 1) {
    return Norton::Skipped;
  }
  auto hit = for_each_point(k, ker.basis(), [&](const Matrix& v) -> std::optional<Subspace> {
    auto eb = spin_rows(k, n, gen_t, v);
    if (eb.full()) return std::nullopt;
    return eb.subspace();
  });
  if (hit) {
    witness = std::move(hit);
    return Norton::Reducible;
  }
  // Dual side: one vector of ker(theta^T) spun by the transposed action.
  Subspace coker = la::kernel_basis(theta.transpose());
  std::vector<Matrix> gen_dual;
  for (const auto& g : m.generators()) gen_dual.push_back(g.action);
  auto eb = spin_rows(k, n, gen_dual, coker.basis().row(0));
  if (!eb.full()) {
    witness = la::kernel_basis(eb.subspace().basis());
    return Norton::Reducible;
  }
  return Norton::Simple;
}

}  // namespace

Subspace spin(const AlgebraModule& m, const Matrix& seeds) {
  return spin_rows(m.field(), m.dim(), transposed_actions(m), seeds).subspace();
}

std::optional<Subspace> exhaustive_proper_submodule(const AlgebraModule& m) {
  const Field& k = m.field();
  if (!k.is_finite()) fail(Error::Kind::Precondition, "exhaustive search needs a finite field");
  const auto gen_t = transposed_actions(m);
  return for_each_point(k, Matrix::identity(k, m.dim()), [&](const Matrix& v) -> std::optional<Subspace> {
    auto eb = spin_rows(k, m.dim(), gen_t, v);
    if (eb.full()) return std::nullopt;
    return eb.subspace();
  });
}

std::size_t enveloping_dim(const AlgebraModule& m) {
  const Field& k = m.field();
  const std::size_t n = m.dim();
  la::EchelonBuilder eb(k, n * n);
  std::vector<Matrix> queue;
  Matrix id = Matrix::identity(k, n);
  eb.insert(flatten(id));
  queue.push_back(id);
  for (std::size_t i = 0; i < queue.size() && !eb.full(); ++i)
    for (const auto& g : m.generators()) {
      Matrix w = g.action * queue[i];
      if (eb.insert(flatten(w))) queue.push_back(std::move(w));
    }
  return eb.size();
}

std::optional<Subspace> find_proper_submodule(const AlgebraModule& m, const SimplicityOptions& opt) {
  const Field& k = m.field();
  const std::size_t n = m.dim();
  if (n == 0) fail(Error::Kind::Precondition, "the zero module is not simple");
  if (n == 1) return std::nullopt;
  if (k.is_finite() && power_or_cap(k.order(), n, opt.exhaustive_cap) <= opt.exhaustive_cap)
    return exhaustive_proper_submodule(m);

  const auto gen_t = transposed_actions(m);
  std::mt19937_64 rng(opt.seed);
  auto random_scalar = [&]() {
    if (k.is_finite()) return Scalar::from_code(k, static_cast<std::uint32_t>(rng() % k.order()));
    return Scalar::from_int(k, static_cast<long long>(rng() % 5) - 2);
  };
  std::vector<Scalar> shifts;
  if (k.is_finite()) {
    if (k.order() <= 64) {
      for (std::uint32_t c = 0; c < k.order(); ++c) shifts.push_back(Scalar::from_code(k, c));
    } else {
      for (int i = 0; i < 32; ++i) shifts.push_back(random_scalar());
    }
  } else {
    for (int c = -3; c <= 3; ++c) shifts.push_back(Scalar::from_int(k, c));
  }
  const std::size_t ng = m.generators().size();
  const Matrix id = Matrix::identity(k, n);
  for (int attempt = 0; attempt < opt.norton_attempts && ng > 0; ++attempt) {
    Matrix a(k, n, n);
    if (attempt < static_cast<int>(ng)) {
      a = m.generators()[static_cast<std::size_t>(attempt)].action;
    } else {
      const int terms = 1 + attempt % 3;
      for (int t = 0; t < terms; ++t) {
        Matrix word = m.generators()[rng() % ng].action;
        const int len = static_cast<int>(rng() % 3);
        for (int l = 0; l < len; ++l) word = word * m.generators()[rng() % ng].action;
        a.axpy(random_scalar(), word);
      }
    }
    for (const auto& c : shifts) {
      Matrix theta = a - id.scaled(c);
      std::optional<Subspace> witness;
      switch (norton_test(m, gen_t, theta, opt.exhaustive_cap, witness)) {
        case Norton::Simple:
          return std::nullopt;
        case Norton::Reducible:
          return witness;
        case Norton::Skipped:
          break;
      }
    }
  }
  if (n <= 24 && enveloping_dim(m) == n * n) return std::nullopt;
  if (k.is_finite() && power_or_cap(k.order(), n, 1ULL << 22) <= (1ULL << 22)) return exhaustive_proper_submodule(m);
  fail(Error::Kind::Inconclusive, "simplicity test inconclusive for a module of dimension " + std::to_string(n));
}

bool is_simple(const AlgebraModule& m, const SimplicityOptions& opt) { return !find_proper_submodule(m, opt); }

// ---------------------------------------------------------------------------
// Homomorphisms

namespace {

std::vector<const Matrix*> aligned_actions(const AlgebraModule& m, const AlgebraModule& n) {
  if (m.generators().size() != n.generators().size())
    fail(Error::Kind::Precondition, "generator-name mismatch between modules");
  std::vector<const Matrix*> out;
  for (const auto& g : m.generators()) {
    const Generator* match = nullptr;
    for (const auto& h : n.generators())
      if (h.name == g.name) match = &h;
    if (!match) fail(Error::Kind::Precondition, "generator-name mismatch: '" + g.name + "'");
    out.push_back(&match->action);
  }
  return out;
}

}  // namespace

std::vector<Matrix> hom_space(const AlgebraModule& m, const AlgebraModule& n) {
  if (!(m.field() == n.field())) fail(Error::Kind::FieldMismatch, "hom_space: modules over different fields");
  const auto n_actions = aligned_actions(m, n);
  const Field& k = m.field();
  const std::size_t dm = m.dim(), dn = n.dim();
  if (dm == 0 || dn == 0) return {};
  const auto gen_t = transposed_actions(m);

  // Spinning basis of m with parent links: each vector is a seed or g * parent.
  struct Origin {
    int seed = -1;
    std::size_t parent = 0, gen = 0;
  };
  la::EchelonBuilder eb(k, dm);
  std::vector<Matrix> basis;
  std::vector<Origin> origin;
  int seeds = 0;
  std::size_t next_unit = 0;
  for (std::size_t i = 0; !eb.full(); ++i) {
    if (i == basis.size()) {
      while (true) {
        Matrix e = Matrix::unit_row(k, dm, next_unit++);
        if (eb.insert(e)) {
          basis.push_back(e);
          origin.push_back({seeds++, 0, 0});
          break;
        }
      }
    }
    for (std::size_t g = 0; g < gen_t.size() && !eb.full(); ++g) {
      Matrix w = basis[i] * gen_t[g];
      if (eb.insert(w)) {
        basis.push_back(std::move(w));
        origin.push_back({-1, i, g});
      }
    }
  }

  // Image of basis vector t as a linear function of the unknown seed images.
  const std::size_t unknowns = static_cast<std::size_t>(seeds) * dn;
  std::vector<Matrix> images;
  for (std::size_t t = 0; t < basis.size(); ++t) {
    if (origin[t].seed >= 0) {
      Matrix sel(k, dn, unknowns);
      for (std::size_t j = 0; j < dn; ++j) sel.set_int(j, static_cast<std::size_t>(origin[t].seed) * dn + j, 1);
      images.push_back(std::move(sel));
    } else {
      images.push_back(*n_actions[origin[t].gen] * images[origin[t].parent]);
    }
  }
  Matrix bmat(k, 0, dm);
  for (const auto& b : basis) bmat.append_row(b);
  Matrix binv = *la::inverse(bmat);

  Matrix constraints(k, 0, unknowns);
  for (std::size_t t = 0; t < basis.size(); ++t)
    for (std::size_t g = 0; g < gen_t.size(); ++g) {
      Matrix coords = (basis[t] * gen_t[g]) * binv;
      Matrix c = *n_actions[g] * images[t];
      for (std::size_t s = 0; s < basis.size(); ++s) {
        Scalar x = coords.at(0, s);
        if (!x.is_zero()) c.axpy(-x, images[s]);
      }
      if (!c.is_zero()) constraints = Matrix::vstack(constraints, c);
    }
  Subspace sol = constraints.rows() ? la::kernel_basis(constraints) : Subspace::full(k, unknowns);

  std::vector<Matrix> out;
  const Matrix binv_t = binv.transpose();
  for (std::size_t i = 0; i < sol.dim(); ++i) {
    Matrix x = sol.basis().row(i).transpose();
    Matrix img(k, dn, dm);
    for (std::size_t t = 0; t < basis.size(); ++t) {
      Matrix col = images[t] * x;
      for (std::size_t j = 0; j < dn; ++j) img.set(j, t, col.at(j, 0));
    }
    out.push_back(img * binv_t);
  }
  return out;
}

std::size_t end_dim(const AlgebraModule& m) {
  if (m.dim() == 0) return 0;
  return hom_space(m, m).size();
}

std::optional<Matrix> find_isomorphism(const AlgebraModule& m, const AlgebraModule& n, const SimplicityOptions& opt) {
  if (!(m.field() == n.field())) fail(Error::Kind::FieldMismatch, "find_isomorphism: modules over different fields");
  aligned_actions(m, n);
  if (m.dim() != n.dim()) return std::nullopt;
  if (m.dim() == 0) return Matrix(m.field(), 0, 0);
  auto homs = hom_space(m, n);
  if (homs.empty()) return std::nullopt;
  for (const auto& h : homs)
    if (la::rank(h) == m.dim()) return h;
  const Field& k = m.field();
  std::mt19937_64 rng(opt.seed);
  for (int attempt = 0; attempt < 32; ++attempt) {
    Matrix h(k, n.dim(), m.dim());
    for (const auto& b : homs) {
      Scalar c = k.is_finite() ? Scalar::from_code(k, static_cast<std::uint32_t>(rng() % k.order()))
                               : Scalar::from_int(k, static_cast<long long>(rng() % 21) - 10);
      h.axpy(c, b);
    }
    if (la::rank(h) == m.dim()) return h;
  }
  if (k.is_finite() && power_or_cap(k.order(), homs.size(), opt.exhaustive_cap) <= opt.exhaustive_cap) {
    const std::uint64_t total = power_or_cap(k.order(), homs.size(), opt.exhaustive_cap);
    for (std::uint64_t idx = 1; idx < total; ++idx) {
      Matrix h(k, n.dim(), m.dim());
      std::uint64_t rest = idx;
      for (const auto& b : homs) {
        auto c = static_cast<std::uint32_t>(rest % k.order());
        rest /= k.order();
        if (c) h.axpy(Scalar::from_code(k, c), b);
      }
      if (la::rank(h) == m.dim()) return h;
    }
    return std::nullopt;
  }
  // A nonzero map out of (or into) a simple module of equal dimension is invertible,
  // so the basis check above already settled that case.
  if (is_simple(m, opt) || is_simple(n, opt)) return std::nullopt;
  fail(Error::Kind::Inconclusive, "isomorphism test inconclusive");
}

bool are_isomorphic(const AlgebraModule& m, const AlgebraModule& n, const SimplicityOptions& opt) {
  return find_isomorphism(m, n, opt).has_value();
}

// ---------------------------------------------------------------------------
// Constructions

AlgebraModule submodule(const AlgebraModule& m, const Subspace& s) {
  AlgebraModule out(m.field(), s.dim());
  for (const auto& g : m.generators()) out.add_generator(g.name, la::restrict_action(g.action, s), g.element);
  if (m.has_evaluator())
    out.set_evaluator([ev = m.evaluator(), s](const Matrix& e) { return la::restrict_action(ev(e), s); });
  return out;
}

AlgebraModule quotient(const AlgebraModule& m, const Subspace& s) {
  AlgebraModule out(m.field(), m.dim() - s.dim());
  for (const auto& g : m.generators()) out.add_generator(g.name, la::quotient_action(g.action, s), g.element);
  if (m.has_evaluator())
    out.set_evaluator([ev = m.evaluator(), s](const Matrix& e) { return la::quotient_action(ev(e), s); });
  return out;
}

AlgebraModule tensor(const AlgebraModule& m, const AlgebraModule& n) {
  if (!(m.field() == n.field())) fail(Error::Kind::FieldMismatch, "tensor: modules over different fields");
  const auto n_actions = aligned_actions(m, n);
  AlgebraModule out(m.field(), m.dim() * n.dim());
  for (std::size_t i = 0; i < m.generators().size(); ++i) {
    const auto& g = m.generators()[i];
    out.add_generator(g.name, la::kronecker(g.action, *n_actions[i]), g.element);
  }
  if (m.has_evaluator() && n.has_evaluator())
    out.set_evaluator([a = m.evaluator(), b = n.evaluator()](const Matrix& e) { return la::kronecker(a(e), b(e)); });
  return out;
}

AlgebraModule direct_sum(const AlgebraModule& m, const AlgebraModule& n) {
  if (!(m.field() == n.field())) fail(Error::Kind::FieldMismatch, "direct_sum: modules over different fields");
  const auto n_actions = aligned_actions(m, n);
  AlgebraModule out(m.field(), m.dim() + n.dim());
  for (std::size_t i = 0; i < m.generators().size(); ++i) {
    const auto& g = m.generators()[i];
    out.add_generator(g.name, la::direct_sum(g.action, *n_actions[i]), g.element);
  }
  if (m.has_evaluator() && n.has_evaluator())
    out.set_evaluator([a = m.evaluator(), b = n.evaluator()](const Matrix& e) { return la::direct_sum(a(e), b(e)); });
  return out;
}

AlgebraModule frobenius_twist(const AlgebraModule& m, int i) {
  if (!m.has_evaluator()) fail(Error::Kind::Precondition, "frobenius_twist needs a module with an evaluator");
  AlgebraModule out(m.field(), m.dim());
  for (const auto& g : m.generators()) {
    if (!g.element) fail(Error::Kind::Precondition, "generator '" + g.name + "' has no group element");
    out.add_generator(g.name, m.evaluate(g.element->frobenius(i)), g.element);
  }
  out.set_evaluator([ev = m.evaluator(), i](const Matrix& e) { return ev(e.frobenius(i)); });
  return out;
}

AlgebraModule extend_scalars(const AlgebraModule& m, const Field& super) {
  AlgebraModule out(super, m.dim());
  for (const auto& g : m.generators()) out.add_generator(g.name, g.action.embed(super), g.element);
  if (m.has_evaluator()) out.set_evaluator([ev = m.evaluator(), super](const Matrix& e) { return ev(e).embed(super); });
  return out;
}

std::vector<AlgebraModule> composition_factors(const AlgebraModule& m, const SimplicityOptions& opt) {
  if (m.dim() == 0) return {};
  auto sub = find_proper_submodule(m, opt);
  if (!sub) return {m};
  auto lower = composition_factors(submodule(m, *sub), opt);
  auto upper = composition_factors(quotient(m, *sub), opt);
  lower.insert(lower.end(), upper.begin(), upper.end());
  return lower;
}

std::vector<FactorType> composition_types(const AlgebraModule& m, const SimplicityOptions& opt) {
  std::vector<FactorType> out;
  for (auto& f : composition_factors(m, opt)) {
    bool placed = false;
    for (auto& t : out)
      if (t.module.dim() == f.dim() && are_isomorphic(t.module, f, opt)) {
        ++t.multiplicity;
        placed = true;
        break;
      }
    if (!placed) out.push_back({std::move(f), 1});
  }
  return out;
}

Subspace socle(const AlgebraModule& m, const SimplicityOptions& opt) {
  Subspace soc(m.field(), m.dim());
  for (const auto& t : composition_types(m, opt))
    for (const auto& h : hom_space(t.module, m)) soc = soc + la::image_basis(h);
  return soc;
}

}  // namespace steinlab::meataxe
