#include "witt/certificate.hpp"

#include <algorithm>
#include <deque>

namespace witt {

AlgebraElement apply_step(const CertificateStep& step, const AlgebraElement& v) {
  if (const auto* mul = std::get_if<MulMonomial>(&step)) return multiply(v, mul->factor);
  if (const auto* der = std::get_if<ApplyShiftedDer>(&step))
    return apply_derivation(der->der, v) - v.scaled(der->shift);
  const auto& sc = std::get<Scale>(step);
  return v.scaled(sc.c);
}

AlgebraElement Certificate::replay() const {
  AlgebraElement v = source;
  for (const auto& s : steps) v = apply_step(s, v);
  return v;
}

namespace {

// Standard derivation whose pairing separates grade beta from grade alpha.
std::size_t separating_standard(const AlgebraContext& ctx, const GroupVector& alpha,
                                const GroupVector& beta, Scalar& beta_value) {
  for (std::size_t i = 1; i <= ctx.num_standard(); ++i) {
    Derivation d = Derivation::standard(i);
    Scalar pa = pairing(alpha, d, ctx), pb = pairing(beta, d, ctx);
    if (pa != pb) {
      beta_value = pb;
      return i;
    }
  }
  throw error("internal: no standard derivation separates two distinct grades");
}

// A standard derivation acting as d/dt_i on grade 0 (down part = e_i).
std::size_t down_standard(const AlgebraContext& ctx, std::size_t var) {
  for (std::size_t i = 1; i <= ctx.num_standard(); ++i) {
    const DerivRow& row = ctx.standard(i - 1);
    bool ok = !row.down[var].is_zero() && row.down[var] == Scalar::one(ctx.field());
    for (std::size_t j = 0; ok && j < row.down.size(); ++j)
      if (j != var && !row.down[j].is_zero()) ok = false;
    if (ok) return i;
  }
  throw error("internal: no standard derivation covers variable t_" + std::to_string(var + 1));
}

}  // namespace

Certificate simplicity_certificate(const AlgebraElement& u) {
  if (u.is_zero()) throw ZeroElement();
  const auto& ctx = u.context();
  Certificate cert{u, {}};
  AlgebraElement v = u;

  auto push = [&](CertificateStep s) {
    v = apply_step(s, v);
    cert.steps.push_back(std::move(s));
  };

  // (a) isolate the lowest grade by annihilating the others one at a time;
  // on grade gamma != beta the shifted operator is (scalar + nilpotent),
  // hence invertible, so the target component survives.
  while (true) {
    auto grades = grade_decompose(v);
    if (grades.size() <= 1) break;
    const auto& target = grades.begin()->second;
    GroupVector alpha = target.terms().begin()->first.alpha;
    auto last = std::prev(grades.end());
    GroupVector beta = last->second.terms().begin()->first.alpha;
    Scalar pb;
    std::size_t idx = separating_standard(*ctx, alpha, beta, pb);
    unsigned reps = 1 + filtration_level(last->second);
    for (unsigned r = 0; r < reps; ++r)
      push(ApplyShiftedDer{Derivation::standard(idx), pb});
  }

  // (b) translate the surviving grade to 0
  {
    const Monomial& mono = v.terms().begin()->first;
    bool zero_grade = std::all_of(mono.alpha_coords.begin(), mono.alpha_coords.end(),
                                  [](const Int& x) { return x == 0; });
    if (!zero_grade) {
      std::vector<Int> neg(mono.alpha_coords.size());
      for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -mono.alpha_coords[i];
      AlgebraElement factor = AlgebraElement::term_by_coords(
          ctx, Scalar::one(ctx->field()), std::vector<unsigned>(ctx->num_t_vars(), 0), neg);
      push(MulMonomial{factor});
    }
  }

  // (c) strip the polynomial part: differentiate away a maximal monomial
  {
    std::vector<unsigned> target;
    for (const auto& [mono, c] : v.terms()) {
      bool maximal = true;
      for (const auto& [other, c2] : v.terms()) {
        if (other.m == mono.m) continue;
        bool geq = true;
        for (std::size_t i = 0; i < mono.m.size(); ++i)
          if (other.m[i] < mono.m[i]) { geq = false; break; }
        if (geq) { maximal = false; break; }
      }
      if (maximal) {
        target = mono.m;
        break;
      }
    }
    Scalar zero_shift = Scalar::zero(ctx->field());
    for (std::size_t var = 0; var < target.size(); ++var)
      for (unsigned r = 0; r < target[var]; ++r)
        push(ApplyShiftedDer{Derivation::standard(down_standard(*ctx, var)), zero_shift});
  }

  // (d) scale to 1
  {
    if (v.terms().size() != 1) throw error("internal: certificate reduction left several terms");
    const Scalar& c = v.terms().begin()->second;
    if (!(c == Scalar::one(ctx->field()))) push(Scale{c.inverse()});
  }

  if (!(v == AlgebraElement::one(ctx))) throw error("internal: certificate replay is not 1");
  return cert;
}

Derivation separating_derivation(const std::vector<GroupVector>& support,
                                 const AlgebraContext& ctx) {
  if (support.empty()) throw error("separating_derivation needs a nonempty support");
  std::size_t n = ctx.num_standard();
  auto distinct_on = [&](const Derivation& d) {
    std::vector<Scalar> vals;
    for (const auto& a : support) vals.push_back(pairing(a, d, ctx));
    for (std::size_t i = 0; i < vals.size(); ++i)
      for (std::size_t j = i + 1; j < vals.size(); ++j)
        if (vals[i] == vals[j]) return false;
    return true;
  };
  // single standards first
  for (std::size_t i = 1; i <= n; ++i) {
    Derivation d = Derivation::standard(i);
    if (distinct_on(d)) return Derivation::combination_of([&] {
      std::vector<Scalar> c(n, Scalar::zero(ctx.field()));
      c[i - 1] = Scalar::one(ctx.field());
      return c;
    }());
  }
  // small integer combinations of growing height
  for (long h = 1; h <= 64; ++h) {
    std::vector<long> c(n, -h);
    while (true) {
      long mx = 0;
      for (long x : c) mx = std::max(mx, std::labs(x));
      if (mx == h) {
        std::vector<Scalar> coeffs;
        for (long x : c) coeffs.push_back(Scalar::of_int(ctx.field(), x));
        Derivation d = Derivation::combination_of(coeffs);
        if (distinct_on(d)) return d;
      }
      std::size_t pos = 0;
      while (pos < c.size() && c[pos] == h) c[pos++] = -h;
      if (pos == c.size()) break;
      ++c[pos];
    }
  }
  throw error("no separating derivation found (duplicate support vectors?)");
}

namespace {

struct Window {
  ContextPtr ctx;
  unsigned degree_bound;
  std::vector<std::vector<Int>> grades;                 // sorted unique
  std::vector<std::vector<unsigned>> exps;              // total degree <= bound
  std::map<std::pair<std::vector<unsigned>, std::vector<Int>>, std::size_t> slot;

  Window(ContextPtr c, unsigned bound, std::vector<std::vector<Int>> g)
      : ctx(std::move(c)), degree_bound(bound), grades(std::move(g)) {
    std::sort(grades.begin(), grades.end());
    grades.erase(std::unique(grades.begin(), grades.end()), grades.end());
    std::vector<unsigned> cur(ctx->num_t_vars(), 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned left) {
      if (pos == cur.size()) {
        exps.push_back(cur);
        return;
      }
      for (unsigned e = 0; e <= left; ++e) {
        cur[pos] = e;
        rec(pos + 1, left - e);
      }
      cur[pos] = 0;
    };
    if (ctx->num_t_vars() == 0) exps.push_back({});
    else rec(0, degree_bound);
    std::size_t k = 0;
    for (const auto& e : exps)
      for (const auto& gr : grades) slot[{e, gr}] = k++;
  }

  std::size_t dim() const { return exps.size() * grades.size(); }

  /// Truncates to the window; nullopt slot terms are dropped.
  std::vector<Scalar> truncate_coords(const AlgebraElement& v) const {
    std::vector<Scalar> out(dim(), Scalar::zero(ctx->field()));
    for (const auto& [mono, c] : v.terms()) {
      auto it = slot.find({mono.m, mono.alpha_coords});
      if (it != slot.end()) out[it->second] = out[it->second] + c;
    }
    return out;
  }

  AlgebraElement element_from_coords(const std::vector<Scalar>& v) const {
    AlgebraElement acc = AlgebraElement::zero(ctx);
    std::size_t k = 0;
    for (const auto& e : exps)
      for (const auto& gr : grades) {
        if (!v[k].is_zero())
          acc = acc + AlgebraElement::term_by_coords(ctx, v[k], e, gr);
        ++k;
      }
    return acc;
  }
};

}  // namespace

ProbeResult ideal_closure_probe(const AlgebraElement& u, const std::vector<Derivation>& ders,
                                unsigned degree_bound,
                                const std::vector<std::vector<Int>>& grade_window, long max_ops) {
  if (u.is_zero()) throw ZeroElement();
  const auto& ctx = u.context();
  Window win(ctx, degree_bound, grade_window);

  for (const auto& [mono, c] : u.terms())
    if (!win.slot.count({mono.m, mono.alpha_coords}))
      throw error("seed element lies outside the probe window");

  // multiplier monomials t^e x^gamma of the window
  std::vector<AlgebraElement> multipliers;
  for (const auto& e : win.exps)
    for (const auto& gr : win.grades) {
      bool unit = gr == std::vector<Int>(gr.size(), Int(0)) &&
                  e == std::vector<unsigned>(e.size(), 0u);
      if (unit) continue;
      multipliers.push_back(AlgebraElement::term_by_coords(ctx, Scalar::one(ctx->field()), e, gr));
    }

  std::vector<std::vector<Scalar>> ech;
  std::vector<std::size_t> pivot;
  auto reduce = [&](std::vector<Scalar> v) {
    for (std::size_t r = 0; r < ech.size(); ++r) {
      if (v[pivot[r]].is_zero()) continue;
      Scalar f = v[pivot[r]];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = v[j] - f * ech[r][j];
    }
    return v;
  };
  auto insert = [&](const AlgebraElement& elem) -> bool {
    std::vector<Scalar> v = reduce(win.truncate_coords(elem));
    std::size_t p = 0;
    while (p < v.size() && v[p].is_zero()) ++p;
    if (p == v.size()) return false;
    Scalar inv = v[p].inverse();
    for (auto& x : v) x = x * inv;
    ech.push_back(std::move(v));
    pivot.push_back(p);
    return true;
  };

  auto one_coords = [&]() -> std::optional<std::vector<Scalar>> {
    std::vector<Int> zero_grade(ctx->gamma().zrank(), 0);
    std::vector<unsigned> zero_exp(ctx->num_t_vars(), 0);
    if (!win.slot.count({zero_exp, zero_grade})) return std::nullopt;
    std::vector<Scalar> v(win.dim(), Scalar::zero(ctx->field()));
    v[win.slot.at({zero_exp, zero_grade})] = Scalar::one(ctx->field());
    return v;
  };

  auto reached_one = [&]() {
    auto oc = one_coords();
    if (!oc) return false;
    auto rem = reduce(*oc);
    return std::all_of(rem.begin(), rem.end(), [](const Scalar& s) { return s.is_zero(); });
  };

  std::deque<AlgebraElement> work;
  insert(u);
  work.push_back(u);
  long ops = 0;
  while (!work.empty()) {
    AlgebraElement v = work.front();
    work.pop_front();
    std::vector<AlgebraElement> next;
    for (const auto& d : ders) next.push_back(apply_derivation(d, v));
    for (const auto& m : multipliers) next.push_back(multiply(v, m));
    for (auto& w : next) {
      if (++ops > max_ops) return {ProbeResult::Kind::Exhausted, {}};
      // window truncation
      AlgebraElement t = win.element_from_coords(win.truncate_coords(w));
      if (t.is_zero()) continue;
      if (insert(t)) {
        if (reached_one()) return {ProbeResult::Kind::Reached1, {}};
        work.push_back(t);
      }
    }
  }
  if (reached_one()) return {ProbeResult::Kind::Reached1, {}};
  std::vector<AlgebraElement> basis;
  for (const auto& row : ech) basis.push_back(win.element_from_coords(row));
  return {ProbeResult::Kind::StableCandidate, basis};
}

}  // namespace witt
