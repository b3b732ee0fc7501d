#include "logbm/equality.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "logbm/inequalities.hpp"

namespace logbm {

namespace {

AtomicSphericalMeasure area_measure_k(const Zonotope& k) {
  std::vector<Slot> slots(k.dim() - 1, k);
  return mixed_area_measure(slots);
}

AtomicSphericalMeasure area_measure_with(const Slot& first, const Zonotope& k) {
  std::vector<Slot> slots{first};
  while (slots.size() < k.dim() - 1) slots.emplace_back(k);
  return mixed_area_measure(slots);
}

std::vector<std::size_t> touching(const Zonotope& k, const Vec& x) {
  std::vector<std::size_t> out;
  const auto& gens = k.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!dot(gens[i].direction, x).is_zero()) out.push_back(i);
  return out;
}

}  // namespace

MeasureEqualityReport check_alexandrov_condition(const Zonotope& k, const Body& l) {
  const std::size_t n = k.dim();
  if (body_dim(l) != n) throw std::invalid_argument("alexandrov condition: dimension mismatch");
  if (!k.full_dimensional()) throw std::invalid_argument("alexandrov condition: K is not full-dimensional");
  const Scalar nn(static_cast<long>(n));

  AtomicSphericalMeasure sk = area_measure_k(k);
  AtomicSphericalMeasure slk = area_measure_with(to_slot(l), k);
  auto hk = [&](const Vec& w) { return support_eval(k, w); };
  auto hl = [&](const Vec& w) { return support_eval(l, w); };
  Scalar vol = sk.integrate(hk) / nn;
  Scalar v1 = sk.integrate(hl) / nn;

  MeasureEqualityReport r;
  r.a = v1 / vol;
  r.lhs = AtomicSphericalMeasure(n, MassEncoding::kDirect);
  r.rhs = AtomicSphericalMeasure(n, MassEncoding::kDirect);
  // h_K dS_{f,K,...,K} = h_K dS_{L,K,...,K} - a h_K dS_{K,...,K}
  for (const auto& at : slk.atoms()) r.lhs.add(at.w, at.c * hk(at.w));
  for (const auto& at : sk.atoms()) {
    Scalar h = hk(at.w);
    r.lhs.add(at.w, -(r.a * at.c * h));
    Scalar f = hl(at.w) - r.a * h;
    r.rhs.add(at.w, -(at.c * f) / (nn - Scalar(1)));
  }
  AtomicSphericalMeasure diff = r.lhs;
  diff += r.rhs.scaled(Scalar(-1));
  r.max_discrepancy = Scalar(0);
  for (const auto& at : diff.atoms()) r.max_discrepancy = std::max(r.max_discrepancy, abs(at.c));
  r.matched = r.lhs == r.rhs;
  return r;
}

GeneratorGraph generator_graph(const Zonotope& k) {
  if (!k.full_dimensional()) throw std::invalid_argument("generator graph: K is not full-dimensional");
  GeneratorGraph g;
  for (const auto& gen : k.generators()) g.vertices.push_back(gen.direction);
  const std::size_t m = g.vertices.size();

  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& at : area_measure_k(k).atoms()) {
    auto t = touching(k, at.w);
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = i + 1; j < t.size(); ++j) edges.insert({t[i], t[j]});
  }
  g.edges.assign(edges.begin(), edges.end());

  std::vector<std::vector<std::size_t>> adj(m);
  for (auto [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(m, false);
  for (std::size_t s = 0; s < m; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s}, stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : adj[v]) {
        if (seen[w]) continue;
        seen[w] = true;
        comp.push_back(w);
        stack.push_back(w);
      }
    }
    std::sort(comp.begin(), comp.end());
    g.components.push_back(std::move(comp));
  }
  return g;
}

DecompositionCertificate attempt_decomposition(const Zonotope& k, const Body& l) {
  const std::size_t n = k.dim();
  if (body_dim(l) != n) throw std::invalid_argument("decomposition: dimension mismatch");
  DecompositionCertificate cert;
  GeneratorGraph g = generator_graph(k);
  cert.components = g.components;
  const auto& gens = k.generators();

  std::vector<std::size_t> comp_of(gens.size());
  std::size_t total = 0;
  for (std::size_t c = 0; c < g.components.size(); ++c) {
    Matrix rows;
    for (std::size_t i : g.components[c]) {
      rows.push_back(gens[i].direction);
      comp_of[i] = c;
    }
    cert.dims.push_back(rank(rows));
    total += cert.dims.back();
  }
  if (total != n) {
    cert.reason = "component spans do not form a direct sum";
    return cert;
  }

  // Scale per component from the first atom touching it, then constancy.
  const AtomicSphericalMeasure sk = area_measure_k(k);
  std::vector<std::optional<Scalar>> scale(g.components.size());
  std::vector<Vec> first_atom(g.components.size());
  for (const auto& at : sk.atoms()) {
    auto t = touching(k, at.w);
    if (t.empty()) continue;
    std::size_t c = comp_of[t.front()];
    Scalar ratio = support_eval(l, at.w) / support_eval(k, at.w);
    if (!scale[c]) {
      scale[c] = ratio;
      first_atom[c] = at.w;
    } else if (!(*scale[c] == ratio)) {
      cert.reason = "support ratio is not constant on component " + std::to_string(c);
      cert.witness_atoms = {first_atom[c], at.w};
      return cert;
    }
  }
  for (std::size_t c = 0; c < scale.size(); ++c) {
    if (!scale[c]) {
      cert.reason = "no atom touches component " + std::to_string(c);
      return cert;
    }
    if (scale[c]->sign() < 0) {
      cert.reason = "negative scale on component " + std::to_string(c);
      return cert;
    }
    cert.scales.push_back(*scale[c]);
  }

  std::vector<Generator> lp;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Scalar& a = cert.scales[comp_of[i]];
    if (!a.is_zero()) lp.push_back({gens[i].direction, a * gens[i].weight});
  }
  const Zonotope lprime(n, lp);

  auto agree_on = [&](const AtomicSphericalMeasure& s) {
    for (const auto& at : s.atoms()) {
      if (!(support_eval(l, at.w) == support_eval(lprime, at.w))) {
        cert.reason = "h_L and h_L' differ at an atom";
        cert.witness_atoms = {at.w};
        return false;
      }
    }
    return true;
  };
  if (!agree_on(sk)) return cert;
  if (!lp.empty() && !agree_on(area_measure_with(lprime, k))) return cert;
  cert.valid = true;
  return cert;
}

DecompositionCertificate certify_equality(const Zonotope& k, const Body& l) {
  InequalityReport r = check_local_logbm(k, SupportExpr::of(l));
  if (r.verdict != Verdict::kEquality) {
    DecompositionCertificate cert;
    cert.reason = r.verdict == Verdict::kHolds ? "inequality strict" : std::string("inequality ") + verdict_name(r.verdict);
    return cert;
  }
  DecompositionCertificate cert = attempt_decomposition(k, l);
  if (!cert.valid) cert.reason = "equality holds but no decomposition was found: " + cert.reason;
  return cert;
}

ConeVolumeProbe cone_volume_uniqueness_probe(const Zonotope& k, const Zonotope& l) {
  ConeVolumeProbe p;
  p.k_measure = cone_volume_measure(k);
  p.l_measure = cone_volume_measure(l);
  p.equal_measures = p.k_measure == p.l_measure;
  p.same_body = k.same_body(l);
  return p;
}

}  // namespace logbm
