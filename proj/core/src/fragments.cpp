#include "hsf/fragments.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <string>

#include "hsf/hamiltonian.hpp"
#include "hsf/union_find.hpp"

namespace hsf {

namespace {

std::string edge_text(BasisState a, BasisState b, std::size_t da, std::size_t db) {
  return "edge " + std::to_string(a) + " -- " + std::to_string(b) + " joins dw sectors " + std::to_string(da) +
         " and " + std::to_string(db);
}

FragmentReport summarize(UnionFind& uf, const std::vector<std::size_t>& dw, const std::vector<char>& coupled) {
  const std::size_t dim = uf.size();
  FragmentReport r;
  r.dimension = dim;
  r.labels.assign(dim, 0);
  std::vector<BasisState> root_label(dim, ~BasisState{0});
  std::vector<std::size_t> root_size(dim, 0);
  for (BasisState s = 0; s < dim; ++s) {
    const std::size_t root = uf.find(s);
    if (root_label[root] == ~BasisState{0}) root_label[root] = s;
    r.labels[s] = root_label[root];
    ++root_size[root];
  }
  for (BasisState s = 0; s < dim; ++s) {
    if (r.labels[s] != s) continue;
    const std::size_t size = root_size[uf.find(s)];
    r.fragments.push_back({s, dw[s], size, size == 1 && !coupled[s]});
  }
  std::stable_sort(r.fragments.begin(), r.fragments.end(),
                   [](const Fragment& a, const Fragment& b) { return a.dw < b.dw; });
  std::map<std::size_t, SectorCensus> sectors;
  for (const Fragment& f : r.fragments) {
    SectorCensus& c = sectors[f.dw];
    c.dw = f.dw;
    ++c.fragment_count;
    c.fragment_sizes.push_back(f.size);
    if (f.frozen) ++c.frozen_state_count;
  }
  for (auto& [dw_value, census] : sectors) {
    std::sort(census.fragment_sizes.begin(), census.fragment_sizes.end());
    r.sectors.push_back(std::move(census));
  }
  return r;
}

std::vector<std::size_t> dw_table(const Lattice& lattice) {
  std::vector<std::size_t> dw(lattice.hilbert_dimension());
  for (BasisState s = 0; s < dw.size(); ++s) dw[s] = dw_number(lattice, s);
  return dw;
}

}  // namespace

std::size_t FragmentReport::max_fragment_size() const noexcept {
  std::size_t best = 0;
  for (const auto& f : fragments) best = std::max(best, f.size);
  return best;
}

std::size_t FragmentReport::frozen_states() const noexcept {
  std::size_t n = 0;
  for (const auto& c : sectors) n += c.frozen_state_count;
  return n;
}

const SectorCensus* FragmentReport::sector(std::size_t dw) const noexcept {
  for (const auto& c : sectors) {
    if (c.dw == dw) return &c;
  }
  return nullptr;
}

FragmentReport adjacency_components(const SpinOperator& h_eff, const Lattice& lattice) {
  if (h_eff.dimension() != lattice.hilbert_dimension()) throw DomainError("operator does not match lattice");
  const auto dw = dw_table(lattice);
  UnionFind uf(h_eff.dimension());
  std::vector<char> coupled(h_eff.dimension(), 0);
  for (BasisState r = 0; r < h_eff.dimension(); ++r) {
    const auto cols = h_eff.row_columns(r);
    const auto vals = h_eff.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const BasisState c = cols[k];
      if (c == r || vals[k] == cplx{0.0, 0.0}) continue;
      if (dw[r] != dw[c]) throw ConsistencyError(edge_text(r, c, dw[r], dw[c]));
      coupled[r] = coupled[c] = 1;
      uf.unite(r, c);
    }
  }
  return summarize(uf, dw, coupled);
}

FragmentReport components_from_rule(const Lattice& lattice, const FlipPredicate& allows) {
  const auto dw = dw_table(lattice);
  UnionFind uf(dw.size());
  std::vector<char> coupled(dw.size(), 0);
  for (BasisState s = 0; s < dw.size(); ++s) {
    for (Site i = 0; i < lattice.size(); ++i) {
      if (!allows(s, i)) continue;
      const BasisState t = s ^ site_bit(i);
      if (dw[s] != dw[t]) throw ConsistencyError(edge_text(s, t, dw[s], dw[t]));
      coupled[s] = coupled[t] = 1;
      uf.unite(s, t);
    }
  }
  return summarize(uf, dw, coupled);
}

bool labels_refine(const FragmentReport& coarse, const FragmentReport& fine) {
  if (coarse.dimension != fine.dimension) return false;
  std::map<BasisState, BasisState> image;
  for (BasisState s = 0; s < fine.dimension; ++s) {
    const auto [it, inserted] = image.emplace(fine.labels[s], coarse.labels[s]);
    if (!inserted && it->second != coarse.labels[s]) return false;
  }
  return true;
}

bool refinement_check(const FragmentReport& coarse, const FragmentReport& fine, const SpinOperator& h_coarse,
                      const SpinOperator& h_fine) {
  return labels_refine(coarse, fine) && h_fine.off_diagonal_support_within(h_coarse);
}

std::vector<BasisState> fragment_of(const StateVector& psi, const SpinOperator& h_eff) {
  if (psi.dimension() != h_eff.dimension()) throw DomainError("state and operator dimensions differ");
  std::vector<char> seen(psi.dimension(), 0);
  std::deque<BasisState> queue;
  for (BasisState s = 0; s < psi.dimension(); ++s) {
    if (psi[s] != cplx{0.0, 0.0}) {
      seen[s] = 1;
      queue.push_back(s);
    }
  }
  std::vector<BasisState> out;
  while (!queue.empty()) {
    const BasisState s = queue.front();
    queue.pop_front();
    out.push_back(s);
    const auto cols = h_eff.row_columns(s);
    const auto vals = h_eff.row_values(s);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (vals[k] == cplx{0.0, 0.0} || seen[cols[k]]) continue;
      seen[cols[k]] = 1;
      queue.push_back(cols[k]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double leakage(const StateVector& psi, const std::vector<BasisState>& fragment) {
  std::vector<char> inside(psi.dimension(), 0);
  for (BasisState s : fragment) {
    if (s < inside.size()) inside[s] = 1;
  }
  double outside = 0.0;
  for (BasisState s = 0; s < psi.dimension(); ++s) {
    if (!inside[s]) outside += std::norm(psi[s]);
  }
  return std::sqrt(outside);
}

}  // namespace hsf
