#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "coend/nat.hpp"

namespace coend {

enum class IsoStatus { Found, None, Budget };

struct IsoResult {
  IsoStatus status = IsoStatus::None;
  NatTrans witness;  // populated only when status == Found
  std::string detail;
  long long nodes = 0;
};

namespace detail {

// Flattened view of all inhabited cells of a pair of parallel profunctors,
// with the generator action graph on elements. An isomorphism must preserve
// cells, so elements carry their cell index from the start and stable colors
// are refined from the out-edge spectrum.
struct IsoUniverse {
  struct Cell {
    int c, a, size;
  };
  std::vector<Cell> cells;
  std::map<std::pair<int, int>, int> cell_index;
  std::vector<int> offset;  // element address = offset[k] + e
  int total = 0;

  // out[u] and in[u]: (generator tag, other endpoint address).
  std::vector<std::vector<std::pair<int, int>>> out_f, out_g, in_f, in_g;
  std::vector<int> color_f, color_g;

  int addr(int k, int e) const { return offset[k] + e; }
};

inline bool iso_build_universe(const Profunctor& f, const Profunctor& g, IsoUniverse& u, std::string& why) {
  const Category& dom = *f.dom();
  for (int a = 0; a < dom.object_count(); ++a) {
    std::vector<int> cs = f.cod_support(a);
    const auto& cs2 = g.cod_support(a);
    cs.insert(cs.end(), cs2.begin(), cs2.end());
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    for (int c : cs) {
      int nf = f.cell_size(c, a), ng = g.cell_size(c, a);
      if (nf != ng) {
        why = "cell (" + f.cod()->object_label(c) + ", " + dom.object_label(a) + ") has size " +
              std::to_string(nf) + " against " + std::to_string(ng);
        return false;
      }
      u.cell_index[{c, a}] = (int)u.cells.size();
      u.cells.push_back({c, a, nf});
    }
  }
  u.offset.resize(u.cells.size());
  for (size_t k = 0; k < u.cells.size(); ++k) {
    u.offset[k] = u.total;
    u.total += u.cells[k].size;
  }
  return true;
}

inline void iso_build_edges(const Profunctor& p, const IsoUniverse& u,
                            std::vector<std::vector<std::pair<int, int>>>& out,
                            std::vector<std::vector<std::pair<int, int>>>& in) {
  const Category& dom = *p.dom();
  const Category& cod = *p.cod();
  out.assign(u.total, {});
  in.assign(u.total, {});
  std::vector<MorRef> cod_gens = cod.all_generators();
  std::vector<MorRef> dom_gens = dom.all_generators();
  for (size_t k = 0; k < u.cells.size(); ++k) {
    const auto& cell = u.cells[k];
    for (size_t gi = 0; gi < cod_gens.size(); ++gi) {
      const MorRef& gm = cod_gens[gi];
      if (gm.dst != cell.c) continue;
      auto it = u.cell_index.find({gm.src, cell.a});
      if (it == u.cell_index.end()) continue;
      for (int e = 0; e < cell.size; ++e) {
        int v = p.lact(gm, cell.a, e);
        int from = u.addr((int)k, e), to = u.addr(it->second, v);
        out[from].push_back({(int)gi, to});
        in[to].push_back({(int)gi, from});
      }
    }
    for (size_t fi = 0; fi < dom_gens.size(); ++fi) {
      const MorRef& fm = dom_gens[fi];
      if (fm.src != cell.a) continue;
      auto it = u.cell_index.find({cell.c, fm.dst});
      if (it == u.cell_index.end()) continue;
      int tag = (int)(cod_gens.size() + fi);
      for (int e = 0; e < cell.size; ++e) {
        int v = p.ract(fm, cell.c, e);
        int from = u.addr((int)k, e), to = u.addr(it->second, v);
        out[from].push_back({tag, to});
        in[to].push_back({tag, from});
      }
    }
  }
}

// Parallel color refinement over both element sets; returns false as soon as
// some (cell, color) class has different sizes on the two sides.
inline bool iso_refine_colors(IsoUniverse& u, std::string& why) {
  auto cell_of = [&u](int addr) {
    int k = (int)(std::upper_bound(u.offset.begin(), u.offset.end(), addr) - u.offset.begin()) - 1;
    return k;
  };
  u.color_f.assign(u.total, 0);
  u.color_g.assign(u.total, 0);
  for (int v = 0; v < u.total; ++v) u.color_f[v] = u.color_g[v] = cell_of(v);

  for (int round = 0; round < 12; ++round) {
    std::map<std::vector<int>, int> dict;
    auto signature = [&](const std::vector<std::vector<std::pair<int, int>>>& out, const std::vector<int>& col, int v) {
      std::vector<int> sig;
      sig.push_back(col[v]);
      std::vector<std::pair<int, int>> edges;
      edges.reserve(out[v].size());
      for (auto [tag, to] : out[v]) edges.push_back({tag, col[to]});
      std::sort(edges.begin(), edges.end());
      for (auto [tag, c] : edges) {
        sig.push_back(tag);
        sig.push_back(c);
      }
      return sig;
    };
    std::vector<int> nf(u.total), ng(u.total);
    for (int v = 0; v < u.total; ++v) {
      auto sig = signature(u.out_f, u.color_f, v);
      auto it = dict.try_emplace(std::move(sig), (int)dict.size()).first;
      nf[v] = it->second;
    }
    for (int v = 0; v < u.total; ++v) {
      auto sig = signature(u.out_g, u.color_g, v);
      auto it = dict.try_emplace(std::move(sig), (int)dict.size()).first;
      ng[v] = it->second;
    }
    bool stable = nf == u.color_f && ng == u.color_g;
    u.color_f = std::move(nf);
    u.color_g = std::move(ng);

    // Per cell, per color, the two sides must hold equally many elements.
    for (size_t k = 0; k < u.cells.size(); ++k) {
      std::map<int, int> balance;
      for (int e = 0; e < u.cells[k].size; ++e) {
        ++balance[u.color_f[u.addr((int)k, e)]];
        --balance[u.color_g[u.addr((int)k, e)]];
      }
      for (auto [col, d] : balance)
        if (d != 0) {
          why = "element invariants distinguish the two sides at cell (" +
                std::to_string(u.cells[k].c) + ", " + std::to_string(u.cells[k].a) + ")";
          return false;
        }
    }
    if (stable) break;
  }
  return true;
}

}  // namespace detail

// Searches for a natural isomorphism between parallel profunctors. Cheap
// invariants (cell cardinalities, action-graph color refinement) run first;
// a budgeted backtracking search over color-compatible assignments decides
// the rest. Budget exhaustion is reported as its own outcome, never as a
// verdict.
inline IsoResult iso_check(ProfPtr f, ProfPtr g, long long node_budget = 500000) {
  require_parallel(f, g, "isomorphism search");
  IsoResult res;
  auto u = std::make_shared<detail::IsoUniverse>();
  std::string why;
  if (!detail::iso_build_universe(*f, *g, *u, why)) {
    res.status = IsoStatus::None;
    res.detail = why;
    return res;
  }
  if (u->total == 0) {
    res.status = IsoStatus::Found;
    res.witness = {f, g, [](int, int, int e) { return e; }, "iso(empty)"};
    return res;
  }
  detail::iso_build_edges(*f, *u, u->out_f, u->in_f);
  detail::iso_build_edges(*g, *u, u->out_g, u->in_g);
  if (!detail::iso_refine_colors(*u, why)) {
    res.status = IsoStatus::None;
    res.detail = why;
    return res;
  }

  // Candidate targets per element, grouped by (cell, color).
  std::vector<std::vector<int>> cand(u->total);
  {
    std::map<std::pair<int, int>, std::vector<int>> pool;
    for (size_t k = 0; k < u->cells.size(); ++k)
      for (int e = 0; e < u->cells[k].size; ++e) {
        int v = u->addr((int)k, e);
        pool[{(int)k, u->color_g[v]}].push_back(v);
      }
    for (size_t k = 0; k < u->cells.size(); ++k)
      for (int e = 0; e < u->cells[k].size; ++e) {
        int v = u->addr((int)k, e);
        cand[v] = pool[{(int)k, u->color_f[v]}];
      }
  }

  // Static order: fewest candidates first, address as tiebreak.
  std::vector<int> order(u->total);
  for (int v = 0; v < u->total; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (cand[x].size() != cand[y].size()) return cand[x].size() < cand[y].size();
    return x < y;
  });

  std::vector<int> assign(u->total, -1);
  std::vector<char> used(u->total, 0);

  // Incremental square check: every edge between two assigned elements must
  // be matched by the corresponding edge on the other side.
  auto consistent = [&u, &assign](int v, int img) {
    for (auto [tag, to] : u->out_f[v]) {
      if (to == v) {
        bool ok = false;
        for (auto [tag2, to2] : u->out_g[img])
          if (tag2 == tag && to2 == img) ok = true;
        if (!ok) return false;
      } else if (assign[to] != -1) {
        bool ok = false;
        for (auto [tag2, to2] : u->out_g[img])
          if (tag2 == tag && to2 == assign[to]) ok = true;
        if (!ok) return false;
      }
    }
    for (auto [tag, from] : u->in_f[v]) {
      if (from == v || assign[from] == -1) continue;
      bool ok = false;
      for (auto [tag2, to2] : u->out_g[assign[from]])
        if (tag2 == tag && to2 == img) ok = true;
      if (!ok) return false;
    }
    return true;
  };

  long long nodes = 0;
  bool budget_hit = false;
  std::function<bool(size_t)> dfs = [&](size_t pos) -> bool {
    if (pos == order.size()) return true;
    int v = order[pos];
    for (int img : cand[v]) {
      if (used[img]) continue;
      if (++nodes > node_budget) {
        budget_hit = true;
        return false;
      }
      if (!consistent(v, img)) continue;
      assign[v] = img;
      used[img] = 1;
      if (dfs(pos + 1)) return true;
      assign[v] = -1;
      used[img] = 0;
      if (budget_hit) return false;
    }
    return false;
  };

  bool found = dfs(0);
  res.nodes = nodes;
  if (found) {
    auto table = std::make_shared<std::vector<int>>(u->total);
    for (int v = 0; v < u->total; ++v) (*table)[v] = assign[v] - u->offset[(int)(std::upper_bound(u->offset.begin(), u->offset.end(), assign[v]) - u->offset.begin()) - 1];
    res.status = IsoStatus::Found;
    res.witness = {f, g,
                   [u, table](int c, int a, int e) {
                     auto it = u->cell_index.find({c, a});
                     if (it == u->cell_index.end()) throw Error("isomorphism witness queried outside its cells");
                     return (*table)[u->addr(it->second, e)];
                   },
                   "iso(search)"};
    return res;
  }
  if (budget_hit) {
    res.status = IsoStatus::Budget;
    res.detail = "search budget of " + std::to_string(node_budget) + " nodes exhausted";
    return res;
  }
  res.status = IsoStatus::None;
  res.detail = why.empty() ? "no color-compatible assignment satisfies the action squares" : why;
  return res;
}

}  // namespace coend
