#include "sgf/iso.hpp"

#include <algorithm>

namespace sgf {

namespace {

class IsoSearch {
 public:
  IsoSearch(const FiniteGroup& g, const FiniteGroup& h, const IsoOptions& opt,
            const std::function<bool(const GroupHom&)>& visit)
      : g_(g), h_(h), opt_(opt), visit_(visit), f_(g.order(), -1), finv_(h.order(), -1) {}

  std::size_t run() {
    if (!pick_generators()) return 0;
    if (!assign(0, 0, -1)) return 0;
    descend(0);
    return count_;
  }

 private:
  bool pick_generators() {
    const int n = g_.order();
    std::vector<char> span(n, 0);
    span[0] = 1;
    std::vector<int> elems{0};
    auto grow = [&](int x) {
      gens_.push_back(x);
      // close the span under the current generators
      std::vector<int> cur = elems;
      for (std::size_t i = 0; i < cur.size(); ++i)
        for (int s : gens_) {
          int y = g_.mul(cur[i], s);
          if (!span[y]) {
            span[y] = 1;
            cur.push_back(y);
          }
        }
      elems = std::move(cur);
    };
    auto best_outside = [&](auto&& allowed) {
      int best = -1;
      for (int x = 0; x < n; ++x) {
        if (span[x] || !allowed(x)) continue;
        if (best < 0 || g_.elem_order(x) > g_.elem_order(best)) best = x;
      }
      return best;
    };
    if (!opt_.forced.empty()) {
      for (int x; (x = best_outside([&](int y) { return opt_.forced[y] >= 0; })) >= 0;) grow(x);
    }
    for (int x; (x = best_outside([](int) { return true; })) >= 0;) grow(x);
    return true;
  }

  bool allowed_pair(int x, int y) const {
    if (!opt_.forced.empty() && opt_.forced[x] >= 0 && opt_.forced[x] != y) return false;
    for (const auto& [s, t] : opt_.preserve)
      if (s.contains(x) != t.contains(y)) return false;
    return true;
  }

  bool assign(int x, int y, int level) {
    if (!allowed_pair(x, y) || finv_[y] >= 0 || f_[x] >= 0) return false;
    f_[x] = y;
    finv_[y] = x;
    trail_.push_back(x);
    (void)level;
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      int x = trail_.back();
      trail_.pop_back();
      finv_[f_[x]] = -1;
      f_[x] = -1;
    }
  }

  // Close the partial map under gens_[0..level] and check consistency.
  bool close(int level) {
    std::vector<int> queue(trail_.begin(), trail_.end());
    for (std::size_t i = 0; i < queue.size(); ++i) {
      int a = queue[i];
      for (int k = 0; k <= level; ++k) {
        int s = gens_[k];
        int b = g_.mul(a, s);
        int img = h_.mul(f_[a], f_[s]);
        if (f_[b] < 0) {
          if (!assign(b, img, level)) return false;
          queue.push_back(b);
        } else if (f_[b] != img) {
          return false;
        }
      }
    }
    return true;
  }

  void descend(std::size_t level) {
    if (stop_) return;
    if (level == gens_.size()) {
      GroupHom hom{f_};
      if (opt_.accept && !opt_.accept(hom)) return;
      ++count_;
      if (!visit_(hom)) stop_ = true;
      return;
    }
    int x = gens_[level];
    const int ox = g_.elem_order(x);
    for (int y = 0; y < h_.order() && !stop_; ++y) {
      if (h_.elem_order(y) != ox || finv_[y] >= 0) continue;
      std::size_t mark = trail_.size();
      if (assign(x, y, static_cast<int>(level)) && close(static_cast<int>(level))) descend(level + 1);
      undo_to(mark);
    }
  }

  const FiniteGroup& g_;
  const FiniteGroup& h_;
  const IsoOptions& opt_;
  const std::function<bool(const GroupHom&)>& visit_;
  std::vector<int> gens_;
  std::vector<int> f_, finv_, trail_;
  std::size_t count_ = 0;
  bool stop_ = false;
};

bool quick_reject(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() != h.order()) return true;
  if (g.is_abelian() != h.is_abelian()) return true;
  return order_profile(g) != order_profile(h);
}

}  // namespace

std::size_t for_each_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                                 const std::function<bool(const GroupHom&)>& visit, const IsoOptions& opt) {
  if (g.order() > opt.bound || h.order() > opt.bound)
    throw Error(ErrorKind::OrderBoundExceeded, "isomorphism search beyond order " + std::to_string(opt.bound));
  if (!opt.forced.empty() && static_cast<int>(opt.forced.size()) != g.order())
    throw Error(ErrorKind::ParentMismatch, "forced map has wrong length");
  if (quick_reject(g, h)) return 0;
  IsoSearch search(g, h, opt, visit);
  return search.run();
}

std::optional<GroupHom> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h, const IsoOptions& opt) {
  std::optional<GroupHom> out;
  for_each_isomorphism(
      g, h,
      [&](const GroupHom& f) {
        out = f;
        return false;
      },
      opt);
  return out;
}

bool isomorphic(const FiniteGroup& g, const FiniteGroup& h) { return find_isomorphism(g, h).has_value(); }

std::optional<CosetMap> find_section_iso(const Section& a, const Section& b) {
  auto f = find_isomorphism(a.group, b.group);
  if (!f) return std::nullopt;
  return from_quotient_hom(a, b, *f);
}

std::vector<GroupHom> all_automorphisms(const FiniteGroup& g, int bound) {
  if (g.order() > bound)
    throw Error(ErrorKind::OrderBoundExceeded, "automorphism enumeration beyond order " + std::to_string(bound));
  std::vector<GroupHom> out;
  for_each_isomorphism(g, g, [&](const GroupHom& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

static bool pair_fpf(const FiniteGroup& g, const GroupHom& theta, const GroupHom& sigma_inv) {
  for (int x = 1; x < g.order(); ++x)
    if (theta(sigma_inv(x)) == x) return false;
  return true;
}

bool is_fixed_point_free_set(const FiniteGroup& g, std::span<const GroupHom> sigma) {
  std::vector<GroupHom> inv;
  for (const auto& s : sigma) {
    if (!is_isomorphism(g, g, s)) throw Error(ErrorKind::NotAutomorphism, "member of the set is not an automorphism");
    inv.push_back(inverse(s));
  }
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (std::size_t j = 0; j < sigma.size(); ++j)
      if (i != j && !pair_fpf(g, sigma[i], inv[j])) return false;
  return true;
}

std::vector<GroupHom> max_fixed_point_free_set(const FiniteGroup& g, int bound) {
  std::vector<GroupHom> auts = all_automorphisms(g, bound);
  const std::size_t m = auts.size();
  std::vector<GroupHom> invs;
  for (const auto& a : auts) invs.push_back(inverse(a));
  std::vector<std::vector<char>> ok(m, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      ok[i][j] = i != j && pair_fpf(g, auts[i], invs[j]) && pair_fpf(g, auts[j], invs[i]);
  // clique search; the identity is the first automorphism found
  std::vector<std::size_t> best{0}, cur{0};
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    if (cur.size() > best.size()) best = cur;
    for (std::size_t k = from; k < m; ++k) {
      if (cur.size() + (m - k) <= best.size()) return;
      bool fits = std::all_of(cur.begin(), cur.end(), [&](std::size_t c) { return ok[c][k]; });
      if (!fits) continue;
      cur.push_back(k);
      grow(k + 1);
      cur.pop_back();
    }
  };
  grow(1);
  std::vector<GroupHom> out;
  for (std::size_t k : best) out.push_back(auts[k]);
  return out;
}

}  // namespace sgf
