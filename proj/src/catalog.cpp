#include "sgf/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>

#include "sgf/io.hpp"
#include "sgf/iso.hpp"

namespace sgf {

FiniteGroup cyclic_group(int n) {
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) flat[a * n + b] = (a + b) % n;
  return FiniteGroup::from_trusted(n, std::move(flat));
}

FiniteGroup dihedral_group(int n) {
  // r^i s^e * r^j s^f = r^(i + (-1)^e j) s^(e+f)
  const int m = 2 * n;
  std::vector<int> flat(static_cast<std::size_t>(m) * m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      int i = x % n, e = x / n, j = y % n, f = y / n;
      int k = ((e ? i - j : i + j) % n + n) % n;
      flat[x * m + y] = k + n * ((e + f) % 2);
    }
  return FiniteGroup::from_trusted(m, std::move(flat));
}

FiniteGroup symmetric_group(int k) {
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < static_cast<int>(perms.size()); ++i) index[perms[i]] = i;
  const int n = static_cast<int>(perms.size());
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  std::vector<int> c(k);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      // apply b first, then a
      for (int t = 0; t < k; ++t) c[t] = perms[a][perms[b][t]];
      flat[a * n + b] = index[c];
    }
  return FiniteGroup::from_trusted(n, std::move(flat));
}

FiniteGroup quaternion_group() {
  // elements i^a j^b (-1)^c stored as index a + 2b + 4c with units 1,i,j,k
  // use unit quaternion table directly: 0=1 1=i 2=j 3=k 4=-1 5=-i 6=-j 7=-k
  static const int base[4][4] = {{0, 1, 2, 3}, {1, 4, 3, 6}, {2, 7, 4, 1}, {3, 2, 5, 4}};
  std::vector<int> flat(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int v = base[x % 4][y % 4];
      int sign = (x / 4 + y / 4) % 2;
      flat[x * 8 + y] = (v % 4) + 4 * ((v / 4 + sign) % 2);
    }
  return FiniteGroup::from_trusted(8, std::move(flat), {"1", "i", "j", "k", "-1", "-i", "-j", "-k"});
}

FiniteGroup elementary_abelian(int p, int k) {
  FiniteGroup g = cyclic_group(p);
  FiniteGroup out;
  for (int i = 0; i < k; ++i) out = direct_product(out, g);
  return out;
}

Catalog::Catalog(int max_order, std::vector<CatalogEntry> entries)
    : max_order_(max_order), entries_(std::move(entries)) {}

std::vector<const CatalogEntry*> Catalog::of_order(int n) const {
  std::vector<const CatalogEntry*> out;
  for (const auto& e : entries_)
    if (e.group.order() == n) out.push_back(&e);
  return out;
}

const CatalogEntry* Catalog::find(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return &e;
  return nullptr;
}

const CatalogEntry& Catalog::get(const std::string& name) const {
  if (const auto* e = find(name)) return *e;
  throw Error(ErrorKind::NotFound, "no catalog group named " + name);
}

namespace {

struct Atom {
  int order;
  std::string name;
};

std::string product_name(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
    if (a.order != b.order) return a.order > b.order;
    return a.name < b.name;
  });
  std::string out;
  for (const auto& a : atoms) out += (out.empty() ? "" : "x") + a.name;
  return out;
}

struct Invariant {
  std::vector<int> profile;
  int center = 0;
  int derived = 0;
  bool operator==(const Invariant&) const = default;
};

Invariant invariant_of(const FiniteGroup& g) {
  Invariant inv;
  inv.profile = order_profile(g);
  for (int a = 0; a < g.order(); ++a) {
    bool central = true;
    for (int b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    inv.center += central;
  }
  inv.derived = g.is_abelian() ? 1 : commutator_subgroup(g, ElemSet::all(g.order())).size();
  return inv;
}

struct Builder {
  int max_order;
  std::vector<CatalogEntry> entries;
  std::vector<std::vector<Atom>> atoms;
  std::vector<Invariant> invs;

  bool add(std::string name, std::string recipe, FiniteGroup g, std::vector<Atom> at) {
    if (g.order() > max_order) return false;
    Invariant inv = invariant_of(g);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].name == name) return false;
      if (entries[i].group.order() != g.order() || !(invs[i] == inv)) continue;
      // abelian groups are determined by their element orders
      if (g.is_abelian() || isomorphic(entries[i].group, g)) return false;
    }
    entries.push_back({std::move(name), std::move(recipe), std::move(g)});
    atoms.push_back(std::move(at));
    invs.push_back(std::move(inv));
    return true;
  }

  void add_atom(const std::string& name, const std::string& recipe, FiniteGroup g) {
    int n = g.order();
    add(name, recipe, std::move(g), {{n, name}});
  }
};

}  // namespace

Catalog generate_catalog(int max_order) {
  if (max_order < 1 || max_order > kIsoBound)
    throw Error(ErrorKind::BoundExceeded, "catalog order bound must be in [1, 512]");
  Builder b{max_order, {}, {}, {}};
  for (int n = 1; n <= max_order; ++n) b.add_atom("C" + std::to_string(n), "cyclic " + std::to_string(n), cyclic_group(n));
  if (max_order >= 6) b.add_atom("S3", "symmetric 3", symmetric_group(3));
  if (max_order >= 24) b.add_atom("S4", "symmetric 4", symmetric_group(4));
  if (max_order >= 8) b.add_atom("Q8", "quaternion", quaternion_group());
  for (int n = 3; 2 * n <= max_order; ++n)
    b.add_atom("D" + std::to_string(2 * n), "dihedral " + std::to_string(n), dihedral_group(n));
  for (int p : {2, 3, 5, 7}) {
    for (int k = 2, q = p * p; q <= max_order; ++k, q *= p) {
      std::vector<Atom> at(k, Atom{p, "C" + std::to_string(p)});
      b.add(product_name(at), "elementary " + std::to_string(p) + " " + std::to_string(k), elementary_abelian(p, k), at);
    }
  }
  for (std::size_t k = 0; k < b.entries.size(); ++k) {
    for (std::size_t i = 0; i <= k; ++i) {
      const int ni = b.entries[i].group.order(), nk = b.entries[k].group.order();
      if (ni == 1 || nk == 1 || ni * nk > max_order) continue;
      std::vector<Atom> at = b.atoms[i];
      at.insert(at.end(), b.atoms[k].begin(), b.atoms[k].end());
      std::string name = product_name(at);
      b.add(name, "product " + b.entries[i].name + " " + b.entries[k].name,
            direct_product(b.entries[i].group, b.entries[k].group), at);
    }
  }
  std::stable_sort(b.entries.begin(), b.entries.end(),
                   [](const CatalogEntry& x, const CatalogEntry& y) { return x.group.order() < y.group.order(); });
  return Catalog(max_order, std::move(b.entries));
}

void write_catalog(const Catalog& c, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::json index;
  index["max_order"] = c.max_order();
  index["groups"] = nlohmann::json::array();
  for (const auto& e : c.entries()) {
    const std::string file = e.name + ".json";
    write_json_file(dir / file, group_to_json(e.group));
    index["groups"].push_back({{"name", e.name}, {"recipe", e.recipe}, {"order", e.group.order()}, {"file", file}});
  }
  write_json_file(dir / "index.json", index);
}

Catalog read_catalog(const std::filesystem::path& dir) {
  nlohmann::json index = read_json_file(dir / "index.json");
  std::vector<CatalogEntry> entries;
  try {
    for (const auto& g : index.at("groups")) {
      entries.push_back({g.at("name").get<std::string>(), g.value("recipe", std::string{}),
                         group_from_json(read_json_file(dir / g.at("file").get<std::string>()))});
    }
    return Catalog(index.at("max_order").get<int>(), std::move(entries));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Schema, std::string("catalog index: ") + e.what());
  }
}

const Catalog& default_catalog(int max_order) {
  static std::mutex mu;
  static std::map<int, Catalog> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(max_order); it != cache.end()) return it->second;
  Catalog c;
  bool loaded = false;
  if (const char* dir = std::getenv("SGF_CATALOG_DIR"); dir && *dir) {
    std::filesystem::path p(dir);
    if (std::filesystem::exists(p / "index.json")) {
      Catalog full = read_catalog(p);
      if (full.max_order() >= max_order) {
        std::vector<CatalogEntry> keep;
        for (const auto& e : full.entries())
          if (e.group.order() <= max_order) keep.push_back(e);
        c = Catalog(max_order, std::move(keep));
        loaded = true;
      }
    }
  }
  if (!loaded) c = generate_catalog(max_order);
  return cache.emplace(max_order, std::move(c)).first->second;
}

}  // namespace sgf
